//! Shared test support: reconstructed example graphs with machine-checked
//! constraints, seeded random suites, and reference implementations that
//! share no code with the engines.

pub mod oracle;
mod suite;

use std::fmt;

use crate::graph::{load_edge_list, Graph, LoadedGraph, VertexId};
use crate::intersect::BitmapAdjacency;
use crate::listing::brute_force;
use crate::ordering::{color_ordering, greedy_coloring, VertexOrdering};
use crate::preprocess::{pre_core, pre_list};
use crate::sink::{CollectSink, CountSink};

pub use suite::{random_suite, SuiteCase, SUITE_PROBABILITIES};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Stated by the worked example the fixture reconstructs.
    Given,
    /// Computed with the reference implementations.
    Computed,
}

/// A checkable fact about a fixture. Vertices are named by file label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Cliques {
        k: usize,
        count: u64,
        origin: Origin,
    },
    DegreeAtMost {
        label: u64,
        max: usize,
    },
    DegreeAfterRemoving {
        removed: u64,
        label: u64,
        degree: usize,
    },
    PreCoreRemoves {
        k: usize,
        labels: Vec<u64>,
    },
    PreListRemoves {
        k: usize,
        components: Vec<Vec<u64>>,
    },
    /// Greedy coloring in the given visit order assigns these colors.
    GreedyColors {
        visit: Vec<u64>,
        colors: Vec<(u64, u32)>,
    },
    /// Out-neighbors under the color ordering of the whole fixture.
    ColorOutNeighbors {
        label: u64,
        out: Vec<u64>,
    },
    /// Bitmap rows of the color-oriented fixture with labels ascending as
    /// the universe; the root row is followed by one row per label.
    BitmapRows {
        word_bits: u32,
        root: Vec<u64>,
        rows: Vec<(u64, Vec<u64>)>,
    },
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Cliques { k, count, .. } => write!(f, "exactly {count} {k}-cliques"),
            Constraint::DegreeAtMost { label, max } => write!(f, "degree of {label} <= {max}"),
            Constraint::DegreeAfterRemoving {
                removed,
                label,
                degree,
            } => write!(f, "degree of {label} is {degree} once {removed} is removed"),
            Constraint::PreCoreRemoves { k, labels } => {
                write!(f, "pre-core at k={k} removes exactly {labels:?}")
            }
            Constraint::PreListRemoves { k, components } => {
                write!(f, "pre-list at k={k} removes exactly {components:?}")
            }
            Constraint::GreedyColors { visit, .. } => {
                write!(
                    f,
                    "greedy coloring in order {visit:?} gives the listed colors"
                )
            }
            Constraint::ColorOutNeighbors { label, out } => {
                write!(
                    f,
                    "{label} has out-neighbors {out:?} under the color ordering"
                )
            }
            Constraint::BitmapRows { word_bits, .. } => {
                write!(f, "bitmap rows at L={word_bits} match")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub loaded: LoadedGraph,
    /// True when the edge set is rebuilt from a drawing, not given.
    pub reconstructed: bool,
    pub constraints: Vec<Constraint>,
}

impl Fixture {
    pub fn graph(&self) -> &Graph {
        &self.loaded.graph
    }

    pub fn labels(&self) -> &[u64] {
        &self.loaded.labels
    }

    /// Internal id of a file label.
    pub fn id(&self, label: u64) -> VertexId {
        self.labels()
            .iter()
            .position(|&l| l == label)
            .unwrap_or_else(|| panic!("{}: no vertex labelled {label}", self.name))
            as VertexId
    }

    pub fn label_set(&self, ids: impl IntoIterator<Item = VertexId>) -> Vec<u64> {
        let mut out: Vec<u64> = ids.into_iter().map(|v| self.labels()[v as usize]).collect();
        out.sort_unstable();
        out
    }

    /// A copy with one edge removed, for negative controls.
    pub fn without_edge(&self, a: u64, b: u64) -> Fixture {
        let (a, b) = (self.id(a), self.id(b));
        let g = self.graph();
        let edges = g.edges().filter(|&(u, v)| (u, v) != (a.min(b), a.max(b)));
        let graph = Graph::from_edges(g.n(), edges);
        Fixture {
            loaded: LoadedGraph {
                graph,
                labels: self.loaded.labels.clone(),
            },
            ..self.clone()
        }
    }
}

fn load(name: &'static str, text: &'static str) -> LoadedGraph {
    load_edge_list(text.as_bytes()).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// The 12-vertex running example.
pub fn fig1() -> Fixture {
    let text = include_str!("../../fixtures/fig1.txt");
    Fixture {
        name: "fig1",
        text,
        loaded: load("fig1", text),
        reconstructed: true,
        constraints: vec![
            Constraint::Cliques {
                k: 4,
                count: 3,
                origin: Origin::Given,
            },
            Constraint::Cliques {
                k: 3,
                count: 13,
                origin: Origin::Computed,
            },
            Constraint::Cliques {
                k: 5,
                count: 0,
                origin: Origin::Computed,
            },
            Constraint::DegreeAtMost { label: 8, max: 2 },
            Constraint::DegreeAfterRemoving {
                removed: 8,
                label: 7,
                degree: 2,
            },
            Constraint::PreCoreRemoves {
                k: 4,
                labels: vec![7, 8],
            },
            Constraint::PreListRemoves {
                k: 4,
                components: vec![vec![9, 10, 11, 12]],
            },
        ],
    }
}

/// The 6-vertex out-neighborhood used for coloring and bitmaps.
pub fn fig7() -> Fixture {
    let text = include_str!("../../fixtures/fig7.txt");
    Fixture {
        name: "fig7",
        text,
        loaded: load("fig7", text),
        reconstructed: true,
        constraints: vec![
            Constraint::GreedyColors {
                visit: vec![1, 2, 3, 4, 6, 5],
                colors: vec![(1, 1), (2, 2), (3, 3), (4, 4)],
            },
            Constraint::GreedyColors {
                visit: vec![1, 2, 3, 4, 6, 5],
                colors: vec![(5, 2), (6, 3)],
            },
            Constraint::ColorOutNeighbors {
                label: 4,
                out: vec![1, 2, 3, 6],
            },
            Constraint::BitmapRows {
                word_bits: 3,
                root: vec![7, 7],
                rows: vec![
                    (1, vec![0, 0]),
                    (2, vec![1, 0]),
                    (3, vec![3, 2]),
                    (4, vec![7, 4]),
                    (5, vec![1, 0]),
                    (6, vec![3, 2]),
                ],
            },
        ],
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![fig1(), fig7()]
}

/// Checks every constraint; the error names the first one violated.
pub fn verify_fixture(f: &Fixture) -> Result<(), String> {
    for c in &f.constraints {
        check(f, c).map_err(|why| format!("{}: {c} violated: {why}", f.name))?;
    }
    Ok(())
}

fn check(f: &Fixture, c: &Constraint) -> Result<(), String> {
    let g = f.graph();
    match c {
        Constraint::Cliques { k, count, .. } => {
            let got = brute_force(g, *k, &mut CountSink::new())
                .map_err(|e| e.to_string())?
                .value();
            expect(got, *count)
        }
        Constraint::DegreeAtMost { label, max } => {
            let d = g.degree(f.id(*label));
            if d <= *max {
                Ok(())
            } else {
                Err(format!("degree is {d}"))
            }
        }
        Constraint::DegreeAfterRemoving {
            removed,
            label,
            degree,
        } => {
            let gone = f.id(*removed);
            let v = f.id(*label);
            let d = g.neighbors(v).iter().filter(|&&w| w != gone).count();
            expect(d, *degree)
        }
        Constraint::PreCoreRemoves { k, labels } => {
            let r = pre_core(g, *k);
            let removed = f.label_set((0..g.n() as VertexId).filter(|v| !r.kept.contains(v)));
            expect(removed, labels.clone())
        }
        Constraint::PreListRemoves { k, components } => {
            let core = pre_core(g, *k);
            let mut sink = CollectSink::new();
            let r = pre_list(&core.graph, *k, &mut sink);
            let kept: Vec<VertexId> = r.kept.iter().map(|&v| core.kept[v as usize]).collect();
            let removed = f.label_set(
                (0..core.graph.n() as VertexId)
                    .map(|v| core.kept[v as usize])
                    .filter(|v| !kept.contains(v)),
            );
            let want: Vec<u64> = components.iter().flatten().copied().collect();
            let mut want = want;
            want.sort_unstable();
            expect(r.report.removed_components, components.len())?;
            expect(removed, want)
        }
        Constraint::GreedyColors { visit, colors } => {
            let order = VertexOrdering::from_order(visit.iter().map(|&l| f.id(l)).collect())
                .map_err(|e| e.to_string())?;
            let assigned = greedy_coloring(g, &order);
            for &(label, color) in colors {
                expect(assigned.of(f.id(label)), color)
                    .map_err(|e| format!("vertex {label}: {e}"))?;
            }
            Ok(())
        }
        Constraint::ColorOutNeighbors { label, out } => {
            let (ord, _) = color_ordering(g);
            let v = f.id(*label);
            let got = f.label_set(
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| ord.rank(v) < ord.rank(w)),
            );
            expect(got, out.clone())
        }
        Constraint::BitmapRows {
            word_bits,
            root,
            rows,
        } => {
            let (ord, _) = color_ordering(g);
            // Universe: vertices by ascending label.
            let mut by_label: Vec<VertexId> = (0..g.n() as VertexId).collect();
            by_label.sort_by_key(|&v| f.labels()[v as usize]);
            let pos = |v: VertexId| by_label.iter().position(|&x| x == v).unwrap();
            let out: Vec<Vec<usize>> = by_label
                .iter()
                .map(|&v| {
                    g.neighbors(v)
                        .iter()
                        .filter(|&&w| ord.rank(v) < ord.rank(w))
                        .map(|&w| pos(w))
                        .collect()
                })
                .collect();
            let b = BitmapAdjacency::<u64>::encode(&by_label, &out, *word_bits);
            expect(b.root_row().to_vec(), root.clone())?;
            for (label, row) in rows {
                expect(b.row(pos(f.id(*label))).to_vec(), row.clone())
                    .map_err(|e| format!("row of {label}: {e}"))?;
            }
            Ok(())
        }
    }
}

fn expect<T: PartialEq + fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}
