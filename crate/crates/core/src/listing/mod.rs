//! k-clique listing engines and the preprocessing-to-listing pipeline.
//!
//! Engines that work on a DAG ([`SDegreePlan`], [`BitColPlan`],
//! [`KClistPlan`]) implement [`ListingPlan`] so the parallel driver can hand
//! them single roots or single arcs. [`chiba_nishizeki`] and
//! [`brute_force`] run on the undirected graph directly.

mod bitcol;
mod brute;
mod chiba;
mod kclist;
mod sdegree;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{orient, Dag, Graph, VertexId};
use crate::ordering::{color_ordering, degeneracy_ordering, degree_ordering, VertexOrdering};
use crate::parallel::{run_parallel, ParallelPlan, RunControl, Strategy};
use crate::preprocess::{pre_core, pre_list, ReductionReport};
use crate::sink::{CliqueCount, CliqueSink, ForkSink, MappedSink};

pub use bitcol::{BitColPlan, BitColScratch};
pub use brute::{brute_force, BRUTE_FORCE_MAX_N, BRUTE_FORCE_MAX_SUBSETS};
pub use chiba::chiba_nishizeki;
pub use kclist::{KClistPlan, KClistScratch};
pub use sdegree::{SDegreePlan, SDegreeScratch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    Degree,
    Degeneracy,
    Color,
}

impl OrderingKind {
    pub const ALL: [OrderingKind; 3] = [
        OrderingKind::Degree,
        OrderingKind::Degeneracy,
        OrderingKind::Color,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderingKind::Degree => "degree",
            OrderingKind::Degeneracy => "degeneracy",
            OrderingKind::Color => "color",
        }
    }

    pub fn order(self, g: &Graph) -> VertexOrdering {
        match self {
            OrderingKind::Degree => degree_ordering(g),
            OrderingKind::Degeneracy => degeneracy_ordering(g).0,
            OrderingKind::Color => color_ordering(g).0,
        }
    }
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderingKind::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "unknown ordering '{s}' (expected degree, degeneracy or color)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    SDegree,
    BitCol,
    Chiba,
    KClist(OrderingKind),
}

impl Algorithm {
    /// One instance of every engine, kClist once per ordering.
    pub const ALL: [Algorithm; 6] = [
        Algorithm::SDegree,
        Algorithm::BitCol,
        Algorithm::Chiba,
        Algorithm::KClist(OrderingKind::Degree),
        Algorithm::KClist(OrderingKind::Degeneracy),
        Algorithm::KClist(OrderingKind::Color),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SDegree => "sdegree",
            Algorithm::BitCol => "bitcol",
            Algorithm::Chiba => "chiba",
            Algorithm::KClist(_) => "kclist",
        }
    }

    /// The ordering the engine orients by; `None` for Chiba-Nishizeki.
    pub fn ordering(self) -> Option<OrderingKind> {
        match self {
            Algorithm::SDegree => Some(OrderingKind::Degree),
            Algorithm::BitCol => Some(OrderingKind::Degeneracy),
            Algorithm::Chiba => None,
            Algorithm::KClist(o) => Some(o),
        }
    }

    /// Short label such as `kclist/color`.
    pub fn label(self) -> String {
        match self {
            Algorithm::KClist(o) => format!("kclist/{o}"),
            a => a.name().to_string(),
        }
    }

    pub fn supports_parallel(self) -> bool {
        self != Algorithm::Chiba
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Switches for the pruning rules. Turning one off never changes results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prune {
    /// Skip roots with `d+ < k - 1` and candidates with `d+ <= l - 2`.
    pub out_degree: bool,
    /// Recurse only when at least `l - 1` candidates remain.
    pub size: bool,
    /// BitCol: skip candidates whose color is below `l`.
    pub color: bool,
}

impl Prune {
    pub const ALL: Prune = Prune {
        out_degree: true,
        size: true,
        color: true,
    };
    pub const NONE: Prune = Prune {
        out_degree: false,
        size: false,
        color: false,
    };
}

impl Default for Prune {
    fn default() -> Self {
        Prune::ALL
    }
}

/// How BitCol turns words back into positions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Decode {
    #[default]
    BitScan,
    /// Segmented lookup table.
    MaskTable,
}

#[derive(Clone, Debug)]
pub struct ListOptions {
    pub precore: bool,
    pub prelist: bool,
    pub prune: Prune,
    /// BitCol payload bits per word, `1..=128`.
    pub word_bits: u32,
    pub decode: Decode,
    /// Soft deadline, checked between work units.
    pub deadline: Option<Instant>,
    /// Record the clique count of every work unit.
    pub record_units: bool,
}

impl Default for ListOptions {
    fn default() -> Self {
        ListOptions {
            precore: true,
            prelist: true,
            prune: Prune::ALL,
            word_bits: 64,
            decode: Decode::BitScan,
            deadline: None,
            record_units: false,
        }
    }
}

/// Candidate storage allocated by one worker.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScratchUsage {
    /// Vertex-id slots of candidate buffers.
    pub ids: usize,
    /// Bitmap words, induced-subgraph rows plus candidate rows.
    pub words: usize,
}

impl ScratchUsage {
    pub fn max(self, other: ScratchUsage) -> ScratchUsage {
        ScratchUsage {
            ids: self.ids.max(other.ids),
            words: self.words.max(other.words),
        }
    }
}

/// A DAG-based engine prepared for one graph and one `k >= 3`.
///
/// Vertex ids inside a plan are DAG ranks. A work unit is either a root
/// (every clique whose lowest-ranked vertex is that root) or an arc
/// `u -> v` (every clique whose two lowest-ranked vertices are `u` and `v`).
pub trait ListingPlan: Sync {
    type Scratch: Send;

    fn k(&self) -> usize;
    fn dag(&self) -> &Dag;
    fn scratch(&self) -> Self::Scratch;
    fn list_root<S: CliqueSink + ?Sized>(
        &self,
        u: VertexId,
        scratch: &mut Self::Scratch,
        sink: &mut S,
    );
    fn list_arc<S: CliqueSink + ?Sized>(
        &self,
        arc: usize,
        scratch: &mut Self::Scratch,
        sink: &mut S,
    );
    fn usage(&self, scratch: &Self::Scratch) -> ScratchUsage;

    /// All roots in rank order on the calling thread.
    fn list_all<S: CliqueSink + ?Sized>(&self, sink: &mut S) -> ScratchUsage {
        let mut scratch = self.scratch();
        for u in 0..self.dag().n() as VertexId {
            self.list_root(u, &mut scratch, sink);
        }
        self.usage(&scratch)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub preprocess: Duration,
    pub order: Duration,
    pub list: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct ListOutcome {
    /// The sink's count after the run.
    pub count: CliqueCount,
    pub precore: ReductionReport,
    pub prelist: ReductionReport,
    /// Size of the graph handed to the engine.
    pub reduced_n: usize,
    pub reduced_m: usize,
    /// Δ of the DAG the engine used.
    pub max_out_degree: Option<usize>,
    /// Per-worker scratch allocation.
    pub worker_scratch: Vec<ScratchUsage>,
    pub timings: PhaseTimings,
    pub timed_out: bool,
    /// Per-unit counts when requested, indexed by root rank or arc index.
    pub unit_counts: Option<Vec<u64>>,
}

impl ListOutcome {
    pub fn peak_scratch(&self) -> ScratchUsage {
        self.worker_scratch
            .iter()
            .fold(ScratchUsage::default(), |a, &b| a.max(b))
    }
}

/// Lists the k-cliques of `g` into `sink`.
///
/// Runs Pre-Core and Pre-List as enabled in `opts`, orders and orients the
/// reduced graph, and hands the engine to the parallel driver. Cliques
/// reach the sink as ids of `g`. `k = 1` and `k = 2` are answered by
/// listing vertices and edges.
pub fn list<S: ForkSink>(
    g: &Graph,
    k: usize,
    algo: Algorithm,
    opts: &ListOptions,
    par: &ParallelPlan,
    sink: &mut S,
) -> Result<ListOutcome> {
    if k < 1 {
        return Err(Error::Contract("k must be at least 1".into()));
    }
    par.validate(k)?;
    if !algo.supports_parallel() && par.strategy != Strategy::Serial {
        return Err(Error::Unsupported(format!(
            "{} is sequential; use the serial strategy",
            algo.name()
        )));
    }
    if algo == Algorithm::BitCol && !(1..=128).contains(&opts.word_bits) {
        return Err(Error::Contract(format!(
            "word bits must be in 1..=128, got {}",
            opts.word_bits
        )));
    }

    let mut outcome = ListOutcome::default();
    let started = Instant::now();
    let (core_graph, core_kept) = if opts.precore {
        let r = pre_core(g, k);
        outcome.precore = r.report;
        (r.graph, r.kept)
    } else {
        (g.clone(), (0..g.n() as VertexId).collect())
    };
    let (graph, kept) = if opts.prelist {
        let r = pre_list(&core_graph, k, &mut MappedSink::new(sink, &core_kept));
        outcome.prelist = r.report;
        let kept: Vec<VertexId> = r.kept.iter().map(|&v| core_kept[v as usize]).collect();
        (r.graph, kept)
    } else {
        (core_graph, core_kept)
    };
    outcome.timings.preprocess = started.elapsed();
    outcome.reduced_n = graph.n();
    outcome.reduced_m = graph.m();

    let control = RunControl {
        deadline: opts.deadline,
        record_units: opts.record_units,
    };

    if k <= 2 || algo == Algorithm::Chiba {
        let started = Instant::now();
        let mut mapped = MappedSink::new(sink, &kept);
        match k {
            1 => list_vertices(&graph, &mut mapped),
            2 => list_edges(&graph, &mut mapped),
            _ => outcome.timed_out = chiba_nishizeki(&graph, k, opts.deadline, &mut mapped),
        }
        outcome.timings.list = started.elapsed();
        outcome.count = sink.count();
        return Ok(outcome);
    }

    let started = Instant::now();
    let kind = algo.ordering().expect("DAG engines have an ordering");
    let dag = orient(&graph, &kind.order(&graph))?;
    outcome.timings.order = started.elapsed();
    outcome.max_out_degree = Some(dag.max_out_degree());
    let to_input: Vec<VertexId> = (0..dag.n() as VertexId)
        .map(|r| kept[dag.vertex(r) as usize])
        .collect();
    drop(graph);

    let started = Instant::now();
    let exec = match algo {
        Algorithm::SDegree => {
            let plan = SDegreePlan::new(dag, k, opts.prune);
            run_parallel(&plan, par, &to_input, &control, sink)
        }
        Algorithm::KClist(_) => {
            let plan = KClistPlan::new(dag, k);
            run_parallel(&plan, par, &to_input, &control, sink)
        }
        Algorithm::BitCol => {
            let b = opts.word_bits;
            if b <= 32 {
                let plan = BitColPlan::<u32>::new(dag, k, opts.prune, b, opts.decode);
                run_parallel(&plan, par, &to_input, &control, sink)
            } else if b <= 64 {
                let plan = BitColPlan::<u64>::new(dag, k, opts.prune, b, opts.decode);
                run_parallel(&plan, par, &to_input, &control, sink)
            } else {
                let plan = BitColPlan::<u128>::new(dag, k, opts.prune, b, opts.decode);
                run_parallel(&plan, par, &to_input, &control, sink)
            }
        }
        Algorithm::Chiba => unreachable!(),
    };
    outcome.timings.list = started.elapsed();
    outcome.timed_out = exec.timed_out;
    outcome.worker_scratch = exec.worker_usage;
    outcome.unit_counts = exec.unit_counts;
    outcome.count = sink.count();
    Ok(outcome)
}

/// Count of k-cliques with default options, serially.
pub fn count_cliques(g: &Graph, k: usize, algo: Algorithm) -> Result<CliqueCount> {
    let mut sink = crate::sink::CountSink::new();
    list(
        g,
        k,
        algo,
        &ListOptions::default(),
        &ParallelPlan::serial(),
        &mut sink,
    )?;
    Ok(sink.count())
}

fn list_vertices<S: CliqueSink + ?Sized>(g: &Graph, sink: &mut S) {
    if sink.wants_cliques() {
        for v in 0..g.n() as VertexId {
            sink.report(&[v]);
        }
    } else {
        sink.add(CliqueCount::new(g.n() as u64));
    }
}

fn list_edges<S: CliqueSink + ?Sized>(g: &Graph, sink: &mut S) {
    if sink.wants_cliques() {
        for (u, v) in g.edges() {
            sink.report(&[u, v]);
        }
    } else {
        sink.add(CliqueCount::new(g.m() as u64));
    }
}

/// Calls `f(q)` for every index `q` with `universe[q]` in `a`; both ascending.
#[inline]
pub(crate) fn merge_positions<F: FnMut(usize)>(a: &[VertexId], universe: &[VertexId], mut f: F) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < universe.len() {
        let (x, y) = (a[i], universe[j]);
        if x == y {
            f(j);
            i += 1;
            j += 1;
        } else if x < y {
            i += 1;
        } else {
            j += 1;
        }
    }
}
