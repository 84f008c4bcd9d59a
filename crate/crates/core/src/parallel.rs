//! Work distribution over roots (node strategy) or arcs (edge strategy).
//!
//! Workers are scoped threads pulling chunks of unit indices from a shared
//! atomic counter. Each owns a forked sink and its own engine scratch; the
//! forks are absorbed back in worker order once all threads have joined.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::thread;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::listing::{ListingPlan, ScratchUsage};
use crate::sink::{CliqueSink, ForkSink, MappedSink};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    #[default]
    Serial,
    Node,
    Edge,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Serial => "serial",
            Strategy::Node => "node",
            Strategy::Edge => "edge",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "serial" => Ok(Strategy::Serial),
            "node" => Ok(Strategy::Node),
            "edge" => Ok(Strategy::Edge),
            _ => Err(Error::Unsupported(format!(
                "unknown strategy '{s}' (expected serial, node or edge)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelPlan {
    pub strategy: Strategy,
    pub workers: usize,
    /// Roots per queue pull.
    pub node_chunk: usize,
    /// Arcs per queue pull.
    pub edge_chunk: usize,
    /// Visit units in a seeded random order instead of index order.
    pub shuffle_seed: Option<u64>,
}

impl ParallelPlan {
    pub fn serial() -> Self {
        ParallelPlan {
            strategy: Strategy::Serial,
            workers: 1,
            node_chunk: 1,
            edge_chunk: 64,
            shuffle_seed: None,
        }
    }

    pub fn node(workers: usize) -> Self {
        ParallelPlan {
            strategy: Strategy::Node,
            workers,
            ..ParallelPlan::serial()
        }
    }

    pub fn edge(workers: usize) -> Self {
        ParallelPlan {
            strategy: Strategy::Edge,
            workers,
            ..ParallelPlan::serial()
        }
    }

    pub fn with_strategy(strategy: Strategy, workers: usize) -> Self {
        ParallelPlan {
            strategy,
            workers,
            ..ParallelPlan::serial()
        }
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Contract("workers must be at least 1".into()));
        }
        if self.node_chunk == 0 || self.edge_chunk == 0 {
            return Err(Error::Contract("chunk sizes must be at least 1".into()));
        }
        if self.strategy == Strategy::Edge && k < 3 {
            return Err(Error::Contract(format!(
                "the edge strategy needs k >= 3, got k={k}"
            )));
        }
        Ok(())
    }
}

impl Default for ParallelPlan {
    fn default() -> Self {
        ParallelPlan::serial()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunControl {
    pub deadline: Option<Instant>,
    pub record_units: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Execution {
    pub timed_out: bool,
    /// Scratch allocated by each worker, in worker order.
    pub worker_usage: Vec<ScratchUsage>,
    /// Clique count per unit (root rank or arc index) when recorded.
    pub unit_counts: Option<Vec<u64>>,
}

struct WorkerResult<S> {
    sink: S,
    usage: ScratchUsage,
    log: Vec<(usize, u64)>,
    timed_out: bool,
}

/// Runs every unit of `plan` under `par`, reporting cliques as
/// `to_input[rank]` ids into `sink`.
pub fn run_parallel<P: ListingPlan, S: ForkSink>(
    plan: &P,
    par: &ParallelPlan,
    to_input: &[VertexId],
    control: &RunControl,
    sink: &mut S,
) -> Execution {
    let (units, chunk, by_arc) = match par.strategy {
        Strategy::Edge => (plan.dag().m(), par.edge_chunk, true),
        _ => (plan.dag().n(), par.node_chunk, false),
    };
    let perm: Option<Vec<usize>> = par.shuffle_seed.map(|seed| {
        let mut p: Vec<usize> = (0..units).collect();
        p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        p
    });
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);

    let work = |sink: &mut S| -> (ScratchUsage, Vec<(usize, u64)>, bool) {
        let mut scratch = plan.scratch();
        let mut log = Vec::new();
        let mut timed_out = false;
        let mut mapped = MappedSink::new(sink, to_input);
        loop {
            if stop.load(Ordering::Relaxed) {
                break;
            }
            if control.deadline.is_some_and(|d| Instant::now() >= d) {
                stop.store(true, Ordering::Relaxed);
                timed_out = true;
                break;
            }
            let start = next.fetch_add(chunk, Ordering::Relaxed);
            if start >= units {
                break;
            }
            for i in start..(start + chunk).min(units) {
                let unit = perm.as_ref().map_or(i, |p| p[i]);
                let before = mapped.count().value();
                if by_arc {
                    plan.list_arc(unit, &mut scratch, &mut mapped);
                } else {
                    plan.list_root(unit as VertexId, &mut scratch, &mut mapped);
                }
                if control.record_units {
                    log.push((unit, mapped.count().value() - before));
                }
            }
        }
        (plan.usage(&scratch), log, timed_out)
    };

    if par.strategy == Strategy::Serial {
        // The caller's sink takes every clique directly; nothing to absorb.
        let (usage, log, timed_out) = work(sink);
        return Execution {
            timed_out,
            worker_usage: vec![usage],
            unit_counts: control.record_units.then(|| collect_log(units, [log])),
        };
    }

    let forks: Vec<S> = (0..par.workers).map(|_| sink.fork()).collect();
    let results: Vec<WorkerResult<S>> = thread::scope(|scope| {
        let handles: Vec<_> = forks
            .into_iter()
            .map(|mut fork| {
                let work = &work;
                scope.spawn(move || {
                    let (usage, log, timed_out) = work(&mut fork);
                    WorkerResult {
                        sink: fork,
                        usage,
                        log,
                        timed_out,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("listing worker panicked"))
            .collect()
    });

    let mut exec = Execution::default();
    let mut logs = Vec::new();
    for r in results {
        sink.absorb(r.sink);
        exec.worker_usage.push(r.usage);
        exec.timed_out |= r.timed_out;
        logs.push(r.log);
    }
    if control.record_units {
        exec.unit_counts = Some(collect_log(units, logs));
    }
    exec
}

fn collect_log<I: IntoIterator<Item = Vec<(usize, u64)>>>(units: usize, logs: I) -> Vec<u64> {
    let mut counts = vec![0u64; units];
    let mut seen = vec![false; units];
    for (unit, c) in logs.into_iter().flatten() {
        assert!(!seen[unit], "unit {unit} processed twice");
        seen[unit] = true;
        counts[unit] = c;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::listing::SDegreePlan;
    use crate::sink::{CollectSink, CountSink};

    fn k(n: u32) -> Graph {
        Graph::from_edges(
            n as usize,
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
        )
    }

    #[test]
    fn k10_edge_strategy_any_workers() {
        let plan = SDegreePlan::for_graph(&k(10), 5);
        let ids: Vec<VertexId> = (0..10).collect();
        for workers in [1, 2, 4, 8] {
            let mut sink = CountSink::new();
            run_parallel(
                &plan,
                &ParallelPlan::edge(workers),
                &ids,
                &RunControl::default(),
                &mut sink,
            );
            assert_eq!(sink.count().value(), 252);
        }
    }

    #[test]
    fn unit_log_sums_to_total() {
        let plan = SDegreePlan::for_graph(&k(8), 3);
        let ids: Vec<VertexId> = (0..8).collect();
        let control = RunControl {
            record_units: true,
            ..RunControl::default()
        };
        for par in [ParallelPlan::node(3), ParallelPlan::edge(3)] {
            let mut sink = CollectSink::new();
            let exec = run_parallel(&plan, &par, &ids, &control, &mut sink);
            let units = exec.unit_counts.unwrap();
            assert_eq!(units.iter().sum::<u64>(), 56);
            assert_eq!(sink.cliques.len(), 56);
            assert_eq!(exec.worker_usage.len(), 3);
        }
    }

    #[test]
    fn shuffled_order_same_count() {
        let plan = SDegreePlan::for_graph(&k(9), 4);
        let ids: Vec<VertexId> = (0..9).collect();
        let mut par = ParallelPlan::node(2);
        par.shuffle_seed = Some(11);
        let mut sink = CountSink::new();
        run_parallel(&plan, &par, &ids, &RunControl::default(), &mut sink);
        assert_eq!(sink.count().value(), 126);
    }

    #[test]
    fn validation() {
        assert!(ParallelPlan::node(0).validate(3).is_err());
        assert!(ParallelPlan::edge(2).validate(2).is_err());
        assert!(ParallelPlan::node(2).validate(2).is_ok());
        assert_eq!("edge".parse::<Strategy>().unwrap(), Strategy::Edge);
        assert!("tree".parse::<Strategy>().is_err());
    }
}
