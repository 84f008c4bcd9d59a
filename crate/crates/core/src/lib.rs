//! k-clique listing.
//!
//! The pipeline is: load a [`Graph`], optionally shrink it with
//! [`pre_core`] and [`pre_list`], orient it into a [`Dag`] under a
//! [`VertexOrdering`], then list with one of the engines in [`listing`]
//! under a [`ParallelPlan`]. [`list`] runs all of it.
//!
//! ```
//! use kclique::{count_cliques, generate, Algorithm};
//!
//! let g = generate::complete(6);
//! assert_eq!(count_cliques(&g, 4, Algorithm::BitCol).unwrap().value(), 15);
//! ```
//!
//! Bitmap code is generic over the word type ([`BitWord`]); the aliases
//! below name the instantiations the pipeline picks from `word_bits`.

pub mod error;
pub mod generate;
pub mod graph;
pub mod intersect;
pub mod listing;
pub mod ordering;
pub mod parallel;
pub mod preprocess;
pub mod sink;
pub mod testkit;

pub use error::{Error, Result};
pub use graph::{
    load_edge_list, orient, read_binary, read_edge_list_file, stats, write_binary, write_edge_list,
    Dag, Graph, GraphStats, LoadedGraph, VertexId,
};
pub use intersect::{BitWord, BitmapAdjacency};
pub use listing::{
    brute_force, chiba_nishizeki, count_cliques, list, Algorithm, BitColPlan, Decode, KClistPlan,
    ListOptions, ListOutcome, ListingPlan, OrderingKind, Prune, SDegreePlan, ScratchUsage,
};
pub use ordering::{
    color_ordering, degeneracy_ordering, degree_ordering, greedy_coloring, ColorAssignment,
    VertexOrdering,
};
pub use parallel::{run_parallel, ParallelPlan, Strategy};
pub use preprocess::{pre_core, pre_list, Reduced, ReductionReport};
pub use sink::{CliqueCount, CliqueSink, CollectSink, CountSink, ForkSink, WriterSink};

pub type Bitmap32 = BitmapAdjacency<u32>;
pub type Bitmap64 = BitmapAdjacency<u64>;
pub type Bitmap128 = BitmapAdjacency<u128>;
pub type BitColPlan32 = BitColPlan<u32>;
pub type BitColPlan64 = BitColPlan<u64>;
pub type BitColPlan128 = BitColPlan<u128>;
