//! The greedy neighborhood learner and graph assembly.

mod config;
mod detect;
mod graph;
mod nbhd;

pub use config::{theoretical_constants, LearnConfig, Mode};
pub use detect::min_detectable_nu;
pub use graph::{
    learn_graph, learn_graph_erased, learn_graph_full, learn_graph_queried, GraphResult, QueryAccounting,
};
pub use nbhd::{mrf_nbhd, EmpiricalNu, ErasedNu, ExactNu, NeighborhoodResult, NuProvider, QueriedNu, TraceStep};
