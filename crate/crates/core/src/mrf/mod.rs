//! The Markov random field model and its structural operations.

mod conditioning;
mod field;
mod graph;
mod io;
pub mod noncancel;
mod tensor;

pub use conditioning::ConditionedModel;
pub use field::{canonicalize, DerivedConstants, MarkovRandomField, CENTERING_TOL, PRUNE_TOL};
pub use graph::{CliqueGraph, EdgeCoverFlag, HyperedgeFlag, NonDegeneracyReport};
pub use noncancel::{effective_tensor, noncancellation_witness, Witness};
pub use tensor::{for_each_index, is_centered, CliqueTensor};
