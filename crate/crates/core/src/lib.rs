//! Structure learning for discrete Markov random fields with higher-order
//! (hyperedge) interactions.
//!
//! The crate is organised around the learning pipeline:
//!
//! - [`mrf`]: the model itself. Clique tensors, canonical (centered) form,
//!   non-degeneracy checks, local energies and conditionals, conditioning,
//!   and the non-cancellation machinery for effective tensors.
//! - [`oracle`]: brute-force exact inference (joint tables, conditional
//!   mutual information, the exact `nu` functional) and the samplers
//!   (inverse-CDF, Gibbs, erasure channel).
//! - [`estimation`]: empirical distributions, the `nu_hat` estimator over
//!   full, erased, and query-limited data, and sample-size calculators.
//! - [`learn`]: the greedy neighborhood learner and graph assembly.
//! - [`game`]: the guessing game used to certify mutual-information lower
//!   bounds, with exact and Monte-Carlo payoff evaluation.
//! - [`harness`]: random non-degenerate model generation, scoring, and
//!   experiment orchestration.
//!
//! Nodes and states are 0-based everywhere in the API. The sample file
//! format is the one exception: it writes states 1-based.

pub mod error;
pub mod estimation;
pub mod game;
pub mod harness;
pub mod learn;
pub mod mrf;
pub mod oracle;
pub mod seed;
pub mod subsets;

pub use error::{Error, Result};
pub use oracle::{JointTable, SampleSet};
pub use mrf::{CliqueGraph, CliqueTensor, DerivedConstants, MarkovRandomField, NonDegeneracyReport};

