//! Random model generation, scoring, experiments, and the exhaustive bound
//! checks behind `verify-bounds`.

mod experiment;
mod generate;
mod score;
mod verify;

pub use experiment::{run_experiment, ExperimentOptions, ExperimentReport, SamplerKind, TrialResult};
pub use generate::{generate_model, GeneratorSpec, MAX_TRIES};
pub use score::{score_edges, EdgeScore};
pub use verify::{
    check_conditional_floor, check_game, check_pinsker, verify_bounds, BoundCheck, BoundsReport, VerifyOptions,
};
