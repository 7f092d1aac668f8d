//! Empirical estimation of the `nu` functional and sample-size bounds.

mod bounds;
mod empirical;
mod nu;
mod query;

pub use bounds::{required_samples_erased, required_samples_full};
pub use empirical::EmpiricalDistribution;
pub use nu::{nu_hat, nu_hat_erased, AuditRecord, MarginalTables, NuEstimate};
pub use query::{nu_hat_queried, JointStream, QueryOracle, ReplayStream, SampleStream};
