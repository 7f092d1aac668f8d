//! Exact inference by enumeration, plus the samplers that feed the learner.

mod joint;
mod samplers;
mod samples;

pub use joint::{exact_conditional_mi, exact_joint, exact_nu, JointTable, MAX_CONFIGURATIONS};
pub use samplers::{erase, gibbs_sample, sample_exact, ExactSampler, GibbsChain};
pub use samples::{SampleSet, ERASED};

use crate::error::{Error, Result};

/// Checks `u ∉ I ∪ S`, `I ∩ S = ∅`, no repeats, and every node below `n`.
pub(crate) fn check_query_sets(n: usize, u: usize, set: &[usize], given: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    for &v in std::iter::once(&u).chain(set).chain(given) {
        if v >= n {
            return Err(Error::InvalidArgument(format!("node {v} out of range for {n} nodes")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidArgument(format!(
                "node {v} repeated across u = {u}, I = {set:?}, S = {given:?}"
            )));
        }
    }
    Ok(())
}
