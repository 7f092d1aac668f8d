use crate::error::Result;
use crate::mrf::CliqueGraph;
use crate::oracle::JointTable;
use crate::subsets::nonempty_subsets_up_to;

/// Smallest exact `nu` the learner must see above `tau` to recover the
/// graph with exact estimates, over every conditioning set.
///
/// Two families: for `S` missing a neighbor of `u`, the best guess set's
/// `nu_{u,I|S}`; for `S` covering the neighborhood, each neighbor's
/// `nu_{u,i|S\i}`. Any `tau` strictly below the result and above the
/// numerical floor of the zero cases recovers the graph exactly. Returns
/// `None` when the graph is empty. Cost is exponential in `n`.
pub fn min_detectable_nu(joint: &JointTable, graph: &CliqueGraph, r: usize) -> Result<Option<f64>> {
    let n = joint.n();
    let mut min: Option<f64> = None;
    let mut note = |v: f64| min = Some(min.map_or(v, |m: f64| m.min(v)));
    for u in 0..n {
        let nb = graph.neighbors(u);
        if nb.is_empty() {
            continue;
        }
        let others: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        for s in std::iter::once(Vec::new()).chain(nonempty_subsets_up_to(&others, others.len())) {
            let covers = nb.iter().all(|v| s.binary_search(v).is_ok());
            if covers {
                for &i in nb {
                    let rest: Vec<usize> = s.iter().copied().filter(|&v| v != i).collect();
                    note(joint.nu(u, &[i], &rest)?);
                }
            } else {
                let pool: Vec<usize> = others.iter().copied().filter(|v| s.binary_search(v).is_err()).collect();
                let mut best = 0.0f64;
                for set in nonempty_subsets_up_to(&pool, r.saturating_sub(1)) {
                    best = best.max(joint.nu(u, &set, &s)?);
                }
                note(best);
            }
        }
    }
    Ok(min)
}
