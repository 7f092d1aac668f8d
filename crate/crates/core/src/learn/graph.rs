use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::LearnConfig;
use super::nbhd::{mrf_nbhd, EmpiricalNu, ErasedNu, NeighborhoodResult, NuProvider, QueriedNu};
use crate::error::{Error, Result};
use crate::estimation::{EmpiricalDistribution, QueryOracle, SampleStream};
use crate::harness::score_edges;
use crate::mrf::CliqueGraph;
use crate::oracle::SampleSet;

/// Query usage of a bounded-query run, with the worst-case totals it must
/// stay under.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryAccounting {
    pub capacity: usize,
    pub consumed: usize,
    pub max_query_size: usize,
    pub m_batch: usize,
    /// `L + r` at the effective budget.
    pub size_bound: f64,
    /// `m_batch * L * r * n^r` at the effective budget.
    pub total_bound: f64,
}

impl QueryAccounting {
    pub fn within_bounds(&self) -> bool {
        self.max_query_size as f64 <= self.size_bound && self.consumed as f64 <= self.total_bound
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphResult {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
    pub nodes: Vec<NeighborhoodResult>,
    pub warnings: Vec<String>,
    pub queries: Option<QueryAccounting>,
}

impl GraphResult {
    pub fn graph(&self) -> CliqueGraph {
        CliqueGraph::from_edges(self.n, self.edges.iter().copied())
    }

    pub fn asymmetries(&self) -> usize {
        self.warnings.iter().filter(|w| w.starts_with("asymmetric")).count()
    }

    /// Per-node records, plus a scoring summary when the truth is known.
    pub fn to_json(&self, truth: Option<&CliqueGraph>) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|r| json!({"node": r.node, "neighbors": r.neighbors, "trace": r.trace, "warnings": r.warnings}))
            .collect();
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(a, b)| [a, b]).collect();
        let mut out = json!({"nodes": nodes, "edges": edges, "warnings": self.warnings});
        if let Some(q) = &self.queries {
            out["queries"] = json!(q);
        }
        if let Some(t) = truth {
            let score = score_edges(&t.edges(), &self.edges);
            out["summary"] = json!({
                "edges": edges,
                "precision": score.precision,
                "recall": score.recall,
                "exact_match": score.exact_match,
            });
        }
        out
    }
}

/// Runs the learner at every node and keeps the edges both endpoints agree
/// on.
pub fn learn_graph<P: NuProvider + ?Sized>(provider: &mut P, config: &LearnConfig) -> Result<GraphResult> {
    let n = provider.n();
    let nodes = (0..n).map(|u| mrf_nbhd(provider, u, config)).collect::<Result<Vec<_>>>()?;
    let mut edges = BTreeSet::new();
    let mut warnings = Vec::new();
    for res in &nodes {
        let u = res.node;
        for &v in &res.neighbors {
            if nodes[v].neighbors.binary_search(&u).is_ok() {
                edges.insert((u.min(v), u.max(v)));
            } else {
                warnings.push(format!("asymmetric pair: {v} in N({u}) but {u} not in N({v})"));
            }
        }
    }
    Ok(GraphResult { n, edges, nodes, warnings, queries: None })
}

fn degenerate_warning(m: usize) -> Option<String> {
    (m < 2).then(|| format!("degenerate data: m = {m}, every nu_hat is 0"))
}

pub fn learn_graph_full(samples: &SampleSet, config: &LearnConfig) -> Result<GraphResult> {
    if samples.has_erasures() {
        return Err(Error::InvalidArgument("full mode needs complete samples".into()));
    }
    let mut provider = EmpiricalNu { emp: EmpiricalDistribution::new(samples) };
    let mut res = learn_graph(&mut provider, config)?;
    res.warnings.extend(degenerate_warning(samples.m()));
    Ok(res)
}

/// Complete-case learner over erased samples; coverage shortfalls become
/// per-node warnings.
pub fn learn_graph_erased(samples: &SampleSet, config: &LearnConfig) -> Result<GraphResult> {
    let mut provider = ErasedNu::new(EmpiricalDistribution::new(samples), config.coverage_floor);
    let mut res = learn_graph(&mut provider, config)?;
    res.warnings.extend(degenerate_warning(samples.m()));
    Ok(res)
}

/// Learner over a bounded-query oracle, one fresh batch per evaluation.
pub fn learn_graph_queried<S: SampleStream>(
    oracle: &mut QueryOracle<S>,
    config: &LearnConfig,
    m_batch: usize,
) -> Result<GraphResult> {
    config.validate()?;
    let n = oracle.arities().len();
    let budget = config.budget()?;
    let needed = (budget.floor() as usize).saturating_add(config.r).min(n);
    oracle.check_capacity(needed)?;
    let start = oracle.consumed();
    let mut res = learn_graph(&mut QueriedNu { oracle: &mut *oracle, m_batch }, config)?;
    let r = config.r as i32;
    res.queries = Some(QueryAccounting {
        capacity: oracle.capacity(),
        consumed: oracle.consumed() - start,
        max_query_size: oracle.max_query_size(),
        m_batch,
        size_bound: budget + config.r as f64,
        total_bound: m_batch as f64 * budget * config.r as f64 * (n as f64).powi(r),
    });
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::JointStream;
    use crate::mrf::{CliqueTensor, MarkovRandomField};
    use crate::oracle::{erase, exact_joint, sample_exact};

    fn ising() -> MarkovRandomField {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![0.5, -0.5, -0.5, 0.5]).unwrap();
        MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap()
    }

    fn cfg(model: &MarkovRandomField) -> LearnConfig {
        LearnConfig::from_model(model, 0.5, 0.5).with_tau(0.05).with_budget(3.0)
    }

    #[test]
    fn empty_model_gives_empty_graph() {
        let model = MarkovRandomField::independent(vec![2; 4], 2).unwrap();
        let s = sample_exact(&exact_joint(&model).unwrap(), 2000, 1).unwrap();
        let res = learn_graph_full(&s, &cfg(&model)).unwrap();
        assert!(res.edges.is_empty());
    }

    #[test]
    fn single_sample_is_flagged() {
        let model = ising();
        let s = sample_exact(&exact_joint(&model).unwrap(), 1, 1).unwrap();
        let res = learn_graph_full(&s, &cfg(&model)).unwrap();
        assert!(res.edges.is_empty());
        assert!(res.warnings.iter().any(|w| w.starts_with("degenerate")));
    }

    #[test]
    fn full_and_revealed_erased_agree() {
        let model = ising();
        let s = sample_exact(&exact_joint(&model).unwrap(), 20_000, 3).unwrap();
        let a = learn_graph_full(&s, &cfg(&model)).unwrap();
        let b = learn_graph_erased(&erase(&s, 1.0, 4).unwrap(), &cfg(&model)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges, BTreeSet::from([(0, 1)]));
        let v = a.to_json(Some(&model.clique_graph()));
        assert_eq!(v["summary"]["exact_match"], true);
    }

    #[test]
    fn nothing_revealed_gives_warnings_everywhere() {
        let model = ising();
        let s = sample_exact(&exact_joint(&model).unwrap(), 100, 3).unwrap();
        let res = learn_graph_erased(&erase(&s, 0.0, 4).unwrap(), &cfg(&model)).unwrap();
        assert!(res.edges.is_empty());
        assert!(res.nodes.iter().all(|r| r.warnings.iter().any(|w| w.starts_with("coverage"))));
    }

    #[test]
    fn queried_run_is_accounted() {
        let model = ising();
        let joint = exact_joint(&model).unwrap();
        let mut oracle = QueryOracle::new(JointStream::new(&joint, 8), 2);
        let res = learn_graph_queried(&mut oracle, &cfg(&model), 100_000).unwrap();
        assert_eq!(res.edges, BTreeSet::from([(0, 1)]));
        let q = res.queries.unwrap();
        assert!(q.within_bounds(), "{q:?}");
        assert_eq!(q.max_query_size, 2);
    }

    #[test]
    fn queried_capacity_checked_up_front() {
        let model = MarkovRandomField::independent(vec![2; 5], 2).unwrap();
        let joint = exact_joint(&model).unwrap();
        let mut oracle = QueryOracle::new(JointStream::new(&joint, 8), 3);
        let err = learn_graph_queried(&mut oracle, &cfg(&model), 10).unwrap_err();
        assert!(matches!(err, Error::QueryCapacity { requested: 5, capacity: 3 }));
    }
}
