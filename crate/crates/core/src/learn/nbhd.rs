use serde::Serialize;

use super::config::LearnConfig;
use crate::error::{Error, Result};
use crate::estimation::{nu_hat, nu_hat_erased, nu_hat_queried, EmpiricalDistribution, QueryOracle, SampleStream};
use crate::oracle::JointTable;
use crate::subsets::{nonempty_subsets_up_to, union_sorted};

/// Answers `nu_{u,I|S}` queries for the learner.
pub trait NuProvider {
    fn n(&self) -> usize;

    fn nu(&mut self, u: usize, set: &[usize], given: &[usize]) -> Result<f64>;

    /// Warnings raised since the last call.
    fn take_warnings(&mut self) -> Vec<String> {
        Vec::new()
    }

    /// Samples drawn from a query oracle so far.
    fn queries_consumed(&self) -> usize {
        0
    }
}

/// Exact `nu` from the joint table.
#[derive(Clone, Copy, Debug)]
pub struct ExactNu<'a> {
    pub joint: &'a JointTable,
}

impl NuProvider for ExactNu<'_> {
    fn n(&self) -> usize {
        self.joint.n()
    }

    fn nu(&mut self, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
        self.joint.nu(u, set, given)
    }
}

/// `nu_hat` over complete samples.
#[derive(Debug)]
pub struct EmpiricalNu<'a> {
    pub emp: EmpiricalDistribution<'a>,
}

impl NuProvider for EmpiricalNu<'_> {
    fn n(&self) -> usize {
        self.emp.samples().n()
    }

    fn nu(&mut self, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
        nu_hat(&self.emp, u, set, given)
    }
}

/// Complete-case `nu_hat` over erased samples. Evaluations retaining fewer
/// than `floor` rows return 0 and leave a warning.
#[derive(Debug)]
pub struct ErasedNu<'a> {
    pub emp: EmpiricalDistribution<'a>,
    pub floor: usize,
    warnings: Vec<String>,
}

impl<'a> ErasedNu<'a> {
    pub fn new(emp: EmpiricalDistribution<'a>, floor: usize) -> Self {
        Self { emp, floor, warnings: Vec::new() }
    }
}

impl NuProvider for ErasedNu<'_> {
    fn n(&self) -> usize {
        self.emp.samples().n()
    }

    fn nu(&mut self, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
        let m_eff = match nu_hat_erased(&self.emp, u, set, given) {
            Ok(est) if est.m_effective >= self.floor => return Ok(est.value),
            Ok(est) => est.m_effective,
            Err(Error::InsufficientCoverage { .. }) => 0,
            Err(e) => return Err(e),
        };
        self.warnings.push(format!(
            "coverage: u={u} I={set:?} S={given:?} kept {m_eff} rows, floor {}; using 0",
            self.floor
        ));
        Ok(0.0)
    }

    fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }
}

/// Fresh batch of `m_batch` bounded queries per evaluation.
#[derive(Debug)]
pub struct QueriedNu<'a, S> {
    pub oracle: &'a mut QueryOracle<S>,
    pub m_batch: usize,
}

impl<S: SampleStream> NuProvider for QueriedNu<'_, S> {
    fn n(&self) -> usize {
        self.oracle.arities().len()
    }

    fn nu(&mut self, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
        Ok(nu_hat_queried(self.oracle, u, set, given, self.m_batch)?.value)
    }

    fn queries_consumed(&self) -> usize {
        self.oracle.consumed()
    }
}

/// One step of the learner's trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceStep {
    /// Step 2 grew `S` by `set`.
    Add { set: Vec<usize>, nu: f64 },
    /// Step 3 tested `node` (or a set through it) against the rest of `S`.
    Prune { node: usize, nu: f64, removed: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NeighborhoodResult {
    pub node: usize,
    pub neighbors: Vec<usize>,
    pub trace: Vec<TraceStep>,
    pub warnings: Vec<String>,
    pub evaluations: usize,
    pub queries_used: usize,
}

/// Greedy neighborhood estimate for `u`: grow `S` by the best set with
/// `nu_hat > tau` while `|S| <= L`, then prune members that carry no
/// conditional signal.
pub fn mrf_nbhd<P: NuProvider + ?Sized>(provider: &mut P, u: usize, config: &LearnConfig) -> Result<NeighborhoodResult> {
    config.validate()?;
    let n = provider.n();
    if u >= n {
        return Err(Error::InvalidArgument(format!("node {u} out of range for {n} nodes")));
    }
    let tau = config.tau()?;
    let budget = config.budget()?;
    let max_set = config.r - 1;
    let queries_before = provider.queries_consumed();
    let mut evaluations = 0;
    let mut trace = Vec::new();
    let mut warnings = Vec::new();
    let mut s: Vec<usize> = Vec::new();

    while s.len() as f64 <= budget {
        let pool: Vec<usize> = (0..n).filter(|&v| v != u && s.binary_search(&v).is_err()).collect();
        let mut best: Option<(Vec<usize>, f64)> = None;
        for set in nonempty_subsets_up_to(&pool, max_set) {
            let v = provider.nu(u, &set, &s)?;
            evaluations += 1;
            if v > tau && best.as_ref().is_none_or(|(_, b)| v > *b) {
                best = Some((set, v));
            }
        }
        let Some((set, v)) = best else { break };
        s = union_sorted(&s, &set);
        trace.push(TraceStep::Add { set, nu: v });
    }
    if s.len() as f64 > budget {
        warnings.push(format!("budget exhausted: |S| = {} exceeds L = {budget}", s.len()));
    }

    for i in s.clone() {
        let (nu, keep) = if config.prune_sets && max_set > 1 {
            let others: Vec<usize> = s.iter().copied().filter(|&v| v != i).collect();
            let mut best = 0.0f64;
            let mut keep = false;
            for extra in nonempty_subsets_up_to(&others, max_set - 1).into_iter().chain([Vec::new()]) {
                let set = union_sorted(&extra, &[i]);
                let rest: Vec<usize> = s.iter().copied().filter(|v| set.binary_search(v).is_err()).collect();
                let v = provider.nu(u, &set, &rest)?;
                evaluations += 1;
                best = best.max(v);
                if v >= tau {
                    keep = true;
                    break;
                }
            }
            (best, keep)
        } else {
            let rest: Vec<usize> = s.iter().copied().filter(|&v| v != i).collect();
            let v = provider.nu(u, &[i], &rest)?;
            evaluations += 1;
            (v, v >= tau)
        };
        if !keep {
            s.retain(|&v| v != i);
        }
        trace.push(TraceStep::Prune { node: i, nu, removed: !keep });
    }

    warnings.extend(provider.take_warnings());
    Ok(NeighborhoodResult {
        node: u,
        neighbors: s,
        trace,
        warnings,
        evaluations,
        queries_used: provider.queries_consumed() - queries_before,
    })
}
