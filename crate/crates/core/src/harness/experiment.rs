use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate_model, GeneratorSpec};
use super::score::{score_edges, EdgeScore};
use crate::error::{Error, Result};
use crate::estimation::{required_samples_erased, required_samples_full, JointStream, QueryOracle};
use crate::learn::{learn_graph_erased, learn_graph_full, learn_graph_queried, LearnConfig, Mode, QueryAccounting};
use crate::mrf::MarkovRandomField;
use crate::oracle::{erase, gibbs_sample, sample_exact, JointTable, SampleSet, MAX_CONFIGURATIONS};
use crate::seed::{self, stream};

/// How training samples are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SamplerKind {
    /// Exact when the joint table fits, Gibbs with the defaults otherwise.
    #[default]
    Auto,
    Exact,
    Gibbs { burn_in: usize, thinning: usize },
}

const GIBBS_DEFAULT: SamplerKind = SamplerKind::Gibbs { burn_in: 500, thinning: 5 };

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOptions {
    pub trials: usize,
    pub mode: Mode,
    /// Samples per trial; the batch size per evaluation in queried mode.
    pub m: usize,
    pub reveal_prob: f64,
    pub sampler: SamplerKind,
    pub query_capacity: Option<usize>,
    pub seed: u64,
}

impl ExperimentOptions {
    pub fn new(trials: usize, mode: Mode, m: usize, seed: u64) -> Self {
        Self { trials, mode, m, reveal_prob: 1.0, sampler: SamplerKind::Auto, query_capacity: None, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub true_edges: usize,
    pub learned_edges: usize,
    pub score: EdgeScore,
    pub asymmetries: usize,
    pub warnings: usize,
    pub queries: Option<QueryAccounting>,
    pub learn_seconds: f64,
    pub total_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub spec: GeneratorSpec,
    pub config: LearnConfig,
    pub options: ExperimentOptions,
    pub tau: f64,
    pub budget: f64,
    pub theoretical_tau: f64,
    pub theoretical_budget: f64,
    /// Sample bound at the theoretical `tau` and `L`; often infinite in f64.
    pub m_theoretical: f64,
    /// The same bound evaluated at the effective `tau` and `L`.
    pub m_theoretical_effective: f64,
    pub m_used: usize,
    pub trials: Vec<TrialResult>,
    pub recovery_rate: f64,
    pub mean_precision: f64,
    pub mean_recall: f64,
    pub seconds: f64,
}

impl ExperimentReport {
    /// The report with every timing field zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> Self {
        let mut out = self.clone();
        out.seconds = 0.0;
        for t in &mut out.trials {
            t.learn_seconds = 0.0;
            t.total_seconds = 0.0;
        }
        out
    }
}

fn sample_bound(config: &LearnConfig, opts: &ExperimentOptions, n: usize, tau: f64, budget: f64) -> f64 {
    let (k, r, omega, delta) = (config.max_arity, config.r, config.omega, config.delta);
    let ell = budget.ceil().min(usize::MAX as f64) as usize;
    let bound = match opts.mode {
        Mode::Full => required_samples_full(ell, tau / 2.0, omega, n, k, r, delta),
        Mode::Erased => required_samples_erased(budget, tau, omega, n, k, r, delta, opts.reveal_prob),
        Mode::Queried => {
            let queries = budget * r as f64 * (n as f64).powi(r as i32);
            required_samples_full(ell, tau / 2.0, omega / queries.max(1.0), n, k, r, delta)
        }
    };
    bound.unwrap_or(f64::NAN)
}

fn draw_samples(model: &MarkovRandomField, joint: Option<&JointTable>, opts: &ExperimentOptions, seed: u64) -> Result<SampleSet> {
    let kind = match (opts.sampler, joint) {
        (SamplerKind::Auto, Some(_)) => SamplerKind::Exact,
        (SamplerKind::Auto, None) => GIBBS_DEFAULT,
        (k, _) => k,
    };
    match kind {
        SamplerKind::Gibbs { burn_in, thinning } => gibbs_sample(model, opts.m, burn_in, thinning, seed),
        _ => match joint {
            Some(j) => sample_exact(j, opts.m, seed),
            None => Err(Error::TooManyConfigurations { configs: model.configuration_count(), limit: MAX_CONFIGURATIONS }),
        },
    }
}

fn run_trial(spec: &GeneratorSpec, config: &LearnConfig, opts: &ExperimentOptions, trial: usize) -> Result<TrialResult> {
    let start = Instant::now();
    let trial_seed = seed::derive(opts.seed, stream::TRIAL, trial as u64);
    let model = generate_model(&spec.clone().with_seed(trial_seed))?;
    let truth = model.clique_graph().edges();
    let joint = if model.configuration_count() <= MAX_CONFIGURATIONS { Some(JointTable::new(&model)?) } else { None };

    let (result, learn_seconds) = match opts.mode {
        Mode::Full | Mode::Erased => {
            let mut samples = draw_samples(&model, joint.as_ref(), opts, trial_seed)?;
            if opts.mode == Mode::Erased {
                samples = erase(&samples, opts.reveal_prob, trial_seed)?;
            }
            let t = Instant::now();
            let res = match opts.mode {
                Mode::Full => learn_graph_full(&samples, config)?,
                _ => learn_graph_erased(&samples, config)?,
            };
            (res, t.elapsed().as_secs_f64())
        }
        Mode::Queried => {
            let joint = joint.as_ref().ok_or(Error::TooManyConfigurations {
                configs: model.configuration_count(),
                limit: MAX_CONFIGURATIONS,
            })?;
            let budget = config.budget()?;
            let capacity = opts
                .query_capacity
                .unwrap_or_else(|| (budget.floor() as usize).saturating_add(config.r).min(model.n()));
            let mut oracle = QueryOracle::new(JointStream::new(joint, trial_seed), capacity);
            let t = Instant::now();
            let res = learn_graph_queried(&mut oracle, config, opts.m)?;
            (res, t.elapsed().as_secs_f64())
        }
    };
    Ok(TrialResult {
        trial,
        seed: trial_seed,
        true_edges: truth.len(),
        learned_edges: result.edges.len(),
        score: score_edges(&truth, &result.edges),
        asymmetries: result.asymmetries(),
        warnings: result.warnings.len() + result.nodes.iter().map(|r| r.warnings.len()).sum::<usize>(),
        queries: result.queries,
        learn_seconds,
        total_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Generate, sample, learn, and score `trials` times with independent
/// derived seeds. Trials run in parallel; results are in trial order.
pub fn run_experiment(spec: &GeneratorSpec, config: &LearnConfig, opts: &ExperimentOptions) -> Result<ExperimentReport> {
    if opts.trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    if opts.m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if config.mode != opts.mode {
        return Err(Error::InvalidArgument(format!("config mode {} differs from run mode {}", config.mode, opts.mode)));
    }
    config.validate()?;
    let start = Instant::now();
    let trials = (0..opts.trials)
        .into_par_iter()
        .map(|t| run_trial(spec, config, opts, t))
        .collect::<Result<Vec<_>>>()?;
    let count = trials.len() as f64;
    let (tau, budget) = (config.tau()?, config.budget()?);
    let (ttau, tbudget) = (config.theoretical_tau()?, config.theoretical_budget()?);
    Ok(ExperimentReport {
        spec: spec.clone(),
        config: config.clone(),
        options: opts.clone(),
        tau,
        budget,
        theoretical_tau: ttau,
        theoretical_budget: tbudget,
        m_theoretical: sample_bound(config, opts, spec.n, ttau, tbudget),
        m_theoretical_effective: sample_bound(config, opts, spec.n, tau, budget),
        m_used: opts.m,
        recovery_rate: trials.iter().filter(|t| t.score.exact_match).count() as f64 / count,
        mean_precision: trials.iter().map(|t| t.score.precision).sum::<f64>() / count,
        mean_recall: trials.iter().map(|t| t.score.recall).sum::<f64>() / count,
        trials,
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(mode: Mode) -> (GeneratorSpec, LearnConfig) {
        let spec = GeneratorSpec::new(6, 2, 2, 2, 0.4, 1.0);
        let config = LearnConfig::from_bounds(2, 2, 2, 0.4, 1.0).with_tau(0.03).with_budget(4.0).with_mode(mode);
        (spec, config)
    }

    #[test]
    fn zero_trials_rejected() {
        let (spec, config) = setup(Mode::Full);
        assert!(run_experiment(&spec, &config, &ExperimentOptions::new(0, Mode::Full, 100, 1)).is_err());
    }

    #[test]
    fn seeded_reports_repeat() {
        let (spec, config) = setup(Mode::Full);
        let opts = ExperimentOptions::new(4, Mode::Full, 5_000, 7);
        let a = run_experiment(&spec, &config, &opts).unwrap();
        let b = run_experiment(&spec, &config, &opts).unwrap();
        assert_eq!(a.without_timings(), b.without_timings());
        assert!(a.m_theoretical_effective > 5_000.0);
        for t in &a.trials {
            if t.score.exact_match {
                assert_eq!((t.score.precision, t.score.recall), (1.0, 1.0));
            }
        }
    }

    #[test]
    fn erased_and_queried_modes_run() {
        let (spec, config) = setup(Mode::Erased);
        let mut opts = ExperimentOptions::new(2, Mode::Erased, 5_000, 3);
        opts.reveal_prob = 0.9;
        let rep = run_experiment(&spec, &config, &opts).unwrap();
        assert_eq!(rep.trials.len(), 2);
        let (spec, config) = setup(Mode::Queried);
        let rep = run_experiment(&spec, &config, &ExperimentOptions::new(2, Mode::Queried, 2_000, 3)).unwrap();
        assert!(rep.trials.iter().all(|t| t.queries.as_ref().unwrap().within_bounds()));
    }
}
