//! Command-line front end. Exits 0 when the command succeeds and every
//! check it performs passes, 1 when a check fails, 2 on errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mrf_nbhd::estimation::{JointStream, QueryOracle, ReplayStream};
use mrf_nbhd::game::{expected_payoff_exact, expected_payoff_mc, has_nonvanishing_maximal_hyperedge, payoff_lower_bound};
use mrf_nbhd::harness::{generate_model, run_experiment, verify_bounds, ExperimentOptions, GeneratorSpec, SamplerKind, VerifyOptions};
use mrf_nbhd::learn::{learn_graph_erased, learn_graph_full, learn_graph_queried, GraphResult, LearnConfig, Mode};
use mrf_nbhd::oracle::{erase, gibbs_sample, sample_exact};
use mrf_nbhd::{JointTable, MarkovRandomField, Result, SampleSet};
use serde_json::json;

#[derive(Parser)]
#[command(name = "mrfnbhd", version, about = "Structure learning for higher-order discrete MRFs")]
struct Cli {
    /// Log level for diagnostics on stderr (error, warn, info, debug, trace).
    #[arg(long, global = true, default_value = "warn")]
    log: String,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Maximum clique-graph degree.
    #[arg(long = "D", default_value_t = 3)]
    max_degree: usize,
    /// Alphabet size.
    #[arg(long = "K", default_value_t = 2)]
    max_arity: usize,
    #[arg(long, default_value_t = 0.4)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    /// Also draw unary fields.
    #[arg(long)]
    unary: bool,
}

impl ModelArgs {
    fn spec(&self, seed: u64) -> GeneratorSpec {
        let mut spec = GeneratorSpec::new(self.n, self.r, self.max_degree, self.max_arity, self.alpha, self.beta)
            .with_density(self.density)
            .with_seed(seed);
        spec.unary = self.unary;
        spec
    }
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long, default_value_t = Mode::Full)]
    mode: Mode,
    /// Threshold; defaults to the theoretical value.
    #[arg(long)]
    tau: Option<f64>,
    /// Step budget; defaults to the theoretical value at the effective tau.
    #[arg(long = "L")]
    budget: Option<f64>,
    /// Prune with sets of size up to r - 1.
    #[arg(long)]
    prune_sets: bool,
}

impl LearnArgs {
    fn apply(&self, mut config: LearnConfig) -> LearnConfig {
        config.mode = self.mode;
        config.tau_override = self.tau;
        config.budget_override = self.budget;
        config.prune_sets = self.prune_sets;
        config
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random non-degenerate model and write it as JSON.
    GenerateModel {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw i.i.d. samples from a model.
    Sample {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use Gibbs sampling instead of the exact sampler.
        #[arg(long)]
        gibbs: bool,
        #[arg(long, default_value_t = 500)]
        burn_in: usize,
        #[arg(long, default_value_t = 5)]
        thinning: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hide each entry independently, keeping it with probability p.
    Erase {
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Learn the clique graph from samples, or from a model through a
    /// bounded-query oracle.
    Learn {
        /// Sample file (full and erased modes; replayed in queried mode).
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Model file: supplies constants, the queried-mode source, and the
        /// truth to score against.
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        learn: LearnArgs,
        /// Interaction order when no model is given.
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long = "D", default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0.4)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Samples per evaluation in queried mode.
        #[arg(long, default_value_t = 10_000)]
        m: usize,
        /// Query capacity; defaults to floor(L) + r.
        #[arg(long)]
        capacity: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check the information-theoretic bounds on a model.
    VerifyBounds {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0.4)]
        alpha: f64,
        #[arg(long, default_value_t = 2)]
        pinsker_given: usize,
        #[arg(long, default_value_t = 3)]
        floor_given: usize,
        #[arg(long)]
        no_game: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play the guessing game at one node, exactly and by simulation.
    PlayGame {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        node: usize,
        #[arg(long, default_value_t = 100_000)]
        rounds: usize,
        #[arg(long, default_value_t = 0.4)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate, sample, learn, and score many models.
    RunExperiment {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        learn: LearnArgs,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Samples per trial (batch size in queried mode).
        #[arg(long, default_value_t = 50_000)]
        m: usize,
        /// Reveal probability in erased mode.
        #[arg(long, default_value_t = 0.9)]
        reveal: f64,
        #[arg(long)]
        gibbs: bool,
        /// Fail unless the exact-recovery rate reaches this value.
        #[arg(long)]
        min_recovery: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn learn(
    samples: Option<&Path>,
    model: Option<&MarkovRandomField>,
    config: &LearnConfig,
    m: usize,
    capacity: Option<usize>,
    seed: u64,
) -> Result<GraphResult> {
    let load = || -> Result<SampleSet> {
        let path = samples.ok_or_else(|| mrf_nbhd::Error::InvalidArgument("--samples is required".into()))?;
        SampleSet::load(path)
    };
    match config.mode {
        Mode::Full => learn_graph_full(&load()?, config),
        Mode::Erased => learn_graph_erased(&load()?, config),
        Mode::Queried => {
            let cap = capacity.unwrap_or((config.budget()?.floor() as usize).saturating_add(config.r));
            match (samples, model) {
                (Some(_), _) => {
                    let data = load()?;
                    let mut oracle = QueryOracle::new(ReplayStream::new(&data)?, cap.min(data.n()));
                    learn_graph_queried(&mut oracle, config, m)
                }
                (None, Some(model)) => {
                    let joint = JointTable::new(model)?;
                    let mut oracle = QueryOracle::new(JointStream::new(&joint, seed), cap.min(model.n()));
                    learn_graph_queried(&mut oracle, config, m)
                }
                (None, None) => Err(mrf_nbhd::Error::InvalidArgument("queried mode needs --samples or --model".into())),
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Command::GenerateModel { model, seed, out } => {
            let m = generate_model(&model.spec(seed))?;
            emit(out.as_deref(), &m.to_json()?)?;
            Ok(true)
        }
        Command::Sample { model, m, seed, gibbs, burn_in, thinning, out } => {
            let model = MarkovRandomField::load(model)?;
            let samples = if gibbs {
                gibbs_sample(&model, m, burn_in, thinning, seed)?
            } else {
                sample_exact(&JointTable::new(&model)?, m, seed)?
            };
            emit(out.as_deref(), samples.to_text().trim_end())?;
            Ok(true)
        }
        Command::Erase { samples, p, seed, out } => {
            let erased = erase(&SampleSet::load(samples)?, p, seed)?;
            emit(out.as_deref(), erased.to_text().trim_end())?;
            Ok(true)
        }
        Command::Learn { samples, model, learn: args, r, max_degree, alpha, beta, m, capacity, seed, out } => {
            let model = model.map(MarkovRandomField::load).transpose()?;
            let base = match &model {
                Some(mm) => LearnConfig::from_model(mm, alpha, beta),
                None => {
                    let k = match &samples {
                        Some(p) => SampleSet::load(p)?.arities().iter().copied().max().unwrap_or(2),
                        None => 2,
                    };
                    LearnConfig::from_bounds(r, max_degree, k, alpha, beta)
                }
            };
            let config = args.apply(base);
            let res = learn(samples.as_deref(), model.as_ref(), &config, m, capacity, seed)?;
            let truth = model.as_ref().map(MarkovRandomField::clique_graph);
            let mut value = res.to_json(truth.as_ref());
            value["tau"] = json!(config.tau()?);
            value["L"] = json!(config.budget()?);
            emit(out.as_deref(), &serde_json::to_string_pretty(&value)?)?;
            let queries_ok = res.queries.as_ref().is_none_or(|q| q.within_bounds());
            let exact = truth.is_none_or(|t| t.edges() == res.edges);
            Ok(queries_ok && exact && res.asymmetries() == 0)
        }
        Command::VerifyBounds { model, alpha, pinsker_given, floor_given, no_game, out } => {
            let model = MarkovRandomField::load(model)?;
            let mut opts = VerifyOptions::new(alpha);
            opts.pinsker_max_given = pinsker_given;
            opts.floor_max_given = floor_given;
            opts.game = !no_game;
            let report = verify_bounds(&model, &opts)?;
            emit(out.as_deref(), &serde_json::to_string_pretty(&json!({"passes": report.passes(), "checks": report.checks}))?)?;
            Ok(report.passes())
        }
        Command::PlayGame { model, node, rounds, alpha, seed } => {
            let model = MarkovRandomField::load(model)?.canonicalize();
            let dc = model.derived_constants();
            let exact = expected_payoff_exact(&model, node)?;
            let (mean, se) = expected_payoff_mc(&model, node, rounds, seed)?;
            let eligible = has_nonvanishing_maximal_hyperedge(&model, node, alpha);
            let bound = payoff_lower_bound(alpha, dc.delta, model.order(), dc.gamma);
            let mc_ok = (mean - exact).abs() <= 3.0 * se.max(f64::MIN_POSITIVE);
            let bound_ok = !eligible || exact >= bound;
            let value = json!({
                "node": node, "exact": exact, "mc_mean": mean, "mc_se": se, "rounds": rounds,
                "lower_bound": bound, "bound_applies": eligible, "mc_agrees": mc_ok, "bound_holds": bound_ok,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(mc_ok && bound_ok)
        }
        Command::RunExperiment { model, learn: args, trials, m, reveal, gibbs, min_recovery, seed, out } => {
            let spec = model.spec(0);
            let config = args.apply(LearnConfig::from_bounds(spec.r, spec.max_degree, spec.max_arity, spec.alpha, spec.beta));
            let mut opts = ExperimentOptions::new(trials, args.mode, m, seed);
            opts.reveal_prob = reveal;
            if gibbs {
                opts.sampler = SamplerKind::Gibbs { burn_in: 500, thinning: 5 };
            }
            let report = run_experiment(&spec, &config, &opts)?;
            emit(out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
            eprintln!(
                "recovery {:.3} ({} trials, m = {}, tau = {}, L = {}) in {:.1}s",
                report.recovery_rate, trials, m, report.tau, report.budget, report.seconds
            );
            Ok(min_recovery.is_none_or(|floor| report.recovery_rate >= floor))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new().parse_filters(&cli.log).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
