//! A small recovery experiment in each of the three data modes.

use mrf_nbhd::harness::{run_experiment, ExperimentOptions, GeneratorSpec};
use mrf_nbhd::learn::{LearnConfig, Mode};
use mrf_nbhd::Result;

fn main() -> Result<()> {
    let spec = GeneratorSpec::new(10, 2, 3, 2, 0.4, 1.0);
    for (mode, m, budget) in [(Mode::Full, 30_000, 6.0), (Mode::Erased, 70_000, 6.0), (Mode::Queried, 10_000, 4.0)] {
        let config = LearnConfig::from_bounds(2, 3, 2, 0.4, 1.0).with_tau(0.01).with_budget(budget).with_mode(mode);
        let mut opts = ExperimentOptions::new(10, mode, m, 42);
        opts.reveal_prob = 0.9;
        let rep = run_experiment(&spec, &config, &opts)?;
        println!(
            "{:>8}: m = {m:>6}, recovery {:.2}, precision {:.3}, recall {:.3} ({:.1}s)",
            mode.to_string(),
            rep.recovery_rate, rep.mean_precision, rep.mean_recall, rep.seconds
        );
    }
    Ok(())
}
