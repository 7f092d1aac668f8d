//! Exact and Gibbs sampling, random erasure, and the text sample format.

use mrf_nbhd::harness::{generate_model, GeneratorSpec};
use mrf_nbhd::oracle::{erase, gibbs_sample, sample_exact};
use mrf_nbhd::{JointTable, Result, SampleSet};

fn main() -> Result<()> {
    let model = generate_model(&GeneratorSpec::new(8, 2, 3, 2, 0.4, 1.0).with_seed(2))?;
    let joint = JointTable::new(&model)?;

    let exact = sample_exact(&joint, 20_000, 1)?;
    let gibbs = gibbs_sample(&model, 20_000, 500, 5, 1)?;
    let freq = |s: &SampleSet| s.rows().filter(|r| r[0] == 0).count() as f64 / s.m() as f64;
    println!("P(X_0 = 1): exact {:.4}, exact sampler {:.4}, Gibbs {:.4}", joint.marginal(&[0])[0], freq(&exact), freq(&gibbs));

    let erased = erase(&exact, 0.8, 3)?;
    println!("observed fraction after erasure: {:.4}", erased.observed_fraction());
    let text = erased.to_text();
    for line in text.lines().take(4) {
        println!("  {line}");
    }
    assert_eq!(SampleSet::from_text(&text)?, erased);
    Ok(())
}
