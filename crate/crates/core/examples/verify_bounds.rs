//! Exhaustive bound checks on a batch of generated models.

use mrf_nbhd::harness::{generate_model, verify_bounds, BoundsReport, GeneratorSpec, VerifyOptions};
use mrf_nbhd::Result;

fn main() -> Result<()> {
    let alpha = 0.4;
    let mut total = BoundsReport::default();
    for seed in 0..20 {
        let model = generate_model(&GeneratorSpec::new(6, 3, 3, 2, alpha, 1.0).with_seed(seed))?;
        total.merge(verify_bounds(&model, &VerifyOptions::new(alpha))?);
    }
    for c in &total.checks {
        println!("{:<18} {:>6} checked, {} violations, worst slack {:.3e}", c.name, c.checked, c.violations, c.worst_slack);
    }
    println!("all pass: {}", total.passes());
    Ok(())
}
