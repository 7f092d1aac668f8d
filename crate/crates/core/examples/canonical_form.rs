//! Put a model with overlapping, uncentered potentials into canonical form
//! and confirm the law did not change.

use mrf_nbhd::{CliqueTensor, JointTable, MarkovRandomField, Result};

fn main() -> Result<()> {
    // A pairwise table with a row bias, plus a unary field and a triple.
    let pair = CliqueTensor::new(vec![0, 1], vec![2, 3], vec![1.0, 0.2, 0.5, -0.3, 0.0, 0.4])?;
    let unary = CliqueTensor::new(vec![2], vec![2], vec![0.7, 0.1])?;
    let triple = CliqueTensor::from_fn(vec![0, 1, 2], vec![2, 3, 2], |i| if (i[0] + i[1] + i[2]) % 2 == 0 { 0.3 } else { -0.1 })?;
    let raw = MarkovRandomField::new(vec![2, 3, 2], 3, vec![pair, unary, triple])?;
    let canon = raw.canonicalize();

    println!("raw canonical? {}", raw.is_canonical(1e-9));
    for t in canon.tensors() {
        println!("  {:?} max |entry| {:.4}, max fiber sum {:.1e}", t.vertices(), t.max_abs(), t.max_fiber_sum());
    }
    let (a, b) = (JointTable::new(&raw)?, JointTable::new(&canon)?);
    let diff = a.probs().iter().zip(b.probs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    println!("max |p_raw - p_canon| = {diff:.2e}");

    let dc = canon.derived_constants();
    println!("gamma {:.4}  delta {:.4}  D {}  K {}", dc.gamma, dc.delta, dc.max_degree, dc.max_arity);
    Ok(())
}
