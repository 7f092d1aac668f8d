//! Empirical `nu` against the exact value as the sample size grows, on full
//! and erased data.

use mrf_nbhd::estimation::{nu_hat, nu_hat_erased, EmpiricalDistribution};
use mrf_nbhd::harness::{generate_model, GeneratorSpec};
use mrf_nbhd::oracle::{erase, sample_exact};
use mrf_nbhd::{JointTable, Result};

fn main() -> Result<()> {
    let model = generate_model(&GeneratorSpec::new(7, 2, 3, 2, 0.4, 1.0).with_seed(8))?;
    let joint = JointTable::new(&model)?;
    let u = 0;
    let v = model.clique_graph().neighbors(u)[0];
    let given = [(v + 1..model.n()).find(|&w| w != u).unwrap_or(1)];
    let exact = joint.nu(u, &[v], &given)?;
    println!("exact nu(u={u}, I={{{v}}} | S={given:?}) = {exact:.5}");

    for m in [1_000, 10_000, 100_000] {
        let samples = sample_exact(&joint, m, m as u64)?;
        let full = nu_hat(&EmpiricalDistribution::new(&samples), u, &[v], &given)?;
        let erased = erase(&samples, 0.7, 1)?;
        let est = nu_hat_erased(&EmpiricalDistribution::new(&erased), u, &[v], &given)?;
        println!("m = {m:>6}: full {full:.5}  erased {:.5} ({} complete rows)", est.value, est.m_effective);
    }
    Ok(())
}
