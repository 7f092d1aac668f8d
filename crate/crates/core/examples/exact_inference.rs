//! Exact joint tables, marginals, conditional mutual information and the
//! `nu` statistic on a small generated model.

use mrf_nbhd::harness::{generate_model, GeneratorSpec};
use mrf_nbhd::{JointTable, Result};

fn main() -> Result<()> {
    let model = generate_model(&GeneratorSpec::new(6, 3, 3, 2, 0.5, 1.0).with_seed(11))?;
    let joint = JointTable::new(&model)?;
    let graph = model.clique_graph();
    println!("edges: {:?}", graph.edges());
    println!("log Z = {:.4}", joint.log_partition());

    let u = 0;
    println!("P(X_0) = {:?}", joint.marginal(&[u]));
    for &v in graph.neighbors(u) {
        let mi = joint.conditional_mi(u, &[v], &[])?;
        let nu = joint.nu(u, &[v], &[])?;
        println!("  v={v}: I(X_0;X_v) = {mi:.5}  nu = {nu:.5}  sqrt(I/2) = {:.5}", (mi / 2.0).sqrt());
    }
    // Conditioning on the whole neighborhood screens off everything else.
    let far: Vec<usize> = (1..model.n()).filter(|v| !graph.has_edge(u, *v)).collect();
    if let Some(&w) = far.first() {
        let nb = graph.neighbors(u).to_vec();
        println!("nu(0, {{{w}}} | N(0)) = {:.2e}", joint.nu(u, &[w], &nb)?);
    }
    Ok(())
}
