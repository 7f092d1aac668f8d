//! The guessing game at one node: Bob's wagers, exact and simulated payoff,
//! and the lower bound that certifies a detectable neighborhood.

use mrf_nbhd::game::{expected_payoff_exact, expected_payoff_mc, mi_chain, payoff_lower_bound, variance_check, BobStrategy};
use mrf_nbhd::harness::{generate_model, GeneratorSpec};
use mrf_nbhd::Result;

fn main() -> Result<()> {
    let alpha = 0.4;
    let model = generate_model(&GeneratorSpec::new(6, 3, 3, 2, alpha, 1.0).with_seed(7))?;
    let u = (0..model.n()).find(|&u| model.clique_graph().degree(u) > 0).expect("some edge");
    let bob = BobStrategy::new(&model, u)?;
    println!("node {u}: degree {}, Bob sees {} neighbors, {} possible sets", bob.degree(), bob.set_size(), bob.guess_sets().len());
    let set = &bob.guess_sets()[0];
    let x = vec![0; set.len()];
    println!("wager on R=0 seeing {set:?}=0: {:.4} (cap {:.2})", bob.wager(0, set, &x), bob.wager_cap());

    let dc = model.derived_constants();
    let exact = expected_payoff_exact(&model, u)?;
    let (mean, se) = expected_payoff_mc(&model, u, 200_000, 1)?;
    println!("E[payoff]: exact {exact:.5}, simulated {mean:.5} +- {se:.5}");
    println!("lower bound {:.3e}", payoff_lower_bound(alpha, dc.delta, model.order(), dc.gamma));

    let chain = mi_chain(&model, u, alpha)?;
    println!("upper chain: {:.5} <= {:.5}", chain.e_delta, chain.wager_cap * chain.mean_abs_dev);
    let var = variance_check(&model, u, alpha)?;
    println!("variance identity: {:.6} vs {:.6}", var.pair_sum, var.scaled);
    Ok(())
}
