//! Learn a clique graph from samples and score it against the truth.

use mrf_nbhd::harness::{generate_model, score_edges, GeneratorSpec};
use mrf_nbhd::learn::{learn_graph_full, LearnConfig, TraceStep};
use mrf_nbhd::oracle::sample_exact;
use mrf_nbhd::{JointTable, Result};

fn main() -> Result<()> {
    let model = generate_model(&GeneratorSpec::new(12, 2, 3, 2, 0.4, 1.0).with_seed(21))?;
    let truth = model.clique_graph().edges();
    let samples = sample_exact(&JointTable::new(&model)?, 50_000, 4)?;

    let config = LearnConfig::from_bounds(2, 3, 2, 0.4, 1.0);
    println!("theoretical tau {:.3e}, L {:.3e}", config.theoretical_tau()?, config.theoretical_budget()?);
    // The theoretical threshold is far too conservative at this sample size.
    let config = config.with_tau(0.01).with_budget(6.0);

    let res = learn_graph_full(&samples, &config)?;
    for node in res.nodes.iter().take(3) {
        println!("node {} -> {:?}", node.node, node.neighbors);
        for step in &node.trace {
            match step {
                TraceStep::Add { set, nu } => println!("  add {set:?} (nu {nu:.4})"),
                TraceStep::Prune { node, nu, removed } => println!("  prune? {node} (nu {nu:.4}) removed={removed}"),
            }
        }
    }
    let score = score_edges(&truth, &res.edges);
    println!("{} true edges, {} learned, precision {:.3}, recall {:.3}", truth.len(), res.edges.len(), score.precision, score.recall);
    Ok(())
}
