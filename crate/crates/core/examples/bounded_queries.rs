//! Learning through an oracle that only reveals a few coordinates per sample.

use mrf_nbhd::estimation::{JointStream, QueryOracle};
use mrf_nbhd::harness::{generate_model, GeneratorSpec};
use mrf_nbhd::learn::{learn_graph_queried, LearnConfig, Mode};
use mrf_nbhd::{JointTable, Result};

fn main() -> Result<()> {
    let model = generate_model(&GeneratorSpec::new(10, 2, 3, 2, 0.4, 1.0).with_seed(5))?;
    let joint = JointTable::new(&model)?;
    let config = LearnConfig::from_bounds(2, 3, 2, 0.4, 1.0).with_tau(0.01).with_budget(4.0).with_mode(Mode::Queried);

    // Each query sees at most floor(L) + r = 6 of the 10 coordinates.
    let mut oracle = QueryOracle::new(JointStream::new(&joint, 9), 6);
    let res = learn_graph_queried(&mut oracle, &config, 10_000)?;
    let q = res.queries.as_ref().expect("queried runs report usage");
    println!("exact recovery: {}", res.edges == model.clique_graph().edges());
    println!("largest query {} (bound {}), samples drawn {} (bound {:.3e})", q.max_query_size, q.size_bound, q.consumed, q.total_bound);
    Ok(())
}
