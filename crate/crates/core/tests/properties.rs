mod common;

use common::{max_abs_diff, random_raw_model};
use mrf_nbhd::oracle::{erase, sample_exact};
use mrf_nbhd::seed;
use mrf_nbhd::{JointTable, MarkovRandomField, SampleSet};
use proptest::prelude::*;
use rand::Rng as _;

fn model_from(seed_: u64, n: usize, k: usize, r: usize) -> MarkovRandomField {
    let mut rng = seed::rng(seed_, 0, 0);
    random_raw_model(&mut rng, n, k, r.min(n), 0.5, 1.5)
}

fn arb_model() -> impl Strategy<Value = MarkovRandomField> {
    (any::<u64>(), 2..=6usize, 2..=3usize, 1..=3usize).prop_map(|(s, n, k, r)| model_from(s, n, k, r))
}

/// `P(x_rest | x_fixed)` read off the full joint, ordered like the kept nodes.
fn conditional_from_joint(joint: &JointTable, nodes: &[usize], states: &[usize]) -> Vec<f64> {
    let n = joint.n();
    let kept: Vec<usize> = (0..n).filter(|v| !nodes.contains(v)).collect();
    let mut order = kept.clone();
    order.extend_from_slice(nodes);
    let full = joint.marginal(&order);
    let ar = joint.arities();
    let tail: usize = nodes.iter().map(|&v| ar[v]).product();
    let mut offset = 0;
    for (&v, &s) in nodes.iter().zip(states) {
        offset = offset * ar[v] + s;
    }
    let slice: Vec<f64> = full.iter().skip(offset).step_by(tail).copied().collect();
    let z: f64 = slice.iter().sum();
    slice.into_iter().map(|p| p / z).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalize_is_idempotent(model in arb_model()) {
        let once = model.canonicalize();
        let twice = once.canonicalize();
        prop_assert_eq!(once.tensors().len(), twice.tensors().len());
        for (a, b) in once.tensors().iter().zip(twice.tensors()) {
            prop_assert_eq!(a.vertices(), b.vertices());
            prop_assert!(max_abs_diff(a.values(), b.values()) < 1e-12);
        }
    }

    #[test]
    fn canonicalize_preserves_law(model in arb_model()) {
        let a = JointTable::new(&model).unwrap();
        let b = JointTable::new(&model.canonicalize()).unwrap();
        prop_assert!(max_abs_diff(a.probs(), b.probs()) < 1e-12);
    }

    #[test]
    fn conditionals_respect_delta(model in arb_model(), s in any::<u64>()) {
        let model = model.canonicalize();
        let delta = model.derived_constants().delta;
        let mut rng = seed::rng(s, 0, 0);
        for u in 0..model.n() {
            let x: Vec<usize> = model.arities().iter().map(|&k| rng.random_range(0..k)).collect();
            let p = model.conditional_distribution(u, &x).unwrap();
            prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(p.iter().all(|&q| q >= delta - 1e-15), "{:?} < {}", p, delta);
        }
    }

    #[test]
    fn conditionals_are_local(model in arb_model(), s in any::<u64>()) {
        let graph = model.clique_graph();
        let mut rng = seed::rng(s, 0, 0);
        for u in 0..model.n() {
            let mut x: Vec<usize> = model.arities().iter().map(|&k| rng.random_range(0..k)).collect();
            let before = model.conditional_distribution(u, &x).unwrap();
            for v in (0..model.n()).filter(|&v| v != u && !graph.has_edge(u, v)) {
                x[v] = rng.random_range(0..model.arity(v));
            }
            let after = model.conditional_distribution(u, &x).unwrap();
            prop_assert!(max_abs_diff(&before, &after) < 1e-12);
        }
    }

    #[test]
    fn conditioning_matches_joint_and_composes(model in arb_model(), s in any::<u64>()) {
        prop_assume!(model.n() >= 3);
        let mut rng = seed::rng(s, 0, 0);
        let a = rng.random_range(0..model.n());
        let b = (a + 1 + rng.random_range(0..model.n() - 1)) % model.n();
        let (xa, xb) = (rng.random_range(0..model.arity(a)), rng.random_range(0..model.arity(b)));
        let joint = JointTable::new(&model).unwrap();

        let (lo, hi) = if a < b { ((a, xa), (b, xb)) } else { ((b, xb), (a, xa)) };
        let both = model.condition_on(&[lo.0, hi.0], &[lo.1, hi.1]).unwrap();
        let direct = JointTable::new(&both.model).unwrap();
        let expected = conditional_from_joint(&joint, &[lo.0, hi.0], &[lo.1, hi.1]);
        prop_assert!(max_abs_diff(direct.probs(), &expected) < 1e-10);

        let first = model.condition_on(&[a], &[xa]).unwrap();
        let b_new = first.new_index(b).unwrap();
        let second = first.model.condition_on(&[b_new], &[xb]).unwrap();
        let staged = JointTable::new(&second.model).unwrap();
        prop_assert!(max_abs_diff(direct.probs(), staged.probs()) < 1e-10);
    }

    #[test]
    fn mutual_information_chain_rule(model in arb_model(), s in any::<u64>()) {
        prop_assume!(model.n() >= 4);
        let joint = JointTable::new(&model).unwrap();
        let mut rng = seed::rng(s, 0, 0);
        let mut nodes: Vec<usize> = (0..model.n()).collect();
        for i in (1..nodes.len()).rev() {
            nodes.swap(i, rng.random_range(0..=i));
        }
        let (u, i, j, given) = (nodes[0], nodes[1], nodes[2], &nodes[3..4]);
        let mut ij = vec![i, j];
        ij.sort_unstable();
        let mut gi = vec![given[0], i];
        gi.sort_unstable();
        let lhs = joint.conditional_mi(u, &ij, given).unwrap();
        let rhs = joint.conditional_mi(u, &[i], given).unwrap() + joint.conditional_mi(u, &[j], &gi).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn pinsker_holds(model in arb_model(), s in any::<u64>()) {
        prop_assume!(model.n() >= 3);
        let joint = JointTable::new(&model).unwrap();
        let mut rng = seed::rng(s, 0, 0);
        let u = rng.random_range(0..model.n());
        let i = (u + 1) % model.n();
        let g = (u + 2) % model.n();
        let mi = joint.conditional_mi(u, &[i], &[g]).unwrap();
        let nu = joint.nu(u, &[i], &[g]).unwrap();
        prop_assert!((mi / 2.0).sqrt() >= nu - 1e-12);
    }

    #[test]
    fn model_json_round_trip(model in arb_model()) {
        let back = MarkovRandomField::from_json(&model.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, model);
    }

    #[test]
    fn sample_text_round_trip(model in arb_model(), s in any::<u64>(), p in 0.3..=1.0f64) {
        let joint = JointTable::new(&model).unwrap();
        let samples = erase(&sample_exact(&joint, 50, s).unwrap(), p, s).unwrap();
        let back = SampleSet::from_text(&samples.to_text()).unwrap();
        prop_assert_eq!(back, samples);
    }
}
