//! The guessing game: Bob sees a random subset of a node's neighbors and
//! wagers on the node's state. A positive expected payoff certifies mutual
//! information between the node and small neighbor sets.

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mrf::{CliqueGraph, MarkovRandomField, CENTERING_TOL};
use crate::oracle::{ExactSampler, JointTable};
use crate::seed::{self, stream, Rng};
use crate::subsets::{binomial, subsets_of_size};

const MC_CHUNKS: usize = 64;

/// Size of the revealed set: `min(r - 1, available)`.
pub fn guess_size(available: usize, r: usize) -> usize {
    available.min(r.saturating_sub(1))
}

/// All guess sets for `u`: the `s`-subsets of `Γ(u) \ exclude`, where
/// `s = min(r - 1, |Γ(u) \ exclude|)`. Bob's set is uniform over this list.
pub fn guess_sets(graph: &CliqueGraph, u: usize, exclude: &[usize], r: usize) -> Result<Vec<Vec<usize>>> {
    let pool: Vec<usize> = graph.neighbors(u).iter().copied().filter(|v| !exclude.contains(v)).collect();
    if pool.is_empty() {
        return Err(Error::InvalidArgument(format!("node {u} has no neighbors left to reveal")));
    }
    Ok(subsets_of_size(&pool, guess_size(pool.len(), r)))
}

#[derive(Clone, Debug)]
struct Term {
    tensor: usize,
    u_pos: usize,
    weight: f64,
}

/// Bob's explicit strategy at node `u`: reweight each potential he can see
/// by the inverse probability that his random set covers it.
#[derive(Clone, Debug)]
pub struct BobStrategy<'a> {
    model: &'a MarkovRandomField,
    u: usize,
    degree: usize,
    s: usize,
    sets: Vec<Vec<usize>>,
    terms: Vec<Term>,
}

impl<'a> BobStrategy<'a> {
    pub fn new(model: &'a MarkovRandomField, u: usize) -> Result<Self> {
        if u >= model.n() {
            return Err(Error::InvalidArgument(format!("node {u} out of range")));
        }
        if !model.is_canonical(CENTERING_TOL) {
            return Err(Error::NotCanonical("the game is defined on centered potentials".into()));
        }
        let graph = model.clique_graph();
        let sets = guess_sets(&graph, u, &[], model.order())?;
        let degree = graph.degree(u);
        let s = sets[0].len();
        let terms = model
            .tensors()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(u))
            .map(|(i, t)| {
                let l = t.order() - 1;
                Term {
                    tensor: i,
                    u_pos: t.position(u).expect("incident tensor"),
                    weight: binomial(degree, s) / binomial(degree - l, s - l),
                }
            })
            .collect();
        Ok(Self { model, u, degree, s, sets, terms })
    }

    pub fn node(&self) -> usize {
        self.u
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set_size(&self) -> usize {
        self.s
    }

    pub fn guess_sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Weighted sum of the potentials through `u` whose other vertices all
    /// lie in `set`, evaluated at `X_u = state` and `X_set = x_set`.
    pub fn phi(&self, state: usize, set: &[usize], x_set: &[usize]) -> f64 {
        let mut idx = Vec::with_capacity(self.model.order());
        let mut total = 0.0;
        for term in &self.terms {
            let t = &self.model.tensors()[term.tensor];
            idx.clear();
            let mut covered = true;
            for (pos, &v) in t.vertices().iter().enumerate() {
                if pos == term.u_pos {
                    idx.push(state);
                } else if let Some(j) = set.iter().position(|&w| w == v) {
                    idx.push(x_set[j]);
                } else {
                    covered = false;
                    break;
                }
            }
            if covered {
                total += term.weight * t.get(&idx);
            }
        }
        total
    }

    /// `w = Φ(R) - Σ_{B≠R} Φ(B)`.
    pub fn wager(&self, challenge: usize, set: &[usize], x_set: &[usize]) -> f64 {
        let k = self.model.arity(self.u);
        let phis: Vec<f64> = (0..k).map(|b| self.phi(b, set, x_set)).collect();
        let others: f64 = phis.iter().enumerate().filter(|&(b, _)| b != challenge).map(|(_, p)| p).sum();
        phis[challenge] - others
    }

    /// `γ K C(D, r-1)`, the cap on `|w|`.
    pub fn wager_cap(&self) -> f64 {
        let dc = self.model.derived_constants();
        let r1 = self.model.order() - 1;
        dc.gamma * dc.max_arity as f64 * binomial(dc.max_degree, r1.min(dc.max_degree))
    }
}

pub fn bob_phi(model: &MarkovRandomField, u: usize, state: usize, set: &[usize], x_set: &[usize]) -> Result<f64> {
    let bob = BobStrategy::new(model, u)?;
    check_round(&bob, state, set, x_set)?;
    Ok(bob.phi(state, set, x_set))
}

pub fn bob_wager(model: &MarkovRandomField, u: usize, challenge: usize, set: &[usize], x_set: &[usize]) -> Result<f64> {
    let bob = BobStrategy::new(model, u)?;
    check_round(&bob, challenge, set, x_set)?;
    Ok(bob.wager(challenge, set, x_set))
}

fn check_round(bob: &BobStrategy<'_>, state: usize, set: &[usize], x_set: &[usize]) -> Result<()> {
    let model = bob.model;
    if state >= model.arity(bob.u) {
        return Err(Error::StateOutOfRange { node: bob.u, state, arity: model.arity(bob.u) });
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if !bob.sets.contains(&sorted) {
        return Err(Error::InvalidArgument(format!("{set:?} is not a guess set of node {}", bob.u)));
    }
    if x_set.len() != set.len() {
        return Err(Error::InvalidArgument("x_set must align with set".into()));
    }
    for (&v, &x) in set.iter().zip(x_set) {
        if x >= model.arity(v) {
            return Err(Error::StateOutOfRange { node: v, state: x, arity: model.arity(v) });
        }
    }
    Ok(())
}

/// One round of the game.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameRound {
    pub u: usize,
    pub set: Vec<usize>,
    pub revealed: Vec<usize>,
    pub challenge: usize,
    pub wager: f64,
    pub payoff: f64,
}

/// Plays one round with `X, X'` drawn from `sampler`.
pub fn play_round(bob: &BobStrategy<'_>, sampler: &ExactSampler<'_>, rng: &mut Rng, x: &mut [usize]) -> GameRound {
    let u = bob.u;
    sampler.draw(rng, x);
    let x_u = x[u];
    let mut x2 = vec![0; x.len()];
    sampler.draw(rng, &mut x2);
    let challenge = rng.random_range(0..bob.model.arity(u));
    let set = &bob.sets[rng.random_range(0..bob.sets.len())];
    let revealed: Vec<usize> = set.iter().map(|&v| x[v]).collect();
    let wager = bob.wager(challenge, set, &revealed);
    let payoff = wager * (f64::from(u8::from(x_u == challenge)) - f64::from(u8::from(x2[u] == challenge)));
    GameRound { u, set: set.clone(), revealed, challenge, wager, payoff }
}

/// `E[Δ]` by exact summation over `X`, `R` and `I`; the independent copy
/// `X'` enters through the marginal of `X_u`.
pub fn expected_payoff_exact(model: &MarkovRandomField, u: usize) -> Result<f64> {
    let bob = BobStrategy::new(model, u)?;
    let joint = JointTable::new(model)?;
    Ok(expected_payoff_with(&bob, &joint))
}

fn expected_payoff_with(bob: &BobStrategy<'_>, joint: &JointTable) -> f64 {
    let u = bob.u;
    let k = joint.arities()[u];
    let pu = joint.marginal(&[u]);
    let mut x = vec![0; joint.n()];
    let mut xs = Vec::new();
    let mut total = 0.0;
    for (idx, &p) in joint.probs().iter().enumerate() {
        joint.decode(idx, &mut x);
        for set in &bob.sets {
            xs.clear();
            xs.extend(set.iter().map(|&v| x[v]));
            for (rr, &pr) in pu.iter().enumerate() {
                let hit = if x[u] == rr { 1.0 } else { 0.0 };
                total += p * bob.wager(rr, set, &xs) * (hit - pr);
            }
        }
    }
    total / (k * bob.sets.len()) as f64
}

/// Monte-Carlo `E[Δ]` over `rounds` independent rounds: `(mean, standard error)`.
pub fn expected_payoff_mc(model: &MarkovRandomField, u: usize, rounds: usize, seed: u64) -> Result<(f64, f64)> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be positive".into()));
    }
    let bob = BobStrategy::new(model, u)?;
    let joint = JointTable::new(model)?;
    let sampler = ExactSampler::new(&joint);
    let chunks = MC_CHUNKS.min(rounds);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = rounds / chunks + usize::from(c < rounds % chunks);
            let mut rng = seed::rng(seed, stream::GAME, c as u64);
            let mut x = vec![0; model.n()];
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..len {
                let d = play_round(&bob, &sampler, &mut rng, &mut x).payoff;
                s1 += d;
                s2 += d * d;
            }
            (s1, s2)
        })
        .collect();
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |(a, b), &(c, d)| (a + c, b + d));
    let m = rounds as f64;
    let mean = s1 / m;
    let var = if rounds > 1 { (s2 - m * mean * mean).max(0.0) / (m - 1.0) } else { 0.0 };
    Ok((mean, (var / m).sqrt()))
}

/// The claimed floor `4 α² δ^{r-1} / (r^{2r} e^{2γ})` on `E[Δ]`.
pub fn payoff_lower_bound(alpha: f64, delta: f64, r: usize, gamma: f64) -> f64 {
    let rf = r as f64;
    4.0 * alpha * alpha * delta.powi(r as i32 - 1) / (rf.powf(2.0 * rf) * (2.0 * gamma).exp())
}

/// Whether some maximal hyperedge through `u` is `alpha`-nonvanishing.
pub fn has_nonvanishing_maximal_hyperedge(model: &MarkovRandomField, u: usize, alpha: f64) -> bool {
    model.maximal_hyperedges().into_iter().any(|h| {
        h.len() >= 2 && h.contains(&u) && model.tensor(h).is_some_and(|t| t.max_abs() >= alpha)
    })
}

/// Largest deviation, over every `X_{~u}` and challenge `R`, between the
/// average wager over guess sets and `E_R - Σ_{B≠R} E_B`.
pub fn unbiasedness_gap(model: &MarkovRandomField, u: usize) -> Result<f64> {
    let bob = BobStrategy::new(model, u)?;
    let k = model.arity(u);
    let count = model.configuration_count();
    if count > crate::oracle::MAX_CONFIGURATIONS {
        return Err(Error::TooManyConfigurations { configs: count, limit: crate::oracle::MAX_CONFIGURATIONS });
    }
    let mut worst = 0.0f64;
    let mut x = vec![0; model.n()];
    let mut xs = Vec::new();
    loop {
        if x[u] == 0 {
            let energies: Vec<f64> = (0..k).map(|b| model.energy_unchecked(u, b, &x)).collect();
            let total: f64 = energies.iter().sum();
            for (rr, &e) in energies.iter().enumerate() {
                let target = 2.0 * e - total;
                let mean = bob
                    .sets
                    .iter()
                    .map(|set| {
                        xs.clear();
                        xs.extend(set.iter().map(|&v| x[v]));
                        bob.wager(rr, set, &xs)
                    })
                    .sum::<f64>()
                    / bob.sets.len() as f64;
                worst = worst.max((mean - target).abs());
            }
        }
        if !advance(&mut x, model.arities()) {
            break;
        }
    }
    Ok(worst)
}

fn advance(x: &mut [usize], arities: &[usize]) -> bool {
    for i in (0..x.len()).rev() {
        x[i] += 1;
        if x[i] < arities[i] {
            return true;
        }
        x[i] = 0;
    }
    false
}

/// Exact second moments of the local energies `E_{u,R}` under the model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceCheck {
    /// `Σ_R Σ_{B≠R} Var[a - b]` with `a - b` built from two independent copies.
    pub pair_sum: f64,
    /// `Σ_R Var[E_{u,R}]`.
    pub sum_var: f64,
    /// `4 k_u Σ_R Var[E_{u,R}]`.
    pub scaled: f64,
    /// `α² δ^{r-1} / (2 r^{2r})`.
    pub floor: f64,
    /// Largest `|Σ_R E_{u,R}|` over configurations.
    pub centering_gap: f64,
}

impl VarianceCheck {
    pub fn identity_holds(&self, tol: f64) -> bool {
        (self.pair_sum - self.scaled).abs() <= tol * self.scaled.abs().max(1.0)
    }

    pub fn floor_holds(&self) -> bool {
        self.sum_var >= self.floor
    }
}

pub fn variance_check(model: &MarkovRandomField, u: usize, alpha: f64) -> Result<VarianceCheck> {
    let joint = JointTable::new(model)?;
    let k = model.arity(u);
    let mut x = vec![0; model.n()];
    let mut m1 = vec![0.0; k];
    let mut m2 = vec![vec![0.0; k]; k];
    let mut centering_gap = 0.0f64;
    for (idx, &p) in joint.probs().iter().enumerate() {
        joint.decode(idx, &mut x);
        let e: Vec<f64> = (0..k).map(|b| model.energy_unchecked(u, b, &x)).collect();
        centering_gap = centering_gap.max(e.iter().sum::<f64>().abs());
        for a in 0..k {
            m1[a] += p * e[a];
            for b in 0..k {
                m2[a][b] += p * e[a] * e[b];
            }
        }
    }
    let cov = |a: usize, b: usize| m2[a][b] - m1[a] * m1[b];
    let mut pair_sum = 0.0;
    for a in 0..k {
        for b in (0..k).filter(|&b| b != a) {
            pair_sum += 2.0 * (cov(a, a) + cov(b, b) - 2.0 * cov(a, b));
        }
    }
    let sum_var: f64 = (0..k).map(|a| cov(a, a)).sum();
    let dc = model.derived_constants();
    let r = model.order();
    let rf = r as f64;
    Ok(VarianceCheck {
        pair_sum,
        sum_var,
        scaled: 4.0 * k as f64 * sum_var,
        floor: alpha * alpha * dc.delta.powi(r as i32 - 1) / (2.0 * rf.powf(2.0 * rf)),
        centering_gap,
    })
}

/// Per guess set quantities along the payoff-to-information chain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetLink {
    pub set: Vec<usize>,
    /// `I(X_u; X_I)` in nats.
    pub mi: f64,
    pub nu: f64,
    /// `E_{X_I, R} |Pr[X_u = R | X_I] - Pr[X_u = R]|`.
    pub abs_dev: f64,
}

/// Every quantity along the chain from the game payoff to the average `nu`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MiChain {
    pub u: usize,
    pub e_delta: f64,
    pub game_bound: f64,
    pub wager_cap: f64,
    pub mean_abs_dev: f64,
    pub mean_nu: f64,
    /// The constant `C` floor on `mean_nu`.
    pub c_floor: f64,
    pub max_arity: usize,
    pub r: usize,
    pub sets: Vec<SetLink>,
}

const CHAIN_TOL: f64 = 1e-12;

impl MiChain {
    /// `E[Δ] <= γ K C(D, r-1) E|Pr[X_u=R|X_I] - Pr[X_u=R]|`.
    pub fn upper_bound_holds(&self) -> bool {
        self.e_delta <= self.wager_cap * self.mean_abs_dev + CHAIN_TOL
    }

    /// `sqrt(I/2) >= E|...| / K^r` and `nu <= sqrt(I/2)` for every set.
    pub fn pinsker_links_hold(&self) -> bool {
        let kr = (self.max_arity as f64).powi(self.r as i32);
        self.sets.iter().all(|l| {
            let root = (l.mi / 2.0).sqrt();
            root + CHAIN_TOL >= l.abs_dev / kr && l.nu <= root + CHAIN_TOL
        })
    }

    pub fn payoff_bound_holds(&self) -> bool {
        self.e_delta >= self.game_bound
    }

    pub fn nu_floor_holds(&self) -> bool {
        self.mean_nu >= self.c_floor
    }
}

pub fn mi_chain(model: &MarkovRandomField, u: usize, alpha: f64) -> Result<MiChain> {
    let bob = BobStrategy::new(model, u)?;
    let joint = JointTable::new(model)?;
    let e_delta = expected_payoff_with(&bob, &joint);
    let dc = model.derived_constants();
    let r = model.order();
    let k = model.arity(u);
    let pu = joint.marginal(&[u]);
    let mut sets = Vec::with_capacity(bob.sets.len());
    for set in &bob.sets {
        let nodes: Vec<usize> = std::iter::once(u).chain(set.iter().copied()).collect();
        let table = joint.marginal(&nodes);
        let kg = table.len() / k;
        let mut dev = 0.0;
        for g in 0..kg {
            let pg: f64 = (0..k).map(|rr| table[rr * kg + g]).sum();
            for (rr, &pr) in pu.iter().enumerate() {
                dev += (table[rr * kg + g] - pr * pg).abs();
            }
        }
        sets.push(SetLink {
            set: set.clone(),
            mi: joint.conditional_mi(u, set, &[])?,
            nu: joint.nu(u, set, &[])?,
            abs_dev: dev / k as f64,
        });
    }
    let count = sets.len() as f64;
    let c_floor = crate::learn::theoretical_constants(dc.gamma, dc.max_arity, alpha, r, dc.max_degree, dc.delta)?.0;
    Ok(MiChain {
        u,
        e_delta,
        game_bound: payoff_lower_bound(alpha, dc.delta, r, dc.gamma),
        wager_cap: bob.wager_cap(),
        mean_abs_dev: sets.iter().map(|l| l.abs_dev).sum::<f64>() / count,
        mean_nu: sets.iter().map(|l| l.nu).sum::<f64>() / count,
        c_floor,
        max_arity: dc.max_arity,
        r,
        sets,
    })
}

/// Checks `E[Δ] <= γ K C(D, r-1) E_{I, X_I, R} |Pr[X_u = R | X_I] - Pr[X_u = R]|`
/// together with the per-set Pinsker links.
pub fn payoff_upper_bound_check(model: &MarkovRandomField, u: usize) -> Result<bool> {
    let chain = mi_chain(model, u, 1.0)?;
    Ok(chain.upper_bound_holds() && chain.pinsker_links_hold())
}

/// Average of the exact `nu_{u,I|S}` over guess sets drawn from
/// `Γ(u) \ S`.
pub fn mean_conditional_nu(joint: &JointTable, graph: &CliqueGraph, u: usize, given: &[usize], r: usize) -> Result<f64> {
    let sets = guess_sets(graph, u, given, r)?;
    let mut total = 0.0;
    for set in &sets {
        total += joint.nu(u, set, given)?;
    }
    Ok(total / sets.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrf::CliqueTensor;

    fn ising(j: f64) -> MarkovRandomField {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![j, -j, -j, j]).unwrap();
        MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap()
    }

    fn triangle_plus() -> MarkovRandomField {
        let t3 = CliqueTensor::from_fn(vec![0, 1, 2], vec![2, 2, 2], |x| {
            if (x[0] + x[1] + x[2]) % 2 == 0 { 0.4 } else { -0.4 }
        })
        .unwrap();
        let e = CliqueTensor::new(vec![0, 3], vec![2, 2], vec![0.3, -0.3, -0.3, 0.3]).unwrap();
        let un = CliqueTensor::new(vec![0], vec![2], vec![0.2, -0.2]).unwrap();
        MarkovRandomField::new(vec![2; 4], 3, vec![t3, e, un]).unwrap()
    }

    #[test]
    fn isolated_node_is_rejected() {
        let model = MarkovRandomField::independent(vec![2; 3], 2).unwrap();
        assert!(BobStrategy::new(&model, 0).is_err());
    }

    #[test]
    fn full_reveal_gives_local_energy() {
        let model = triangle_plus();
        let bob = BobStrategy::new(&model, 1).unwrap();
        assert_eq!(bob.set_size(), 2);
        assert_eq!(bob.guess_sets(), &[vec![0, 2]]);
        let x = [1, 0, 1, 0];
        for rr in 0..2 {
            let mut y = x;
            y[1] = rr;
            let e = model.energy(1, rr, &y).unwrap();
            assert!((bob.phi(rr, &[0, 2], &[1, 1]) - e).abs() < 1e-12);
        }
    }

    #[test]
    fn wager_is_unbiased_and_bounded() {
        let model = triangle_plus();
        for u in 0..4 {
            assert!(unbiasedness_gap(&model, u).unwrap() < 1e-12, "u={u}");
        }
        let bob = BobStrategy::new(&model, 0).unwrap();
        for set in bob.guess_sets() {
            for xs in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                for rr in 0..2 {
                    assert!(bob.wager(rr, set, &xs).abs() <= bob.wager_cap() + 1e-12);
                }
            }
        }
    }

    #[test]
    fn binary_wagers_are_antisymmetric() {
        let model = ising(0.7);
        let a = bob_wager(&model, 0, 0, &[1], &[1]).unwrap();
        let b = bob_wager(&model, 0, 1, &[1], &[1]).unwrap();
        assert!((a + b).abs() < 1e-15);
        assert_eq!(bob_phi(&model, 0, 0, &[1], &[0]).unwrap(), 0.7);
        assert!(bob_wager(&model, 0, 2, &[1], &[0]).is_err());
    }

    #[test]
    fn ising_payoff_matches_oracle() {
        let model = ising(0.5);
        let e = expected_payoff_exact(&model, 0).unwrap();
        assert!((e - 0.231058578630005).abs() < 1e-12, "{e}");
        let dc = model.derived_constants();
        let bound = payoff_lower_bound(0.5, dc.delta, 2, dc.gamma);
        assert!((bound - 0.004229227601144147).abs() < 1e-15);
        assert!(e >= bound);
    }

    #[test]
    fn zero_potential_pays_nothing() {
        let t = CliqueTensor::zeros(vec![0, 1], vec![2, 2]).unwrap();
        let model = MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap();
        assert_eq!(expected_payoff_exact(&model, 0).unwrap(), 0.0);
        let (mean, se) = expected_payoff_mc(&model, 0, 1000, 1).unwrap();
        assert_eq!((mean, se), (0.0, 0.0));
    }

    #[test]
    fn mc_is_deterministic_and_close() {
        let model = ising(0.5);
        let a = expected_payoff_mc(&model, 0, 20_000, 3).unwrap();
        assert_eq!(a, expected_payoff_mc(&model, 0, 20_000, 3).unwrap());
        assert!((a.0 - 0.231058578630005).abs() < 3.0 * a.1 + 1e-9, "{a:?}");
        assert!(expected_payoff_mc(&model, 0, 0, 3).is_err());
    }

    #[test]
    fn variance_identity_and_floor() {
        let model = triangle_plus();
        for u in 0..4 {
            let v = variance_check(&model, u, 0.3).unwrap();
            assert!(v.identity_holds(1e-10), "{v:?}");
            assert!(v.centering_gap < 1e-12);
            assert!(v.floor_holds(), "{v:?}");
        }
    }

    #[test]
    fn chain_links_on_ising() {
        let model = ising(0.5);
        let chain = mi_chain(&model, 0, 0.5).unwrap();
        assert!(chain.upper_bound_holds() && chain.pinsker_links_hold(), "{chain:?}");
        // |w| sits at the cap and always carries the sign of the deviation
        assert!((chain.e_delta - chain.wager_cap * chain.mean_abs_dev).abs() < 1e-12);
        assert!(chain.nu_floor_holds());
        assert!(payoff_upper_bound_check(&model, 0).unwrap());
    }

    #[test]
    fn conditioned_guess_sets_skip_known_nodes() {
        let model = triangle_plus();
        let g = model.clique_graph();
        assert_eq!(guess_sets(&g, 0, &[1], 3).unwrap(), vec![vec![2, 3]]);
        assert_eq!(guess_sets(&g, 0, &[1, 2], 3).unwrap(), vec![vec![3]]);
        assert!(guess_sets(&g, 0, &[1, 2, 3], 3).is_err());
    }
}
