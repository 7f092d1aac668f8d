use serde::Serialize;

use crate::error::Result;
use crate::game::{
    has_nonvanishing_maximal_hyperedge, mean_conditional_nu, mi_chain, unbiasedness_gap, variance_check,
};
use crate::learn::theoretical_constants;
use crate::mrf::MarkovRandomField;
use crate::oracle::JointTable;
use crate::subsets::nonempty_subsets_up_to;

const TOL: f64 = 1e-12;

/// Outcome of one family of inequalities. `worst_slack` is the smallest
/// `lhs - rhs` seen, oriented so that negative means violated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
    pub worst_slack: f64,
    pub worst_case: Option<String>,
}

impl BoundCheck {
    fn new(name: &str) -> Self {
        Self { name: name.into(), checked: 0, violations: 0, worst_slack: f64::INFINITY, worst_case: None }
    }

    fn record(&mut self, slack: f64, ok: bool, case: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
        if slack < self.worst_slack {
            self.worst_slack = slack;
            self.worst_case = Some(case());
        }
    }

    pub fn passes(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BoundsReport {
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(BoundCheck::passes)
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Folds another report in, summing counts per check name.
    pub fn merge(&mut self, other: BoundsReport) {
        for c in other.checks {
            match self.checks.iter_mut().find(|d| d.name == c.name) {
                Some(d) => {
                    d.checked += c.checked;
                    d.violations += c.violations;
                    if c.worst_slack < d.worst_slack {
                        d.worst_slack = c.worst_slack;
                        d.worst_case = c.worst_case;
                    }
                }
                None => self.checks.push(c),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub alpha: f64,
    pub pinsker_max_given: usize,
    pub floor_max_given: usize,
    pub game: bool,
}

impl VerifyOptions {
    pub fn new(alpha: f64) -> Self {
        Self { alpha, pinsker_max_given: 2, floor_max_given: 3, game: true }
    }
}

/// `sqrt(I(X_u; X_I | X_S) / 2) >= nu_{u,I|S}` over all `u`, `|I| <= r - 1`,
/// `|S| <= max_given`.
pub fn check_pinsker(joint: &JointTable, r: usize, max_given: usize) -> Result<BoundCheck> {
    let n = joint.n();
    let mut check = BoundCheck::new("pinsker");
    for u in 0..n {
        let others: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        for set in nonempty_subsets_up_to(&others, r.saturating_sub(1)) {
            let rest: Vec<usize> = others.iter().copied().filter(|v| !set.contains(v)).collect();
            for given in std::iter::once(Vec::new()).chain(nonempty_subsets_up_to(&rest, max_given)) {
                let mi = joint.conditional_mi(u, &set, &given)?;
                let nu = joint.nu(u, &set, &given)?;
                let slack = (mi / 2.0).sqrt() - nu;
                check.record(slack, slack >= -TOL, || format!("u={u} I={set:?} S={given:?} mi={mi} nu={nu}"));
            }
        }
    }
    Ok(check)
}

/// Average `nu_{u,I|S}` over guess sets from `Γ(u) \ S` against `C'`, for
/// every `S` with `|S| <= max_given` that misses a neighbor of `u`.
pub fn check_conditional_floor(
    model: &MarkovRandomField,
    joint: &JointTable,
    alpha: f64,
    max_given: usize,
) -> Result<BoundCheck> {
    let mut check = BoundCheck::new("conditional_floor");
    let graph = model.clique_graph();
    let dc = model.derived_constants();
    if dc.max_degree == 0 {
        return Ok(check);
    }
    let r = model.order();
    let (_, c_prime) = theoretical_constants(dc.gamma, dc.max_arity, alpha, r, dc.max_degree, dc.delta)?;
    let n = model.n();
    for u in 0..n {
        let nb = graph.neighbors(u);
        if nb.is_empty() {
            continue;
        }
        let others: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        for given in std::iter::once(Vec::new()).chain(nonempty_subsets_up_to(&others, max_given)) {
            if nb.iter().all(|v| given.contains(v)) {
                continue;
            }
            let mean = mean_conditional_nu(joint, &graph, u, &given, r)?;
            let slack = mean - c_prime;
            check.record(slack, slack >= 0.0, || format!("u={u} S={given:?} mean_nu={mean} C'={c_prime}"));
        }
    }
    Ok(check)
}

/// Game identities and bounds at every non-isolated node.
pub fn check_game(model: &MarkovRandomField, alpha: f64) -> Result<Vec<BoundCheck>> {
    let mut unbiased = BoundCheck::new("game_unbiased");
    let mut nonneg = BoundCheck::new("game_nonnegative");
    let mut lower = BoundCheck::new("game_lower_bound");
    let mut upper = BoundCheck::new("game_upper_chain");
    let mut identity = BoundCheck::new("variance_identity");
    let mut floor = BoundCheck::new("variance_floor");
    let mut mi_floor = BoundCheck::new("mi_floor");
    let graph = model.clique_graph();
    for u in (0..model.n()).filter(|&u| graph.degree(u) > 0) {
        let gap = unbiasedness_gap(model, u)?;
        unbiased.record(-gap, gap <= 1e-10, || format!("u={u} gap={gap}"));

        let chain = mi_chain(model, u, alpha)?;
        nonneg.record(chain.e_delta, chain.e_delta >= -TOL, || format!("u={u} E[delta]={}", chain.e_delta));
        let up = chain.wager_cap * chain.mean_abs_dev - chain.e_delta;
        let links = chain.upper_bound_holds() && chain.pinsker_links_hold();
        upper.record(up, links, || format!("u={u} E[delta]={} cap*dev={}", chain.e_delta, up + chain.e_delta));

        let var = variance_check(model, u, alpha)?;
        let diff = (var.pair_sum - var.scaled).abs();
        identity.record(-diff, var.identity_holds(1e-10), || format!("u={u} {} vs {}", var.pair_sum, var.scaled));

        if has_nonvanishing_maximal_hyperedge(model, u, alpha) {
            let s = chain.e_delta - chain.game_bound;
            lower.record(s, chain.payoff_bound_holds(), || {
                format!("u={u} E[delta]={} bound={}", chain.e_delta, chain.game_bound)
            });
            let s = var.sum_var - var.floor;
            floor.record(s, var.floor_holds(), || format!("u={u} sum_var={} floor={}", var.sum_var, var.floor));
            let s = chain.mean_nu - chain.c_floor;
            mi_floor.record(s, chain.nu_floor_holds(), || format!("u={u} mean_nu={} C={}", chain.mean_nu, chain.c_floor));
        }
    }
    Ok(vec![unbiased, nonneg, lower, upper, identity, floor, mi_floor])
}

/// Runs every exhaustive check on one model.
pub fn verify_bounds(model: &MarkovRandomField, opts: &VerifyOptions) -> Result<BoundsReport> {
    let model = model.canonicalize();
    let joint = JointTable::new(&model)?;
    let mut checks = vec![
        check_pinsker(&joint, model.order(), opts.pinsker_max_given)?,
        check_conditional_floor(&model, &joint, opts.alpha, opts.floor_max_given)?,
    ];
    if opts.game {
        checks.extend(check_game(&model, opts.alpha)?);
    }
    Ok(BoundsReport { checks })
}
