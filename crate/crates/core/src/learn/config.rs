use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mrf::{DerivedConstants, MarkovRandomField};
use crate::subsets::binomial;

/// Which data source the learner reads.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Full,
    Erased,
    Queried,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "erased" => Ok(Mode::Erased),
            "queried" => Ok(Mode::Queried),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Erased => "erased",
            Mode::Queried => "queried",
        })
    }
}

/// `(C, C')`: the unconditional and conditional floors on the average
/// `nu` over the random guess set.
///
/// When `D < r - 1` the binomial `C(D, r-1)` would vanish; the number of
/// guess sets is `C(D, min(r-1, D))` and that is what is used.
pub fn theoretical_constants(
    gamma: f64,
    k: usize,
    alpha: f64,
    r: usize,
    max_degree: usize,
    delta: f64,
) -> Result<(f64, f64)> {
    for (name, v) in [("gamma", gamma), ("alpha", alpha), ("delta", delta)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    if k < 2 || r < 1 || max_degree < 1 {
        return Err(Error::InvalidArgument("need K >= 2, r >= 1, D >= 1".into()));
    }
    let rf = r as f64;
    let choose = binomial(max_degree, (r - 1).min(max_degree));
    let denom = rf.powf(2.0 * rf) * (k as f64).powi(r as i32 + 1) * choose * gamma * (2.0 * gamma).exp();
    let c = 4.0 * alpha * alpha * delta.powi(r as i32 - 1) / denom;
    let c_prime = c * delta.powi(max_degree as i32);
    Ok((c, c_prime))
}

/// Learner parameters. `tau` and `budget` fall back to the theoretical
/// values when not overridden.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnConfig {
    pub r: usize,
    pub max_degree: usize,
    pub max_arity: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub omega: f64,
    pub mode: Mode,
    pub tau_override: Option<f64>,
    pub budget_override: Option<f64>,
    /// Prune with sets of size up to `r - 1` instead of singletons.
    pub prune_sets: bool,
    /// Erased mode: evaluations retaining fewer rows are forced to 0.
    pub coverage_floor: usize,
}

impl LearnConfig {
    /// Parameters known only through the non-degeneracy bounds. `gamma` is
    /// bounded by `beta` times the number of hyperedges of size at most `r`
    /// that can contain a node of degree `D`.
    pub fn from_bounds(r: usize, max_degree: usize, max_arity: usize, alpha: f64, beta: f64) -> Self {
        let edges: f64 = (0..r).map(|l| binomial(max_degree, l)).sum();
        let gamma = beta * edges;
        Self::with_constants(r, max_degree, max_arity, alpha, beta, gamma)
    }

    /// Parameters read off a known model.
    pub fn from_model(model: &MarkovRandomField, alpha: f64, beta: f64) -> Self {
        let dc = model.derived_constants();
        let mut cfg = Self::with_constants(model.order(), dc.max_degree, dc.max_arity, alpha, beta, dc.gamma);
        cfg.delta = dc.delta;
        cfg
    }

    fn with_constants(r: usize, max_degree: usize, max_arity: usize, alpha: f64, beta: f64, gamma: f64) -> Self {
        Self {
            r,
            max_degree,
            max_arity,
            alpha,
            beta,
            gamma,
            delta: DerivedConstants::delta_for(gamma, max_arity),
            omega: 0.05,
            mode: Mode::Full,
            tau_override: None,
            budget_override: None,
            prune_sets: false,
            coverage_floor: 1,
        }
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau_override = Some(tau);
        self
    }

    pub fn with_budget(mut self, budget: f64) -> Self {
        self.budget_override = Some(budget);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn constants(&self) -> Result<(f64, f64)> {
        theoretical_constants(self.gamma, self.max_arity, self.alpha, self.r, self.max_degree.max(1), self.delta)
    }

    pub fn theoretical_tau(&self) -> Result<f64> {
        Ok(self.constants()?.1 / 2.0)
    }

    pub fn tau(&self) -> Result<f64> {
        match self.tau_override {
            Some(t) => Ok(t),
            None => self.theoretical_tau(),
        }
    }

    /// `L = (8 / tau^2) ln K` at the effective `tau`.
    pub fn budget(&self) -> Result<f64> {
        match self.budget_override {
            Some(l) => Ok(l),
            None => {
                let tau = self.tau()?;
                Ok(8.0 / (tau * tau) * (self.max_arity as f64).ln())
            }
        }
    }

    pub fn theoretical_budget(&self) -> Result<f64> {
        let tau = self.theoretical_tau()?;
        Ok(8.0 / (tau * tau) * (self.max_arity as f64).ln())
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        let tau = self.tau()?;
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidArgument(format!("tau must be positive, got {tau}")));
        }
        let l = self.budget()?;
        if l.is_nan() || l < 0.0 {
            return Err(Error::InvalidArgument(format!("L must be nonnegative, got {l}")));
        }
        Ok(())
    }
}
