use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mrf::{CliqueTensor, MarkovRandomField};
use crate::seed::{self, stream, Rng};

/// Redraws allowed per hyperedge before giving up.
pub const MAX_TRIES: usize = 1000;

/// Parameters of a random non-degenerate model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub r: usize,
    pub max_degree: usize,
    pub max_arity: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Probability of keeping each feasible candidate hyperedge.
    pub hyperedge_density: f64,
    /// Also draw centered unary fields bounded by `beta`.
    #[serde(default)]
    pub unary: bool,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(n: usize, r: usize, max_degree: usize, max_arity: usize, alpha: f64, beta: f64) -> Self {
        Self { n, r, max_degree, max_arity, alpha, beta, hyperedge_density: 1.0, unary: false, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.hyperedge_density = density;
        self
    }

    fn check(&self) -> Result<()> {
        if self.alpha > self.beta {
            return Err(Error::Infeasible(format!(
                "alpha = {} exceeds beta = {}: no entry can be both",
                self.alpha, self.beta
            )));
        }
        if !(self.alpha > 0.0 && self.beta.is_finite()) {
            return Err(Error::Infeasible("need 0 < alpha <= beta < inf".into()));
        }
        if self.n == 0 || self.r == 0 || self.max_arity < 2 {
            return Err(Error::Infeasible("need n >= 1, r >= 1, K >= 2".into()));
        }
        if !(self.hyperedge_density > 0.0 && self.hyperedge_density <= 1.0) {
            return Err(Error::Infeasible("hyperedge_density must lie in (0, 1]".into()));
        }
        Ok(())
    }
}

/// Uniform entries in `[-beta, beta]` projected onto centered tensors,
/// redrawn until every entry is at most `beta` and, when `alpha` is given,
/// some entry reaches it.
fn draw_tensor(rng: &mut Rng, vertices: Vec<usize>, k: usize, beta: f64, alpha: Option<f64>) -> Result<CliqueTensor> {
    let shape = vec![k; vertices.len()];
    for _ in 0..MAX_TRIES {
        let mut t = CliqueTensor::from_fn(vertices.clone(), shape.clone(), |_| rng.random_range(-beta..=beta))?;
        for mode in 0..t.order() {
            t.center_mode(mode);
        }
        let max = t.max_abs();
        if max <= beta && alpha.is_none_or(|a| max >= a) {
            return Ok(t);
        }
    }
    Err(Error::Infeasible(format!("no admissible tensor on {vertices:?} after {MAX_TRIES} draws")))
}

/// Random hypergraph with hyperedges of size `2..=r` and clique-graph
/// degree at most `D`, with centered tensors meeting the `(alpha, beta)`
/// conditions. The result is validated before it is returned.
pub fn generate_model(spec: &GeneratorSpec) -> Result<MarkovRandomField> {
    spec.check()?;
    let mut rng = seed::rng(spec.seed, stream::GENERATE, 0);
    let n = spec.n;
    let mut candidates: Vec<Vec<usize>> = (2..=spec.r.min(n)).flat_map(|size| (0..n).combinations(size)).collect();
    candidates.shuffle(&mut rng);

    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    for cand in candidates {
        let fits = cand.iter().all(|&a| {
            let extra = cand.iter().filter(|&&b| b != a && !adj[a].contains(&b)).count();
            adj[a].len() + extra <= spec.max_degree
        });
        if !fits || rng.random::<f64>() >= spec.hyperedge_density {
            continue;
        }
        for &a in &cand {
            adj[a].extend(cand.iter().copied().filter(|&b| b != a));
        }
        chosen.push(cand);
    }

    let is_maximal = |h: &[usize]| !chosen.iter().any(|g| g.len() > h.len() && h.iter().all(|v| g.contains(v)));
    let mut tensors = Vec::with_capacity(chosen.len());
    for h in &chosen {
        let alpha = is_maximal(h).then_some(spec.alpha);
        tensors.push(draw_tensor(&mut rng, h.clone(), spec.max_arity, spec.beta, alpha)?);
    }
    if spec.unary {
        for (v, nb) in adj.iter().enumerate() {
            // A unary field on an isolated node is itself maximal.
            let alpha = nb.is_empty().then_some(spec.alpha);
            tensors.push(draw_tensor(&mut rng, vec![v], spec.max_arity, spec.beta, alpha)?);
        }
    }
    let model = MarkovRandomField::new(vec![spec.max_arity; n], spec.r, tensors)?.canonicalize();
    let report = model.validate_nondegeneracy(spec.alpha, spec.beta)?;
    if !report.passes() || model.clique_graph().max_degree() > spec.max_degree {
        return Err(Error::InvariantViolation("generated model failed validation".into()));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrf::CENTERING_TOL;

    #[test]
    fn single_edge() {
        let model = generate_model(&GeneratorSpec::new(2, 2, 1, 2, 0.2, 1.0).with_seed(4)).unwrap();
        assert_eq!(model.tensors().len(), 1);
        assert_eq!(model.tensors()[0].vertices(), &[0, 1]);
    }

    #[test]
    fn order_three_models_validate() {
        for seed in 0..100 {
            let spec = GeneratorSpec::new(12, 3, 3, 2, 0.2, 1.0).with_seed(seed);
            let model = generate_model(&spec).unwrap();
            assert!(model.clique_graph().max_degree() <= 3);
            assert!(model.is_canonical(CENTERING_TOL));
            assert!(model.validate_nondegeneracy(0.2, 1.0).unwrap().passes());
        }
    }

    #[test]
    fn alpha_above_beta_is_infeasible() {
        let err = generate_model(&GeneratorSpec::new(4, 2, 2, 2, 1.5, 1.0)).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }

    #[test]
    fn seeded_and_sparse() {
        let spec = GeneratorSpec::new(10, 2, 3, 3, 0.3, 1.0).with_seed(9).with_density(0.5);
        assert_eq!(generate_model(&spec).unwrap(), generate_model(&spec).unwrap());
        let mut unary = spec.clone();
        unary.unary = true;
        let model = generate_model(&unary).unwrap();
        assert!(model.tensors().iter().any(|t| t.order() == 1));
    }
}
