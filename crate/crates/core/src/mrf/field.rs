use std::collections::BTreeMap;

use super::graph::CliqueGraph;
use super::tensor::CliqueTensor;
use crate::error::{Error, Result};

/// Fiber-sum tolerance used to decide whether a model is in canonical form.
pub const CENTERING_TOL: f64 = 1e-9;

/// Tensors whose largest entry is at or below this are dropped by
/// [`MarkovRandomField::canonicalize`].
pub const PRUNE_TOL: f64 = 1e-12;

/// A discrete Markov random field with interactions of order at most `order`.
///
/// The law is `Pr(x) ∝ exp(Σ_h θ_h(x_h))` over the stored hyperedges `h`.
/// Absent hyperedges carry the zero tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovRandomField {
    arities: Vec<usize>,
    order: usize,
    tensors: Vec<CliqueTensor>,
    // indices into `tensors` of every tensor containing each node
    incident: Vec<Vec<usize>>,
}

/// Quantities derived from the potentials that drive every bound.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DerivedConstants {
    /// Largest total potential magnitude touching a single node.
    pub gamma: f64,
    /// Floor on every local conditional probability, `exp(-2 gamma) / K`.
    pub delta: f64,
    /// Max degree of the clique graph.
    pub max_degree: usize,
    /// Max arity over nodes.
    pub max_arity: usize,
}

impl DerivedConstants {
    pub fn delta_for(gamma: f64, max_arity: usize) -> f64 {
        (-2.0 * gamma).exp() / max_arity as f64
    }
}

impl MarkovRandomField {
    pub fn new(arities: Vec<usize>, order: usize, mut tensors: Vec<CliqueTensor>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidModel("interaction order must be at least 1".into()));
        }
        if let Some((i, k)) = arities.iter().enumerate().find(|(_, &k)| k < 2) {
            return Err(Error::InvalidModel(format!("node {i} has arity {k} < 2")));
        }
        if arities.iter().any(|&k| k > u8::MAX as usize) {
            return Err(Error::InvalidModel("arities above 255 are not supported".into()));
        }
        let n = arities.len();
        tensors.sort_by(|a, b| a.vertices().cmp(b.vertices()));
        for w in tensors.windows(2) {
            if w[0].vertices() == w[1].vertices() {
                return Err(Error::InvalidModel(format!(
                    "two tensors on hyperedge {:?}",
                    w[0].vertices()
                )));
            }
        }
        let mut incident = vec![Vec::new(); n];
        for (ti, t) in tensors.iter().enumerate() {
            if t.order() > order {
                return Err(Error::InvalidModel(format!(
                    "hyperedge {:?} exceeds order bound {order}",
                    t.vertices()
                )));
            }
            for (&v, &k) in t.vertices().iter().zip(t.shape()) {
                if v >= n {
                    return Err(Error::InvalidModel(format!(
                        "hyperedge {:?} references node {v} of {n}",
                        t.vertices()
                    )));
                }
                if arities[v] != k {
                    return Err(Error::ShapeMismatch(format!(
                        "hyperedge {:?}: extent {k} for node {v} of arity {}",
                        t.vertices(),
                        arities[v]
                    )));
                }
                incident[v].push(ti);
            }
        }
        Ok(Self { arities, order, tensors, incident })
    }

    /// A model with no interactions (the uniform law).
    pub fn independent(arities: Vec<usize>, order: usize) -> Result<Self> {
        Self::new(arities, order, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.arities.len()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn arity(&self, node: usize) -> usize {
        self.arities[node]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn max_arity(&self) -> usize {
        self.arities.iter().copied().max().unwrap_or(2)
    }

    pub fn tensors(&self) -> &[CliqueTensor] {
        &self.tensors
    }

    pub fn tensor(&self, vertices: &[usize]) -> Option<&CliqueTensor> {
        self.tensors
            .binary_search_by(|t| t.vertices().cmp(vertices))
            .ok()
            .map(|i| &self.tensors[i])
    }

    /// Tensors whose hyperedge contains `node`.
    pub fn incident(&self, node: usize) -> impl Iterator<Item = &CliqueTensor> {
        self.incident[node].iter().map(move |&i| &self.tensors[i])
    }

    /// Number of joint configurations, saturating.
    pub fn configuration_count(&self) -> u128 {
        self.arities
            .iter()
            .try_fold(1u128, |acc, &k| acc.checked_mul(k as u128))
            .unwrap_or(u128::MAX)
    }

    /// Unnormalized log-probability of a full configuration.
    pub fn log_weight(&self, x: &[usize]) -> f64 {
        self.tensors.iter().map(|t| t.at_configuration(x)).sum()
    }

    pub fn check_configuration(&self, x: &[usize], skip: Option<usize>) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "configuration has {} entries for {} nodes",
                x.len(),
                self.n()
            )));
        }
        for (node, (&state, &arity)) in x.iter().zip(&self.arities).enumerate() {
            if Some(node) != skip && state >= arity {
                return Err(Error::StateOutOfRange { node, state, arity });
            }
        }
        Ok(())
    }

    pub fn is_canonical(&self, tol: f64) -> bool {
        self.tensors.iter().all(|t| t.is_centered(tol))
    }

    /// Returns the equivalent model whose tensors are all centered.
    ///
    /// Fibers are recentered from the highest order down. The mean removed
    /// from each fiber is added to the tensor on the hyperedge without that
    /// vertex; means removed from unary tensors fall into the normalizing
    /// constant. Tensors that end up zero are dropped.
    pub fn canonicalize(&self) -> Self {
        let mut work: BTreeMap<Vec<usize>, CliqueTensor> = self
            .tensors
            .iter()
            .map(|t| (t.vertices().to_vec(), t.clone()))
            .collect();
        for level in (1..=self.order).rev() {
            let keys: Vec<Vec<usize>> =
                work.keys().filter(|k| k.len() == level).cloned().collect();
            for key in keys {
                let mut t = work.remove(&key).expect("key listed above");
                for mode in 0..level {
                    let means = t.center_mode(mode);
                    if level == 1 {
                        continue;
                    }
                    let mut lower_vertices = key.clone();
                    lower_vertices.remove(mode);
                    let mut lower_shape = t.shape().to_vec();
                    lower_shape.remove(mode);
                    work.entry(lower_vertices.clone())
                        .or_insert_with(|| {
                            CliqueTensor::zeros(lower_vertices, lower_shape)
                                .expect("sub-hyperedge of a valid tensor")
                        })
                        .add_assign(&means);
                }
                work.insert(key, t);
            }
        }
        let tensors = work.into_values().filter(|t| t.max_abs() > PRUNE_TOL).collect();
        Self::new(self.arities.clone(), self.order, tensors).expect("canonicalization keeps validity")
    }

    pub fn clique_graph(&self) -> CliqueGraph {
        CliqueGraph::from_hyperedges(self.n(), self.tensors.iter().map(|t| t.vertices()))
    }

    /// Total potential at `node` in `state`, with the other nodes fixed by `x`.
    ///
    /// `x[node]` is ignored.
    pub fn energy(&self, node: usize, state: usize, x: &[usize]) -> Result<f64> {
        self.check_configuration(x, Some(node))?;
        if state >= self.arities[node] {
            return Err(Error::StateOutOfRange { node, state, arity: self.arities[node] });
        }
        Ok(self.energy_unchecked(node, state, x))
    }

    pub(crate) fn energy_unchecked(&self, node: usize, state: usize, x: &[usize]) -> f64 {
        self.incident(node)
            .map(|t| {
                let flat = t.vertices().iter().zip(t.shape()).fold(0, |acc, (&v, &k)| {
                    acc * k + if v == node { state } else { x[v] }
                });
                t.values()[flat]
            })
            .sum()
    }

    /// `Pr(X_node = · | X_rest = x_rest)`; `x[node]` is ignored.
    pub fn conditional_distribution(&self, node: usize, x: &[usize]) -> Result<Vec<f64>> {
        self.check_configuration(x, Some(node))?;
        let mut out = Vec::with_capacity(self.arities[node]);
        self.conditional_into(node, x, &mut out);
        Ok(out)
    }

    pub(crate) fn conditional_into(&self, node: usize, x: &[usize], out: &mut Vec<f64>) {
        out.clear();
        out.extend((0..self.arities[node]).map(|s| self.energy_unchecked(node, s, x)));
        let max = out.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut total = 0.0;
        for e in out.iter_mut() {
            *e = (*e - max).exp();
            total += *e;
        }
        for e in out.iter_mut() {
            *e /= total;
        }
    }

    /// Gamma, delta, max degree, and max arity.
    pub fn derived_constants(&self) -> DerivedConstants {
        let gamma = (0..self.n())
            .map(|u| self.incident(u).map(CliqueTensor::max_abs).sum::<f64>())
            .fold(0.0_f64, f64::max);
        let max_arity = self.max_arity();
        DerivedConstants {
            gamma,
            delta: DerivedConstants::delta_for(gamma, max_arity),
            max_degree: self.clique_graph().max_degree(),
            max_arity,
        }
    }

    pub(crate) fn from_map(
        arities: Vec<usize>,
        order: usize,
        map: BTreeMap<Vec<usize>, CliqueTensor>,
    ) -> Result<Self> {
        Self::new(arities, order, map.into_values().collect())
    }
}

/// Free-function form of [`MarkovRandomField::canonicalize`].
pub fn canonicalize(model: &MarkovRandomField) -> MarkovRandomField {
    model.canonicalize()
}
