use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::field::{MarkovRandomField, CENTERING_TOL, PRUNE_TOL};
use crate::error::{Error, Result};

/// The graph obtained by replacing every hyperedge with a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueGraph {
    neighbors: Vec<Vec<usize>>,
}

impl CliqueGraph {
    pub fn from_hyperedges<'a>(n: usize, hyperedges: impl IntoIterator<Item = &'a [usize]>) -> Self {
        let mut sets = vec![BTreeSet::new(); n];
        for h in hyperedges {
            for (i, &a) in h.iter().enumerate() {
                for &b in &h[i + 1..] {
                    sets[a].insert(b);
                    sets[b].insert(a);
                }
            }
        }
        Self { neighbors: sets.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut sets = vec![BTreeSet::new(); n];
        for (a, b) in edges {
            sets[a].insert(b);
            sets[b].insert(a);
        }
        Self { neighbors: sets.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    /// Sorted neighborhood of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeCoverFlag {
    pub edge: (usize, usize),
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperedgeFlag {
    pub hyperedge: Vec<usize>,
    pub max_abs: f64,
    pub ok: bool,
}

/// Outcome of the three non-degeneracy conditions.
///
/// (a) every clique-graph edge lies in a hyperedge with a nonzero tensor,
/// (b) every maximal hyperedge has an entry of magnitude at least `alpha`,
/// (c) no entry anywhere exceeds `beta` in magnitude.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonDegeneracyReport {
    pub alpha: f64,
    pub beta: f64,
    pub edge_cover: Vec<EdgeCoverFlag>,
    pub maximal_nonvanishing: Vec<HyperedgeFlag>,
    pub entry_bound: Vec<HyperedgeFlag>,
}

impl NonDegeneracyReport {
    pub fn edge_cover_ok(&self) -> bool {
        self.edge_cover.iter().all(|f| f.ok)
    }

    pub fn maximal_nonvanishing_ok(&self) -> bool {
        self.maximal_nonvanishing.iter().all(|f| f.ok)
    }

    pub fn entry_bound_ok(&self) -> bool {
        self.entry_bound.iter().all(|f| f.ok)
    }

    pub fn passes(&self) -> bool {
        self.edge_cover_ok() && self.maximal_nonvanishing_ok() && self.entry_bound_ok()
    }
}

impl MarkovRandomField {
    /// Stored hyperedges with a nonzero tensor that are not strictly
    /// contained in a larger nonzero hyperedge.
    pub fn maximal_hyperedges(&self) -> Vec<&[usize]> {
        let live: Vec<&[usize]> = self
            .tensors()
            .iter()
            .filter(|t| t.max_abs() > PRUNE_TOL)
            .map(|t| t.vertices())
            .collect();
        live.iter()
            .filter(|h| {
                !live
                    .iter()
                    .any(|g| g.len() > h.len() && h.iter().all(|v| g.binary_search(v).is_ok()))
            })
            .copied()
            .collect()
    }

    pub fn validate_nondegeneracy(&self, alpha: f64, beta: f64) -> Result<NonDegeneracyReport> {
        if !(alpha > 0.0 && beta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha and beta must be positive, got {alpha}, {beta}"
            )));
        }
        if let Some(t) = self.tensors().iter().find(|t| !t.is_centered(CENTERING_TOL)) {
            return Err(Error::NotCanonical(format!(
                "hyperedge {:?} has fiber sum {:e}",
                t.vertices(),
                t.max_fiber_sum()
            )));
        }
        let edge_cover = self
            .clique_graph()
            .edges()
            .into_iter()
            .map(|(a, b)| EdgeCoverFlag {
                edge: (a, b),
                ok: self
                    .tensors()
                    .iter()
                    .any(|t| t.contains(a) && t.contains(b) && t.max_abs() > PRUNE_TOL),
            })
            .collect();
        let maximal_nonvanishing = self
            .maximal_hyperedges()
            .into_iter()
            .map(|h| {
                let max_abs = self.tensor(h).expect("stored").max_abs();
                HyperedgeFlag { hyperedge: h.to_vec(), max_abs, ok: max_abs >= alpha }
            })
            .collect();
        let entry_bound = self
            .tensors()
            .iter()
            .map(|t| HyperedgeFlag {
                hyperedge: t.vertices().to_vec(),
                max_abs: t.max_abs(),
                ok: t.max_abs() <= beta,
            })
            .collect();
        Ok(NonDegeneracyReport { alpha, beta, edge_cover, maximal_nonvanishing, entry_bound })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrf::CliqueTensor;

    #[test]
    fn clique_graph_examples() {
        let g = CliqueGraph::from_hyperedges(3, [&[0usize, 1, 2][..]]);
        assert_eq!(g.edges(), [(0, 1), (0, 2), (1, 2)].into_iter().collect());
        assert_eq!(g.degrees(), vec![2, 2, 2]);

        let g = CliqueGraph::from_hyperedges(3, [&[0usize][..], &[2][..]]);
        assert!(g.edges().is_empty());

        let g = CliqueGraph::from_hyperedges(3, [&[0usize, 1][..], &[1, 2][..]]);
        assert_eq!(g.edges(), [(0, 1), (1, 2)].into_iter().collect());
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g.max_degree(), 2);
    }

    fn ising(j: f64) -> MarkovRandomField {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![j, -j, -j, j]).unwrap();
        MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap()
    }

    #[test]
    fn nondegeneracy_examples() {
        let m = ising(0.5);
        assert!(m.validate_nondegeneracy(0.4, 1.0).unwrap().passes());
        let r = m.validate_nondegeneracy(0.6, 1.0).unwrap();
        assert!(!r.maximal_nonvanishing_ok());
        assert!(r.edge_cover_ok() && r.entry_bound_ok());
        let r = m.validate_nondegeneracy(0.1, 0.4).unwrap();
        assert!(!r.entry_bound_ok());

        let zero = CliqueTensor::zeros(vec![0, 1], vec![2, 2]).unwrap();
        let unary = CliqueTensor::new(vec![0], vec![2], vec![0.5, -0.5]).unwrap();
        let m = MarkovRandomField::new(vec![2, 2], 2, vec![zero, unary]).unwrap();
        let r = m.validate_nondegeneracy(0.4, 1.0).unwrap();
        assert!(!r.edge_cover_ok());
        assert!(!r.passes());
    }

    #[test]
    fn nondegeneracy_rejects_non_canonical() {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let m = MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap();
        assert!(matches!(m.validate_nondegeneracy(0.1, 5.0), Err(Error::NotCanonical(_))));
    }

    #[test]
    fn maximality_ignores_contained_edges() {
        let big = CliqueTensor::from_fn(vec![0, 1, 2], vec![2, 2, 2], |i| {
            if (i[0] + i[1] + i[2]) % 2 == 0 { 0.5 } else { -0.5 }
        })
        .unwrap();
        let pair = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![0.1, -0.1, -0.1, 0.1]).unwrap();
        let m = MarkovRandomField::new(vec![2, 2, 2], 3, vec![big, pair]).unwrap();
        assert_eq!(m.maximal_hyperedges(), vec![&[0usize, 1, 2][..]]);
        // the weak pair is not maximal, so alpha = 0.4 still passes
        assert!(m.validate_nondegeneracy(0.4, 1.0).unwrap().passes());
    }
}
