use std::collections::BTreeMap;

use super::field::MarkovRandomField;
use super::tensor::{for_each_index, CliqueTensor};
use crate::error::{Error, Result};

/// A model obtained by fixing the states of some nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionedModel {
    pub model: MarkovRandomField,
    /// `kept[i]` is the original index of node `i` of the conditioned model.
    pub kept: Vec<usize>,
}

impl ConditionedModel {
    /// New index of original node `node`, if it was not conditioned on.
    pub fn new_index(&self, node: usize) -> Option<usize> {
        self.kept.binary_search(&node).ok()
    }
}

impl MarkovRandomField {
    /// The conditional law given `X_nodes = states`, as a model on the
    /// remaining nodes (relabelled `0..n-|nodes|` in increasing order).
    ///
    /// Every hyperedge `h` maps to `h \ nodes`; the tensors of all preimages
    /// are summed with the conditioned indices frozen. The input is put in
    /// canonical form first, so frozen slices are already centered and the
    /// result is canonical with gamma no larger than the input's.
    pub fn condition_on(&self, nodes: &[usize], states: &[usize]) -> Result<ConditionedModel> {
        if nodes.len() != states.len() {
            return Err(Error::InvalidArgument(format!(
                "{} conditioned nodes but {} states",
                nodes.len(),
                states.len()
            )));
        }
        let mut fixed: Vec<Option<usize>> = vec![None; self.n()];
        for (&v, &s) in nodes.iter().zip(states) {
            if v >= self.n() {
                return Err(Error::InvalidArgument(format!("node {v} out of range")));
            }
            if s >= self.arity(v) {
                return Err(Error::StateOutOfRange { node: v, state: s, arity: self.arity(v) });
            }
            if fixed[v].replace(s).is_some() {
                return Err(Error::InvalidArgument(format!("node {v} conditioned twice")));
            }
        }
        let kept: Vec<usize> = (0..self.n()).filter(|&v| fixed[v].is_none()).collect();
        let relabel: Vec<Option<usize>> = {
            let mut r = vec![None; self.n()];
            for (new, &old) in kept.iter().enumerate() {
                r[old] = Some(new);
            }
            r
        };
        let base = self.canonicalize();
        let mut acc: BTreeMap<Vec<usize>, CliqueTensor> = BTreeMap::new();
        for t in base.tensors() {
            let free_pos: Vec<usize> =
                (0..t.order()).filter(|&p| fixed[t.vertices()[p]].is_none()).collect();
            if free_pos.is_empty() {
                continue;
            }
            let new_vertices: Vec<usize> =
                free_pos.iter().map(|&p| relabel[t.vertices()[p]].unwrap()).collect();
            let new_shape: Vec<usize> = free_pos.iter().map(|&p| t.shape()[p]).collect();
            let mut full_idx: Vec<usize> =
                t.vertices().iter().map(|&v| fixed[v].unwrap_or(0)).collect();
            let mut slice = Vec::with_capacity(new_shape.iter().product());
            for_each_index(&new_shape, |idx| {
                for (&p, &i) in free_pos.iter().zip(idx) {
                    full_idx[p] = i;
                }
                slice.push(t.get(&full_idx));
            });
            match acc.get_mut(&new_vertices) {
                Some(existing) => existing.add_assign(&slice),
                None => {
                    let tensor = CliqueTensor::new(new_vertices.clone(), new_shape, slice)?;
                    acc.insert(new_vertices, tensor);
                }
            }
        }
        let arities = kept.iter().map(|&v| self.arity(v)).collect();
        let model = MarkovRandomField::from_map(arities, self.order(), acc)?.canonicalize();
        Ok(ConditionedModel { model, kept })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_conditioning_is_identity_on_canonical_models() {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![0.5, -0.5, -0.5, 0.5]).unwrap();
        let m = MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap();
        let c = m.condition_on(&[], &[]).unwrap();
        assert_eq!(c.model, m);
        assert_eq!(c.kept, vec![0, 1]);
    }

    #[test]
    fn conditioning_an_ising_pair_leaves_a_field() {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![0.5, -0.5, -0.5, 0.5]).unwrap();
        let m = MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap();
        let c = m.condition_on(&[1], &[1]).unwrap();
        assert_eq!(c.kept, vec![0]);
        assert_eq!(c.model.tensors().len(), 1);
        assert_eq!(c.model.tensors()[0].vertices(), &[0]);
        assert_eq!(c.model.tensors()[0].values(), &[-0.5, 0.5]);
    }

    #[test]
    fn rejects_bad_arguments() {
        let m = MarkovRandomField::independent(vec![2, 2], 2).unwrap();
        assert!(m.condition_on(&[0], &[]).is_err());
        assert!(m.condition_on(&[0], &[2]).is_err());
        assert!(m.condition_on(&[3], &[0]).is_err());
        assert!(m.condition_on(&[0, 0], &[0, 1]).is_err());
    }
}
