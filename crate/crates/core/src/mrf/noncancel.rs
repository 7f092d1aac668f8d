//! Effective tensors and the non-cancellation witness.
//!
//! Summing centered tensors over subsets of `{0, .., s-1}` can never cancel
//! a `kappa`-nonvanishing top-order tensor completely: some entry of the sum
//! keeps magnitude at least `kappa / s^s`.

use super::field::CENTERING_TOL;
use super::tensor::{for_each_index, CliqueTensor};
use crate::error::{Error, Result};

/// Entry of an effective tensor certifying non-cancellation.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub index: Vec<usize>,
    pub value: f64,
    /// The guaranteed floor `kappa / s^s`.
    pub bound: f64,
}

/// Pointwise sum of `parts` expanded to the full shape `dims`.
///
/// Each part's vertices index into `dims` (positions `0..dims.len()`).
pub fn effective_tensor(dims: &[usize], parts: &[CliqueTensor]) -> Result<CliqueTensor> {
    let s = dims.len();
    for p in parts {
        if let Some(&v) = p.vertices().iter().find(|&&v| v >= s) {
            return Err(Error::ShapeMismatch(format!(
                "part {:?} references position {v} outside {s} dims",
                p.vertices()
            )));
        }
        for (&v, &k) in p.vertices().iter().zip(p.shape()) {
            if dims[v] != k {
                return Err(Error::ShapeMismatch(format!(
                    "part {:?} has extent {k} at position {v}, expected {}",
                    p.vertices(),
                    dims[v]
                )));
            }
        }
    }
    let mut sub = Vec::new();
    CliqueTensor::from_fn((0..s).collect(), dims.to_vec(), |idx| {
        parts
            .iter()
            .map(|p| {
                sub.clear();
                sub.extend(p.vertices().iter().map(|&v| idx[v]));
                p.get(&sub)
            })
            .sum()
    })
}

/// Finds an entry of the effective tensor with magnitude at least `kappa / s^s`.
///
/// Requires every part to be centered and the full-order part to have an
/// entry of magnitude at least `kappa`. Failing to find the entry would
/// contradict the floor above and is reported as an invariant
/// violation.
pub fn noncancellation_witness(dims: &[usize], parts: &[CliqueTensor], kappa: f64) -> Result<Witness> {
    let s = dims.len();
    if s == 0 {
        return Err(Error::InvalidArgument("need at least one dimension".into()));
    }
    if let Some(p) = parts.iter().find(|p| !p.is_centered(CENTERING_TOL)) {
        return Err(Error::NotCanonical(format!("part {:?} is not centered", p.vertices())));
    }
    let full: Vec<usize> = (0..s).collect();
    let top = parts
        .iter()
        .find(|p| p.vertices() == full.as_slice())
        .ok_or_else(|| Error::InvalidArgument("no full-order part".into()))?;
    if top.max_abs() < kappa {
        return Err(Error::InvalidArgument(format!(
            "full-order part has max entry {} < kappa {kappa}",
            top.max_abs()
        )));
    }
    let effective = effective_tensor(dims, parts)?;
    let bound = kappa / (s as f64).powi(s as i32);
    let mut best: Option<(Vec<usize>, f64)> = None;
    for_each_index(dims, |idx| {
        let v = effective.get(idx);
        if best.as_ref().is_none_or(|(_, b)| v.abs() > b.abs()) {
            best = Some((idx.to_vec(), v));
        }
    });
    let (index, value) = best.expect("non-empty tensor");
    if value.abs() < bound {
        return Err(Error::InvariantViolation(format!(
            "effective tensor max |entry| {} below kappa/s^s = {bound}",
            value.abs()
        )));
    }
    Ok(Witness { index, value, bound })
}
