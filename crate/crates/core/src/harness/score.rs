use std::collections::BTreeSet;

use serde::Serialize;

/// Set-overlap scores of a learned edge set. An empty learned set has
/// precision 1 by convention, an empty truth has recall 1; the flags mark
/// when a convention was used.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgeScore {
    pub precision: f64,
    pub recall: f64,
    pub exact_match: bool,
    pub precision_by_convention: bool,
    pub recall_by_convention: bool,
}

pub fn score_edges(truth: &BTreeSet<(usize, usize)>, learned: &BTreeSet<(usize, usize)>) -> EdgeScore {
    let hits = truth.intersection(learned).count() as f64;
    let ratio = |den: usize| if den == 0 { 1.0 } else { hits / den as f64 };
    EdgeScore {
        precision: ratio(learned.len()),
        recall: ratio(truth.len()),
        exact_match: truth == learned,
        precision_by_convention: learned.is_empty(),
        recall_by_convention: truth.is_empty(),
    }
}
