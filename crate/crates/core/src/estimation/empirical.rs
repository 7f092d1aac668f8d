use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::oracle::{SampleSet, ERASED};

const CACHE_LIMIT: usize = 1024;

/// Counts of each observed state tuple.
type Counts = HashMap<Vec<u8>, u64>;

/// Empirical law of a sample set. Probabilities are exact count ratios.
#[derive(Debug)]
pub struct EmpiricalDistribution<'a> {
    samples: &'a SampleSet,
    cache: Mutex<HashMap<Vec<usize>, Arc<Counts>>>,
}

impl<'a> EmpiricalDistribution<'a> {
    pub fn new(samples: &'a SampleSet) -> Self {
        Self { samples, cache: Mutex::new(HashMap::new()) }
    }

    pub fn samples(&self) -> &'a SampleSet {
        self.samples
    }

    pub fn m(&self) -> usize {
        self.samples.m()
    }

    fn counts(&self, nodes: &[usize]) -> Arc<Counts> {
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some(c) = cache.get(nodes) {
            return Arc::clone(c);
        }
        let mut counts: Counts = HashMap::new();
        for row in self.samples.rows() {
            let key: Vec<u8> = nodes.iter().map(|&v| row[v]).collect();
            if key.contains(&ERASED) {
                continue;
            }
            *counts.entry(key).or_default() += 1;
        }
        let counts = Arc::new(counts);
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(nodes.to_vec(), Arc::clone(&counts));
        counts
    }

    /// Fraction of samples with `X_nodes = states`. Erased cells never match.
    pub fn prob(&self, nodes: &[usize], states: &[usize]) -> Result<f64> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("event over an empty node set".into()));
        }
        if nodes.len() != states.len() {
            return Err(Error::InvalidArgument("nodes and states differ in length".into()));
        }
        for (&v, &s) in nodes.iter().zip(states) {
            if v >= self.samples.n() {
                return Err(Error::InvalidArgument(format!("node {v} out of range")));
            }
            if s >= self.samples.arities()[v] {
                return Err(Error::StateOutOfRange { node: v, state: s, arity: self.samples.arities()[v] });
            }
        }
        let (order, key): (Vec<usize>, Vec<u8>) = {
            let mut pairs: Vec<(usize, u8)> = nodes.iter().zip(states).map(|(&v, &s)| (v, s as u8)).collect();
            pairs.sort_unstable();
            pairs.into_iter().unzip()
        };
        let count = self.counts(&order).get(&key).copied().unwrap_or(0);
        Ok(count as f64 / self.m() as f64)
    }
}
