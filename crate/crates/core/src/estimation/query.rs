use super::nu::{audit, Layout, NuEstimate};
use crate::error::{Error, Result};
use crate::oracle::{check_query_sets, ExactSampler, JointTable, SampleSet};
use crate::seed::{self, stream, Rng};

/// A source of full i.i.d. samples, each handed out once.
pub trait SampleStream {
    fn arities(&self) -> &[usize];
    fn next_sample(&mut self, out: &mut [usize]) -> Result<()>;
}

/// Endless stream of exact draws from a joint table.
#[derive(Debug)]
pub struct JointStream<'a> {
    sampler: ExactSampler<'a>,
    arities: Vec<usize>,
    rng: Rng,
}

impl<'a> JointStream<'a> {
    pub fn new(joint: &'a JointTable, seed: u64) -> Self {
        Self {
            sampler: ExactSampler::new(joint),
            arities: joint.arities().to_vec(),
            rng: seed::rng(seed, stream::QUERY, 0),
        }
    }
}

impl SampleStream for JointStream<'_> {
    fn arities(&self) -> &[usize] {
        &self.arities
    }

    fn next_sample(&mut self, out: &mut [usize]) -> Result<()> {
        self.sampler.draw(&mut self.rng, out);
        Ok(())
    }
}

/// Walks the rows of a complete sample set in order.
#[derive(Debug)]
pub struct ReplayStream<'a> {
    samples: &'a SampleSet,
    pos: usize,
}

impl<'a> ReplayStream<'a> {
    pub fn new(samples: &'a SampleSet) -> Result<Self> {
        if samples.has_erasures() {
            return Err(Error::InvalidArgument("replay stream needs complete samples".into()));
        }
        Ok(Self { samples, pos: 0 })
    }
}

impl SampleStream for ReplayStream<'_> {
    fn arities(&self) -> &[usize] {
        self.samples.arities()
    }

    fn next_sample(&mut self, out: &mut [usize]) -> Result<()> {
        if self.pos >= self.samples.m() {
            return Err(Error::SourceExhausted { consumed: self.pos });
        }
        for (o, &c) in out.iter_mut().zip(self.samples.row(self.pos)) {
            *o = c as usize;
        }
        self.pos += 1;
        Ok(())
    }
}

/// Observes at most `capacity` nodes of each fresh sample.
#[derive(Debug)]
pub struct QueryOracle<S> {
    capacity: usize,
    consumed: usize,
    max_query_size: usize,
    source: S,
    scratch: Vec<usize>,
}

impl<S: SampleStream> QueryOracle<S> {
    pub fn new(source: S, capacity: usize) -> Self {
        let n = source.arities().len();
        Self { capacity, consumed: 0, max_query_size: 0, source, scratch: vec![0; n] }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Samples spent so far; one per query.
    pub fn consumed(&self) -> usize {
        self.consumed
    }

    /// Largest query set issued so far.
    pub fn max_query_size(&self) -> usize {
        self.max_query_size
    }

    pub fn arities(&self) -> &[usize] {
        self.source.arities()
    }

    pub fn check_capacity(&self, size: usize) -> Result<()> {
        if size > self.capacity {
            return Err(Error::QueryCapacity { requested: size, capacity: self.capacity });
        }
        Ok(())
    }

    /// Draws a fresh sample and writes the states of `nodes` into `out`.
    pub fn query(&mut self, nodes: &[usize], out: &mut Vec<usize>) -> Result<()> {
        self.check_capacity(nodes.len())?;
        let n = self.scratch.len();
        if let Some(&v) = nodes.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidArgument(format!("node {v} out of range")));
        }
        self.source.next_sample(&mut self.scratch)?;
        self.consumed += 1;
        self.max_query_size = self.max_query_size.max(nodes.len());
        out.clear();
        out.extend(nodes.iter().map(|&v| self.scratch[v]));
        Ok(())
    }
}

/// `nu_hat` over a fresh batch of `m_batch` queries on `{u} ∪ I ∪ S`.
pub fn nu_hat_queried<S: SampleStream>(
    oracle: &mut QueryOracle<S>,
    u: usize,
    set: &[usize],
    given: &[usize],
    m_batch: usize,
) -> Result<NuEstimate> {
    if m_batch == 0 {
        return Err(Error::InvalidArgument("m_batch must be positive".into()));
    }
    check_query_sets(oracle.arities().len(), u, set, given)?;
    let layout = Layout::new(oracle.arities(), u, set, given)?;
    oracle.check_capacity(layout.nodes.len())?;
    let mut keys = Vec::with_capacity(m_batch);
    let mut obs = Vec::with_capacity(layout.nodes.len());
    for _ in 0..m_batch {
        oracle.query(&layout.nodes, &mut obs)?;
        let key = layout.encode(obs.iter().map(|&s| s as u8)).expect("oracle states are never erased");
        keys.push(key);
    }
    let est = NuEstimate { value: layout.nu_from_keys(keys), m_effective: m_batch };
    audit(u, set, given, est);
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrf::MarkovRandomField;
    use crate::oracle::{exact_joint, sample_exact};

    #[test]
    fn capacity_is_enforced_before_consuming() {
        let model = MarkovRandomField::independent(vec![2; 4], 2).unwrap();
        let joint = exact_joint(&model).unwrap();
        let mut oracle = QueryOracle::new(JointStream::new(&joint, 1), 2);
        let err = nu_hat_queried(&mut oracle, 0, &[1], &[2], 10).unwrap_err();
        assert!(matches!(err, Error::QueryCapacity { requested: 3, capacity: 2 }));
        assert_eq!(oracle.consumed(), 0);
    }

    #[test]
    fn batches_are_fresh_and_counted() {
        let model = MarkovRandomField::independent(vec![2; 3], 2).unwrap();
        let joint = exact_joint(&model).unwrap();
        let mut oracle = QueryOracle::new(JointStream::new(&joint, 3), 3);
        let a = nu_hat_queried(&mut oracle, 0, &[1], &[], 10_000).unwrap();
        let b = nu_hat_queried(&mut oracle, 0, &[1], &[], 10_000).unwrap();
        assert_eq!(oracle.consumed(), 20_000);
        assert_eq!(oracle.max_query_size(), 2);
        assert_ne!(a.value, b.value);
        // Hoeffding scale for an independent pair at 10^4 draws
        assert!(a.value < 0.02 && b.value < 0.02, "{a:?} {b:?}");
    }

    #[test]
    fn replay_matches_batch_estimate_and_exhausts() {
        let model = MarkovRandomField::independent(vec![2; 3], 2).unwrap();
        let joint = exact_joint(&model).unwrap();
        let s = sample_exact(&joint, 100, 5).unwrap();
        let mut oracle = QueryOracle::new(ReplayStream::new(&s).unwrap(), 3);
        let q = nu_hat_queried(&mut oracle, 0, &[1], &[2], 100).unwrap();
        let e = crate::estimation::EmpiricalDistribution::new(&s);
        assert_eq!(q.value, crate::estimation::nu_hat(&e, 0, &[1], &[2]).unwrap());
        assert!(matches!(
            nu_hat_queried(&mut oracle, 0, &[1], &[2], 1),
            Err(Error::SourceExhausted { consumed: 100 })
        ));
    }
}
