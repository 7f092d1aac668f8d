use rand::Rng as _;

use super::joint::JointTable;
use super::samples::{SampleSet, ERASED};
use crate::error::{Error, Result};
use crate::mrf::MarkovRandomField;
use crate::seed::{self, stream, Rng};

/// Inverse-CDF sampler over an exact joint table.
#[derive(Clone, Debug)]
pub struct ExactSampler<'a> {
    joint: &'a JointTable,
    cdf: Vec<f64>,
}

impl<'a> ExactSampler<'a> {
    pub fn new(joint: &'a JointTable) -> Self {
        let mut acc = 0.0;
        let cdf = joint
            .probs()
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Self { joint, cdf }
    }

    pub fn n(&self) -> usize {
        self.joint.n()
    }

    pub fn draw_index(&self, rng: &mut Rng) -> usize {
        let u: f64 = rng.random::<f64>() * self.cdf[self.cdf.len() - 1];
        self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1)
    }

    /// Draws one configuration into `out`.
    pub fn draw(&self, rng: &mut Rng, out: &mut [usize]) {
        let idx = self.draw_index(rng);
        self.joint.decode(idx, out);
    }
}

/// `m` i.i.d. rows from the exact table.
pub fn sample_exact(joint: &JointTable, m: usize, seed: u64) -> Result<SampleSet> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let sampler = ExactSampler::new(joint);
    let mut rng = seed::rng(seed, stream::SAMPLE, 0);
    let n = joint.n();
    let mut x = vec![0; n];
    let mut cells = Vec::with_capacity(m * n);
    for _ in 0..m {
        sampler.draw(&mut rng, &mut x);
        cells.extend(x.iter().map(|&s| s as u8));
    }
    Ok(SampleSet::from_parts_unchecked(joint.arities().to_vec(), cells, seed))
}

/// A systematic-scan heat-bath chain.
#[derive(Clone, Debug)]
pub struct GibbsChain<'a> {
    model: &'a MarkovRandomField,
    state: Vec<usize>,
    rng: Rng,
    scratch: Vec<f64>,
}

impl<'a> GibbsChain<'a> {
    /// Starts from a uniformly random configuration.
    pub fn new(model: &'a MarkovRandomField, mut rng: Rng) -> Self {
        let state = model.arities().iter().map(|&k| rng.random_range(0..k)).collect();
        Self { model, state, rng, scratch: Vec::new() }
    }

    pub fn state(&self) -> &[usize] {
        &self.state
    }

    /// Resamples every node once, in index order.
    pub fn sweep(&mut self) {
        for u in 0..self.model.n() {
            self.model.conditional_into(u, &self.state, &mut self.scratch);
            let draw: f64 = self.rng.random();
            let mut acc = 0.0;
            let mut pick = self.scratch.len() - 1;
            for (s, p) in self.scratch.iter().enumerate() {
                acc += p;
                if draw < acc {
                    pick = s;
                    break;
                }
            }
            self.state[u] = pick;
        }
    }
}

/// `m` rows from a Gibbs chain: `burn_in` sweeps, then one row every
/// `thinning` sweeps.
pub fn gibbs_sample(
    model: &MarkovRandomField,
    m: usize,
    burn_in: usize,
    thinning: usize,
    seed: u64,
) -> Result<SampleSet> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if burn_in == 0 || thinning == 0 {
        return Err(Error::InvalidArgument("burn_in and thinning must be at least 1".into()));
    }
    let mut chain = GibbsChain::new(model, seed::rng(seed, stream::GIBBS, 0));
    for _ in 0..burn_in {
        chain.sweep();
    }
    let mut cells = Vec::with_capacity(m * model.n());
    for _ in 0..m {
        for _ in 0..thinning {
            chain.sweep();
        }
        cells.extend(chain.state().iter().map(|&s| s as u8));
    }
    Ok(SampleSet::from_parts_unchecked(model.arities().to_vec(), cells, seed))
}

/// Erasure channel: each cell is kept with probability `reveal_prob`,
/// independently of everything else, and otherwise replaced by [`ERASED`].
pub fn erase(samples: &SampleSet, reveal_prob: f64, seed: u64) -> Result<SampleSet> {
    if !(0.0..=1.0).contains(&reveal_prob) {
        return Err(Error::InvalidArgument(format!("reveal probability {reveal_prob} not in [0, 1]")));
    }
    let mut rng = seed::rng(seed, stream::ERASE, 0);
    let cells = samples
        .cells()
        .iter()
        .map(|&c| if rng.random::<f64>() < reveal_prob { c } else { ERASED })
        .collect();
    Ok(SampleSet::from_parts_unchecked(samples.arities().to_vec(), cells, samples.seed()))
}
