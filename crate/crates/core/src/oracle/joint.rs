use rayon::prelude::*;

use super::check_query_sets;
use crate::error::{Error, Result};
use crate::mrf::MarkovRandomField;

/// Largest configuration count accepted by exact enumeration.
pub const MAX_CONFIGURATIONS: u128 = 1 << 24;

/// The full probability table of a model.
///
/// Configurations are indexed mixed-radix over the node arities with node 0
/// as the most significant digit.
#[derive(Clone, Debug)]
pub struct JointTable {
    arities: Vec<usize>,
    strides: Vec<usize>,
    probs: Vec<f64>,
    log_partition: f64,
}

impl JointTable {
    pub fn new(model: &MarkovRandomField) -> Result<Self> {
        let configs = model.configuration_count();
        if configs > MAX_CONFIGURATIONS {
            return Err(Error::TooManyConfigurations { configs, limit: MAX_CONFIGURATIONS });
        }
        let arities = model.arities().to_vec();
        let strides = mixed_radix_strides(&arities);
        let total = configs as usize;
        let log_weights: Vec<f64> = (0..total)
            .into_par_iter()
            .map_init(
                || vec![0; arities.len()],
                |x, idx| {
                    decode_into(idx, &arities, &strides, x);
                    model.log_weight(x)
                },
            )
            .collect();
        let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut probs: Vec<f64> = log_weights.iter().map(|w| (w - max).exp()).collect();
        let z: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= z;
        }
        Ok(Self { arities, strides, probs, log_partition: max + z.ln() })
    }

    pub fn n(&self) -> usize {
        self.arities.len()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    pub fn index_of(&self, x: &[usize]) -> usize {
        x.iter().zip(&self.strides).map(|(s, st)| s * st).sum()
    }

    pub fn decode(&self, idx: usize, out: &mut [usize]) {
        decode_into(idx, &self.arities, &self.strides, out);
    }

    pub fn prob(&self, x: &[usize]) -> f64 {
        self.probs[self.index_of(x)]
    }

    /// Marginal table over `nodes`, row-major in the order given.
    pub fn marginal(&self, nodes: &[usize]) -> Vec<f64> {
        let dims: Vec<usize> = nodes.iter().map(|&v| self.arities[v]).collect();
        let mstrides = mixed_radix_strides(&dims);
        let mut out = vec![0.0; dims.iter().product()];
        for (idx, &p) in self.probs.iter().enumerate() {
            let mut m = 0;
            for (&v, &ms) in nodes.iter().zip(&mstrides) {
                m += (idx / self.strides[v]) % self.arities[v] * ms;
            }
            out[m] += p;
        }
        out
    }

    /// `I(X_u; X_set | X_given)` in nats.
    pub fn conditional_mi(&self, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
        check_query_sets(self.n(), u, set, given)?;
        let t = SplitTable::new(self, u, set, given);
        let mut mi = 0.0;
        for s in 0..t.ks {
            let ps = t.p_s(s);
            if ps <= 0.0 {
                continue;
            }
            for r in 0..t.ku {
                let psr = t.p_sr(s, r);
                for g in 0..t.kg {
                    let p = t.p(s, r, g);
                    if p > 0.0 {
                        mi += p * (p * ps / (psr * t.p_sg(s, g))).ln();
                    }
                }
            }
        }
        Ok(mi.max(0.0))
    }

    /// Mean over uniform `(R, G)` of `E_{X_S} |Pr(R, G | X_S) - Pr(R | X_S) Pr(G | X_S)|`.
    pub fn nu(&self, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
        check_query_sets(self.n(), u, set, given)?;
        let t = SplitTable::new(self, u, set, given);
        let mut total = 0.0;
        for s in 0..t.ks {
            let ps = t.p_s(s);
            if ps <= 0.0 {
                continue;
            }
            for r in 0..t.ku {
                let psr = t.p_sr(s, r);
                for g in 0..t.kg {
                    total += (t.p(s, r, g) - psr * t.p_sg(s, g) / ps).abs();
                }
            }
        }
        Ok(total / (t.ku * t.kg) as f64)
    }

    /// Marginal entropy of one node, in nats.
    pub fn entropy(&self, node: usize) -> f64 {
        self.marginal(&[node]).iter().filter(|&&p| p > 0.0).map(|p| -p * p.ln()).sum()
    }
}

/// A marginal laid out as `(S, u, I)` with the derived sub-marginals.
struct SplitTable {
    ks: usize,
    ku: usize,
    kg: usize,
    joint: Vec<f64>,
    s: Vec<f64>,
    sr: Vec<f64>,
    sg: Vec<f64>,
}

impl SplitTable {
    fn new(table: &JointTable, u: usize, set: &[usize], given: &[usize]) -> Self {
        let order: Vec<usize> = given.iter().copied().chain([u]).chain(set.iter().copied()).collect();
        let joint = table.marginal(&order);
        let ks: usize = given.iter().map(|&v| table.arities[v]).product();
        let ku = table.arities[u];
        let kg: usize = set.iter().map(|&v| table.arities[v]).product();
        let mut s = vec![0.0; ks];
        let mut sr = vec![0.0; ks * ku];
        let mut sg = vec![0.0; ks * kg];
        for si in 0..ks {
            for r in 0..ku {
                for g in 0..kg {
                    let p = joint[(si * ku + r) * kg + g];
                    s[si] += p;
                    sr[si * ku + r] += p;
                    sg[si * kg + g] += p;
                }
            }
        }
        Self { ks, ku, kg, joint, s, sr, sg }
    }

    fn p(&self, s: usize, r: usize, g: usize) -> f64 {
        self.joint[(s * self.ku + r) * self.kg + g]
    }
    fn p_s(&self, s: usize) -> f64 {
        self.s[s]
    }
    fn p_sr(&self, s: usize, r: usize) -> f64 {
        self.sr[s * self.ku + r]
    }
    fn p_sg(&self, s: usize, g: usize) -> f64 {
        self.sg[s * self.kg + g]
    }
}

pub(crate) fn mixed_radix_strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn decode_into(idx: usize, arities: &[usize], strides: &[usize], out: &mut [usize]) {
    for ((o, &k), &st) in out.iter_mut().zip(arities).zip(strides) {
        *o = (idx / st) % k;
    }
}

pub fn exact_joint(model: &MarkovRandomField) -> Result<JointTable> {
    JointTable::new(model)
}

pub fn exact_conditional_mi(joint: &JointTable, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
    joint.conditional_mi(u, set, given)
}

pub fn exact_nu(joint: &JointTable, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
    joint.nu(u, set, given)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrf::CliqueTensor;

    fn ising(j: f64) -> MarkovRandomField {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![j, -j, -j, j]).unwrap();
        MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap()
    }

    #[test]
    fn single_uniform_node() {
        let m = MarkovRandomField::independent(vec![2], 1).unwrap();
        let j = exact_joint(&m).unwrap();
        assert_eq!(j.probs(), &[0.5, 0.5]);
        assert!((j.log_partition() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn ising_pair_table() {
        // frozen from direct evaluation of exp(J s_a s_b) / (2e^J + 2e^-J)
        let j = exact_joint(&ising(0.5)).unwrap();
        let expected = [0.365_529_289_315_002_5, 0.134_470_710_684_997_58, 0.134_470_710_684_997_58, 0.365_529_289_315_002_5];
        for (p, e) in j.probs().iter().zip(expected) {
            assert!((p - e).abs() < 1e-14);
        }
        let z = 2.0 * 0.5f64.exp() + 2.0 * (-0.5f64).exp();
        assert!((j.log_partition() - z.ln()).abs() < 1e-14);
    }

    #[test]
    fn ising_pair_information() {
        let j = exact_joint(&ising(0.5)).unwrap();
        assert!((j.conditional_mi(0, &[1], &[]).unwrap() - 0.110_944_071_671_727_54).abs() < 1e-12);
        assert!((j.nu(0, &[1], &[]).unwrap() - 0.115_529_289_315_002_46).abs() < 1e-12);
        assert!((j.conditional_mi(1, &[0], &[]).unwrap() - j.conditional_mi(0, &[1], &[]).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn independence_gives_zero() {
        let m = MarkovRandomField::independent(vec![2, 3], 2).unwrap();
        let j = exact_joint(&m).unwrap();
        assert!(j.conditional_mi(0, &[1], &[]).unwrap() < 1e-12);
        assert!(j.nu(0, &[1], &[]).unwrap() < 1e-12);
    }

    #[test]
    fn markov_chain_is_conditionally_independent() {
        let a = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![0.8, -0.8, -0.8, 0.8]).unwrap();
        let b = CliqueTensor::new(vec![1, 2], vec![2, 2], vec![0.6, -0.6, -0.6, 0.6]).unwrap();
        let m = MarkovRandomField::new(vec![2, 2, 2], 2, vec![a, b]).unwrap();
        let j = exact_joint(&m).unwrap();
        assert!(j.conditional_mi(0, &[2], &[1]).unwrap() < 1e-12);
        assert!(j.conditional_mi(0, &[2], &[]).unwrap() > 1e-3);
    }

    #[test]
    fn rejects_overlapping_sets() {
        let j = exact_joint(&ising(0.5)).unwrap();
        assert!(j.nu(0, &[0], &[]).is_err());
        assert!(j.nu(0, &[1], &[1]).is_err());
        assert!(j.conditional_mi(0, &[2], &[]).is_err());
    }

    #[test]
    fn capacity_guard() {
        let m = MarkovRandomField::independent(vec![2; 25], 1).unwrap();
        assert!(matches!(exact_joint(&m), Err(Error::TooManyConfigurations { .. })));
    }
}
