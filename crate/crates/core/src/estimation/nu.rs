use std::fmt;

use super::empirical::EmpiricalDistribution;
use crate::error::{Error, Result};
use crate::oracle::{check_query_sets, JointTable, SampleSet, ERASED};

/// Result of one `nu_hat` evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NuEstimate {
    pub value: f64,
    pub m_effective: usize,
}

/// One line of the estimator audit log.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditRecord {
    pub u: usize,
    pub set: Vec<usize>,
    pub given: Vec<usize>,
    pub value: f64,
    pub m_effective: usize,
}

impl fmt::Display for AuditRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nu u={} I={:?} S={:?} nu_hat={:.6e} m={}",
            self.u, self.set, self.given, self.value, self.m_effective
        )
    }
}

pub(crate) fn audit(u: usize, set: &[usize], given: &[usize], est: NuEstimate) {
    if log::log_enabled!(target: "mrf_nbhd::audit", log::Level::Trace) {
        let rec = AuditRecord {
            u,
            set: set.to_vec(),
            given: given.to_vec(),
            value: est.value,
            m_effective: est.m_effective,
        };
        log::trace!(target: "mrf_nbhd::audit", "{rec}");
    }
}

/// Mixed-radix layout `(s, R, G)` over the node list `S ++ [u] ++ I`.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub nodes: Vec<usize>,
    dims: Vec<usize>,
    ks: usize,
    ku: usize,
    kg: usize,
}

impl Layout {
    pub fn new(arities: &[usize], u: usize, set: &[usize], given: &[usize]) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::InvalidArgument("I must be nonempty".into()));
        }
        check_query_sets(arities.len(), u, set, given)?;
        let nodes: Vec<usize> = given.iter().chain([&u]).chain(set).copied().collect();
        let dims: Vec<usize> = nodes.iter().map(|&v| arities[v]).collect();
        let size = |vs: &[usize]| -> Result<usize> {
            vs.iter()
                .try_fold(1usize, |acc, &v| acc.checked_mul(arities[v]))
                .filter(|&p| p <= u32::MAX as usize)
                .ok_or_else(|| Error::InvalidArgument("conditioning set too large to index".into()))
        };
        let ks = size(given)?;
        let kg = size(set)?;
        let ku = arities[u];
        if ks.checked_mul(ku).and_then(|v| v.checked_mul(kg)).is_none_or(|t| t > u64::MAX as usize / 2) {
            return Err(Error::InvalidArgument("query table too large".into()));
        }
        Ok(Self { nodes, dims, ks, ku, kg })
    }

    /// Flat index of a row given as states in `nodes` order, `None` if any
    /// state is erased.
    #[inline]
    pub fn encode(&self, states: impl Iterator<Item = u8>) -> Option<u64> {
        let mut idx = 0u64;
        for (s, &d) in states.zip(&self.dims) {
            if s == ERASED {
                return None;
            }
            idx = idx * d as u64 + s as u64;
        }
        Some(idx)
    }

    pub fn encode_row(&self, row: &[u8]) -> Option<u64> {
        self.encode(self.nodes.iter().map(|&v| row[v]))
    }

    /// `nu_hat` from the flat keys of the retained rows.
    pub fn nu_from_keys(&self, mut keys: Vec<u64>) -> f64 {
        let m = keys.len();
        if m == 0 {
            return 0.0;
        }
        let block = self.ku * self.kg;
        let table = self.ks as u128 * block as u128;
        let mut total = 0.0;
        if table <= (1u128 << 16).max(4 * m as u128) {
            let mut counts = vec![0u64; table as usize];
            for k in keys {
                counts[k as usize] += 1;
            }
            let mut scratch = Scratch::new(self.ku, self.kg);
            for s in 0..self.ks {
                total += scratch.term(&counts[s * block..(s + 1) * block], m);
            }
        } else {
            keys.sort_unstable();
            let mut scratch = Scratch::new(self.ku, self.kg);
            let mut cells = vec![0u64; block];
            for group in keys.chunk_by(|a, b| a / block as u64 == b / block as u64) {
                cells.fill(0);
                for &k in group {
                    cells[(k % block as u64) as usize] += 1;
                }
                total += scratch.term(&cells, m);
            }
        }
        total / block as f64
    }
}

struct Scratch {
    ku: usize,
    kg: usize,
    by_g: Vec<u64>,
}

impl Scratch {
    fn new(ku: usize, kg: usize) -> Self {
        Self { ku, kg, by_g: vec![0; kg] }
    }

    /// `Σ_{R,G} |c(s,R,G) c(s) - c(s,R) c(s,G)| / (c(s) m)` for one `s` block.
    fn term(&mut self, cells: &[u64], m: usize) -> f64 {
        let cs: u64 = cells.iter().sum();
        if cs == 0 {
            return 0.0;
        }
        self.by_g.fill(0);
        for row in cells.chunks_exact(self.kg) {
            for (acc, &c) in self.by_g.iter_mut().zip(row) {
                *acc += c;
            }
        }
        let mut num: u128 = 0;
        for row in cells.chunks_exact(self.kg).take(self.ku) {
            let cr: u64 = row.iter().sum();
            for (&c, &cg) in row.iter().zip(&self.by_g) {
                let a = c as i128 * cs as i128;
                let b = cr as i128 * cg as i128;
                num += (a - b).unsigned_abs();
            }
        }
        num as f64 / (cs as f64 * m as f64)
    }
}

fn complete_case(samples: &SampleSet, layout: &Layout) -> Vec<u64> {
    samples.rows().filter_map(|row| layout.encode_row(row)).collect()
}

/// Empirical `nu_{u,I|S}` from complete data.
///
/// Configurations of `X_S` never seen in the data contribute nothing.
/// Fails if any cell of `{u} ∪ I ∪ S` is erased; use [`nu_hat_erased`] there.
pub fn nu_hat(emp: &EmpiricalDistribution<'_>, u: usize, set: &[usize], given: &[usize]) -> Result<f64> {
    let samples = emp.samples();
    let layout = Layout::new(samples.arities(), u, set, given)?;
    let keys = complete_case(samples, &layout);
    if keys.len() != samples.m() {
        return Err(Error::InvalidArgument(format!(
            "{} rows have erased cells in the query set",
            samples.m() - keys.len()
        )));
    }
    let est = NuEstimate { value: layout.nu_from_keys(keys), m_effective: samples.m() };
    audit(u, set, given, est);
    Ok(est.value)
}

/// Empirical `nu_{u,I|S}` over the rows where every node of `{u} ∪ I ∪ S`
/// is observed.
pub fn nu_hat_erased(
    emp: &EmpiricalDistribution<'_>,
    u: usize,
    set: &[usize],
    given: &[usize],
) -> Result<NuEstimate> {
    let samples = emp.samples();
    let layout = Layout::new(samples.arities(), u, set, given)?;
    let keys = complete_case(samples, &layout);
    if keys.is_empty() {
        return Err(Error::InsufficientCoverage { nodes: layout.nodes });
    }
    let m_effective = keys.len();
    let est = NuEstimate { value: layout.nu_from_keys(keys), m_effective };
    audit(u, set, given, est);
    Ok(est)
}

/// Marginal tables `p(s,R,G)`, `p(s,R)`, `p(s,G)`, `p(s)` for one
/// `(u, I, S)` query, row-major with `s` outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginalTables {
    pub ks: usize,
    pub ku: usize,
    pub kg: usize,
    pub joint: Vec<f64>,
    pub s_u: Vec<f64>,
    pub s_g: Vec<f64>,
    pub s: Vec<f64>,
}

impl MarginalTables {
    pub fn from_joint(joint: &JointTable, u: usize, set: &[usize], given: &[usize]) -> Result<Self> {
        let layout = Layout::new(joint.arities(), u, set, given)?;
        let (ks, ku, kg) = (layout.ks, layout.ku, layout.kg);
        let full = joint.marginal(&layout.nodes);
        let mut s_u = vec![0.0; ks * ku];
        let mut s_g = vec![0.0; ks * kg];
        let mut s = vec![0.0; ks];
        for (i, &p) in full.iter().enumerate() {
            let (si, r, g) = (i / (ku * kg), i / kg % ku, i % kg);
            s_u[si * ku + r] += p;
            s_g[si * kg + g] += p;
            s[si] += p;
        }
        Ok(Self { ks, ku, kg, joint: full, s_u, s_g, s })
    }

    /// `nu` computed from these tables as given, without renormalising.
    /// Entries of `X_S` with nonpositive mass are skipped.
    pub fn nu(&self) -> f64 {
        let (ku, kg) = (self.ku, self.kg);
        let mut total = 0.0;
        for si in 0..self.ks {
            let ps = self.s[si];
            if ps <= 0.0 {
                continue;
            }
            for r in 0..ku {
                let psr = self.s_u[si * ku + r];
                for g in 0..kg {
                    let p = self.joint[(si * ku + r) * kg + g];
                    total += (p - psr * self.s_g[si * kg + g] / ps).abs();
                }
            }
        }
        total / (ku * kg) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrf::{CliqueTensor, MarkovRandomField};
    use crate::oracle::{erase, exact_joint, sample_exact};

    fn ising(j: f64) -> MarkovRandomField {
        let t = CliqueTensor::new(vec![0, 1], vec![2, 2], vec![j, -j, -j, j]).unwrap();
        MarkovRandomField::new(vec![2, 2], 2, vec![t]).unwrap()
    }

    #[test]
    fn product_table_gives_zero() {
        // every (a, b) pair exactly once: X_0 and X_1 independent in the data
        let s = SampleSet::new(vec![2, 3], vec![0, 0, 0, 1, 0, 2, 1, 0, 1, 1, 1, 2], 0).unwrap();
        let e = EmpiricalDistribution::new(&s);
        assert_eq!(nu_hat(&e, 0, &[1], &[]).unwrap(), 0.0);
    }

    #[test]
    fn single_sample_is_degenerate() {
        let s = SampleSet::new(vec![2, 2, 2], vec![1, 0, 1], 0).unwrap();
        let e = EmpiricalDistribution::new(&s);
        assert_eq!(nu_hat(&e, 0, &[1], &[2]).unwrap(), 0.0);
        assert_eq!(nu_hat(&e, 0, &[1, 2], &[]).unwrap(), 0.0);
    }

    #[test]
    fn ising_estimate_near_exact() {
        let joint = exact_joint(&ising(0.5)).unwrap();
        let s = sample_exact(&joint, 100_000, 11).unwrap();
        let e = EmpiricalDistribution::new(&s);
        let v = nu_hat(&e, 0, &[1], &[]).unwrap();
        assert!((v - 0.11552928931500246).abs() < 0.01, "{v}");
    }

    #[test]
    fn dense_and_sorted_paths_agree() {
        let a = vec![3; 4];
        let layout = Layout::new(&a, 0, &[1], &[2, 3]).unwrap();
        let keys: Vec<u64> = (0..50u64).map(|i| (i * 7919) % 81).collect();
        let dense = layout.nu_from_keys(keys.clone());
        // 81 cells against 50 rows still takes the dense path; force sorted
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        let mut cells = vec![0u64; 9];
        let mut scratch = Scratch::new(3, 3);
        let mut total = 0.0;
        for group in sorted.chunk_by(|x, y| x / 9 == y / 9) {
            cells.fill(0);
            for &k in group {
                cells[(k % 9) as usize] += 1;
            }
            total += scratch.term(&cells, 50);
        }
        assert!((dense - total / 9.0).abs() < 1e-15);
    }

    #[test]
    fn large_conditioning_set_uses_sparse_counts() {
        // 2^18 conditioning cells against 100 rows
        let cells: Vec<u8> = (0..2000usize).map(|i| ((i * 2654435761) >> 7 & 1) as u8).collect();
        let s = SampleSet::new(vec![2; 20], cells, 0).unwrap();
        let e = EmpiricalDistribution::new(&s);
        let given: Vec<usize> = (2..20).collect();
        let v = nu_hat(&e, 0, &[1], &given).unwrap();
        assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn erased_matches_full_when_fully_revealed() {
        let joint = exact_joint(&ising(0.3)).unwrap();
        let s = sample_exact(&joint, 5_000, 2).unwrap();
        let r = erase(&s, 1.0, 9).unwrap();
        let (a, b) = (EmpiricalDistribution::new(&s), EmpiricalDistribution::new(&r));
        let full = nu_hat(&a, 1, &[0], &[]).unwrap();
        let er = nu_hat_erased(&b, 1, &[0], &[]).unwrap();
        assert_eq!(full.to_bits(), er.value.to_bits());
        assert_eq!(er.m_effective, 5_000);
    }

    #[test]
    fn erased_node_reports_coverage() {
        let s = SampleSet::new(vec![2, 2], vec![ERASED, 0, ERASED, 1], 0).unwrap();
        let e = EmpiricalDistribution::new(&s);
        assert!(matches!(nu_hat_erased(&e, 0, &[1], &[]), Err(Error::InsufficientCoverage { .. })));
        assert!(nu_hat(&e, 0, &[1], &[]).is_err());
    }

    #[test]
    fn effective_m_tracks_reveal_rate() {
        let model = MarkovRandomField::independent(vec![2; 5], 2).unwrap();
        let joint = exact_joint(&model).unwrap();
        let s = erase(&sample_exact(&joint, 10_000, 4).unwrap(), 0.8, 5).unwrap();
        let e = EmpiricalDistribution::new(&s);
        let m = nu_hat_erased(&e, 0, &[1], &[2, 3]).unwrap().m_effective as f64;
        let p: f64 = 0.8f64.powi(4);
        let sd = (10_000.0 * p * (1.0 - p)).sqrt();
        assert!((m - 10_000.0 * p).abs() < 3.0 * sd, "{m}");
    }

    #[test]
    fn marginal_tables_reproduce_exact_nu() {
        let joint = exact_joint(&ising(0.5)).unwrap();
        let t = MarginalTables::from_joint(&joint, 0, &[1], &[]).unwrap();
        assert!((t.nu() - 0.11552928931500246).abs() < 1e-12);
    }

    #[test]
    fn audit_line_format() {
        let rec = AuditRecord { u: 3, set: vec![1], given: vec![2, 5], value: 0.5, m_effective: 10 };
        assert_eq!(rec.to_string(), "nu u=3 I=[1] S=[2, 5] nu_hat=5.000000e-1 m=10");
    }
}
