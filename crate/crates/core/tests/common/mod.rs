#![allow(dead_code)]

use itertools::Itertools;
use mrf_nbhd::harness::{generate_model, GeneratorSpec};
use mrf_nbhd::seed::Rng;
use mrf_nbhd::{CliqueTensor, MarkovRandomField};
use rand::Rng as _;

/// Arbitrary (non-centered) model: each subset of size `1..=r` becomes a
/// hyperedge with probability `p`, entries uniform in `[-scale, scale]`.
pub fn random_raw_model(rng: &mut Rng, n: usize, max_k: usize, r: usize, p: f64, scale: f64) -> MarkovRandomField {
    let arities: Vec<usize> = (0..n).map(|_| rng.random_range(2..=max_k)).collect();
    let mut tensors = Vec::new();
    for size in 1..=r.min(n) {
        for verts in (0..n).combinations(size) {
            if rng.random::<f64>() >= p {
                continue;
            }
            let shape: Vec<usize> = verts.iter().map(|&v| arities[v]).collect();
            let t = CliqueTensor::from_fn(verts, shape, |_| rng.random_range(-scale..=scale)).unwrap();
            tensors.push(t);
        }
    }
    MarkovRandomField::new(arities, r, tensors).unwrap()
}

/// A generated non-degenerate model with parameters drawn from the given ranges.
pub fn random_generated(rng: &mut Rng, n_range: (usize, usize), max_k: usize, r_max: usize, d_max: usize, alpha: f64) -> MarkovRandomField {
    let n = rng.random_range(n_range.0..=n_range.1);
    let r = rng.random_range(2..=r_max);
    let k = rng.random_range(2..=max_k);
    let d = rng.random_range(2..=d_max);
    let mut spec = GeneratorSpec::new(n, r, d, k, alpha, 1.0).with_density(rng.random_range(0.5..=1.0));
    spec.unary = rng.random::<bool>();
    spec.seed = rng.random();
    generate_model(&spec).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// CPU time consumed by the calling thread, in seconds.
pub fn thread_cpu_seconds() -> f64 {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    // SAFETY: `ts` is a valid, writable timespec.
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    assert_eq!(rc, 0, "clock_gettime failed");
    ts.tv_sec as f64 + ts.tv_nsec as f64 * 1e-9
}
