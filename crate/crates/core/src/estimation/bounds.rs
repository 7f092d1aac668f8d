use crate::error::{Error, Result};

fn check_positive(pairs: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in pairs {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(())
}

fn log_terms(ell: f64, omega_num: f64, omega: f64, n: usize, k: usize, r: usize) -> f64 {
    let lr = ell + r as f64;
    (omega_num / omega).ln() + lr.ln() + lr * ((n * k) as f64).ln() + 2f64.ln()
}

/// Samples sufficient for `|nu_hat - nu| < eps` simultaneously over all
/// `(u, I, S)` with `|S| <= ell`, with probability at least `1 - omega`.
///
/// Returned as a float: realistic parameters overflow any integer type.
pub fn required_samples_full(
    ell: usize,
    eps: f64,
    omega: f64,
    n: usize,
    k: usize,
    r: usize,
    delta: f64,
) -> Result<f64> {
    check_positive(&[("eps", eps), ("omega", omega), ("delta", delta)])?;
    if n == 0 || k == 0 || r == 0 {
        return Err(Error::InvalidArgument("n, K and r must be positive".into()));
    }
    let kf = k as f64;
    let lead = 15.0 * kf.powf(2.0 * ell as f64) / (eps * eps * delta.powf(2.0 * ell as f64));
    Ok((lead * log_terms(ell as f64, 1.0, omega, n, k, r)).ceil())
}

/// Samples sufficient for the erasure-channel learner with budget `L`,
/// threshold `tau` and reveal probability `p`.
#[allow(clippy::too_many_arguments)]
pub fn required_samples_erased(
    budget: f64,
    tau: f64,
    omega: f64,
    n: usize,
    k: usize,
    r: usize,
    delta: f64,
    reveal_prob: f64,
) -> Result<f64> {
    check_positive(&[("L", budget), ("tau", tau), ("omega", omega), ("delta", delta), ("reveal_prob", reveal_prob)])?;
    if reveal_prob > 1.0 {
        return Err(Error::InvalidArgument("reveal_prob must be at most 1".into()));
    }
    if n == 0 || k == 0 || r == 0 {
        return Err(Error::InvalidArgument("n, K and r must be positive".into()));
    }
    let kf = k as f64;
    let per_set = 60.0 * kf.powf(2.0 * budget) / (tau * tau * delta.powf(2.0 * budget))
        * log_terms(budget, 2.0, omega, n, k, r);
    let m = per_set * (budget * (n as f64).ln() + budget.ln() + (2.0 * per_set / omega).ln())
        / (reveal_prob * reveal_prob);
    Ok(m.ceil())
}
