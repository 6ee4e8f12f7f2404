//! Log-domain accumulation.
//!
//! Sums of the form Σ w·p^a are evaluated as log-sum-exp over
//! `ln w + a·ln p` so that orders like 5 applied to probabilities near
//! zero neither underflow nor lose the leading digits the solvers need.

/// ln(Σ exp(t)) over the given log-domain terms.
///
/// Terms equal to -∞ (zero mass) are skipped; if every term is -∞ the sum
/// is empty and -∞ is returned. A +∞ term dominates and yields +∞, which is
/// how support violations propagate.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let mut hi = f64::NEG_INFINITY;
    for &t in terms {
        if t > hi {
            hi = t;
        }
    }
    if hi.is_infinite() {
        return hi;
    }
    let mut acc = 0.0;
    for &t in terms {
        if t != f64::NEG_INFINITY {
            acc += (t - hi).exp();
        }
    }
    hi + acc.ln()
}

/// ln(Σ exp(f(i))) for i in 0..n without allocating.
pub fn log_sum_exp_by(n: usize, f: impl Fn(usize) -> f64) -> f64 {
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let t = f(i);
        if t > hi {
            hi = t;
        }
    }
    if hi.is_infinite() {
        return hi;
    }
    let mut acc = 0.0;
    for i in 0..n {
        let t = f(i);
        if t != f64::NEG_INFINITY {
            acc += (t - hi).exp();
        }
    }
    hi + acc.ln()
}

/// Exponentiates log-domain weights in place and normalizes them to sum
/// to one. Returns the log of the normalizer.
///
/// If every weight is -∞ there is nothing to normalize; the slice is left
/// untouched as all zeros and -∞ is returned so the caller can decide on a
/// fallback.
pub fn normalize_from_log(log_weights: &mut [f64]) -> f64 {
    let log_z = log_sum_exp(log_weights);
    if log_z == f64::NEG_INFINITY {
        for w in log_weights.iter_mut() {
            *w = 0.0;
        }
        return log_z;
    }
    for w in log_weights.iter_mut() {
        *w = (*w - log_z).exp();
    }
    log_z
}
