//! Entropies, divergences, the Gallager exponent function, and Shannon
//! mutual information.
//!
//! Conventions, applied everywhere: 0·log 0 = 0 and 0^t = 0 for t > 0. A
//! zero-base term with a negative exponent is dropped only when its
//! multiplying weight is exactly zero; otherwise the sum is infinite and
//! so is the result. Infinities are answers here, not errors.

use crate::error::{Error, Result};
use crate::logdomain::log_sum_exp_by;
use crate::prob::{AlphaParam, Channel, Distribution, JointDistribution};

/// Flat access to a probability array, so divergences accept both plain
/// vectors and joint matrices.
pub trait ProbabilityMass {
    fn masses(&self) -> &[f64];
}

impl ProbabilityMass for Distribution {
    fn masses(&self) -> &[f64] {
        self.probs()
    }
}

impl ProbabilityMass for JointDistribution {
    fn masses(&self) -> &[f64] {
        self.entries()
    }
}

/// Shannon entropy −Σ p log p in nats.
pub fn shannon_entropy(p: &Distribution) -> f64 {
    entropy_of(p.probs())
}

pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>()
}

/// Kullback–Leibler divergence Σ p log(p/q) in nats.
///
/// Returns +∞ when `p` puts mass outside the support of `q`.
pub fn kl_divergence<P: ProbabilityMass, Q: ProbabilityMass>(p: &P, q: &Q) -> Result<f64> {
    let (p, q) = (p.masses(), q.masses());
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let mut acc = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            if qi == 0.0 {
                return Ok(f64::INFINITY);
            }
            acc += pi * (pi / qi).ln();
        }
    }
    Ok(acc)
}

/// Rényi divergence of order α:
/// D_α(p‖q) = (1/(α−1)) log Σ p^α q^{1−α}, in nats.
///
/// For α > 1 a support violation gives +∞. For α < 1 the sum simply drops
/// mass off the common support, and mutually singular arguments give +∞.
pub fn renyi_divergence<P: ProbabilityMass, Q: ProbabilityMass>(
    alpha: AlphaParam,
    p: &P,
    q: &Q,
) -> Result<f64> {
    let (p, q) = (p.masses(), q.masses());
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let a = alpha.value();
    if a > 1.0 {
        for (&pi, &qi) in p.iter().zip(q) {
            if pi > 0.0 && qi == 0.0 {
                return Ok(f64::INFINITY);
            }
        }
    }
    let log_sum = log_sum_exp_by(p.len(), |i| {
        if p[i] == 0.0 {
            f64::NEG_INFINITY
        } else {
            a * p[i].ln() + (1.0 - a) * q[i].ln()
        }
    });
    Ok(log_sum / (a - 1.0))
}

/// Rényi entropy H_α(p) = (1/(1−α)) log Σ p^α in nats.
pub fn renyi_entropy(alpha: AlphaParam, p: &Distribution) -> f64 {
    let a = alpha.value();
    let log_sum = log_sum_exp_by(p.len(), |i| {
        let v = p.get(i);
        if v == 0.0 {
            f64::NEG_INFINITY
        } else {
            a * v.ln()
        }
    });
    log_sum / (1.0 - a)
}

/// Arimoto conditional entropy of order α:
/// H_α(X|Y) = (α/(1−α)) log Σ_y (Σ_x p(x)^α p(y|x)^α)^{1/α}, in nats.
pub fn arimoto_conditional_entropy(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
) -> Result<f64> {
    if input.len() != channel.x_size() {
        return Err(Error::LengthMismatch(input.len(), channel.x_size()));
    }
    let a = alpha.value();
    let log_outer = log_sum_exp_by(channel.y_size(), |y| {
        let log_inner = log_sum_exp_by(channel.x_size(), |x| {
            let w = input.get(x) * channel.get(x, y);
            if w == 0.0 {
                f64::NEG_INFINITY
            } else {
                a * w.ln()
            }
        });
        log_inner / a
    });
    Ok(alpha.alpha_over_one_minus_alpha() * log_outer)
}

/// The α-tilted (escort) distribution p^α / Σ p^α.
///
/// Zeros stay zero, so the support never grows.
pub fn tilted_distribution(alpha: AlphaParam, p: &Distribution) -> Distribution {
    let a = alpha.value();
    let mut log_w: Vec<f64> = p
        .probs()
        .iter()
        .map(|&v| if v == 0.0 { f64::NEG_INFINITY } else { a * v.ln() })
        .collect();
    crate::logdomain::normalize_from_log(&mut log_w);
    Distribution::from_weights(log_w).expect("tilting a valid distribution stays valid")
}

/// Gallager exponent function
/// E₀(ρ, p) = −log Σ_y (Σ_x p(x) p(y|x)^{1/(1+ρ)})^{1+ρ}, in nats.
pub fn gallager_e0(rho: f64, input: &Distribution, channel: &Channel) -> Result<f64> {
    if !rho.is_finite() || rho <= -1.0 {
        return Err(Error::RhoOutOfRange(rho));
    }
    if input.len() != channel.x_size() {
        return Err(Error::LengthMismatch(input.len(), channel.x_size()));
    }
    let inv = 1.0 / (1.0 + rho);
    let log_sum = log_sum_exp_by(channel.y_size(), |y| {
        let log_inner = log_sum_exp_by(channel.x_size(), |x| {
            let px = input.get(x);
            let w = channel.get(x, y);
            if px == 0.0 || w == 0.0 {
                f64::NEG_INFINITY
            } else {
                px.ln() + inv * w.ln()
            }
        });
        (1.0 + rho) * log_inner
    });
    Ok(-log_sum)
}

/// Shannon mutual information I(X;Y) of an input and a channel, in nats.
pub fn shannon_mi(input: &Distribution, channel: &Channel) -> Result<f64> {
    if input.len() != channel.x_size() {
        return Err(Error::LengthMismatch(input.len(), channel.x_size()));
    }
    let mut marginal = vec![0.0; channel.y_size()];
    for x in 0..channel.x_size() {
        let px = input.get(x);
        for (y, m) in marginal.iter_mut().enumerate() {
            *m += px * channel.get(x, y);
        }
    }
    let mut acc = 0.0;
    for x in 0..channel.x_size() {
        let px = input.get(x);
        if px == 0.0 {
            continue;
        }
        for (y, &m) in marginal.iter().enumerate() {
            let w = channel.get(x, y);
            if w > 0.0 {
                acc += px * w * (w / m).ln();
            }
        }
    }
    Ok(acc.max(0.0))
}
