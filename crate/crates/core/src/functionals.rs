//! Evaluators for the variational objectives the AO solvers optimize.
//!
//! Each function computes its objective from scratch, directly from the
//! defining sums. The solvers themselves assemble per-iteration objective
//! values from their update normalizers instead; these standalone forms
//! exist so that traces, fixed points, and update formulas can be checked
//! against an expression that does not share that code path.
//!
//! Reverse channels `r` are indexed by output: `r.get(y, x)` is r(x|y).
//! Surrogate channels `q̃` are indexed like the forward channel.
//!
//! Sign conventions near the support boundary follow the divergences: a
//! maximization-form objective degrades to −∞, a minimization form to +∞,
//! never NaN.

use crate::measures::entropy_of;
use crate::prob::{AlphaParam, Channel, Distribution, JointDistribution};

/// Σ w log(a/b) with 0·log 0 = 0; +∞ when some w > 0 has b = 0.
fn weighted_log_ratio(terms: impl Iterator<Item = (f64, f64, f64)>) -> f64 {
    let mut acc = 0.0;
    for (w, a, b) in terms {
        if w == 0.0 {
            continue;
        }
        if b == 0.0 {
            return f64::INFINITY;
        }
        acc += w * (a / b).ln();
    }
    acc
}

/// Objective of Algorithm S1 as a function of the input distribution and a
/// reverse channel:
/// (α/(α−1)) log Σ_{x,y} p(x)^{1/α} W(y|x) r(x|y)^{1−1/α}.
pub fn objective_s1(alpha: AlphaParam, input: &Distribution, channel: &Channel, reverse: &Channel) -> f64 {
    let a = alpha.value();
    let exp_r = alpha.one_minus_inv_alpha();
    let mut acc = 0.0;
    for x in 0..channel.x_size() {
        let px = input.get(x);
        if px == 0.0 {
            continue;
        }
        for y in 0..channel.y_size() {
            let w = channel.get(x, y);
            if w == 0.0 {
                continue;
            }
            let r = reverse.get(y, x);
            if r == 0.0 {
                // below order one the exponent on r is negative: the sum
                // blows up and the negative leading coefficient sends this
                // maximization objective to -infinity
                if exp_r < 0.0 {
                    return f64::NEG_INFINITY;
                }
                continue;
            }
            acc += px.powf(1.0 / a) * w * r.powf(exp_r);
        }
    }
    alpha.alpha_over_alpha_minus_one() * acc.ln()
}

/// Variant of [`objective_s1`] that first replaces each column r(·|y) with
/// its order-α escort. Shares the optimum value with S1; no AO driver runs
/// on it, it exists for parity checks.
pub fn objective_s2(alpha: AlphaParam, input: &Distribution, channel: &Channel, reverse: &Channel) -> f64 {
    let a = alpha.value();
    let x_size = reverse.y_size();
    let mut rows = Vec::with_capacity(reverse.x_size());
    for y in 0..reverse.x_size() {
        let mut log_w: Vec<f64> = (0..x_size)
            .map(|x| {
                let r = reverse.get(y, x);
                if r == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    a * r.ln()
                }
            })
            .collect();
        crate::logdomain::normalize_from_log(&mut log_w);
        rows.push(log_w);
    }
    let escort = Channel::new(rows).expect("escort rows stay stochastic");
    objective_s1(alpha, input, channel, &escort)
}

/// Objective of Algorithm JO over (input, surrogate joint, reverse):
/// (α/(1−α)) D(q̃ ‖ q̃_X W) + E_q̃[log r/q̃_X] + (1/(1−α)) D(q̃_X ‖ p).
pub fn objective_jo(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    joint: &JointDistribution,
    reverse: &Channel,
) -> f64 {
    let qx_dist = joint.marginal_x();
    let qx = &qx_dist;
    let coupling = weighted_log_ratio((0..joint.x_size()).flat_map(|x| {
        (0..joint.y_size()).map(move |y| {
            let q = joint.get(x, y);
            (q, q, qx.get(x) * channel.get(x, y))
        })
    }));
    let reward = {
        let mut acc = 0.0;
        for x in 0..joint.x_size() {
            for y in 0..joint.y_size() {
                let q = joint.get(x, y);
                if q == 0.0 {
                    continue;
                }
                let r = reverse.get(y, x);
                if r == 0.0 {
                    // the reward term carries weight on log r = -infinity
                    return f64::NEG_INFINITY;
                }
                acc += q * (r / qx.get(x)).ln();
            }
        }
        acc
    };
    let anchor = weighted_log_ratio((0..input.len()).map(|x| (qx.get(x), qx.get(x), input.get(x))));
    let inv = 1.0 / (1.0 - alpha.value());
    alpha.alpha_over_one_minus_alpha() * coupling + reward + inv * anchor
}

/// Minimization-form objective for the Augustin–Csiszár information:
/// (α/(1−α)) Σ_x p(x) D(q̃(·|x) ‖ W(·|x)) + Σ_x p(x) D(q̃(·|x) ‖ q_Y).
pub fn objective_ac_min(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    surrogate: &Channel,
    output: &Distribution,
) -> f64 {
    let fit = weighted_log_ratio((0..channel.x_size()).flat_map(|x| {
        (0..channel.y_size()).map(move |y| {
            let q = surrogate.get(x, y);
            (input.get(x) * q, q, channel.get(x, y))
        })
    }));
    let code = weighted_log_ratio((0..channel.x_size()).flat_map(|x| {
        (0..channel.y_size()).map(move |y| {
            let q = surrogate.get(x, y);
            (input.get(x) * q, q, output.get(y))
        })
    }));
    alpha.alpha_over_one_minus_alpha() * fit + code
}

/// Maximization-form objective for the Augustin–Csiszár information:
/// (α/(1−α)) Σ_x p(x) D(q̃(·|x) ‖ W(·|x)) + Σ_{x,y} p(x) q̃(y|x) log(r(x|y)/p(x)).
///
/// The same expression with the input treated as a free block is what
/// Algorithm C maximizes for capacity.
pub fn objective_ac_max(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    surrogate: &Channel,
    reverse: &Channel,
) -> f64 {
    let fit = weighted_log_ratio((0..channel.x_size()).flat_map(|x| {
        (0..channel.y_size()).map(move |y| {
            let q = surrogate.get(x, y);
            (input.get(x) * q, q, channel.get(x, y))
        })
    }));
    let mut reward = 0.0;
    for x in 0..channel.x_size() {
        let px = input.get(x);
        if px == 0.0 {
            continue;
        }
        for y in 0..channel.y_size() {
            let q = surrogate.get(x, y);
            if q == 0.0 {
                continue;
            }
            let r = reverse.get(y, x);
            if r == 0.0 {
                return f64::NEG_INFINITY;
            }
            reward += px * q * (r / px).ln();
        }
    }
    alpha.alpha_over_one_minus_alpha() * fit + reward
}

/// The product-form objective D_α(p W ‖ q_X q_Y) minimized by the
/// definition-driven Lapidoth–Pfister solver.
pub fn objective_lp_product(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    q_x: &Distribution,
    q_y: &Distribution,
) -> f64 {
    let a = alpha.value();
    let log_sum = crate::logdomain::log_sum_exp_by(channel.x_size() * channel.y_size(), |i| {
        let (x, y) = (i / channel.y_size(), i % channel.y_size());
        let j = input.get(x) * channel.get(x, y);
        if j == 0.0 {
            return f64::NEG_INFINITY;
        }
        let b = q_x.get(x) * q_y.get(y);
        if b == 0.0 {
            // the term is j^α·b^(1−α): zero below order one, infinite above
            return if a > 1.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        a * j.ln() + (1.0 - a) * b.ln()
    });
    log_sum / (a - 1.0)
}

/// Minimization-form objective for the Lapidoth–Pfister information:
/// (α/(1−α)) D(q̃ ‖ q̃_X W) + D(q̃ ‖ q̃_X q_Y) + (α/(1−α)) D(q̃_X ‖ p).
pub fn objective_lp_min(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    joint: &JointDistribution,
    output: &Distribution,
) -> f64 {
    let qx_dist = joint.marginal_x();
    let qx = &qx_dist;
    let coupling = weighted_log_ratio((0..joint.x_size()).flat_map(|x| {
        (0..joint.y_size()).map(move |y| {
            let q = joint.get(x, y);
            (q, q, qx.get(x) * channel.get(x, y))
        })
    }));
    let code = weighted_log_ratio((0..joint.x_size()).flat_map(|x| {
        (0..joint.y_size()).map(move |y| {
            let q = joint.get(x, y);
            (q, q, qx.get(x) * output.get(y))
        })
    }));
    let anchor = weighted_log_ratio((0..input.len()).map(|x| (qx.get(x), qx.get(x), input.get(x))));
    alpha.alpha_over_one_minus_alpha() * (coupling + anchor) + code
}

/// Maximization-form objective for the Lapidoth–Pfister information:
/// (α/(1−α)) D(q̃ ‖ q̃_X W) + E_q̃[log r/q̃_X] + (α/(1−α)) D(q̃_X ‖ p).
///
/// With the input as a free block this is what Algorithm LP maximizes for
/// capacity.
pub fn objective_lp_max(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    joint: &JointDistribution,
    reverse: &Channel,
) -> f64 {
    let qx_dist = joint.marginal_x();
    let qx = &qx_dist;
    let coupling = weighted_log_ratio((0..joint.x_size()).flat_map(|x| {
        (0..joint.y_size()).map(move |y| {
            let q = joint.get(x, y);
            (q, q, qx.get(x) * channel.get(x, y))
        })
    }));
    let mut reward = 0.0;
    for x in 0..joint.x_size() {
        for y in 0..joint.y_size() {
            let q = joint.get(x, y);
            if q == 0.0 {
                continue;
            }
            let r = reverse.get(y, x);
            if r == 0.0 {
                return f64::NEG_INFINITY;
            }
            reward += q * (r / qx.get(x)).ln();
        }
    }
    let anchor = weighted_log_ratio((0..input.len()).map(|x| (qx.get(x), qx.get(x), input.get(x))));
    let scale = alpha.alpha_over_one_minus_alpha();
    if coupling.is_infinite() || anchor.is_infinite() {
        // scale < 0 for α > 1: an infinite divergence sinks the objective
        return scale.signum() * f64::INFINITY;
    }
    scale * (coupling + anchor) + reward
}

/// Shannon entropy of the input, the additive constant linking the
/// Augustin–Csiszár maximization form to its capacity functional.
pub fn input_entropy(input: &Distribution) -> f64 {
    entropy_of(input.probs())
}
