//! Closed-form block updates for the alternating-optimization solvers.
//!
//! Each function performs one exact coordinate optimization of its solver's
//! objective with the other blocks held fixed. The solvers cycle these;
//! tests certify them against finite-difference stationarity checks.
//!
//! Updates are computed in the log domain and exponentiated, so powers of
//! small probabilities neither underflow nor lose accuracy, and exact
//! zeros stay zero (a zero numerator never resurrects).
//!
//! Alongside the fresh block, several steps return the log-normalizers of
//! the update, because the objective value at the fresh block reduces to a
//! closed function of those normalizers; the solvers assemble their traces
//! from them instead of re-evaluating the full objective every cycle.
//!
//! Reverse channels are indexed by output: `reverse.get(y, x)` is r(x|y).

use crate::logdomain::{log_sum_exp, log_sum_exp_by, normalize_from_log};
use crate::prob::{AlphaParam, Channel, Distribution, JointDistribution};

fn ln_or_neg_inf(v: f64) -> f64 {
    if v == 0.0 {
        f64::NEG_INFINITY
    } else {
        v.ln()
    }
}

/// Exponentiates and normalizes each row of log weights. A row whose mass
/// is entirely zero carries no weight anywhere downstream; it is replaced
/// by a uniform placeholder row so the result is still a valid channel.
fn rows_from_log(mut log_rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    for row in log_rows.iter_mut() {
        let log_z = normalize_from_log(row);
        if log_z == f64::NEG_INFINITY {
            let u = 1.0 / row.len() as f64;
            for v in row.iter_mut() {
                *v = u;
            }
        }
    }
    log_rows
}

/// Reverse-channel step of Algorithm S1: r(x|y) ∝ p(x) W(y|x)^α per output.
pub fn s1_reverse_step(alpha: AlphaParam, input: &Distribution, channel: &Channel) -> Channel {
    let a = alpha.value();
    let log_rows: Vec<Vec<f64>> = (0..channel.y_size())
        .map(|y| {
            (0..channel.x_size())
                .map(|x| ln_or_neg_inf(input.get(x)) + a * ln_or_neg_inf(channel.get(x, y)))
                .collect()
        })
        .collect();
    Channel::new(rows_from_log(log_rows)).expect("normalized rows are stochastic")
}

/// Input step of Algorithm S1: p(x) ∝ c_x^{α/(α−1)} with
/// c_x = Σ_y W(y|x) r(x|y)^{1−1/α}.
///
/// Also returns the objective value at the fresh input, which equals the
/// log of the step's normalizer.
pub fn s1_input_step(alpha: AlphaParam, channel: &Channel, reverse: &Channel) -> (Distribution, f64) {
    let exp_r = alpha.one_minus_inv_alpha();
    let scale = alpha.alpha_over_alpha_minus_one();
    let mut log_weights: Vec<f64> = (0..channel.x_size())
        .map(|x| {
            let log_c = log_sum_exp_by(channel.y_size(), |y| {
                let w = channel.get(x, y);
                if w == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    w.ln() + exp_r * ln_or_neg_inf(reverse.get(y, x))
                }
            });
            scale * log_c
        })
        .collect();
    let objective = log_sum_exp(&log_weights);
    let log_z = normalize_from_log(&mut log_weights);
    let input = if log_z == f64::NEG_INFINITY {
        Distribution::uniform(channel.x_size())
    } else {
        Distribution::from_weights(log_weights).expect("normalized weights")
    };
    (input, objective)
}

/// Posterior step shared by the maximization-form solvers:
/// r(x|y) ∝ p(x) q̃(y|x), normalized over inputs per output.
pub fn posterior_step(input: &Distribution, surrogate: &Channel) -> Channel {
    let log_rows: Vec<Vec<f64>> = (0..surrogate.y_size())
        .map(|y| {
            (0..surrogate.x_size())
                .map(|x| ln_or_neg_inf(input.get(x)) + ln_or_neg_inf(surrogate.get(x, y)))
                .collect()
        })
        .collect();
    Channel::new(rows_from_log(log_rows)).expect("normalized rows are stochastic")
}

/// Output step of the below-one Augustin–Csiszár iteration: the exact
/// minimizer over q_Y is the output marginal of p·q̃.
pub fn ac_output_step(input: &Distribution, surrogate: &Channel) -> Distribution {
    let mut probs = vec![0.0; surrogate.y_size()];
    for x in 0..surrogate.x_size() {
        let px = input.get(x);
        for (y, p) in probs.iter_mut().enumerate() {
            *p += px * surrogate.get(x, y);
        }
    }
    Distribution::from_weights(probs).expect("marginal of a joint is a distribution")
}

/// Surrogate step of the below-one Augustin–Csiszár iteration:
/// q̃(y|x) ∝ W(y|x)^α q_Y(y)^{1−α} per input.
///
/// Also returns ln t_x, the per-row log-normalizers; the objective at the
/// fresh surrogate is (1/(α−1)) Σ_x p(x) ln t_x.
pub fn ac_surrogate_step_below_one(
    alpha: AlphaParam,
    channel: &Channel,
    output: &Distribution,
) -> (Channel, Vec<f64>) {
    let a = alpha.value();
    let mut log_norms = Vec::with_capacity(channel.x_size());
    let log_rows: Vec<Vec<f64>> = (0..channel.x_size())
        .map(|x| {
            let row: Vec<f64> = (0..channel.y_size())
                .map(|y| {
                    let w = channel.get(x, y);
                    if w == 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        a * w.ln() + (1.0 - a) * ln_or_neg_inf(output.get(y))
                    }
                })
                .collect();
            log_norms.push(log_sum_exp(&row));
            row
        })
        .collect();
    let ch = Channel::new(rows_from_log(log_rows)).expect("normalized rows are stochastic");
    (ch, log_norms)
}

/// Surrogate step of the above-one Augustin–Csiszár iteration:
/// q̃(y|x) ∝ W(y|x) r(x|y)^{1−1/α} per input.
///
/// Also returns ln s_x, the per-row log-normalizers; the objective at the
/// fresh surrogate is H(p) + (α/(α−1)) Σ_x p(x) ln s_x.
pub fn ac_surrogate_step_above_one(
    alpha: AlphaParam,
    channel: &Channel,
    reverse: &Channel,
) -> (Channel, Vec<f64>) {
    let exp_r = alpha.one_minus_inv_alpha();
    let mut log_norms = Vec::with_capacity(channel.x_size());
    let log_rows: Vec<Vec<f64>> = (0..channel.x_size())
        .map(|x| {
            let row: Vec<f64> = (0..channel.y_size())
                .map(|y| {
                    let w = channel.get(x, y);
                    if w == 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        w.ln() + exp_r * ln_or_neg_inf(reverse.get(y, x))
                    }
                })
                .collect();
            log_norms.push(log_sum_exp(&row));
            row
        })
        .collect();
    let ch = Channel::new(rows_from_log(log_rows)).expect("normalized rows are stochastic");
    (ch, log_norms)
}

/// Input step of Algorithm C, the exact maximizer of its objective over
/// the input block for fixed surrogate and reverse channels:
/// p(x) ∝ exp(a_x), a_x = Σ_y q̃(y|x) log r(x|y) + (α/(1−α)) Σ_y q̃(y|x) log(q̃(y|x)/W(y|x)).
///
/// Also returns the objective at the fresh input, the log of the Gibbs
/// normalizer log Σ_x exp(a_x).
pub fn c_input_step(
    alpha: AlphaParam,
    channel: &Channel,
    surrogate: &Channel,
    reverse: &Channel,
) -> (Distribution, f64) {
    let scale = alpha.alpha_over_one_minus_alpha();
    let mut gibbs: Vec<f64> = (0..channel.x_size())
        .map(|x| {
            let mut reward = 0.0;
            let mut fit = 0.0;
            for y in 0..channel.y_size() {
                let q = surrogate.get(x, y);
                if q == 0.0 {
                    continue;
                }
                reward += q * ln_or_neg_inf(reverse.get(y, x));
                fit += q * (q / channel.get(x, y)).ln();
            }
            reward + scale * fit
        })
        .collect();
    let objective = log_sum_exp(&gibbs);
    let log_z = normalize_from_log(&mut gibbs);
    let input = if log_z == f64::NEG_INFINITY {
        Distribution::uniform(channel.x_size())
    } else {
        Distribution::from_weights(gibbs).expect("normalized weights")
    };
    (input, objective)
}

/// Joint step of Algorithm JO: q̃(x,y) ∝ p(x)^{1/α} W(y|x) r(x|y)^{1−1/α},
/// normalized over the whole product alphabet.
///
/// Also returns the objective at the fresh joint,
/// (α/(α−1)) log Σ_{x,y} p(x)^{1/α} W(y|x) r(x|y)^{1−1/α}.
pub fn jo_joint_step(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    reverse: &Channel,
) -> (JointDistribution, f64) {
    let a = alpha.value();
    let exp_r = alpha.one_minus_inv_alpha();
    let (nx, ny) = (channel.x_size(), channel.y_size());
    let mut log_w = vec![f64::NEG_INFINITY; nx * ny];
    for x in 0..nx {
        let lp = ln_or_neg_inf(input.get(x)) / a;
        for y in 0..ny {
            let w = channel.get(x, y);
            if w > 0.0 {
                log_w[x * ny + y] = lp + w.ln() + exp_r * ln_or_neg_inf(reverse.get(y, x));
            }
        }
    }
    let log_z = normalize_from_log(&mut log_w);
    let objective = alpha.alpha_over_alpha_minus_one() * log_z;
    let joint = if log_z == f64::NEG_INFINITY {
        JointDistribution::uniform(nx, ny)
    } else {
        JointDistribution::from_flat(nx, ny, log_w).expect("normalized weights")
    };
    (joint, objective)
}

/// Input-marginal step shared by Algorithms JO and LP: the exact maximizer
/// over the input block is the x-marginal of the surrogate joint.
pub fn marginal_input_step(joint: &JointDistribution) -> Distribution {
    joint.marginal_x()
}

/// q_X step of the definition-driven Lapidoth–Pfister iteration:
/// q_X(x) ∝ [Σ_y p_{XY}(x,y)^α q_Y(y)^{1−α}]^{1/α}.
pub fn lp_input_step(alpha: AlphaParam, joint: &JointDistribution, q_y: &Distribution) -> Distribution {
    let a = alpha.value();
    let mut log_w: Vec<f64> = (0..joint.x_size())
        .map(|x| {
            log_sum_exp_by(joint.y_size(), |y| {
                let j = joint.get(x, y);
                if j == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    a * j.ln() + (1.0 - a) * ln_or_neg_inf(q_y.get(y))
                }
            }) / a
        })
        .collect();
    let log_z = normalize_from_log(&mut log_w);
    if log_z == f64::NEG_INFINITY {
        Distribution::uniform(joint.x_size())
    } else {
        Distribution::from_weights(log_w).expect("normalized weights")
    }
}

/// q_Y step of the definition-driven Lapidoth–Pfister iteration:
/// q_Y(y) ∝ [Σ_x p_{XY}(x,y)^α q_X(x)^{1−α}]^{1/α}.
///
/// Also returns the objective at the fresh pair,
/// D_α(p_{XY} ‖ q_X q_Y) = (α/(α−1)) · log-normalizer.
pub fn lp_output_step(
    alpha: AlphaParam,
    joint: &JointDistribution,
    q_x: &Distribution,
) -> (Distribution, f64) {
    let a = alpha.value();
    let mut log_w: Vec<f64> = (0..joint.y_size())
        .map(|y| {
            log_sum_exp_by(joint.x_size(), |x| {
                let j = joint.get(x, y);
                if j == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    a * j.ln() + (1.0 - a) * ln_or_neg_inf(q_x.get(x))
                }
            }) / a
        })
        .collect();
    let objective = alpha.alpha_over_alpha_minus_one() * log_sum_exp(&log_w);
    let log_z = normalize_from_log(&mut log_w);
    let output = if log_z == f64::NEG_INFINITY {
        Distribution::uniform(joint.y_size())
    } else {
        Distribution::from_weights(log_w).expect("normalized weights")
    };
    (output, objective)
}

/// Joint step of the below-one variational Lapidoth–Pfister iteration:
/// q̃(x,y) = q̄_X(x)·q̄(y|x) with q̄(y|x) ∝ W(y|x)^α q_Y(y)^{1−α} and
/// q̄_X(x) ∝ p(x)·t_x^{1/α}, t_x the row normalizer.
///
/// Also returns the objective at the fresh joint,
/// (α/(α−1)) log Σ_x p(x)·t_x^{1/α}.
pub fn lp_joint_step_below_one(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    output: &Distribution,
) -> (JointDistribution, f64) {
    let a = alpha.value();
    let (rows, log_t) = {
        let (ch, norms) = ac_surrogate_step_below_one(alpha, channel, output);
        (ch, norms)
    };
    let mut log_w: Vec<f64> = (0..channel.x_size())
        .map(|x| ln_or_neg_inf(input.get(x)) + log_t[x] / a)
        .collect();
    let log_z = log_sum_exp(&log_w);
    let objective = alpha.alpha_over_alpha_minus_one() * log_z;
    normalize_from_log(&mut log_w);
    let joint = assemble_joint(&log_w, &rows, log_z);
    (joint, objective)
}

/// Joint step of the above-one variational Lapidoth–Pfister iteration and
/// of Algorithm LP: q̃(x,y) = q̂_X(x)·q̂(y|x) with
/// q̂(y|x) ∝ W(y|x) r(x|y)^{1−1/α} and q̂_X(x) ∝ [p(x)·s_x]^{α/(2α−1)},
/// s_x the row normalizer.
///
/// Also returns the objective at the fresh joint,
/// ((2α−1)/(α−1)) log Σ_x [p(x)·s_x]^{α/(2α−1)}.
pub fn lp_joint_step_above_one(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    reverse: &Channel,
) -> (JointDistribution, f64) {
    let a = alpha.value();
    let gamma = a / (2.0 * a - 1.0);
    let (rows, log_s) = ac_surrogate_step_above_one(alpha, channel, reverse);
    let mut log_w: Vec<f64> = (0..channel.x_size())
        .map(|x| gamma * (ln_or_neg_inf(input.get(x)) + log_s[x]))
        .collect();
    let log_z = log_sum_exp(&log_w);
    let objective = ((2.0 * a - 1.0) / (a - 1.0)) * log_z;
    normalize_from_log(&mut log_w);
    let joint = assemble_joint(&log_w, &rows, log_z);
    (joint, objective)
}

fn assemble_joint(q_x: &[f64], rows: &Channel, log_z: f64) -> JointDistribution {
    let (nx, ny) = (rows.x_size(), rows.y_size());
    if log_z == f64::NEG_INFINITY {
        return JointDistribution::uniform(nx, ny);
    }
    let mut entries = Vec::with_capacity(nx * ny);
    for (x, &mass) in q_x.iter().enumerate() {
        for y in 0..ny {
            entries.push(mass * rows.get(x, y));
        }
    }
    let total: f64 = entries.iter().sum();
    for e in entries.iter_mut() {
        *e /= total;
    }
    JointDistribution::from_flat(nx, ny, entries).expect("normalized product")
}
