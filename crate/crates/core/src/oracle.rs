//! Brute-force references, deliberately independent of the solvers.
//!
//! The grid searches walk a barycentric lattice over the probability
//! simplex, then recenter and shrink around the incumbent a configurable
//! number of times. The objective evaluators in this module recompute the
//! defining sums in the direct domain with plain powers — no code shared
//! with either the solver updates or the functional evaluators — so an
//! agreement between a solver and its oracle is evidence, not an echo.

use crate::error::{Error, Result};
use crate::prob::{AlphaParam, Channel, Distribution};

/// Largest alphabet the single-simplex grid search accepts.
pub const GRID_DIMENSION_LIMIT: usize = 4;

/// Largest alphabet per axis the nested product-grid search accepts.
pub const JOINT_DIMENSION_LIMIT: usize = 3;

/// Tolerance on finite-difference directional derivatives in
/// [`verify_stationarity`].
pub const STATIONARITY_SLACK: f64 = 1e-7;

/// Lattice resolution and refinement schedule for the grid searches.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    /// Lattice points per simplex edge.
    pub resolution: usize,
    /// Total passes, each recentered on the incumbent.
    pub refinement_levels: usize,
    /// Scale applied to the lattice around the incumbent at each
    /// refinement, in (0, 1).
    pub shrink_factor: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            resolution: 60,
            refinement_levels: 3,
            shrink_factor: 0.15,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 10 {
            return Err(Error::InvalidConfig(format!(
                "grid resolution must be at least 10, got {}",
                self.resolution
            )));
        }
        if self.refinement_levels < 1 {
            return Err(Error::InvalidConfig("refinement_levels must be at least 1".into()));
        }
        if self.shrink_factor.is_nan() || self.shrink_factor <= 0.0 || self.shrink_factor >= 1.0 {
            return Err(Error::InvalidConfig(format!(
                "shrink_factor must lie in (0,1), got {}",
                self.shrink_factor
            )));
        }
        Ok(())
    }
}

/// Enumerates the barycentric lattice {k/resolution} on the (n−1)-simplex
/// in a fixed deterministic order.
fn for_each_lattice_point(n: usize, resolution: usize, mut visit: impl FnMut(&[f64])) {
    let mut counts = vec![0usize; n];
    let mut point = vec![0.0; n];
    fn recurse(
        slot: usize,
        remaining: usize,
        resolution: usize,
        counts: &mut [usize],
        point: &mut [f64],
        visit: &mut impl FnMut(&[f64]),
    ) {
        if slot == counts.len() - 1 {
            counts[slot] = remaining;
            for (p, &c) in point.iter_mut().zip(counts.iter()) {
                *p = c as f64 / resolution as f64;
            }
            visit(point);
            return;
        }
        for take in 0..=remaining {
            counts[slot] = take;
            recurse(slot + 1, remaining - take, resolution, counts, point, visit);
        }
    }
    recurse(0, resolution, resolution, &mut counts, &mut point, &mut visit);
}

/// Minimizes a function over the probability simplex on `n` points by
/// refined lattice search. Returns the best point and its value.
///
/// Deterministic given the grid parameters. Alphabets larger than
/// [`GRID_DIMENSION_LIMIT`] are rejected.
pub fn grid_min_over_simplex(
    objective: impl Fn(&[f64]) -> f64,
    n: usize,
    spec: &GridSpec,
) -> Result<(Distribution, f64)> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if n > GRID_DIMENSION_LIMIT {
        return Err(Error::DimensionTooLarge {
            size: n,
            limit: GRID_DIMENSION_LIMIT,
        });
    }
    spec.validate()?;
    let mut best_point = vec![1.0 / n as f64; n];
    let mut best_value = objective(&best_point);
    let mut scale = 1.0;
    let mut mapped = vec![0.0; n];
    for level in 0..spec.refinement_levels {
        let center = best_point.clone();
        for_each_lattice_point(n, spec.resolution, |g| {
            for i in 0..n {
                mapped[i] = center[i] + scale * (g[i] - center[i]);
            }
            let v = objective(&mapped);
            if v < best_value {
                best_value = v;
                best_point.copy_from_slice(&mapped);
            }
        });
        if level + 1 < spec.refinement_levels {
            scale *= spec.shrink_factor;
        }
    }
    Ok((Distribution::new(best_point)?, best_value))
}

/// Direct-domain evaluation of the Sibson objective
/// D_α(pW ‖ p·q_Y) as a function of the output distribution.
pub fn sibson_objective_direct(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    q_y: &[f64],
) -> f64 {
    let a = alpha.value();
    let mut sum = 0.0;
    for x in 0..channel.x_size() {
        let px = input.get(x);
        if px == 0.0 {
            continue;
        }
        for (y, &qy) in q_y.iter().enumerate() {
            let joint = px * channel.get(x, y);
            if joint == 0.0 {
                continue;
            }
            let base = px * qy;
            if base == 0.0 {
                if a > 1.0 {
                    return f64::INFINITY;
                }
                continue;
            }
            sum += joint.powf(a) * base.powf(1.0 - a);
        }
    }
    if sum == 0.0 {
        return f64::INFINITY;
    }
    sum.ln() / (a - 1.0)
}

/// Direct-domain evaluation of the Augustin–Csiszár objective
/// Σ_x p(x) D_α(W(·|x) ‖ q_Y) as a function of the output distribution.
pub fn ac_objective_direct(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    q_y: &[f64],
) -> f64 {
    let a = alpha.value();
    let mut total = 0.0;
    for x in 0..channel.x_size() {
        let px = input.get(x);
        if px == 0.0 {
            continue;
        }
        let mut sum = 0.0;
        for (y, &qy) in q_y.iter().enumerate() {
            let w = channel.get(x, y);
            if w == 0.0 {
                continue;
            }
            if qy == 0.0 {
                if a > 1.0 {
                    return f64::INFINITY;
                }
                continue;
            }
            sum += w.powf(a) * qy.powf(1.0 - a);
        }
        if sum == 0.0 {
            return f64::INFINITY;
        }
        total += px * sum.ln() / (a - 1.0);
    }
    total
}

/// Reference value for the Lapidoth–Pfister information by exhaustive
/// search over the product of both simplices, refined like
/// [`grid_min_over_simplex`]. Alphabets above [`JOINT_DIMENSION_LIMIT`]
/// per axis are rejected.
pub fn exhaustive_joint_min(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    spec: &GridSpec,
) -> Result<f64> {
    if input.len() != channel.x_size() {
        return Err(Error::LengthMismatch(input.len(), channel.x_size()));
    }
    for (size, label) in [(channel.x_size(), "x"), (channel.y_size(), "y")] {
        if size > JOINT_DIMENSION_LIMIT {
            let _ = label;
            return Err(Error::DimensionTooLarge {
                size,
                limit: JOINT_DIMENSION_LIMIT,
            });
        }
    }
    spec.validate()?;
    let a = alpha.value();
    let (nx, ny) = (channel.x_size(), channel.y_size());
    // powered joint masses (p(x) W(y|x))^α
    let mut powered = vec![0.0; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let j = input.get(x) * channel.get(x, y);
            powered[x * ny + y] = if j == 0.0 { 0.0 } else { j.powf(a) };
        }
    }

    let mut best = f64::INFINITY;
    let mut best_qx = vec![1.0 / nx as f64; nx];
    let mut best_qy = vec![1.0 / ny as f64; ny];
    let mut scale = 1.0;

    for level in 0..spec.refinement_levels {
        let center_x = best_qx.clone();
        let center_y = best_qy.clone();

        // candidate qX points with their (1-α) powers, plus the incumbent
        let mut qx_pows: Vec<Vec<f64>> = Vec::new();
        let mut qx_points: Vec<Vec<f64>> = Vec::new();
        let push_qx = |pt: &[f64], pows: &mut Vec<Vec<f64>>, pts: &mut Vec<Vec<f64>>| {
            let pw = pt
                .iter()
                .map(|&v| {
                    if v == 0.0 {
                        if a > 1.0 {
                            f64::INFINITY
                        } else {
                            0.0
                        }
                    } else {
                        v.powf(1.0 - a)
                    }
                })
                .collect();
            pows.push(pw);
            pts.push(pt.to_vec());
        };
        push_qx(&center_x, &mut qx_pows, &mut qx_points);
        let mut mapped = vec![0.0; nx];
        for_each_lattice_point(nx, spec.resolution, |g| {
            for i in 0..nx {
                mapped[i] = center_x[i] + scale * (g[i] - center_x[i]);
            }
            push_qx(&mapped, &mut qx_pows, &mut qx_points);
        });

        // scan qY candidates, the incumbent first
        let mut weights = vec![0.0; nx];
        let mut scan_qy = |qy: &[f64],
                           best: &mut f64,
                           best_qx: &mut Vec<f64>,
                           best_qy: &mut Vec<f64>| {
            for x in 0..nx {
                let mut w = 0.0;
                for y in 0..ny {
                    let p = powered[x * ny + y];
                    if p == 0.0 {
                        continue;
                    }
                    let q = qy[y];
                    if q == 0.0 {
                        if a > 1.0 {
                            w = f64::INFINITY;
                            break;
                        }
                        continue;
                    }
                    w += p * q.powf(1.0 - a);
                }
                weights[x] = w;
            }
            for (pw, pt) in qx_pows.iter().zip(&qx_points) {
                let mut sum = 0.0;
                for x in 0..nx {
                    if weights[x] == 0.0 {
                        continue;
                    }
                    sum += weights[x] * pw[x];
                    if sum == f64::INFINITY {
                        break;
                    }
                }
                let value = if sum <= 0.0 {
                    f64::INFINITY
                } else {
                    sum.ln() / (a - 1.0)
                };
                if value < *best {
                    *best = value;
                    best_qx.copy_from_slice(pt);
                    best_qy.copy_from_slice(qy);
                }
            }
        };
        let center_y_snapshot = center_y.clone();
        scan_qy(&center_y_snapshot, &mut best, &mut best_qx, &mut best_qy);
        let mut mapped_y = vec![0.0; ny];
        for_each_lattice_point(ny, spec.resolution, |g| {
            for i in 0..ny {
                mapped_y[i] = center_y[i] + scale * (g[i] - center_y[i]);
            }
            scan_qy(&mapped_y, &mut best, &mut best_qx, &mut best_qy);
        });

        if level + 1 < spec.refinement_levels {
            scale *= spec.shrink_factor;
        }
    }
    Ok(best)
}

/// Whether the functional is being maximized or minimized at the point
/// under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// One mass-transfer direction inside a block of simplex variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferDirection {
    pub block: usize,
    pub from: usize,
    pub to: usize,
}

/// Outcome of a stationarity check.
#[derive(Debug, Clone, PartialEq)]
pub struct StationarityReport {
    pub passed: bool,
    /// Largest adverse finite-difference directional derivative found
    /// (positive means the functional improves by moving away, which a
    /// true per-step optimizer cannot allow beyond the slack).
    pub worst_adverse_derivative: f64,
    /// The direction achieving it, when any direction was testable.
    pub worst_direction: Option<TransferDirection>,
}

/// Certifies a claimed per-step optimizer by finite differences.
///
/// `point` is a family of simplex blocks (rows of a channel, a single
/// distribution, a flattened joint). Every feasible mass transfer of size
/// `perturbation` from one coordinate to another within one block is
/// applied; the check passes when no such move improves the functional by
/// more than [`STATIONARITY_SLACK`] per unit of mass.
///
/// The point should be strictly positive on its support and the
/// perturbation must lie in [1e-6, 1e-3].
pub fn verify_stationarity(
    functional: impl Fn(&[Vec<f64>]) -> f64,
    point: &[Vec<f64>],
    sense: Sense,
    perturbation: f64,
) -> Result<StationarityReport> {
    if !(1e-6..=1e-3).contains(&perturbation) {
        return Err(Error::InvalidConfig(format!(
            "perturbation must lie in [1e-6, 1e-3], got {perturbation}"
        )));
    }
    let base = functional(point);
    if !base.is_finite() {
        return Err(Error::InvalidConfig(
            "functional is not finite at the point under test".into(),
        ));
    }
    let mut work: Vec<Vec<f64>> = point.to_vec();
    let mut worst = f64::NEG_INFINITY;
    let mut worst_direction = None;
    for b in 0..point.len() {
        for from in 0..point[b].len() {
            if point[b][from] < perturbation {
                continue;
            }
            for to in 0..point[b].len() {
                if to == from {
                    continue;
                }
                work[b][from] -= perturbation;
                work[b][to] += perturbation;
                let shifted = functional(&work);
                work[b].copy_from_slice(&point[b]);
                let derivative = (shifted - base) / perturbation;
                let adverse = match sense {
                    Sense::Maximize => derivative,
                    Sense::Minimize => -derivative,
                };
                if adverse > worst {
                    worst = adverse;
                    worst_direction = Some(TransferDirection { block: b, from, to });
                }
            }
        }
    }
    if worst == f64::NEG_INFINITY {
        // nothing was testable; a bare point mass has no feasible move
        return Ok(StationarityReport {
            passed: true,
            worst_adverse_derivative: 0.0,
            worst_direction: None,
        });
    }
    Ok(StationarityReport {
        passed: worst <= STATIONARITY_SLACK,
        worst_adverse_derivative: worst,
        worst_direction,
    })
}
