//! Capacity solvers: the maximum of the order-α information over the
//! channel input.
//!
//! Four alternating-optimization algorithms are provided, named by the
//! variational objective they climb:
//!
//! - **S1** alternates a reverse-channel step with an input step and works
//!   on both sides of order one. It is also the fastest of the four.
//! - **JO** cycles posterior, input-marginal, and surrogate-joint steps.
//! - **C** cycles posterior, surrogate-channel, and Gibbs input steps.
//! - **LP** cycles posterior, input-marginal, and product-form joint
//!   steps, and computes the Lapidoth–Pfister capacity, which coincides
//!   with the others above order one.
//!
//! JO, C, and LP require α > 1. Every run yields a nondecreasing objective
//! trace; for Algorithm C no global-convergence guarantee is known, so its
//! monotone trace is the per-run certificate.

use crate::error::{Error, Result};
use crate::driver::Driver;
use crate::mi::{AOConfig, AOTrace, InitPoint, Initialization, Optimizers};
use crate::prob::{AlphaParam, Channel, Distribution, JointDistribution};
use crate::steps;

/// Which capacity algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmId {
    S1,
    Jo,
    C,
    Lp,
}

impl AlgorithmId {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmId::S1 => "s1",
            AlgorithmId::Jo => "jo",
            AlgorithmId::C => "c",
            AlgorithmId::Lp => "lp",
        }
    }

    /// S1 accepts any valid order; the other three need α > 1.
    pub fn supports(&self, alpha: AlphaParam) -> bool {
        matches!(self, AlgorithmId::S1) || alpha.is_above_one()
    }
}

impl std::fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AlgorithmId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "s1" => Ok(AlgorithmId::S1),
            "jo" => Ok(AlgorithmId::Jo),
            "c" => Ok(AlgorithmId::C),
            "lp" => Ok(AlgorithmId::Lp),
            other => Err(format!("unknown algorithm '{other}' (expected s1, jo, c, or lp)")),
        }
    }
}

/// Value and diagnostics of a capacity solve.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    /// The computed capacity in nats.
    pub value: f64,
    /// Cycles executed.
    pub iterations: usize,
    /// False when the run stopped only because of `max_iterations`.
    pub converged: bool,
    /// False for Algorithm C, whose global convergence is not guaranteed;
    /// the monotone trace stands in as the per-run certificate.
    pub proven_regime: bool,
    /// Termination metadata, with per-cycle objectives when requested.
    pub trace: AOTrace,
    /// The input distribution the run converged to.
    pub achiever: Distribution,
    /// The auxiliary blocks at termination (algorithm-specific).
    pub auxiliary: Optimizers,
}

/// S1's state is an input distribution; joint-style initializations
/// contribute only their input marginal, which is uniform for both menu
/// entries.
fn s1_input_init(cfg: &AOConfig, channel: &Channel) -> Result<Distribution> {
    match &cfg.initialization {
        Initialization::Uniform
        | Initialization::UniformJoint
        | Initialization::InputTimesChannel => Ok(Distribution::uniform(channel.x_size())),
        Initialization::Custom(InitPoint::Input(p)) => {
            if p.len() != channel.x_size() {
                return Err(Error::IncompatibleInit("input has wrong length"));
            }
            Ok(p.clone())
        }
        Initialization::Custom(_) => Err(Error::IncompatibleInit(
            "this solver starts from an input distribution",
        )),
    }
}

fn joint_state_init(cfg: &AOConfig, channel: &Channel) -> Result<JointDistribution> {
    match &cfg.initialization {
        Initialization::Uniform | Initialization::UniformJoint => {
            Ok(JointDistribution::uniform(channel.x_size(), channel.y_size()))
        }
        Initialization::InputTimesChannel => JointDistribution::from_input_and_channel(
            &Distribution::uniform(channel.x_size()),
            channel,
        ),
        Initialization::Custom(InitPoint::Joint(j)) => {
            if j.x_size() != channel.x_size() || j.y_size() != channel.y_size() {
                return Err(Error::IncompatibleInit("joint has wrong shape"));
            }
            Ok(j.clone())
        }
        Initialization::Custom(_) => Err(Error::IncompatibleInit(
            "this solver starts from a joint distribution",
        )),
    }
}

fn require_above_one(algorithm: &'static str, alpha: AlphaParam) -> Result<()> {
    if !alpha.is_above_one() {
        return Err(Error::IncompatibleAlpha {
            algorithm,
            alpha: alpha.value(),
        });
    }
    Ok(())
}

/// Algorithm S1. Valid for every admissible order.
///
/// Both of its steps are exact block maximizations of the same objective
/// for every admissible order, so the trace climbs on both sides of order
/// one; the classical global-convergence guarantee is stated above order
/// one, and below it the tests hold the monotone climb empirically.
///
/// ```
/// use ainfo_core::{capacity_s1, AOConfig, AlphaParam, example_channel_3x3};
///
/// let alpha = AlphaParam::new(2.0).unwrap();
/// let r = capacity_s1(alpha, &example_channel_3x3(), &AOConfig::default()).unwrap();
/// assert!(r.converged);
/// assert!(r.value > 0.0);
/// ```
pub fn capacity_s1(alpha: AlphaParam, channel: &Channel, cfg: &AOConfig) -> Result<CapacityResult> {
    cfg.validate()?;
    let mut input = s1_input_init(cfg, channel)?;
    let mut driver = Driver::new(cfg);
    let reverse = loop {
        let reverse = steps::s1_reverse_step(alpha, &input, channel);
        let (fresh, objective) = steps::s1_input_step(alpha, channel, &reverse);
        input = fresh;
        if driver.observe(objective) {
            break reverse;
        }
    };
    let converged = driver.converged();
    let iterations = driver.iterations();
    let trace = driver.into_trace();
    Ok(CapacityResult {
        value: trace.final_value,
        iterations,
        converged,
        proven_regime: true,
        trace,
        achiever: input,
        auxiliary: Optimizers {
            reverse_channel: Some(reverse),
            ..Optimizers::default()
        },
    })
}

/// Algorithm JO. Requires α > 1.
pub fn capacity_jo(alpha: AlphaParam, channel: &Channel, cfg: &AOConfig) -> Result<CapacityResult> {
    require_above_one("jo", alpha)?;
    cfg.validate()?;
    let mut joint = joint_state_init(cfg, channel)?;
    let mut driver = Driver::new(cfg);
    let (input, reverse) = loop {
        let (reverse, _) = joint.posterior();
        let input = steps::marginal_input_step(&joint);
        let (fresh, objective) = steps::jo_joint_step(alpha, &input, channel, &reverse);
        joint = fresh;
        if driver.observe(objective) {
            break (input, reverse);
        }
    };
    let converged = driver.converged();
    let iterations = driver.iterations();
    let trace = driver.into_trace();
    Ok(CapacityResult {
        value: trace.final_value,
        iterations,
        converged,
        proven_regime: true,
        trace,
        achiever: input,
        auxiliary: Optimizers {
            surrogate_joint: Some(joint),
            reverse_channel: Some(reverse),
            ..Optimizers::default()
        },
    })
}

/// Algorithm C. Requires α > 1. No global-convergence guarantee is known;
/// the monotone trace is the per-run certificate.
pub fn capacity_c(alpha: AlphaParam, channel: &Channel, cfg: &AOConfig) -> Result<CapacityResult> {
    require_above_one("c", alpha)?;
    cfg.validate()?;
    let (mut input, mut surrogate) = match &cfg.initialization {
        Initialization::Custom(InitPoint::Joint(j)) => {
            if j.x_size() != channel.x_size() || j.y_size() != channel.y_size() {
                return Err(Error::IncompatibleInit("joint has wrong shape"));
            }
            (j.marginal_x(), j.conditional_y_given_x().0)
        }
        Initialization::Custom(_) => {
            return Err(Error::IncompatibleInit(
                "this solver starts from a joint distribution",
            ))
        }
        Initialization::InputTimesChannel => {
            (Distribution::uniform(channel.x_size()), channel.clone())
        }
        Initialization::Uniform | Initialization::UniformJoint => (
            Distribution::uniform(channel.x_size()),
            Channel::uniform(channel.x_size(), channel.y_size()),
        ),
    };
    let mut driver = Driver::new(cfg);
    let reverse = loop {
        let reverse = steps::posterior_step(&input, &surrogate);
        let (fresh, _) = steps::ac_surrogate_step_above_one(alpha, channel, &reverse);
        surrogate = fresh;
        let (fresh, objective) = steps::c_input_step(alpha, channel, &surrogate, &reverse);
        input = fresh;
        if driver.observe(objective) {
            break reverse;
        }
    };
    let converged = driver.converged();
    let iterations = driver.iterations();
    let trace = driver.into_trace();
    Ok(CapacityResult {
        value: trace.final_value,
        iterations,
        converged,
        proven_regime: false,
        trace,
        achiever: input,
        auxiliary: Optimizers {
            surrogate_channel: Some(surrogate),
            reverse_channel: Some(reverse),
            ..Optimizers::default()
        },
    })
}

/// Algorithm LP. Requires α > 1.
pub fn capacity_lp(alpha: AlphaParam, channel: &Channel, cfg: &AOConfig) -> Result<CapacityResult> {
    require_above_one("lp", alpha)?;
    cfg.validate()?;
    let mut joint = joint_state_init(cfg, channel)?;
    let mut driver = Driver::new(cfg);
    let (input, reverse) = loop {
        let (reverse, _) = joint.posterior();
        let input = steps::marginal_input_step(&joint);
        let (fresh, objective) = steps::lp_joint_step_above_one(alpha, &input, channel, &reverse);
        joint = fresh;
        if driver.observe(objective) {
            break (input, reverse);
        }
    };
    let converged = driver.converged();
    let iterations = driver.iterations();
    let trace = driver.into_trace();
    Ok(CapacityResult {
        value: trace.final_value,
        iterations,
        converged,
        proven_regime: true,
        trace,
        achiever: input,
        auxiliary: Optimizers {
            surrogate_joint: Some(joint),
            reverse_channel: Some(reverse),
            ..Optimizers::default()
        },
    })
}

/// Dispatches on [`AlgorithmId`], enforcing the order compatibility rules.
pub fn run_capacity(
    algorithm: AlgorithmId,
    alpha: AlphaParam,
    channel: &Channel,
    cfg: &AOConfig,
) -> Result<CapacityResult> {
    match algorithm {
        AlgorithmId::S1 => capacity_s1(alpha, channel, cfg),
        AlgorithmId::Jo => capacity_jo(alpha, channel, cfg),
        AlgorithmId::C => capacity_c(alpha, channel, cfg),
        AlgorithmId::Lp => capacity_lp(alpha, channel, cfg),
    }
}
