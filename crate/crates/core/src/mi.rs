//! Mutual-information computations of order α: closed forms for the
//! Sibson and Arimoto measures, alternating optimization for the
//! Augustin–Csiszár and Lapidoth–Pfister measures.

use crate::error::{Error, Result};
use crate::driver::Driver;
use crate::logdomain::{log_sum_exp_by, normalize_from_log};
use crate::measures::gallager_e0;
use crate::prob::{AlphaParam, Channel, Distribution, JointDistribution};
use crate::steps;

/// How an AO run picks its starting block(s).
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Initialization {
    /// Uniform over whatever the solver's state space is.
    #[default]
    Uniform,
    /// Uniform over the product alphabet (meaningful for joint-state
    /// solvers; equivalent to `Uniform` elsewhere).
    UniformJoint,
    /// Start from the input distribution times the channel.
    InputTimesChannel,
    /// Caller-provided starting point; must fit the solver's state space.
    Custom(InitPoint),
}

/// Payload for [`Initialization::Custom`].
#[derive(Debug, Clone, PartialEq)]
pub enum InitPoint {
    Input(Distribution),
    Joint(JointDistribution),
    Conditional(Channel),
    Pair { x: Distribution, y: Distribution },
}

/// Stopping rule and trace switches for the AO solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct AOConfig {
    /// Stop once the absolute objective change per cycle is at most this,
    /// in nats.
    pub tolerance: f64,
    /// Hard cap on cycles; hitting it flags the result as not converged.
    pub max_iterations: usize,
    pub initialization: Initialization,
    /// Record the objective after every cycle.
    pub record_trace: bool,
}

impl Default for AOConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-11,
            max_iterations: 1_000_000,
            initialization: Initialization::Uniform,
            record_trace: false,
        }
    }
}

impl AOConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_initialization(mut self, initialization: Initialization) -> Self {
        self.initialization = initialization;
        self
    }

    pub fn with_trace(mut self, record_trace: bool) -> Self {
        self.record_trace = record_trace;
        self
    }
}

/// Why an AO run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Tolerance,
    MaxIterations,
}

/// Objective history of an AO run.
///
/// `objectives` holds the value after each cycle when tracing was
/// requested, and is empty otherwise; the termination metadata is always
/// filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct AOTrace {
    pub objectives: Vec<f64>,
    pub iterations: usize,
    pub terminated_by: Termination,
    pub final_value: f64,
}

impl AOTrace {
    /// Largest adverse objective step, signed so that anything above the
    /// monotonicity slack is a violation. `increasing` states the direction
    /// the run is supposed to move.
    pub fn worst_monotonicity_violation(&self, increasing: bool) -> f64 {
        let mut worst = 0.0_f64;
        for pair in self.objectives.windows(2) {
            let step = pair[1] - pair[0];
            let adverse = if increasing { -step } else { step };
            worst = worst.max(adverse);
        }
        worst
    }
}

/// The converged blocks of an AO run; which fields are present depends on
/// the measure and the order regime.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Optimizers {
    /// q_Y*, a distribution on the output alphabet.
    pub output_dist: Option<Distribution>,
    /// q_X*, a distribution on the input alphabet.
    pub input_dist: Option<Distribution>,
    /// q̃*(y|x), indexed like the forward channel.
    pub surrogate_channel: Option<Channel>,
    /// q̃*(x,y) on the product alphabet.
    pub surrogate_joint: Option<JointDistribution>,
    /// r*(x|y), rows indexed by output.
    pub reverse_channel: Option<Channel>,
}

/// Value and diagnostics of a mutual-information solve.
#[derive(Debug, Clone, PartialEq)]
pub struct MIResult {
    /// The computed information in nats.
    pub value: f64,
    /// Cycles executed.
    pub iterations: usize,
    /// False when the run stopped only because of `max_iterations`.
    pub converged: bool,
    /// False when the order lies outside the regime with a convergence
    /// guarantee (the Lapidoth–Pfister solvers below order 1/2). The run
    /// still executes; its monotone trace is the per-run evidence.
    pub proven_regime: bool,
    /// Per-cycle objectives when requested in the config.
    pub trace: Option<AOTrace>,
    pub optimizers: Optimizers,
}

fn check_dims(input: &Distribution, channel: &Channel) -> Result<()> {
    if input.len() != channel.x_size() {
        return Err(Error::LengthMismatch(input.len(), channel.x_size()));
    }
    Ok(())
}

/// Sibson mutual information of order α via its closed form
/// (α/(1−α)) E₀(1/α − 1, p), in nats.
///
/// ```
/// use ainfo_core::{sibson_mi_closed, AlphaParam, Channel, Distribution};
///
/// let noiseless = Channel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
/// let alpha = AlphaParam::new(2.0).unwrap();
/// let value = sibson_mi_closed(alpha, &Distribution::uniform(2), &noiseless).unwrap();
/// assert!((value - std::f64::consts::LN_2).abs() < 1e-12);
/// ```
pub fn sibson_mi_closed(alpha: AlphaParam, input: &Distribution, channel: &Channel) -> Result<f64> {
    check_dims(input, channel)?;
    let e0 = gallager_e0(alpha.rho(), input, channel)?;
    Ok(alpha.alpha_over_one_minus_alpha() * e0)
}

/// The output distribution achieving the Sibson minimum:
/// q*(y) ∝ (Σ_x p(x) W(y|x)^α)^{1/α}.
pub fn sibson_minimizer_qy(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
) -> Result<Distribution> {
    check_dims(input, channel)?;
    let a = alpha.value();
    let mut log_w: Vec<f64> = (0..channel.y_size())
        .map(|y| {
            log_sum_exp_by(channel.x_size(), |x| {
                let (px, w) = (input.get(x), channel.get(x, y));
                if px == 0.0 || w == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    px.ln() + a * w.ln()
                }
            }) / a
        })
        .collect();
    normalize_from_log(&mut log_w);
    Distribution::from_weights(log_w)
}

/// Arimoto mutual information of order α via its closed form, the Sibson
/// expression evaluated at the α-tilted input, in nats.
///
/// The entropy difference H_α(X) − H_α(X|Y) computes the same quantity
/// through an unrelated code path; tests hold the two together.
pub fn arimoto_mi_closed(alpha: AlphaParam, input: &Distribution, channel: &Channel) -> Result<f64> {
    check_dims(input, channel)?;
    let tilted = crate::measures::tilted_distribution(alpha, input);
    let e0 = gallager_e0(alpha.rho(), &tilted, channel)?;
    Ok(alpha.alpha_over_one_minus_alpha() * e0)
}

fn surrogate_channel_init(
    cfg: &AOConfig,
    channel: &Channel,
) -> Result<Channel> {
    match &cfg.initialization {
        Initialization::Uniform | Initialization::UniformJoint => {
            Ok(Channel::uniform(channel.x_size(), channel.y_size()))
        }
        Initialization::InputTimesChannel => Ok(channel.clone()),
        Initialization::Custom(InitPoint::Conditional(ch)) => {
            if ch.x_size() != channel.x_size() || ch.y_size() != channel.y_size() {
                return Err(Error::IncompatibleInit("conditional has wrong shape"));
            }
            Ok(ch.clone())
        }
        Initialization::Custom(_) => Err(Error::IncompatibleInit(
            "this solver starts from a conditional distribution",
        )),
    }
}

fn joint_init(cfg: &AOConfig, input: &Distribution, channel: &Channel) -> Result<JointDistribution> {
    match &cfg.initialization {
        Initialization::Uniform | Initialization::UniformJoint => {
            Ok(JointDistribution::uniform(channel.x_size(), channel.y_size()))
        }
        Initialization::InputTimesChannel => JointDistribution::from_input_and_channel(input, channel),
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

/// Augustin–Csiszár mutual information of order α by alternating
/// optimization.
///
/// Below order one the solver alternately minimizes over the output
/// distribution and the surrogate channel, and the objective decreases to
/// the information; above order one it alternately maximizes over the
/// reverse and surrogate channels, and the objective increases to it.
pub fn ac_mi(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    cfg: &AOConfig,
) -> Result<MIResult> {
    check_dims(input, channel)?;
    cfg.validate()?;
    let mut surrogate = surrogate_channel_init(cfg, channel)?;
    let mut driver = Driver::new(cfg);
    let mut optimizers = Optimizers::default();

    if alpha.is_above_one() {
        let entropy = crate::functionals::input_entropy(input);
        let scale = alpha.alpha_over_alpha_minus_one();
        loop {
            let reverse = steps::posterior_step(input, &surrogate);
            let (fresh, log_s) = steps::ac_surrogate_step_above_one(alpha, channel, &reverse);
            surrogate = fresh;
            let objective = entropy
                + scale
                    * (0..input.len())
                        .filter(|&x| input.get(x) > 0.0)
                        .map(|x| input.get(x) * log_s[x])
                        .sum::<f64>();
            if driver.observe(objective) {
                optimizers.reverse_channel = Some(reverse);
                break;
            }
        }
    } else {
        let inv = 1.0 / (alpha.value() - 1.0);
        loop {
            let output = steps::ac_output_step(input, &surrogate);
            let (fresh, log_t) = steps::ac_surrogate_step_below_one(alpha, channel, &output);
            surrogate = fresh;
            let objective = inv
                * (0..input.len())
                    .filter(|&x| input.get(x) > 0.0)
                    .map(|x| input.get(x) * log_t[x])
                    .sum::<f64>();
            if driver.observe(objective) {
                optimizers.output_dist = Some(output);
                break;
            }
        }
    }

    optimizers.surrogate_channel = Some(surrogate);
    let converged = driver.converged();
    let iterations = driver.iterations();
    let trace = driver.into_trace();
    Ok(MIResult {
        value: trace.final_value,
        iterations,
        converged,
        proven_regime: true,
        trace: if cfg.record_trace { Some(trace) } else { None },
        optimizers,
    })
}

fn lp_proven_regime(alpha: AlphaParam) -> bool {
    alpha.is_above_one() || alpha.value() >= 0.5
}

fn lp_pair_init(
    cfg: &AOConfig,
    input: &Distribution,
    channel: &Channel,
) -> Result<(Distribution, Distribution)> {
    match &cfg.initialization {
        Initialization::Uniform | Initialization::UniformJoint => Ok((
            Distribution::uniform(channel.x_size()),
            Distribution::uniform(channel.y_size()),
        )),
        Initialization::InputTimesChannel => {
            let joint = JointDistribution::from_input_and_channel(input, channel)?;
            Ok((joint.marginal_x(), joint.marginal_y()))
        }
        Initialization::Custom(InitPoint::Pair { x, y }) => {
            if x.len() != channel.x_size() || y.len() != channel.y_size() {
                return Err(Error::IncompatibleInit("pair has wrong shape"));
            }
            Ok((x.clone(), y.clone()))
        }
        Initialization::Custom(_) => Err(Error::IncompatibleInit(
            "this solver starts from a pair of distributions",
        )),
    }
}

/// Lapidoth–Pfister mutual information of order α by alternating exact
/// minimizations of D_α(pW ‖ q_X q_Y) in q_X and q_Y.
///
/// Convergence to the information is guaranteed for α ∈ [1/2,1) ∪ (1,∞);
/// outside that range the run still executes and is flagged via
/// `proven_regime`.
pub fn lp_mi_def_ao(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    cfg: &AOConfig,
) -> Result<MIResult> {
    check_dims(input, channel)?;
    cfg.validate()?;
    let joint = JointDistribution::from_input_and_channel(input, channel)?;
    // the q_X block is refreshed first, so only the q_Y seed matters
    let (_, mut q_y) = lp_pair_init(cfg, input, channel)?;
    let mut q_x;
    let mut driver = Driver::new(cfg);
    loop {
        q_x = steps::lp_input_step(alpha, &joint, &q_y);
        let (fresh, objective) = steps::lp_output_step(alpha, &joint, &q_x);
        q_y = fresh;
        if driver.observe(objective) {
            break;
        }
    }
    let converged = driver.converged();
    let iterations = driver.iterations();
    let trace = driver.into_trace();
    Ok(MIResult {
        value: trace.final_value,
        iterations,
        converged,
        proven_regime: lp_proven_regime(alpha),
        trace: if cfg.record_trace { Some(trace) } else { None },
        optimizers: Optimizers {
            input_dist: Some(q_x),
            output_dist: Some(q_y),
            ..Optimizers::default()
        },
    })
}

/// Lapidoth–Pfister mutual information of order α by alternating
/// optimization of the variational form over a surrogate joint and either
/// the output distribution (below order one, minimizing) or the reverse
/// channel (above order one, maximizing).
pub fn lp_mi_vc_ao(
    alpha: AlphaParam,
    input: &Distribution,
    channel: &Channel,
    cfg: &AOConfig,
) -> Result<MIResult> {
    check_dims(input, channel)?;
    cfg.validate()?;
    let mut joint = joint_init(cfg, input, channel)?;
    let mut driver = Driver::new(cfg);
    let mut optimizers = Optimizers::default();

    if alpha.is_above_one() {
        loop {
            let (reverse, _) = joint.posterior();
            let (fresh, objective) = steps::lp_joint_step_above_one(alpha, input, channel, &reverse);
            joint = fresh;
            if driver.observe(objective) {
                optimizers.reverse_channel = Some(reverse);
                break;
            }
        }
    } else {
        loop {
            let output = joint.marginal_y();
            let (fresh, objective) = steps::lp_joint_step_below_one(alpha, input, channel, &output);
            joint = fresh;
            if driver.observe(objective) {
                optimizers.output_dist = Some(output);
                break;
            }
        }
    }

    optimizers.surrogate_joint = Some(joint);
    let converged = driver.converged();
    let iterations = driver.iterations();
    let trace = driver.into_trace();
    Ok(MIResult {
        value: trace.final_value,
        iterations,
        converged,
        proven_regime: lp_proven_regime(alpha),
        trace: if cfg.record_trace { Some(trace) } else { None },
        optimizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    fn useless() -> Channel {
        Channel::new(vec![vec![0.3, 0.2, 0.5]; 3]).unwrap()
    }

    fn noiseless3() -> Channel {
        Channel::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap()
    }

    fn example_channel() -> Channel {
        crate::reference::example_channel_3x3()
    }

    #[test]
    fn sibson_closed_form_extremes() {
        let u = Distribution::uniform(3);
        for a in [0.5, 2.0, 5.0] {
            let v = sibson_mi_closed(alpha(a), &u, &noiseless3()).unwrap();
            assert!((v - 3.0_f64.ln()).abs() < 1e-12, "a={a}");
            assert!(sibson_mi_closed(alpha(a), &u, &useless()).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn sibson_closed_form_bsc_reference_value() {
        let u = Distribution::uniform(2);
        let bsc = Channel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
        // min over q of log(0.41/q0 + 0.41/q1) = log 1.64, attained at uniform q
        let expect = 1.64_f64.ln();
        let got = sibson_mi_closed(alpha(2.0), &u, &bsc).unwrap();
        assert!((got - expect).abs() < 1e-12, "{got} vs {expect}");
    }

    #[test]
    fn sibson_minimizer_achieves_the_closed_form() {
        let p = Distribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let ch = example_channel();
        for a in [0.5, 2.0, 5.0] {
            let al = alpha(a);
            let q = sibson_minimizer_qy(al, &p, &ch).unwrap();
            let joint = JointDistribution::from_input_and_channel(&p, &ch).unwrap();
            let product = JointDistribution::from_input_and_channel(&p, &{
                Channel::new(vec![q.probs().to_vec(); 3]).unwrap()
            })
            .unwrap();
            let attained = crate::measures::renyi_divergence(al, &joint, &product).unwrap();
            let closed = sibson_mi_closed(al, &p, &ch).unwrap();
            assert!((attained - closed).abs() < 1e-10, "a={a}: {attained} vs {closed}");
        }
    }

    #[test]
    fn sibson_minimizer_identity_channel_is_uniform() {
        let q = sibson_minimizer_qy(alpha(2.0), &Distribution::uniform(3), &noiseless3()).unwrap();
        assert!(q.sup_distance(&Distribution::uniform(3)) < 1e-12);
    }

    #[test]
    fn sibson_minimizer_near_order_one_matches_output_marginal() {
        let p = Distribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let ch = example_channel();
        let q = sibson_minimizer_qy(alpha(1.0001), &p, &ch).unwrap();
        let marginal = JointDistribution::from_input_and_channel(&p, &ch)
            .unwrap()
            .marginal_y();
        assert!(q.sup_distance(&marginal) < 1e-4);
    }

    #[test]
    fn arimoto_equals_sibson_at_uniform_input() {
        let u = Distribution::uniform(3);
        let ch = example_channel();
        for a in [0.5, 1.5, 3.0] {
            let s = sibson_mi_closed(alpha(a), &u, &ch).unwrap();
            let ar = arimoto_mi_closed(alpha(a), &u, &ch).unwrap();
            assert!((s - ar).abs() < 1e-12);
        }
    }

    #[test]
    fn arimoto_vanishes_on_useless_channels() {
        let p = Distribution::new(vec![0.6, 0.1, 0.3]).unwrap();
        for a in [0.5, 2.0, 5.0] {
            assert!(arimoto_mi_closed(alpha(a), &p, &useless()).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn arimoto_dual_paths_agree() {
        let p = Distribution::new(vec![0.8, 0.2]).unwrap();
        let bsc = Channel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
        let al = alpha(2.0);
        let closed = arimoto_mi_closed(al, &p, &bsc).unwrap();
        let via_entropies = crate::measures::renyi_entropy(al, &p)
            - crate::measures::arimoto_conditional_entropy(al, &p, &bsc).unwrap();
        assert!((closed - via_entropies).abs() < 1e-10);
    }

    #[test]
    fn ac_mi_vanishes_on_useless_channels() {
        let u = Distribution::uniform(3);
        let cfg = AOConfig::default();
        for a in [0.5, 2.0] {
            let r = ac_mi(alpha(a), &u, &useless(), &cfg).unwrap();
            assert!(r.value.abs() < 1e-9, "a={a}: {}", r.value);
            assert!(r.converged);
        }
    }

    #[test]
    fn ac_mi_reaches_log3_on_noiseless_channels() {
        let u = Distribution::uniform(3);
        let cfg = AOConfig::default();
        for a in [0.5, 2.0] {
            let r = ac_mi(alpha(a), &u, &noiseless3(), &cfg).unwrap();
            assert!((r.value - 3.0_f64.ln()).abs() < 1e-9, "a={a}: {}", r.value);
        }
    }

    #[test]
    fn ac_mi_stays_below_its_capacity_and_meets_it_at_the_achiever() {
        let u = Distribution::uniform(3);
        let ch = example_channel();
        let al = alpha(2.0);
        let cfg = AOConfig::default();
        let at_uniform = ac_mi(al, &u, &ch, &cfg).unwrap();
        let cap = crate::capacity::capacity_c(al, &ch, &cfg).unwrap();
        assert!(at_uniform.value <= cap.value + 1e-9);
        let at_achiever = ac_mi(al, &cap.achiever, &ch, &cfg).unwrap();
        assert!((at_achiever.value - cap.value).abs() < 1e-7);
    }

    #[test]
    fn lp_def_vanishes_on_useless_channels_and_respects_sibson_bound() {
        let u = Distribution::uniform(3);
        let ch = example_channel();
        let cfg = AOConfig::default();
        let r = lp_mi_def_ao(alpha(0.5), &u, &useless(), &cfg).unwrap();
        assert!(r.value.abs() < 1e-9);
        for a in [0.6, 2.0, 5.0] {
            let lp = lp_mi_def_ao(alpha(a), &u, &ch, &cfg).unwrap();
            let sibson = sibson_mi_closed(alpha(a), &u, &ch).unwrap();
            assert!(lp.value <= sibson + 1e-9, "a={a}: {} vs {sibson}", lp.value);
        }
    }

    #[test]
    fn lp_def_flags_the_unproven_regime() {
        let u = Distribution::uniform(2);
        let ch = Channel::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
        let cfg = AOConfig::default();
        assert!(!lp_mi_def_ao(alpha(0.4), &u, &ch, &cfg).unwrap().proven_regime);
        assert!(lp_mi_def_ao(alpha(0.5), &u, &ch, &cfg).unwrap().proven_regime);
        assert!(lp_mi_def_ao(alpha(2.0), &u, &ch, &cfg).unwrap().proven_regime);
    }

    #[test]
    fn lp_vc_agrees_with_lp_def() {
        let p = Distribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let ch = example_channel();
        let cfg = AOConfig::default().with_tolerance(1e-13);
        for a in [0.7, 2.0] {
            let d = lp_mi_def_ao(alpha(a), &p, &ch, &cfg).unwrap();
            let v = lp_mi_vc_ao(alpha(a), &p, &ch, &cfg).unwrap();
            assert!((d.value - v.value).abs() < 1e-7, "a={a}: {} vs {}", d.value, v.value);
        }
    }

    #[test]
    fn lp_point_mass_input_carries_nothing() {
        let p = Distribution::point_mass(3, 0);
        let ch = example_channel();
        let r = lp_mi_vc_ao(alpha(5.0), &p, &ch, &AOConfig::default()).unwrap();
        assert!(r.value.abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn lp_vc_noiseless_binary_reaches_log2() {
        let ch = Channel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let u = Distribution::uniform(2);
        for a in [0.7, 1.5] {
            let r = lp_mi_vc_ao(alpha(a), &u, &ch, &AOConfig::default()).unwrap();
            assert!((r.value - std::f64::consts::LN_2).abs() < 1e-9, "a={a}");
        }
    }

    #[test]
    fn ac_mi_handles_point_mass_channel_rows() {
        // a deterministic row pins its surrogate row; updates stay on the support
        let ch = Channel::new(vec![vec![1.0, 0.0, 0.0], vec![0.2, 0.3, 0.5], vec![0.4, 0.6, 0.0]])
            .unwrap();
        let p = Distribution::new(vec![0.3, 0.4, 0.3]).unwrap();
        let cfg = AOConfig::default();
        for a in [0.6, 2.0] {
            let r = ac_mi(alpha(a), &p, &ch, &cfg).unwrap();
            assert!(r.value.is_finite(), "a={a}");
            assert!(r.value >= -1e-12);
            assert!(r.converged);
            let surrogate = r.optimizers.surrogate_channel.unwrap();
            assert_eq!(surrogate.get(0, 1), 0.0);
            assert_eq!(surrogate.get(0, 2), 0.0);
        }
    }

    #[test]
    fn nonconvergence_is_flagged_not_an_error() {
        let u = Distribution::uniform(3);
        let ch = example_channel();
        let cfg = AOConfig::default().with_max_iterations(2);
        let r = ac_mi(alpha(2.0), &u, &ch, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 2);
    }

    #[test]
    fn trace_matches_independent_objective_evaluators() {
        let p = Distribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let ch = example_channel();
        let cfg = AOConfig::default().with_trace(true).with_max_iterations(40);

        // above one: replay the AC iteration and re-evaluate each recorded value
        let al = alpha(1.8);
        let r = ac_mi(al, &p, &ch, &cfg).unwrap();
        let recorded = &r.trace.as_ref().unwrap().objectives;
        let mut surrogate = Channel::uniform(3, 3);
        for (k, &traced) in recorded.iter().enumerate() {
            let reverse = steps::posterior_step(&p, &surrogate);
            let (fresh, _) = steps::ac_surrogate_step_above_one(al, &ch, &reverse);
            surrogate = fresh;
            let full = crate::functionals::objective_ac_max(al, &p, &ch, &surrogate, &reverse);
            assert!((full - traced).abs() < 1e-12, "cycle {k}: {full} vs {traced}");
        }

        // below one
        let al = alpha(0.6);
        let r = ac_mi(al, &p, &ch, &cfg).unwrap();
        let recorded = &r.trace.as_ref().unwrap().objectives;
        let mut surrogate = Channel::uniform(3, 3);
        for (k, &traced) in recorded.iter().enumerate() {
            let output = steps::ac_output_step(&p, &surrogate);
            let (fresh, _) = steps::ac_surrogate_step_below_one(al, &ch, &output);
            surrogate = fresh;
            let full = crate::functionals::objective_ac_min(al, &p, &ch, &surrogate, &output);
            assert!((full - traced).abs() < 1e-12, "cycle {k}: {full} vs {traced}");
        }

        // lp def: recorded objective is the product-form divergence
        let al = alpha(1.8);
        let r = lp_mi_def_ao(al, &p, &ch, &cfg).unwrap();
        let recorded = &r.trace.as_ref().unwrap().objectives;
        let q_x = r.optimizers.input_dist.unwrap();
        let q_y = r.optimizers.output_dist.unwrap();
        let full = crate::functionals::objective_lp_product(al, &p, &ch, &q_x, &q_y);
        assert!((full - recorded.last().unwrap()).abs() < 1e-12);

        // lp vc, both regimes: final trace value matches the full objective
        for a in [0.6, 1.8] {
            let al = alpha(a);
            let r = lp_mi_vc_ao(al, &p, &ch, &cfg).unwrap();
            let recorded = &r.trace.as_ref().unwrap().objectives;
            let joint = r.optimizers.surrogate_joint.clone().unwrap();
            let full = if al.is_above_one() {
                let reverse = r.optimizers.reverse_channel.clone().unwrap();
                crate::functionals::objective_lp_max(al, &p, &ch, &joint, &reverse)
            } else {
                let output = r.optimizers.output_dist.clone().unwrap();
                crate::functionals::objective_lp_min(al, &p, &ch, &joint, &output)
            };
            assert!(
                (full - recorded.last().unwrap()).abs() < 1e-12,
                "a={a}: {full} vs {}",
                recorded.last().unwrap()
            );
        }
    }

    #[test]
    fn traces_are_monotone_in_their_stated_direction() {
        let p = Distribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let ch = example_channel();
        let cfg = AOConfig::default().with_trace(true);
        for a in [0.6, 1.8] {
            let al = alpha(a);
            let ac = ac_mi(al, &p, &ch, &cfg).unwrap();
            let increasing = al.is_above_one();
            assert!(
                ac.trace.unwrap().worst_monotonicity_violation(increasing) <= 1e-12,
                "ac a={a}"
            );
            let lp = lp_mi_def_ao(al, &p, &ch, &cfg).unwrap();
            assert!(lp.trace.unwrap().worst_monotonicity_violation(false) <= 1e-12);
            let vc = lp_mi_vc_ao(al, &p, &ch, &cfg).unwrap();
            assert!(
                vc.trace.unwrap().worst_monotonicity_violation(increasing) <= 1e-12,
                "lp vc a={a}"
            );
        }
    }

    #[test]
    fn fixed_point_is_stable_under_one_more_cycle() {
        let p = Distribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let ch = example_channel();
        // near the optimum the objective gain is second order in the
        // iterate step, so pushing the iterate below 1e-8 needs a stop
        // well beyond the default
        let cfg = AOConfig::default().with_tolerance(1e-15);
        let al = alpha(2.0);
        let r = ac_mi(al, &p, &ch, &cfg).unwrap();
        let surrogate = r.optimizers.surrogate_channel.unwrap();
        let reverse = steps::posterior_step(&p, &surrogate);
        let (again, _) = steps::ac_surrogate_step_above_one(al, &ch, &reverse);
        assert!(surrogate.sup_distance(&again) <= 1e-8);
    }

    #[test]
    fn config_validation_bites() {
        let u = Distribution::uniform(2);
        let ch = Channel::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
        let bad = AOConfig::default().with_tolerance(0.0);
        assert!(matches!(
            ac_mi(alpha(2.0), &u, &ch, &bad),
            Err(Error::InvalidConfig(_))
        ));
        let bad = AOConfig::default().with_max_iterations(0);
        assert!(matches!(
            lp_mi_def_ao(alpha(2.0), &u, &ch, &bad),
            Err(Error::InvalidConfig(_))
        ));
        let mismatched = AOConfig::default()
            .with_initialization(Initialization::Custom(InitPoint::Input(u.clone())));
        assert!(matches!(
            lp_mi_vc_ao(alpha(2.0), &u, &ch, &mismatched),
            Err(Error::IncompatibleInit(_))
        ));
    }
}
