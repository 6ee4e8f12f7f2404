//! Rényi-order information measures and capacity solvers for finite
//! discrete channels.
//!
//! The crate computes the four classical order-α generalizations of mutual
//! information — Sibson, Arimoto, Augustin–Csiszár, and Lapidoth–Pfister —
//! together with the corresponding channel capacities. Sibson and Arimoto
//! information have closed forms built on the Gallager exponent function;
//! the other two, and every capacity, are computed by alternating
//! optimization (AO) over blocks of distributions, each block update in
//! closed form. Every AO run produces a monotone objective trace that can
//! be recorded and inspected.
//!
//! Quantities are in nats throughout (natural logarithms), and all sums of
//! powered probabilities are accumulated in the log domain so that large
//! orders on small probabilities do not underflow.
//!
//! Module map:
//! - [`prob`]: probability vectors, channels, joints, and the validated
//!   order parameter [`AlphaParam`].
//! - [`measures`]: entropies, divergences, the Gallager exponent, and
//!   Shannon mutual information.
//! - [`functionals`]: standalone evaluators for the variational objectives
//!   the solvers optimize.
//! - [`steps`]: the individual closed-form block updates.
//! - [`mi`]: mutual-information solvers (closed forms and AO).
//! - [`capacity`]: capacity solvers S1, JO, C, and LP.
//! - [`oracle`]: brute-force simplex-grid references and a finite-difference
//!   stationarity checker, kept independent of the solver code paths.
//! - [`rng`]: a small deterministic generator for seeded random instances.

pub mod capacity;
mod driver;
pub mod error;
pub mod functionals;
pub mod logdomain;
pub mod measures;
pub mod mi;
pub mod oracle;
pub mod prob;
pub mod reference;
pub mod rng;
pub mod steps;

pub use capacity::{
    capacity_c, capacity_jo, capacity_lp, capacity_s1, run_capacity, AlgorithmId, CapacityResult,
};
pub use error::{Error, Result};
pub use measures::{
    arimoto_conditional_entropy, gallager_e0, kl_divergence, renyi_divergence, renyi_entropy,
    shannon_entropy, shannon_mi, tilted_distribution, ProbabilityMass,
};
pub use mi::{
    ac_mi, arimoto_mi_closed, lp_mi_def_ao, lp_mi_vc_ao, sibson_mi_closed, sibson_minimizer_qy,
    AOConfig, AOTrace, InitPoint, Initialization, MIResult, Optimizers, Termination,
};
pub use oracle::{
    exhaustive_joint_min, grid_min_over_simplex, verify_stationarity, GridSpec, Sense,
    StationarityReport,
};
pub use prob::{AlphaParam, Channel, Distribution, JointDistribution};
pub use reference::example_channel_3x3;
pub use rng::{random_channel, random_distribution, SplitMix64};
