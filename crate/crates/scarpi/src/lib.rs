//! Variable-order fractional operators in Scarpi's formulation, and the
//! variable-order fractional Maxwell model of linear viscoelasticity built
//! on them.
//!
//! The differentiation order is a function of time, alpha(t), drawn from a
//! family with a closed-form Laplace transform A(s). All operator action
//! happens in the Laplace domain through the symbols s^(+-sA(s)); time-domain
//! quantities (kernels, relaxation modulus, creep compliance, step-experiment
//! histories) are recovered by numerical inversion on a modified Talbot
//! contour, cross-checked by a Gaver-Stehfest sampler and by the
//! constant-order closed forms the model must reduce to.
//!
//! ```
//! use scarpi::{
//!     relaxation_modulus, InversionConfig, TransitionFunction,
//! };
//!
//! let order_law = TransitionFunction::Exponential {
//!     alpha1: 0.6,
//!     alpha2: 0.8,
//!     rate: 2.0,
//! };
//! let grid = [0.1, 1.0, 10.0];
//! let curve = relaxation_modulus(&order_law, 1.0, &grid, &InversionConfig::default()).unwrap();
//! assert!(curve.values()[0] > curve.values()[2]);
//! ```

mod curve;
mod error;
mod inversion;
mod kernels;
mod special;
mod transition;
mod viscoelastic;

pub use curve::{CurveSamples, Quantity};
pub use error::{Error, Result, Violation};
pub use inversion::{
    principal_power, stehfest_invert, talbot_invert, InversionConfig, LaplaceSymbol,
};
pub use kernels::{build_kernels, KernelPair, KernelSide};
pub use special::{gamma_fn, mittag_leffler, ml_from_inversion, ml_series, MlArgument};
pub use transition::TransitionFunction;
pub use viscoelastic::{
    constant_order_reference, creep_compliance, g_d_symbol, g_hat_d, j_d_symbol, j_hat_d,
    j_star_hat, relaxation_modulus, run_step_experiment, ExperimentKind, MaterialFunction,
    MaxwellParams, ReferenceModel, StepExperiment,
};

pub use num_complex::Complex64;
