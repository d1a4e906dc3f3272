//! Variable-order fractional Maxwell model.
//!
//! Constitutive law sigma + a1 D^alpha(t) sigma = b1 D^alpha(t) epsilon in
//! dimensionless time, with a1 dimensionless and b1 carrying the stress
//! scale. a1 = 0 selects the Scott Blair sub-model. The dimensionless
//! material functions are
//!
//!   Gd(s) = s^(sA(s)-1) / (1 + a1 s^(sA(s)))      (relaxation modulus)
//!   Jd(s) = (1 + a1 s^(sA(s))) / s^(sA(s)+1)      (creep compliance)
//!
//! tied together by the reciprocity s^2 Gd(s) Jd(s) = 1. Time-domain curves
//! come from Talbot inversion; constant-order closed forms (Mittag-Leffler
//! and power laws) serve as reduction references.

use num_complex::Complex64;

use crate::curve::{validate_grid, CurveSamples, Quantity};
use crate::error::{Error, Result};
use crate::inversion::{principal_power, talbot_invert, InversionConfig, LaplaceSymbol};
use crate::special::{gamma_fn, mittag_leffler, MlArgument};
use crate::transition::TransitionFunction;

/// Coefficients of the constitutive law plus the display time scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellParams {
    a1: f64,
    b1: f64,
    time_scale: f64,
}

impl MaxwellParams {
    /// `a1 >= 0` (0 selects Scott Blair), `b1 > 0`, `time_scale > 0`.
    /// All computation happens in dimensionless time; `time_scale` only
    /// rescales displayed time columns.
    pub fn new(a1: f64, b1: f64, time_scale: f64) -> Result<Self> {
        if !(a1 >= 0.0) || !a1.is_finite() {
            return Err(Error::Domain(format!(
                "a1 must be a finite nonnegative real, got {a1}"
            )));
        }
        if !(b1 > 0.0) || !b1.is_finite() {
            return Err(Error::Domain(format!(
                "b1 must be a finite positive stress scale, got {b1}"
            )));
        }
        if !(time_scale > 0.0) || !time_scale.is_finite() {
            return Err(Error::Domain(format!(
                "time scale must be a finite positive real, got {time_scale}"
            )));
        }
        Ok(Self { a1, b1, time_scale })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn time_scale(&self) -> f64 {
        self.time_scale
    }
}

/// Step-input experiment description.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Constant strain epsilon0; the stress history is measured.
    Relaxation,
    /// Constant stress sigma0; the strain history is measured.
    Creep,
}

/// A step experiment with its initial data. The initial values may satisfy
/// the constraint a1 sigma(0+) = b1 epsilon(0+), in which case the response
/// reduces to the material functions themselves; unconstrained data are
/// served through the generalized creep transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepExperiment {
    pub kind: ExperimentKind,
    pub amplitude: f64,
    pub initial_stress: f64,
    pub initial_strain: f64,
}

impl StepExperiment {
    fn validate(&self) -> Result<()> {
        if self.amplitude == 0.0 || !self.amplitude.is_finite() {
            return Err(Error::Domain(
                "step experiment requires a nonzero finite amplitude".into(),
            ));
        }
        let held = match self.kind {
            ExperimentKind::Relaxation => self.initial_strain,
            ExperimentKind::Creep => self.initial_stress,
        };
        if (held - self.amplitude).abs() > 1e-12 * self.amplitude.abs() {
            return Err(Error::Domain(format!(
                "the held quantity must start at the step amplitude: got {held} vs {}",
                self.amplitude
            )));
        }
        Ok(())
    }

    fn is_constrained(&self, params: &MaxwellParams) -> bool {
        let lhs = params.a1 * self.initial_stress;
        let rhs = params.b1 * self.initial_strain;
        (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1e-300)
    }
}

fn check_a1(a1: f64) -> Result<()> {
    if !(a1 >= 0.0) || !a1.is_finite() {
        return Err(Error::Domain(format!(
            "a1 must be a finite nonnegative real, got {a1}"
        )));
    }
    Ok(())
}

/// Laplace transform of the dimensionless relaxation modulus.
pub fn g_hat_d(
    transition: &TransitionFunction,
    a1: f64,
    s: Complex64,
) -> Result<Complex64> {
    check_a1(a1)?;
    let w = transition.order_symbol(s)?;
    let power = principal_power(s, w)?;
    let denom = Complex64::new(1.0, 0.0) + a1 * power;
    // no zeros exist for a1 >= 0 on the contour region; guard anyway
    if denom.norm() <= 1e-300 {
        return Err(Error::Numerical(format!(
            "vanishing denominator 1 + a1 s^(sA(s)) at s = {s}"
        )));
    }
    Ok(power / s / denom)
}

/// Laplace transform of the dimensionless creep compliance; satisfies
/// s^2 Gd(s) Jd(s) = 1 identically.
pub fn j_hat_d(
    transition: &TransitionFunction,
    a1: f64,
    s: Complex64,
) -> Result<Complex64> {
    check_a1(a1)?;
    let w = transition.order_symbol(s)?;
    let power = principal_power(s, w)?;
    Ok((Complex64::new(1.0, 0.0) + a1 * power) / (power * s))
}

/// Laplace transform of the generalized creep function J*: the strain
/// response to a stress step sigma0 from the initial strain eps0, without
/// assuming the constrained initial data.
pub fn j_star_hat(
    transition: &TransitionFunction,
    params: &MaxwellParams,
    sigma0: f64,
    eps0: f64,
    s: Complex64,
) -> Result<Complex64> {
    if sigma0 == 0.0 || !sigma0.is_finite() {
        return Err(Error::Domain(
            "creep transform requires a nonzero stress step sigma0".into(),
        ));
    }
    let w = transition.order_symbol(s)?;
    let power = principal_power(s, w)?;
    let ratio = params.b1 * eps0 / sigma0;
    Ok((Complex64::new(1.0, 0.0) + ratio * power) / (power * s) / params.b1)
}

/// The dimensionless relaxation modulus as an invertible symbol.
pub fn g_d_symbol(transition: &TransitionFunction, a1: f64) -> Result<LaplaceSymbol> {
    transition.ensure_valid()?;
    check_a1(a1)?;
    let f = transition.clone();
    Ok(LaplaceSymbol::new(0.0, transition.cut_points(), move |s| {
        g_hat_d(&f, a1, s)
    }))
}

/// The dimensionless creep compliance as an invertible symbol.
pub fn j_d_symbol(transition: &TransitionFunction, a1: f64) -> Result<LaplaceSymbol> {
    transition.ensure_valid()?;
    check_a1(a1)?;
    let f = transition.clone();
    Ok(LaplaceSymbol::new(0.0, transition.cut_points(), move |s| {
        j_hat_d(&f, a1, s)
    }))
}

fn invert_grid(symbol: &LaplaceSymbol, t_grid: &[f64], cfg: &InversionConfig) -> Result<Vec<f64>> {
    let mut values = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let v = talbot_invert(symbol, t, cfg)
            .map_err(|e| Error::Numerical(format!("inversion failed at t = {t}: {e}")))?;
        values.push(v);
    }
    Ok(values)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Monotonicity {
    NonIncreasing,
    NonDecreasing,
}

/// Positivity plus monotonicity within a 1e-9 relative tolerance for
/// quadrature noise.
fn check_shape(t_grid: &[f64], values: &[f64], direction: Monotonicity, label: &str) -> Result<()> {
    let mut previous: Option<f64> = None;
    for (&t, &v) in t_grid.iter().zip(values) {
        if !(v > 0.0) {
            return Err(Error::Numerical(format!(
                "{label} must stay positive, got {v} at t = {t}"
            )));
        }
        if let Some(p) = previous {
            let ok = match direction {
                Monotonicity::NonIncreasing => v <= p * (1.0 + 1e-9),
                Monotonicity::NonDecreasing => v >= p * (1.0 - 1e-9),
            };
            if !ok {
                return Err(Error::Numerical(format!(
                    "{label} monotonicity violated at t = {t}: {v} after {p}"
                )));
            }
        }
        previous = Some(v);
    }
    Ok(())
}

/// Dimensionless relaxation modulus Gd(t) on a grid; positive and
/// nonincreasing by construction, verified on the computed values.
pub fn relaxation_modulus(
    transition: &TransitionFunction,
    a1: f64,
    t_grid: &[f64],
    cfg: &InversionConfig,
) -> Result<CurveSamples> {
    validate_grid(t_grid)?;
    let symbol = g_d_symbol(transition, a1)?;
    let values = invert_grid(&symbol, t_grid, cfg)?;
    check_shape(t_grid, &values, Monotonicity::NonIncreasing, "Gd")?;
    let echo = format!(
        "quantity=Gd transition={transition} a1={a1} nodes={} contour_scale={}",
        cfg.node_count(),
        cfg.contour_scale()
    );
    CurveSamples::new(t_grid.to_vec(), values, Quantity::Gd, echo)
}

/// Dimensionless creep compliance Jd(t) on a grid; positive and
/// nondecreasing.
pub fn creep_compliance(
    transition: &TransitionFunction,
    a1: f64,
    t_grid: &[f64],
    cfg: &InversionConfig,
) -> Result<CurveSamples> {
    validate_grid(t_grid)?;
    let symbol = j_d_symbol(transition, a1)?;
    let values = invert_grid(&symbol, t_grid, cfg)?;
    check_shape(t_grid, &values, Monotonicity::NonDecreasing, "Jd")?;
    let echo = format!(
        "quantity=Jd transition={transition} a1={a1} nodes={} contour_scale={}",
        cfg.node_count(),
        cfg.contour_scale()
    );
    CurveSamples::new(t_grid.to_vec(), values, Quantity::Jd, echo)
}

/// Stress or strain history of a step experiment.
///
/// Relaxation: sigma(t) = epsilon0 b1 Gd(t) under the constrained initial
/// data, a1 sigma(0+) Gd(t) otherwise. Creep: strain by inversion of
/// sigma0 J*(s).
pub fn run_step_experiment(
    transition: &TransitionFunction,
    params: &MaxwellParams,
    experiment: &StepExperiment,
    t_grid: &[f64],
    cfg: &InversionConfig,
) -> Result<CurveSamples> {
    transition.ensure_valid()?;
    experiment.validate()?;
    validate_grid(t_grid)?;
    match experiment.kind {
        ExperimentKind::Relaxation => {
            let scale = if experiment.is_constrained(params) {
                experiment.amplitude * params.b1
            } else {
                params.a1 * experiment.initial_stress
            };
            let modulus = relaxation_modulus(transition, params.a1, t_grid, cfg)?;
            let values = modulus.values().iter().map(|g| scale * g).collect();
            let echo = format!(
                "quantity=stress experiment=relaxation amplitude={} transition={transition} \
                 a1={} b1={} T={}",
                experiment.amplitude,
                params.a1,
                params.b1,
                params.time_scale
            );
            CurveSamples::new(t_grid.to_vec(), values, Quantity::Stress, echo)
        }
        ExperimentKind::Creep => {
            let sigma0 = experiment.amplitude;
            let eps0 = experiment.initial_strain;
            let f = transition.clone();
            let p = *params;
            let symbol = LaplaceSymbol::new(0.0, transition.cut_points(), move |s| {
                j_star_hat(&f, &p, sigma0, eps0, s)
            });
            let values: Vec<f64> = invert_grid(&symbol, t_grid, cfg)?
                .into_iter()
                .map(|j| sigma0 * j)
                .collect();
            let echo = format!(
                "quantity=strain experiment=creep amplitude={sigma0} eps0={eps0} \
                 transition={transition} a1={} b1={} T={}",
                params.a1, params.b1, params.time_scale
            );
            CurveSamples::new(t_grid.to_vec(), values, Quantity::Strain, echo)
        }
    }
}

/// Constant-order reference model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceModel {
    Maxwell,
    ScottBlair,
}

/// Which material function of the reference model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaterialFunction {
    RelaxationModulus,
    CreepCompliance,
}

/// Constant-order closed forms of the dimensionless material functions:
/// Maxwell Gd = E_alpha(-t^alpha/a1)/a1, Jd = t^alpha/Gamma(alpha+1) + a1;
/// Scott Blair Gd = t^(-alpha)/Gamma(1-alpha), Jd = t^alpha/Gamma(alpha+1).
pub fn constant_order_reference(
    model: ReferenceModel,
    which: MaterialFunction,
    alpha: f64,
    a1: f64,
    t: f64,
) -> Result<f64> {
    // alpha = 1 is admitted: E_1 = exp recovers the ordinary Maxwell model
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "reference formulas require alpha in (0, 1], got {alpha}"
        )));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "reference formulas require t > 0, got {t} \
             (the Scott Blair modulus diverges at t = 0)"
        )));
    }
    match (model, which) {
        (ReferenceModel::Maxwell, MaterialFunction::RelaxationModulus) => {
            if !(a1 > 0.0) {
                return Err(Error::Domain(format!(
                    "the Maxwell reference requires a1 > 0, got {a1}"
                )));
            }
            let arg = MlArgument::new(alpha, -t.powf(alpha) / a1)?;
            Ok(mittag_leffler(&arg)? / a1)
        }
        (ReferenceModel::Maxwell, MaterialFunction::CreepCompliance) => {
            if !(a1 > 0.0) {
                return Err(Error::Domain(format!(
                    "the Maxwell reference requires a1 > 0, got {a1}"
                )));
            }
            Ok(t.powf(alpha) / gamma_fn(alpha + 1.0)? + a1)
        }
        (ReferenceModel::ScottBlair, MaterialFunction::RelaxationModulus) => {
            Ok(t.powf(-alpha) / gamma_fn(1.0 - alpha)?)
        }
        (ReferenceModel::ScottBlair, MaterialFunction::CreepCompliance) => {
            Ok(t.powf(alpha) / gamma_fn(alpha + 1.0)?)
        }
    }
}
