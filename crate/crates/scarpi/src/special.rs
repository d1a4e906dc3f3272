//! Gamma function and the one-parameter Mittag-Leffler function.
//!
//! Only the completely monotone branch E_beta(z) with beta in (0, 1] and
//! z <= 0 is provided; that is all the order laws and the constant-order
//! material functions need. Evaluation is hybrid: the power series where it
//! is well conditioned, otherwise numerical inversion of the closed-form
//! Laplace transform s^(beta-1)/(s^beta + |z|) through the same Talbot
//! engine the rest of the crate uses.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inversion::{principal_power, talbot_invert, InversionConfig, LaplaceSymbol};

/// Lanczos coefficients, g = 7, 9 terms (the GSL set). Positive arguments
/// only, so no reflection branch.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma function for x > 0 via the Lanczos approximation.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "gamma_fn requires x > 0, got x = {x}"
        )));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc)
}

/// Argument pair of the one-parameter Mittag-Leffler function, restricted to
/// the completely monotone branch: beta in (0, 1], z <= 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MlArgument {
    beta: f64,
    z: f64,
}

impl MlArgument {
    pub fn new(beta: f64, z: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::Domain(format!(
                "Mittag-Leffler parameter beta must lie in (0, 1], got {beta}"
            )));
        }
        if !(z <= 0.0) || !z.is_finite() {
            return Err(Error::Domain(format!(
                "Mittag-Leffler argument z must be a finite nonpositive real, got {z}"
            )));
        }
        Ok(Self { beta, z })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Largest |z| at which the alternating power series keeps roughly eleven
/// significant digits. Its peak term grows like exp(|z|^(1/beta)), so the
/// cutoff 10^beta pins the peak at e^10; the flat cap of 5 applies where the
/// series is comfortable anyway (beta close to 1).
fn series_radius(beta: f64) -> f64 {
    10f64.powf(beta).min(5.0)
}

/// E_beta(z) on the completely monotone branch.
///
/// Series evaluation for small |z|, Laplace inversion of
/// s^(beta-1)/(s^beta + |z|) at t = 1 beyond the series radius (valid since
/// E_beta(-lambda t^beta) at t = 1 is E_beta(-lambda)).
pub fn mittag_leffler(arg: &MlArgument) -> Result<f64> {
    if arg.z == 0.0 {
        return Ok(1.0);
    }
    if -arg.z <= series_radius(arg.beta) {
        ml_series(arg.beta, arg.z)
    } else {
        ml_from_inversion(arg.beta, arg.z, &InversionConfig::default())
    }
}

/// Power series sum_k z^k / Gamma(beta k + 1) with term-ratio stopping at
/// 1e-15. Alternating for z < 0; cancellation limits it to |z| below
/// [`series_radius`], which callers must respect for full accuracy.
pub fn ml_series(beta: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut z_pow = 1.0;
    for k in 1..=600 {
        z_pow *= z;
        let term = z_pow / gamma_fn(beta * k as f64 + 1.0)?;
        sum += term;
        if term.abs() <= 1e-15 * sum.abs().max(1e-290) {
            return Ok(sum);
        }
    }
    Err(Error::Numerical(format!(
        "Mittag-Leffler series did not converge for beta = {beta}, z = {z}"
    )))
}

/// E_beta(z) by Talbot inversion of its Laplace transform at t = 1.
///
/// For beta < 1 the transform is analytic off the negative real axis; for
/// beta = 1 it has the simple pole at z itself, declared as a cut point.
pub fn ml_from_inversion(beta: f64, z: f64, cfg: &InversionConfig) -> Result<f64> {
    let lambda = -z;
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "inversion route requires z < 0, got z = {z}"
        )));
    }
    let (abscissa, cuts) = if beta == 1.0 {
        (-lambda, vec![-lambda])
    } else {
        (0.0, Vec::new())
    };
    let symbol = LaplaceSymbol::new(abscissa, cuts, move |s| {
        let s_beta = principal_power(s, Complex64::new(beta, 0.0))?;
        Ok(s_beta / s / (s_beta + lambda))
    });
    let value = talbot_invert(&symbol, 1.0, cfg)?;
    // Underflow flush: the true value is positive but may sit below the
    // quadrature noise floor (e.g. E_1(-40)); mirror exp() and return 0.
    if value < 0.0 && value.abs() < 1e-12 {
        return Ok(0.0);
    }
    Ok(value)
}
