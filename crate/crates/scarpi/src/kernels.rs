//! Scarpi integral/derivative kernels in the Laplace domain.
//!
//! For an admissible order law with transform A(s), the integral kernel has
//! the symbol Psi(s) = s^(-sA(s)) and the derivative kernel
//! Phi(s) = s^(sA(s)-1). Their product is 1/s, which is the Laplace form of
//! the Sonine property: the time kernels convolve to the constant one, and
//! the derivative is a left inverse of the integral. Time-domain kernel
//! values come from Talbot inversion; [`KernelPair::sonine_residual`]
//! verifies the convolution identity numerically with a quadrature graded
//! into both weakly singular endpoints.

use num_complex::Complex64;

use crate::curve::{validate_grid, CurveSamples, Quantity};
use crate::error::{Error, Result};
use crate::inversion::{principal_power, talbot_invert, InversionConfig, LaplaceSymbol};
use crate::transition::TransitionFunction;

/// Which of the two kernels to address.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelSide {
    /// Integral kernel psi, symbol s^(-sA(s)).
    Psi,
    /// Derivative kernel phi, symbol s^(sA(s)-1).
    Phi,
}

/// The kernel pair associated with one order law.
#[derive(Clone, Debug)]
pub struct KernelPair {
    transition: TransitionFunction,
    psi_hat: LaplaceSymbol,
    phi_hat: LaplaceSymbol,
}

/// Builds the kernel pair for a validated order law.
pub fn build_kernels(transition: &TransitionFunction) -> Result<KernelPair> {
    transition.ensure_valid()?;
    let cuts = transition.cut_points();
    let psi_transition = transition.clone();
    let psi_hat = LaplaceSymbol::new(0.0, cuts.clone(), move |s| {
        let w = psi_transition.order_symbol(s)?;
        principal_power(s, -w)
    });
    let phi_transition = transition.clone();
    let phi_hat = LaplaceSymbol::new(0.0, cuts, move |s| {
        let w = phi_transition.order_symbol(s)?;
        principal_power(s, w - Complex64::new(1.0, 0.0))
    });
    Ok(KernelPair {
        transition: transition.clone(),
        psi_hat,
        phi_hat,
    })
}

// Graded Sonine quadrature: split [0, t] at t/2, geometric cells (ratio 1/2,
// up to 20 levels) toward each singular endpoint, Gauss-Legendre nodes per
// cell. Kernel values below MIN_NODE are never requested; the remaining mass
// is estimated from the known endpoint exponents alpha(0+) - 1 and
// -alpha(0+).
const SONINE_LEVELS: u32 = 20;
const MIN_NODE: f64 = 1e-6;

const GL8: [(f64, f64); 8] = [
    (-0.9602898564975363, 0.1012285362903763),
    (-0.7966664774136267, 0.2223810344533745),
    (-0.5255324099163290, 0.3137066458778873),
    (-0.1834346424956498, 0.3626837833783620),
    (0.1834346424956498, 0.3626837833783620),
    (0.5255324099163290, 0.3137066458778873),
    (0.7966664774136267, 0.2223810344533745),
    (0.9602898564975363, 0.1012285362903763),
];

impl KernelPair {
    pub fn transition(&self) -> &TransitionFunction {
        &self.transition
    }

    pub fn psi_hat(&self) -> &LaplaceSymbol {
        &self.psi_hat
    }

    pub fn phi_hat(&self) -> &LaplaceSymbol {
        &self.phi_hat
    }

    fn symbol(&self, side: KernelSide) -> &LaplaceSymbol {
        match side {
            KernelSide::Psi => &self.psi_hat,
            KernelSide::Phi => &self.phi_hat,
        }
    }

    /// Time-domain kernel values on a strictly increasing positive grid,
    /// each point recovered by Talbot inversion.
    pub fn time_values(
        &self,
        side: KernelSide,
        t_grid: &[f64],
        cfg: &InversionConfig,
    ) -> Result<CurveSamples> {
        validate_grid(t_grid)?;
        let symbol = self.symbol(side);
        let mut values = Vec::with_capacity(t_grid.len());
        for &t in t_grid {
            let v = talbot_invert(symbol, t, cfg).map_err(|e| {
                Error::Numerical(format!("kernel inversion failed at t = {t}: {e}"))
            })?;
            values.push(v);
        }
        let quantity = match side {
            KernelSide::Psi => Quantity::Psi,
            KernelSide::Phi => Quantity::Phi,
        };
        let echo = format!("quantity={} transition={}", quantity.label(), self.transition);
        CurveSamples::new(t_grid.to_vec(), values, quantity, echo)
    }

    /// |(psi * phi)(t) - 1|, the time-domain Sonine defect at one instant.
    pub fn sonine_residual(&self, t: f64, cfg: &InversionConfig) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "sonine_residual requires t > 0, got t = {t}"
            )));
        }
        let half = t / 2.0;
        let levels = ((half / MIN_NODE).log2().floor() as i64).min(SONINE_LEVELS as i64);
        if levels < 1 {
            return Err(Error::Numerical(format!(
                "t = {t} is too small for the graded Sonine mesh (smallest node {MIN_NODE})"
            )));
        }
        let psi = |u: f64| talbot_invert(&self.psi_hat, u, cfg);
        let phi = |u: f64| talbot_invert(&self.phi_hat, u, cfg);

        let mut integral = 0.0;
        // left half: psi is weakly singular at tau = 0
        integral += graded_half(half, levels as u32, |tau| Ok(psi(tau)? * phi(t - tau)?))?;
        // right half in u = t - tau: phi is weakly singular at u = 0
        integral += graded_half(half, levels as u32, |u| Ok(psi(t - u)? * phi(u)?))?;

        // sub-node tails from the local power laws psi ~ C tau^(a0 - 1),
        // phi ~ C' u^(-a0), with a0 = alpha(0+); fitting C at the smallest
        // evaluated point turns each tail into value * node / exponent
        let a0 = self.transition.initial_order();
        let epsilon = half * 0.5f64.powi(levels as i32);
        integral += psi(epsilon)? * epsilon / a0 * phi(t)?;
        integral += phi(epsilon)? * epsilon / (1.0 - a0) * psi(t)?;

        if !integral.is_finite() {
            return Err(Error::Numerical(format!(
                "Sonine quadrature diverged at t = {t}"
            )));
        }
        Ok((integral - 1.0).abs())
    }

    /// Laplace-domain rule for the Scarpi derivative of f with transform F:
    /// s^(sA(s)) F(s) - s^(sA(s)-1) f(0+).
    pub fn derivative_transform(
        &self,
        transform: &LaplaceSymbol,
        f0: f64,
        s: Complex64,
    ) -> Result<Complex64> {
        let w = self.transition.order_symbol(s)?;
        let power = principal_power(s, w)?;
        Ok(power * transform.eval(s)? - self.phi_hat.eval(s)? * f0)
    }

    /// Laplace-domain rule for the Scarpi integral: s^(-sA(s)) F(s).
    pub fn integral_transform(&self, transform: &LaplaceSymbol, s: Complex64) -> Result<Complex64> {
        Ok(self.psi_hat.eval(s)? * transform.eval(s)?)
    }
}

/// Integral over (0, span] with geometric cells graded toward 0 and
/// Gauss-Legendre nodes per cell. The integrand is evaluated nowhere below
/// span * 2^-levels.
fn graded_half(span: f64, levels: u32, integrand: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut total = 0.0;
    for level in 0..levels {
        let hi = span * 0.5f64.powi(level as i32);
        let lo = hi / 2.0;
        let mid = 0.5 * (lo + hi);
        let half_width = 0.5 * (hi - lo);
        for (x, w) in GL8 {
            total += w * half_width * integrand(mid + half_width * x)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_exponential() -> TransitionFunction {
        TransitionFunction::Exponential {
            alpha1: 0.6,
            alpha2: 0.8,
            rate: 2.0,
        }
    }

    fn splitmix64(state: &mut u64) -> f64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn constant_order_symbols_are_power_laws() {
        let pair = build_kernels(&TransitionFunction::Constant { alpha: 0.3 }).unwrap();
        let s = Complex64::new(2.5, 1.5);
        let psi = pair.psi_hat().eval(s).unwrap();
        let phi = pair.phi_hat().eval(s).unwrap();
        let expected_psi = principal_power(s, Complex64::new(-0.3, 0.0)).unwrap();
        let expected_phi = principal_power(s, Complex64::new(-0.7, 0.0)).unwrap();
        assert!((psi - expected_psi).norm() < 1e-15);
        assert!((phi - expected_phi).norm() < 1e-15);
    }

    #[test]
    fn exponential_kernel_value_at_two() {
        // exponent -(alpha2 c + alpha1 s)/(c + s) = -0.7 at s = 2
        let pair = build_kernels(&fig1_exponential()).unwrap();
        let s = Complex64::new(2.0, 0.0);
        let psi = pair.psi_hat().eval(s).unwrap();
        assert!((psi.re - 0.6155722066724582).abs() < 1e-15, "got {psi}");
        let product = psi * pair.phi_hat().eval(s).unwrap();
        assert!((product.re - 0.5).abs() < 1e-15 && product.im.abs() < 1e-16);
    }

    #[test]
    fn sonine_identity_in_laplace_domain() {
        // psi_hat * phi_hat * s = 1 at pseudo-random s with Re in [0.1, 10]
        let variants = vec![
            TransitionFunction::Constant { alpha: 0.7 },
            fig1_exponential(),
            TransitionFunction::MittagLeffler {
                alpha1: 0.4,
                alpha2: 0.8,
                rate: 1.0,
                beta: 0.5,
            },
            TransitionFunction::ClampedLinear {
                slope: 0.1,
                intercept: 0.5,
                delta: 0.05,
            },
        ];
        let mut state = 0x5eed_5eed_5eed_5eedu64;
        for f in &variants {
            let pair = build_kernels(f).unwrap();
            for _ in 0..100 {
                let re = 0.1 + 9.9 * splitmix64(&mut state);
                let im = -10.0 + 20.0 * splitmix64(&mut state);
                let s = Complex64::new(re, im);
                let product = pair.psi_hat().eval(s).unwrap() * pair.phi_hat().eval(s).unwrap() * s;
                let residual = (product - Complex64::new(1.0, 0.0)).norm();
                assert!(residual <= 1e-12, "{f} at s = {s}: residual {residual}");
            }
        }
    }

    #[test]
    fn invalid_transition_is_rejected() {
        let bad = TransitionFunction::Exponential {
            alpha1: 0.6,
            alpha2: 1.2,
            rate: 2.0,
        };
        assert!(matches!(
            build_kernels(&bad),
            Err(Error::InvalidTransition(_))
        ));
    }

    #[test]
    fn constant_order_time_kernels_match_closed_forms() {
        // psi(t) = t^(alpha-1)/Gamma(alpha), phi(t) = t^(-alpha)/Gamma(1-alpha)
        let alpha = 0.5;
        let pair = build_kernels(&TransitionFunction::Constant { alpha }).unwrap();
        let cfg = InversionConfig::default();
        let grid: Vec<f64> = (0..25)
            .map(|i| 0.1 * 10f64.powf(2.0 * i as f64 / 24.0))
            .collect();
        let psi = pair.time_values(KernelSide::Psi, &grid, &cfg).unwrap();
        let phi = pair.time_values(KernelSide::Phi, &grid, &cfg).unwrap();
        let gamma_half = std::f64::consts::PI.sqrt();
        for (i, &t) in grid.iter().enumerate() {
            let psi_ref = t.powf(alpha - 1.0) / gamma_half;
            let phi_ref = t.powf(-alpha) / gamma_half;
            assert!(
                ((psi.values()[i] - psi_ref) / psi_ref).abs() <= 1e-6,
                "psi at t = {t}"
            );
            assert!(
                ((phi.values()[i] - phi_ref) / phi_ref).abs() <= 1e-6,
                "phi at t = {t}"
            );
        }
        // spot values: 1/Gamma(1/2) and 4^(-1/2)/Gamma(1/2)
        let one = pair.time_values(KernelSide::Psi, &[1.0], &cfg).unwrap();
        assert!((one.values()[0] - 0.5641895835477563).abs() < 1e-7);
        let four = pair.time_values(KernelSide::Phi, &[4.0], &cfg).unwrap();
        assert!((four.values()[0] - 0.2820947917738781).abs() < 1e-7);
    }

    #[test]
    fn dual_inverters_agree_on_exponential_kernel() {
        let pair = build_kernels(&fig1_exponential()).unwrap();
        let cfg = InversionConfig::default();
        for t in [0.5, 1.0, 5.0] {
            let talbot = talbot_invert(pair.psi_hat(), t, &cfg).unwrap();
            let stehfest = crate::inversion::stehfest_invert(pair.psi_hat(), t, &cfg).unwrap();
            assert!(
                ((talbot - stehfest) / talbot).abs() <= 1e-4,
                "t = {t}: {talbot} vs {stehfest}"
            );
        }
    }

    #[test]
    fn sonine_residual_constant_order() {
        // Beta-function identity: residual at quadrature precision
        let pair = build_kernels(&TransitionFunction::Constant { alpha: 0.5 }).unwrap();
        let r = pair.sonine_residual(1.0, &InversionConfig::default()).unwrap();
        assert!(r <= 1e-6, "residual {r}");
    }

    #[test]
    fn sonine_residual_exponential_transition() {
        let pair = build_kernels(&fig1_exponential()).unwrap();
        let cfg = InversionConfig::default();
        for t in [1.0, 5.0] {
            let r = pair.sonine_residual(t, &cfg).unwrap();
            assert!(r <= 1e-3, "t = {t}: residual {r}");
        }
    }

    #[test]
    fn kernels_positive_on_reference_window() {
        let pair = build_kernels(&fig1_exponential()).unwrap();
        let cfg = InversionConfig::default();
        let grid: Vec<f64> = (0..30)
            .map(|i| 0.05 * 1000f64.powf(i as f64 / 29.0))
            .collect();
        for side in [KernelSide::Psi, KernelSide::Phi] {
            let curve = pair.time_values(side, &grid, &cfg).unwrap();
            for (&t, &v) in grid.iter().zip(curve.values()) {
                assert!(v > 0.0, "{side:?} at t = {t}: {v}");
            }
        }
    }

    #[test]
    fn derivative_rule_examples() {
        let pair = build_kernels(&fig1_exponential()).unwrap();
        let unit_step = LaplaceSymbol::entire_left(|s| Ok(1.0 / s));

        // derivative of the constant 1 vanishes: s^w/s - phi_hat * 1 = 0
        let s = Complex64::new(1.7, 0.9);
        let d = pair.derivative_transform(&unit_step, 1.0, s).unwrap();
        assert!(d.norm() < 1e-14, "got {d}");

        // f(t) = t with f0 = 0 under a constant order: s^(alpha - 2)
        let constant = build_kernels(&TransitionFunction::Constant { alpha: 0.4 }).unwrap();
        let ramp = LaplaceSymbol::entire_left(|s| Ok(1.0 / (s * s)));
        let d = constant.derivative_transform(&ramp, 0.0, s).unwrap();
        let expected = principal_power(s, Complex64::new(0.4 - 2.0, 0.0)).unwrap();
        assert!((d - expected).norm() < 1e-14);

        // frozen value 2^(0.7 - 1) at s = 2
        let d = pair
            .derivative_transform(&unit_step, 0.0, Complex64::new(2.0, 0.0))
            .unwrap();
        assert!((d.re - 0.8122523963562356).abs() < 1e-15, "got {d}");
    }

    #[test]
    fn integral_rule_examples() {
        let constant = build_kernels(&TransitionFunction::Constant { alpha: 0.9 }).unwrap();
        let unit_step = LaplaceSymbol::entire_left(|s| Ok(1.0 / s));
        let v = constant
            .integral_transform(&unit_step, Complex64::new(1.0, 0.0))
            .unwrap();
        assert!((v.re - 1.0).abs() < 1e-15 && v.im.abs() < 1e-16);

        let pair = build_kernels(&fig1_exponential()).unwrap();
        let v = pair
            .integral_transform(&unit_step, Complex64::new(2.0, 0.0))
            .unwrap();
        assert!((v.re - 0.3077861033362291).abs() < 1e-15, "got {v}");
    }

    #[test]
    fn derivative_is_left_inverse_of_integral() {
        // derivative_transform(integral_transform(F), f0 = 0) returns F(s)
        let pair = build_kernels(&fig1_exponential()).unwrap();
        let rational = |s: Complex64| (s + 1.5) / (s * s + 3.0 * s + 2.5);
        let pair_in_closure = pair.clone();
        let integrated = LaplaceSymbol::entire_left(move |s| {
            let base = LaplaceSymbol::entire_left(move |q| Ok(rational(q)));
            pair_in_closure.integral_transform(&base, s)
        });
        let mut state = 0xabcd_ef01_2345_6789u64;
        for _ in 0..50 {
            let s = Complex64::new(
                0.2 + 8.0 * splitmix64(&mut state),
                -6.0 + 12.0 * splitmix64(&mut state),
            );
            let recovered = pair.derivative_transform(&integrated, 0.0, s).unwrap();
            let expected = rational(s);
            assert!(
                (recovered - expected).norm() <= 1e-13 * expected.norm().max(1.0),
                "s = {s}"
            );
        }
    }
}
