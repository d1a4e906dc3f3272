//! Order laws alpha(t) and their exact Laplace transforms A(s).
//!
//! An admissible order law maps [0, inf) into (0, 1), is locally integrable
//! (condition i), has an explicitly known Laplace transform (condition ii),
//! and a finite limit alpha(0+) in (0, 1) (condition iii). Four families are
//! provided: a constant order (the degenerate case that recovers classical
//! constant-order operators), an exponential transition, a Mittag-Leffler
//! transition, and a clamped linear ramp whose plateau keeps the law inside
//! (0, 1).

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result, Violation};
use crate::special::{mittag_leffler, MlArgument};

/// A time-dependent differentiation order together with its closed-form
/// Laplace transform.
#[derive(Clone, Debug, PartialEq)]
pub enum TransitionFunction {
    /// alpha(t) = alpha for all t.
    Constant { alpha: f64 },
    /// alpha(t) = alpha2 + (alpha1 - alpha2) exp(-rate t).
    Exponential { alpha1: f64, alpha2: f64, rate: f64 },
    /// alpha(t) = alpha2 + (alpha1 - alpha2) E_beta(-rate t^beta).
    MittagLeffler {
        alpha1: f64,
        alpha2: f64,
        rate: f64,
        beta: f64,
    },
    /// alpha(t) = slope * t + intercept, clamped to the plateau
    /// 1 - delta * slope once the ramp would leave (0, 1).
    ClampedLinear { slope: f64, intercept: f64, delta: f64 },
}

fn in_unit_interval(x: f64) -> bool {
    x.is_finite() && x > 0.0 && x < 1.0
}

impl TransitionFunction {
    /// Default clamp margin: one percent of the ramp's full travel time.
    pub fn default_clamped_delta(slope: f64, intercept: f64) -> f64 {
        0.01 * (1.0 - intercept) / slope
    }

    /// Checks the admissibility conditions; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        fn order_violation(field: &'static str, value: f64, role: &str) -> Option<Violation> {
            (!in_unit_interval(value)).then(|| {
                Violation::new(
                    field,
                    format!("out of (0, 1): {role} must keep the order law inside (0, 1)"),
                )
            })
        }
        let mut violations = Vec::new();
        let mut check_order = |field: &'static str, value: f64, role: &str| {
            if let Some(v) = order_violation(field, value, role) {
                violations.push(v);
            }
        };
        match *self {
            Self::Constant { alpha } => {
                check_order("alpha", alpha, "the constant order (condition (iii))");
            }
            Self::Exponential {
                alpha1,
                alpha2,
                rate,
            } => {
                check_order("alpha1", alpha1, "the initial order alpha(0+) (condition (iii))");
                check_order("alpha2", alpha2, "the late-time order");
                if !(rate > 0.0) || !rate.is_finite() {
                    violations.push(Violation::new(
                        "c",
                        format!(
                            "must be a positive transition rate, got {rate}; otherwise the \
                             law is unbounded and A(s) (condition (ii)) fails on Re(s) > 0"
                        ),
                    ));
                }
            }
            Self::MittagLeffler {
                alpha1,
                alpha2,
                rate,
                beta,
            } => {
                check_order("alpha1", alpha1, "the initial order alpha(0+) (condition (iii))");
                check_order("alpha2", alpha2, "the late-time order");
                if !(rate > 0.0) || !rate.is_finite() {
                    violations.push(Violation::new(
                        "c",
                        format!("must be a positive transition rate, got {rate}"),
                    ));
                }
                if !in_unit_interval(beta) {
                    violations.push(Violation::new(
                        "beta",
                        format!("out of (0, 1): got {beta} for the relaxation order"),
                    ));
                }
            }
            Self::ClampedLinear {
                slope,
                intercept,
                delta,
            } => {
                if !(slope > 0.0) || !slope.is_finite() {
                    violations.push(Violation::new(
                        "a",
                        format!("must be a positive slope, got {slope}"),
                    ));
                }
                check_order("b", intercept, "the initial order alpha(0+) (condition (iii))");
                if !(delta > 0.0) || !delta.is_finite() {
                    violations.push(Violation::new(
                        "delta",
                        format!("must be a positive clamp margin, got {delta}"),
                    ));
                } else if slope > 0.0 && in_unit_interval(intercept) {
                    if delta >= (1.0 - intercept) / slope {
                        violations.push(Violation::new(
                            "delta",
                            format!(
                                "must satisfy delta < (1 - b)/a = {}, got {delta}; the clamp \
                                 would engage before the ramp starts",
                                (1.0 - intercept) / slope
                            ),
                        ));
                    } else if !in_unit_interval(1.0 - delta * slope) {
                        violations.push(Violation::new(
                            "delta",
                            format!(
                                "plateau 1 - delta*a = {} leaves (0, 1)",
                                1.0 - delta * slope
                            ),
                        ));
                    }
                }
            }
        }
        violations
    }

    /// Validation as a `Result`, for call sites that need a hard gate.
    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidTransition(violations))
        }
    }

    /// The order law evaluated at t >= 0.
    pub fn alpha_at(&self, t: f64) -> f64 {
        assert!(t >= 0.0, "alpha_at requires t >= 0, got {t}");
        match *self {
            Self::Constant { alpha } => alpha,
            Self::Exponential {
                alpha1,
                alpha2,
                rate,
            } => alpha2 + (alpha1 - alpha2) * (-rate * t).exp(),
            Self::MittagLeffler {
                alpha1,
                alpha2,
                rate,
                beta,
            } => {
                let arg = MlArgument::new(beta, -rate * t.powf(beta))
                    .expect("validated transition gives an admissible ML argument");
                let relaxation = mittag_leffler(&arg)
                    .expect("Mittag-Leffler evaluation converges on the monotone branch");
                alpha2 + (alpha1 - alpha2) * relaxation
            }
            Self::ClampedLinear {
                slope,
                intercept,
                delta,
            } => {
                let ramp_end = (1.0 - intercept) / slope - delta;
                if t <= ramp_end {
                    slope * t + intercept
                } else {
                    1.0 - delta * slope
                }
            }
        }
    }

    /// alpha(0+).
    pub fn initial_order(&self) -> f64 {
        match *self {
            Self::Constant { alpha } => alpha,
            Self::Exponential { alpha1, .. } | Self::MittagLeffler { alpha1, .. } => alpha1,
            Self::ClampedLinear { intercept, .. } => intercept,
        }
    }

    /// Limit of alpha(t) as t grows without bound.
    pub fn late_time_order(&self) -> f64 {
        match *self {
            Self::Constant { alpha } => alpha,
            Self::Exponential { alpha2, .. } | Self::MittagLeffler { alpha2, .. } => alpha2,
            Self::ClampedLinear { slope, delta, .. } => 1.0 - delta * slope,
        }
    }

    /// The product s A(s), i.e. the exponent of the Scarpi symbol s^(sA(s)),
    /// in the numerically stable per-variant closed form.
    pub fn order_symbol(&self, s: Complex64) -> Result<Complex64> {
        if s.re == 0.0 && s.im == 0.0 {
            return Err(Error::Domain(
                "transform evaluation at the pole s = 0".into(),
            ));
        }
        if !s.is_finite() {
            return Err(Error::Domain(format!("non-finite Laplace variable {s}")));
        }
        match *self {
            Self::Constant { alpha } => Ok(Complex64::new(alpha, 0.0)),
            Self::Exponential {
                alpha1,
                alpha2,
                rate,
            } => {
                let denom = s + rate;
                if denom.re == 0.0 && denom.im == 0.0 {
                    return Err(Error::Domain(format!(
                        "transform evaluation at the excluded singularity s = {}",
                        -rate
                    )));
                }
                Ok((alpha2 * rate + alpha1 * s) / denom)
            }
            Self::MittagLeffler {
                alpha1,
                alpha2,
                rate,
                beta,
            } => {
                // rational in s^beta, continued off its series disc; the
                // principal branch of s^beta keeps s^beta + c zero-free
                let s_beta = crate::inversion::principal_power(s, Complex64::new(beta, 0.0))?;
                let denom = s_beta + rate;
                if denom.re == 0.0 && denom.im == 0.0 {
                    return Err(Error::Domain(format!(
                        "transform evaluation at a zero of s^beta + c (s = {s})"
                    )));
                }
                Ok((alpha2 * rate + alpha1 * s_beta) / denom)
            }
            Self::ClampedLinear {
                slope,
                intercept,
                delta,
            } => {
                let ramp_end = (1.0 - intercept) / slope - delta;
                // s A(s) = b + (a/s) (1 - exp(-ramp_end * s))
                let correction = -expm1_complex(-ramp_end * s) / s;
                Ok(intercept + slope * correction)
            }
        }
    }

    /// Exact Laplace transform A(s) of the order law.
    pub fn laplace_transform(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.order_symbol(s)? / s)
    }

    /// Isolated singularities of A(s) on the negative real axis, excluding
    /// the origin. Only the exponential law has one (the essential point at
    /// s = -c of the associated kernels); the Mittag-Leffler denominator
    /// s^beta + c has no zeros on the principal branch for beta in (0, 1),
    /// and the clamped ramp's transform is entire apart from s = 0.
    pub fn cut_points(&self) -> Vec<f64> {
        match *self {
            Self::Exponential { rate, .. } => vec![-rate],
            _ => Vec::new(),
        }
    }
}

/// exp(z) - 1 without cancellation near z = 0.
fn expm1_complex(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = z;
        let mut sum = z;
        for k in 2..30 {
            term *= z / k as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm().max(1e-30) {
                break;
            }
        }
        sum
    } else {
        z.exp() - Complex64::new(1.0, 0.0)
    }
}

impl fmt::Display for TransitionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant { alpha } => write!(f, "constant(alpha={alpha})"),
            Self::Exponential {
                alpha1,
                alpha2,
                rate,
            } => write!(f, "exponential(alpha1={alpha1},alpha2={alpha2},c={rate})"),
            Self::MittagLeffler {
                alpha1,
                alpha2,
                rate,
                beta,
            } => write!(
                f,
                "mittag-leffler(alpha1={alpha1},alpha2={alpha2},c={rate},beta={beta})"
            ),
            Self::ClampedLinear {
                slope,
                intercept,
                delta,
            } => write!(f, "clamped-linear(a={slope},b={intercept},delta={delta})"),
        }
    }
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

    #[test]
    fn exponential_endpoints_and_midpoint() {
        let f = fig1_exponential();
        assert!((f.alpha_at(0.0) - 0.6).abs() < 1e-15);
        // alpha(1) = 0.8 - 0.2 exp(-2)
        let expected = 0.8 - 0.2 * (-2.0f64).exp();
        assert!((f.alpha_at(1.0) - expected).abs() < 1e-15);
        assert!((expected - 0.7729329433526775).abs() < 1e-15);
        assert!((f.alpha_at(1e6) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn degenerate_exponential_is_constant() {
        let f = TransitionFunction::Exponential {
            alpha1: 0.7,
            alpha2: 0.7,
            rate: 3.0,
        };
        for t in [0.0, 0.5, 2.0, 100.0] {
            assert_eq!(f.alpha_at(t), 0.7);
        }
    }

    #[test]
    fn laplace_transform_closed_forms() {
        let s = Complex64::new(2.0, 0.0);
        let constant = TransitionFunction::Constant { alpha: 0.7 };
        let a = constant.laplace_transform(s).unwrap();
        assert!((a.re - 0.35).abs() < 1e-15 && a.im == 0.0);

        // (alpha2 c + alpha1 s)/(s (c + s)) at s = 1
        let a = fig1_exponential()
            .laplace_transform(Complex64::new(1.0, 0.0))
            .unwrap();
        assert!((a.re - 2.2 / 3.0).abs() < 1e-15, "got {a}");

        // Mittag-Leffler law at s = 4, beta = 1/2: s^beta = 2
        let ml = TransitionFunction::MittagLeffler {
            alpha1: 0.4,
            alpha2: 0.8,
            rate: 1.0,
            beta: 0.5,
        };
        let a = ml.laplace_transform(Complex64::new(4.0, 0.0)).unwrap();
        assert!((a.re - (0.8 + 0.4 * 2.0) / 12.0).abs() < 1e-15, "got {a}");
    }

    #[test]
    fn validate_accepts_reference_parameters() {
        assert!(fig1_exponential().validate().is_empty());
        assert!(TransitionFunction::MittagLeffler {
            alpha1: 0.4,
            alpha2: 0.8,
            rate: 1.0,
            beta: 0.5,
        }
        .validate()
        .is_empty());
    }

    #[test]
    fn validate_flags_out_of_range_order() {
        let f = TransitionFunction::Exponential {
            alpha1: 0.6,
            alpha2: 1.2,
            rate: 2.0,
        };
        let violations = f.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].field, "alpha2");
        assert!(violations[0].to_string().contains("out of (0, 1)"));
    }

    #[test]
    fn validate_flags_oversized_clamp_margin() {
        // (1 - b)/a = 5 < delta = 6
        let f = TransitionFunction::ClampedLinear {
            slope: 0.1,
            intercept: 0.5,
            delta: 6.0,
        };
        let violations = f.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].field, "delta");
        assert!(violations[0].message.contains("(1 - b)/a"));
    }

    #[test]
    fn clamped_linear_ramp_and_plateau() {
        let f = TransitionFunction::ClampedLinear {
            slope: 0.1,
            intercept: 0.5,
            delta: 0.05,
        };
        assert!((f.alpha_at(0.0) - 0.5).abs() < 1e-15);
        assert!((f.alpha_at(1.0) - 0.6).abs() < 1e-15);
        // ramp ends at (1 - 0.5)/0.1 - 0.05 = 4.95; plateau 1 - 0.005
        assert!((f.alpha_at(10.0) - 0.995).abs() < 1e-15);
        assert_eq!(f.late_time_order(), 0.995);
    }

    #[test]
    fn excluded_points_are_domain_errors() {
        let f = fig1_exponential();
        let err = f.laplace_transform(Complex64::new(-2.0, 0.0)).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("-2"), "message: {msg}"),
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(f.laplace_transform(Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn exponential_law_solves_its_relaxation_equation() {
        // alpha'(t) + c alpha(t) - c alpha2 = 0, alpha' by central differences
        let f = fig1_exponential();
        let h = 1e-4;
        let mut t = h;
        while t < 5.0 {
            let derivative = (f.alpha_at(t + h) - f.alpha_at(t - h)) / (2.0 * h);
            let residual = derivative + 2.0 * f.alpha_at(t) - 2.0 * 0.8;
            assert!(residual.abs() <= 1e-8, "t = {t}: residual {residual}");
            t += 0.05;
        }
    }

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let (l0, l1) = (lo.log10(), hi.log10());
        (0..n)
            .map(|i| 10f64.powf(l0 + (l1 - l0) * i as f64 / (n - 1) as f64))
            .collect()
    }

    #[test]
    fn monotone_between_its_limits() {
        let variants: Vec<TransitionFunction> = vec![
            fig1_exponential(),
            TransitionFunction::Exponential {
                alpha1: 0.8,
                alpha2: 0.3,
                rate: 1.0,
            },
            TransitionFunction::MittagLeffler {
                alpha1: 0.4,
                alpha2: 0.8,
                rate: 1.0,
                beta: 0.5,
            },
            TransitionFunction::MittagLeffler {
                alpha1: 0.9,
                alpha2: 0.2,
                rate: 2.0,
                beta: 0.25,
            },
            TransitionFunction::ClampedLinear {
                slope: 0.1,
                intercept: 0.5,
                delta: 0.05,
            },
        ];
        for f in &variants {
            let (a0, a_inf) = (f.initial_order(), f.late_time_order());
            let (lo, hi) = (a0.min(a_inf), a0.max(a_inf));
            let increasing = a_inf >= a0;
            let mut previous = f.alpha_at(0.0);
            for &t in &log_grid(1e-3, 1e3, 1000) {
                let a = f.alpha_at(t);
                assert!(
                    (lo - 1e-12..=hi + 1e-12).contains(&a),
                    "{f}: alpha({t}) = {a} outside [{lo}, {hi}]"
                );
                if increasing {
                    assert!(a >= previous - 1e-12, "{f}: not nondecreasing at t = {t}");
                } else {
                    assert!(a <= previous + 1e-12, "{f}: not nonincreasing at t = {t}");
                }
                previous = a;
            }
        }
    }

    /// Forward-quadrature oracle: integrate exp(-st) alpha(t) over [0, T]
    /// with T = 40/s on geometrically graded panels (8-node Gauss-Legendre
    /// each), then add the analytic tail alpha_inf exp(-sT)/s.
    fn forward_transform_oracle(f: &TransitionFunction, s: f64) -> f64 {
        const GL: [(f64, f64); 8] = [
            (-0.9602898564975363, 0.1012285362903763),
            (-0.7966664774136267, 0.2223810344533745),
            (-0.5255324099163290, 0.3137066458778873),
            (-0.1834346424956498, 0.3626837833783620),
            (0.1834346424956498, 0.3626837833783620),
            (0.5255324099163290, 0.3137066458778873),
            (0.7966664774136267, 0.2223810344533745),
            (0.9602898564975363, 0.1012285362903763),
        ];
        let t_max = 40.0 / s;
        // graded toward 0 (the Mittag-Leffler law has a t^beta cusp there);
        // a ramp kink becomes an extra panel edge
        let mut edges: Vec<f64> = vec![0.0];
        edges.extend((0..=40).map(|m| t_max * 0.5f64.powi(40 - m)));
        if let TransitionFunction::ClampedLinear {
            slope,
            intercept,
            delta,
        } = f
        {
            let kink = (1.0 - intercept) / slope - delta;
            if kink < t_max {
                edges.push(kink);
                edges.sort_by(f64::total_cmp);
            }
        }
        let mut integral = 0.0;
        for pair in edges.windows(2) {
            let mid = 0.5 * (pair[0] + pair[1]);
            let half = 0.5 * (pair[1] - pair[0]);
            for (x, w) in GL {
                let t = mid + half * x;
                integral += w * half * (-s * t).exp() * f.alpha_at(t);
            }
        }
        integral + f.late_time_order() * (-s * t_max).exp() / s
    }

    #[test]
    fn transform_matches_forward_quadrature() {
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
        for f in &variants {
            for s in [0.5, 1.0, 2.0, 5.0] {
                let quadrature = forward_transform_oracle(f, s);
                let closed = f.laplace_transform(Complex64::new(s, 0.0)).unwrap();
                assert!(closed.im.abs() < 1e-14);
                assert!(
                    ((closed.re - quadrature) / quadrature).abs() <= 1e-6,
                    "{f} at s = {s}: closed {} vs quadrature {quadrature}",
                    closed.re
                );
            }
        }
    }
}
