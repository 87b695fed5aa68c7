//! Warped products of a time interval with a Riemannian space form
//! (Robertson-Walker space-times): connection and curvature rules at the
//! frame level, the tension of circles whose normal points along the time
//! axis, and the two ways such curves become `r`-harmonic.

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{decimal15, Rat};
use crate::frenet::scale_factors;
use crate::metric::Sign;
use crate::scalar::{from_usize, pow, Scalar};
use crate::tension::{tension_field_scaled, RwNormalCurvature, SpaceFormCurvature};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RwError {
    #[error("t0 = {t0} lies outside the domain ({lo}, {hi})")]
    OutsideDomain { t0: f64, lo: f64, hi: f64 },
    #[error("warping function must be positive, got f({t0}) = {f}")]
    NonPositiveWarp { t0: f64, f: f64 },
    #[error("t0 = {t0} is not a critical point of the warping function: f'(t0) = {df:e}")]
    NotCritical { t0: f64, df: f64 },
    #[error("fiber data invalid: {0}")]
    FiberData(String),
}

/// Warping function together with its first two derivatives.
pub enum Warping {
    /// `f(t) = t^λ` with an exact rational exponent, valid for `t > 0`.
    PowerLaw { lambda: Rational64 },
    Custom {
        f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
        df: Box<dyn Fn(f64) -> f64 + Send + Sync>,
        d2f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl Warping {
    /// `(f, f', f'')` at `t`.
    pub fn eval(&self, t: f64) -> (f64, f64, f64) {
        match self {
            Warping::PowerLaw { lambda } => {
                let l = *lambda.numer() as f64 / *lambda.denom() as f64;
                let f = t.powf(l);
                (f, l * t.powf(l - 1.0), l * (l - 1.0) * t.powf(l - 2.0))
            }
            Warping::Custom { f, df, d2f } => (f(t), df(t), d2f(t)),
        }
    }
}

/// Warped-product model: open time interval, warping function, and the
/// Riemannian fiber `(dimension m-1, curvature c)`.
pub struct RwModel {
    pub domain: (f64, f64),
    pub warp: Warping,
    pub fiber_dim: usize,
    pub fiber_curvature: f64,
}

impl RwModel {
    pub fn power_law(lambda: Rational64, fiber_dim: usize, fiber_curvature: f64) -> Self {
        RwModel {
            domain: (0.0, f64::INFINITY),
            warp: Warping::PowerLaw { lambda },
            fiber_dim,
            fiber_curvature,
        }
    }

    fn check_domain(&self, t0: f64) -> Result<(), RwError> {
        let (lo, hi) = self.domain;
        if !(t0 > lo && t0 < hi) {
            return Err(RwError::OutsideDomain { t0, lo, hi });
        }
        Ok(())
    }

    /// Deceleration parameter `q = -f f'' / f'²` at `t0`, `None` at critical
    /// points. Power laws give the constant `-(λ-1)/λ`.
    pub fn deceleration(&self, t0: f64) -> Option<f64> {
        let (f, df, d2f) = self.warp.eval(t0);
        if df == 0.0 {
            return None;
        }
        Some(-f * d2f / (df * df))
    }
}

/// Connection and curvature coefficient rules of a warped product at a fixed
/// time, for fields split into time and fiber parts.
#[derive(Clone, Copy, Debug)]
pub struct RwFrameRules {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
    pub fiber_curvature: f64,
}

impl RwFrameRules {
    pub fn at(model: &RwModel, t0: f64) -> Result<Self, RwError> {
        model.check_domain(t0)?;
        let (f, df, d2f) = model.warp.eval(t0);
        if !(f > 0.0) {
            return Err(RwError::NonPositiveWarp { t0, f });
        }
        Ok(RwFrameRules {
            f,
            df,
            d2f,
            fiber_curvature: model.fiber_curvature,
        })
    }

    /// Derivative of the time axis along itself vanishes.
    pub fn connection_time_time(&self) -> f64 {
        0.0
    }

    /// `∇_{∂t} X = ∇_X ∂t = (f'/f) X` for fiber fields: the coefficient.
    pub fn connection_time_fiber(&self) -> f64 {
        self.df / self.f
    }

    /// Time component `⟨X, Y⟩ f'/f` of the derivative of one fiber field
    /// along another.
    pub fn connection_fiber_fiber_time(&self, inner_xy: f64) -> f64 {
        inner_xy * self.df / self.f
    }

    /// Factor `(f'² + c) / f²` in front of the fiber-triple curvature.
    pub fn curvature_fiber_triple_factor(&self) -> f64 {
        (self.df * self.df + self.fiber_curvature) / (self.f * self.f)
    }

    /// `R(X, ∂t) ∂t = -(f''/f) X` for fiber `X`: the coefficient.
    pub fn curvature_fiber_time_time(&self) -> f64 {
        -self.d2f / self.f
    }

    /// `R(X, Y) ∂t = 0` for fiber `X`, `Y`.
    pub fn curvature_fiber_fiber_time(&self) -> f64 {
        0.0
    }

    /// Time component of `R(X, ∂t) Y = -(f''/f) ⟨X, Y⟩ ∂t`.
    pub fn curvature_fiber_time_fiber(&self, inner_xy: f64) -> f64 {
        -self.d2f / self.f * inner_xy
    }

    /// `f''/f`, the ratio entering the normal-along-time tension.
    pub fn warp_ratio(&self) -> f64 {
        self.d2f / self.f
    }

    /// Curvature table for the 2-frame with space-like tangent in the fiber
    /// and normal along the time axis.
    pub fn normal_time_table(&self) -> RwNormalCurvature<f64> {
        RwNormalCurvature {
            warp_ratio: self.warp_ratio(),
        }
    }
}

/// Normal coefficient of the order-`r` tension of a circle with normal along
/// the time axis: `-κ^{2r-3} (κ² + (r-1) f''/f)`.
pub fn rw_tension_normal(kappa: f64, r: u32, warp_ratio: f64) -> f64 {
    -kappa.powi(2 * r as i32 - 3) * (kappa * kappa + (r as f64 - 1.0) * warp_ratio)
}

/// Scaled-coefficient version of [`rw_tension_normal`] on exact data:
/// `-(κ²)^{r-2} (κ² + (r-1) f''/f)`.
pub fn rw_tension_normal_scaled<S: Scalar>(kappa_sq: &S, r: u32, warp_ratio: &S) -> S {
    -(pow(kappa_sq, r as usize - 2)
        * (kappa_sq.clone() + from_usize::<S>(r as usize - 1) * warp_ratio.clone()))
}

/// Exact agreement check between the closed form and the tension oracle run
/// against the warped-product curvature table.
pub fn rw_closed_form_matches_oracle(kappa_sq: &Rat, r: u32, warp_ratio: &Rat) -> bool {
    let eps = [Sign::Plus, Sign::Minus];
    let table = RwNormalCurvature {
        warp_ratio: warp_ratio.clone(),
    };
    let oracle = tension_field_scaled(&eps, std::slice::from_ref(kappa_sq), &table, r).unwrap();
    let closed = rw_tension_normal_scaled(kappa_sq, r, warp_ratio);
    oracle[0].is_zero() && oracle[1] == closed
}

/// Report of the stationary-fiber-curve criterion at `t0`.
#[derive(Clone, Debug, Serialize)]
pub struct RwHarmonicReport {
    pub feasible: bool,
    /// Curvature of the curve: `|f'(t0)| / f(t0)`.
    pub kappa: f64,
    pub kappa_decimal: String,
    /// Fiber speed `1 / f(t0)`.
    pub fiber_speed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deceleration: Option<f64>,
    /// Residual of `f'² + (r-1) f f''` at `t0`.
    pub residual: f64,
}

/// Whether the circle over a fiber geodesic at fixed time `t0` is proper
/// `r`-harmonic: `f'(t0) != 0` and `f'² + (r-1) f f'' = 0`.
///
/// Power-law warpings decide exactly on the exponent; custom warpings use a
/// relative tolerance on the defining combination.
pub fn rw_r_harmonic_check(
    model: &RwModel,
    t0: f64,
    r: u32,
    tol: f64,
) -> Result<RwHarmonicReport, RwError> {
    let rules = RwFrameRules::at(model, t0)?;
    let (f, df, d2f) = (rules.f, rules.df, rules.d2f);
    let residual = df * df + (r as f64 - 1.0) * f * d2f;
    let feasible = match &model.warp {
        Warping::PowerLaw { lambda } => {
            !lambda.is_zero() && power_law_r_harmonic(*lambda, r)
        }
        Warping::Custom { .. } => {
            let scale = (df * df).max(f * d2f.abs()).max(f64::MIN_POSITIVE);
            df != 0.0 && residual.abs() <= tol * scale
        }
    };
    let kappa = df.abs() / f;
    Ok(RwHarmonicReport {
        feasible,
        kappa,
        kappa_decimal: decimal15(kappa),
        fiber_speed: 1.0 / f,
        deceleration: model.deceleration(t0),
        residual,
    })
}

/// Exact power-law criterion: `f(t) = t^λ` satisfies
/// `f'² + (r-1) f f'' = (λ² + (r-1) λ (λ-1)) t^{2λ-2}`, which vanishes for a
/// nonzero exponent exactly at `λ = (r-1)/r`.
pub fn power_law_r_harmonic(lambda: Rational64, r: u32) -> bool {
    if lambda.is_zero() {
        return false;
    }
    let r_minus_1 = Rational64::from_integer(r as i64 - 1);
    let coeff = lambda * lambda + r_minus_1 * lambda * (lambda - Rational64::from_integer(1));
    coeff.is_zero()
}

/// Exact deceleration parameter of a power law: `q = -(λ-1)/λ`.
pub fn power_law_deceleration(lambda: Rational64) -> Option<Rational64> {
    if lambda.is_zero() {
        return None;
    }
    Some(-(lambda - Rational64::from_integer(1)) / lambda)
}

/// Two-sided rescaling identity at a critical time `t0`: the tension of the
/// fixed-time curve equals `f(t0)^{-2r}` times the tension of the fiber
/// helix reparametrized to unit speed.
#[derive(Clone, Debug, Serialize)]
pub struct RescalingCheck {
    /// Plain frame coefficients of the fixed-time curve's tension.
    pub lifted_coeffs: Vec<f64>,
    /// Plain coefficients of the rescaled fiber helix tension, divided by
    /// `f(t0)^{2r}` and re-expressed in the fixed-time curve's frame.
    pub predicted_coeffs: Vec<f64>,
    pub both_zero: bool,
    pub ratio_ok: bool,
}

/// Verifies the rescaling identity for a fiber helix with curvatures
/// `(κ_β, τ_β)` (`τ_β = 0` for a 2-frame fiber circle, `κ_β = 0` for a
/// geodesic, where both sides vanish identically). Requires
/// `|f'(t0)| <= 1e-12`.
pub fn rw_rescaling_check(
    model: &RwModel,
    t0: f64,
    fiber_kappa: f64,
    fiber_tau: Option<f64>,
    r: u32,
    tol: f64,
) -> Result<RescalingCheck, RwError> {
    let rules = RwFrameRules::at(model, t0)?;
    if rules.df.abs() > 1e-12 {
        return Err(RwError::NotCritical {
            t0,
            df: rules.df,
        });
    }
    if fiber_kappa == 0.0 && fiber_tau.is_none() {
        // geodesic fiber: every covariant power beyond the zeroth vanishes
        return Ok(RescalingCheck {
            lifted_coeffs: vec![0.0; 2],
            predicted_coeffs: vec![0.0; 2],
            both_zero: true,
            ratio_ok: true,
        });
    }
    if fiber_kappa <= 0.0 || fiber_tau.is_some_and(|t| t <= 0.0) {
        return Err(RwError::FiberData(
            "fiber curvatures must be positive".into(),
        ));
    }
    let f0 = rules.f;
    let c_fiber = model.fiber_curvature;

    // the fixed-time curve is a helix with curvatures scaled by 1/f0 in an
    // effective fiber of curvature c/f0²; all frame signs are positive
    let (eps, beta_q): (Vec<Sign>, Vec<f64>) = match fiber_tau {
        Some(tau) => (
            vec![Sign::Plus; 3],
            vec![fiber_kappa * fiber_kappa, tau * tau],
        ),
        None => (vec![Sign::Plus; 2], vec![fiber_kappa * fiber_kappa]),
    };
    let gamma_q: Vec<f64> = beta_q.iter().map(|q| q / (f0 * f0)).collect();

    let gamma_table = SpaceFormCurvature::new(c_fiber / (f0 * f0), Sign::Plus);
    let beta_table = SpaceFormCurvature::new(c_fiber, Sign::Plus);
    let gamma_scaled = tension_field_scaled(&eps, &gamma_q, &gamma_table, r).unwrap();
    let beta_scaled = tension_field_scaled(&eps, &beta_q, &beta_table, r).unwrap();

    let gamma_kappas: Vec<f64> = gamma_q.iter().map(|q| q.sqrt()).collect();
    let beta_kappas: Vec<f64> = beta_q.iter().map(|q| q.sqrt()).collect();
    let gamma_pi = scale_factors(&gamma_kappas);
    let beta_pi = scale_factors(&beta_kappas);

    let lifted_coeffs: Vec<f64> = gamma_scaled
        .iter()
        .zip(&gamma_pi)
        .map(|(c, p)| c * p)
        .collect();
    // τ_r(fixed-time curve) = f0^{-2r} τ_r(rescaled fiber helix); the fiber
    // frame vectors are f0 times the fixed-time ones, hence one extra f0
    let shift = f0.powi(-(2 * r as i32));
    let predicted_coeffs: Vec<f64> = beta_scaled
        .iter()
        .zip(&beta_pi)
        .map(|(c, p)| c * p * shift * f0)
        .collect();

    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let diff: f64 = lifted_coeffs
        .iter()
        .zip(&predicted_coeffs)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let scale = norm(&lifted_coeffs).max(norm(&predicted_coeffs)).max(1.0);
    Ok(RescalingCheck {
        both_zero: norm(&lifted_coeffs) <= tol && norm(&predicted_coeffs) <= tol,
        ratio_ok: diff <= tol * scale,
        lifted_coeffs,
        predicted_coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn power_model(n: i64, d: i64) -> RwModel {
        RwModel::power_law(Rational64::new(n, d), 3, 1.0)
    }

    #[test]
    fn connection_and_curvature_rules() {
        let model = RwModel {
            domain: (0.0, 10.0),
            warp: Warping::Custom {
                f: Box::new(|t| t * t),
                df: Box::new(|t| 2.0 * t),
                d2f: Box::new(|_| 2.0),
            },
            fiber_dim: 3,
            fiber_curvature: 0.0,
        };
        let rules = RwFrameRules::at(&model, 1.0).unwrap();
        assert_eq!(rules.connection_time_time(), 0.0);
        assert_eq!(rules.connection_time_fiber(), 2.0);
        assert_eq!(rules.curvature_fiber_time_time(), -2.0);
        assert_eq!(rules.curvature_fiber_fiber_time(), 0.0);
        assert_eq!(rules.curvature_fiber_time_fiber(3.0), -6.0);
        assert_eq!(rules.curvature_fiber_triple_factor(), 4.0);
    }

    #[test]
    fn tension_normal_spot_values() {
        assert_eq!(rw_tension_normal(1.0, 2, -1.0), 0.0);
        // affine warping: no proper solutions
        assert_eq!(rw_tension_normal(1.0, 3, 0.0), -1.0);
        let v = rw_tension_normal(2f64.sqrt(), 3, -1.0);
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_oracle_exactly() {
        for r in 2..=5 {
            for (q, w) in [
                (rat(1, 1), rat(-1, 1)),
                (rat(9, 4), rat(3, 2)),
                (rat(2, 3), rat(-5, 7)),
            ] {
                assert!(rw_closed_form_matches_oracle(&q, r, &w), "r={r}");
            }
        }
    }

    #[test]
    fn power_law_feasibility_is_exact() {
        for r in 2..=5u32 {
            let target = Rational64::new(r as i64 - 1, r as i64);
            let mut hits = 0;
            for num in 1..60i64 {
                let lambda = Rational64::new(num, 60);
                let expect = lambda == target;
                hits += expect as usize;
                assert_eq!(power_law_r_harmonic(lambda, r), expect, "r={r} λ={lambda}");
            }
            assert_eq!(hits, 1, "grid misses the solution for r={r}");
        }
    }

    #[test]
    fn power_law_reports() {
        // square-root warping is biharmonic everywhere with q = 1
        let model = power_model(1, 2);
        let report = rw_r_harmonic_check(&model, 4.0, 2, 1e-9).unwrap();
        assert!(report.feasible);
        assert!((report.kappa - 0.125).abs() < 1e-15);
        assert!((report.deceleration.unwrap() - 1.0).abs() < 1e-12);
        // two-thirds power is triharmonic with q = 1/2
        let model = power_model(2, 3);
        let report = rw_r_harmonic_check(&model, 2.0, 3, 1e-9).unwrap();
        assert!(report.feasible);
        assert!((report.deceleration.unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(
            power_law_deceleration(Rational64::new(2, 3)),
            Some(Rational64::new(1, 2))
        );
    }

    #[test]
    fn exponential_warping_never_works() {
        let model = RwModel {
            domain: (-10.0, 10.0),
            warp: Warping::Custom {
                f: Box::new(f64::exp),
                df: Box::new(f64::exp),
                d2f: Box::new(f64::exp),
            },
            fiber_dim: 3,
            fiber_curvature: 1.0,
        };
        for r in 2..=5 {
            let report = rw_r_harmonic_check(&model, 0.5, r, 1e-9).unwrap();
            assert!(!report.feasible, "r={r}");
            assert!(report.residual > 0.0);
        }
    }

    #[test]
    fn rescaling_identity_at_a_critical_time() {
        // f(t) = 2 + (t-1)²·(…) has a critical point at t = 1 with f = 2
        let model = RwModel {
            domain: (0.0, 2.0),
            warp: Warping::Custom {
                f: Box::new(|t| 2.0 + (t - 1.0) * (t - 1.0)),
                df: Box::new(|t| 2.0 * (t - 1.0)),
                d2f: Box::new(|_| 2.0),
            },
            fiber_dim: 3,
            fiber_curvature: 1.0,
        };
        // a geodesic fiber is trivially harmonic on both sides
        let check = rw_rescaling_check(&model, 1.0, 0.0, None, 2, 1e-9).unwrap();
        assert!(check.both_zero && check.ratio_ok);
        // fiber circle solving the rescaled biharmonic criterion:
        // κ_γ² = c_eff = 1/4, so κ_β = f0 κ_γ = 1
        let check = rw_rescaling_check(&model, 1.0, 1.0, None, 2, 1e-9).unwrap();
        assert!(check.both_zero);
        assert!(check.ratio_ok);
        // a non-solution still satisfies the exact ratio
        let check = rw_rescaling_check(&model, 1.0, 1.3, None, 2, 1e-9).unwrap();
        assert!(!check.both_zero);
        assert!(check.ratio_ok);
        // off-critical times are rejected
        assert!(matches!(
            rw_rescaling_check(&model, 1.5, 1.0, None, 2, 1e-9),
            Err(RwError::NotCritical { .. })
        ));
    }
}
