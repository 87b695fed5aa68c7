//! Helix lifts into the Lorentzian product of a line with a Riemannian space
//! form: a fiber helix traversed at constant speed while the line coordinate
//! advances linearly.
//!
//! The lift multiplies the fiber curvature by `ε₁ + d₁²` and mixes curvature
//! and torsion into the lifted torsion; it never produces the degenerate
//! combination `ε₁κ² + ε₃τ² = 0`, and it is `r`-harmonic exactly when the
//! fiber helix is.

use serde::Serialize;
use thiserror::Error;

use crate::metric::Sign;
use crate::scalar::{from_usize, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProductError {
    #[error("arc-length constraint violated: eps1 + d1^2 = {got} must be positive")]
    ArcLength { got: f64 },
    #[error("torsion constraint violated: eps3*(tau_alpha^2 - eps1 d1^2 kappa_alpha^2) = {got} must be positive")]
    TorsionSign { got: f64 },
    #[error("fiber curvatures must be positive")]
    NonPositiveFiberCurvature,
    #[error("the product criterion needs a curved fiber (c != 0)")]
    FlatFiber,
}

/// Slope constant and fiber helix data describing one lift.
#[derive(Clone, Copy, Debug)]
pub struct ProductLift {
    pub d1: f64,
    pub kappa_alpha: f64,
    pub tau_alpha: f64,
    pub eps1: Sign,
    pub eps3: Sign,
}

/// Curvatures and signs of the lifted helix; the normal is always
/// space-like.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LiftedHelix {
    pub kappa: f64,
    pub tau: f64,
    pub d2: f64,
    pub eps: (i64, i64, i64),
    /// `ε₁κ² + ε₃τ² = (d₁² + ε₁)(κ_α² + τ_α²)`, certified nonzero.
    pub curvature_combination: f64,
}

/// Computes the lifted curvature pair
/// `κ = (ε₁ + d₁²) κ_α`, `τ = sqrt(ε₃ (ε₁ + d₁²)(τ_α² - ε₁ d₁² κ_α²))`.
pub fn lift_to_product(lift: &ProductLift) -> Result<LiftedHelix, ProductError> {
    if !(lift.kappa_alpha > 0.0 && lift.tau_alpha > 0.0) {
        return Err(ProductError::NonPositiveFiberCurvature);
    }
    let e1 = lift.eps1.as_f64();
    let d = e1 + lift.d1 * lift.d1;
    if !(d > 0.0) {
        return Err(ProductError::ArcLength { got: d });
    }
    let torsion_core = lift.eps3.as_f64()
        * (lift.tau_alpha * lift.tau_alpha - e1 * lift.d1 * lift.d1 * lift.kappa_alpha * lift.kappa_alpha);
    if !(torsion_core > 0.0) {
        return Err(ProductError::TorsionSign { got: torsion_core });
    }
    let kappa = d * lift.kappa_alpha;
    let tau = (d * torsion_core).sqrt();
    let combination = (lift.d1 * lift.d1 + e1)
        * (lift.kappa_alpha * lift.kappa_alpha + lift.tau_alpha * lift.tau_alpha);
    Ok(LiftedHelix {
        kappa,
        tau,
        d2: d.sqrt(),
        eps: (lift.eps1.value(), 1, lift.eps3.value()),
        curvature_combination: combination,
    })
}

/// Exact squared version of [`lift_to_product`] on rational data.
pub fn lift_squares<S: Scalar>(
    d1_sq: &S,
    kappa_alpha_sq: &S,
    tau_alpha_sq: &S,
    eps1: Sign,
    eps3: Sign,
) -> (S, S) {
    let d = eps1.apply(S::one()) + d1_sq.clone();
    let kappa_sq = d.clone() * d.clone() * kappa_alpha_sq.clone();
    let tau_sq = eps3.apply(
        d * (tau_alpha_sq.clone() - eps1.apply(d1_sq.clone() * kappa_alpha_sq.clone())),
    );
    (kappa_sq, tau_sq)
}

/// Two-sided `r`-harmonicity certificate for a lift: the condition evaluated
/// on the lifted curvatures and the condition on the fiber helix, which agree
/// up to the positive factor `(ε₁ + d₁²)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductHarmonicCheck<S> {
    pub lifted_value: S,
    pub fiber_value: S,
    pub lifted_zero: bool,
    pub fiber_zero: bool,
    pub agree: bool,
    /// `(ε₁ + d₁²)²`, the exact ratio between the two sides.
    pub scale: S,
}

impl<S> ProductHarmonicCheck<S> {
    pub fn is_r_harmonic(&self) -> bool {
        self.lifted_zero && self.fiber_zero
    }
}

/// Evaluates both sides of the product `r`-harmonicity criterion on exact
/// data.
///
/// Lifted side: `κ⁴ + 2κ²ε₁ε₃τ² + τ⁴ - c (κ²(r-1+d₁²ε₁) + (d₁²+ε₁)ε₃τ²)`.
/// Fiber side: `(κ_α²+τ_α²)² - c ((r-1)κ_α² + τ_α²)`. Both must vanish
/// together; `agree` additionally certifies the exact ratio.
pub fn product_r_harmonic_check<S: Scalar>(
    d1_sq: &S,
    kappa_alpha_sq: &S,
    tau_alpha_sq: &S,
    eps1: Sign,
    eps3: Sign,
    c: &S,
    r: u32,
) -> Result<ProductHarmonicCheck<S>, ProductError> {
    if c.is_zero() {
        return Err(ProductError::FlatFiber);
    }
    let (kappa_sq, tau_sq) = lift_squares(d1_sq, kappa_alpha_sq, tau_alpha_sq, eps1, eps3);
    let r_minus_1 = from_usize::<S>(r as usize - 1);

    let cross = (eps1 * eps3).apply(kappa_sq.clone() * tau_sq.clone());
    let lifted_value = kappa_sq.clone() * kappa_sq.clone()
        + cross.clone()
        + cross
        + tau_sq.clone() * tau_sq.clone()
        - c.clone()
            * (kappa_sq.clone() * (r_minus_1.clone() + eps1.apply(d1_sq.clone()))
                + (d1_sq.clone() + eps1.apply(S::one())) * eps3.apply(tau_sq.clone()));

    let fiber_sum = kappa_alpha_sq.clone() + tau_alpha_sq.clone();
    let fiber_value = fiber_sum.clone() * fiber_sum
        - c.clone() * (r_minus_1 * kappa_alpha_sq.clone() + tau_alpha_sq.clone());

    let d = eps1.apply(S::one()) + d1_sq.clone();
    let scale = d.clone() * d;
    let lifted_zero = lifted_value.is_zero();
    let fiber_zero = fiber_value.is_zero();
    let agree = lifted_value == scale.clone() * fiber_value.clone();
    Ok(ProductHarmonicCheck {
        lifted_value,
        fiber_value,
        lifted_zero,
        fiber_zero,
        agree,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use num_traits::Zero;

    use super::*;
    use crate::exact::rat_int;
    use crate::exact::Rat;
    use crate::metric::Signature;
    use crate::tension::{tension_field_scaled, SpaceFormCurvature};

    #[test]
    fn lift_example_with_timelike_slope() {
        let lift = ProductLift {
            d1: 2f64.sqrt(),
            kappa_alpha: 1.0,
            tau_alpha: 2.0,
            eps1: Sign::Minus,
            eps3: Sign::Plus,
        };
        let lifted = lift_to_product(&lift).unwrap();
        assert!((lifted.kappa - 1.0).abs() < 1e-14);
        assert!((lifted.tau - 6f64.sqrt()).abs() < 1e-14);
        assert!((lifted.d2 - 1.0).abs() < 1e-14);
        assert!((lifted.curvature_combination - 5.0).abs() < 1e-14);
    }

    #[test]
    fn trivial_lift_keeps_the_fiber_data() {
        let lift = ProductLift {
            d1: 0.0,
            kappa_alpha: 1.5,
            tau_alpha: 0.5,
            eps1: Sign::Plus,
            eps3: Sign::Plus,
        };
        let lifted = lift_to_product(&lift).unwrap();
        assert!((lifted.kappa - 1.5).abs() < 1e-14);
        assert!((lifted.tau - 0.5).abs() < 1e-14);
    }

    #[test]
    fn boundary_slope_is_rejected() {
        let lift = ProductLift {
            d1: 1.0,
            kappa_alpha: 1.0,
            tau_alpha: 2.0,
            eps1: Sign::Minus,
            eps3: Sign::Plus,
        };
        assert!(matches!(
            lift_to_product(&lift),
            Err(ProductError::ArcLength { .. })
        ));
    }

    #[test]
    fn lift_never_hits_the_degenerate_combination() {
        // scaled check: ε₁κ² + ε₃τ² = (d₁²+ε₁)(κ_α²+τ_α²) > 0
        let d1_sq = Rational64::new(9, 4);
        let (kappa_sq, tau_sq) = lift_squares(
            &d1_sq,
            &Rational64::new(1, 2),
            &Rational64::new(3, 1),
            Sign::Minus,
            Sign::Plus,
        );
        let combo = -kappa_sq + tau_sq; // ε₁ = -1, ε₃ = +1
        let expected = (d1_sq - Rational64::new(1, 1))
            * (Rational64::new(1, 2) + Rational64::new(3, 1));
        assert_eq!(combo, expected);
    }

    #[test]
    fn both_sides_agree_and_detect_solutions() {
        // fiber solution of the order-2 criterion: κ_α² = τ_α² = 1/2, c = 1
        let check = product_r_harmonic_check(
            &rat_int(2),
            &Rat::new(1.into(), 2.into()),
            &Rat::new(1.into(), 2.into()),
            Sign::Minus,
            Sign::Plus,
            &rat_int(1),
            2,
        )
        .unwrap();
        assert!(check.agree);
        assert!(check.is_r_harmonic());

        // random-ish non-solution: both sides nonzero, still proportional
        let check = product_r_harmonic_check(
            &rat_int(3),
            &Rat::new(2.into(), 3.into()),
            &Rat::new(5.into(), 4.into()),
            Sign::Plus,
            Sign::Plus,
            &rat_int(-2),
            4,
        )
        .unwrap();
        assert!(check.agree);
        assert!(!check.lifted_zero && !check.fiber_zero);
    }

    #[test]
    fn fiber_side_solution_passes_the_tension_oracle() {
        // the fiber condition at order two with κ_α² = τ_α² = 1/2, c = 1 is a
        // genuine biharmonic helix of the Riemannian fiber
        let sig = Signature::minimal_ambient_ints(&[1, 1, 1]).unwrap();
        let q = vec![Rat::new(1.into(), 2.into()), Rat::new(1.into(), 2.into())];
        let table = SpaceFormCurvature::new(rat_int(1), Sign::Plus);
        let t = tension_field_scaled(sig.eps(), &q, &table, 2).unwrap();
        assert!(t.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn flat_fiber_is_rejected() {
        assert!(matches!(
            product_r_harmonic_check(
                &rat_int(1),
                &rat_int(1),
                &rat_int(1),
                Sign::Plus,
                Sign::Plus,
                &rat_int(0),
                2
            ),
            Err(ProductError::FlatFiber)
        ));
    }
}
