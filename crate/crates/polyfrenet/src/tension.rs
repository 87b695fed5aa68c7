//! Tension fields of order `r`: the brute-force recursion evaluating
//! `∇_T^{2r-1} T + Σ_{ℓ=0}^{r-2} (-1)^ℓ R(∇_T^{2r-3-ℓ} T, ∇_T^ℓ T) T`
//! over frame coefficients, plus closed-form bitension/tritension
//! expressions used to cross-validate it.
//!
//! The recursion never materializes ambient vectors: the curvature operator
//! enters through a [`FrameCurvature`] table expanded bilinearly over the
//! frame, which keeps the evaluation exact and geometry-agnostic. A curve is
//! `r`-harmonic iff the returned coefficient vector is zero.

use thiserror::Error;

use crate::frenet::{covariant_powers_scaled, scale_factors, Helix};
use crate::metric::Sign;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensionError {
    #[error("tension order r must be at least 1, got {got}")]
    OrderTooSmall { got: u32 },
    #[error("frame order {got} is below the minimum {min} for this expression")]
    FrameOrderTooSmall { got: usize, min: usize },
}

/// Frame-level curvature data of the ambient geometry: coefficients of
/// `R(F_a, F_b) F_1` along the frame, in the same scaled-coefficient
/// convention as the covariant-power recursion.
///
/// For every geometry implemented here the action lands on frame slots that
/// make the scaled and plain coefficients coincide, so implementations can
/// return the plain table.
pub trait FrameCurvature<S: Scalar> {
    /// Coefficients of `R(F_a, F_b) F_1`; `a`, `b` 0-based, output length `n`.
    fn tangent_action(&self, a: usize, b: usize, n: usize) -> Vec<S>;
}

/// Constant-curvature table: `R(F_a, F_b) F_1 = c (ε_1 δ_{b1} F_a - ε_1 δ_{a1} F_b)`.
#[derive(Clone, Debug)]
pub struct SpaceFormCurvature<S> {
    pub curvature: S,
    pub eps1: Sign,
}

impl<S: Scalar> SpaceFormCurvature<S> {
    pub fn new(curvature: S, eps1: Sign) -> Self {
        SpaceFormCurvature { curvature, eps1 }
    }
}

impl<S: Scalar> FrameCurvature<S> for SpaceFormCurvature<S> {
    fn tangent_action(&self, a: usize, b: usize, n: usize) -> Vec<S> {
        let mut out = vec![S::zero(); n];
        if a == b {
            return out;
        }
        if b == 0 {
            out[a] = self.eps1.apply(self.curvature.clone());
        } else if a == 0 {
            out[b] = -self.eps1.apply(self.curvature.clone());
        }
        out
    }
}

/// Warped-product table for a 2-frame with the normal along the time axis:
/// `R(F_2, F_1) F_1 = (f''/f) F_2`.
#[derive(Clone, Debug)]
pub struct RwNormalCurvature<S> {
    pub warp_ratio: S,
}

impl<S: Scalar> FrameCurvature<S> for RwNormalCurvature<S> {
    fn tangent_action(&self, a: usize, b: usize, n: usize) -> Vec<S> {
        let mut out = vec![S::zero(); n];
        if a == 1 && b == 0 {
            out[1] = self.warp_ratio.clone();
        } else if a == 0 && b == 1 {
            out[1] = -self.warp_ratio.clone();
        }
        out
    }
}

/// Scaled coefficients of the order-`r` tension field of a constant-curvature
/// Frenet system given by `(eps, kappa_sq)`.
///
/// For genuine Frenet data (all squared curvatures positive) the scaled
/// vector vanishes iff the plain one does; with a vanishing trailing
/// curvature, reduce the frame order instead.
pub fn tension_field_scaled<S: Scalar>(
    eps: &[Sign],
    kappa_sq: &[S],
    curv: &impl FrameCurvature<S>,
    r: u32,
) -> Result<Vec<S>, TensionError> {
    if r < 1 {
        return Err(TensionError::OrderTooSmall { got: r });
    }
    let powers = covariant_powers_scaled(eps, kappa_sq, 2 * r as usize - 1);
    tension_field_from_powers(eps.len(), &powers, curv, r)
}

/// Like [`tension_field_scaled`] with precomputed scaled covariant powers,
/// letting sweeps share them across orders. `powers` must reach index
/// `2r - 1`.
pub fn tension_field_from_powers<S: Scalar>(
    n: usize,
    powers: &[Vec<S>],
    curv: &impl FrameCurvature<S>,
    r: u32,
) -> Result<Vec<S>, TensionError> {
    if r < 1 {
        return Err(TensionError::OrderTooSmall { got: r });
    }
    let top = 2 * r as usize - 1;
    let mut acc = powers[top].clone();
    for ell in 0..(r as usize).saturating_sub(1) {
        let x = &powers[top - 2 - ell];
        let y = &powers[ell];
        let negate = ell % 2 == 1;
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let action = curv.tangent_action(a, b, n);
                let weight = xa.clone() * yb.clone();
                for (slot, act) in acc.iter_mut().zip(action) {
                    if act.is_zero() {
                        continue;
                    }
                    let term = weight.clone() * act;
                    *slot = if negate {
                        slot.clone() - term
                    } else {
                        slot.clone() + term
                    };
                }
            }
        }
    }
    Ok(acc)
}

/// Order-`r` tension field of a helix, plain frame coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TensionResult {
    pub r: u32,
    pub coeffs: Vec<f64>,
}

impl TensionResult {
    /// Euclidean norm of the coefficient vector. Used as the residual
    /// diagnostic; unlike the indefinite norm it cannot hide a null vector.
    pub fn residual_norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.residual_norm() <= tol
    }
}

/// Evaluates the order-`r` tension field of `helix` against a curvature table.
pub fn tension_field(
    helix: &Helix,
    curv: &impl FrameCurvature<f64>,
    r: u32,
) -> Result<TensionResult, TensionError> {
    let scaled = tension_field_scaled(helix.sig().eps(), &helix.kappa_sq(), curv, r)?;
    let pi = scale_factors(helix.kappas());
    let coeffs = scaled.iter().zip(&pi).map(|(c, p)| c * p).collect();
    Ok(TensionResult { r, coeffs })
}

/// Bitension of a curve on a surface with Gaussian curvature `k_m` along it,
/// split into tangent and normal components.
pub fn surface_bitension(
    k: f64,
    k_d1: f64,
    k_d2: f64,
    k_m: f64,
    eps1: Sign,
    eps2: Sign,
) -> (f64, f64) {
    let e1 = eps1.as_f64();
    let e2 = eps2.as_f64();
    let tangent = -3.0 * e1 * e2 * k * k_d1;
    let normal = e2 * (k_m * e1 * k + k_d2 - e1 * e2 * k.powi(3));
    (tangent, normal)
}

/// Tritension of a curve on a surface, tangent and normal components.
#[allow(clippy::too_many_arguments)]
pub fn surface_tritension(
    k: f64,
    k_d1: f64,
    k_d2: f64,
    k_d3: f64,
    k_d4: f64,
    k_m: f64,
    eps1: Sign,
    eps2: Sign,
) -> (f64, f64) {
    let e1 = eps1.as_f64();
    let e2 = eps2.as_f64();
    let tangent = -5.0 * e1 * e2 * k_d3 * k + 10.0 * k.powi(3) * k_d1 - 10.0 * e1 * e2 * k_d1 * k_d2;
    let normal = e2 * k_m * (e1 * k_d2 - 2.0 * e2 * k.powi(3)) + e2 * k_d4
        - 10.0 * e1 * k * k * k_d2
        - 15.0 * e1 * k * k_d1 * k_d1
        + e2 * k.powi(5);
    (tangent, normal)
}

/// First and second derivative data of the leading curvatures, everything the
/// order-`n >= 4` bitension needs beyond the curvature values themselves.
#[derive(Clone, Copy, Debug, Default)]
pub struct CurvatureDerivatives {
    pub k1_d1: f64,
    pub k1_d2: f64,
    pub k2_d1: f64,
}

/// Bitension of an order-`n >= 4` Frenet curve at a point, plain coefficients.
///
/// Only the first three curvatures and the derivatives in
/// [`CurvatureDerivatives`] enter; trailing curvatures are irrelevant to the
/// order-two tension.
pub fn n_frenet_bitension(
    eps: &[Sign],
    k: &[f64],
    deriv: CurvatureDerivatives,
    curv: &impl FrameCurvature<f64>,
) -> Result<Vec<f64>, TensionError> {
    let n = eps.len();
    if n < 4 {
        return Err(TensionError::FrameOrderTooSmall { got: n, min: 4 });
    }
    let e = |i: usize| eps[i].as_f64();
    let (k1, k2, k3) = (k[0], k[1], k[2]);
    let mut out = vec![0.0; n];
    out[0] = e(1) * (-3.0 * e(0) * k1 * deriv.k1_d1);
    out[1] = e(1) * (deriv.k1_d2 - e(0) * e(1) * k1.powi(3) - e(1) * e(2) * k1 * k2 * k2);
    out[2] = e(1) * e(2) * (2.0 * deriv.k1_d1 * k2 + k1 * deriv.k2_d1);
    out[3] = e(1) * e(2) * e(3) * k1 * k2 * k3;
    let action = curv.tangent_action(1, 0, n);
    for (slot, act) in out.iter_mut().zip(action) {
        *slot += e(1) * k1 * act;
    }
    Ok(out)
}

/// Helix specialization of [`n_frenet_bitension`] in scaled coefficients.
pub fn n_frenet_bitension_helix_scaled<S: Scalar>(
    eps: &[Sign],
    kappa_sq: &[S],
    curv: &impl FrameCurvature<S>,
) -> Result<Vec<S>, TensionError> {
    let n = eps.len();
    if n < 4 {
        return Err(TensionError::FrameOrderTooSmall { got: n, min: 4 });
    }
    let q = |i: usize| -> S { kappa_sq.get(i).cloned().unwrap_or_else(S::zero) };
    let mut out = vec![S::zero(); n];
    out[1] = eps[1].apply(
        -(eps[0] * eps[1]).apply(q(0)) - (eps[1] * eps[2]).apply(q(1)),
    );
    out[3] = (eps[1] * eps[2] * eps[3]).apply(S::one());
    let action = curv.tangent_action(1, 0, n);
    for (slot, act) in out.iter_mut().zip(action) {
        *slot = slot.clone() + eps[1].apply(act);
    }
    Ok(out)
}

/// Tritension of an order-`n >= 4` helix in scaled coefficients.
///
/// The printed expression assumes order at least six; smaller orders apply it
/// with the missing trailing curvatures set to zero, which is how the
/// classification for orders four and five is derived.
pub fn n_frenet_tritension_scaled<S: Scalar>(
    eps: &[Sign],
    kappa_sq: &[S],
    curv: &impl FrameCurvature<S>,
) -> Result<Vec<S>, TensionError> {
    let n = eps.len();
    if n < 4 {
        return Err(TensionError::FrameOrderTooSmall { got: n, min: 4 });
    }
    let q = |i: usize| -> S { kappa_sq.get(i).cloned().unwrap_or_else(S::zero) };
    let s1 = eps[0].apply(q(0)) + eps[2].apply(q(1));
    let mut out = vec![S::zero(); n];

    // pure covariant-derivative part
    out[1] = eps[1].apply(s1.clone() * s1.clone()) + eps[3].apply(q(1) * q(2));
    out[3] = -(eps[1] * eps[2] * eps[3]).apply(
        eps[1].apply(s1.clone())
            + eps[3].apply((eps[2].apply(q(2))) + eps.get(4).map_or(S::zero(), |e| e.apply(q(3)))),
    );
    if n >= 6 {
        out[5] = (eps[1] * eps[2] * eps[3] * eps[4] * eps[5]).apply(S::one());
    }

    // curvature terms, bilinear over the table
    let two_q0 = q(0) + q(0);
    let w21 = -(eps[0].apply(two_q0) + eps[2].apply(q(1)));
    for (slot, act) in out.iter_mut().zip(curv.tangent_action(1, 0, n)) {
        *slot = slot.clone() + w21.clone() * act;
    }
    let w32 = -eps[2].apply(S::one());
    for (slot, act) in out.iter_mut().zip(curv.tangent_action(2, 1, n)) {
        *slot = slot.clone() + w32.clone() * act;
    }
    let w41 = (eps[1] * eps[2] * eps[3]).apply(S::one());
    for (slot, act) in out.iter_mut().zip(curv.tangent_action(3, 0, n)) {
        *slot = slot.clone() + w41.clone() * act;
    }
    Ok(out)
}

/// Tritension of an order-`n >= 4` helix, plain frame coefficients.
pub fn n_frenet_tritension(
    helix: &Helix,
    curv: &impl FrameCurvature<f64>,
) -> Result<Vec<f64>, TensionError> {
    let scaled =
        n_frenet_tritension_scaled(helix.sig().eps(), &helix.kappa_sq(), curv)?;
    let pi = scale_factors(helix.kappas());
    Ok(scaled.iter().zip(&pi).map(|(c, p)| c * p).collect())
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::metric::Signature;

    type Rat = Rational64;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn signs(eps: &[i64]) -> Vec<Sign> {
        Signature::minimal_ambient_ints(eps).unwrap().eps().to_vec()
    }

    fn helix(eps: &[i64], kappas: &[f64]) -> Helix {
        Helix::new(
            Signature::minimal_ambient_ints(eps).unwrap(),
            kappas.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn flat_three_frame_equal_curvatures_is_r_harmonic() {
        let h = helix(&[1, 1, -1], &[1.0, 1.0]);
        let table = SpaceFormCurvature::new(0.0, Sign::Plus);
        for r in 2..=5 {
            let t = tension_field(&h, &table, r).unwrap();
            assert!(t.residual_norm() == 0.0, "r = {r}: {:?}", t.coeffs);
        }
    }

    #[test]
    fn biharmonic_circle_in_positive_curvature() {
        // order two, κ² = ε₂ (r-1) c with ε₂ = +1, c = 1, r = 2
        let h = helix(&[1, 1], &[1.0]);
        let table = SpaceFormCurvature::new(1.0, Sign::Plus);
        let t = tension_field(&h, &table, 2).unwrap();
        assert_eq!(t.coeffs, vec![0.0, 0.0]);
        // perturbing the curvature breaks it
        let h = helix(&[1, 1], &[1.2]);
        let t = tension_field(&h, &table, 2).unwrap();
        assert!(t.residual_norm() > 0.1);
    }

    #[test]
    fn five_frame_triharmonic_example_is_exact() {
        let eps = signs(&[1, 1, -1, 1, 1]);
        let q = vec![rat(1, 1), rat(1, 1), rat(1, 1), rat(2, 1)];
        let table = SpaceFormCurvature::new(rat(1, 1), Sign::Plus);
        let t = tension_field_scaled(&eps, &q, &table, 3).unwrap();
        assert!(t.iter().all(|x| *x == rat(0, 1)), "{t:?}");
    }

    #[test]
    fn four_frame_triharmonic_example_is_exact() {
        let eps = signs(&[1, -1, -1, 1]);
        let q = vec![rat(2, 1), rat(4, 1), rat(1, 1)];
        let table = SpaceFormCurvature::new(rat(1, 1), Sign::Plus);
        let t = tension_field_scaled(&eps, &q, &table, 3).unwrap();
        assert!(t.iter().all(|x| *x == rat(0, 1)), "{t:?}");
    }

    #[test]
    fn degenerate_three_frame_combination_is_r_harmonic_beyond_order_three() {
        // ε₁κ² + ε₃τ² = 0 kills every tension field of order four and up
        let eps = signs(&[1, 1, -1]);
        let q = vec![rat(9, 4), rat(9, 4)];
        let table = SpaceFormCurvature::new(rat(-3, 2), Sign::Plus);
        for r in 4..=7 {
            let t = tension_field_scaled(&eps, &q, &table, r).unwrap();
            assert!(t.iter().all(|x| *x == rat(0, 1)));
        }
        // but not of order three in a curved model
        let t = tension_field_scaled(&eps, &q, &table, 3).unwrap();
        assert!(t.iter().any(|x| *x != rat(0, 1)));
    }

    #[test]
    fn rejects_order_zero() {
        let h = helix(&[1, 1], &[1.0]);
        let table = SpaceFormCurvature::new(0.0, Sign::Plus);
        assert!(matches!(
            tension_field(&h, &table, 0),
            Err(TensionError::OrderTooSmall { got: 0 })
        ));
    }

    #[test]
    fn surface_bitension_examples() {
        // constant curvature one on curvature -1: the biharmonic case
        let (t, n) = surface_bitension(1.0, 0.0, 0.0, -1.0, Sign::Plus, Sign::Minus);
        assert_eq!((t, n), (0.0, 0.0));
        // flat: no proper biharmonic constant-curvature curve
        let (_, n) = surface_bitension(1.0, 0.0, 0.0, 0.0, Sign::Plus, Sign::Minus);
        assert_eq!(n.abs(), 1.0);
        // linear curvature at k = 1
        let (t, n) = surface_bitension(1.0, 1.0, 0.0, 0.0, Sign::Plus, Sign::Minus);
        assert_eq!(t, 3.0);
        assert_eq!(n, -1.0);
    }

    #[test]
    fn surface_tritension_examples() {
        // κ² + 2c = 0 on a negatively curved surface
        let kappa = 2.0f64.sqrt();
        let (t, n) =
            surface_tritension(kappa, 0.0, 0.0, 0.0, 0.0, -1.0, Sign::Plus, Sign::Minus);
        assert_eq!(t, 0.0);
        assert!(n.abs() < 1e-12);
        // flat constant curvature: normal reduces to ε₂ κ⁵
        let (_, n) = surface_tritension(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, Sign::Plus, Sign::Minus);
        assert_eq!(n, -1.0);
    }

    #[test]
    fn surface_tritension_matches_oracle_for_constant_curvature() {
        for (e1, e2) in [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)] {
            for kappa in [0.5, 1.0, 1.7] {
                for c in [-2.0, -1.0, 0.5, 1.0] {
                    let (_, normal) =
                        surface_tritension(kappa, 0.0, 0.0, 0.0, 0.0, c, e1, e2);
                    let h = Helix::new(
                        Signature::minimal_ambient_ints(&[e1.value(), e2.value()]).unwrap(),
                        vec![kappa],
                    )
                    .unwrap();
                    let t = tension_field(&h, &SpaceFormCurvature::new(c, e1), 3).unwrap();
                    assert!(
                        (t.coeffs[1] - normal).abs() < 1e-12 * normal.abs().max(1.0),
                        "eps=({e1},{e2}) kappa={kappa} c={c}"
                    );
                    assert!(t.coeffs[0].abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn n_frenet_bitension_flat_components() {
        let eps = signs(&[1, 1, 1, 1]);
        let k = [2.0, 3.0, 0.5];
        let flat = SpaceFormCurvature::new(0.0, Sign::Plus);
        let v = n_frenet_bitension(&eps, &k, CurvatureDerivatives::default(), &flat).unwrap();
        assert_eq!(v[0], 0.0);
        assert_eq!(v[1], -(2.0f64.powi(3)) - 2.0 * 9.0);
        assert_eq!(v[2], 0.0);
        assert_eq!(v[3], 2.0 * 3.0 * 0.5);
        // a linear second curvature shows up only in the third slot
        let with_deriv = CurvatureDerivatives {
            k2_d1: 0.7,
            ..Default::default()
        };
        let v = n_frenet_bitension(&eps, &k, with_deriv, &flat).unwrap();
        assert_eq!(v[2], 2.0 * 0.7);
    }

    #[test]
    fn closed_forms_match_oracle_on_a_helix() {
        let eps_sets: [&[i64]; 3] = [&[1, 1, -1, 1], &[1, -1, 1, 1, -1], &[1, 1, 1, 1, 1, -1]];
        for eps_i in eps_sets {
            let eps = signs(eps_i);
            let n = eps.len();
            let q: Vec<Rat> = (0..n - 1).map(|i| rat(i as i64 + 1, 2)).collect();
            for c in [rat(-1, 1), rat(0, 1), rat(3, 2)] {
                let table = SpaceFormCurvature::new(c, eps[0]);
                let bi = n_frenet_bitension_helix_scaled(&eps, &q, &table).unwrap();
                let oracle2 = tension_field_scaled(&eps, &q, &table, 2).unwrap();
                assert_eq!(bi, oracle2, "bitension eps={eps_i:?} c={c}");
                let tri = n_frenet_tritension_scaled(&eps, &q, &table).unwrap();
                let oracle3 = tension_field_scaled(&eps, &q, &table, 3).unwrap();
                assert_eq!(tri, oracle3, "tritension eps={eps_i:?} c={c}");
            }
        }
    }

    #[test]
    fn full_six_frame_helix_has_nonzero_tritension_tail() {
        let eps = signs(&[1, 1, 1, 1, 1, -1]);
        let q: Vec<Rat> = (1..=5).map(|i| rat(i, 1)).collect();
        let table = SpaceFormCurvature::new(rat(1, 1), Sign::Plus);
        let t = n_frenet_tritension_scaled(&eps, &q, &table).unwrap();
        assert!(*t.last().unwrap() != rat(0, 1));
    }
}
