//! Frenet systems: the structure matrix of the frame equations, covariant
//! powers of the tangent, and the closed-form coefficient recursions for
//! orders two and three.
//!
//! Two coefficient conventions are used. The *plain* convention stores the
//! actual components along `F_1..F_n`. The *scaled* convention stores the
//! component along `F_j` divided by `κ_1⋯κ_{j-1}`; in that basis every
//! recursion is a polynomial in the squared curvatures alone, so it runs
//! exactly on rational inputs. A scaled vector is zero iff the plain one is.

use thiserror::Error;

use crate::metric::{Sign, Signature, SignatureError};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrenetError {
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("expected {want} curvatures for a frame of order {order}, got {got}")]
    CurvatureCount { want: usize, got: usize, order: usize },
    #[error("curvature {index} must be positive, got {value}")]
    NonPositiveCurvature { index: usize, value: f64 },
}

/// Helix: a Frenet curve with constant curvatures. The central analysis
/// object of the crate.
#[derive(Clone, Debug, PartialEq)]
pub struct Helix {
    sig: Signature,
    kappas: Vec<f64>,
}

impl Helix {
    pub fn new(sig: Signature, kappas: Vec<f64>) -> Result<Self, FrenetError> {
        sig.validate()?;
        let n = sig.n();
        if kappas.len() + 1 != n {
            return Err(FrenetError::CurvatureCount {
                want: n.saturating_sub(1),
                got: kappas.len(),
                order: n,
            });
        }
        for (i, &k) in kappas.iter().enumerate() {
            if !(k > 0.0) {
                return Err(FrenetError::NonPositiveCurvature { index: i, value: k });
            }
        }
        Ok(Helix { sig, kappas })
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub fn kappa_sq(&self) -> Vec<f64> {
        self.kappas.iter().map(|k| k * k).collect()
    }

    /// Structure matrix of the frame equations: row `i` holds the
    /// coefficients of the derivative of `F_{i+1}` along the frame.
    /// Tridiagonal, with `(i, i+1)` entry `ε_{i+2} κ_{i+1}` and `(i, i-1)`
    /// entry `-ε_i κ_i` in 1-based curvature labels.
    pub fn omega_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let eps = self.sig.eps();
        let mut omega = vec![vec![0.0; n]; n];
        for i in 0..n {
            if i + 1 < n {
                omega[i][i + 1] = eps[i + 1].as_f64() * self.kappas[i];
            }
            if i > 0 {
                omega[i][i - 1] = -eps[i - 1].as_f64() * self.kappas[i - 1];
            }
        }
        omega
    }

    /// Plain coefficients of the k-th covariant power of the tangent:
    /// start from `e_1` and apply the frame derivative k times.
    pub fn covariant_power(&self, k: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.n()];
        v[0] = 1.0;
        for _ in 0..k {
            v = frenet_derivative_plain(self.sig.eps(), &self.kappas, &v);
        }
        v
    }

    /// Cumulative curvature products `Π_j = κ_1⋯κ_{j-1}` converting scaled
    /// coefficients back to plain ones.
    pub fn scale_factors(&self) -> Vec<f64> {
        scale_factors(&self.kappas)
    }
}

/// `Π_j = κ_1⋯κ_{j-1}` for `j = 1..=n`, with `Π_1 = 1`.
pub fn scale_factors(kappas: &[f64]) -> Vec<f64> {
    let mut pi = Vec::with_capacity(kappas.len() + 1);
    let mut acc = 1.0;
    pi.push(acc);
    for &k in kappas {
        acc *= k;
        pi.push(acc);
    }
    pi
}

/// One application of the frame equations to a plain coefficient vector:
/// `w_i = ε_i (κ_{i-1} v_{i-1} - κ_i v_{i+1})` in 1-based labels.
pub fn frenet_derivative_plain(eps: &[Sign], kappas: &[f64], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        if i > 0 {
            acc += kappas[i - 1] * v[i - 1];
        }
        if i + 1 < n {
            acc -= kappas[i] * v[i + 1];
        }
        w[i] = eps[i].as_f64() * acc;
    }
    w
}

/// One application of the frame equations in the scaled convention:
/// `w_i = ε_i (v_{i-1} - κ_i² v_{i+1})`, rational in the squared curvatures.
pub fn frenet_derivative_scaled<S: Scalar>(eps: &[Sign], kappa_sq: &[S], v: &[S]) -> Vec<S> {
    let n = v.len();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = S::zero();
        if i > 0 {
            acc = acc + v[i - 1].clone();
        }
        if i + 1 < n {
            acc = acc - kappa_sq[i].clone() * v[i + 1].clone();
        }
        w.push(eps[i].apply(acc));
    }
    w
}

/// Scaled coefficients of the k-th covariant power of the tangent.
pub fn covariant_power_scaled<S: Scalar>(eps: &[Sign], kappa_sq: &[S], k: usize) -> Vec<S> {
    let mut v = vec![S::zero(); eps.len()];
    v[0] = S::one();
    for _ in 0..k {
        v = frenet_derivative_scaled(eps, kappa_sq, &v);
    }
    v
}

/// All scaled covariant powers up to and including `max_power`.
pub fn covariant_powers_scaled<S: Scalar>(
    eps: &[Sign],
    kappa_sq: &[S],
    max_power: usize,
) -> Vec<Vec<S>> {
    let mut powers = Vec::with_capacity(max_power + 1);
    let mut v = vec![S::zero(); eps.len()];
    v[0] = S::one();
    powers.push(v.clone());
    for _ in 0..max_power {
        v = frenet_derivative_scaled(eps, kappa_sq, &v);
        powers.push(v.clone());
    }
    powers
}

/// Closed form of the covariant powers of a 2-frame helix, plain
/// coefficients: the even power `2ℓ` is `(-ε₁ε₂)^ℓ κ^{2ℓ}` along the tangent,
/// the odd power `2ℓ+1` is `(-ε₁ε₂)^ℓ ε₂ κ^{2ℓ+1}` along the normal.
pub fn two_frenet_power(ell: u32, odd: bool, eps1: Sign, eps2: Sign, kappa: f64) -> [f64; 2] {
    let parity = if (eps1 * eps2).is_minus() || ell % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    if odd {
        [0.0, parity * eps2.as_f64() * kappa.powi(2 * ell as i32 + 1)]
    } else {
        [parity * kappa.powi(2 * ell as i32), 0.0]
    }
}

/// Coefficients of the even/odd covariant-power closed form for a 3-frame
/// helix: the even power `2ℓ` is `A_ℓ T + B_ℓ B`, the odd power `2ℓ+1` is
/// `C_ℓ N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbcCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Plain closed-form coefficients for a 3-frame helix with curvatures
/// `(κ, τ)`.
pub fn abc_coefficients(
    ell: u32,
    eps1: Sign,
    eps2: Sign,
    eps3: Sign,
    kappa: f64,
    tau: f64,
) -> AbcCoefficients {
    let (a, b, c) = abc_scaled::<f64>(ell, eps1, eps2, eps3, &(kappa * kappa), &(tau * tau));
    AbcCoefficients {
        a,
        b: b * kappa * tau,
        c: c * kappa,
    }
}

/// Scaled closed-form coefficients on squared curvatures: the returned
/// triple is `(A_ℓ, B_ℓ / (κτ), C_ℓ / κ)`, each polynomial in `κ², τ²`.
pub fn abc_scaled<S: Scalar>(
    ell: u32,
    eps1: Sign,
    eps2: Sign,
    eps3: Sign,
    kappa_sq: &S,
    tau_sq: &S,
) -> (S, S, S) {
    let s1 = eps1.apply(kappa_sq.clone()) + eps3.apply(tau_sq.clone());
    let sign_pow = |base: Sign, e: u32| -> Sign {
        if base.is_minus() && e % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    };
    let minus_pow = |e: u32| -> Sign {
        if e % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    };
    let pow_s = |x: &S, e: u32| -> S {
        let mut acc = S::one();
        for _ in 0..e {
            acc = acc * x.clone();
        }
        acc
    };

    let c = {
        let sgn = minus_pow(ell) * sign_pow(eps2, ell + 1);
        sgn.apply(pow_s(&s1, ell))
    };
    if ell == 0 {
        return (S::one(), S::zero(), c);
    }
    let common = pow_s(&s1, ell - 1);
    let a = {
        let sgn = minus_pow(ell) * eps1 * sign_pow(eps2, ell);
        sgn.apply(kappa_sq.clone() * common.clone())
    };
    let b = {
        let sgn = minus_pow(ell + 1) * eps3 * sign_pow(eps2, ell);
        sgn.apply(common)
    };
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::metric::Signature;

    fn sig(eps: &[i64]) -> Signature {
        Signature::minimal_ambient_ints(eps).unwrap()
    }

    fn helix(eps: &[i64], kappas: &[f64]) -> Helix {
        Helix::new(sig(eps), kappas.to_vec()).unwrap()
    }

    #[test]
    fn omega_matrix_two_frame() {
        let h = helix(&[1, -1], &[1.0]);
        let omega = h.omega_matrix();
        assert_eq!(omega, vec![vec![0.0, -1.0], vec![-1.0, 0.0]]);
        // symmetric, not skew, once the signs differ
        assert_eq!(omega[0][1], omega[1][0]);
    }

    #[test]
    fn omega_skew_symmetric_iff_signs_equal() {
        let skew = helix(&[1, 1, 1], &[2.0, 3.0]).omega_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(skew[i][j], -skew[j][i]);
            }
        }
        let not_skew = helix(&[1, 1, -1], &[2.0, 3.0]).omega_matrix();
        assert_ne!(not_skew[1][2], -not_skew[2][1]);
    }

    #[test]
    fn covariant_power_base_cases() {
        let h = helix(&[1, -1], &[1.0]);
        assert_eq!(h.covariant_power(0), vec![1.0, 0.0]);
        assert_eq!(h.covariant_power(2), vec![1.0, 0.0]);
        let h3 = helix(&[1, 1, 1], &[1.0, 1.0]);
        assert_eq!(h3.covariant_power(2), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn covariant_power_vanishes_for_zero_structure_matrix() {
        // geodesic: zero curvatures wipe out every derivative of the tangent
        let eps = sig(&[1, 1, -1]);
        let mut v = vec![1.0, 0.0, 0.0];
        for _ in 1..6 {
            v = frenet_derivative_plain(eps.eps(), &[0.0, 0.0], &v);
            assert_eq!(v, vec![0.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn two_frenet_closed_form_matches_recursion() {
        for (e1, e2) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let kappa = 1.5;
            let h = helix(&[e1, e2], &[kappa]);
            let (s1, s2) = (Sign::from_int(e1).unwrap(), Sign::from_int(e2).unwrap());
            for ell in 0..=4u32 {
                let even = two_frenet_power(ell, false, s1, s2, kappa);
                let odd = two_frenet_power(ell, true, s1, s2, kappa);
                let rec_even = h.covariant_power(2 * ell as usize);
                let rec_odd = h.covariant_power(2 * ell as usize + 1);
                for i in 0..2 {
                    assert!((even[i] - rec_even[i]).abs() < 1e-9 * even[i].abs().max(1.0));
                    assert!((odd[i] - rec_odd[i]).abs() < 1e-9 * odd[i].abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn two_frenet_examples() {
        // first frame equation: odd power ℓ=0 is ε₂ κ N
        let v = two_frenet_power(0, true, Sign::Plus, Sign::Minus, 2.0);
        assert_eq!(v, [0.0, -2.0]);
        // mixed signs make the even power positive: ∇⁴-free case ℓ=1
        let v = two_frenet_power(1, false, Sign::Plus, Sign::Minus, 2.0);
        assert_eq!(v, [4.0, 0.0]);
    }

    #[test]
    fn abc_base_and_first_step() {
        let abc = abc_coefficients(0, Sign::Plus, Sign::Plus, Sign::Plus, 2.0, 3.0);
        assert_eq!((abc.a, abc.b, abc.c), (1.0, 0.0, 2.0));
        let abc = abc_coefficients(1, Sign::Plus, Sign::Plus, Sign::Plus, 1.0, 1.0);
        assert_eq!((abc.a, abc.b, abc.c), (-1.0, 1.0, -2.0));
    }

    #[test]
    fn abc_matches_covariant_powers_exactly_in_rationals() {
        let cases = [
            ([1i64, 1, 1], (3, 2), (5, 4)),
            ([1, 1, -1], (1, 1), (1, 1)),
            ([-1, 1, 1], (7, 4), (2, 1)),
            ([1, -1, -1], (9, 2), (1, 4)),
        ];
        for (eps_i, (kn, kd), (tn, td)) in cases {
            let s = sig(&eps_i);
            let q = vec![Rational64::new(kn, kd), Rational64::new(tn, td)];
            let (e1, e2, e3) = (s.sign(0), s.sign(1), s.sign(2));
            for ell in 0..=6u32 {
                let (a, b, c) = abc_scaled(ell, e1, e2, e3, &q[0], &q[1]);
                let even = covariant_power_scaled(s.eps(), &q, 2 * ell as usize);
                let odd = covariant_power_scaled(s.eps(), &q, 2 * ell as usize + 1);
                assert_eq!(even, vec![a, Rational64::new(0, 1), b]);
                assert_eq!(odd, vec![Rational64::new(0, 1), c, Rational64::new(0, 1)]);
            }
        }
    }

    #[test]
    fn abc_degenerate_combination_kills_higher_powers() {
        // ε₁κ² + ε₃τ² = 0 forces every power beyond the second to vanish
        let s = sig(&[1, 1, -1]);
        let q = vec![Rational64::new(4, 1), Rational64::new(4, 1)];
        for k in 3..=9 {
            let v = covariant_power_scaled(s.eps(), &q, k);
            assert!(v.iter().all(|x| *x == Rational64::new(0, 1)));
        }
    }

    #[test]
    fn helix_rejects_bad_curvatures() {
        let s = sig(&[1, 1, 1]);
        assert!(matches!(
            Helix::new(s.clone(), vec![1.0]),
            Err(FrenetError::CurvatureCount { .. })
        ));
        assert!(matches!(
            Helix::new(s, vec![1.0, -2.0]),
            Err(FrenetError::NonPositiveCurvature { index: 1, .. })
        ));
    }
}
