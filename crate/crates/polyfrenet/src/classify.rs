//! Closed-form feasibility and root solvers for `r`-harmonic helices in
//! space forms, returning explicit solution sets or infeasibility
//! certificates.
//!
//! All solving happens on squared curvatures in exact rational arithmetic;
//! square roots appear only in the presentation layer. Every feasible output
//! substituted into the tension-field oracle yields the zero vector exactly,
//! which the test suite enforces.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{decimal15, rat_int, QuadVal, Rat};
use crate::metric::Sign;
use crate::scalar::{from_usize, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("tension order r must be at least 2, got {got}")]
    OrderTooSmall { got: u32 },
    #[error("frame order {got} is not supported here (want {want})")]
    UnsupportedOrder { got: usize, want: &'static str },
    #[error("{0}")]
    InvalidInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

/// One entry of a solution set: either a concrete squared-curvature value or
/// a one-parameter family described by its defining constraint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Solution {
    Value {
        name: String,
        exact: String,
        decimal: String,
        value: f64,
        /// Boundary roots such as `tau_sq = 0` are reported but do not count
        /// as genuine Frenet curves.
        degenerate: bool,
    },
    Family { description: String },
}

impl Solution {
    fn value(name: &str, v: &QuadVal, degenerate: bool) -> Self {
        let value = v.to_f64();
        Solution::Value {
            name: name.to_string(),
            exact: v.to_string(),
            decimal: decimal15(value),
            value,
            degenerate,
        }
    }

    fn rational_value(name: &str, v: &Rat, degenerate: bool) -> Self {
        Solution::value(name, &QuadVal::rational(v.clone()), degenerate)
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Solution::Value { degenerate: true, .. })
    }
}

/// Outcome of a closed-form classification: solutions that make the helix
/// `r`-harmonic, or a certificate that none exist.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    /// Name of the criterion applied.
    pub theorem: String,
    pub status: Feasibility,
    pub solutions: Vec<Solution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

impl ClassificationResult {
    fn feasible(theorem: &str, solutions: Vec<Solution>) -> Self {
        ClassificationResult {
            theorem: theorem.to_string(),
            status: Feasibility::Feasible,
            solutions,
            certificate: None,
        }
    }

    fn infeasible(theorem: &str, certificate: String) -> Self {
        ClassificationResult {
            theorem: theorem.to_string(),
            status: Feasibility::Infeasible,
            solutions: Vec::new(),
            certificate: Some(certificate),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Feasibility::Feasible
    }

    /// Non-degenerate concrete values carried by the result.
    pub fn values(&self) -> Vec<f64> {
        self.solutions
            .iter()
            .filter_map(|s| match s {
                Solution::Value {
                    value,
                    degenerate: false,
                    ..
                } => Some(*value),
                _ => None,
            })
            .collect()
    }
}

fn require_order(r: u32) -> Result<(), ClassifyError> {
    if r < 2 {
        return Err(ClassifyError::OrderTooSmall { got: r });
    }
    Ok(())
}

/// Whether `ε_a x + ε_b y = k` admits a solution with `x, y > 0`.
fn mixed_sign_linear_feasible(ea: Sign, eb: Sign, k: &Rat) -> bool {
    if ea != eb {
        true
    } else {
        match ea {
            Sign::Plus => k.is_positive(),
            Sign::Minus => k.is_negative(),
        }
    }
}

// ---------------------------------------------------------------------------
// order two (single curvature)
// ---------------------------------------------------------------------------

/// Exact check of the 2-frame criterion `κ² = ε₂ (r-1) c`.
pub fn is_r_harmonic_2frenet<S: Scalar>(c: &S, eps2: Sign, r: u32, kappa_sq: &S) -> bool {
    let target = eps2.apply(from_usize::<S>(r as usize - 1) * c.clone());
    kappa_sq.clone() == target
}

/// Proper `r`-harmonic 2-frame helices in a space form: the unique candidate
/// curvature is `κ² = ε₂ (r-1) c`. On a Lorentzian surface (`surface`) the
/// frame signs must satisfy `ε₁ ε₂ = -1`, and for a space-like curve the
/// criterion becomes `κ² = -(r-1) c`, infeasible whenever `c >= 0`.
pub fn classify_2frenet(
    c: &Rat,
    eps1: Sign,
    eps2: Sign,
    r: u32,
    surface: bool,
) -> Result<ClassificationResult, ClassifyError> {
    require_order(r)?;
    if surface && eps1 * eps2 != Sign::Minus {
        return Err(ClassifyError::InvalidInput(
            "a non-degenerate curve on a Lorentz surface needs eps1*eps2 = -1".into(),
        ));
    }
    let theorem = if surface {
        "two_frenet_surface_r_harmonic"
    } else {
        "two_frenet_space_form_r_harmonic"
    };
    let kappa_sq = eps2.apply(rat_int(r as i64 - 1) * c.clone());
    if kappa_sq.is_positive() {
        Ok(ClassificationResult::feasible(
            theorem,
            vec![Solution::rational_value("kappa_sq", &kappa_sq, false)],
        ))
    } else {
        Ok(ClassificationResult::infeasible(
            theorem,
            format!("eps2*(r-1)*c = {kappa_sq} is not a positive squared curvature"),
        ))
    }
}

/// Proper triharmonic 2-frame helices: feasible iff `ε₂ c > 0`, with
/// `κ² = 2 ε₂ c`.
pub fn classify_triharmonic_2frenet(c: &Rat, eps2: Sign) -> ClassificationResult {
    let theorem = "two_frenet_triharmonic";
    let kappa_sq = eps2.apply(rat_int(2) * c.clone());
    if kappa_sq.is_positive() {
        ClassificationResult::feasible(
            theorem,
            vec![Solution::rational_value("kappa_sq", &kappa_sq, false)],
        )
    } else {
        ClassificationResult::infeasible(
            theorem,
            format!("needs eps2*c > 0, got 2*eps2*c = {kappa_sq}"),
        )
    }
}

// ---------------------------------------------------------------------------
// order three (curvature and torsion)
// ---------------------------------------------------------------------------

/// Exact check of the 3-frame criterion for a helix `(κ², τ²)` in a space
/// form of curvature `c`:
///
/// - order two: `ε₂ (ε₁κ² + ε₃τ²) = c ε₁`
/// - order three: `ε₂ (ε₁κ² + ε₃τ²)² = c (ε₁ε₃ τ² + 2κ²)`
/// - order `r >= 4`: the order-three relation with `(r-1)` in place of `2`,
///   or the degenerate combination `ε₁κ² + ε₃τ² = 0`.
pub fn is_r_harmonic_3frenet<S: Scalar>(
    c: &S,
    eps: (Sign, Sign, Sign),
    r: u32,
    kappa_sq: &S,
    tau_sq: &S,
) -> bool {
    let (e1, e2, e3) = eps;
    let s1 = e1.apply(kappa_sq.clone()) + e3.apply(tau_sq.clone());
    if r == 2 {
        return e2.apply(s1) == e1.apply(c.clone());
    }
    if r >= 4 && s1.is_zero() {
        return true;
    }
    let lhs = e2.apply(s1.clone() * s1);
    let rhs = c.clone()
        * ((e1 * e3).apply(tau_sq.clone())
            + from_usize::<S>(r as usize - 1) * kappa_sq.clone());
    lhs == rhs
}

fn bracket_family_description(eps: (Sign, Sign, Sign), r: u32) -> String {
    let (e1, e2, e3) = eps;
    format!(
        "({e1})*kappa_sq + ({e3})*tau_sq satisfies \
         ({e2})*S^2 = c*(({})*tau_sq + {}*kappa_sq) with S = ({e1})*kappa_sq + ({e3})*tau_sq",
        e1 * e3,
        r - 1
    )
}

/// Whether the order-`r >= 3` relation admits some `κ², τ² > 0`.
///
/// Writing `τ² = x κ²`, the relation fixes
/// `κ² = c (ε₁ε₃ x + r - 1) / (ε₂ (ε₁ + ε₃ x)²)`, so a positive solution
/// exists iff the numerator can take the sign of `ε₂`: always when
/// `ε₁ε₃ = -1`, and exactly when `c ε₂ > 0` otherwise. Flat case: only the
/// degenerate combination survives, needing `ε₁ε₃ = -1`.
fn bracket_feasible(c: &Rat, eps: (Sign, Sign, Sign)) -> bool {
    let (e1, e2, e3) = eps;
    if c.is_zero() {
        return e1 * e3 == Sign::Minus;
    }
    if e1 * e3 == Sign::Minus {
        return true;
    }
    e2.apply(c.clone()).is_positive()
}

/// Proper `r`-harmonic 3-frame helices in a space form of curvature `c`.
///
/// Without `kappa_sq` the result describes the solution families and decides
/// their non-emptiness exactly. With `kappa_sq` it returns the admissible
/// `τ²` roots of the defining quadratic, both roots in ascending order when
/// admissible; zero roots are flagged degenerate rather than dropped.
pub fn classify_3frenet(
    c: &Rat,
    eps: (Sign, Sign, Sign),
    r: u32,
    kappa_sq: Option<&Rat>,
) -> Result<ClassificationResult, ClassifyError> {
    require_order(r)?;
    let theorem = "three_frenet_space_form_r_harmonic";
    let (e1, e2, e3) = eps;
    if let Some(q) = kappa_sq {
        if !q.is_positive() {
            return Err(ClassifyError::InvalidInput(format!(
                "kappa_sq must be positive, got {q}"
            )));
        }
    }

    if r == 2 {
        // linear relation ε₁κ² + ε₃τ² = c ε₁ ε₂
        let k = (e1 * e2).apply(c.clone());
        return Ok(match kappa_sq {
            Some(q) => {
                let tau_sq = e3.apply(k - e1.apply(q.clone()));
                if tau_sq.is_positive() {
                    ClassificationResult::feasible(
                        theorem,
                        vec![Solution::rational_value("tau_sq", &tau_sq, false)],
                    )
                } else if tau_sq.is_zero() {
                    let mut res = ClassificationResult::infeasible(
                        theorem,
                        "only the degenerate root tau_sq = 0 remains".into(),
                    );
                    res.solutions
                        .push(Solution::rational_value("tau_sq", &tau_sq, true));
                    res
                } else {
                    ClassificationResult::infeasible(
                        theorem,
                        format!("tau_sq = {tau_sq} is negative"),
                    )
                }
            }
            None => {
                if mixed_sign_linear_feasible(e1, e3, &k) {
                    ClassificationResult::feasible(
                        theorem,
                        vec![Solution::Family {
                            description: format!(
                                "({e1})*kappa_sq + ({e3})*tau_sq = {k}, both positive"
                            ),
                        }],
                    )
                } else {
                    ClassificationResult::infeasible(
                        theorem,
                        format!(
                            "({e1})*kappa_sq + ({e3})*tau_sq = {k} has no positive solutions"
                        ),
                    )
                }
            }
        });
    }

    // order three and beyond
    let mut solutions: Vec<Solution> = Vec::new();
    let degenerate_family_admissible = r >= 4 && e1 * e3 == Sign::Minus;

    match kappa_sq {
        None => {
            if degenerate_family_admissible || (c.is_zero() && bracket_feasible(c, eps)) {
                solutions.push(Solution::Family {
                    description: "kappa_sq = tau_sq (any positive value)".to_string(),
                });
            }
            if !c.is_zero() && bracket_feasible(c, eps) {
                solutions.push(Solution::Family {
                    description: bracket_family_description(eps, r),
                });
            }
            Ok(if solutions.is_empty() {
                ClassificationResult::infeasible(
                    theorem,
                    format!(
                        "no positive (kappa_sq, tau_sq) satisfies the order-{r} relation \
                         for c = {c} and signs ({e1},{e2},{e3})"
                    ),
                )
            } else {
                ClassificationResult::feasible(theorem, solutions)
            })
        }
        Some(q) => {
            // τ² roots of u² + ε₁ε₃(2κ² - cε₂) u + κ⁴ - (r-1) c ε₂ κ² = 0,
            // discriminant c² + 4 (r-2) c ε₂ κ².
            let two_q = rat_int(2) * q.clone();
            let lin = (e1 * e3).apply(two_q - e2.apply(c.clone()));
            let disc = c.clone() * c.clone()
                + rat_int(4 * (r as i64 - 2)) * e2.apply(c.clone() * q.clone());
            if degenerate_family_admissible {
                solutions.push(Solution::rational_value("tau_sq", q, false));
            }
            if !disc.is_negative() {
                let half = Rat::new(1.into(), 2.into());
                for sgn in [-1i64, 1] {
                    let root = QuadVal::new(
                        -lin.clone() * half.clone(),
                        rat_int(sgn) * half.clone(),
                        disc.clone(),
                    );
                    match root.signum() {
                        1 => {
                            // the degenerate family may reproduce a root
                            let duplicate = degenerate_family_admissible
                                && root.is_rational()
                                && root.rational_part() == q;
                            if !duplicate {
                                solutions.push(Solution::value("tau_sq", &root, false));
                            }
                        }
                        0 => solutions.push(Solution::value("tau_sq", &root, true)),
                        _ => {}
                    }
                    if disc.is_zero() {
                        break; // double root
                    }
                }
            }
            let any_proper = solutions.iter().any(|s| !s.is_degenerate());
            Ok(if any_proper {
                ClassificationResult::feasible(theorem, solutions)
            } else {
                let mut res = ClassificationResult::infeasible(
                    theorem,
                    if disc.is_negative() {
                        format!("discriminant {disc} is negative: no real tau_sq roots")
                    } else {
                        "no positive tau_sq root".to_string()
                    },
                );
                res.solutions = solutions;
                res
            })
        }
    }
}

// ---------------------------------------------------------------------------
// order n >= 4
// ---------------------------------------------------------------------------

/// The biharmonicity system of an order-`n >= 4` Frenet curve in a general
/// ambient space, assembled from the frame coefficients of `R(F_2, F_1) F_1`.
///
/// The curve is proper biharmonic iff `k_1` is a positive constant and each
/// listed quantity equals its required value.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralBiharmonicSystem<S> {
    /// Required value of `ε₁ k₁² + ε₃ k₂²`.
    pub curvature_sq_sum: S,
    /// Required value of `k₂'`.
    pub k2_slope: S,
    /// Required value of `ε₃ k₂ k₃`.
    pub k2_k3_product: S,
    /// `⟨R(F_2, F_1) F_1, F_i⟩` for frame indices `i >= 5`; all must vanish.
    pub higher_components: Vec<S>,
}

/// Builds [`GeneralBiharmonicSystem`] from the plain frame coefficients of
/// `R(F_2, F_1) F_1`.
pub fn biharmonic_system_general<S: Scalar>(
    eps: &[Sign],
    r_f2_f1_f1: &[S],
) -> Result<GeneralBiharmonicSystem<S>, ClassifyError> {
    let n = eps.len();
    if n < 4 || r_f2_f1_f1.len() != n {
        return Err(ClassifyError::UnsupportedOrder {
            got: n.min(r_f2_f1_f1.len()),
            want: "order >= 4 with a matching curvature vector",
        });
    }
    let ip = |i: usize| -> S { eps[i].apply(r_f2_f1_f1[i].clone()) };
    Ok(GeneralBiharmonicSystem {
        curvature_sq_sum: ip(1),
        k2_slope: -ip(2),
        k2_k3_product: -ip(3),
        higher_components: (4..n).map(ip).collect(),
    })
}

/// Biharmonic order-`n >= 4` curves in a space form.
///
/// Full curves (`κ₃ > 0`) are always infeasible; admitting `κ₃ = 0` leaves
/// the constraint family `ε₁κ₁² + ε₃κ₂² = c ε₁ ε₂` on constant `κ₁, κ₂`.
pub fn classify_nfrenet_biharmonic(
    eps: &[Sign],
    c: &Rat,
    full: bool,
) -> Result<ClassificationResult, ClassifyError> {
    let n = eps.len();
    if n < 4 {
        return Err(ClassifyError::UnsupportedOrder {
            got: n,
            want: "order >= 4",
        });
    }
    let theorem = "n_frenet_biharmonic_space_form";
    let (e1, e2, e3) = (eps[0], eps[1], eps[2]);
    if full {
        return Ok(ClassificationResult::infeasible(
            theorem,
            "the bitension keeps a component kappa1*kappa2*kappa3 along the fourth \
             frame vector, nonzero for a full curve"
                .into(),
        ));
    }
    let k = (e1 * e2).apply(c.clone());
    let family = Solution::Family {
        description: format!(
            "kappa1, kappa2 constant with ({e1})*kappa1_sq + ({e3})*kappa2_sq = {k}, kappa3 = 0"
        ),
    };
    Ok(if mixed_sign_linear_feasible(e1, e3, &k) {
        ClassificationResult::feasible(theorem, vec![family])
    } else {
        let mut res = ClassificationResult::infeasible(
            theorem,
            format!("({e1})*kappa1_sq + ({e3})*kappa2_sq = {k} has no positive solutions"),
        );
        res.solutions.push(family);
        res
    })
}

/// The two triharmonicity equations of an order-4/5 helix in a space form,
/// `S = ε₁κ₁² + ε₃κ₂²`:
///
/// 1. `S² + ε₂ε₄ κ₂²κ₃² = c ε₁ε₂ (2ε₁κ₁² + ε₃κ₂²)`
/// 2. `ε₂ S + ε₄(ε₃κ₃² + ε₅κ₄²) = c ε₁` (the `κ₄` term only at order five)
pub fn triharmonic_nfrenet_equations<S: Scalar>(
    eps: &[Sign],
    c: &S,
    kappa_sq: &[S],
) -> Result<(S, S), ClassifyError> {
    let n = eps.len();
    if !(n == 4 || n == 5) || kappa_sq.len() != n - 1 {
        return Err(ClassifyError::UnsupportedOrder {
            got: n,
            want: "order 4 or 5 with all squared curvatures",
        });
    }
    let q = |i: usize| kappa_sq[i].clone();
    let s1 = eps[0].apply(q(0)) + eps[2].apply(q(1));
    let eq1 = s1.clone() * s1.clone() + (eps[1] * eps[3]).apply(q(1) * q(2))
        - (eps[0] * eps[1]).apply(
            c.clone() * ((eps[0].apply(q(0) + q(0))) + eps[2].apply(q(1))),
        );
    let mut tail = eps[2].apply(q(2));
    if n == 5 {
        tail = tail + eps[4].apply(q(3));
    }
    let eq2 = eps[1].apply(s1) + eps[3].apply(tail) - eps[0].apply(c.clone());
    Ok((eq1, eq2))
}

/// Triharmonic order-4/5 helices in a space form.
///
/// With all `n-1` squared curvatures the pair of defining equations is
/// checked exactly. With the leading `n-2` the trailing squared curvature is
/// solved from the linear equation and then verified against the other.
pub fn classify_nfrenet_triharmonic(
    eps: &[Sign],
    c: &Rat,
    kappa_sq: &[Rat],
) -> Result<ClassificationResult, ClassifyError> {
    let n = eps.len();
    if !(n == 4 || n == 5) {
        return Err(ClassifyError::UnsupportedOrder {
            got: n,
            want: "order 4 or 5",
        });
    }
    let theorem = "n_frenet_triharmonic_space_form";
    if kappa_sq.iter().any(|q| !q.is_positive()) {
        return Err(ClassifyError::InvalidInput(
            "squared curvatures must be positive".into(),
        ));
    }

    if kappa_sq.len() == n - 1 {
        let (eq1, eq2) = triharmonic_nfrenet_equations(eps, c, kappa_sq)?;
        return Ok(if eq1.is_zero() && eq2.is_zero() {
            let solutions = kappa_sq
                .iter()
                .enumerate()
                .map(|(i, q)| Solution::rational_value(&format!("kappa{}_sq", i + 1), q, false))
                .collect();
            ClassificationResult::feasible(theorem, solutions)
        } else {
            ClassificationResult::infeasible(
                theorem,
                format!("defining equations leave residuals ({eq1}, {eq2})"),
            )
        });
    }

    if kappa_sq.len() != n - 2 {
        return Err(ClassifyError::InvalidInput(format!(
            "expected {} or {} squared curvatures for order {n}, got {}",
            n - 2,
            n - 1,
            kappa_sq.len()
        )));
    }

    // solve the linear equation for the trailing squared curvature
    let s1 = eps[0].apply(kappa_sq[0].clone()) + eps[2].apply(kappa_sq[1].clone());
    let trailing = if n == 4 {
        (eps[2] * eps[3]).apply(eps[0].apply(c.clone()) - eps[1].apply(s1))
    } else {
        (eps[3] * eps[4]).apply(
            eps[0].apply(c.clone())
                - eps[1].apply(s1)
                - (eps[2] * eps[3]).apply(kappa_sq[2].clone()),
        )
    };
    if !trailing.is_positive() {
        let mut res = ClassificationResult::infeasible(
            theorem,
            format!(
                "the linear equation forces kappa{}_sq = {trailing}, not positive",
                n - 1
            ),
        );
        if trailing.is_zero() {
            res.solutions.push(Solution::rational_value(
                &format!("kappa{}_sq", n - 1),
                &trailing,
                true,
            ));
        }
        return Ok(res);
    }
    let mut full: Vec<Rat> = kappa_sq.to_vec();
    full.push(trailing.clone());
    let (eq1, _) = triharmonic_nfrenet_equations(eps, c, &full)?;
    Ok(if eq1.is_zero() {
        ClassificationResult::feasible(
            theorem,
            vec![Solution::rational_value(
                &format!("kappa{}_sq", n - 1),
                &trailing,
                false,
            )],
        )
    } else {
        ClassificationResult::infeasible(
            theorem,
            format!("solved kappa{}_sq = {trailing} but the quadratic equation leaves {eq1}", n - 1),
        )
    })
}
