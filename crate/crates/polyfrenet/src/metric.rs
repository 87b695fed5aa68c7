//! Indefinite inner products, frame signatures and non-degenerate
//! Gram-Schmidt orthonormalization.
//!
//! The metric is always the diagonal model with `index` minus signs followed
//! by plus signs; curved geometries enter only through [`crate::space_form`].

use std::fmt;
use std::ops::Mul;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

/// Relative threshold under which a projected vector counts as null.
///
/// Separates genuine null directions from roundoff at desk scale: the squared
/// indefinite length is compared against `DEGENERACY_REL_TOL` times the squared
/// Euclidean length of the same vector.
pub const DEGENERACY_REL_TOL: f64 = 1e-10;

/// Sign of a unit frame vector, `⟨F, F⟩ = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn is_minus(self) -> bool {
        matches!(self, Sign::Minus)
    }

    /// Multiplies a scalar by this sign.
    pub fn apply<S: Scalar>(self, x: S) -> S {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }

    pub fn from_int(v: i64) -> Result<Self, SignatureError> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(SignatureError::InvalidSignEntry { value: other }),
        }
    }

    /// Sign of a nonzero float.
    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(deserializer)?;
        Sign::from_int(v).map_err(D::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("sign entries must be +1 or -1, got {value}")]
    InvalidSignEntry { value: i64 },
    #[error("{count} negative signs exceed the metric index {index}")]
    TooManyNegative { count: usize, index: usize },
    #[error("{count} positive signs exceed the {max} positive directions of the metric")]
    TooManyPositive { count: usize, max: usize },
    #[error("metric index {index} must satisfy 1 <= index <= {dim} - 1")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("frame order {order} exceeds the ambient dimension {dim}")]
    OrderExceedsDimension { order: usize, dim: usize },
}

/// Ordered list of frame signs inside an ambient metric of given dimension
/// and index. Gatekeeper for every sign-sensitive formula in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    eps: Vec<Sign>,
    ambient_dim: usize,
    ambient_index: usize,
}

impl Signature {
    pub fn new(
        eps: Vec<Sign>,
        ambient_dim: usize,
        ambient_index: usize,
    ) -> Result<Self, SignatureError> {
        let sig = Signature {
            eps,
            ambient_dim,
            ambient_index,
        };
        sig.validate()?;
        Ok(sig)
    }

    /// Builds a signature from `±1` integers.
    pub fn from_ints(
        eps: &[i64],
        ambient_dim: usize,
        ambient_index: usize,
    ) -> Result<Self, SignatureError> {
        let eps = eps
            .iter()
            .map(|&v| Sign::from_int(v))
            .collect::<Result<Vec<_>, _>>()?;
        Signature::new(eps, ambient_dim, ambient_index)
    }

    /// Checks every signature invariant; the error names the violated count.
    pub fn validate(&self) -> Result<(), SignatureError> {
        let Signature {
            eps,
            ambient_dim: m,
            ambient_index: t,
        } = self;
        if *t < 1 || *t + 1 > *m {
            return Err(SignatureError::IndexOutOfRange { index: *t, dim: *m });
        }
        if eps.len() > *m {
            return Err(SignatureError::OrderExceedsDimension {
                order: eps.len(),
                dim: *m,
            });
        }
        let neg = eps.iter().filter(|e| e.is_minus()).count();
        let pos = eps.len() - neg;
        if neg > *t {
            return Err(SignatureError::TooManyNegative {
                count: neg,
                index: *t,
            });
        }
        if pos > *m - *t {
            return Err(SignatureError::TooManyPositive {
                count: pos,
                max: *m - *t,
            });
        }
        Ok(())
    }

    /// Frame order `n`.
    pub fn n(&self) -> usize {
        self.eps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn ambient_index(&self) -> usize {
        self.ambient_index
    }

    pub fn eps(&self) -> &[Sign] {
        &self.eps
    }

    /// Sign of the `i`-th frame vector, 0-based.
    pub fn sign(&self, i: usize) -> Sign {
        self.eps[i]
    }

    /// Embeds a sign pattern in the smallest ambient `(m, t)` that admits it.
    ///
    /// Every pattern is realizable: `t` negative and `m - t` positive
    /// directions are chosen to cover the counts, padding so `1 <= t <= m-1`.
    pub fn minimal_ambient(eps: Vec<Sign>) -> Result<Self, SignatureError> {
        let neg = eps.iter().filter(|e| e.is_minus()).count();
        let pos = eps.len() - neg;
        let t = neg.max(1);
        let m = (t + pos).max(t + 1);
        Signature::new(eps, m, t)
    }

    /// [`Signature::minimal_ambient`] from `±1` integers.
    pub fn minimal_ambient_ints(eps: &[i64]) -> Result<Self, SignatureError> {
        let eps = eps
            .iter()
            .map(|&v| Sign::from_int(v))
            .collect::<Result<Vec<_>, _>>()?;
        Signature::minimal_ambient(eps)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.eps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(
            f,
            ") in dim {} index {}",
            self.ambient_dim, self.ambient_index
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("vector length {got} does not match metric dimension {dim}")]
    DimensionMismatch { got: usize, dim: usize },
    #[error("vector {index} is linearly dependent on its predecessors")]
    DependentVector { index: usize },
    #[error(
        "degenerate span at vector {index}: projected squared length {length_sq:e} \
         is null relative to its Euclidean size"
    )]
    DegenerateSpan { index: usize, length_sq: f64 },
}

/// Diagonal metric of the pseudo-Euclidean space: `index` minus signs
/// followed by `dim - index` plus signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalMetric {
    dim: usize,
    index: usize,
}

impl DiagonalMetric {
    pub fn new(dim: usize, index: usize) -> Self {
        assert!(index <= dim, "metric index cannot exceed the dimension");
        DiagonalMetric { dim, index }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Sign of the `i`-th coordinate direction.
    pub fn coordinate_sign(&self, i: usize) -> Sign {
        if i < self.index {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// Indefinite inner product `-Σ_{i<t} x_i y_i + Σ_{i>=t} x_i y_i`.
    pub fn inner(&self, x: &[f64], y: &[f64]) -> Result<f64, MetricError> {
        if x.len() != self.dim {
            return Err(MetricError::DimensionMismatch {
                got: x.len(),
                dim: self.dim,
            });
        }
        if y.len() != self.dim {
            return Err(MetricError::DimensionMismatch {
                got: y.len(),
                dim: self.dim,
            });
        }
        Ok(self.inner_unchecked(x, y))
    }

    /// Like [`DiagonalMetric::inner`] but assumes matching lengths.
    pub fn inner_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.index {
            acc -= x[i] * y[i];
        }
        for i in self.index..self.dim {
            acc += x[i] * y[i];
        }
        acc
    }
}

/// Convenience wrapper for a one-off indefinite inner product.
pub fn inner_product(
    x: &[f64],
    y: &[f64],
    metric: &DiagonalMetric,
) -> Result<f64, MetricError> {
    metric.inner(x, y)
}

fn euclidean_norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Gram-Schmidt for an indefinite metric.
///
/// Returns an orthonormal frame with `⟨E_i, E_j⟩ = ε_i δ_ij` and the signs as
/// a [`Signature`], preserving `span{E_1..E_k} = span{v_1..v_k}` for every
/// prefix. Fails when some leading span carries a degenerate restricted
/// product (the projected vector is null up to [`DEGENERACY_REL_TOL`]).
pub fn gram_schmidt_nondegenerate(
    vectors: &[Vec<f64>],
    metric: &DiagonalMetric,
) -> Result<(Vec<Vec<f64>>, Signature), MetricError> {
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    let mut signs: Vec<Sign> = Vec::with_capacity(vectors.len());

    for (idx, v) in vectors.iter().enumerate() {
        if v.len() != metric.dim() {
            return Err(MetricError::DimensionMismatch {
                got: v.len(),
                dim: metric.dim(),
            });
        }
        let mut w = v.clone();
        for (e, &sign) in frame.iter().zip(&signs) {
            // coefficient of v along e is ε ⟨v, e⟩ since ⟨e, e⟩ = ε
            let coeff = sign.apply(metric.inner_unchecked(v, e));
            for (wi, ei) in w.iter_mut().zip(e) {
                *wi -= coeff * ei;
            }
        }
        let euclid_sq = euclidean_norm_sq(&w);
        let original_sq = euclidean_norm_sq(v);
        if euclid_sq <= f64::EPSILON * f64::EPSILON * original_sq.max(1.0) {
            return Err(MetricError::DependentVector { index: idx });
        }
        let q = metric.inner_unchecked(&w, &w);
        if q.abs() < DEGENERACY_REL_TOL * euclid_sq {
            return Err(MetricError::DegenerateSpan {
                index: idx,
                length_sq: q,
            });
        }
        let scale = q.abs().sqrt();
        for wi in w.iter_mut() {
            *wi /= scale;
        }
        signs.push(Sign::of(q));
        frame.push(w);
    }

    let sig = Signature {
        eps: signs,
        ambient_dim: metric.dim(),
        ambient_index: metric.index(),
    };
    Ok((frame, sig))
}
