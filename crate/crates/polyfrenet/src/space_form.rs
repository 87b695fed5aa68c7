//! Space-form geometry: flat pseudo-Euclidean space and the curved models
//! realized as quadrics in one dimension higher.
//!
//! A model with curvature `c > 0` lives in the quadric `⟨x, x⟩ = 1/c` of the
//! flat space with the same index; a model with `c < 0` lives in the quadric
//! of the flat space with index one higher. Covariant differentiation along
//! curves is the ambient derivative followed by tangent projection, which
//! keeps a checkable conservation law `⟨x(s), x(s)⟩ = 1/c`.

use thiserror::Error;

use crate::metric::{DiagonalMetric, Sign, Signature};
use crate::scalar::Scalar;

/// Default tolerance for the on-quadric check `|⟨x, x⟩ - 1/c|`.
pub const ON_MODEL_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("index {index} must satisfy 1 <= index <= {dim} - 1")]
    InvalidIndex { index: usize, dim: usize },
    #[error("frame index {got} out of range for order {order}")]
    FrameIndexOutOfRange { got: usize, order: usize },
    #[error("point is off the model quadric: |<x,x> - 1/c| = {defect:e}")]
    OffModel { defect: f64 },
    #[error("coordinate vector has length {got}, ambient chart needs {want}")]
    ChartDimension { got: usize, want: usize },
}

/// Semi-Riemannian space form of dimension `m`, index `t` and constant
/// sectional curvature `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceForm {
    pub m: usize,
    pub t: usize,
    pub c: f64,
}

impl SpaceForm {
    pub fn new(m: usize, t: usize, c: f64) -> Result<Self, GeometryError> {
        if t < 1 || t + 1 > m {
            return Err(GeometryError::InvalidIndex { index: t, dim: m });
        }
        Ok(SpaceForm { m, t, c })
    }

    pub fn flat(m: usize, t: usize) -> Result<Self, GeometryError> {
        SpaceForm::new(m, t, 0.0)
    }

    pub fn is_flat(&self) -> bool {
        self.c == 0.0
    }

    /// Dimension of the ambient chart: `m` when flat, `m + 1` for quadrics.
    pub fn ambient_dim(&self) -> usize {
        if self.is_flat() {
            self.m
        } else {
            self.m + 1
        }
    }

    /// Index of the ambient chart metric. The negatively curved model sits in
    /// a flat space of index `t + 1`.
    pub fn ambient_index(&self) -> usize {
        if self.c < 0.0 {
            self.t + 1
        } else {
            self.t
        }
    }

    pub fn ambient_metric(&self) -> DiagonalMetric {
        DiagonalMetric::new(self.ambient_dim(), self.ambient_index())
    }

    /// `|⟨x, x⟩ - 1/c|` for curved models, `0` for the flat chart.
    pub fn quadric_defect(&self, point: &[f64]) -> Result<f64, GeometryError> {
        let metric = self.ambient_metric();
        if point.len() != metric.dim() {
            return Err(GeometryError::ChartDimension {
                got: point.len(),
                want: metric.dim(),
            });
        }
        if self.is_flat() {
            return Ok(0.0);
        }
        Ok((metric.inner_unchecked(point, point) - 1.0 / self.c).abs())
    }

    /// Covariant derivative along a curve from the ambient derivative.
    ///
    /// Given the ambient derivative `dx` of a tangent field at `point`, strips
    /// the component normal to the quadric so the result is again tangent;
    /// the flat chart returns `dx` unchanged. Errors when the base point is
    /// off the quadric beyond [`ON_MODEL_TOL`].
    pub fn embedded_connection(
        &self,
        point: &[f64],
        dx: &[f64],
    ) -> Result<Vec<f64>, GeometryError> {
        if self.is_flat() {
            if dx.len() != self.m {
                return Err(GeometryError::ChartDimension {
                    got: dx.len(),
                    want: self.m,
                });
            }
            return Ok(dx.to_vec());
        }
        let defect = self.quadric_defect(point)?;
        if defect > ON_MODEL_TOL {
            return Err(GeometryError::OffModel { defect });
        }
        let metric = self.ambient_metric();
        if dx.len() != metric.dim() {
            return Err(GeometryError::ChartDimension {
                got: dx.len(),
                want: metric.dim(),
            });
        }
        // x itself spans the normal line of the quadric and ⟨x, x⟩ = 1/c.
        let coeff = self.c * metric.inner_unchecked(dx, point);
        Ok(dx
            .iter()
            .zip(point)
            .map(|(d, p)| d - coeff * p)
            .collect())
    }

    /// Ambient derivative of a tangent field with prescribed covariant
    /// derivative: the inverse of [`SpaceForm::embedded_connection`].
    ///
    /// `tangent` is the curve velocity; the correction `-c ⟨x_field, tangent⟩ x`
    /// restores the second-fundamental-form part that tangent projection
    /// removes.
    pub fn ambient_derivative(
        &self,
        point: &[f64],
        covariant: &[f64],
        field: &[f64],
        tangent: &[f64],
    ) -> Vec<f64> {
        if self.is_flat() {
            return covariant.to_vec();
        }
        let metric = self.ambient_metric();
        let coeff = self.c * metric.inner_unchecked(field, tangent);
        covariant
            .iter()
            .zip(point)
            .map(|(dv, p)| dv - coeff * p)
            .collect()
    }

    /// Frame coefficients of `R(F_a, F_b) F_c` for a frame with signature
    /// `sig`, indices 0-based: `c (ε_b δ_bc e_a - ε_a δ_ac e_b)`.
    pub fn curvature_on_frame(
        &self,
        sig: &Signature,
        a: usize,
        b: usize,
        c_idx: usize,
    ) -> Result<Vec<f64>, GeometryError> {
        let n = sig.n();
        for &i in &[a, b, c_idx] {
            if i >= n {
                return Err(GeometryError::FrameIndexOutOfRange { got: i, order: n });
            }
        }
        Ok(space_form_curvature_action(
            self.c,
            sig.eps(),
            a,
            b,
            c_idx,
        ))
    }

    /// A standard point of the model together with an orthonormal tangent
    /// frame whose signs realize `sig`.
    ///
    /// Flat models use coordinate basis vectors. Curved models sit at the
    /// quadric point along the distinguished axis (the last positive axis for
    /// `c > 0`, the first negative axis for `c < 0`) and draw the frame from
    /// the remaining coordinate directions, scaled to unit length.
    pub fn standard_point_and_frame(
        &self,
        sig: &Signature,
    ) -> Result<(Vec<f64>, Vec<Vec<f64>>), GeometryError> {
        let dim = self.ambient_dim();
        let index = self.ambient_index();
        let neg_needed = sig.eps().iter().filter(|e| e.is_minus()).count();
        let pos_needed = sig.n() - neg_needed;
        if neg_needed > self.t || pos_needed > self.m - self.t {
            return Err(GeometryError::FrameIndexOutOfRange {
                got: sig.n(),
                order: self.m,
            });
        }

        let mut point = vec![0.0; dim];
        // Coordinate axes spanning the tangent space at the standard point.
        let (neg_axes, pos_axes): (Vec<usize>, Vec<usize>) = if self.is_flat() {
            ((0..self.t).collect(), (self.t..self.m).collect())
        } else if self.c > 0.0 {
            point[dim - 1] = 1.0 / self.c.sqrt();
            ((0..index).collect(), (index..dim - 1).collect())
        } else {
            point[0] = 1.0 / (-self.c).sqrt();
            ((1..index).collect(), (index..dim).collect())
        };

        let mut next_neg = neg_axes.into_iter();
        let mut next_pos = pos_axes.into_iter();
        let mut frame = Vec::with_capacity(sig.n());
        for &e in sig.eps() {
            let axis = match e {
                Sign::Minus => next_neg.next(),
                Sign::Plus => next_pos.next(),
            }
            .ok_or(GeometryError::FrameIndexOutOfRange {
                got: sig.n(),
                order: self.m,
            })?;
            let mut v = vec![0.0; dim];
            v[axis] = 1.0;
            frame.push(v);
        }
        Ok((point, frame))
    }
}

/// `R(F_a, F_b) F_c` over an arbitrary scalar, frame coefficients, 0-based.
pub fn space_form_curvature_action<S: Scalar>(
    curvature: S,
    eps: &[Sign],
    a: usize,
    b: usize,
    c_idx: usize,
) -> Vec<S> {
    let mut out = vec![S::zero(); eps.len()];
    if b == c_idx {
        out[a] = out[a].clone() + eps[b].apply(curvature.clone());
    }
    if a == c_idx {
        out[b] = out[b].clone() - eps[a].apply(curvature);
    }
    out
}
