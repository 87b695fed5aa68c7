//! Curve synthesis: integrates the frame system with prescribed curvature
//! functions in a space-form chart and verifies the result numerically.
//!
//! The state is the curve point plus all frame vectors in ambient
//! coordinates. Frame orthonormality is conserved by the continuous system,
//! so its drift in the discrete solution is pure integrator error and serves
//! as the primary diagnostic, next to the on-quadric defect for curved
//! models.

use std::io::Write as IoWrite;

use serde::Serialize;
use thiserror::Error;

use crate::exact::decimal15;
use crate::frenet::Helix;
use crate::jet::Jet;
use crate::metric::{gram_schmidt_nondegenerate, MetricError, Signature};
use crate::ode::{integrate_path, OdeError, OdeOptions};
use crate::space_form::{GeometryError, SpaceForm};
use crate::tension::{tension_field, FrameCurvature, SpaceFormCurvature, TensionError};

#[derive(Debug, Error)]
pub enum SynthesisError {
    #[error("initial data invalid: {0}")]
    InitialData(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Tension(#[from] TensionError),
    #[error(
        "orthonormality drift {drift:e} exceeded the configured bound {bound:e} at s = {s}"
    )]
    DriftExceeded { drift: f64, bound: f64, s: f64 },
    #[error("curve left the model quadric: defect {defect:e} at s = {s}")]
    OffModel { defect: f64, s: f64 },
    #[error("curvature data supports tension orders up to 3, requested r = {got}")]
    InsufficientDerivatives { got: u32 },
}

/// Curvature value and derivatives up to fourth order at a parameter value.
pub type CurvatureJetFn = Box<dyn Fn(f64) -> [f64; 5] + Send + Sync>;

/// Frenet curve with prescribed smooth curvature functions.
pub struct FrenetCurve {
    pub sig: Signature,
    pub curvatures: Vec<CurvatureJetFn>,
}

impl FrenetCurve {
    pub fn new(sig: Signature, curvatures: Vec<CurvatureJetFn>) -> Result<Self, SynthesisError> {
        if curvatures.len() + 1 != sig.n() {
            return Err(SynthesisError::InitialData(format!(
                "expected {} curvature functions for a frame of order {}",
                sig.n() - 1,
                sig.n()
            )));
        }
        Ok(FrenetCurve { sig, curvatures })
    }

    fn values_at(&self, s: f64) -> Vec<f64> {
        self.curvatures.iter().map(|f| f(s)[0]).collect()
    }
}

/// Constant or variable curvature input for synthesis.
pub enum CurveSpec {
    Helix(Helix),
    Curve(FrenetCurve),
}

impl CurveSpec {
    pub fn sig(&self) -> &Signature {
        match self {
            CurveSpec::Helix(h) => h.sig(),
            CurveSpec::Curve(c) => &c.sig,
        }
    }

    fn curvatures_at(&self, s: f64) -> Vec<f64> {
        match self {
            CurveSpec::Helix(h) => h.kappas().to_vec(),
            CurveSpec::Curve(c) => c.values_at(s),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SynthesisTolerances {
    pub ode_rel: f64,
    pub ode_abs: f64,
    pub drift_max: f64,
}

impl Default for SynthesisTolerances {
    fn default() -> Self {
        SynthesisTolerances {
            ode_rel: 1e-10,
            ode_abs: 1e-12,
            drift_max: 1e-8,
        }
    }
}

/// Everything needed to synthesize one curve.
pub struct SynthesisProblem {
    pub geometry: SpaceForm,
    pub curve: CurveSpec,
    pub initial_point: Vec<f64>,
    pub initial_frame: Vec<Vec<f64>>,
    pub s_span: (f64, f64),
    pub samples: usize,
    pub tol: SynthesisTolerances,
    /// Re-orthonormalize the frame every this many samples (off by default);
    /// the applied correction is logged so it cannot mask an integration bug.
    pub reorthonormalize_every: Option<usize>,
}

impl SynthesisProblem {
    /// Problem with the model's standard initial point and frame.
    pub fn with_standard_frame(
        geometry: SpaceForm,
        curve: CurveSpec,
        s_span: (f64, f64),
        samples: usize,
        tol: SynthesisTolerances,
    ) -> Result<Self, SynthesisError> {
        let (initial_point, initial_frame) = geometry.standard_point_and_frame(curve.sig())?;
        Ok(SynthesisProblem {
            geometry,
            curve,
            initial_point,
            initial_frame,
            s_span,
            samples,
            tol,
            reorthonormalize_every: None,
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolutionDiagnostics {
    pub max_drift: f64,
    pub max_defect: f64,
    pub ode_steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reorth_max_correction: Option<f64>,
}

/// Sampled output of a synthesis run.
pub struct CurveSolution {
    pub sig: Signature,
    pub geometry: SpaceForm,
    pub s: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub frames: Vec<Vec<Vec<f64>>>,
    pub drift: Vec<f64>,
    pub defect: Vec<f64>,
    pub diagnostics: SolutionDiagnostics,
}

impl CurveSolution {
    /// CSV rows `s, point coords, frame vector coords, drift, defect`.
    pub fn write_csv<W: IoWrite>(&self, mut w: W) -> std::io::Result<()> {
        let dim = self.geometry.ambient_dim();
        let n = self.sig.n();
        write!(w, "s")?;
        for i in 0..dim {
            write!(w, ",x{i}")?;
        }
        for f in 0..n {
            for i in 0..dim {
                write!(w, ",f{}_{i}", f + 1)?;
            }
        }
        writeln!(w, ",drift,defect")?;
        for (idx, &s) in self.s.iter().enumerate() {
            write!(w, "{}", decimal15(s))?;
            for x in &self.points[idx] {
                write!(w, ",{}", decimal15(*x))?;
            }
            for frame_vec in &self.frames[idx] {
                for x in frame_vec {
                    write!(w, ",{}", decimal15(*x))?;
                }
            }
            writeln!(
                w,
                ",{},{}",
                decimal15(self.drift[idx]),
                decimal15(self.defect[idx])
            )?;
        }
        Ok(())
    }
}

fn pack_state(point: &[f64], frame: &[Vec<f64>]) -> Vec<f64> {
    let mut state = point.to_vec();
    for f in frame {
        state.extend_from_slice(f);
    }
    state
}

fn unpack_frames(state: &[f64], dim: usize, n: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let point = state[..dim].to_vec();
    let frames = (0..n)
        .map(|i| state[dim + i * dim..dim + (i + 1) * dim].to_vec())
        .collect();
    (point, frames)
}

/// Largest deviation of `⟨f_i, f_j⟩` from `ε_i δ_ij` over one frame.
pub fn frame_orthonormality_defect(
    frame: &[Vec<f64>],
    sig: &Signature,
    geometry: &SpaceForm,
) -> f64 {
    let metric = geometry.ambient_metric();
    let mut worst: f64 = 0.0;
    for i in 0..frame.len() {
        for j in i..frame.len() {
            let want = if i == j { sig.sign(i).as_f64() } else { 0.0 };
            let got = metric.inner_unchecked(&frame[i], &frame[j]);
            worst = worst.max((got - want).abs());
        }
    }
    worst
}

/// Maximum orthonormality drift over all samples of a solution.
pub fn orthonormality_drift(sol: &CurveSolution) -> f64 {
    sol.frames
        .iter()
        .map(|f| frame_orthonormality_defect(f, &sol.sig, &sol.geometry))
        .fold(0.0, f64::max)
}

/// Integrates the frame system of `problem` with adaptive steps, sampling a
/// uniform grid over the span. Aborts with a diagnostic when orthonormality
/// drift exceeds the configured bound.
pub fn integrate_frenet(problem: &SynthesisProblem) -> Result<CurveSolution, SynthesisError> {
    let geometry = problem.geometry;
    let sig = problem.curve.sig().clone();
    let n = sig.n();
    let dim = geometry.ambient_dim();
    let metric = geometry.ambient_metric();

    if problem.initial_point.len() != dim {
        return Err(SynthesisError::InitialData(format!(
            "initial point has {} coordinates, chart needs {dim}",
            problem.initial_point.len()
        )));
    }
    if problem.initial_frame.len() != n {
        return Err(SynthesisError::InitialData(format!(
            "initial frame has {} vectors, order is {n}",
            problem.initial_frame.len()
        )));
    }
    let defect0 = geometry.quadric_defect(&problem.initial_point)?;
    if defect0 > 1e-8 {
        return Err(SynthesisError::InitialData(format!(
            "initial point off the model, defect {defect0:e}"
        )));
    }
    let ortho0 = frame_orthonormality_defect(&problem.initial_frame, &sig, &geometry);
    if ortho0 > 1e-8 {
        return Err(SynthesisError::InitialData(format!(
            "initial frame not orthonormal for the requested signs, defect {ortho0:e}"
        )));
    }
    if !geometry.is_flat() {
        for (i, f) in problem.initial_frame.iter().enumerate() {
            let tangency = metric.inner_unchecked(f, &problem.initial_point).abs() * geometry.c.abs();
            if tangency > 1e-8 {
                return Err(SynthesisError::InitialData(format!(
                    "initial frame vector {i} is not tangent to the quadric"
                )));
            }
        }
    }

    let (s0, s1) = problem.s_span;
    let samples = problem.samples.max(2);
    let s_grid: Vec<f64> = (0..samples)
        .map(|i| s0 + (s1 - s0) * i as f64 / (samples - 1) as f64)
        .collect();

    let eps = sig.eps().to_vec();
    let curve = &problem.curve;
    let c = geometry.c;
    let chart_index = geometry.ambient_index();
    let rhs = move |s: f64, state: &[f64], out: &mut [f64]| {
        let kappas = curve.curvatures_at(s);
        let point = &state[..dim];
        let tangent = &state[dim..2 * dim];
        out[..dim].copy_from_slice(tangent);
        for i in 0..n {
            // covariant derivative of F_i from the frame equations
            for d in 0..dim {
                let mut acc = 0.0;
                if i > 0 {
                    acc -= eps[i - 1].as_f64()
                        * kappas[i - 1]
                        * state[dim + (i - 1) * dim + d];
                }
                if i + 1 < n {
                    acc += eps[i + 1].as_f64() * kappas[i] * state[dim + (i + 1) * dim + d];
                }
                out[dim + i * dim + d] = acc;
            }
            if c != 0.0 {
                // chart rule: d/ds X = (covariant derivative) - c ⟨X, T⟩ x
                let fi = &state[dim + i * dim..dim + (i + 1) * dim];
                let inner = inner_diag(fi, tangent, dim, chart_index);
                for d in 0..dim {
                    out[dim + i * dim + d] -= c * inner * point[d];
                }
            }
        }
    };

    let opts = OdeOptions {
        rel_tol: problem.tol.ode_rel,
        abs_tol: problem.tol.ode_abs,
        ..OdeOptions::default()
    };

    let mut s = Vec::with_capacity(samples);
    let mut points = Vec::with_capacity(samples);
    let mut frames = Vec::with_capacity(samples);
    let mut drift = Vec::with_capacity(samples);
    let mut defect = Vec::with_capacity(samples);
    let mut steps_total = 0usize;
    let mut reorth_max: Option<f64> = None;

    let mut t_cur = s0;
    let mut state = pack_state(&problem.initial_point, &problem.initial_frame);
    for (idx, &target) in s_grid.iter().enumerate() {
        if target > t_cur {
            let path = integrate_path(&rhs, t_cur, &state, &[target], &opts)?;
            state = path.states.into_iter().next().unwrap();
            steps_total += path.steps_accepted;
            t_cur = target;
        }
        let (point, frame) = unpack_frames(&state, dim, n);
        let d = frame_orthonormality_defect(&frame, &sig, &geometry);
        let q = geometry.quadric_defect(&point)?;
        if d > problem.tol.drift_max {
            return Err(SynthesisError::DriftExceeded {
                drift: d,
                bound: problem.tol.drift_max,
                s: target,
            });
        }
        if q > problem.tol.drift_max.max(crate::space_form::ON_MODEL_TOL) {
            return Err(SynthesisError::OffModel {
                defect: q,
                s: target,
            });
        }
        s.push(target);
        points.push(point.clone());
        frames.push(frame.clone());
        drift.push(d);
        defect.push(q);

        if let Some(every) = problem.reorthonormalize_every {
            if every > 0 && idx % every == every - 1 {
                let (clean, _) = gram_schmidt_nondegenerate(&frame, &geometry.ambient_metric())?;
                let mut correction: f64 = 0.0;
                for (a, b) in frame.iter().zip(&clean) {
                    for (x, y) in a.iter().zip(b) {
                        correction = correction.max((x - y).abs());
                    }
                }
                reorth_max = Some(reorth_max.unwrap_or(0.0).max(correction));
                state = pack_state(&point, &clean);
            }
        }
    }

    let diagnostics = SolutionDiagnostics {
        max_drift: drift.iter().copied().fold(0.0, f64::max),
        max_defect: defect.iter().copied().fold(0.0, f64::max),
        ode_steps: steps_total,
        reorth_max_correction: reorth_max,
    };
    Ok(CurveSolution {
        sig,
        geometry,
        s,
        points,
        frames,
        drift,
        defect,
        diagnostics,
    })
}

fn inner_diag(x: &[f64], y: &[f64], dim: usize, index: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..index {
        acc -= x[i] * y[i];
    }
    for i in index..dim {
        acc += x[i] * y[i];
    }
    acc
}

/// Tension residual (Euclidean norm of the frame coefficients) of the
/// prescribed curvature data at each sample.
///
/// Helix input evaluates the exact constant-coefficient tension field for any
/// order. Variable-curvature input builds the covariant powers from the
/// curvature jets, which requires `2r - 2 <= 4`.
pub fn numeric_tension(
    curve: &CurveSpec,
    table: &impl FrameCurvature<f64>,
    r: u32,
    s_points: &[f64],
) -> Result<Vec<f64>, SynthesisError> {
    match curve {
        CurveSpec::Helix(h) => {
            let residual = tension_field(h, table, r)?.residual_norm();
            Ok(vec![residual; s_points.len()])
        }
        CurveSpec::Curve(fc) => {
            if 2 * r as usize - 2 > 4 {
                return Err(SynthesisError::InsufficientDerivatives { got: r });
            }
            let n = fc.sig.n();
            let eps = fc.sig.eps();
            let top = 2 * r as usize - 1;
            let mut out = Vec::with_capacity(s_points.len());
            for &s in s_points {
                let kappa_jets: Vec<Jet> = fc
                    .curvatures
                    .iter()
                    .map(|f| Jet::from_derivatives(&f(s), 4))
                    .collect();
                let mut powers: Vec<Vec<Jet>> = Vec::with_capacity(top + 1);
                let mut v: Vec<Jet> = (0..n)
                    .map(|i| Jet::constant(if i == 0 { 1.0 } else { 0.0 }, top))
                    .collect();
                powers.push(v.clone());
                for _ in 0..top {
                    let mut next = Vec::with_capacity(n);
                    for i in 0..n {
                        // v_i' + ε_i (κ_{i-1} v_{i-1} - κ_i v_{i+1})
                        let deriv = v[i].derivative();
                        let mut combo = Jet::constant(0.0, deriv.degree());
                        if i > 0 {
                            combo = combo.add(&kappa_jets[i - 1].mul(&v[i - 1]));
                        }
                        if i + 1 < n {
                            combo = combo.add(&kappa_jets[i].mul(&v[i + 1]).scale(-1.0));
                        }
                        next.push(deriv.add(&combo.scale(eps[i].as_f64())));
                    }
                    v = next;
                    powers.push(v.clone());
                }
                let mut coeffs: Vec<f64> = powers[top].iter().map(Jet::value).collect();
                for ell in 0..(r as usize).saturating_sub(1) {
                    let x = &powers[top - 2 - ell];
                    let y = &powers[ell];
                    let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
                    for (a, xa) in x.iter().enumerate() {
                        if xa.value() == 0.0 {
                            continue;
                        }
                        for (b, yb) in y.iter().enumerate() {
                            if yb.value() == 0.0 {
                                continue;
                            }
                            let action = table.tangent_action(a, b, n);
                            for (slot, act) in coeffs.iter_mut().zip(action) {
                                *slot += sign * xa.value() * yb.value() * act;
                            }
                        }
                    }
                }
                out.push(coeffs.iter().map(|x| x * x).sum::<f64>().sqrt());
            }
            Ok(out)
        }
    }
}

/// Convenience: residuals of a space-form synthesis run at its own samples.
pub fn numeric_tension_in_space_form(
    curve: &CurveSpec,
    geometry: &SpaceForm,
    r: u32,
    s_points: &[f64],
) -> Result<Vec<f64>, SynthesisError> {
    let table = SpaceFormCurvature::new(geometry.c, curve.sig().sign(0));
    numeric_tension(curve, &table, r, s_points)
}

/// Estimates the curvature functions of a synthesized curve from its sampled
/// frames by central differences, one row per interior sample.
///
/// Returns `(s_values, curvatures)` where `curvatures[i]` holds
/// `k_1..k_{n-1}` at `s_values[i]`. The step enters the estimate only through
/// first-order differences of the frame vectors.
pub fn frenet_analysis(sol: &CurveSolution) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = sol.sig.n();
    let metric = sol.geometry.ambient_metric();
    let mut s_out = Vec::new();
    let mut k_out = Vec::new();
    for idx in 1..sol.s.len().saturating_sub(1) {
        let h = sol.s[idx + 1] - sol.s[idx - 1];
        if h <= 0.0 {
            continue;
        }
        let mut ks = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            // k_i = ⟨∇_T F_i, F_{i+1}⟩ since ⟨F_{i+1}, F_{i+1}⟩ = ε_{i+1}
            // cancels the frame-equation sign; the quadric correction is
            // orthogonal to F_{i+1}, so the plain difference quotient works
            // in every model.
            let fi_prev = &sol.frames[idx - 1][i];
            let fi_next = &sol.frames[idx + 1][i];
            let df: Vec<f64> = fi_next
                .iter()
                .zip(fi_prev)
                .map(|(a, b)| (a - b) / h)
                .collect();
            ks.push(metric.inner_unchecked(&df, &sol.frames[idx][i + 1]));
        }
        s_out.push(sol.s[idx]);
        k_out.push(ks);
    }
    (s_out, k_out)
}

/// Linear interpolation through sampled curvature values, exposed as
/// curvature jets with zero higher derivatives beyond the secant slope.
pub fn interpolated_curvatures(
    s: &[f64],
    k: &[Vec<f64>],
    sig: Signature,
) -> Result<FrenetCurve, SynthesisError> {
    let n = sig.n();
    let s = s.to_vec();
    let k = k.to_vec();
    let mut fns: Vec<CurvatureJetFn> = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let s = s.clone();
        let k = k.clone();
        fns.push(Box::new(move |x: f64| {
            let pos = s.partition_point(|&v| v < x).clamp(1, s.len() - 1);
            let (s0, s1) = (s[pos - 1], s[pos]);
            let (k0, k1) = (k[pos - 1][i], k[pos][i]);
            let slope = if s1 > s0 { (k1 - k0) / (s1 - s0) } else { 0.0 };
            [k0 + slope * (x - s0), slope, 0.0, 0.0, 0.0]
        }));
    }
    FrenetCurve::new(sig, fns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Signature;

    fn flat_lorentz3() -> SpaceForm {
        SpaceForm::flat(3, 1).unwrap()
    }

    fn helix_spec(eps: &[i64], kappas: &[f64]) -> CurveSpec {
        let sig = Signature::minimal_ambient_ints(eps).unwrap();
        CurveSpec::Helix(Helix::new(sig, kappas.to_vec()).unwrap())
    }

    #[test]
    fn zero_curvature_gives_a_straight_line() {
        let sf = flat_lorentz3();
        let sig = Signature::from_ints(&[1], 3, 1).unwrap();
        let curve = CurveSpec::Curve(
            FrenetCurve::new(sig, vec![]).unwrap(),
        );
        let problem = SynthesisProblem::with_standard_frame(
            sf,
            curve,
            (0.0, 5.0),
            11,
            SynthesisTolerances::default(),
        )
        .unwrap();
        let sol = integrate_frenet(&problem).unwrap();
        assert!(sol.diagnostics.max_drift == 0.0);
        for (i, p) in sol.points.iter().enumerate() {
            let s = sol.s[i];
            assert!((p[1] - s).abs() < 1e-12);
            assert!(p[0].abs() < 1e-12 && p[2].abs() < 1e-12);
        }
    }

    #[test]
    fn flat_helix_integration_has_tiny_drift() {
        let problem = SynthesisProblem::with_standard_frame(
            flat_lorentz3(),
            helix_spec(&[1, 1, -1], &[1.0, 1.0]),
            (0.0, 10.0),
            101,
            SynthesisTolerances::default(),
        )
        .unwrap();
        let sol = integrate_frenet(&problem).unwrap();
        assert!(sol.diagnostics.max_drift < 1e-8, "{}", sol.diagnostics.max_drift);
        assert_eq!(sol.diagnostics.max_defect, 0.0);
    }

    #[test]
    fn drift_bound_holds_on_long_spans_at_default_tolerances() {
        // oscillatory frame (skew structure matrix), curvature magnitude 4,
        // span 20: the drift stays under 1e-8 at the default tolerances
        let sf = SpaceForm::flat(4, 1).unwrap();
        let sig = Signature::from_ints(&[1, 1, 1], 4, 1).unwrap();
        let helix = Helix::new(sig, vec![4.0, 3.0]).unwrap();
        let problem = SynthesisProblem::with_standard_frame(
            sf,
            CurveSpec::Helix(helix),
            (0.0, 20.0),
            101,
            SynthesisTolerances::default(),
        )
        .unwrap();
        let sol = integrate_frenet(&problem).unwrap();
        assert!(
            sol.diagnostics.max_drift < 1e-8,
            "{:e}",
            sol.diagnostics.max_drift
        );
    }

    #[test]
    fn coarse_tolerances_trip_the_drift_diagnostic() {
        let tol = SynthesisTolerances {
            ode_rel: 1e-2,
            ode_abs: 1e-2,
            drift_max: 1e-6,
        };
        // κ ≠ τ keeps the frame system away from the polynomial special case
        let problem = SynthesisProblem::with_standard_frame(
            flat_lorentz3(),
            helix_spec(&[1, 1, -1], &[2.0, 1.0]),
            (0.0, 50.0),
            26,
            tol,
        )
        .unwrap();
        match integrate_frenet(&problem) {
            Err(SynthesisError::DriftExceeded { drift, .. }) => {
                assert!(drift > 1e-6);
            }
            Ok(sol) => panic!(
                "expected drift failure, got max drift {:e}",
                sol.diagnostics.max_drift
            ),
            Err(other) => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn chart_covariant_derivative_reproduces_the_frame_equation() {
        // integrate on the curved model, difference the sampled tangent, and
        // project with embedded_connection: the result must be ε₂ κ N. This
        // ties the chart correction to the frame equations through data
        // alone, independently of the coefficient algebra.
        let sphere = SpaceForm::new(2, 1, 1.0).unwrap();
        let sig = Signature::from_ints(&[-1, 1], 3, 1).unwrap();
        let kappa = 2f64.sqrt();
        let helix = Helix::new(sig, vec![kappa]).unwrap();
        let problem = SynthesisProblem::with_standard_frame(
            sphere,
            CurveSpec::Helix(helix),
            (0.0, 1.0),
            2001,
            SynthesisTolerances::default(),
        )
        .unwrap();
        let sol = integrate_frenet(&problem).unwrap();
        let h = sol.s[2] - sol.s[0];
        for idx in (1..sol.s.len() - 1).step_by(100) {
            let dt: Vec<f64> = sol.frames[idx + 1][0]
                .iter()
                .zip(&sol.frames[idx - 1][0])
                .map(|(a, b)| (a - b) / h)
                .collect();
            let covariant = sphere.embedded_connection(&sol.points[idx], &dt).unwrap();
            // ε₂ κ N with ε₂ = +1
            for (got, n_comp) in covariant.iter().zip(&sol.frames[idx][1]) {
                assert!(
                    (got - kappa * n_comp).abs() < 1e-5,
                    "sample {idx}: {got} vs {}",
                    kappa * n_comp
                );
            }
        }
    }

    #[test]
    fn great_circle_stays_on_the_sphere() {
        // geodesic on the round sphere as the c > 0 conservation check
        let sf = SpaceForm::new(2, 1, 1.0).unwrap();
        let sig = Signature::from_ints(&[1], 3, 1).unwrap();
        let curve = CurveSpec::Curve(FrenetCurve::new(sig, vec![]).unwrap());
        let problem = SynthesisProblem::with_standard_frame(
            sf,
            curve,
            (0.0, 2.0 * std::f64::consts::PI),
            61,
            SynthesisTolerances::default(),
        )
        .unwrap();
        let sol = integrate_frenet(&problem).unwrap();
        assert!(sol.diagnostics.max_defect < 1e-8);
    }

    #[test]
    fn helix_residuals_match_the_exact_tension_field() {
        let spec = helix_spec(&[1, 1, -1], &[1.0, 1.0]);
        let sf = flat_lorentz3();
        for r in 2..=4 {
            let res = numeric_tension_in_space_form(&spec, &sf, r, &[0.0, 1.0]).unwrap();
            assert!(res.iter().all(|&x| x == 0.0), "r={r}: {res:?}");
        }
        let off = helix_spec(&[1, 1, -1], &[1.1, 1.0]);
        let res = numeric_tension_in_space_form(&off, &sf, 2, &[0.0]).unwrap();
        assert!(res[0] > 0.01);
    }

    #[test]
    fn jet_mode_agrees_with_exact_mode_on_helices() {
        let sig = Signature::minimal_ambient_ints(&[1, 1, -1]).unwrap();
        let jets: Vec<CurvatureJetFn> = vec![
            Box::new(|_| [1.3, 0.0, 0.0, 0.0, 0.0]),
            Box::new(|_| [0.7, 0.0, 0.0, 0.0, 0.0]),
        ];
        let curve = CurveSpec::Curve(FrenetCurve::new(sig.clone(), jets).unwrap());
        let helix = helix_spec(&[1, 1, -1], &[1.3, 0.7]);
        let sf = SpaceForm::new(3, 1, -1.0).unwrap();
        for r in 2..=3 {
            let a = numeric_tension_in_space_form(&curve, &sf, r, &[0.3]).unwrap();
            let b = numeric_tension_in_space_form(&helix, &sf, r, &[0.3]).unwrap();
            assert!((a[0] - b[0]).abs() < 1e-6 * b[0].abs().max(1.0), "r={r}");
        }
    }

    #[test]
    fn jet_mode_rejects_orders_needing_more_derivatives() {
        let sig = Signature::minimal_ambient_ints(&[1, 1]).unwrap();
        let jets: Vec<CurvatureJetFn> = vec![Box::new(|s| [s.sin() + 2.0, s.cos(), -s.sin(), -s.cos(), s.sin()])];
        let curve = CurveSpec::Curve(FrenetCurve::new(sig, jets).unwrap());
        let sf = flat_lorentz3();
        assert!(matches!(
            numeric_tension_in_space_form(&curve, &sf, 4, &[0.0]),
            Err(SynthesisError::InsufficientDerivatives { got: 4 })
        ));
    }

    #[test]
    fn reconstruction_from_analyzed_curvatures_reproduces_the_curve() {
        let problem = SynthesisProblem::with_standard_frame(
            flat_lorentz3(),
            helix_spec(&[1, 1, -1], &[1.0, 1.0]),
            (0.0, 5.0),
            2001,
            SynthesisTolerances::default(),
        )
        .unwrap();
        let sol = integrate_frenet(&problem).unwrap();
        let (s_k, ks) = frenet_analysis(&sol);
        // estimated curvatures sit near the prescribed constants
        for row in &ks {
            assert!((row[0] - 1.0).abs() < 1e-5);
            assert!((row[1] - 1.0).abs() < 1e-5);
        }
        let sig = sol.sig.clone();
        let rebuilt_curve = interpolated_curvatures(&s_k, &ks, sig).unwrap();
        let span = (s_k[0], s_k[s_k.len() - 1]);
        let rebuilt_problem = SynthesisProblem {
            geometry: flat_lorentz3(),
            curve: CurveSpec::Curve(rebuilt_curve),
            initial_point: sol.points[1].clone(),
            initial_frame: sol.frames[1].clone(),
            s_span: span,
            samples: 51,
            tol: SynthesisTolerances::default(),
            reorthonormalize_every: None,
        };
        let rebuilt = integrate_frenet(&rebuilt_problem).unwrap();
        // reference: the original helix integrated on the same shifted grid
        let reference_problem = SynthesisProblem {
            geometry: flat_lorentz3(),
            curve: helix_spec(&[1, 1, -1], &[1.0, 1.0]),
            initial_point: sol.points[1].clone(),
            initial_frame: sol.frames[1].clone(),
            s_span: span,
            samples: 51,
            tol: SynthesisTolerances::default(),
            reorthonormalize_every: None,
        };
        let reference = integrate_frenet(&reference_problem).unwrap();
        for (i, (got, want)) in rebuilt.points.iter().zip(&reference.points).enumerate() {
            for (a, b) in got.iter().zip(want) {
                assert!((a - b).abs() < 1e-6, "sample {i}: {a} vs {b}");
            }
        }
    }
}
