//! Ruled Lorentz surface swept by the normal line of a curve in flat
//! Lorentz 3-space, and the pipeline producing a proper triharmonic curve
//! with non-constant curvature on it.
//!
//! The construction fixes the binormal sign `+1` and, for the certified
//! branch, tangent sign `-1` and normal sign `+1`. The curvature profile
//! solves `5 (k')² + k⁴ = 1` (the reduced first integral with constants
//! `0` and `1`), equivalently `k'' = -(2/5) k³`, and the squared torsion
//! follows from the normal component of the tritension.

use std::io::Write as IoWrite;

use serde::Serialize;
use thiserror::Error;

use crate::exact::decimal15;
use crate::metric::Sign;
use crate::ode::{integrate_path, OdeError, OdeOptions};

/// Positivity floor under which the produced squared torsion is treated as
/// outside the admissible window.
pub const TORSION_SQ_FLOOR: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuledError {
    #[error("initial profile value {got} must lie in (0, (1/2)^(1/4))")]
    InitialValueOutOfRange { got: f64 },
    #[error("squared torsion {got:e} is negative outside the admissible window")]
    NegativeTorsionSq { got: f64 },
    #[error("sign combination eps1 + 5 eps2 = 0 makes the torsion formula singular")]
    SingularSigns,
    #[error("no admissible window: squared torsion stays under the floor {floor:e}")]
    EmptyWindow { floor: f64 },
    #[error(transparent)]
    Ode(#[from] OdeError),
}

/// First fundamental form coefficients `(E, F, G)` of the ruled strip at
/// offset `v` from the base curve, where `k` and `tau` are the curve data at
/// the same parameter: `E = ε₁ (1 - ε₁ k v)² + ε₃ τ² v²`, `F = 0`, `G = ε₂`.
pub fn first_fundamental_form(
    v: f64,
    k: f64,
    tau: f64,
    eps: (Sign, Sign, Sign),
) -> (f64, f64, f64) {
    let (e1, e2, e3) = eps;
    let a = 1.0 - e1.as_f64() * k * v;
    let e = e1.as_f64() * a * a + e3.as_f64() * tau * tau * v * v;
    (e, 0.0, e2.as_f64())
}

/// Gaussian curvature of the strip along the base curve:
/// `-ε₁ε₂ε₃ τ²`, which is `τ²` in the Lorentz configuration
/// `ε₁ε₂ε₃ = -1`.
pub fn gauss_curvature_along_curve(tau: f64, eps: (Sign, Sign, Sign)) -> f64 {
    let (e1, e2, e3) = eps;
    -(e1 * e2 * e3).as_f64() * tau * tau
}

/// Squared torsion forced by the triharmonicity of the profile:
/// `τ² = 63 (1 - 2 k⁴) / (10 k² (ε₁ + 5 ε₂))`.
pub fn torsion_sq_from_profile(kbar: f64, eps1: Sign, eps2: Sign) -> Result<f64, RuledError> {
    let denom_sign = eps1.value() + 5 * eps2.value();
    if denom_sign == 0 {
        return Err(RuledError::SingularSigns);
    }
    let value = 63.0 * (1.0 - 2.0 * kbar.powi(4)) / (10.0 * kbar * kbar * denom_sign as f64);
    if value < 0.0 {
        return Err(RuledError::NegativeTorsionSq { got: value });
    }
    Ok(value)
}

/// Residuals of the two triharmonicity equations on the strip:
/// `res1 = k''' k + 2 k³ k' + 2 k' k''` and
/// `res2 = (ε₁ k'' - 2 ε₂ k³) τ² + k'''' + 10 k² k'' + 15 k (k')² + k⁵`.
#[allow(clippy::too_many_arguments)]
pub fn triharmonic_residual(
    k: f64,
    k_d1: f64,
    k_d2: f64,
    k_d3: f64,
    k_d4: f64,
    tau_sq: f64,
    eps1: Sign,
    eps2: Sign,
) -> (f64, f64) {
    let res1 = k_d3 * k + 2.0 * k.powi(3) * k_d1 + 2.0 * k_d1 * k_d2;
    let res2 = (eps1.as_f64() * k_d2 - 2.0 * eps2.as_f64() * k.powi(3)) * tau_sq
        + k_d4
        + 10.0 * k * k * k_d2
        + 15.0 * k * k_d1 * k_d1
        + k.powi(5);
    (res1, res2)
}

/// Sampled curvature profile: value, derivatives through fourth order, and
/// the conservation residual `5 (k')² + k⁴ - 1`.
#[derive(Clone, Debug)]
pub struct ProfileSolution {
    pub s: Vec<f64>,
    pub k: Vec<f64>,
    pub k_d1: Vec<f64>,
    pub k_d2: Vec<f64>,
    pub k_d3: Vec<f64>,
    pub k_d4: Vec<f64>,
    pub conservation: Vec<f64>,
}

/// Integrates the profile equation `k'' = -(2/5) k³` from
/// `k(s0) = k0, k'(s0) = +sqrt((1-k0⁴)/5)` over the span.
///
/// Higher derivatives come from differentiating the equation itself, so they
/// satisfy it identically; the conservation residual measures integrator
/// error alone.
pub fn solve_profile(
    k0: f64,
    s_span: (f64, f64),
    samples: usize,
    opts: &OdeOptions,
) -> Result<ProfileSolution, RuledError> {
    let upper = 0.5f64.powf(0.25);
    if !(k0 > 0.0 && k0 < upper) {
        return Err(RuledError::InitialValueOutOfRange { got: k0 });
    }
    let samples = samples.max(2);
    let (s0, s1) = s_span;
    let grid: Vec<f64> = (0..samples)
        .map(|i| s0 + (s1 - s0) * i as f64 / (samples - 1) as f64)
        .collect();
    let kd0 = ((1.0 - k0.powi(4)) / 5.0).sqrt();
    let rhs = |_s: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = -0.4 * y[0].powi(3);
    };
    let path = integrate_path(rhs, s0, &[k0, kd0], &grid, opts)?;

    let mut out = ProfileSolution {
        s: grid,
        k: Vec::with_capacity(samples),
        k_d1: Vec::with_capacity(samples),
        k_d2: Vec::with_capacity(samples),
        k_d3: Vec::with_capacity(samples),
        k_d4: Vec::with_capacity(samples),
        conservation: Vec::with_capacity(samples),
    };
    for state in &path.states {
        let (k, kd) = (state[0], state[1]);
        let kdd = -0.4 * k.powi(3);
        out.k.push(k);
        out.k_d1.push(kd);
        out.k_d2.push(kdd);
        out.k_d3.push(-1.2 * k * k * kd);
        out.k_d4.push(-2.4 * k * kd * kd - 1.2 * k * k * kdd);
        out.conservation.push(5.0 * kd * kd + k.powi(4) - 1.0);
    }
    Ok(out)
}

/// Output of the full pipeline over the admissible window.
#[derive(Clone, Debug)]
pub struct RuledPipeline {
    pub eps: (Sign, Sign, Sign),
    pub profile: ProfileSolution,
    pub tau_sq: Vec<f64>,
    pub res1: Vec<f64>,
    pub res2: Vec<f64>,
    /// Ruling half-width: half the smallest offset at which `E` degenerates.
    pub delta: f64,
    pub summary: RuledSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct RuledSummary {
    pub window: (f64, f64),
    pub delta: f64,
    pub k_range: (f64, f64),
    pub max_conservation_residual: f64,
    pub max_res1: f64,
    pub max_res2: f64,
}

impl RuledPipeline {
    /// CSV rows `s, k, k', tau, res1, res2`.
    pub fn write_csv<W: IoWrite>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "s,k,k_d1,tau,res1,res2")?;
        for i in 0..self.profile.s.len() {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                decimal15(self.profile.s[i]),
                decimal15(self.profile.k[i]),
                decimal15(self.profile.k_d1[i]),
                decimal15(self.tau_sq[i].sqrt()),
                decimal15(self.res1[i]),
                decimal15(self.res2[i]),
            )?;
        }
        Ok(())
    }
}

/// Runs the full construction with the certified signs
/// `(ε₁, ε₂, ε₃) = (-1, +1, +1)`: profile, torsion, residuals, admissible
/// window and ruling half-width.
///
/// The window is clipped to the samples where the squared torsion stays
/// above [`TORSION_SQ_FLOOR`]; the profile keeps its own validity beyond it.
pub fn ruled_pipeline(
    k0: f64,
    s_span: (f64, f64),
    samples: usize,
    opts: &OdeOptions,
) -> Result<RuledPipeline, RuledError> {
    let eps = (Sign::Minus, Sign::Plus, Sign::Plus);
    let full = solve_profile(k0, s_span, samples, opts)?;

    // admissible prefix: squared torsion above the floor
    let mut cut = 0;
    for (i, &k) in full.k.iter().enumerate() {
        let tau_sq = 63.0 * (1.0 - 2.0 * k.powi(4)) / (40.0 * k * k);
        if tau_sq < TORSION_SQ_FLOOR {
            break;
        }
        cut = i + 1;
    }
    if cut < 2 {
        return Err(RuledError::EmptyWindow {
            floor: TORSION_SQ_FLOOR,
        });
    }
    let profile = ProfileSolution {
        s: full.s[..cut].to_vec(),
        k: full.k[..cut].to_vec(),
        k_d1: full.k_d1[..cut].to_vec(),
        k_d2: full.k_d2[..cut].to_vec(),
        k_d3: full.k_d3[..cut].to_vec(),
        k_d4: full.k_d4[..cut].to_vec(),
        conservation: full.conservation[..cut].to_vec(),
    };

    let mut tau_sq = Vec::with_capacity(cut);
    let mut res1 = Vec::with_capacity(cut);
    let mut res2 = Vec::with_capacity(cut);
    let mut delta: f64 = f64::INFINITY;
    for i in 0..cut {
        let t2 = torsion_sq_from_profile(profile.k[i], eps.0, eps.1)?;
        let (r1, r2) = triharmonic_residual(
            profile.k[i],
            profile.k_d1[i],
            profile.k_d2[i],
            profile.k_d3[i],
            profile.k_d4[i],
            t2,
            eps.0,
            eps.1,
        );
        let tau = t2.sqrt();
        let k = profile.k[i];
        // E(v) = -(1 + k v)² + τ² v² vanishes first at these offsets
        let mut margin = 1.0 / (tau + k);
        if tau > k {
            margin = margin.min(1.0 / (tau - k));
        }
        delta = delta.min(margin / 2.0);
        tau_sq.push(t2);
        res1.push(r1);
        res2.push(r2);
    }

    let k_min = profile.k.iter().copied().fold(f64::INFINITY, f64::min);
    let k_max = profile.k.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let summary = RuledSummary {
        window: (profile.s[0], profile.s[cut - 1]),
        delta,
        k_range: (k_min, k_max),
        max_conservation_residual: profile
            .conservation
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max),
        max_res1: res1.iter().map(|x| x.abs()).fold(0.0, f64::max),
        max_res2: res2.iter().map(|x| x.abs()).fold(0.0, f64::max),
    };
    Ok(RuledPipeline {
        eps,
        profile,
        tau_sq,
        res1,
        res2,
        delta,
        summary,
    })
}
