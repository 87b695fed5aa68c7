//! Polyharmonic Frenet curves in semi-Riemannian geometry.
//!
//! A curve is `r`-harmonic when its order-`r` tension field vanishes; order
//! two is the biharmonic case, order three the triharmonic one. This crate
//! classifies, synthesizes and numerically verifies such curves when the
//! ambient space is a semi-Riemannian space form of any index, a ruled
//! Lorentzian surface, a Lorentzian product, or a Robertson-Walker
//! space-time.
//!
//! The layers, bottom up:
//!
//! - [`metric`]: indefinite inner products, frame signatures, non-degenerate
//!   Gram-Schmidt.
//! - [`space_form`]: flat and quadric models with their frame-level curvature
//!   action and embedded covariant derivative.
//! - [`frenet`]: Frenet structure matrices and exact covariant-power
//!   recursions; everything is polynomial in the squared curvatures, so the
//!   same code runs on `f64` and on rationals.
//! - [`tension`]: the brute-force order-`r` tension-field oracle and the
//!   closed-form bitension/tritension expressions that cross-validate it.
//! - [`classify`]: closed-form feasibility and root solvers returning exact
//!   solution sets with floating presentations.
//! - [`synthesize`]: curve construction by adaptive integration of the frame
//!   system in a chart, with orthonormality-drift and on-model diagnostics.
//! - [`ruled`]: the ruled-Lorentz-surface pipeline producing a proper
//!   triharmonic curve with non-constant curvature.
//! - [`product`] and [`robertson_walker`]: lifts into Lorentzian products and
//!   warped-product criteria.
//! - [`cli`]: the `polyfrenet` command-line frontend (classify, synthesize,
//!   verify, sweep) with JSON/CSV output.
//!
//! Each major capability has a runnable program under `examples/`.

pub mod classify;
pub mod cli;
pub mod exact;
pub mod frenet;
mod jet;
pub mod metric;
pub mod ode;
pub mod product;
pub mod robertson_walker;
pub mod ruled;
pub mod scalar;
pub mod space_form;
pub mod synthesize;
pub mod tension;

pub use frenet::Helix;
pub use metric::{DiagonalMetric, Sign, Signature};
pub use space_form::SpaceForm;
pub use tension::{tension_field, FrameCurvature, SpaceFormCurvature, TensionResult};
