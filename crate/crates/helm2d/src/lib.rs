//! Boundary-integral toolkit for two-dimensional Helmholtz transmission
//! problems.
//!
//! The crate solves time-harmonic scattering by a penetrable cylinder with a
//! smooth cross-section Γ separating an interior material (ε₁, μ₁) from an
//! exterior one (ε₀, μ₀), and studies the complex eigenfrequencies of the
//! associated boundary-integral formulations:
//!
//! * [`specfun`] — cylinder functions J_n, Y_n, H⁽¹⁾_n of integer order for
//!   complex argument, accurate to ~1e-13 relative over a wide support box.
//! * [`geometry`] — smooth closed parametric curves (circle, smooth star) and
//!   their even-count equispaced discretizations.
//! * [`layerpot`] — single-, double-, adjoint-double-layer and hypersingular
//!   boundary operators discretized with a Nyström method using the periodic
//!   logarithmic product quadrature (spectral accuracy on analytic curves),
//!   plus off-boundary potential evaluation.
//! * [`systems`] — the Burton-Miller-regularized direct 2×2 block system and
//!   the mixed direct-indirect 3×3 block system for the transmission problem,
//!   forward scattering solves, and field evaluation.
//! * [`circle_oracle`] — closed-form Fourier-mode reduction of both systems
//!   on a circle: per-mode matrices, the transmission and fictitious-resonance
//!   determinants, a mode-by-mode root finder, and the series solution of the
//!   plane-wave transmission problem.
//! * [`ssm`] — a moment-based contour-integral eigensolver for nonlinear
//!   eigenproblems (block-Hankel variant) over rectangular regions tiled into
//!   subcontours.
//! * [`window`] / [`pairing`] — rectangular search regions in the complex
//!   frequency plane, and greedy one-to-one matching of eigenvalue lists.
//! * [`cli`] — the `helm2d` command-line front end (`oracle-eigs`,
//!   `ssm-eigs`, `scatter`, `selftest`) with deterministic CSV/JSON output.
//!
//! The two formulations are different linearizations of the same physics; the
//! toolkit's central cross-check is that their eigenvalue distributions agree
//! with each other and, on the circle, with the analytic oracle.

// Input validation throughout the crate writes `!(x > 0.0)` rather than
// `x <= 0.0` so that NaN is rejected along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circle_oracle;
pub mod cli;
mod error;
pub mod geometry;
pub mod layerpot;
pub mod linalg;
pub mod pairing;
pub mod specfun;
pub mod ssm;
pub mod systems;
pub mod window;

pub use error::{Error, Result};
pub use window::Window;
