//! Scaling-weight calculus, closed-form flow fields, grid operators, and
//! verification procedures for self-similar incompressible flows.
//!
//! The crate is organized as five layers:
//!
//! * [`scalecalc`] — an exact-rational *isobaric weight* calculus over a small
//!   expression language. Under the one-parameter rescaling `x → k^{a_x} x`,
//!   `t → k^{a_t} t`, `ρ → k^{a_ρ} ρ`, every dimensional quantity picks up a
//!   power of `k`; the exponent is its *weight*. The module parses textual
//!   expressions, assigns weights, and decides whether equations are
//!   scale-invariant.
//! * [`fieldkit`] — a gallery of closed-form space–time velocity fields with
//!   hand-coded derivatives, construction of trigonometric fields from a mode
//!   table, and one-parameter self-similar families built around any gallery
//!   entry.
//! * [`gridops`] — uniform grids (periodic boxes and truncated cubes),
//!   spectral and fourth-order finite-difference derivative operators,
//!   Poisson inversion, norms, and a vorticity-supremum time integral.
//! * [`verifier`] — named verification procedures that combine the layers
//!   below into pass/fail or informational reports with machine-readable
//!   output.
//! * [`scaling`] — exponent predictions for vorticity / velocity / energy
//!   growth under parabolic rescaling, the reference exponent table, and a
//!   log–log slope measurement harness that checks predictions numerically.
//!
//! All rational arithmetic is exact (`i64` numerator/denominator); floating
//! point enters only where fields are evaluated numerically.

pub mod fieldkit;
pub mod gridops;
pub mod rat;
pub mod scalecalc;
pub mod scaling;
pub mod verifier;
