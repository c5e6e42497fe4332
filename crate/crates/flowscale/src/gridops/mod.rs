//! Uniform grids and discrete vector calculus.
//!
//! Two grid kinds cover the two far-field behaviours in
//! [`crate::fieldkit`]: periodic boxes (sampled on `[0, P)` per axis,
//! differentiated spectrally) and truncated boxes (sampled on `[-R, R]`
//! inclusive, differentiated with 4th-order central differences and
//! one-sided 4th-order closures at the faces). The same dispatch applies to
//! the Poisson solver: spectral division on periodic boxes, zero-padded
//! free-space convolution on truncated ones.
//!
//! Precision expectations, verified by the test suites: spectral operators
//! resolve band-limited fields to round-off; the difference operators
//! converge at 4th order on smooth decaying fields; quadratures are
//! spectrally accurate for periodic integrands (rectangle rule) and for
//! rapidly decaying integrands (trapezoid rule).

mod fd;
mod grid;
mod io;
mod norms;
mod ops;
mod poisson;
mod spectral;

pub use grid::{sample, sample_vorticity, Grid, GridKind, ScalarSample, SampledField};
pub use io::{read_binary, write_binary, write_csv_scalar, write_csv_vector};
pub use norms::{bkm_integral, energy, norms, sup_magnitude, NormSet};
pub use ops::{curl, divergence, gradient, laplacian, laplacian_scalar, CurlSample};
pub(crate) use ops::partial;
pub use poisson::{green_sum_reference, poisson_solve, PoissonSolution, UNIT_CELL_POTENTIAL};

use crate::fieldkit::FieldError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("grid kind mismatch: field needs {expected}, grid is {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error(
        "field does not decay inside the truncated box: boundary magnitude {max_boundary:e} \
         exceeds {tolerance:e}; a half-width of about {required_radius} is needed"
    )]
    BoundaryDecay {
        max_boundary: f64,
        tolerance: f64,
        required_radius: f64,
    },
    #[error(
        "right-hand side does not decay at the truncated boundary \
         (boundary/interior ratio {boundary_ratio:e})"
    )]
    NonDecayingRhs { boundary_ratio: f64 },
    #[error("field `{0}` cannot be sampled on a grid")]
    Unsampleable(String),
    #[error("field has no closed-form vorticity")]
    MissingVorticity,
    #[error("non-finite value produced while sampling")]
    NonFiniteSample,
    #[error("bad time range: {0}")]
    BadTimeRange(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("i/o: {0}")]
    Io(String),
}
