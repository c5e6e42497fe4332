//! Grids and field sampling.

use super::GridError;
use crate::fieldkit::{AnalyticField, DecayClass, Vorticity};
use crate::gridops::ops::CurlSample;

/// How a grid covers its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Covers `[0, P)` per axis with `n` points, spacing `P/n` (the right
    /// endpoint is the wrap-around image of the left one).
    Periodic,
    /// Covers `[-R, R]` per axis inclusive with `n` points, spacing
    /// `2R/(n-1)`.
    Truncated,
}

impl GridKind {
    /// Short human-readable name used in diagnostics and reports.
    pub fn label(self) -> &'static str {
        match self {
            GridKind::Periodic => "periodic-box",
            GridKind::Truncated => "truncated-box",
        }
    }
}

/// A uniform tensor-product grid in 1, 2, or 3 dimensions. Unused axes have
/// one point and zero extent. Storage order is x-fastest:
/// `flat = (k·n₁ + j)·n₀ + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub kind: GridKind,
    pub dims: usize,
    pub n: [usize; 3],
    /// Period per axis (periodic) or half-width `R` per axis (truncated).
    pub extents: [f64; 3],
}

impl Grid {
    /// Periodic box. Points per axis must be powers of two, at least 8.
    pub fn periodic(dims: usize, n: [usize; 3], periods: [f64; 3]) -> Result<Grid, GridError> {
        let g = Grid {
            kind: GridKind::Periodic,
            dims,
            n: normalize_n(dims, n),
            extents: normalize_extents(dims, periods),
        };
        g.validate()?;
        for a in 0..dims {
            if !g.n[a].is_power_of_two() {
                return Err(GridError::BadGrid(format!(
                    "periodic axis {a} needs a power-of-two point count, got {}",
                    g.n[a]
                )));
            }
        }
        Ok(g)
    }

    /// Truncated box `[-R, R]` per axis, endpoints included.
    pub fn truncated(dims: usize, n: [usize; 3], half_widths: [f64; 3]) -> Result<Grid, GridError> {
        let g = Grid {
            kind: GridKind::Truncated,
            dims,
            n: normalize_n(dims, n),
            extents: normalize_extents(dims, half_widths),
        };
        g.validate()?;
        Ok(g)
    }

    /// The grid a field naturally lives on, with `n` points per used axis:
    /// its periodic cell for periodic fields, the truncated cube of
    /// half-width [`AnalyticField::suggested_radius`] for decaying ones.
    pub fn for_field(field: &AnalyticField, n: usize) -> Result<Grid, GridError> {
        match field.decay {
            DecayClass::Periodic => {
                let p = field.periods().expect("periodic fields have periods");
                Grid::periodic(field.dim, [n; 3], p)
            }
            DecayClass::Schwartz => {
                let r = field.suggested_radius();
                Grid::truncated(field.dim, [n; 3], [r; 3])
            }
            DecayClass::Channel => Err(GridError::Unsampleable(field.name.clone())),
        }
    }

    fn validate(&self) -> Result<(), GridError> {
        if !(1..=3).contains(&self.dims) {
            return Err(GridError::BadGrid(format!("dimension {} not in 1..=3", self.dims)));
        }
        for a in 0..self.dims {
            if self.n[a] < 8 {
                return Err(GridError::BadGrid(format!(
                    "axis {a} has {} points; at least 8 required",
                    self.n[a]
                )));
            }
            if !(self.extents[a].is_finite() && self.extents[a] > 0.0) {
                return Err(GridError::BadGrid(format!(
                    "axis {a} extent {} must be positive and finite",
                    self.extents[a]
                )));
            }
        }
        Ok(())
    }

    /// Grid spacing along a used axis.
    pub fn spacing(&self, axis: usize) -> f64 {
        match self.kind {
            GridKind::Periodic => self.extents[axis] / self.n[axis] as f64,
            GridKind::Truncated => 2.0 * self.extents[axis] / (self.n[axis] - 1) as f64,
        }
    }

    /// Coordinate of lattice index `i` along `axis` (0 on unused axes).
    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        if axis >= self.dims {
            return 0.0;
        }
        match self.kind {
            GridKind::Periodic => i as f64 * self.spacing(axis),
            GridKind::Truncated => -self.extents[axis] + i as f64 * self.spacing(axis),
        }
    }

    /// Total number of lattice points.
    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat index of `(i, j, k)`.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.n[1] + j) * self.n[0] + i
    }

    /// Lattice indices of a flat index.
    pub fn unravel(&self, flat: usize) -> [usize; 3] {
        let i = flat % self.n[0];
        let j = (flat / self.n[0]) % self.n[1];
        let k = flat / (self.n[0] * self.n[1]);
        [i, j, k]
    }

    /// Physical coordinates of a flat index.
    pub fn point(&self, flat: usize) -> [f64; 3] {
        let [i, j, k] = self.unravel(flat);
        [
            self.coordinate(0, i),
            self.coordinate(1, j),
            self.coordinate(2, k),
        ]
    }

    /// Whether a flat index lies on the boundary of a truncated box.
    pub fn is_boundary(&self, flat: usize) -> bool {
        let idx = self.unravel(flat);
        (0..self.dims).any(|a| idx[a] == 0 || idx[a] == self.n[a] - 1)
    }

    /// Quadrature weight of a flat index: the rectangle rule on periodic
    /// boxes (spectrally accurate for periodic integrands), the trapezoid
    /// rule on truncated ones.
    pub fn quadrature_weight(&self, flat: usize) -> f64 {
        let mut w = 1.0;
        let idx = self.unravel(flat);
        for a in 0..self.dims {
            let h = self.spacing(a);
            w *= match self.kind {
                GridKind::Periodic => h,
                GridKind::Truncated => {
                    if idx[a] == 0 || idx[a] == self.n[a] - 1 {
                        0.5 * h
                    } else {
                        h
                    }
                }
            };
        }
        w
    }
}

/// Calls `f(start, stride)` once per 1-D lattice line running along
/// `axis`, so callers can process strided lines without reshaping.
pub(crate) fn for_each_line(grid: &Grid, axis: usize, mut f: impl FnMut(usize, usize)) {
    let strides = [1, grid.n[0], grid.n[0] * grid.n[1]];
    let (a1, a2) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    for q in 0..grid.n[a2] {
        for p in 0..grid.n[a1] {
            f(p * strides[a1] + q * strides[a2], strides[axis]);
        }
    }
}

fn normalize_n(dims: usize, n: [usize; 3]) -> [usize; 3] {
    let mut out = [1; 3];
    out[..dims.min(3)].copy_from_slice(&n[..dims.min(3)]);
    out
}

fn normalize_extents(dims: usize, e: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    out[..dims.min(3)].copy_from_slice(&e[..dims.min(3)]);
    out
}

/// Vector field samples on a grid, one array per component, plus the sample
/// time.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub grid: Grid,
    pub components: [Vec<f64>; 3],
    pub t: f64,
}

/// Scalar field samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarSample {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub t: f64,
}

fn check_compatible(field: &AnalyticField, grid: &Grid) -> Result<(), GridError> {
    let expected = match field.decay {
        DecayClass::Periodic => GridKind::Periodic,
        DecayClass::Schwartz => GridKind::Truncated,
        DecayClass::Channel => return Err(GridError::Unsampleable(field.name.clone())),
    };
    if grid.kind != expected {
        return Err(GridError::KindMismatch {
            expected: expected.label(),
            got: grid.kind.label(),
        });
    }
    if grid.dims != field.dim {
        return Err(GridError::DimensionMismatch {
            expected: field.dim,
            got: grid.dims,
        });
    }
    Ok(())
}

/// Checks that a decaying field has sunk below its boundary tolerance on the
/// truncated box faces; `magnitudes[flat]` is the Euclidean magnitude at
/// each point.
fn check_boundary_decay(
    field: &AnalyticField,
    grid: &Grid,
    magnitudes: impl Fn(usize) -> f64,
) -> Result<(), GridError> {
    if grid.kind != GridKind::Truncated {
        return Ok(());
    }
    let tol = field.boundary_tolerance();
    let mut max_boundary = 0.0_f64;
    for flat in 0..grid.len() {
        if grid.is_boundary(flat) {
            max_boundary = max_boundary.max(magnitudes(flat));
        }
    }
    if max_boundary > tol {
        return Err(GridError::BoundaryDecay {
            max_boundary,
            tolerance: tol,
            required_radius: field.suggested_radius(),
        });
    }
    Ok(())
}

/// Samples a field's velocity on a grid at time `t`. The grid kind must
/// match the field's decay class, and on truncated boxes the field must
/// have decayed below its boundary tolerance on the faces.
pub fn sample(field: &AnalyticField, grid: &Grid, t: f64) -> Result<SampledField, GridError> {
    check_compatible(field, grid)?;
    field.check_time(t).map_err(GridError::Field)?;
    let len = grid.len();
    let mut components = [
        vec![0.0; len],
        vec![0.0; len],
        vec![0.0; len],
    ];
    for flat in 0..len {
        let u = field.velocity(grid.point(flat), t);
        if u.iter().any(|v| !v.is_finite()) {
            return Err(GridError::NonFiniteSample);
        }
        for c in 0..3 {
            components[c][flat] = u[c];
        }
    }
    check_boundary_decay(field, grid, |flat| {
        let u = [
            components[0][flat],
            components[1][flat],
            components[2][flat],
        ];
        (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt()
    })?;
    Ok(SampledField {
        grid: grid.clone(),
        components,
        t,
    })
}

/// Samples a field's closed-form vorticity on a grid: a scalar sample in
/// 2-D, a vector sample in 3-D. Errors if the field has no stored vorticity.
pub fn sample_vorticity(
    field: &AnalyticField,
    grid: &Grid,
    t: f64,
) -> Result<CurlSample, GridError> {
    check_compatible(field, grid)?;
    field.check_time(t).map_err(GridError::Field)?;
    let len = grid.len();
    let probe = field
        .vorticity(grid.point(0), t)
        .ok_or(GridError::MissingVorticity)?;
    match probe {
        Vorticity::Scalar(_) => {
            let mut values = vec![0.0; len];
            for (flat, v) in values.iter_mut().enumerate() {
                match field.vorticity(grid.point(flat), t) {
                    Some(Vorticity::Scalar(w)) => *v = w,
                    _ => return Err(GridError::MissingVorticity),
                }
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(GridError::NonFiniteSample);
            }
            Ok(CurlSample::Scalar(ScalarSample {
                grid: grid.clone(),
                values,
                t,
            }))
        }
        Vorticity::Vector(_) => {
            let mut components = [
                vec![0.0; len],
                vec![0.0; len],
                vec![0.0; len],
            ];
            for flat in 0..len {
                match field.vorticity(grid.point(flat), t) {
                    Some(Vorticity::Vector(w)) => {
                        if w.iter().any(|v| !v.is_finite()) {
                            return Err(GridError::NonFiniteSample);
                        }
                        for c in 0..3 {
                            components[c][flat] = w[c];
                        }
                    }
                    _ => return Err(GridError::MissingVorticity),
                }
            }
            Ok(CurlSample::Vector(SampledField {
                grid: grid.clone(),
                components,
                t,
            }))
        }
    }
}
