//! Discrete differential operators: spectral on periodic grids,
//! fourth-order finite differences on truncated grids.

use super::grid::{for_each_line, Grid, GridKind, SampledField, ScalarSample};
use super::{fd, spectral, GridError};

/// Curl of a sampled field: a scalar in two dimensions, a vector in three.
#[derive(Debug, Clone, PartialEq)]
pub enum CurlSample {
    Scalar(ScalarSample),
    Vector(SampledField),
}

impl CurlSample {
    pub fn grid(&self) -> &Grid {
        match self {
            CurlSample::Scalar(s) => &s.grid,
            CurlSample::Vector(v) => &v.grid,
        }
    }

    /// Pointwise Euclidean magnitude of the vorticity.
    pub fn magnitude(&self, flat: usize) -> f64 {
        match self {
            CurlSample::Scalar(s) => s.values[flat].abs(),
            CurlSample::Vector(v) => {
                let w = [
                    v.components[0][flat],
                    v.components[1][flat],
                    v.components[2][flat],
                ];
                (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt()
            }
        }
    }
}

/// `order`-th partial derivative along `axis`, dispatched on the grid kind.
/// Unused axes differentiate to zero.
pub(crate) fn partial(grid: &Grid, values: &[f64], axis: usize, order: u32) -> Vec<f64> {
    if axis >= grid.dims || grid.n[axis] == 1 {
        return vec![0.0; values.len()];
    }
    match grid.kind {
        GridKind::Periodic => spectral::derivative_axis(grid, values, axis, order),
        GridKind::Truncated => fd_axis(grid, values, axis, order),
    }
}

fn fd_axis(grid: &Grid, values: &[f64], axis: usize, order: u32) -> Vec<f64> {
    let n = grid.n[axis];
    let h = grid.spacing(axis);
    let mut out = vec![0.0; values.len()];
    let mut line = vec![0.0; n];
    let mut dline = vec![0.0; n];
    for_each_line(grid, axis, |start, stride| {
        for (q, v) in line.iter_mut().enumerate() {
            *v = values[start + q * stride];
        }
        match order {
            1 => fd::d1_line(&line, h, &mut dline),
            2 => fd::d2_line(&line, h, &mut dline),
            _ => unreachable!("only first and second derivatives are used"),
        }
        for (q, v) in dline.iter().enumerate() {
            out[start + q * stride] = *v;
        }
    });
    out
}

/// `∇·u` as a scalar sample on the same grid.
pub fn divergence(u: &SampledField) -> ScalarSample {
    let g = &u.grid;
    let mut values = vec![0.0; g.len()];
    for a in 0..g.dims {
        let d = partial(g, &u.components[a], a, 1);
        for (v, dv) in values.iter_mut().zip(&d) {
            *v += dv;
        }
    }
    ScalarSample {
        grid: g.clone(),
        values,
        t: u.t,
    }
}

/// `∇×u`: the scalar `∂₁u₂ − ∂₂u₁` in 2-D, the full vector in 3-D.
/// One-dimensional fields have no curl.
pub fn curl(u: &SampledField) -> Result<CurlSample, GridError> {
    let g = &u.grid;
    match g.dims {
        2 => {
            let dxu2 = partial(g, &u.components[1], 0, 1);
            let dyu1 = partial(g, &u.components[0], 1, 1);
            let values = dxu2.iter().zip(&dyu1).map(|(a, b)| a - b).collect();
            Ok(CurlSample::Scalar(ScalarSample {
                grid: g.clone(),
                values,
                t: u.t,
            }))
        }
        3 => {
            let mut components = [
                vec![0.0; g.len()],
                vec![0.0; g.len()],
                vec![0.0; g.len()],
            ];
            // ω_i = ∂_j u_k − ∂_k u_j for cyclic (i, j, k).
            for (i, (j, k)) in [(0, (1, 2)), (1, (2, 0)), (2, (0, 1))] {
                let a = partial(g, &u.components[k], j, 1);
                let b = partial(g, &u.components[j], k, 1);
                for (flat, c) in components[i].iter_mut().enumerate() {
                    *c = a[flat] - b[flat];
                }
            }
            Ok(CurlSample::Vector(SampledField {
                grid: g.clone(),
                components,
                t: u.t,
            }))
        }
        d => Err(GridError::DimensionMismatch { expected: 3, got: d }),
    }
}

/// Gradient of a scalar sample.
pub fn gradient(s: &ScalarSample) -> SampledField {
    let g = &s.grid;
    let mut components = [
        vec![0.0; g.len()],
        vec![0.0; g.len()],
        vec![0.0; g.len()],
    ];
    for (a, comp) in components.iter_mut().enumerate() {
        *comp = partial(g, &s.values, a, 1);
    }
    SampledField {
        grid: g.clone(),
        components,
        t: s.t,
    }
}

/// Component-wise Laplacian of a vector sample.
pub fn laplacian(u: &SampledField) -> SampledField {
    let g = &u.grid;
    let mut components = [
        vec![0.0; g.len()],
        vec![0.0; g.len()],
        vec![0.0; g.len()],
    ];
    for (c, comp) in components.iter_mut().enumerate() {
        for a in 0..g.dims {
            let d2 = partial(g, &u.components[c], a, 2);
            for (v, dv) in comp.iter_mut().zip(&d2) {
                *v += dv;
            }
        }
    }
    SampledField {
        grid: g.clone(),
        components,
        t: u.t,
    }
}

/// Laplacian of a scalar sample.
pub fn laplacian_scalar(s: &ScalarSample) -> ScalarSample {
    let g = &s.grid;
    let mut values = vec![0.0; g.len()];
    for a in 0..g.dims {
        let d2 = partial(g, &s.values, a, 2);
        for (v, dv) in values.iter_mut().zip(&d2) {
            *v += dv;
        }
    }
    ScalarSample {
        grid: g.clone(),
        values,
        t: s.t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldkit::{from_fourier, gallery, FourierModeSpec, FourierSpec};
    use crate::gridops::grid::sample;
    use crate::gridops::poisson::poisson_solve;
    use std::f64::consts::TAU;

    fn sup(values: &[f64]) -> f64 {
        values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    #[test]
    fn projected_mode_sum_is_divergence_free_spectrally() {
        let spec = FourierSpec {
            periods: [TAU, TAU, TAU],
            amplitude: 2.0,
            modes: vec![
                FourierModeSpec {
                    n: [1, 2, 0],
                    c: [1.0, 0.5, -0.3],
                    s: [0.2, 0.1, 0.9],
                },
                FourierModeSpec {
                    n: [0, 1, -3],
                    c: [0.4, -1.0, 0.7],
                    s: [0.0, 0.6, 0.2],
                },
                FourierModeSpec {
                    n: [2, -1, 1],
                    c: [0.3, 0.3, 0.3],
                    s: [-0.5, 0.8, 0.1],
                },
            ],
        };
        let f = from_fourier(&spec, true).unwrap();
        let g = Grid::for_field(&f, 32).unwrap();
        let u = sample(&f, &g, 0.0).unwrap();
        let div = divergence(&u);
        assert!(sup(&div.values) < 1e-10 * spec.amplitude, "{}", sup(&div.values));
    }

    #[test]
    fn divergence_of_curl_vanishes() {
        let f = gallery("periodic-decay-3d").unwrap();
        let g = Grid::for_field(&f, 32).unwrap();
        let u = sample(&f, &g, 0.3).unwrap();
        let w = match curl(&u).unwrap() {
            CurlSample::Vector(v) => v,
            CurlSample::Scalar(_) => panic!("3-D curl must be a vector"),
        };
        let div = divergence(&w);
        assert!(sup(&div.values) < 1e-9, "{}", sup(&div.values));
    }

    #[test]
    fn poisson_solve_inverts_the_periodic_laplacian() {
        let g = Grid::periodic(3, [16, 16, 16], [TAU, 2.0, 5.0]).unwrap();
        let mut p0 = vec![0.0; g.len()];
        for flat in 0..g.len() {
            let [x, y, z] = g.point(flat);
            p0[flat] = (2.0 * x).sin() * (TAU * y / 2.0).cos() + (TAU * 3.0 * z / 5.0).sin();
        }
        let scalar = ScalarSample {
            grid: g.clone(),
            values: p0.clone(),
            t: 0.0,
        };
        let rhs = laplacian_scalar(&scalar);
        let sol = poisson_solve(&rhs).unwrap();
        let mut worst = 0.0_f64;
        for (a, b) in sol.solution.values.iter().zip(&p0) {
            worst = worst.max((a - b).abs());
        }
        assert!(worst < 1e-10, "round trip error {worst}");
    }

    #[test]
    fn planar_cell_curl_matches_closed_form_spectrally() {
        let f = gallery("tg-embedded-2d").unwrap();
        let g = Grid::for_field(&f, 32).unwrap();
        let u = sample(&f, &g, 0.0).unwrap();
        let w = match curl(&u).unwrap() {
            CurlSample::Scalar(s) => s,
            CurlSample::Vector(_) => panic!("2-D curl must be a scalar"),
        };
        let mut worst = 0.0_f64;
        for flat in 0..g.len() {
            let [x, y, _] = g.point(flat);
            let exact = 2.0 * x.sin() * y.sin();
            worst = worst.max((w.values[flat] - exact).abs());
        }
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn planar_cell_sample_hits_unit_value_at_quarter_period() {
        let f = gallery("tg-embedded-2d").unwrap();
        let g = Grid::for_field(&f, 32).unwrap();
        let u = sample(&f, &g, 0.0).unwrap();
        // Index (8, 0) of a 2π box sits at x = π/2, y = 0.
        let flat = g.index(8, 0, 0);
        assert!((u.components[0][flat] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn localized_vortex_has_negligible_boundary_values() {
        let f = gallery("gaussian-vortex-3d").unwrap();
        let g = Grid::for_field(&f, 16).unwrap();
        let u = sample(&f, &g, 1.0).unwrap();
        let mut worst = 0.0_f64;
        for flat in 0..g.len() {
            if g.is_boundary(flat) {
                let m = (0..3)
                    .map(|c| u.components[c][flat] * u.components[c][flat])
                    .sum::<f64>()
                    .sqrt();
                worst = worst.max(m);
            }
        }
        assert!(worst < 1e-14 * f.amplitude(), "boundary magnitude {worst}");
    }

    #[test]
    fn one_dimensional_curl_is_rejected() {
        let g = Grid::periodic(1, [16, 1, 1], [TAU, 1.0, 1.0]).unwrap();
        let u = SampledField {
            grid: g.clone(),
            components: [
                vec![0.0; g.len()],
                vec![0.0; g.len()],
                vec![0.0; g.len()],
            ],
            t: 0.0,
        };
        assert!(matches!(
            curl(&u),
            Err(GridError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gradient_of_product_mode_matches_hand_derivative() {
        let g = Grid::periodic(2, [32, 32, 1], [TAU, TAU, 1.0]).unwrap();
        let mut p = vec![0.0; g.len()];
        for flat in 0..g.len() {
            let [x, y, _] = g.point(flat);
            p[flat] = x.sin() * y.cos();
        }
        let grad = gradient(&ScalarSample {
            grid: g.clone(),
            values: p,
            t: 0.0,
        });
        let mut worst = 0.0_f64;
        for flat in 0..g.len() {
            let [x, y, _] = g.point(flat);
            worst = worst.max((grad.components[0][flat] - x.cos() * y.cos()).abs());
            worst = worst.max((grad.components[1][flat] + x.sin() * y.sin()).abs());
            worst = worst.max(grad.components[2][flat].abs());
        }
        assert!(worst < 1e-12, "{worst}");
    }
}
