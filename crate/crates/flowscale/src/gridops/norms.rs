//! Energy and supremum norms, and the time integral of the vorticity
//! supremum used by the finite-accumulation check.

use super::grid::{sample_vorticity, Grid, SampledField};
use super::ops::CurlSample;
use super::GridError;
use crate::fieldkit::AnalyticField;

/// The norms a single snapshot is summarized by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSet {
    /// `∫|u|² dV` by the grid's quadrature rule.
    pub energy: f64,
    pub sup_velocity: f64,
    pub sup_vorticity: f64,
}

/// `∫|u|² dV`: rectangle rule on periodic grids, trapezoid on truncated.
pub fn energy(u: &SampledField) -> f64 {
    let g = &u.grid;
    let mut acc = 0.0;
    for flat in 0..g.len() {
        let q = u.components[0][flat] * u.components[0][flat]
            + u.components[1][flat] * u.components[1][flat]
            + u.components[2][flat] * u.components[2][flat];
        acc += g.quadrature_weight(flat) * q;
    }
    acc
}

/// Largest pointwise Euclidean magnitude on the lattice.
pub fn sup_magnitude(u: &SampledField) -> f64 {
    let mut sup = 0.0_f64;
    for flat in 0..u.grid.len() {
        let q = u.components[0][flat] * u.components[0][flat]
            + u.components[1][flat] * u.components[1][flat]
            + u.components[2][flat] * u.components[2][flat];
        sup = sup.max(q);
    }
    sup.sqrt()
}

fn sup_curl(w: &CurlSample) -> f64 {
    let mut sup = 0.0_f64;
    for flat in 0..w.grid().len() {
        sup = sup.max(w.magnitude(flat));
    }
    sup
}

/// Bundles the energy and supremum norms of a velocity snapshot with the
/// vorticity supremum of a matching curl snapshot.
pub fn norms(u: &SampledField, w: &CurlSample) -> Result<NormSet, GridError> {
    if &u.grid != w.grid() {
        return Err(GridError::GridMismatch);
    }
    Ok(NormSet {
        energy: energy(u),
        sup_velocity: sup_magnitude(u),
        sup_vorticity: sup_curl(w),
    })
}

/// `∫_{t₀}^{t₁} sup|ω(·,τ)| dτ` by the composite trapezoid rule over
/// `steps` uniform intervals, with the vorticity supremum taken over the
/// lattice from the field's closed-form curl.
pub fn bkm_integral(
    field: &AnalyticField,
    grid: &Grid,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<f64, GridError> {
    if !(t0.is_finite() && t1.is_finite() && t0 >= 0.0 && t1 > t0) {
        return Err(GridError::BadTimeRange(format!(
            "need 0 ≤ t₀ < t₁, got [{t0}, {t1}]"
        )));
    }
    if steps < 2 {
        return Err(GridError::BadTimeRange(format!(
            "need at least 2 steps, got {steps}"
        )));
    }
    let dt = (t1 - t0) / steps as f64;
    let mut acc = 0.0;
    for k in 0..=steps {
        let t = t0 + k as f64 * dt;
        let w = sample_vorticity(field, grid, t)?;
        let s = sup_curl(&w);
        acc += if k == 0 || k == steps { 0.5 * s } else { s };
    }
    Ok(acc * dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldkit::gallery;
    use crate::gridops::grid::sample;

    #[test]
    fn zero_field_has_zero_norms() {
        let g = Grid::periodic(3, [8, 8, 8], [1.0, 1.0, 1.0]).unwrap();
        let z = SampledField {
            grid: g.clone(),
            components: [
                vec![0.0; g.len()],
                vec![0.0; g.len()],
                vec![0.0; g.len()],
            ],
            t: 0.0,
        };
        assert_eq!(energy(&z), 0.0);
        assert_eq!(sup_magnitude(&z), 0.0);
    }

    #[test]
    fn planar_cell_vorticity_supremum_is_twice_the_prefactor() {
        let f = gallery("tg-embedded-2d").unwrap();
        let g = Grid::for_field(&f, 32).unwrap();
        let u = sample(&f, &g, 0.0).unwrap();
        let w = sample_vorticity(&f, &g, 0.0).unwrap();
        let ns = norms(&u, &w).unwrap();
        assert!((ns.sup_vorticity - 2.0).abs() < 1e-14, "{}", ns.sup_vorticity);
    }

    #[test]
    fn gaussian_energy_matches_closed_form() {
        // ∫ e^{−2|x|²} d³x = (π/2)^{3/2}.
        let g = Grid::truncated(3, [64, 64, 64], [6.0, 6.0, 6.0]).unwrap();
        let mut components = [
            vec![0.0; g.len()],
            vec![0.0; g.len()],
            vec![0.0; g.len()],
        ];
        for flat in 0..g.len() {
            let [x, y, z] = g.point(flat);
            components[0][flat] = (-(x * x + y * y + z * z)).exp();
        }
        let u = SampledField {
            grid: g,
            components,
            t: 0.0,
        };
        let exact = (std::f64::consts::PI / 2.0).powf(1.5);
        assert!(
            (energy(&u) - exact).abs() < 1e-6,
            "{} vs {exact}",
            energy(&u)
        );
    }

    #[test]
    fn decaying_triple_integral_matches_closed_form() {
        // sup|ω| of the decaying triple on its own lattice is
        // √3·(U/L)·e^{−t/T}, whose integral over [0, 10T] is
        // √3·(U·T/L)(1 − e^{−10}).
        let f = gallery("periodic-decay-3d").unwrap();
        let g = Grid::for_field(&f, 8).unwrap();
        let coarse = bkm_integral(&f, &g, 0.0, 10.0, 128).unwrap();
        let fine = bkm_integral(&f, &g, 0.0, 10.0, 1280).unwrap();
        let exact = 3.0_f64.sqrt() * (1.0 - (-10.0_f64).exp());
        assert!((coarse - fine).abs() < 1e-3 * fine.abs());
        assert!((fine - exact).abs() < 1e-5 * exact, "{fine} vs {exact}");
    }

    #[test]
    fn bad_time_ranges_and_grids_are_rejected() {
        let f = gallery("periodic-decay-3d").unwrap();
        let g = Grid::for_field(&f, 8).unwrap();
        assert!(bkm_integral(&f, &g, 1.0, 1.0, 16).is_err());
        assert!(bkm_integral(&f, &g, -1.0, 1.0, 16).is_err());
        assert!(bkm_integral(&f, &g, 0.0, 1.0, 1).is_err());

        let u = sample(&f, &g, 0.0).unwrap();
        let other = Grid::for_field(&f, 16).unwrap();
        let w = sample_vorticity(&f, &other, 0.0).unwrap();
        assert!(matches!(norms(&u, &w), Err(GridError::GridMismatch)));
    }
}
