//! FFT-based differentiation and Poisson inversion on periodic grids.
//!
//! Wavenumbers follow the standard signed convention: bin `m` of an
//! `n`-point axis carries `m̃ = m` for `m ≤ n/2` and `m̃ = m − n` otherwise,
//! with `κ = 2π m̃ / period`. Odd-order derivatives zero the Nyquist bin
//! (its sign is not representable); even-order symbols keep it.

use std::f64::consts::PI;
use std::sync::{Arc, LazyLock, Mutex};

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::grid::{for_each_line, Grid};

static PLANNER: LazyLock<Mutex<FftPlanner<f64>>> =
    LazyLock::new(|| Mutex::new(FftPlanner::new()));

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut p = PLANNER.lock().unwrap();
    if forward {
        p.plan_fft_forward(n)
    } else {
        p.plan_fft_inverse(n)
    }
}

fn signed_mode(m: usize, n: usize) -> i64 {
    if m <= n / 2 {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

/// `order`-th partial derivative along `axis` of a scalar lattice array.
pub(crate) fn derivative_axis(grid: &Grid, values: &[f64], axis: usize, order: u32) -> Vec<f64> {
    let n = grid.n[axis];
    let period = grid.extents[axis];
    let fwd = plan(n, true);
    let inv = plan(n, false);

    let mut symbol = Vec::with_capacity(n);
    for m in 0..n {
        let nyquist = n % 2 == 0 && m == n / 2;
        if nyquist && order % 2 == 1 {
            symbol.push(Complex::new(0.0, 0.0));
        } else {
            let kappa = 2.0 * PI * signed_mode(m, n) as f64 / period;
            symbol.push(Complex::new(0.0, kappa).powu(order));
        }
    }

    let mut out = vec![0.0; values.len()];
    let mut line = vec![Complex::new(0.0, 0.0); n];
    let scale = 1.0 / n as f64;
    for_each_line(grid, axis, |start, stride| {
        for (q, c) in line.iter_mut().enumerate() {
            *c = Complex::new(values[start + q * stride], 0.0);
        }
        fwd.process(&mut line);
        for (c, s) in line.iter_mut().zip(&symbol) {
            *c *= s;
        }
        inv.process(&mut line);
        for (q, c) in line.iter().enumerate() {
            out[start + q * stride] = c.re * scale;
        }
    });
    out
}

/// Full forward or inverse FFT along every used axis, in place and
/// unnormalized.
pub(crate) fn transform(grid: &Grid, data: &mut [Complex<f64>], forward: bool) {
    for axis in 0..grid.dims {
        let n = grid.n[axis];
        if n == 1 {
            continue;
        }
        let p = plan(n, forward);
        let mut line = vec![Complex::new(0.0, 0.0); n];
        for_each_line(grid, axis, |start, stride| {
            for (q, c) in line.iter_mut().enumerate() {
                *c = data[start + q * stride];
            }
            p.process(&mut line);
            for (q, c) in line.iter().enumerate() {
                data[start + q * stride] = *c;
            }
        });
    }
}

/// Solves `Δp = rhs` on a periodic grid by dividing by `−|κ|²` in Fourier
/// space. The zero bin is set to zero, which simultaneously removes the
/// mean of the right-hand side and fixes the zero-mean gauge of the
/// solution.
pub(crate) fn poisson_periodic(grid: &Grid, rhs: &[f64]) -> Vec<f64> {
    let mut data: Vec<Complex<f64>> = rhs.iter().map(|&v| Complex::new(v, 0.0)).collect();
    transform(grid, &mut data, true);
    for flat in 0..grid.len() {
        let idx = grid.unravel(flat);
        let mut k2 = 0.0;
        for a in 0..grid.dims {
            let kappa = 2.0 * PI * signed_mode(idx[a], grid.n[a]) as f64 / grid.extents[a];
            k2 += kappa * kappa;
        }
        data[flat] = if k2 == 0.0 {
            Complex::new(0.0, 0.0)
        } else {
            data[flat] / -k2
        };
    }
    transform(grid, &mut data, false);
    let scale = 1.0 / (0..grid.dims).map(|a| grid.n[a] as f64).product::<f64>();
    data.iter().map(|c| c.re * scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn grid1(n: usize, period: f64) -> Grid {
        Grid::periodic(1, [n, 1, 1], [period, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn pure_mode_first_derivative_is_exact() {
        let n = 32;
        let g = grid1(n, TAU);
        let f: Vec<f64> = (0..n).map(|i| (3.0 * g.coordinate(0, i)).sin()).collect();
        let d = derivative_axis(&g, &f, 0, 1);
        for (i, v) in d.iter().enumerate() {
            let exact = 3.0 * (3.0 * g.coordinate(0, i)).cos();
            assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
        }
    }

    #[test]
    fn pure_mode_second_derivative_and_general_period() {
        let n = 64;
        let period = 3.5;
        let g = grid1(n, period);
        let k = TAU * 5.0 / period;
        let f: Vec<f64> = (0..n).map(|i| (k * g.coordinate(0, i)).cos()).collect();
        let d2 = derivative_axis(&g, &f, 0, 2);
        for (i, v) in d2.iter().enumerate() {
            let exact = -k * k * (k * g.coordinate(0, i)).cos();
            assert!((v - exact).abs() < 1e-10 * k * k, "{v} vs {exact}");
        }
    }

    #[test]
    fn nyquist_bin_is_dropped_for_odd_orders_only() {
        let n = 16;
        let g = grid1(n, TAU);
        // cos(8x) sampled on 16 points is the pure Nyquist mode.
        let f: Vec<f64> = (0..n).map(|i| (8.0 * g.coordinate(0, i)).cos()).collect();
        let d1 = derivative_axis(&g, &f, 0, 1);
        for v in &d1 {
            assert!(v.abs() < 1e-12, "odd order must null the Nyquist bin, got {v}");
        }
        let d2 = derivative_axis(&g, &f, 0, 2);
        for (i, v) in d2.iter().enumerate() {
            let exact = -64.0 * (8.0 * g.coordinate(0, i)).cos();
            assert!((v - exact).abs() < 1e-10, "{v} vs {exact}");
        }
    }

    #[test]
    fn poisson_inverts_two_dimensional_product_mode() {
        let n = 32;
        let g = Grid::periodic(2, [n, n, 1], [TAU, TAU, 1.0]).unwrap();
        let mut rhs = vec![0.0; g.len()];
        let mut exact = vec![0.0; g.len()];
        for flat in 0..g.len() {
            let [x, y, _] = g.point(flat);
            rhs[flat] = -2.0 * x.sin() * y.sin();
            exact[flat] = x.sin() * y.sin();
        }
        let p = poisson_periodic(&g, &rhs);
        for (a, b) in p.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn poisson_removes_rhs_mean_and_returns_zero_mean_solution() {
        let n = 16;
        let g = grid1(n, TAU);
        // rhs = 4 − cos x has nonzero mean; the solved field must satisfy
        // Δp = −cos x (mean removed) with zero mean: p = cos x.
        let f: Vec<f64> = (0..n).map(|i| 4.0 - g.coordinate(0, i).cos()).collect();
        let p = poisson_periodic(&g, &f);
        let mean: f64 = p.iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 1e-13);
        for (i, v) in p.iter().enumerate() {
            let exact = g.coordinate(0, i).cos();
            assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
        }
    }
}
