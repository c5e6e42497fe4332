//! Fourth-order centered finite differences with one-sided closures, used
//! on truncated (non-periodic) grids.
//!
//! Interior first derivative: `(f[i-2] - 8f[i-1] + 8f[i+1] - f[i+2]) / 12h`.
//! Interior second derivative:
//! `(-f[i-2] + 16f[i-1] - 30f[i] + 16f[i+1] - f[i+2]) / 12h²`.
//! The two rows nearest each end use skewed stencils of the same formal
//! order. The first-derivative closures are exact on quartics; the
//! second-derivative closures are exact on quintics.

/// First derivative of one line of at least 8 samples with spacing `h`,
/// written into `out`.
pub fn d1_line(f: &[f64], h: f64, out: &mut [f64]) {
    let n = f.len();
    debug_assert!(n >= 8 && out.len() == n);
    let s = 1.0 / (12.0 * h);
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    }
    out[n - 2] =
        (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * s;
    out[n - 1] =
        (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5])
            * s;
}

/// Second derivative of one line of at least 8 samples with spacing `h`,
/// written into `out`.
pub fn d2_line(f: &[f64], h: f64, out: &mut [f64]) {
    let n = f.len();
    debug_assert!(n >= 8 && out.len() == n);
    let s = 1.0 / (12.0 * h * h);
    out[0] = (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4]
        - 10.0 * f[5])
        * s;
    out[1] =
        (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]) * s;
    for i in 2..n - 2 {
        out[i] =
            (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * s;
    }
    out[n - 2] = (10.0 * f[n - 1] - 15.0 * f[n - 2] - 4.0 * f[n - 3] + 14.0 * f[n - 4]
        - 6.0 * f[n - 5]
        + f[n - 6])
        * s;
    out[n - 1] = (45.0 * f[n - 1] - 154.0 * f[n - 2] + 214.0 * f[n - 3] - 156.0 * f[n - 4]
        + 61.0 * f[n - 5]
        - 10.0 * f[n - 6])
        * s;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize, h: f64, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..n).map(|i| f(i as f64 * h)).collect()
    }

    #[test]
    fn d1_exact_on_quartics() {
        // p(x) = 2x⁴ - 3x³ + x² - 5x + 7, p'(x) = 8x³ - 9x² + 2x - 5.
        let n = 16;
        let h = 0.37;
        let f = line(n, h, |x| 2.0 * x.powi(4) - 3.0 * x.powi(3) + x * x - 5.0 * x + 7.0);
        let mut g = vec![0.0; n];
        d1_line(&f, h, &mut g);
        for i in 0..n {
            let x = i as f64 * h;
            let exact = 8.0 * x.powi(3) - 9.0 * x * x + 2.0 * x - 5.0;
            assert!(
                (g[i] - exact).abs() <= 1e-10 * exact.abs().max(1.0),
                "row {i}: {} vs {exact}",
                g[i]
            );
        }
    }

    #[test]
    fn d2_closures_exact_on_quintics() {
        // p(x) = x⁵ - 2x⁴ + x³ - x + 3, p''(x) = 20x³ - 24x² + 6x.
        let n = 16;
        let h = 0.21;
        let f = line(n, h, |x| {
            x.powi(5) - 2.0 * x.powi(4) + x.powi(3) - x + 3.0
        });
        let mut g = vec![0.0; n];
        d2_line(&f, h, &mut g);
        for i in 0..n {
            let x = i as f64 * h;
            let exact = 20.0 * x.powi(3) - 24.0 * x * x + 6.0 * x;
            assert!(
                (g[i] - exact).abs() <= 1e-8 * exact.abs().max(1.0),
                "row {i}: {} vs {exact}",
                g[i]
            );
        }
    }

    #[test]
    fn fourth_order_on_a_smooth_function() {
        // sup-norm errors of d/dx sin on [0, 3] should shrink ~16x per
        // doubling.
        let mut errs = Vec::new();
        for &n in &[33usize, 65, 129] {
            let h = 3.0 / (n - 1) as f64;
            let f = line(n, h, f64::sin);
            let mut g = vec![0.0; n];
            d1_line(&f, h, &mut g);
            let err = (0..n)
                .map(|i| (g[i] - (i as f64 * h).cos()).abs())
                .fold(0.0_f64, f64::max);
            errs.push(err);
        }
        for w in errs.windows(2) {
            let rate = (w[0] / w[1]).log2();
            assert!(rate > 3.5, "rate {rate} too low: {errs:?}");
        }
    }
}
