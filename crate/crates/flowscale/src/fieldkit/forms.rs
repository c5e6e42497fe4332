//! Closed-form evaluators: velocity, time derivative, Jacobian, pressure,
//! vorticity.
//!
//! Conventions: positions are `[f64; 3]` with unused coordinates ignored,
//! velocities are `[f64; 3]` with unused components zero, the Jacobian is
//! `j[i][j] = ∂u_i/∂x_j`. Formulas are written against the dimensionless
//! arguments `ξ_i = x_i / L`, `τ = t / T`; the channel flow uses
//! `ξ = x_0 / h` and the diffusion group `ν t / h²`.

use super::{AnalyticField, FieldForm, FourierMode, Vorticity};
use std::f64::consts::PI;

impl AnalyticField {
    /// Velocity at a point. The caller is responsible for the time domain
    /// (`t > 0` for the parabolic-similarity field); see
    /// [`AnalyticField::evaluate`] for the validating batch form.
    pub fn velocity(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let p = &self.params;
        let u0 = p.velocity_scale;
        let l = p.lengths[0];
        match &self.form {
            FieldForm::Couette { n_terms } => {
                // Streamwise component u_1(y, t), wall-normal coordinate
                // y = x_2; walls at y = 0 (fixed) and y = h (moving at U).
                let xi = x[1] / p.channel_height;
                let decay = p.viscosity * t / (p.channel_height * p.channel_height);
                let mut series = 0.0;
                for n in 1..=*n_terms {
                    let nf = n as f64;
                    series +=
                        (-nf * nf * PI * PI * decay).exp() * (nf * PI * (1.0 - xi)).sin() / nf;
                }
                [u0 * (xi - 2.0 / PI * series), 0.0, 0.0]
            }
            FieldForm::TaylorGreenInit => {
                let (xi, eta) = (x[0] / l, x[1] / l);
                [
                    u0 * xi.sin() * eta.cos(),
                    -u0 * xi.cos() * eta.sin(),
                    0.0,
                ]
            }
            FieldForm::PeriodicDecay3d => {
                let e = u0 * (-t / p.time_scale).exp();
                [
                    e * (x[1] / l).sin(),
                    e * (x[2] / l).sin(),
                    e * (x[0] / l).sin(),
                ]
            }
            FieldForm::GaussianSwirl3d => {
                let c = u0 * (-t / p.time_scale).exp();
                let g = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (l * l)).exp();
                [c * g * x[1] / l, -c * g * x[0] / l, 0.0]
            }
            FieldForm::TgEmbedded2d => {
                let a = p.time_scale.powf(2.0 / 3.0);
                let (xi, eta) = (x[0] / l, x[1] / l);
                [a * xi.sin() * eta.cos(), -a * xi.cos() * eta.sin(), 0.0]
            }
            FieldForm::GaussianVortex3d => {
                let c = p.time_scale.powf(2.0 / 3.0) / (l * l);
                let f = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (l * l)).exp();
                [
                    c * x[1] * x[2] * f,
                    c * x[0] * x[2] * f,
                    -2.0 * c * x[0] * x[1] * f,
                ]
            }
            FieldForm::TaylorGreenExact2d => {
                let a = u0 * (-2.0 * p.viscosity * t / (l * l)).exp();
                let (xi, eta) = (x[0] / l, x[1] / l);
                [a * xi.sin() * eta.cos(), -a * xi.cos() * eta.sin(), 0.0]
            }
            FieldForm::LeraySwirl3d => {
                let (chi, _s, b) = self.leray_frame(x, t);
                let g = (-(chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2])).exp();
                [b * g * chi[1], -b * g * chi[0], 0.0]
            }
            FieldForm::Fourier { modes } => {
                let mut u = [0.0; 3];
                for m in modes {
                    let (theta, _) = self.mode_phase(m, x);
                    let (ct, st) = (theta.cos(), theta.sin());
                    for i in 0..3 {
                        u[i] += m.c[i] * ct + m.s[i] * st;
                    }
                }
                for ui in &mut u {
                    *ui *= u0;
                }
                u
            }
        }
    }

    /// Time derivative `∂u/∂t` at a point.
    pub fn dt_velocity(&self, x: [f64; 3], t: f64) -> [f64; 3] {
        let p = &self.params;
        match &self.form {
            FieldForm::Couette { n_terms } => {
                let h = p.channel_height;
                let xi = x[1] / h;
                let decay = p.viscosity * t / (h * h);
                let mut series = 0.0;
                for n in 1..=*n_terms {
                    let nf = n as f64;
                    series += nf * (-nf * nf * PI * PI * decay).exp() * (nf * PI * (1.0 - xi)).sin();
                }
                [
                    p.velocity_scale * 2.0 * PI * p.viscosity / (h * h) * series,
                    0.0,
                    0.0,
                ]
            }
            FieldForm::TaylorGreenInit
            | FieldForm::TgEmbedded2d
            | FieldForm::GaussianVortex3d
            | FieldForm::Fourier { .. } => [0.0; 3],
            FieldForm::PeriodicDecay3d | FieldForm::GaussianSwirl3d => {
                let u = self.velocity(x, t);
                let r = -1.0 / p.time_scale;
                [r * u[0], r * u[1], r * u[2]]
            }
            FieldForm::TaylorGreenExact2d => {
                let u = self.velocity(x, t);
                let r = -2.0 * p.viscosity / (p.lengths[0] * p.lengths[0]);
                [r * u[0], r * u[1], r * u[2]]
            }
            FieldForm::LeraySwirl3d => {
                // ∂t u = -(1 - |χ|²) u / t
                let (chi, _s, _b) = self.leray_frame(x, t);
                let chi2 = chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2];
                let u = self.velocity(x, t);
                let r = -(1.0 - chi2) / t;
                [r * u[0], r * u[1], r * u[2]]
            }
        }
    }

    /// Jacobian `j[i][j] = ∂u_i/∂x_j` at a point.
    pub fn jacobian(&self, x: [f64; 3], t: f64) -> [[f64; 3]; 3] {
        let p = &self.params;
        let u0 = p.velocity_scale;
        let l = p.lengths[0];
        let mut j = [[0.0; 3]; 3];
        match &self.form {
            FieldForm::Couette { n_terms } => {
                let h = p.channel_height;
                let xi = x[1] / h;
                let decay = p.viscosity * t / (h * h);
                let mut series = 0.0;
                for n in 1..=*n_terms {
                    let nf = n as f64;
                    series += (-nf * nf * PI * PI * decay).exp() * (nf * PI * (1.0 - xi)).cos();
                }
                j[0][1] = u0 / h * (1.0 + 2.0 * series);
            }
            FieldForm::TaylorGreenInit | FieldForm::TgEmbedded2d | FieldForm::TaylorGreenExact2d => {
                let a = match self.form {
                    FieldForm::TaylorGreenInit => u0,
                    FieldForm::TgEmbedded2d => p.time_scale.powf(2.0 / 3.0),
                    _ => u0 * (-2.0 * p.viscosity * t / (l * l)).exp(),
                };
                let (xi, eta) = (x[0] / l, x[1] / l);
                let (sx, cx) = xi.sin_cos();
                let (sy, cy) = eta.sin_cos();
                j[0][0] = a / l * cx * cy;
                j[0][1] = -a / l * sx * sy;
                j[1][0] = a / l * sx * sy;
                j[1][1] = -a / l * cx * cy;
            }
            FieldForm::PeriodicDecay3d => {
                let e = u0 * (-t / p.time_scale).exp() / l;
                j[0][1] = e * (x[1] / l).cos();
                j[1][2] = e * (x[2] / l).cos();
                j[2][0] = e * (x[0] / l).cos();
            }
            FieldForm::GaussianSwirl3d => {
                let c = u0 * (-t / p.time_scale).exp();
                let l2 = l * l;
                let g = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / l2).exp();
                let (x1, x2, x3) = (x[0], x[1], x[2]);
                j[0][0] = -2.0 * c * x1 * x2 * g / (l * l2);
                j[0][1] = c / l * g * (1.0 - 2.0 * x2 * x2 / l2);
                j[0][2] = -2.0 * c * x2 * x3 * g / (l * l2);
                j[1][0] = -c / l * g * (1.0 - 2.0 * x1 * x1 / l2);
                j[1][1] = 2.0 * c * x1 * x2 * g / (l * l2);
                j[1][2] = 2.0 * c * x1 * x3 * g / (l * l2);
            }
            FieldForm::GaussianVortex3d => {
                let c = p.time_scale.powf(2.0 / 3.0) / (l * l);
                let l2 = l * l;
                let f = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / l2).exp();
                let (x1, x2, x3) = (x[0], x[1], x[2]);
                j[0][0] = -2.0 * c * x1 * x2 * x3 * f / l2;
                j[0][1] = c * x3 * f * (1.0 - 2.0 * x2 * x2 / l2);
                j[0][2] = c * x2 * f * (1.0 - 2.0 * x3 * x3 / l2);
                j[1][0] = c * x3 * f * (1.0 - 2.0 * x1 * x1 / l2);
                j[1][1] = -2.0 * c * x1 * x2 * x3 * f / l2;
                j[1][2] = c * x1 * f * (1.0 - 2.0 * x3 * x3 / l2);
                j[2][0] = -2.0 * c * x2 * f * (1.0 - 2.0 * x1 * x1 / l2);
                j[2][1] = -2.0 * c * x1 * f * (1.0 - 2.0 * x2 * x2 / l2);
                j[2][2] = 4.0 * c * x1 * x2 * x3 * f / l2;
            }
            FieldForm::LeraySwirl3d => {
                let (chi, s, b) = self.leray_frame(x, t);
                let g = (-(chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2])).exp();
                let scale = b * g / (l * s.sqrt());
                let (c1, c2, c3) = (chi[0], chi[1], chi[2]);
                j[0][0] = -2.0 * c1 * c2 * scale;
                j[0][1] = (1.0 - 2.0 * c2 * c2) * scale;
                j[0][2] = -2.0 * c2 * c3 * scale;
                j[1][0] = -(1.0 - 2.0 * c1 * c1) * scale;
                j[1][1] = 2.0 * c1 * c2 * scale;
                j[1][2] = 2.0 * c1 * c3 * scale;
            }
            FieldForm::Fourier { modes } => {
                for m in modes {
                    let (theta, kappa) = self.mode_phase(m, x);
                    let (ct, st) = (theta.cos(), theta.sin());
                    for i in 0..3 {
                        let d = -m.c[i] * st + m.s[i] * ct;
                        for a in 0..3 {
                            j[i][a] += kappa[a] * d;
                        }
                    }
                }
                for row in &mut j {
                    for v in row {
                        *v *= u0;
                    }
                }
            }
        }
        j
    }

    /// Closed-form pressure, for the fields that carry one. Pressures here
    /// are kinematic (density-normalized).
    pub fn pressure(&self, x: [f64; 3], t: f64) -> Option<f64> {
        let p = &self.params;
        let l = p.lengths[0];
        match &self.form {
            FieldForm::PeriodicDecay3d => {
                let coef = p.velocity_scale
                    * (p.viscosity / (l * l) - 1.0 / p.time_scale)
                    * (-t / p.time_scale).exp();
                Some(
                    coef * (-(x[0] / l).cos() - (x[1] / l).cos() - (x[2] / l).cos()),
                )
            }
            FieldForm::TaylorGreenExact2d => {
                let u0 = p.velocity_scale;
                let e = (-4.0 * p.viscosity * t / (l * l)).exp();
                Some(u0 * u0 / 4.0 * ((2.0 * x[0] / l).cos() + (2.0 * x[1] / l).cos()) * e)
            }
            FieldForm::LeraySwirl3d => {
                let (chi, s, _b) = self.leray_frame(x, t);
                let g = (-(chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2])).exp();
                Some(p.velocity_scale * p.velocity_scale / s * g)
            }
            _ => None,
        }
    }

    /// Closed-form spatial pressure gradient, where a pressure exists.
    pub fn pressure_gradient(&self, x: [f64; 3], t: f64) -> Option<[f64; 3]> {
        let p = &self.params;
        let l = p.lengths[0];
        match &self.form {
            FieldForm::PeriodicDecay3d => {
                let coef = p.velocity_scale
                    * (p.viscosity / (l * l) - 1.0 / p.time_scale)
                    * (-t / p.time_scale).exp()
                    / l;
                Some([
                    coef * (x[0] / l).sin(),
                    coef * (x[1] / l).sin(),
                    coef * (x[2] / l).sin(),
                ])
            }
            FieldForm::TaylorGreenExact2d => {
                let u0 = p.velocity_scale;
                let e = (-4.0 * p.viscosity * t / (l * l)).exp();
                let coef = -u0 * u0 / (2.0 * l) * e;
                Some([
                    coef * (2.0 * x[0] / l).sin(),
                    coef * (2.0 * x[1] / l).sin(),
                    0.0,
                ])
            }
            FieldForm::LeraySwirl3d => {
                let (chi, s, _b) = self.leray_frame(x, t);
                let g = (-(chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2])).exp();
                let u0 = p.velocity_scale;
                let coef = -2.0 * u0 * u0 * g / (s * s.sqrt() * l);
                Some([coef * chi[0], coef * chi[1], coef * chi[2]])
            }
            _ => None,
        }
    }

    /// Closed-form `∂p/∂t`, where a pressure exists.
    pub fn dt_pressure(&self, x: [f64; 3], t: f64) -> Option<f64> {
        let p = &self.params;
        match &self.form {
            FieldForm::PeriodicDecay3d => self.pressure(x, t).map(|v| -v / p.time_scale),
            FieldForm::TaylorGreenExact2d => {
                let l = p.lengths[0];
                self.pressure(x, t)
                    .map(|v| -4.0 * p.viscosity / (l * l) * v)
            }
            FieldForm::LeraySwirl3d => {
                let (chi, _s, _b) = self.leray_frame(x, t);
                let chi2 = chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2];
                self.pressure(x, t).map(|v| (chi2 - 1.0) * v / t)
            }
            _ => None,
        }
    }

    /// Closed-form vorticity: scalar `∂x u_2 - ∂y u_1` in 2-D, the full curl
    /// vector in 3-D. `None` for forms without a stored vorticity.
    pub fn vorticity(&self, x: [f64; 3], t: f64) -> Option<Vorticity> {
        let p = &self.params;
        let u0 = p.velocity_scale;
        let l = p.lengths[0];
        match &self.form {
            FieldForm::TaylorGreenInit | FieldForm::TgEmbedded2d | FieldForm::TaylorGreenExact2d => {
                let a = match self.form {
                    FieldForm::TaylorGreenInit => u0,
                    FieldForm::TgEmbedded2d => p.time_scale.powf(2.0 / 3.0),
                    _ => u0 * (-2.0 * p.viscosity * t / (l * l)).exp(),
                };
                Some(Vorticity::Scalar(
                    2.0 * a / l * (x[0] / l).sin() * (x[1] / l).sin(),
                ))
            }
            FieldForm::PeriodicDecay3d => {
                let e = -u0 * (-t / p.time_scale).exp() / l;
                Some(Vorticity::Vector([
                    e * (x[2] / l).cos(),
                    e * (x[0] / l).cos(),
                    e * (x[1] / l).cos(),
                ]))
            }
            FieldForm::GaussianSwirl3d => {
                let c = u0 * (-t / p.time_scale).exp();
                let l2 = l * l;
                let g = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / l2).exp();
                Some(Vorticity::Vector([
                    -2.0 * c * x[0] * x[2] * g / (l * l2),
                    -2.0 * c * x[1] * x[2] * g / (l * l2),
                    -2.0 * c / l * g * (1.0 - (x[0] * x[0] + x[1] * x[1]) / l2),
                ]))
            }
            FieldForm::GaussianVortex3d => {
                let c = p.time_scale.powf(2.0 / 3.0) / (l * l);
                let l2 = l * l;
                let f = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / l2).exp();
                let (x1, x2, x3) = (x[0], x[1], x[2]);
                Some(Vorticity::Vector([
                    -c * x1 * f * (3.0 - (4.0 * x2 * x2 + 2.0 * x3 * x3) / l2),
                    c * x2 * f * (3.0 - (4.0 * x1 * x1 + 2.0 * x3 * x3) / l2),
                    2.0 * c * x3 * f * (x2 * x2 - x1 * x1) / l2,
                ]))
            }
            FieldForm::LeraySwirl3d => {
                let (chi, s, b) = self.leray_frame(x, t);
                let g = (-(chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2])).exp();
                let scale = b * g / (l * s.sqrt());
                Some(Vorticity::Vector([
                    -2.0 * chi[0] * chi[2] * scale,
                    -2.0 * chi[1] * chi[2] * scale,
                    -2.0 * (1.0 - chi[0] * chi[0] - chi[1] * chi[1]) * scale,
                ]))
            }
            FieldForm::Fourier { modes } => {
                let mut w = [0.0; 3];
                for m in modes {
                    let (theta, kappa) = self.mode_phase(m, x);
                    let (ct, st) = (theta.cos(), theta.sin());
                    let kc = cross(kappa, m.c);
                    let ks = cross(kappa, m.s);
                    for i in 0..3 {
                        w[i] += ks[i] * ct - kc[i] * st;
                    }
                }
                for wi in &mut w {
                    *wi *= u0;
                }
                Some(Vorticity::Vector(w))
            }
            FieldForm::Couette { .. } => None,
        }
    }

    /// Second spatial derivative `∂²u/∂x_axis²` for the forms that provide
    /// one analytically (currently the channel flow, wall-normal axis only).
    pub fn second_partial(&self, x: [f64; 3], t: f64, axis: usize) -> Option<[f64; 3]> {
        match &self.form {
            FieldForm::Couette { n_terms } if axis == 1 => {
                let p = &self.params;
                let h = p.channel_height;
                let xi = x[1] / h;
                let decay = p.viscosity * t / (h * h);
                let mut series = 0.0;
                for n in 1..=*n_terms {
                    let nf = n as f64;
                    series += nf * (-nf * nf * PI * PI * decay).exp() * (nf * PI * (1.0 - xi)).sin();
                }
                Some([
                    p.velocity_scale * 2.0 * PI / (h * h) * series,
                    0.0,
                    0.0,
                ])
            }
            _ => None,
        }
    }

    /// Parabolic-similarity frame: `s = t/T`, `χ = x/(L√s)`, amplitude
    /// `B = U s^(-1/2)`.
    fn leray_frame(&self, x: [f64; 3], t: f64) -> ([f64; 3], f64, f64) {
        let p = &self.params;
        let s = t / p.time_scale;
        let ls = p.lengths[0] * s.sqrt();
        let chi = [x[0] / ls, x[1] / ls, x[2] / ls];
        (chi, s, p.velocity_scale / s.sqrt())
    }

    /// Phase and wavevector of one trigonometric mode at a point.
    fn mode_phase(&self, m: &FourierMode, x: [f64; 3]) -> (f64, [f64; 3]) {
        let per = self.params.lengths;
        let kappa = [
            2.0 * PI * m.n[0] as f64 / per[0],
            2.0 * PI * m.n[1] as f64 / per[1],
            2.0 * PI * m.n[2] as f64 / per[2],
        ];
        (
            kappa[0] * x[0] + kappa[1] * x[1] + kappa[2] * x[2],
            kappa,
        )
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
