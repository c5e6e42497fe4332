//! Closed-form space–time velocity fields.
//!
//! Every field here is analytic: velocity, time derivative, Jacobian, and —
//! where the construction provides them — pressure and vorticity are
//! hand-coded closed forms, so they can serve as exact references for the
//! grid operators in [`crate::gridops`] and the checks in
//! [`crate::verifier`].
//!
//! Fields carry their similarity metadata:
//!
//! * a *weight carrier* saying how the field's scale enters the formula —
//!   through the velocity amplitude `U` (weight-free profile), or through a
//!   time prefactor `T^(2/3)` (profile built from the similarity time scale);
//! * an optional profile exponent pair `β = (β_x, β_t)` for fields
//!   constructed by embedding a similarity profile (both embedded entries use
//!   `β = (5, 3)`);
//! * the exponent ratio, if any, at which the integrated self-similarity
//!   transport identities hold exactly.
//!
//! The gallery (see [`gallery`]) contains eight named entries; arbitrary
//! periodic fields can be built from a trigonometric mode table via
//! [`from_fourier`].

mod family;
mod forms;
mod fourier;

pub use family::{embed, embed_with_exponents, ParamExponents, SelfSimilarFamily};
pub use fourier::{from_fourier, FourierModeSpec, FourierSpec};

use crate::rat::{rat, Rat};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("unknown gallery field `{0}`")]
    UnknownGallery(String),
    #[error("field parameter `{name}` must be positive and finite (got {value})")]
    BadParameter { name: &'static str, value: f64 },
    #[error("time sample t = {t} outside the field's domain ({requires})")]
    TimeDomain { t: f64, requires: &'static str },
    #[error("non-finite sample coordinate")]
    NonFinitePoint,
    #[error("scale factor k must be positive and finite (got {0})")]
    BadScale(f64),
    #[error("mode table is empty")]
    EmptyModes,
    #[error("invalid mode table: {0}")]
    BadMode(String),
    #[error("mode table JSON: {0}")]
    Json(String),
}

/// Far-field behaviour, which decides the grid kind a field is sampled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    /// Periodic in every spatial direction; sampled on periodic boxes.
    Periodic,
    /// Rapidly decaying; sampled on truncated cubes with decay checked at the
    /// boundary.
    Schwartz,
    /// Channel geometry with walls; not grid-sampleable here.
    Channel,
}

/// How the field's overall scale enters its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightCarrier {
    /// Scale sits in the velocity amplitude `U`; the profile itself is
    /// weight-free, so the canonical parameter rescaling reproduces the
    /// similarity relation exactly for *any* exponent pair.
    VelocityScale,
    /// Scale sits in a `T^(2/3)` time prefactor; the similarity relation is
    /// exact only along the profile's own exponent ray `β`.
    TimePrefactor,
}

/// Scalar (2-D) or vector (3-D) vorticity value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Vorticity {
    Scalar(f64),
    Vector([f64; 3]),
}

/// Physical parameters shared by the closed forms. All must be positive and
/// finite. `lengths[0]` is the profile length scale `L` of the closed forms
/// (their spatial period is `2π·L`); mode-table fields instead read
/// `lengths` as the literal box periods per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParameters {
    pub velocity_scale: f64,
    pub lengths: [f64; 3],
    pub time_scale: f64,
    pub viscosity: f64,
    pub channel_height: f64,
}

impl Default for FieldParameters {
    fn default() -> Self {
        FieldParameters {
            velocity_scale: 1.0,
            lengths: [1.0, 1.0, 1.0],
            time_scale: 1.0,
            viscosity: 1.0,
            channel_height: 1.0,
        }
    }
}

impl FieldParameters {
    pub fn validate(&self) -> Result<(), FieldError> {
        let entries: [(&'static str, f64); 7] = [
            ("U", self.velocity_scale),
            ("L1", self.lengths[0]),
            ("L2", self.lengths[1]),
            ("L3", self.lengths[2]),
            ("T", self.time_scale),
            ("nu", self.viscosity),
            ("h", self.channel_height),
        ];
        for (name, value) in entries {
            if !(value.is_finite() && value > 0.0) {
                return Err(FieldError::BadParameter { name, value });
            }
        }
        Ok(())
    }
}

/// One trigonometric mode: integer wavevector plus cosine/sine coefficient
/// vectors (one entry per velocity component).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierMode {
    pub n: [i64; 3],
    pub c: [f64; 3],
    pub s: [f64; 3],
}

/// The closed forms known to the gallery. Evaluators live in `forms.rs`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum FieldForm {
    /// Transient plane start-up flow between a fixed and a moving wall:
    /// steady ramp plus a truncated diffusion series with `n_terms` terms.
    Couette { n_terms: usize },
    /// Stationary cellular initial data `U (sin ξ cos η, -cos ξ sin η)`.
    TaylorGreenInit,
    /// Three-component single-mode field with exponential decay `e^{-t/T}`.
    PeriodicDecay3d,
    /// Gaussian-envelope swirl decaying like `e^{-t/T}`.
    GaussianSwirl3d,
    /// Cellular profile carrying a `T^(2/3)` prefactor (static in time).
    TgEmbedded2d,
    /// Gaussian-envelope vortex carrying a `T^(2/3)` prefactor (static).
    GaussianVortex3d,
    /// Cellular flow with viscous decay — a full solution of the
    /// incompressible momentum balance with known pressure.
    TaylorGreenExact2d,
    /// Parabolic-similarity swirl `U (t/T)^(-1/2) G(x / (L √(t/T)))` with
    /// known pressure; defined for `t > 0` only.
    LeraySwirl3d,
    /// Trigonometric sum from a mode table.
    Fourier { modes: Vec<FourierMode> },
}

/// A closed-form space–time velocity field with hand-coded derivatives and
/// similarity metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticField {
    pub name: String,
    pub(crate) form: FieldForm,
    pub params: FieldParameters,
    /// Spatial dimension (1, 2, or 3). Evaluators ignore unused coordinates
    /// and return zeros in unused components.
    pub dim: usize,
    pub decay: DecayClass,
    pub carrier: WeightCarrier,
    /// Profile exponents `(β_x, β_t)` for embedded similarity profiles.
    pub beta: Option<(Rat, Rat)>,
    pub divergence_free: bool,
    /// True only for fields that solve the viscous momentum balance exactly
    /// (with their stored pressure).
    pub exact_nse_solution: bool,
    /// True for fields singular at `t = 0` (evaluation requires `t > 0`).
    pub strictly_positive_time: bool,
    /// Exponent pair ratio at which the integrated self-similarity transport
    /// identities hold exactly for this field, if any.
    pub bouton_alpha: Option<(Rat, Rat)>,
}

impl AnalyticField {
    /// Overall magnitude scale of the field: `U` for velocity-carried forms,
    /// `T^((β_x-β_t)/β_t)` for time-prefactor forms. Used to scale absolute
    /// tolerances.
    pub fn amplitude(&self) -> f64 {
        match self.carrier {
            WeightCarrier::VelocityScale => self.params.velocity_scale,
            WeightCarrier::TimePrefactor => {
                let (bx, bt) = self.beta.expect("time-prefactor fields carry β");
                let a = crate::rat::rat_f64(bx - bt) / crate::rat::rat_f64(bt);
                self.params.time_scale.powf(a)
            }
        }
    }

    /// Spatial periods per axis for periodic fields, `None` otherwise.
    pub fn periods(&self) -> Option<[f64; 3]> {
        match self.decay {
            DecayClass::Periodic => Some(match self.form {
                FieldForm::Fourier { .. } => self.params.lengths,
                _ => {
                    let p = 2.0 * std::f64::consts::PI * self.params.lengths[0];
                    [p, p, p]
                }
            }),
            _ => None,
        }
    }

    /// Default truncation half-width for rapidly decaying fields: `6 L`
    /// puts the Gaussian envelopes at `e^{-36}` on the faces.
    pub fn suggested_radius(&self) -> f64 {
        6.0 * self.params.lengths[0]
    }

    /// Absolute boundary-decay tolerance used when sampling on truncated
    /// grids.
    pub fn boundary_tolerance(&self) -> f64 {
        1e-12 * self.amplitude()
    }

    /// Whether a time sample lies in the field's domain.
    pub fn time_admissible(&self, t: f64) -> bool {
        if !t.is_finite() {
            return false;
        }
        if self.strictly_positive_time {
            t > 0.0
        } else {
            t >= 0.0
        }
    }

    pub(crate) fn check_time(&self, t: f64) -> Result<(), FieldError> {
        if self.time_admissible(t) {
            Ok(())
        } else {
            Err(FieldError::TimeDomain {
                t,
                requires: if self.strictly_positive_time {
                    "t > 0"
                } else {
                    "t >= 0"
                },
            })
        }
    }

    /// The exponent pair of the field's natural similarity group: the
    /// profile's own `β` for time-prefactor fields, the parabolic pair
    /// `(1, 2)` otherwise.
    pub fn natural_alpha(&self) -> (Rat, Rat) {
        match self.beta {
            Some(b) if self.carrier == WeightCarrier::TimePrefactor => b,
            _ => (rat(1, 1), rat(2, 1)),
        }
    }

    /// Batch evaluation with time-domain validation per point.
    pub fn evaluate(&self, points: &[([f64; 3], f64)]) -> Result<Vec<[f64; 3]>, FieldError> {
        points
            .iter()
            .map(|&(x, t)| {
                if x.iter().any(|c| !c.is_finite()) {
                    return Err(FieldError::NonFinitePoint);
                }
                self.check_time(t)?;
                Ok(self.velocity(x, t))
            })
            .collect()
    }
}

/// Names of the gallery fields, in presentation order. These are stable
/// command-line identifiers.
pub fn gallery_names() -> [&'static str; 8] {
    [
        "couette",
        "taylor-green-init",
        "periodic-decay-3d",
        "gaussian-swirl-3d",
        "tg-embedded-2d",
        "gaussian-vortex-3d",
        "taylor-green-exact-2d",
        "leray-swirl-3d",
    ]
}

/// Builds a gallery field with the given parameters.
pub fn gallery_with(name: &str, params: FieldParameters) -> Result<AnalyticField, FieldError> {
    params.validate()?;
    let base = AnalyticField {
        name: name.to_string(),
        form: FieldForm::TaylorGreenInit, // replaced below
        params,
        dim: 3,
        decay: DecayClass::Periodic,
        carrier: WeightCarrier::VelocityScale,
        beta: None,
        divergence_free: true,
        exact_nse_solution: false,
        strictly_positive_time: false,
        bouton_alpha: None,
    };
    let b53 = Some((rat(5, 1), rat(3, 1)));
    Ok(match name {
        "couette" => AnalyticField {
            form: FieldForm::Couette { n_terms: 64 },
            dim: 1,
            decay: DecayClass::Channel,
            ..base
        },
        "taylor-green-init" => AnalyticField {
            form: FieldForm::TaylorGreenInit,
            dim: 2,
            ..base
        },
        "periodic-decay-3d" => AnalyticField {
            form: FieldForm::PeriodicDecay3d,
            ..base
        },
        "gaussian-swirl-3d" => AnalyticField {
            form: FieldForm::GaussianSwirl3d,
            decay: DecayClass::Schwartz,
            ..base
        },
        "tg-embedded-2d" => AnalyticField {
            form: FieldForm::TgEmbedded2d,
            dim: 2,
            carrier: WeightCarrier::TimePrefactor,
            beta: b53,
            ..base
        },
        "gaussian-vortex-3d" => AnalyticField {
            form: FieldForm::GaussianVortex3d,
            decay: DecayClass::Schwartz,
            carrier: WeightCarrier::TimePrefactor,
            beta: b53,
            ..base
        },
        "taylor-green-exact-2d" => AnalyticField {
            form: FieldForm::TaylorGreenExact2d,
            dim: 2,
            exact_nse_solution: true,
            ..base
        },
        "leray-swirl-3d" => AnalyticField {
            form: FieldForm::LeraySwirl3d,
            decay: DecayClass::Schwartz,
            strictly_positive_time: true,
            bouton_alpha: Some((rat(1, 1), rat(2, 1))),
            ..base
        },
        _ => return Err(FieldError::UnknownGallery(name.to_string())),
    })
}

/// Builds a gallery field with default parameters (all ones).
pub fn gallery(name: &str) -> Result<AnalyticField, FieldError> {
    gallery_with(name, FieldParameters::default())
}

/// The transient channel flow with an explicit series length.
pub fn couette(params: FieldParameters, n_terms: usize) -> Result<AnalyticField, FieldError> {
    let mut f = gallery_with("couette", params)?;
    f.form = FieldForm::Couette { n_terms };
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_names_build_and_unknown_names_fail() {
        for name in gallery_names() {
            let f = gallery(name).unwrap();
            assert_eq!(f.name, name);
        }
        assert!(matches!(
            gallery("no-such-field"),
            Err(FieldError::UnknownGallery(_))
        ));
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let mut p = FieldParameters::default();
        p.viscosity = -1.0;
        assert!(matches!(
            gallery_with("taylor-green-init", p),
            Err(FieldError::BadParameter { name: "nu", .. })
        ));
        let mut q = FieldParameters::default();
        q.lengths[1] = f64::NAN;
        assert!(matches!(
            gallery_with("periodic-decay-3d", q),
            Err(FieldError::BadParameter { name: "L2", .. })
        ));
    }

    #[test]
    fn batch_evaluation_validates_points_and_times() {
        let f = gallery("leray-swirl-3d").unwrap();
        assert!(matches!(
            f.evaluate(&[([0.1, 0.2, 0.3], 0.0)]),
            Err(FieldError::TimeDomain { .. })
        ));
        assert!(matches!(
            f.evaluate(&[([f64::NAN, 0.0, 0.0], 1.0)]),
            Err(FieldError::NonFinitePoint)
        ));
        let ok = f.evaluate(&[([0.1, 0.2, 0.3], 0.5), ([1.0, -1.0, 0.4], 2.0)]);
        assert_eq!(ok.unwrap().len(), 2);

        let g = gallery("taylor-green-init").unwrap();
        assert!(g.evaluate(&[([0.0, 0.0, 0.0], 0.0)]).is_ok());
        assert!(g.evaluate(&[([0.0, 0.0, 0.0], -0.1)]).is_err());
    }

    #[test]
    fn amplitude_and_natural_exponents() {
        let mut p = FieldParameters::default();
        p.time_scale = 8.0;
        let f = gallery_with("tg-embedded-2d", p).unwrap();
        assert!((f.amplitude() - 4.0).abs() <= 1e-15, "8^(2/3) = 4");
        assert_eq!(f.natural_alpha(), (rat(5, 1), rat(3, 1)));

        let g = gallery("taylor-green-init").unwrap();
        assert_eq!(g.amplitude(), 1.0);
        assert_eq!(g.natural_alpha(), (rat(1, 1), rat(2, 1)));
    }

    #[test]
    fn periods_and_radius_metadata() {
        let f = gallery("periodic-decay-3d").unwrap();
        let p = f.periods().unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((p[0] - two_pi).abs() <= 1e-15);
        assert_eq!(gallery("gaussian-swirl-3d").unwrap().periods(), None);
        assert_eq!(gallery("gaussian-vortex-3d").unwrap().suggested_radius(), 6.0);
        assert_eq!(gallery("couette").unwrap().periods(), None);
    }
}
