//! Scaling-group bookkeeping: norm-exponent prediction from profile weights,
//! the reference exponent table, the group action on gallery fields, and
//! empirical exponent measurement by log-log slope fitting on co-scaled
//! grids.
//!
//! The predictions are exact rational arithmetic; the measurements are the
//! numerical counterpart, and the two are compared in tests rather than
//! assumed to agree.

use thiserror::Error;

use crate::fieldkit::{embed, AnalyticField, FieldError};
use crate::gridops::{
    energy, sample, sample_vorticity, sup_magnitude, Grid, GridError, GridKind,
};
use crate::rat::{decimal_string, rat, rat_json, Rat};

/// Errors from exponent prediction and measurement.
#[derive(Debug, Error)]
pub enum ScalingError {
    #[error("profile time weight must be nonzero")]
    ZeroTimeWeight,
    #[error("need at least {required} distinct positive scale factors, got {got}")]
    BadScaleList { required: usize, got: usize },
    #[error("scale factor {0} is not a positive finite number")]
    BadScaleFactor(f64),
    #[error("norm value {norm} at k = {k} is not positive; cannot fit a log-log slope")]
    NonPositiveNorm { k: f64, norm: f64 },
    #[error("unknown norm kind {0:?}; expected sup-velocity, sup-vorticity, or energy")]
    UnknownNorm(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Predicted norm-scaling exponents for a similarity profile with spatial
/// weight `β_x` and temporal weight `β_t`. Everything is determined by the
/// ratio `r = β_x/β_t`:
///
/// ```text
/// sup-vorticity ~ k^(2r−3),   sup-velocity ~ k^(2(r−1)),   energy ~ k^(4r−1),
/// ```
///
/// with the energy exponent counting the co-scaled domain volume. All three
/// exponents are positive exactly when `r > 3/2`; [`ExponentRecord::blowup_safe`]
/// records that predicate and nothing more — which side of the threshold is
/// "safe" in an analytic sense is not adjudicated here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentRecord {
    pub beta_x: Rat,
    pub beta_t: Rat,
    /// The ratio `β_x/β_t` that alone determines the exponents.
    pub r: Rat,
    /// Vorticity sup-norm exponent `2r − 3`.
    pub omega_exp: Rat,
    /// Velocity sup-norm exponent `2(r − 1)`.
    pub u_exp: Rat,
    /// Energy exponent `4r − 1` over the co-scaled domain.
    pub energy_exp: Rat,
    /// `r > 3/2`, equivalently: all three exponents are positive.
    pub blowup_safe: bool,
}

impl ExponentRecord {
    /// One CSV row in the column order `r, omega_exp, u_exp, E_exp`, with
    /// exact decimal rendering (no floating point involved).
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            decimal_string(self.r),
            decimal_string(self.omega_exp),
            decimal_string(self.u_exp),
            decimal_string(self.energy_exp),
        )
    }

    /// JSON encoding with exact rationals (`{"num", "den"}` pairs).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "beta_x": rat_json(self.beta_x),
            "beta_t": rat_json(self.beta_t),
            "r": rat_json(self.r),
            "omega_exp": rat_json(self.omega_exp),
            "u_exp": rat_json(self.u_exp),
            "energy_exp": rat_json(self.energy_exp),
            "blowup_safe": self.blowup_safe,
        })
    }
}

/// Predicts the three norm-scaling exponents for a `(β_x, β_t)` profile.
///
/// Exact rational arithmetic throughout; `β_t = 0` is rejected because the
/// ratio `r = β_x/β_t` is undefined there.
pub fn predict_exponents(beta_x: Rat, beta_t: Rat) -> Result<ExponentRecord, ScalingError> {
    use num::Zero;
    if beta_t.is_zero() {
        return Err(ScalingError::ZeroTimeWeight);
    }
    let r = beta_x / beta_t;
    Ok(ExponentRecord {
        beta_x,
        beta_t,
        r,
        omega_exp: rat(2, 1) * r - rat(3, 1),
        u_exp: rat(2, 1) * (r - rat(1, 1)),
        energy_exp: rat(4, 1) * r - rat(1, 1),
        blowup_safe: r > rat(3, 2),
    })
}

/// The ten reference ratio values of the exponent table.
fn table_ratios() -> [Rat; 10] {
    [
        rat(-2, 1),
        rat(-1, 1),
        rat(-1, 2),
        rat(0, 1),
        rat(1, 2),
        rat(1, 1),
        rat(6, 5),
        rat(3, 2),
        rat(2, 1),
        rat(3, 1),
    ]
}

/// The exponent table: one record per reference ratio value, in row order.
pub fn table1() -> Vec<ExponentRecord> {
    table_ratios()
        .iter()
        .map(|&r| predict_exponents(r, rat(1, 1)).expect("unit time weight is nonzero"))
        .collect()
}

/// The exponent table as CSV with header `r,omega_exp,u_exp,E_exp`.
pub fn table1_csv() -> String {
    let mut out = String::from("r,omega_exp,u_exp,E_exp\n");
    for rec in table1() {
        out.push_str(&rec.csv_row());
        out.push('\n');
    }
    out
}

/// The exponent table as a JSON array with exact rationals.
pub fn table1_json() -> String {
    let rows: Vec<serde_json::Value> = table1().iter().map(ExponentRecord::to_json).collect();
    serde_json::Value::Array(rows).to_string()
}

/// One similarity-group element family: the three base exponents
/// `(α_x, α_t, α_ρ)` and the per-symbol exponents of the scale factor `k`
/// they induce. Admissible scale factors are `0 < k < ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingLaw {
    pub alpha_x: Rat,
    pub alpha_t: Rat,
    pub alpha_rho: Rat,
}

impl ScalingLaw {
    pub fn new(alpha_x: Rat, alpha_t: Rat, alpha_rho: Rat) -> Self {
        ScalingLaw {
            alpha_x,
            alpha_t,
            alpha_rho,
        }
    }

    /// The parabolic law `(1, 2, 0)` — the ray on which the viscosity is
    /// scale-invariant.
    pub fn standard() -> Self {
        ScalingLaw::new(rat(1, 1), rat(2, 1), rat(0, 1))
    }

    /// True exactly when `α_t = 2α_x`, i.e. when [`Self::viscosity_exponent`]
    /// vanishes and the same fluid serves at every scale.
    pub fn is_standard(&self) -> bool {
        self.alpha_t == rat(2, 1) * self.alpha_x
    }

    /// Exponent of `k` on lengths.
    pub fn x_exponent(&self) -> Rat {
        self.alpha_x
    }

    /// Exponent of `k` on times.
    pub fn t_exponent(&self) -> Rat {
        self.alpha_t
    }

    /// Exponent of `k` on velocities: `α_x − α_t`.
    pub fn velocity_exponent(&self) -> Rat {
        self.alpha_x - self.alpha_t
    }

    /// Exponent of `k` on kinematic pressure (pressure per unit density),
    /// which carries the weight of velocity squared: `2(α_x − α_t)`. This is
    /// the convention used everywhere downstream.
    pub fn pressure_exponent(&self) -> Rat {
        rat(2, 1) * (self.alpha_x - self.alpha_t)
    }

    /// Alternate density-weighted pressure exponent `α_ρ − 2α_x − 2α_t`,
    /// exposed for comparison with the kinematic convention; nothing
    /// downstream consumes it.
    pub fn alternate_pressure_exponent(&self) -> Rat {
        self.alpha_rho - rat(2, 1) * (self.alpha_x + self.alpha_t)
    }

    /// Exponent of `k` on the viscosity: `2α_x − α_t`.
    pub fn viscosity_exponent(&self) -> Rat {
        self.alpha_x + self.alpha_x - self.alpha_t
    }

    /// Exponent of `k` on the density.
    pub fn density_exponent(&self) -> Rat {
        self.alpha_rho
    }

    /// Whether `k` is an admissible scale factor (`0 < k < ∞`).
    pub fn admissible(k: f64) -> bool {
        k.is_finite() && k > 0.0
    }

    /// JSON encoding of the law and all derived exponents.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha_x": rat_json(self.alpha_x),
            "alpha_t": rat_json(self.alpha_t),
            "alpha_rho": rat_json(self.alpha_rho),
            "standard": self.is_standard(),
            "exponents": {
                "x": rat_json(self.x_exponent()),
                "t": rat_json(self.t_exponent()),
                "u": rat_json(self.velocity_exponent()),
                "p": rat_json(self.pressure_exponent()),
                "p_alternate": rat_json(self.alternate_pressure_exponent()),
                "nu": rat_json(self.viscosity_exponent()),
                "rho": rat_json(self.density_exponent()),
            },
        })
    }
}

/// Applies the group element at scale `k` to a field's parameters:
/// `L → k^(α_x) L`, `T → k^(α_t) T`, `U → k^(α_x−α_t) U`,
/// `ν → k^(2α_x−α_t) ν`. Scale-invariant parameters come back bit-identical
/// — in particular the viscosity under any standard law. The density
/// exponent does not act because the gallery fields carry no density
/// parameter; fields whose magnitude rides on a `T^((β_x−β_t)/β_t)`
/// prefactor pick up their scale through `T` instead of `U`.
pub fn rescale(
    field: &AnalyticField,
    law: &ScalingLaw,
    k: f64,
) -> Result<AnalyticField, ScalingError> {
    Ok(embed(field, law.alpha_x, law.alpha_t).member(k)?)
}

/// The norms whose scaling exponents the weight calculus predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    SupVelocity,
    SupVorticity,
    Energy,
}

impl NormKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormKind::SupVelocity => "sup-velocity",
            NormKind::SupVorticity => "sup-vorticity",
            NormKind::Energy => "energy",
        }
    }

    /// The predicted exponent for this norm from an [`ExponentRecord`].
    pub fn predicted(&self, record: &ExponentRecord) -> Rat {
        match self {
            NormKind::SupVelocity => record.u_exp,
            NormKind::SupVorticity => record.omega_exp,
            NormKind::Energy => record.energy_exp,
        }
    }
}

impl std::str::FromStr for NormKind {
    type Err = ScalingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sup-velocity" => Ok(NormKind::SupVelocity),
            "sup-vorticity" => Ok(NormKind::SupVorticity),
            "energy" => Ok(NormKind::Energy),
            other => Err(ScalingError::UnknownNorm(other.to_string())),
        }
    }
}

/// Ordinary-least-squares fit of `ln N(k)` against `ln k`, all points
/// weighted equally.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fitted line in log space.
    pub residual: f64,
    /// The measured `(k, N(k))` pairs, sorted by `k`.
    pub samples: Vec<(f64, f64)>,
}

/// Measures the empirical scaling exponent of a norm across family members.
///
/// Each member is evaluated on its own co-scaled grid — `n` points per used
/// axis, periodic extents following the member's periods, truncated boxes
/// its suggested radius — at the member's own epoch `t_k = T_k/4`, so every
/// member is resolved on the same relative lattice and the fitted log-log
/// relation reflects pure parameter scaling rather than resolution effects.
/// Energy is promoted to a three-dimensional measure by one co-scaled cell
/// extent per unused axis, so the domain-volume factor in the predicted
/// energy exponent is captured.
///
/// Needs at least three distinct admissible scale factors. Norm evaluations
/// are independent per `k`; the fit is a deterministic reduction over the
/// pairs sorted by `k`.
pub fn measure_exponent(
    field: &AnalyticField,
    law: &ScalingLaw,
    kind: NormKind,
    ks: &[f64],
    n: usize,
) -> Result<SlopeFit, ScalingError> {
    for &k in ks {
        if !ScalingLaw::admissible(k) {
            return Err(ScalingError::BadScaleFactor(k));
        }
    }
    let mut ks_sorted = ks.to_vec();
    ks_sorted.sort_by(f64::total_cmp);
    ks_sorted.dedup();
    if ks_sorted.len() < 3 {
        return Err(ScalingError::BadScaleList {
            required: 3,
            got: ks_sorted.len(),
        });
    }

    let mut samples = Vec::with_capacity(ks_sorted.len());
    for &k in &ks_sorted {
        let member = rescale(field, law, k)?;
        let grid = Grid::for_field(&member, n)?;
        let t = 0.25 * member.params.time_scale;
        let value = match kind {
            NormKind::SupVelocity => sup_magnitude(&sample(&member, &grid, t)?),
            NormKind::SupVorticity => {
                let w = sample_vorticity(&member, &grid, t)?;
                let mut sup = 0.0_f64;
                for flat in 0..w.grid().len() {
                    sup = sup.max(w.magnitude(flat));
                }
                sup
            }
            NormKind::Energy => {
                let mut e = energy(&sample(&member, &grid, t)?);
                for axis in grid.dims..3 {
                    e *= match grid.kind {
                        GridKind::Periodic => {
                            member.periods().expect("periodic fields report periods")[axis]
                        }
                        GridKind::Truncated => 2.0 * member.suggested_radius(),
                    };
                }
                e
            }
        };
        if !(value.is_finite() && value > 0.0) {
            return Err(ScalingError::NonPositiveNorm { k, norm: value });
        }
        samples.push((k, value));
    }

    let m = samples.len() as f64;
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(k, v)| (k.ln(), v.ln())).collect();
    let xbar = logs.iter().map(|&(x, _)| x).sum::<f64>() / m;
    let ybar = logs.iter().map(|&(_, y)| y).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = logs
        .iter()
        .map(|&(x, y)| (x - xbar) * (y - ybar))
        .sum();
    debug_assert!(sxx > 0.0, "distinct k values give distinct logs");
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let residual = (logs
        .iter()
        .map(|&(x, y)| {
            let d = y - (slope * x + intercept);
            d * d
        })
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(SlopeFit {
        slope,
        intercept,
        residual,
        samples,
    })
}
