//! Embedding a fixed field into a one-parameter self-similar family.
//!
//! A family is indexed by a scale `k > 0` and an exponent pair
//! `(α_x, α_t)`. Members are produced by rescaling the base field's
//! parameters with the canonical exponents
//!
//! ```text
//! L → k^(α_x) L,   T → k^(α_t) T,   U → k^(α_x − α_t) U,
//! ν → k^(2α_x − α_t) ν,
//! ```
//!
//! while the similarity transformation itself acts on the field as
//!
//! ```text
//! u_k(x, t) = k^(α_x − α_t) · u(x / k^(α_x), t / k^(α_t)).
//! ```
//!
//! For fields whose scale is carried by the velocity amplitude the two
//! routes agree identically for *every* exponent pair; for fields whose
//! scale is carried by a `T^((β_x−β_t)/β_t)` time prefactor they agree only
//! along the profile's own exponent ray `α ∝ β`. [`SelfSimilarFamily`]
//! exposes both routes so the agreement is checked, not assumed, and
//! `member(1)` returns the base field bit-for-bit (identity-scale
//! recovery).

use super::{AnalyticField, FieldError, WeightCarrier};
use crate::rat::{rat_f64, Rat};

/// Exponents applied to each of the base field's parameters when forming a
/// family member at scale `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamExponents {
    /// Applied to the length scales (`L1..L3`, channel height).
    pub length: Rat,
    /// Applied to the time scale `T`.
    pub time: Rat,
    /// Applied to the velocity amplitude `U`.
    pub velocity: Rat,
    /// Applied to the viscosity `ν`.
    pub viscosity: Rat,
}

impl ParamExponents {
    /// The canonical exponents induced by a similarity pair: lengths pick up
    /// `α_x`, times `α_t`, velocities `α_x − α_t`, and the viscosity
    /// `2α_x − α_t` (zero — scale-invariant — exactly on the parabolic ray
    /// `α_t = 2α_x`).
    pub fn canonical(alpha_x: Rat, alpha_t: Rat) -> Self {
        ParamExponents {
            length: alpha_x,
            time: alpha_t,
            velocity: alpha_x - alpha_t,
            viscosity: alpha_x + alpha_x - alpha_t,
        }
    }
}

/// A one-parameter family `{u_k}` of fields generated from a base field by
/// parameter rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfSimilarFamily {
    pub base: AnalyticField,
    pub alpha_x: Rat,
    pub alpha_t: Rat,
    pub exponents: ParamExponents,
    /// Whether parameter rescaling is expected to reproduce the similarity
    /// transformation identically for this base and exponent pair. Checks
    /// treat a `true` here as a hard claim and a `false` as informational.
    pub claims_exact: bool,
}

/// Embeds a field into the self-similar family with exponents
/// `(alpha_x, alpha_t)` and the canonical parameter exponents.
pub fn embed(base: &AnalyticField, alpha_x: Rat, alpha_t: Rat) -> SelfSimilarFamily {
    let claims_exact = match base.carrier {
        WeightCarrier::VelocityScale => true,
        WeightCarrier::TimePrefactor => {
            let (bx, bt) = base.beta.expect("time-prefactor fields carry β");
            // Amplitude T^a with a = (β_x−β_t)/β_t scales as k^(a·α_t);
            // the transformation needs k^(α_x−α_t).
            let a = (bx - bt) / bt;
            a * alpha_t == alpha_x - alpha_t
        }
    };
    SelfSimilarFamily {
        base: base.clone(),
        alpha_x,
        alpha_t,
        exponents: ParamExponents::canonical(alpha_x, alpha_t),
        claims_exact,
    }
}

/// Embeds with explicit parameter exponents and exactness claim. This is the
/// negative-control constructor: deliberately wrong exponents let tests
/// confirm the self-similarity check rejects a family that does not scale.
pub fn embed_with_exponents(
    base: &AnalyticField,
    alpha_x: Rat,
    alpha_t: Rat,
    exponents: ParamExponents,
    claim_exact: bool,
) -> SelfSimilarFamily {
    SelfSimilarFamily {
        base: base.clone(),
        alpha_x,
        alpha_t,
        exponents,
        claims_exact: claim_exact,
    }
}

impl SelfSimilarFamily {
    /// The family member at scale `k`: the base field with rescaled
    /// parameters. `member(1.0)` is the base field, bit for bit.
    pub fn member(&self, k: f64) -> Result<AnalyticField, FieldError> {
        if !(k.is_finite() && k > 0.0) {
            return Err(FieldError::BadScale(k));
        }
        let mut f = self.base.clone();
        let e = &self.exponents;
        for l in &mut f.params.lengths {
            *l = scale_by(*l, k, e.length);
        }
        f.params.channel_height = scale_by(f.params.channel_height, k, e.length);
        f.params.time_scale = scale_by(f.params.time_scale, k, e.time);
        f.params.velocity_scale = scale_by(f.params.velocity_scale, k, e.velocity);
        f.params.viscosity = scale_by(f.params.viscosity, k, e.viscosity);
        Ok(f)
    }

    /// The similarity transformation applied directly to the base field:
    /// `k^(α_x − α_t) · u(x / k^(α_x), t / k^(α_t))`. This is the second,
    /// independent route to the member at scale `k`; comparing it against
    /// [`SelfSimilarFamily::member`] is the self-similarity check.
    pub fn transformed_velocity(
        &self,
        k: f64,
        x: [f64; 3],
        t: f64,
    ) -> Result<[f64; 3], FieldError> {
        if !(k.is_finite() && k > 0.0) {
            return Err(FieldError::BadScale(k));
        }
        let kx = k.powf(rat_f64(self.alpha_x));
        let kt = k.powf(rat_f64(self.alpha_t));
        let amp = k.powf(rat_f64(self.alpha_x - self.alpha_t));
        let x0 = [x[0] / kx, x[1] / kx, x[2] / kx];
        let t0 = t / kt;
        self.base.check_time(t0)?;
        let u = self.base.velocity(x0, t0);
        Ok([amp * u[0], amp * u[1], amp * u[2]])
    }
}

/// `v · k^e`, leaving `v` untouched (bit-identical) when the exponent is
/// zero — the scale-invariant parameters of a group must not pick up
/// rounding noise.
fn scale_by(v: f64, k: f64, e: Rat) -> f64 {
    use num::Zero;
    if e.is_zero() {
        v
    } else {
        v * k.powf(rat_f64(e))
    }
}
