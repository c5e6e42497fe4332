//! Exact rational scalars: parsing, decimal rendering, JSON encoding.
//!
//! All weight and exponent arithmetic in this crate is exact; [`Rat`] is the
//! shared scalar type. `i64` components are ample for the magnitudes that
//! arise here (small integers and their products), and overflow panics rather
//! than silently wrapping.

use num::rational::Rational64;
use num::traits::ToPrimitive;
use num::Zero;
use thiserror::Error;

/// Exact rational scalar used for weights and exponents.
pub type Rat = Rational64;

/// Shorthand constructor; reduces to lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`: expected `p` or `p/q` with integer p, q")]
    Malformed(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` (optionally signed) into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: i64 = num_str
        .parse()
        .map_err(|_| RatParseError::Malformed(s.to_string()))?;
    let den: i64 = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| RatParseError::Malformed(s.to_string()))?,
        None => 1,
    };
    if den == 0 {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

/// Renders a rational whose reduced denominator divides a power of ten as an
/// exact decimal (`3`, `-0.5`, `3.8`); falls back to `p/q` otherwise.
///
/// Exact decimal output is what the exponent-table consumers compare against,
/// so no floating point is involved.
pub fn decimal_string(r: Rat) -> String {
    let mut den = *r.denom();
    debug_assert!(den > 0, "Ratio keeps denominators positive");
    // Strip factors of 2 and 5; anything left means no finite decimal form.
    let mut scale10 = 0u32;
    let mut two = 0u32;
    let mut five = 0u32;
    while den % 2 == 0 {
        den /= 2;
        two += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        five += 1;
    }
    if den != 1 {
        return r.to_string();
    }
    scale10 = scale10.max(two).max(five);
    if scale10 == 0 {
        return r.numer().to_string();
    }
    let pow = 10i64.pow(scale10);
    let scaled = r * Rat::from_integer(pow);
    debug_assert!(scaled.is_integer());
    let scaled = scaled.to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let mag = scaled.unsigned_abs();
    let int_part = mag / pow.unsigned_abs();
    let frac_part = mag % pow.unsigned_abs();
    let mut frac = format!("{:0width$}", frac_part, width = scale10 as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// JSON encoding of a rational: `{"num": p, "den": q}` in lowest terms.
pub fn rat_json(r: Rat) -> serde_json::Value {
    serde_json::json!({ "num": *r.numer(), "den": *r.denom() })
}

/// Lossy conversion to `f64` for numerical work (exact when representable).
pub fn rat_f64(r: Rat) -> f64 {
    r.to_f64().expect("i64 rational always converts to f64")
}

/// True iff `r == 0`.
pub fn is_zero(r: Rat) -> bool {
    r.is_zero()
}
