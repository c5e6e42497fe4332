//! Isobaric weight calculus over a small expression language.
//!
//! Under the one-parameter rescaling group
//!
//! ```text
//! x → k^{a_x} x,   t → k^{a_t} t,   ρ → k^{a_ρ} ρ,
//! ```
//!
//! a quantity `q` is *isobaric of weight w* when it transforms as
//! `q → k^w q`. Weights obey a small calculus: constants have weight zero,
//! weights add under multiplication, scale under powers, drop by the
//! denominator's weight under partial differentiation, and a sum is isobaric
//! only when all addends share one weight. An equation written as a list of
//! terms is scale-invariant exactly when the terms share a common weight.
//!
//! [`expr`] provides the expression language (parser, canonical printer);
//! [`weight`] provides the weight engine and symbol tables.

pub mod expr;
pub mod weight;

pub use expr::{parse, Expr, ParseError, Transcendental};
pub use weight::{
    check_invariance, weight, AlphaForm, InvarianceReport, IsobaricWeight, WeightAssignment,
    WeightError,
};
