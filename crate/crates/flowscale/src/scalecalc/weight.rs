//! Weight assignment and the isobaric-weight engine.
//!
//! A weight is a linear form `c0 + cx·a_x + ct·a_t + cρ·a_ρ` in the three
//! group exponents, with exact rational coefficients. Working with forms
//! (rather than numbers) lets one table serve both modes: *symbolic* weights
//! keep `a_x`, `a_t`, `a_ρ` free, *numeric* weights pin them to rationals —
//! in which case every form collapses to its constant part.

use super::expr::Expr;
use crate::rat::{rat_json, Rat};
use num::traits::Signed;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Exact linear form `c0 + cx·a_x + ct·a_t + crho·a_ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AlphaForm {
    pub c0: Rat,
    pub cx: Rat,
    pub ct: Rat,
    pub crho: Rat,
}

impl AlphaForm {
    pub fn zero() -> AlphaForm {
        AlphaForm::default()
    }

    pub fn constant(c: Rat) -> AlphaForm {
        AlphaForm {
            c0: c,
            ..AlphaForm::default()
        }
    }

    /// The free exponent `a_x`.
    pub fn alpha_x() -> AlphaForm {
        AlphaForm {
            cx: Rat::from_integer(1),
            ..AlphaForm::default()
        }
    }

    /// The free exponent `a_t`.
    pub fn alpha_t() -> AlphaForm {
        AlphaForm {
            ct: Rat::from_integer(1),
            ..AlphaForm::default()
        }
    }

    /// The free exponent `a_ρ`.
    pub fn alpha_rho() -> AlphaForm {
        AlphaForm {
            crho: Rat::from_integer(1),
            ..AlphaForm::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.cx.is_zero() && self.ct.is_zero() && self.crho.is_zero()
    }

    /// True when the form carries no free exponents (pure constant).
    pub fn is_numeric(&self) -> bool {
        self.cx.is_zero() && self.ct.is_zero() && self.crho.is_zero()
    }

    pub fn scale(&self, q: Rat) -> AlphaForm {
        AlphaForm {
            c0: self.c0 * q,
            cx: self.cx * q,
            ct: self.ct * q,
            crho: self.crho * q,
        }
    }

    /// Substitutes numeric exponents into the form.
    pub fn eval(&self, ax: Rat, at: Rat, arho: Rat) -> Rat {
        self.c0 + self.cx * ax + self.ct * at + self.crho * arho
    }

    /// JSON encoding: a numeric form encodes as the bare rational
    /// `{"num","den"}`; otherwise all four coefficients are spelled out.
    pub fn to_json(&self) -> serde_json::Value {
        if self.is_numeric() {
            rat_json(self.c0)
        } else {
            serde_json::json!({
                "const": rat_json(self.c0),
                "alpha_x": rat_json(self.cx),
                "alpha_t": rat_json(self.ct),
                "alpha_rho": rat_json(self.crho),
            })
        }
    }
}

impl Add for AlphaForm {
    type Output = AlphaForm;
    fn add(self, rhs: AlphaForm) -> AlphaForm {
        AlphaForm {
            c0: self.c0 + rhs.c0,
            cx: self.cx + rhs.cx,
            ct: self.ct + rhs.ct,
            crho: self.crho + rhs.crho,
        }
    }
}

impl Sub for AlphaForm {
    type Output = AlphaForm;
    fn sub(self, rhs: AlphaForm) -> AlphaForm {
        self + (-rhs)
    }
}

impl Neg for AlphaForm {
    type Output = AlphaForm;
    fn neg(self) -> AlphaForm {
        self.scale(Rat::from_integer(-1))
    }
}

impl Mul<Rat> for AlphaForm {
    type Output = AlphaForm;
    fn mul(self, rhs: Rat) -> AlphaForm {
        self.scale(rhs)
    }
}

impl fmt::Display for AlphaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (coef, name) in [
            (self.cx, "alpha_x"),
            (self.ct, "alpha_t"),
            (self.crho, "alpha_rho"),
        ] {
            if coef.is_zero() {
                continue;
            }
            let mag = coef.abs();
            let text = if mag == Rat::from_integer(1) {
                name.to_string()
            } else if mag.is_integer() {
                format!("{mag}*{name}")
            } else {
                format!("({mag})*{name}")
            };
            parts.push((coef.is_negative(), text));
        }
        if !self.c0.is_zero() {
            parts.push((self.c0.is_negative(), self.c0.abs().to_string()));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (neg, text)) in parts.iter().enumerate() {
            if i == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(text);
        }
        f.write_str(&s)
    }
}

/// Result of weighing an expression: either a single weight, or the first
/// pair of incompatible weights encountered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsobaricWeight {
    Weight(AlphaForm),
    NotIsobaric { left: AlphaForm, right: AlphaForm },
}

impl IsobaricWeight {
    pub fn is_isobaric(&self) -> bool {
        matches!(self, IsobaricWeight::Weight(_))
    }

    pub fn as_weight(&self) -> Option<AlphaForm> {
        match self {
            IsobaricWeight::Weight(w) => Some(*w),
            IsobaricWeight::NotIsobaric { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            IsobaricWeight::Weight(w) => serde_json::json!({
                "isobaric": true,
                "weight": w.to_json(),
            }),
            IsobaricWeight::NotIsobaric { left, right } => serde_json::json!({
                "isobaric": false,
                "left": left.to_json(),
                "right": right.to_json(),
            }),
        }
    }
}

impl fmt::Display for IsobaricWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsobaricWeight::Weight(w) => write!(f, "{w}"),
            IsobaricWeight::NotIsobaric { left, right } => {
                write!(f, "not isobaric (weights {left} and {right})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// Symbol-to-weight table plus the exponent forms it was built from.
///
/// The default table covers the symbols of the incompressible equations and
/// their similarity parameters:
///
/// | symbols                          | weight            |
/// |----------------------------------|-------------------|
/// | `x y z L L1 L2 L3 h`             | `a_x`             |
/// | `t T`                            | `a_t`             |
/// | `u v w U`                        | `a_x - a_t`       |
/// | `nu`                             | `2 a_x - a_t`     |
/// | `p`                              | `2 (a_x - a_t)`   |
/// | `rho`                            | `a_ρ`             |
/// | `Re`                             | `a_t - 2 a_x`     |
///
/// Pressure is treated kinematically (`p` ≡ `p/ρ`), so its weight is the
/// square of the velocity weight; [`WeightAssignment::alternate_pressure`]
/// switches to the alternate bookkeeping `a_ρ - 2 a_x - 2 a_t` that appears
/// in some statements of the rescaling group. `Re` always carries the
/// negative of the viscosity weight, including in fixed-viscosity mode where
/// both are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    ax: AlphaForm,
    at: AlphaForm,
    arho: AlphaForm,
    weights: BTreeMap<String, AlphaForm>,
}

impl WeightAssignment {
    fn build(ax: AlphaForm, at: AlphaForm, arho: AlphaForm) -> WeightAssignment {
        let vel = ax - at;
        let mut weights = BTreeMap::new();
        for s in ["x", "y", "z", "L", "L1", "L2", "L3", "h"] {
            weights.insert(s.to_string(), ax);
        }
        for s in ["t", "T"] {
            weights.insert(s.to_string(), at);
        }
        for s in ["u", "v", "w", "U"] {
            weights.insert(s.to_string(), vel);
        }
        weights.insert("nu".to_string(), ax.scale(Rat::from_integer(2)) - at);
        weights.insert("p".to_string(), vel.scale(Rat::from_integer(2)));
        weights.insert("rho".to_string(), arho);
        weights.insert("Re".to_string(), at - ax.scale(Rat::from_integer(2)));
        WeightAssignment {
            ax,
            at,
            arho,
            weights,
        }
    }

    /// Table with the exponents `a_x`, `a_t`, `a_ρ` left free.
    pub fn symbolic() -> WeightAssignment {
        WeightAssignment::build(
            AlphaForm::alpha_x(),
            AlphaForm::alpha_t(),
            AlphaForm::alpha_rho(),
        )
    }

    /// Table with the exponents pinned to numeric rationals; all weights
    /// collapse to constants.
    pub fn numeric(ax: Rat, at: Rat, arho: Rat) -> WeightAssignment {
        WeightAssignment::build(
            AlphaForm::constant(ax),
            AlphaForm::constant(at),
            AlphaForm::constant(arho),
        )
    }

    /// Dimensional mode: the viscosity is a fixed material constant, weight
    /// zero (and `Re` correspondingly zero). Scale invariance of the viscous
    /// equations then holds only on the parabolic line `a_t = 2 a_x`.
    pub fn fixed_viscosity(mut self) -> WeightAssignment {
        self.weights.insert("nu".to_string(), AlphaForm::zero());
        self.weights.insert("Re".to_string(), AlphaForm::zero());
        self
    }

    /// Alternate pressure bookkeeping `w(p) = a_ρ - 2 a_x - 2 a_t`, recorded
    /// for comparison with the kinematic default `2 (a_x - a_t)`.
    pub fn alternate_pressure(mut self) -> WeightAssignment {
        let w = self.arho - self.ax.scale(Rat::from_integer(2)) - self.at.scale(Rat::from_integer(2));
        self.weights.insert("p".to_string(), w);
        self
    }

    /// Adds or overrides a single symbol weight.
    pub fn with_weight(mut self, symbol: &str, weight: AlphaForm) -> WeightAssignment {
        self.weights.insert(symbol.to_string(), weight);
        self
    }

    pub fn get(&self, symbol: &str) -> Option<AlphaForm> {
        self.weights.get(symbol).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.weights.keys().map(String::as_str)
    }
}

/// Computes the isobaric weight of an expression under an assignment.
///
/// Rules:
/// * constants have weight `0`;
/// * `w(a·b) = w(a) + w(b)`, `w(a^q) = q·w(a)`;
/// * a sum is isobaric iff all addends share one weight;
/// * `w(d(a, s)) = w(a) - w(s)`;
/// * `sin`/`cos`/`exp` require a weight-zero argument and have weight `0`;
///   any other argument weight makes the expression non-isobaric.
///
/// Non-isobaric subexpressions propagate outward unchanged, carrying the
/// first conflicting pair of weights.
pub fn weight(e: &Expr, wa: &WeightAssignment) -> Result<IsobaricWeight, WeightError> {
    use IsobaricWeight::{NotIsobaric, Weight};
    Ok(match e {
        Expr::Const(_) => Weight(AlphaForm::zero()),
        Expr::Symbol(s) => Weight(
            wa.get(s)
                .ok_or_else(|| WeightError::UnknownSymbol(s.clone()))?,
        ),
        Expr::Sum(children) => {
            let mut first: Option<AlphaForm> = None;
            let mut verdict = None;
            for c in children {
                match weight(c, wa)? {
                    Weight(w) => match first {
                        None => first = Some(w),
                        Some(f) if f == w => {}
                        Some(f) => {
                            verdict = Some(NotIsobaric { left: f, right: w });
                            break;
                        }
                    },
                    not => {
                        verdict = Some(not);
                        break;
                    }
                }
            }
            verdict.unwrap_or_else(|| Weight(first.expect("sums have at least one addend")))
        }
        Expr::Product(children) => {
            let mut total = AlphaForm::zero();
            let mut verdict = None;
            for c in children {
                match weight(c, wa)? {
                    Weight(w) => total = total + w,
                    not => {
                        verdict = Some(not);
                        break;
                    }
                }
            }
            verdict.unwrap_or(Weight(total))
        }
        Expr::Power(base, q) => match weight(base, wa)? {
            Weight(w) => Weight(w.scale(*q)),
            not => not,
        },
        Expr::Partial(inner, s) => {
            let ws = wa
                .get(s)
                .ok_or_else(|| WeightError::UnknownSymbol(s.clone()))?;
            match weight(inner, wa)? {
                Weight(w) => Weight(w - ws),
                not => not,
            }
        }
        Expr::Apply(_, arg) => match weight(arg, wa)? {
            Weight(w) if w.is_zero() => Weight(AlphaForm::zero()),
            Weight(w) => NotIsobaric {
                left: w,
                right: AlphaForm::zero(),
            },
            not => not,
        },
    })
}

/// Per-term weights of an equation together with the invariance verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub term_weights: Vec<IsobaricWeight>,
    pub invariant: bool,
    /// The shared weight when `invariant` holds (and at least one term given).
    pub common: Option<AlphaForm>,
}

/// Checks whether all terms of an equation are isobaric with one common
/// weight — the condition for the equation to be invariant under the
/// rescaling group encoded in `wa`.
pub fn check_invariance(
    terms: &[Expr],
    wa: &WeightAssignment,
) -> Result<InvarianceReport, WeightError> {
    let term_weights: Vec<IsobaricWeight> = terms
        .iter()
        .map(|t| weight(t, wa))
        .collect::<Result<_, _>>()?;
    let mut common: Option<AlphaForm> = None;
    let mut invariant = true;
    for tw in &term_weights {
        match tw.as_weight() {
            Some(w) => match common {
                None => common = Some(w),
                Some(c) if c == w => {}
                Some(_) => {
                    invariant = false;
                    break;
                }
            },
            None => {
                invariant = false;
                break;
            }
        }
    }
    Ok(InvarianceReport {
        invariant,
        common: if invariant { common } else { None },
        term_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::scalecalc::parse;

    fn w_num(src: &str, ax: i64, at: i64) -> IsobaricWeight {
        let e = parse(src).unwrap();
        let wa = WeightAssignment::numeric(rat(ax, 1), rat(at, 1), rat(0, 1));
        weight(&e, &wa).unwrap()
    }

    fn w_sym(src: &str) -> IsobaricWeight {
        let e = parse(src).unwrap();
        weight(&e, &WeightAssignment::symbolic()).unwrap()
    }

    #[test]
    fn scale_free_ratios_have_weight_zero() {
        assert_eq!(w_sym("x/L"), IsobaricWeight::Weight(AlphaForm::zero()));
        assert_eq!(
            w_sym("nu * t * h^(-2)"),
            IsobaricWeight::Weight(AlphaForm::zero())
        );
    }

    #[test]
    fn parabolic_profile_weight_is_velocity_weight() {
        // t^(-1/2) · F(x/√t) carries the velocity weight a_x - a_t at the
        // parabolic point (a_x, a_t) = (1, 2): both equal -1.
        let got = w_num("t^(-1/2) * sin(x * t^(-1/2))", 1, 2);
        assert_eq!(got, IsobaricWeight::Weight(AlphaForm::constant(rat(-1, 1))));
    }

    #[test]
    fn mixed_sum_is_not_isobaric() {
        match w_num("x + t", 1, 2) {
            IsobaricWeight::NotIsobaric { left, right } => {
                assert_eq!(left, AlphaForm::constant(rat(1, 1)));
                assert_eq!(right, AlphaForm::constant(rat(2, 1)));
            }
            other => panic!("expected non-isobaric, got {other:?}"),
        }
    }

    #[test]
    fn transcendental_of_weighted_argument_is_not_isobaric() {
        match w_num("sin(x)", 1, 2) {
            IsobaricWeight::NotIsobaric { left, right } => {
                assert_eq!(left, AlphaForm::constant(rat(1, 1)));
                assert_eq!(right, AlphaForm::zero());
            }
            other => panic!("expected non-isobaric, got {other:?}"),
        }
        // ... and it propagates through enclosing products
        assert!(!w_num("t * sin(x)", 1, 2).is_isobaric());
    }

    #[test]
    fn derivative_lowers_weight_by_denominator() {
        let ax = AlphaForm::alpha_x();
        let at = AlphaForm::alpha_t();
        assert_eq!(w_sym("d(u,t)"), IsobaricWeight::Weight(ax - at - at));
        assert_eq!(
            w_sym("d(d(u,x),x)"),
            IsobaricWeight::Weight(ax - at - ax - ax)
        );
    }

    #[test]
    fn momentum_terms_share_a_common_symbolic_weight() {
        let terms: Vec<Expr> = [
            "d(u,t)",
            "u*d(u,x) + v*d(u,y) + w*d(u,z)",
            "nu*(d(d(u,x),x) + d(d(u,y),y) + d(d(u,z),z))",
            "d(p,x)",
        ]
        .iter()
        .map(|s| parse(s).unwrap())
        .collect();
        let rep = check_invariance(&terms, &WeightAssignment::symbolic()).unwrap();
        assert!(rep.invariant);
        let expect = AlphaForm::alpha_x() - AlphaForm::alpha_t().scale(rat(2, 1));
        assert_eq!(rep.common, Some(expect));
        assert_eq!(expect.to_string(), "alpha_x - 2*alpha_t");
    }

    #[test]
    fn nondimensional_momentum_matches_dimensional_weight() {
        let e = parse("Re^(-1) * (d(d(u,x),x) + d(d(u,y),y) + d(d(u,z),z))").unwrap();
        let wa = WeightAssignment::symbolic();
        let expect = AlphaForm::alpha_x() - AlphaForm::alpha_t().scale(rat(2, 1));
        assert_eq!(weight(&e, &wa).unwrap(), IsobaricWeight::Weight(expect));
    }

    #[test]
    fn continuity_weight_is_minus_alpha_t() {
        let e = parse("d(u,x) + d(v,y) + d(w,z)").unwrap();
        let got = weight(&e, &WeightAssignment::symbolic()).unwrap();
        assert_eq!(got, IsobaricWeight::Weight(-AlphaForm::alpha_t()));
    }

    #[test]
    fn self_similar_transport_terms_share_velocity_weight() {
        // The three building blocks (r·∇)u, t ∂u/∂t, u of the integrated
        // self-similarity identities all carry the velocity weight.
        let terms: Vec<Expr> = ["x*d(u,x) + y*d(u,y) + z*d(u,z)", "t*d(u,t)", "u"]
            .iter()
            .map(|s| parse(s).unwrap())
            .collect();
        let rep = check_invariance(&terms, &WeightAssignment::symbolic()).unwrap();
        assert!(rep.invariant);
        assert_eq!(rep.common, Some(AlphaForm::alpha_x() - AlphaForm::alpha_t()));
    }

    #[test]
    fn fixed_viscosity_restricts_invariance_to_parabolic_scalings() {
        let terms: Vec<Expr> = ["d(u,t)", "nu*d(d(u,x),x)"]
            .iter()
            .map(|s| parse(s).unwrap())
            .collect();
        // a_t = 2 a_x: invariant even with weightless viscosity
        let wa = WeightAssignment::numeric(rat(3, 2), rat(3, 1), rat(0, 1)).fixed_viscosity();
        assert!(check_invariance(&terms, &wa).unwrap().invariant);
        // a_t ≠ 2 a_x: broken
        let wa = WeightAssignment::numeric(rat(1, 1), rat(1, 1), rat(0, 1)).fixed_viscosity();
        assert!(!check_invariance(&terms, &wa).unwrap().invariant);
        // with the scaling viscosity weight the same pair is always invariant
        let wa = WeightAssignment::numeric(rat(1, 1), rat(1, 1), rat(0, 1));
        assert!(check_invariance(&terms, &wa).unwrap().invariant);
    }

    #[test]
    fn reynolds_weight_is_negative_viscosity_weight() {
        let wa = WeightAssignment::symbolic();
        let nu = wa.get("nu").unwrap();
        let re = wa.get("Re").unwrap();
        assert_eq!(re, -nu);
        let fixed = WeightAssignment::symbolic().fixed_viscosity();
        assert_eq!(fixed.get("Re").unwrap(), -fixed.get("nu").unwrap());
        assert!(fixed.get("nu").unwrap().is_zero());
    }

    #[test]
    fn alternate_pressure_convention_is_recorded() {
        let wa = WeightAssignment::symbolic().alternate_pressure();
        let p = wa.get("p").unwrap();
        assert_eq!(p.to_string(), "-2*alpha_x - 2*alpha_t + alpha_rho");
        // kinematic default differs from the alternate whenever the exponents
        // are generic
        let kin = WeightAssignment::symbolic().get("p").unwrap();
        assert_eq!(kin.to_string(), "2*alpha_x - 2*alpha_t");
        assert_ne!(p, kin);
    }

    #[test]
    fn unknown_symbols_error() {
        let e = parse("q * x").unwrap();
        let got = weight(&e, &WeightAssignment::symbolic());
        assert_eq!(got, Err(WeightError::UnknownSymbol("q".to_string())));
    }

    #[test]
    fn custom_weights_extend_the_table() {
        let wa = WeightAssignment::symbolic()
            .with_weight("E", AlphaForm::alpha_x().scale(rat(5, 1)) - AlphaForm::alpha_t().scale(rat(3, 1)));
        let e = parse("E / T").unwrap();
        let got = weight(&e, &wa).unwrap().as_weight().unwrap();
        assert_eq!(
            got,
            AlphaForm::alpha_x().scale(rat(5, 1)) - AlphaForm::alpha_t().scale(rat(4, 1))
        );
    }

    #[test]
    fn weight_display_forms() {
        assert_eq!(AlphaForm::zero().to_string(), "0");
        assert_eq!(AlphaForm::constant(rat(-1, 2)).to_string(), "-1/2");
        let f = AlphaForm::alpha_x().scale(rat(1, 2)) - AlphaForm::alpha_t();
        assert_eq!(f.to_string(), "(1/2)*alpha_x - alpha_t");
    }

    #[test]
    fn json_shapes() {
        let num = AlphaForm::constant(rat(-1, 2)).to_json();
        assert_eq!(num["num"], -1);
        assert_eq!(num["den"], 2);
        let sym = (AlphaForm::alpha_x() - AlphaForm::alpha_t().scale(rat(2, 1))).to_json();
        assert_eq!(sym["alpha_x"]["num"], 1);
        assert_eq!(sym["alpha_t"]["num"], -2);
        assert_eq!(sym["const"]["num"], 0);
    }
}
