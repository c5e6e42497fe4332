//! Expression language for the weight calculus: AST, parser, canonical
//! printer.
//!
//! Grammar (infix, usual precedence, `^` binds tightest):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := INT | '-' INT | '(' '-'? INT ('/' INT)? ')'
//! atom     := INT | IDENT | IDENT '(' expr ')' | 'd' '(' expr ',' IDENT ')'
//!           | '(' expr ')'
//! ```
//!
//! Exponents are rational literals only (no symbolic exponents). `d(e, s)` is
//! the partial derivative of `e` with respect to the symbol `s`. The
//! recognized function names are `sin`, `cos`, `exp`; any other name followed
//! by `(` is an error.
//!
//! Parsing canonicalizes: subtraction desugars to `a + (-1) * b`, division to
//! `a * b^(-1)`, nested sums/products are flattened, and constant
//! subexpressions fold to a single rational (integer powers only — a
//! non-integer power of a constant is kept symbolic since it is generally
//! irrational). The canonical printer emits these desugared forms explicitly
//! (`a + (-1) * b`, `L^(-1)`), so `parse ∘ print` is the identity on parser
//! output.

use crate::rat::{rat, Rat};
use num::traits::Signed;
use num::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Transcendental functions admitted by the weight calculus. They accept only
/// weight-zero (scale-free) arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transcendental {
    Sin,
    Cos,
    Exp,
}

impl Transcendental {
    pub fn name(self) -> &'static str {
        match self {
            Transcendental::Sin => "sin",
            Transcendental::Cos => "cos",
            Transcendental::Exp => "exp",
        }
    }
}

/// Expression AST. Sums and products are n-ary and flattened; constants are
/// exact rationals; `Power` exponents are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(Rat),
    Symbol(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, Rat),
    /// Partial derivative `d(expr, symbol)`.
    Partial(Box<Expr>, String),
    Apply(Transcendental, Box<Expr>),
}

impl Expr {
    pub fn symbol(name: &str) -> Expr {
        Expr::Symbol(name.to_string())
    }

    pub fn constant(r: Rat) -> Expr {
        Expr::Const(r)
    }

    /// Flattening, constant-folding sum constructor. The folded constant, if
    /// any survives, is appended last.
    pub fn sum(children: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        let mut acc = Rat::zero();
        for c in children {
            match c {
                Expr::Sum(inner) => {
                    for e in inner {
                        match e {
                            Expr::Const(r) => acc += r,
                            other => flat.push(other),
                        }
                    }
                }
                Expr::Const(r) => acc += r,
                other => flat.push(other),
            }
        }
        if !acc.is_zero() || flat.is_empty() {
            flat.push(Expr::Const(acc));
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Sum(flat)
        }
    }

    /// Flattening, constant-folding product constructor. A surviving constant
    /// coefficient is placed first; a zero factor absorbs the product.
    pub fn product(children: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        let mut acc = Rat::one();
        for c in children {
            match c {
                Expr::Product(inner) => {
                    for e in inner {
                        match e {
                            Expr::Const(r) => acc *= r,
                            other => flat.push(other),
                        }
                    }
                }
                Expr::Const(r) => acc *= r,
                other => flat.push(other),
            }
        }
        if acc.is_zero() {
            return Expr::Const(Rat::zero());
        }
        if !acc.is_one() || flat.is_empty() {
            flat.insert(0, Expr::Const(acc));
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Product(flat)
        }
    }

    /// Power constructor. `e^0 = 1`, `e^1 = e`; an integer power of a
    /// constant folds exactly (except `0^q` with `q < 0`, which is kept
    /// unevaluated); a non-integer power of a constant stays symbolic.
    pub fn power(base: Expr, exponent: Rat) -> Expr {
        if exponent.is_zero() {
            return Expr::Const(Rat::one());
        }
        if exponent.is_one() {
            return base;
        }
        if let Expr::Const(c) = &base {
            if exponent.is_integer() {
                let n = exponent.to_integer();
                if !c.is_zero() || n > 0 {
                    let p = c.pow(n.unsigned_abs().try_into().expect("small exponent"));
                    return Expr::Const(if n > 0 { p } else { p.recip() });
                }
            }
        }
        Expr::Power(Box::new(base), exponent)
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::product(vec![Expr::Const(-Rat::one()), e])
    }

    pub fn partial(e: Expr, sym: &str) -> Expr {
        Expr::Partial(Box::new(e), sym.to_string())
    }

    pub fn apply(f: Transcendental, e: Expr) -> Expr {
        Expr::Apply(f, Box::new(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                match text.parse::<i64>() {
                    Ok(n) => toks.push((Tok::Int(n), start)),
                    Err(_) => return err(start, format!("integer literal `{text}` out of range")),
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(input[start..i].to_string()), start));
            }
            _ => {
                return err(
                    i,
                    format!("unexpected character `{}`", &input[i..].chars().next().unwrap()),
                )
            }
        }
    }
    toks.push((Tok::Eof, input.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Expr::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    factors.push(Expr::power(rhs, -Rat::one()));
                }
                _ => break,
            }
        }
        Ok(Expr::product(factors))
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let q = self.exponent()?;
            return Ok(Expr::power(base, q));
        }
        Ok(base)
    }

    /// Rational exponent literal: `2`, `-2`, `(3)`, `(-1/2)`, `(3/2)`.
    fn exponent(&mut self) -> Result<Rat, ParseError> {
        let start = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(rat(n, 1)),
            Tok::Minus => match self.bump() {
                Tok::Int(n) => Ok(rat(-n, 1)),
                _ => err(start, "expected integer after `-` in exponent"),
            },
            Tok::LParen => {
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let p = match self.bump() {
                    Tok::Int(n) => n,
                    _ => return err(self.pos(), "expected integer in exponent"),
                };
                let q = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(0) => return err(self.pos(), "zero denominator in exponent"),
                        Tok::Int(n) => n,
                        _ => return err(self.pos(), "expected denominator in exponent"),
                    }
                } else {
                    1
                };
                self.expect(Tok::RParen, "`)` closing exponent")?;
                Ok(rat(if neg { -p } else { p }, q))
            }
            _ => err(start, "expected rational exponent after `^`"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Const(rat(n, 1))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::Symbol(name));
                }
                self.bump(); // (
                if name == "d" {
                    let inner = self.expr()?;
                    self.expect(Tok::Comma, "`,` between derivative arguments")?;
                    let sym_pos = self.pos();
                    let sym = match self.bump() {
                        Tok::Ident(s) => s,
                        _ => return err(sym_pos, "derivative variable must be a symbol"),
                    };
                    self.expect(Tok::RParen, "`)` closing `d(...)`")?;
                    return Ok(Expr::partial(inner, &sym));
                }
                let func = match name.as_str() {
                    "sin" => Transcendental::Sin,
                    "cos" => Transcendental::Cos,
                    "exp" => Transcendental::Exp,
                    _ => return err(pos, format!("unknown function `{name}`")),
                };
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)` closing function argument")?;
                Ok(Expr::apply(func, arg))
            }
            Tok::Eof => err(pos, "unexpected end of input"),
            other => err(pos, format!("unexpected token {other:?}")),
        }
    }
}

/// Parses an expression, canonicalizing as described in the module docs.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser { toks, i: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(e)
}

// Printing. Precedence: sum 0 < product 1 < power 2 < atom 3. A constant
// prints bare when it is a nonnegative integer and parenthesized otherwise,
// which keeps every printed constant re-parseable in any position.

fn print_const(r: Rat) -> String {
    if r.is_integer() && !r.is_negative() {
        r.to_string()
    } else {
        format!("({r})")
    }
}

fn print_exponent(q: Rat) -> String {
    if q.is_integer() && !q.is_negative() {
        q.to_string()
    } else {
        format!("({q})")
    }
}

fn print_prec(e: &Expr, parent: u8, out: &mut String) {
    let prec = match e {
        Expr::Sum(_) => 0,
        Expr::Product(_) => 1,
        Expr::Power(..) => 2,
        _ => 3,
    };
    let need_parens = prec < parent;
    if need_parens {
        out.push('(');
    }
    match e {
        Expr::Const(r) => out.push_str(&print_const(*r)),
        Expr::Symbol(s) => out.push_str(s),
        Expr::Sum(children) => {
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                print_prec(c, 1, out);
            }
        }
        Expr::Product(children) => {
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push_str(" * ");
                }
                print_prec(c, 2, out);
            }
        }
        Expr::Power(base, q) => {
            print_prec(base, 3, out);
            out.push('^');
            out.push_str(&print_exponent(*q));
        }
        Expr::Partial(inner, sym) => {
            out.push_str("d(");
            print_prec(inner, 0, out);
            out.push_str(", ");
            out.push_str(sym);
            out.push(')');
        }
        Expr::Apply(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            print_prec(arg, 0, out);
            out.push(')');
        }
    }
    if need_parens {
        out.push(')');
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        print_prec(self, 0, &mut s);
        f.write_str(&s)
    }
}
