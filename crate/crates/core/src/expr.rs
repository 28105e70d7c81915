//! Closed-form expressions for generating functions.
//!
//! Grammar (whitespace is insignificant, no implicit multiplication):
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := atom ('^' sint)?
//! atom    := rational | 'x' | 'z' | '(' expr ')' | ('exp'|'log'|'ln') '(' expr ')' | '-' atom
//! rational:= uint ('/' uint)?
//! sint    := '-'? uint          (also accepted in parentheses: x^(-1))
//! ```
//!
//! Unary minus binds tighter than `^`, so `-x^2` is `(-x)^2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalars::{Rational, Scalar};
use crate::series::{Series, SeriesError};

/// Byte range `start..end` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Num(Rational),
    VarX,
    VarZ,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Neg(Box<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

/// AST node. Equality is structural and ignores spans.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Num(a), Num(b)) => a == b,
            (VarX, VarX) | (VarZ, VarZ) => true,
            (Add(a, b), Add(c, d))
            | (Sub(a, b), Sub(c, d))
            | (Mul(a, b), Mul(c, d))
            | (Div(a, b), Div(c, d)) => a == c && b == d,
            (Pow(a, e), Pow(b, f)) => e == f && a == b,
            (Neg(a), Neg(b)) | (Exp(a), Exp(b)) | (Log(a), Log(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source} (in sub-expression at {}..{})", span.start, span.end)]
pub struct EvalError {
    pub span: Span,
    #[source]
    pub source: SeriesError,
}

impl EvalError {
    /// Renders the error with the offending slice of `text` quoted.
    pub fn describe(&self, text: &str) -> String {
        let snippet = text.get(self.span.start..self.span.end).unwrap_or(text);
        format!("{} in `{snippet}`", self.source)
    }
}

impl Expr {
    fn new(kind: ExprKind, start: usize, end: usize) -> Self {
        Expr {
            kind,
            span: Span { start, end },
        }
    }

    /// Detached node with an empty span, for building ASTs in code.
    pub fn node(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("operator or end of input"));
        }
        Ok(e)
    }

    /// Evaluates to a series of exactly `order`. Divisions that cancel a
    /// common power of `x` lose precision, so evaluation is retried at a
    /// higher working order until the requested one is reached.
    pub fn eval_series(&self, order: usize) -> Result<Series, EvalError> {
        let mut working = order;
        loop {
            let s = self.eval_at(working)?;
            if s.order() >= order {
                return Ok(s.truncate(order));
            }
            working += order - s.order();
        }
    }

    fn eval_at(&self, n: usize) -> Result<Series, EvalError> {
        use ExprKind::*;
        let wrap = |source: SeriesError| EvalError {
            span: self.span,
            source,
        };
        let binary = |a: &Expr, b: &Expr| -> Result<(Series, Series), EvalError> {
            let (sa, sb) = (a.eval_at(n)?, b.eval_at(n)?);
            let m = sa.order().min(sb.order());
            Ok((sa.truncate(m), sb.truncate(m)))
        };
        match &self.kind {
            Num(r) => Ok(Series::constant(Scalar::from_rational(r.clone()), n)),
            VarX => Ok(Series::x(n)),
            VarZ => Ok(Series::constant(Scalar::z(), n)),
            Add(a, b) => {
                let (sa, sb) = binary(a, b)?;
                sa.add(&sb).map_err(wrap)
            }
            Sub(a, b) => {
                let (sa, sb) = binary(a, b)?;
                sa.sub(&sb).map_err(wrap)
            }
            Mul(a, b) => {
                let (sa, sb) = binary(a, b)?;
                sa.mul(&sb).map_err(wrap)
            }
            Div(a, b) => {
                let (sa, sb) = binary(a, b)?;
                sa.div(&sb).map_err(wrap)
            }
            Pow(a, e) => a.eval_at(n)?.powi(*e).map_err(wrap),
            Neg(a) => Ok(a.eval_at(n)?.neg()),
            Exp(a) => a.eval_at(n)?.exp().map_err(wrap),
            Log(a) => a.eval_at(n)?.log().map_err(wrap),
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(
            self.kind,
            ExprKind::Num(_)
                | ExprKind::VarX
                | ExprKind::VarZ
                | ExprKind::Exp(_)
                | ExprKind::Log(_)
                | ExprKind::Neg(_)
        )
    }

    fn starts_with_digit(&self) -> bool {
        match &self.kind {
            ExprKind::Num(_) => true,
            ExprKind::Pow(base, _) => base.starts_with_digit(),
            _ => false,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("`{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let (s, e) = (lhs.span.start, rhs.span.end);
            let kind = if op == b'+' {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr::new(kind, s, e);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            let (s, e) = (lhs.span.start, rhs.span.end);
            let kind = if op == b'*' {
                ExprKind::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Div(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr::new(kind, s, e);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        self.skip_ws();
        let mag = self
            .uint()
            .ok_or_else(|| self.error("integer exponent"))?
            .to_i64()
            .ok_or_else(|| self.error("exponent that fits in 64 bits"))?;
        if paren {
            self.expect(b')')?;
        }
        let e = if negative { -mag } else { mag };
        let start = base.span.start;
        Ok(Expr::new(ExprKind::Pow(Box::new(base), e), start, self.pos))
    }

    fn uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (start < self.pos).then(|| {
            std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii digits")
                .parse()
                .expect("digits parse")
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.error("operand")),
        };
        let c = self.src[start];
        if c.is_ascii_digit() {
            let num = self.uint().expect("digit present");
            let mut value = Rational::from_integer(num);
            // `p/q` is a single literal only when a digit follows the slash
            let save = self.pos;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                match self.uint() {
                    Some(d) if d.is_zero() => {
                        return Err(self.error("nonzero denominator"));
                    }
                    Some(d) => value /= Rational::from_integer(d),
                    None => self.pos = save,
                }
            }
            return Ok(Expr::new(ExprKind::Num(value), start, self.pos));
        }
        match c {
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::new(inner.kind, start, self.pos))
            }
            b'-' => {
                self.pos += 1;
                let inner = self.atom()?;
                Ok(Expr::new(ExprKind::Neg(Box::new(inner)), start, self.pos))
            }
            c if c.is_ascii_alphabetic() => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let word = &self.src[start..self.pos];
                match word {
                    b"x" => Ok(Expr::new(ExprKind::VarX, start, self.pos)),
                    b"z" => Ok(Expr::new(ExprKind::VarZ, start, self.pos)),
                    b"exp" | b"log" | b"ln" => {
                        self.expect(b'(')?;
                        let arg = Box::new(self.expr()?);
                        self.expect(b')')?;
                        let kind = if word == b"exp" {
                            ExprKind::Exp(arg)
                        } else {
                            ExprKind::Log(arg)
                        };
                        Ok(Expr::new(kind, start, self.pos))
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error("`x`, `z`, `exp`, `log` or `ln`"))
                    }
                }
            }
            _ => Err(self.error("operand")),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        let is_sum = |e: &Expr| matches!(e.kind, Add(..) | Sub(..));
        let is_product = |e: &Expr| matches!(e.kind, Mul(..) | Div(..));
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool| {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match &self.kind {
            Num(r) if r.is_negative() => write!(f, "(-{})", r.abs()),
            Num(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Num(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            VarX => f.write_str("x"),
            VarZ => f.write_str("z"),
            Add(a, b) | Sub(a, b) => {
                let op = if matches!(self.kind, Add(..)) { '+' } else { '-' };
                write!(f, "{a} {op} ")?;
                wrap(f, b, is_sum(b))
            }
            Mul(a, b) | Div(a, b) => {
                let div = matches!(self.kind, Div(..));
                wrap(f, a, is_sum(a))?;
                f.write_str(if div { "/" } else { "*" })?;
                let paren = is_sum(b) || is_product(b) || (div && b.starts_with_digit());
                wrap(f, b, paren)
            }
            Pow(a, e) => {
                wrap(f, a, !a.is_atomic())?;
                write!(f, "^{e}")
            }
            Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, !a.is_atomic())
            }
            Exp(a) => write!(f, "exp({a})"),
            Log(a) => write!(f, "log({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat_int;
    use proptest::prelude::*;

    fn n(v: i64) -> Expr {
        Expr::node(ExprKind::Num(rat_int(v)))
    }
    fn x() -> Expr {
        Expr::node(ExprKind::VarX)
    }
    fn z() -> Expr {
        Expr::node(ExprKind::VarZ)
    }
    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn parse_exp_minus_one() {
        let e = Expr::parse("exp(x)-1").unwrap();
        assert_eq!(e, Expr::node(ExprKind::Sub(b(Expr::node(ExprKind::Exp(b(x())))), b(n(1)))));
    }

    #[test]
    fn parse_thm1_g() {
        let e = Expr::parse("exp(z*(exp(x)-1))").unwrap();
        let inner = Expr::node(ExprKind::Sub(b(Expr::node(ExprKind::Exp(b(x())))), b(n(1))));
        let expected = Expr::node(ExprKind::Exp(b(Expr::node(ExprKind::Mul(b(z()), b(inner))))));
        assert_eq!(e, expected);
    }

    #[test]
    fn parse_unclosed_paren() {
        let err = Expr::parse("1/(1-x").unwrap_err();
        assert_eq!(err.offset, 6);
        assert_eq!(err.expected, "`)`");
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("sin(x)").is_err());
        assert!(Expr::parse("zx").is_err());
        assert!(Expr::parse("2 x").is_err());
        assert!(Expr::parse("x^y").is_err());
        assert!(Expr::parse("").is_err());
        assert!(Expr::parse("1/0").is_err());
    }

    #[test]
    fn precedence() {
        // unary minus binds tighter than ^
        let e = Expr::parse("-x^2").unwrap();
        assert_eq!(e, Expr::node(ExprKind::Pow(b(Expr::node(ExprKind::Neg(b(x())))), 2)));
        let e = Expr::parse("1 - x - x").unwrap();
        let left = Expr::node(ExprKind::Sub(b(n(1)), b(x())));
        assert_eq!(e, Expr::node(ExprKind::Sub(b(left), b(x()))));
        assert_eq!(Expr::parse("ln(1+x)").unwrap(), Expr::parse("log(1 + x)").unwrap());
        assert_eq!(Expr::parse("x^(-1)").unwrap(), Expr::parse("x^-1").unwrap());
    }

    #[test]
    fn rational_literal() {
        let e = Expr::parse("1/2*x").unwrap();
        let half = Expr::node(ExprKind::Num(crate::scalars::rat(1, 2)));
        assert_eq!(e, Expr::node(ExprKind::Mul(b(half), b(x()))));
        // a slash not followed by a digit is division
        let e = Expr::parse("1/(2)").unwrap();
        assert_eq!(e, Expr::node(ExprKind::Div(b(n(1)), b(n(2)))));
    }

    #[test]
    fn eval_examples() {
        let s = Expr::parse("x/(1-x)").unwrap().eval_series(4).unwrap();
        assert_eq!(s, Series::from_ints(&[0, 1, 1, 1, 1], 4));
        let s = Expr::parse("(exp(x)-exp(z*x))/(exp(z*x)-z*exp(x))")
            .unwrap()
            .eval_series(2)
            .unwrap();
        let half = "1/2*z + 1/2".parse::<Scalar>().unwrap();
        assert_eq!(s, Series::from_coeffs(vec![Scalar::zero(), Scalar::one(), half], 2));
        let s = Expr::parse("exp(x)^(-1)").unwrap().eval_series(3).unwrap();
        let coeffs = ["1", "-1", "1/2", "-1/6"].map(|c| c.parse::<Scalar>().unwrap());
        assert_eq!(s, Series::from_coeffs(coeffs.to_vec(), 3));
    }

    #[test]
    fn eval_recovers_precision_after_cancellation() {
        let s = Expr::parse("(exp(x)-1)/x").unwrap().eval_series(4).unwrap();
        let coeffs = ["1", "1/2", "1/6", "1/24", "1/120"].map(|c| c.parse::<Scalar>().unwrap());
        assert_eq!(s, Series::from_coeffs(coeffs.to_vec(), 4));
    }

    #[test]
    fn eval_error_carries_span() {
        let text = "1 + exp(1+x)";
        let err = Expr::parse(text).unwrap().eval_series(3).unwrap_err();
        assert_eq!(err.source, SeriesError::ExpDomain);
        assert_eq!(&text[err.span.start..err.span.end], "exp(1+x)");
        assert!(err.describe(text).contains("`exp(1+x)`"));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..5, 1i64..4).prop_map(|(p, q)| Expr::node(ExprKind::Num(crate::scalars::rat(p, q)))),
            Just(x()),
            Just(z()),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::node(ExprKind::Add(b(a), b(c)))),
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::node(ExprKind::Sub(b(a), b(c)))),
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::node(ExprKind::Mul(b(a), b(c)))),
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::node(ExprKind::Div(b(a), b(c)))),
                (inner.clone(), -3i64..4).prop_map(|(a, e)| Expr::node(ExprKind::Pow(b(a), e))),
                inner.clone().prop_map(|a| Expr::node(ExprKind::Neg(b(a)))),
                inner.clone().prop_map(|a| Expr::node(ExprKind::Exp(b(a)))),
                inner.prop_map(|a| Expr::node(ExprKind::Log(b(a)))),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            let back = Expr::parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
            prop_assert_eq!(back, e, "{}", text);
        }
    }
}
