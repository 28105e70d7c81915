//! Exact coefficient arithmetic.
//!
//! Three layers: arbitrary-precision [`Rational`]s, univariate polynomials
//! [`PolyZ`] in the parameter `z` with rational coefficients, and the field
//! of rational functions [`Scalar`] built on top of them.
//!
//! Every `Scalar` is kept in canonical form: numerator and denominator are
//! coprime, the denominator is monic, and zero is `0/1`. Equality is then a
//! structural comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always reduced with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalar division by zero")]
    DivisionByZero,
    #[error("pole at z = {0}")]
    Pole(Rational),
    #[error("cannot parse scalar `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!/k!` for `k <= n`.
pub fn factorial_ratio(n: usize, k: usize) -> BigInt {
    (k + 1..=n).fold(BigInt::one(), |acc, m| acc * m)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial_ratio(n, k) / factorial(n - k)
}

/// Parses `p` or `p/q` (optionally signed) into a rational.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let err = |reason: &str| ScalarError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Polynomial in `z` over the rationals, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyZ {
    coeffs: Vec<Rational>,
}

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * v + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyZ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division over the rationals. `None` if `divisor` is zero.
    pub fn div_rem(&self, divisor: &PolyZ) -> Option<(PolyZ, PolyZ)> {
        let dd = divisor.degree()?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((PolyZ::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Some((PolyZ::from_coeffs(quot), PolyZ::from_coeffs(rem)))
    }

    /// Quotient of a division known to be exact.
    pub(crate) fn exact_div(&self, divisor: &PolyZ) -> PolyZ {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(divisor).expect("exact_div by zero polynomial");
        debug_assert!(r.is_zero(), "exact_div left a remainder");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &PolyZ, b: &PolyZ) -> PolyZ {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return PolyZ::one();
        }
        let (mut x, mut y) = if a.coeffs.len() >= b.coeffs.len() {
            (a.monic(), b.monic())
        } else {
            (b.monic(), a.monic())
        };
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = y;
            y = r.monic();
        }
        x
    }

    fn fmt_canonical(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let var = match deg {
                0 => String::new(),
                1 => "z".to_string(),
                d => format!("z^{d}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_canonical(f)
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyZ({self})")
    }
}

impl<'a> Add<&'a PolyZ> for &'a PolyZ {
    type Output = PolyZ;
    fn add(self, rhs: &PolyZ) -> PolyZ {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        PolyZ::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a PolyZ> for &'a PolyZ {
    type Output = PolyZ;
    fn sub(self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        PolyZ::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a PolyZ> for &'a PolyZ {
    type Output = PolyZ;
    fn mul(self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyZ::from_coeffs(coeffs)
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        PolyZ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Element of the field of rational functions in `z` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: PolyZ,
    den: PolyZ,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: PolyZ::zero(),
            den: PolyZ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyZ::one())
    }

    pub fn z() -> Self {
        Self::from_poly(PolyZ::z())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(PolyZ::constant(r))
    }

    pub fn from_poly(p: PolyZ) -> Self {
        Scalar {
            num: p,
            den: PolyZ::one(),
        }
    }

    /// Builds `num/den` in canonical form.
    pub fn new(num: PolyZ, den: PolyZ) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyZ, den: PolyZ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeffs[0].recip();
            return Self::from_poly(num.scale(&inv));
        }
        let g = PolyZ::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc_inv = den.leading().expect("nonzero denominator").recip();
        if lc_inv.is_one() {
            Scalar { num, den }
        } else {
            Scalar {
                num: num.scale(&lc_inv),
                den: den.scale(&lc_inv),
            }
        }
    }

    pub fn numer(&self) -> &PolyZ {
        &self.num
    }

    pub fn denom(&self) -> &PolyZ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&PolyZ> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_polynomial() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let lc_inv = self.num.leading().expect("nonzero").recip();
        Ok(Scalar {
            num: self.den.scale(&lc_inv),
            den: self.num.scale(&lc_inv),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(c) = rhs.as_rational() {
            return Ok(self.scale(&c.recip()));
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).expect("exponent fits in u32");
        Ok(Scalar {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Specializes `z := v`.
    pub fn eval_z(&self, v: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(ScalarError::Pole(v.clone()));
        }
        Ok(self.num.eval(v) / d)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<PolyZ> for Scalar {
    fn from(p: PolyZ) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Scalar::from_poly(num);
            }
            return Scalar::reduce(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::reduce(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel, both inputs already reduced
        let g1 = PolyZ::gcd(&self.num, &rhs.den);
        let g2 = PolyZ::gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        Scalar { num, den }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for PolyZ {
    type Err = ScalarError;

    /// Parses the canonical polynomial form, e.g. `z^3 + 3*z^2 - 1/2*z + 4`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| ScalarError::Parse {
            text: text.to_string(),
            reason,
        };
        let s: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut pos = 0;
        let mut coeffs: Vec<Rational> = Vec::new();
        let digits = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| {
                std::str::from_utf8(&s[start..*pos])
                    .expect("ascii")
                    .parse()
                    .expect("digits")
            })
        };
        while pos < s.len() {
            let mut negative = false;
            if s[pos] == b'+' || s[pos] == b'-' {
                negative = s[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(err(format!("expected `+` or `-` at offset {pos}")));
            }
            let mut coeff = match digits(&mut pos) {
                Some(n) => {
                    let mut c = Rational::from_integer(n);
                    if pos < s.len() && s[pos] == b'/' {
                        pos += 1;
                        let d = digits(&mut pos)
                            .ok_or_else(|| err(format!("expected denominator at offset {pos}")))?;
                        if d.is_zero() {
                            return Err(err("zero denominator".into()));
                        }
                        c /= Rational::from_integer(d);
                    }
                    Some(c)
                }
                None => None,
            };
            let mut degree = 0usize;
            let has_star = pos < s.len() && s[pos] == b'*';
            if has_star {
                if coeff.is_none() {
                    return Err(err(format!("unexpected `*` at offset {pos}")));
                }
                pos += 1;
            }
            if pos < s.len() && s[pos] == b'z' {
                pos += 1;
                degree = 1;
                if pos < s.len() && s[pos] == b'^' {
                    pos += 1;
                    let d = digits(&mut pos)
                        .ok_or_else(|| err(format!("expected exponent at offset {pos}")))?;
                    degree = d
                        .to_usize()
                        .ok_or_else(|| err("exponent too large".into()))?;
                }
            } else if has_star || coeff.is_none() {
                return Err(err(format!("expected term at offset {pos}")));
            }
            let c = coeff.take().unwrap_or_else(Rational::one);
            let c = if negative { -c } else { c };
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, Rational::zero());
            }
            coeffs[degree] += c;
        }
        Ok(PolyZ::from_coeffs(coeffs))
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Parses either a canonical polynomial or the `(num)/(den)` fraction form.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('(') {
            if let Some((num, den)) = rest.split_once(")/(") {
                if let Some(den) = den.strip_suffix(')') {
                    return Scalar::new(num.parse()?, den.parse()?);
                }
            }
            return Err(ScalarError::Parse {
                text: text.to_string(),
                reason: "expected `(num)/(den)`".into(),
            });
        }
        Ok(Scalar::from_poly(t.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(Scalar::z() * Scalar::z(), s("z^2"));
        let q = s("z^2 - 1").checked_div(&s("z - 1")).unwrap();
        assert_eq!(q, s("z + 1"));
        assert!(q.is_polynomial());
        let half = Scalar::from_rational(rat(1, 2));
        let third = Scalar::from_rational(rat(1, 3));
        assert_eq!(half + third, Scalar::from_rational(rat(5, 6)));
    }

    #[test]
    fn division_by_zero() {
        let e = Scalar::one().checked_div(&Scalar::zero()).unwrap_err();
        assert_eq!(e.to_string(), "scalar division by zero");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(s("z + 1").eval_z(&rat_int(1)).unwrap(), rat_int(2));
        assert_eq!(s("z^2 + z").eval_z(&rat_int(2)).unwrap(), rat_int(6));
        let pole = Scalar::one().checked_div(&s("z - 1")).unwrap();
        assert_eq!(
            pole.eval_z(&rat_int(1)).unwrap_err().to_string(),
            "pole at z = 1"
        );
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(s("z^3 + 3*z^2 + z").to_string(), "z^3 + 3*z^2 + z");
        assert_eq!(
            Scalar::from_poly(PolyZ::from_coeffs(vec![rat_int(-1), rat(1, 2)])).to_string(),
            "1/2*z - 1"
        );
        assert_eq!(s("-z^2 + 1").to_string(), "-z^2 + 1");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_int(-1).to_string(), "-1");
        let frac = Scalar::one().checked_div(&s("z - 1")).unwrap();
        assert_eq!(frac.to_string(), "(1)/(z - 1)");
        assert_eq!(s("(1)/(z - 1)"), frac);
    }

    #[test]
    fn denominator_is_monic() {
        let x = Scalar::new(PolyZ::from_ints(&[1]), PolyZ::from_ints(&[2, 4])).unwrap();
        assert_eq!(x.denom(), &PolyZ::from_coeffs(vec![rat(1, 2), rat_int(1)]));
        assert_eq!(x.numer(), &PolyZ::constant(rat(1, 4)));
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // (z^2 - 1)/(z^2 + z) = (z - 1)/z
        let x = Scalar::new(PolyZ::from_ints(&[-1, 0, 1]), PolyZ::from_ints(&[0, 1, 1])).unwrap();
        assert_eq!(x.numer(), &PolyZ::from_ints(&[-1, 1]));
        assert_eq!(x.denom(), &PolyZ::from_ints(&[0, 1]));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("z^".parse::<Scalar>().is_err());
        assert!("3*".parse::<Scalar>().is_err());
        assert!("(z)/(0)".parse::<Scalar>().is_err());
        assert!("z z".parse::<Scalar>().is_err());
    }

    fn small_poly() -> impl Strategy<Value = PolyZ> {
        prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| PolyZ::from_ints(&c))
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (small_poly(), small_poly()).prop_filter_map("nonzero denominator", |(n, d)| {
            Scalar::new(n, d).ok()
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn canonicalization_idempotent(a in small_scalar()) {
            let again = Scalar::new(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(&again, &a);
            let reparsed: Scalar = a.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, a);
        }

        #[test]
        fn eval_is_homomorphism(a in small_scalar(), b in small_scalar(), v in -5i64..=5) {
            let v = rat_int(v);
            if let (Ok(ea), Ok(eb)) = (a.eval_z(&v), b.eval_z(&v)) {
                prop_assert_eq!((&a * &b).eval_z(&v).unwrap(), &ea * &eb);
                prop_assert_eq!((&a + &b).eval_z(&v).unwrap(), ea + eb);
            }
        }
    }
}
