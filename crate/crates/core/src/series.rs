//! Truncated formal power series in `x` with [`Scalar`] coefficients.
//!
//! A series of order `N` stores the coefficients of `x^0 ..= x^N`; anything
//! beyond is unknown, not zero. Binary operations require equal orders.
//! Coefficients are ordinary: the `n!/k!` scaling used by exponential arrays
//! lives in [`crate::riordan`].

use std::fmt;

use thiserror::Error;

use crate::scalars::{rat, rat_int, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by zero series")]
    DivisionByZero,
    #[error("series division needs unit or common factor")]
    NeedsUnit,
    #[error("composition needs valuation ≥ 1")]
    CompositionValuation,
    #[error("not revertible")]
    NotRevertible,
    #[error("exp needs a zero constant term")]
    ExpDomain,
    #[error("log needs constant term 1")]
    LogDomain,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Scalar>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(Scalar::one(), 1, order)
    }

    pub fn monomial(c: Scalar, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Takes the first `order + 1` coefficients, padding with zeros if short.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        Series { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Scalar::from_int(c)).collect(), order)
    }

    /// `1/(1 - x)`.
    pub fn geometric(order: usize) -> Self {
        Series {
            coeffs: vec![Scalar::one(); order + 1],
        }
    }

    /// `e^{c x}` for a scalar `c`.
    pub fn exp_linear(c: &Scalar, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Scalar::one();
        for n in 0..=order {
            if n > 0 {
                term = (&term * c).scale(&rat(1, n as i64));
            }
            coeffs.push(term.clone());
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Scalar {
        &self.coeffs[n]
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.coeffs[0]
    }

    /// Index of the first nonzero coefficient, `None` if all are zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops coefficients above `order`. Asking for more than is known is a no-op.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    /// Extends with zero coefficients; only for internal iterations where the
    /// padded terms are overwritten before being trusted.
    fn pad_zero(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Scalar::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Series { coeffs }
    }

    /// Divides by `x^k`; the low coefficients must be zero. Order drops by `k`.
    fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs[..k].iter().all(Scalar::is_zero));
        Series {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    fn check_order(&self, other: &Series) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = vec![Scalar::zero(); n + 1];
        let lo_a = self.valuation().unwrap_or(n + 1);
        let lo_b = other.valuation().unwrap_or(n + 1);
        for i in lo_a..=n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in lo_b..=(n - i) {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(Series { coeffs })
    }

    /// Quotient `self / other`.
    ///
    /// A zero constant term in the divisor is allowed when the dividend has a
    /// matching factor `x^v`; the common factor is cancelled and the result
    /// order drops by `v`.
    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_order(other)?;
        let v = other.valuation().ok_or(SeriesError::DivisionByZero)?;
        if v == 0 {
            return self.div_unit(other);
        }
        if self.coeffs[..v].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::NeedsUnit);
        }
        self.shift_down(v).div_unit(&other.shift_down(v))
    }

    fn div_unit(&self, other: &Series) -> Result<Series, SeriesError> {
        let inv0 = other.coeffs[0].inv()?;
        let n = self.order();
        let mut q: Vec<Scalar> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for (j, qj) in q.iter().enumerate() {
                let b = &other.coeffs[k - j];
                if !b.is_zero() && !qj.is_zero() {
                    acc = &acc - &(qj * b);
                }
            }
            q.push(&acc * &inv0);
        }
        Ok(Series { coeffs: q })
    }

    pub fn recip(&self) -> Result<Series, SeriesError> {
        Series::one(self.order()).div(self)
    }

    /// Integer power; negative exponents go through [`Series::recip`].
    pub fn powi(&self, e: i64) -> Result<Series, SeriesError> {
        if e < 0 {
            return self.powi(-e)?.recip();
        }
        let mut e = e as u64;
        let mut base = self.clone();
        let mut acc = Series::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self(inner(x))`, by Horner's rule over truncated series.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionValuation);
        }
        let n = self.order();
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(x)) = x`, by Newton iteration
    /// that doubles the number of correct coefficients each round.
    pub fn revert(&self) -> Result<Series, SeriesError> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotRevertible);
        }
        let df = self.derivative();
        // g is correct modulo x^{g.order()+1}
        let mut g = Series::from_coeffs(vec![Scalar::zero(), self.coeffs[1].inv()?], 1);
        while g.order() < n {
            let k = g.order() + 1;
            let t = (2 * k - 1).min(n);
            let gt = g.pad_zero(t);
            let resid = self.truncate(t).compose(&gt)?.sub(&Series::x(t))?;
            let low = t - k;
            let d = df.truncate(low).compose(&gt.truncate(low))?;
            let delta = resid.shift_down(k).div(&d)?;
            g = gt.sub(&delta.pad_zero(t).shift_up(k))?;
        }
        Ok(g)
    }

    /// Term-wise derivative. The result has order `N - 1`.
    pub fn derivative(&self) -> Series {
        let n = self.order();
        if n == 0 {
            return Series::zero(0);
        }
        Series {
            coeffs: (1..=n)
                .map(|k| self.coeffs[k].scale(&rat_int(k as i64)))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term. The result has order `N + 1`.
    pub fn integral(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Scalar::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&rat(1, k as i64 + 1))),
        );
        Series { coeffs }
    }

    /// Formal exponential, from `exp(a)' = a' exp(a)`.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpDomain);
        }
        let n = self.order();
        let mut e: Vec<Scalar> = Vec::with_capacity(n + 1);
        e.push(Scalar::one());
        for m in 1..=n {
            let mut acc = Scalar::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = &acc + &(a * &e[m - k]).scale(&rat_int(k as i64));
                }
            }
            e.push(acc.scale(&rat(1, m as i64)));
        }
        Ok(Series { coeffs: e })
    }

    /// Formal logarithm, from `a · log(a)' = a'`.
    pub fn log(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogDomain);
        }
        let n = self.order();
        let mut l: Vec<Scalar> = Vec::with_capacity(n + 1);
        l.push(Scalar::zero());
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&rat_int(m as i64));
            for k in 1..m {
                let a = &self.coeffs[m - k];
                if !a.is_zero() && !l[k].is_zero() {
                    acc = &acc - &(&l[k] * a).scale(&rat_int(k as i64));
                }
            }
            l.push(acc.scale(&rat(1, m as i64)));
        }
        Ok(Series { coeffs: l })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let marker = match k {
                0 => String::new(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            };
            match (k, c.as_poly().map(|p| p.coeffs().len() <= 1)) {
                (0, _) => write!(f, "{c}")?,
                (_, Some(true)) if c.is_one() => f.write_str(&marker)?,
                (_, Some(true)) => write!(f, "{c}*{marker}")?,
                _ => write!(f, "({c})*{marker}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{self}]")
    }
}
