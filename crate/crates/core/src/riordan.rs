//! Exponential Riordan arrays `[g, f]` to finite order.
//!
//! Column `k` of `[g, f]` has exponential generating function `g(x) f(x)^k / k!`,
//! so `entries[n][k] = n!/k! · [x^n] g f^k`. Arrays keep their defining pair;
//! products and inverses are computed on the series and the matrices rebuilt.
//!
//! A production matrix `P` satisfies `D A = A P` where `D` shifts rows up by
//! one (`(DA)[i] = A[i+1]`). At order `N` only rows `0..N` (that is,
//! `0..=N-1`) of `P` are determined; row `N` is stored as zeros.

use std::fmt;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::orthopoly::JacobiParams;
use crate::scalars::{factorial, factorial_ratio, rat_int, Rational, Scalar, ScalarError};
use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error("not a valid exponential Riordan pair: {0}")]
    InvalidPair(&'static str),
    #[error("array order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("sequence length {got} does not match array dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("singular diagonal at row {0}")]
    SingularDiagonal(usize),
    #[error("production matrix not tridiagonal: offending entry ({0},{1})")]
    NotTridiagonal(usize, usize),
    #[error("not monic form: superdiagonal entry ({0},{1}) is not 1")]
    NotMonic(usize, usize),
    #[error("matrix and generating-function routes disagree at index {0}")]
    Inconsistent(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct ERArray {
    entries: Matrix,
    g: Series,
    f: Series,
}

fn ratio(n: usize, k: usize) -> Rational {
    Rational::from_integer(factorial_ratio(n, k))
}

impl ERArray {
    /// Builds `[g, f]`; requires `f(0) = 0`, `f'(0) ≠ 0`, `g(0) ≠ 0` and equal orders.
    pub fn build(g: &Series, f: &Series) -> Result<Self, RiordanError> {
        if g.order() != f.order() {
            return Err(RiordanError::OrderMismatch {
                left: g.order(),
                right: f.order(),
            });
        }
        let n = g.order();
        if n == 0 {
            return Err(RiordanError::InvalidPair("order must be at least 1"));
        }
        if !f.coeff(0).is_zero() {
            return Err(RiordanError::InvalidPair("f(0) must be 0"));
        }
        if f.coeff(1).is_zero() {
            return Err(RiordanError::InvalidPair("f'(0) must be nonzero"));
        }
        if g.coeff(0).is_zero() {
            return Err(RiordanError::InvalidPair("g(0) must be nonzero"));
        }
        let mut entries = Matrix::zeros(n + 1);
        let mut col = g.clone();
        for k in 0..=n {
            for row in k..=n {
                let c = col.coeff(row);
                if !c.is_zero() {
                    entries.set(row, k, c.scale(&ratio(row, k)));
                }
            }
            if k < n {
                col = col.mul(f)?;
            }
        }
        Ok(ERArray {
            entries,
            g: g.clone(),
            f: f.clone(),
        })
    }

    /// The identity `[1, x]`.
    pub fn identity(order: usize) -> Result<Self, RiordanError> {
        Self::build(&Series::one(order), &Series::x(order))
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn entry(&self, n: usize, k: usize) -> &Scalar {
        self.entries.get(n, k)
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn first_column(&self) -> Vec<Scalar> {
        self.entries.column(0)
    }

    /// Group law `[g, f] * [h, l] = [g (h ∘ f), l ∘ f]`.
    pub fn mul(&self, other: &ERArray) -> Result<ERArray, RiordanError> {
        if self.order() != other.order() {
            return Err(RiordanError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        let g = self.g.mul(&other.g.compose(&self.f)?)?;
        let f = other.f.compose(&self.f)?;
        ERArray::build(&g, &f)
    }

    /// `[g, f]^{-1} = [1 / (g ∘ f̄), f̄]`.
    pub fn inverse(&self) -> Result<ERArray, RiordanError> {
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.recip()?;
        ERArray::build(&g, &fbar)
    }

    /// `A·u`, computed both as a matrix product and through the e.g.f.
    /// `g(x) U(f(x))`; the two must agree.
    pub fn apply(&self, u: &[Scalar]) -> Result<Vec<Scalar>, RiordanError> {
        let n = self.order();
        if u.len() != n + 1 {
            return Err(RiordanError::LengthMismatch {
                expected: n + 1,
                got: u.len(),
            });
        }
        let direct = self.entries.mul_vec(u);
        let egf = Series::from_coeffs(
            u.iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Rational::new(1.into(), factorial(k))))
                .collect(),
            n,
        );
        let via_gf = self.g.mul(&egf.compose(&self.f)?)?;
        for (k, d) in direct.iter().enumerate() {
            if via_gf.coeff(k).scale(&rat_int(factorial(k))) != *d {
                return Err(RiordanError::Inconsistent(k));
            }
        }
        Ok(direct)
    }

    pub fn row_sums(&self) -> Vec<Scalar> {
        let ones = vec![Scalar::one(); self.order() + 1];
        self.entries.mul_vec(&ones)
    }

    /// Series `c` and `r` with `c(f(x)) = g'(x)/g(x)` and `r(f(x)) = f'(x)`,
    /// known to order `N - 1`.
    pub fn production_series(&self) -> Result<ProductionSeries, RiordanError> {
        let n = self.order();
        let fbar = self.f.revert()?.truncate(n - 1);
        let r = self.f.derivative().compose(&fbar)?;
        let log_deriv = self.g.derivative().div(&self.g.truncate(n - 1))?;
        let c = log_deriv.compose(&fbar)?;
        Ok(ProductionSeries { c, r })
    }

    /// Production matrix from `p[i][j] = i!/j! (c_{i-j} + j r_{i-j+1})`, `c_{-1} = 0`.
    pub fn production_from_pair(&self) -> Result<ProductionMatrix, RiordanError> {
        let n = self.order();
        let ProductionSeries { c, r } = self.production_series()?;
        let mut p = Matrix::zeros(n + 1);
        for i in 0..n {
            for j in 0..=(i + 1).min(n) {
                let mut v = if j <= i {
                    c.coeff(i - j).clone()
                } else {
                    Scalar::zero()
                };
                if j > 0 {
                    v = &v + &r.coeff(i + 1 - j).scale(&rat_int(j as i64));
                }
                if v.is_zero() {
                    continue;
                }
                let scaled = if j <= i {
                    v.scale(&ratio(i, j))
                } else {
                    v.scale(&Rational::new(1.into(), (i + 1).into()))
                };
                p.set(i, j, scaled);
            }
        }
        Ok(ProductionMatrix { entries: p })
    }

    /// Production matrix by forward substitution on `A P = D A`.
    pub fn production_direct(&self) -> Result<ProductionMatrix, RiordanError> {
        let n = self.order();
        let a = &self.entries;
        let mut p = Matrix::zeros(n + 1);
        for i in 0..n {
            let diag = a.get(i, i);
            if diag.is_zero() {
                return Err(RiordanError::SingularDiagonal(i));
            }
            for j in 0..=n {
                let mut acc = a.get(i + 1, j).clone();
                for k in 0..i {
                    let (aik, pkj) = (a.get(i, k), p.get(k, j));
                    if !aik.is_zero() && !pkj.is_zero() {
                        acc = &acc - &(aik * pkj);
                    }
                }
                if !acc.is_zero() {
                    p.set(i, j, acc.checked_div(diag)?);
                }
            }
        }
        Ok(ProductionMatrix { entries: p })
    }

    /// Coefficients of `φ_P(t, w) = e^{tw} (c(w) + t r(w))`, rows `n = 0..=rows`.
    pub fn production_bivariate_gf(&self, rows: usize) -> Result<BivariateGf, RiordanError> {
        let ProductionSeries { c, r } = self.production_series()?;
        let rows = rows.min(c.order());
        // raw[n][k] = [t^k w^n]; e^{tw} contributes t^m w^m / m!
        let mut raw = vec![vec![Scalar::zero(); rows + 2]; rows + 1];
        for n in 0..=rows {
            for m in 0..=n {
                let inv_fact = Rational::new(1.into(), factorial(m));
                let (cn, rn) = (c.coeff(n - m), r.coeff(n - m));
                raw[n][m] = &raw[n][m] + &cn.scale(&inv_fact);
                raw[n][m + 1] = &raw[n][m + 1] + &rn.scale(&inv_fact);
            }
        }
        let coeffs = raw
            .into_iter()
            .enumerate()
            .map(|(n, row)| {
                let nf = rat_int(factorial(n));
                row.into_iter().map(|v| v.scale(&nf)).collect()
            })
            .collect();
        Ok(BivariateGf { c, r, coeffs })
    }

    /// Entries specialized at `z = v`.
    pub fn eval_z(&self, v: &Rational) -> Result<Matrix, (usize, usize, ScalarError)> {
        self.entries.eval_z(v)
    }
}

impl fmt::Debug for ERArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ERArray[g = {}, f = {}]\n{:?}", self.g, self.f, self.entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionSeries {
    pub c: Series,
    pub r: Series,
}

/// Lower-Hessenberg production matrix. Rows `0..N` are exact; row `N` is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionMatrix {
    entries: Matrix,
}

impl ProductionMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn order(&self) -> usize {
        self.entries.dim() - 1
    }

    /// Number of leading rows that are determined at this order.
    pub fn valid_rows(&self) -> usize {
        self.order()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.entries.get(i, j)
    }

    /// First row (among the valid ones) where the two matrices differ.
    pub fn first_difference(&self, other: &ProductionMatrix) -> Option<usize> {
        let rows = self.valid_rows().min(other.valid_rows());
        (0..rows).find(|&i| self.entries.row(i) != other.entries.row(i))
    }

    pub fn is_lower_hessenberg(&self) -> bool {
        let n = self.entries.dim();
        (0..n).all(|i| (i + 2..n).all(|j| self.get(i, j).is_zero()))
    }

    /// Reads `α_n = P[n][n]` and `β_n = P[n][n-1]` off a tridiagonal matrix
    /// with unit superdiagonal.
    pub fn extract_jacobi(&self) -> Result<JacobiParams, RiordanError> {
        let n = self.valid_rows();
        for i in 0..n {
            for j in 0..i.saturating_sub(1) {
                if !self.get(i, j).is_zero() {
                    return Err(RiordanError::NotTridiagonal(i, j));
                }
            }
            if !self.get(i, i + 1).is_one() {
                return Err(RiordanError::NotMonic(i, i + 1));
            }
        }
        Ok(JacobiParams {
            a0: Scalar::one(),
            alpha: (0..n).map(|i| self.get(i, i).clone()).collect(),
            beta: (1..n).map(|i| self.get(i, i - 1).clone()).collect(),
        })
    }
}

/// Coefficient array of `e^{tw}(c(w) + t r(w))`:
/// `coeffs[n][k] = n! [t^k w^n]`, which should reproduce `P[n][k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateGf {
    pub c: Series,
    pub r: Series,
    pub coeffs: Vec<Vec<Scalar>>,
}

impl BivariateGf {
    /// Rows that disagree with `p`.
    pub fn mismatches(&self, p: &ProductionMatrix) -> Vec<usize> {
        let dim = p.entries().dim();
        (0..self.coeffs.len().min(dim))
            .filter(|&n| {
                let row = &self.coeffs[n];
                (0..dim).any(|k| row.get(k).unwrap_or(&Scalar::zero()) != p.get(n, k))
            })
            .collect()
    }
}

impl fmt::Display for BivariateGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(t*w)*(c(w) + t*r(w)) with c = {}, r = {}", self.c, self.r)
    }
}
