//! Dense square matrices over [`Scalar`].

use std::fmt;

use crate::scalars::{Rational, Scalar, ScalarError};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            rows: vec![vec![Scalar::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.rows[i][i] = Scalar::one();
        }
        m
    }

    /// Square matrix from rows; short rows are zero-padded.
    pub fn from_rows(mut rows: Vec<Vec<Scalar>>) -> Self {
        let dim = rows.len();
        for r in &mut rows {
            r.resize(dim, Scalar::zero());
        }
        Matrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r[i + 1..].iter().all(Scalar::is_zero))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim();
        assert_eq!(n, other.dim(), "matrix dimension mismatch");
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] = &out.rows[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Inverse of a lower-triangular matrix by forward substitution.
    pub fn lower_triangular_inverse(&self) -> Result<Matrix, ScalarError> {
        let n = self.dim();
        let mut inv = Matrix::zeros(n);
        for j in 0..n {
            inv.rows[j][j] = self.rows[j][j].inv()?;
            for i in j + 1..n {
                let mut acc = Scalar::zero();
                for k in j..i {
                    let a = &self.rows[i][k];
                    if !a.is_zero() && !inv.rows[k][j].is_zero() {
                        acc = &acc + &(a * &inv.rows[k][j]);
                    }
                }
                inv.rows[i][j] = (-acc).checked_div(&self.rows[i][i])?;
            }
        }
        Ok(inv)
    }

    /// Leading `dim × dim` block.
    pub fn leading(&self, dim: usize) -> Matrix {
        Matrix {
            rows: self.rows[..dim].iter().map(|r| r[..dim].to_vec()).collect(),
        }
    }

    pub fn map<F>(&self, f: F) -> Matrix
    where
        F: Fn(&Scalar) -> Scalar,
    {
        Matrix {
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    /// Specializes every entry at `z = v`; reports the first entry with a pole.
    pub fn eval_z(&self, v: &Rational) -> Result<Matrix, (usize, usize, ScalarError)> {
        let mut out = Matrix::zeros(self.dim());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                let e = a.eval_z(v).map_err(|e| (i, j, e))?;
                out.rows[i][j] = Scalar::from_rational(e);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
