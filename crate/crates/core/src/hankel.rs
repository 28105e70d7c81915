//! Hankel determinants and the Hankel transform.

use thiserror::Error;

use crate::matrix::Matrix;
use crate::orthopoly::{JacobiParams, MomentSequence};
use crate::scalars::{binomial, PolyZ, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HankelError {
    #[error("need {needed} terms, got {have}")]
    InsufficientTerms { needed: usize, have: usize },
    #[error("need beta_1..beta_{needed}, have {have}")]
    InsufficientParameters { needed: usize, have: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn require_terms(seq: &[Scalar], n: usize) -> Result<(), HankelError> {
    let needed = 2 * n + 1;
    if seq.len() < needed {
        return Err(HankelError::InsufficientTerms {
            needed,
            have: seq.len(),
        });
    }
    Ok(())
}

/// The `(n+1) × (n+1)` matrix `(a_{i+j})`.
pub fn hankel_matrix(seq: &[Scalar], n: usize) -> Result<Matrix, HankelError> {
    require_terms(seq, n)?;
    let rows = (0..=n).map(|i| seq[i..=i + n].to_vec()).collect();
    Ok(Matrix::from_rows(rows))
}

/// Fraction-free elimination over `Q[z]`.
pub fn det_bareiss(mut m: Vec<Vec<PolyZ>>) -> PolyZ {
    let n = m.len();
    if n == 0 {
        return PolyZ::one();
    }
    let mut negate = false;
    let mut prev = PolyZ::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return PolyZ::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Gaussian elimination over the rational function field.
pub fn det_gaussian(m: &Matrix) -> Result<Scalar, ScalarError> {
    let n = m.dim();
    let mut rows: Vec<Vec<Scalar>> = m.rows().to_vec();
    let mut det = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !rows[i][k].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            rows.swap(p, k);
            det = -det;
        }
        let pivot = rows[k][k].clone();
        det = &det * &pivot;
        for i in k + 1..n {
            if rows[i][k].is_zero() {
                continue;
            }
            let factor = rows[i][k].checked_div(&pivot)?;
            for j in k..n {
                let t = &factor * &rows[k][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
    }
    Ok(det)
}

/// Determinant with each column's denominators cleared, then Bareiss.
fn det_cleared(m: &Matrix) -> Result<Scalar, ScalarError> {
    let n = m.dim();
    let mut cleared = vec![Vec::with_capacity(n); n];
    let mut scale = PolyZ::one();
    for j in 0..n {
        let col = m.column(j);
        let lcm = col.iter().fold(PolyZ::one(), |acc, s| {
            let g = PolyZ::gcd(&acc, s.denom());
            &acc * &s.denom().exact_div(&g)
        });
        for (i, s) in col.iter().enumerate() {
            cleared[i].push(&s.numer().clone() * &lcm.exact_div(s.denom()));
        }
        scale = &scale * &lcm;
    }
    Scalar::new(det_bareiss(cleared), scale)
}

/// `h_n = det(a_{i+j})_{0 ≤ i,j ≤ n}`.
pub fn hankel_det(seq: &MomentSequence, n: usize) -> Result<Scalar, HankelError> {
    let m = hankel_matrix(seq, n)?;
    if seq[..=2 * n].iter().all(Scalar::is_polynomial) {
        let polys = m
            .rows()
            .iter()
            .map(|r| r.iter().map(|s| s.numer().clone()).collect())
            .collect();
        Ok(Scalar::from_poly(det_bareiss(polys)))
    } else {
        Ok(det_cleared(&m)?)
    }
}

/// `h_0..=h_nmax`.
pub fn hankel_transform(seq: &MomentSequence, nmax: usize) -> Result<Vec<Scalar>, HankelError> {
    require_terms(seq, nmax)?;
    (0..=nmax).map(|n| hankel_det(seq, n)).collect()
}

/// Closed form `h_n = a_0^{n+1} Π_{k=1}^{n} β_k^{n-k+1}`.
pub fn hankel_from_betas(j: &JacobiParams, nmax: usize) -> Result<Vec<Scalar>, HankelError> {
    if nmax > j.beta.len() {
        return Err(HankelError::InsufficientParameters {
            needed: nmax,
            have: j.beta.len(),
        });
    }
    // h_n = h_{n-1} · a_0 · β_1 ⋯ β_n
    let mut out = Vec::with_capacity(nmax + 1);
    let mut h = j.a0.clone();
    let mut step = j.a0.clone();
    out.push(h.clone());
    for b in &j.beta[..nmax] {
        step = &step * b;
        h = &h * &step;
        out.push(h.clone());
    }
    Ok(out)
}

/// `b_n = Σ_k C(n,k) a_k`.
pub fn binomial_transform(seq: &MomentSequence) -> MomentSequence {
    (0..seq.len())
        .map(|n| {
            (0..=n).fold(Scalar::zero(), |acc, k| {
                &acc + &(&Scalar::from_bigint(binomial(n, k)) * &seq[k])
            })
        })
        .collect::<Vec<_>>()
        .into()
}
