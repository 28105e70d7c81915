//! Monic orthogonal polynomials given by a three-term recurrence
//!
//! ```text
//! p_{n+1}(x) = (x - α_n) p_n(x) - β_n p_{n-1}(x),   p_0 = 1
//! ```
//!
//! together with their moments and the J-fraction
//! `a_0 / (1 - α_0 x - β_1 x² / (1 - α_1 x - β_2 x² / ...))`.

use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalars::{Scalar, ScalarError};
use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("need {needed} recurrence levels, have {have}")]
    InsufficientParameters { needed: usize, have: usize },
    #[error("expected {expected} beta values for {alpha} alpha values, got {got}")]
    LengthMismatch {
        alpha: usize,
        expected: usize,
        got: usize,
    },
    #[error("leading moment a_0 is zero")]
    ZeroLeadingMoment,
    #[error("empty moment sequence")]
    EmptyMoments,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Recurrence data `(α_0..α_{M-1}, β_1..β_{M-1})` plus the leading moment `a_0`.
///
/// `beta[k - 1]` holds `β_k`. A regular family has every `β_k ≠ 0`; zero
/// values are accepted so that degenerate and finitely supported cases can
/// still be expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiParams {
    pub a0: Scalar,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
}

/// Moments `a_0, a_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MomentSequence {
    pub terms: Vec<Scalar>,
}

impl From<Vec<Scalar>> for MomentSequence {
    fn from(terms: Vec<Scalar>) -> Self {
        MomentSequence { terms }
    }
}

impl std::ops::Deref for MomentSequence {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.terms
    }
}

impl JacobiParams {
    pub fn new(a0: Scalar, alpha: Vec<Scalar>, beta: Vec<Scalar>) -> Result<Self, OrthoError> {
        let expected = alpha.len().saturating_sub(1);
        if beta.len() != expected {
            return Err(OrthoError::LengthMismatch {
                alpha: alpha.len(),
                expected,
                got: beta.len(),
            });
        }
        Ok(JacobiParams { a0, alpha, beta })
    }

    /// Parameters of depth `m` from closed forms; `beta` is called for `k = 1..m`.
    pub fn from_fn(
        m: usize,
        a0: Scalar,
        alpha: impl Fn(usize) -> Scalar,
        beta: impl Fn(usize) -> Scalar,
    ) -> Self {
        JacobiParams {
            a0,
            alpha: (0..m).map(alpha).collect(),
            beta: (1..m).map(beta).collect(),
        }
    }

    /// Number of recurrence levels `M = |alpha|`.
    pub fn depth(&self) -> usize {
        self.alpha.len()
    }

    /// `β_k` for `k >= 1`.
    pub fn beta_at(&self, k: usize) -> &Scalar {
        &self.beta[k - 1]
    }

    pub fn is_regular(&self) -> bool {
        self.beta.iter().all(|b| !b.is_zero())
    }

    fn require(&self, needed: usize) -> Result<(), OrthoError> {
        if needed > self.depth() {
            return Err(OrthoError::InsufficientParameters {
                needed,
                have: self.depth(),
            });
        }
        Ok(())
    }

    /// Lower-triangular array whose row `n` holds the coefficients of `p_n(x)`,
    /// rows `0..=order`.
    pub fn coeff_array(&self, order: usize) -> Result<Matrix, OrthoError> {
        self.require(order)?;
        let dim = order + 1;
        let mut polys: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
        polys.push(vec![Scalar::one()]);
        for n in 0..order {
            let p = &polys[n];
            let mut next = vec![Scalar::zero(); n + 2];
            for (k, c) in p.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(&self.alpha[n] * c);
            }
            if n >= 1 {
                let b = self.beta_at(n);
                for (k, c) in polys[n - 1].iter().enumerate() {
                    next[k] = &next[k] - &(b * c);
                }
            }
            polys.push(next);
        }
        Ok(Matrix::from_rows(polys))
    }

    /// Copy extended with zero parameters to depth `m`.
    fn padded(&self, m: usize) -> JacobiParams {
        let mut j = self.clone();
        if m > j.depth() {
            j.beta.resize(m - 1, Scalar::zero());
            j.alpha.resize(m, Scalar::zero());
        }
        j
    }

    /// Moments `a_0..=a_count`: column 0 of the inverse coefficient array, scaled by `a_0`.
    ///
    /// Depth `M` fixes `a_0..a_{2M-1}`, so `count / 2 + 1` levels suffice.
    pub fn moments(&self, count: usize) -> Result<MomentSequence, OrthoError> {
        self.require(count / 2 + 1)?;
        let inv = self.padded(count).coeff_array(count)?.lower_triangular_inverse()?;
        Ok(inv.column(0).iter().map(|m| m * &self.a0).collect::<Vec<_>>().into())
    }

    /// Ordinary generating function of the moments to `x^order`, expanded
    /// bottom-up from the truncated continued fraction.
    pub fn jfraction(&self, order: usize) -> Result<Series, OrthoError> {
        self.require(order / 2 + 1)?;
        let one = Series::one(order);
        let x = Series::x(order);
        let x2 = Series::monomial(Scalar::one(), 2, order);
        let mut tail: Option<Series> = None;
        for k in (0..self.depth()).rev() {
            let mut den = one.sub(&x.scale(&self.alpha[k]))?;
            if let Some(t) = &tail {
                den = den.sub(&x2.scale(self.beta_at(k + 1)).mul(t)?)?;
            }
            tail = Some(den.recip()?);
        }
        Ok(tail.unwrap_or(one).scale(&self.a0))
    }
}

/// How moment inversion ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recovery {
    /// Every level the moments determine was recovered.
    Complete,
    /// `β_depth` vanished: the functional is supported on `depth` points.
    Degenerate { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiRecovery {
    pub params: JacobiParams,
    pub status: Recovery,
}

/// Linear functional `p ↦ Σ p_i a_i` on polynomials in `x`.
fn apply_functional(p: &[Scalar], moments: &[Scalar]) -> Scalar {
    p.iter()
        .zip(moments)
        .filter(|(c, _)| !c.is_zero())
        .fold(Scalar::zero(), |acc, (c, m)| &acc + &(c * m))
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Recovers `(α, β)` from raw moments by building the monic orthogonal
/// polynomials against the moment functional:
/// `α_n = L(x p_n²)/L(p_n²)`, `β_n = L(p_n²)/L(p_{n-1}²)`.
///
/// With `K` moments, `α_n` is recovered while `2n + 1 < K`. A vanishing
/// `L(p_n²)` stops early with [`Recovery::Degenerate`].
pub fn jacobi_from_moments(m: &MomentSequence) -> Result<JacobiRecovery, OrthoError> {
    let a = &m.terms;
    let first = a.first().ok_or(OrthoError::EmptyMoments)?;
    if first.is_zero() {
        return Err(OrthoError::ZeroLeadingMoment);
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut prev: Vec<Scalar> = vec![];
    let mut cur: Vec<Scalar> = vec![Scalar::one()];
    let mut prev_norm = Scalar::zero();
    let mut status = Recovery::Complete;
    let mut n = 0;
    while 2 * n + 1 < a.len() {
        let sq = poly_mul(&cur, &cur);
        let norm = apply_functional(&sq, a);
        if norm.is_zero() {
            status = Recovery::Degenerate { depth: n };
            break;
        }
        let b = if n > 0 {
            Some(norm.checked_div(&prev_norm)?)
        } else {
            None
        };
        let mut xsq = vec![Scalar::zero()];
        xsq.extend(sq);
        let al = apply_functional(&xsq, a).checked_div(&norm)?;
        if let Some(b) = &b {
            beta.push(b.clone());
        }
        alpha.push(al.clone());
        // p_{n+1} = (x - α_n) p_n - β_n p_{n-1}
        let mut next = vec![Scalar::zero(); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(&al * c);
        }
        if let Some(b) = &b {
            for (k, c) in prev.iter().enumerate() {
                next[k] = &next[k] - &(b * c);
            }
        }
        prev = std::mem::replace(&mut cur, next);
        prev_norm = norm;
        n += 1;
    }
    Ok(JacobiRecovery {
        params: JacobiParams {
            a0: first.clone(),
            alpha,
            beta,
        },
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::PolyZ;
    use proptest::prelude::*;

    fn int(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn poly(c: &[i64]) -> Scalar {
        Scalar::from_poly(PolyZ::from_ints(c))
    }

    /// α_n = z + n, β_n = n z
    fn touchard(m: usize) -> JacobiParams {
        JacobiParams::from_fn(m, Scalar::one(), |n| poly(&[n as i64, 1]), |n| poly(&[0, n as i64]))
    }

    /// α_n = (n+1) z + n, β_n = n² z
    fn eulerian(m: usize) -> JacobiParams {
        JacobiParams::from_fn(
            m,
            Scalar::one(),
            |n| poly(&[n as i64, n as i64 + 1]),
            |n| poly(&[0, (n * n) as i64]),
        )
    }

    #[test]
    fn coeff_array_row_two() {
        let c = touchard(3).coeff_array(2).unwrap();
        // (x - z)(x - z - 1) - z
        assert_eq!(c.row(2), &[poly(&[0, 0, 1]), poly(&[-1, -2]), int(1)]);
    }

    #[test]
    fn zero_params_give_monomials() {
        let j = JacobiParams::from_fn(4, Scalar::one(), |_| Scalar::zero(), |_| Scalar::zero());
        assert_eq!(j.coeff_array(4).unwrap(), Matrix::identity(5));
        assert_eq!(j.jfraction(4).unwrap(), Series::one(4));
    }

    #[test]
    fn moments_touchard() {
        let m = touchard(4).moments(4).unwrap();
        let expected = [
            poly(&[1]),
            poly(&[0, 1]),
            poly(&[0, 1, 1]),
            poly(&[0, 1, 3, 1]),
            poly(&[0, 1, 7, 6, 1]),
        ];
        assert_eq!(m.terms, expected);
    }

    #[test]
    fn moments_eulerian() {
        let m = eulerian(3).moments(3).unwrap();
        let expected = [poly(&[1]), poly(&[0, 1]), poly(&[0, 1, 1]), poly(&[0, 1, 4, 1])];
        assert_eq!(m.terms, expected);
    }

    #[test]
    fn moments_factorials() {
        let j = JacobiParams::from_fn(5, Scalar::one(), |n| int(2 * n as i64 + 1), |n| int((n * n) as i64));
        let m = j.moments(5).unwrap();
        assert_eq!(m.terms, [1, 1, 2, 6, 24, 120].map(int));
    }

    #[test]
    fn jfraction_matches_moments() {
        for j in [touchard(6), eulerian(6)] {
            let (s, m) = (j.jfraction(6).unwrap(), j.moments(6).unwrap());
            assert_eq!(s.coeffs(), &m.terms[..]);
        }
    }

    #[test]
    fn insufficient_parameters() {
        // depth 2 fixes a_0..a_3
        assert_eq!(touchard(2).moments(3).unwrap(), touchard(3).moments(3).unwrap());
        let err = touchard(2).moments(4).unwrap_err();
        assert_eq!(err, OrthoError::InsufficientParameters { needed: 3, have: 2 });
        assert!(JacobiParams::new(int(1), vec![int(1)], vec![int(2)]).is_err());
    }

    #[test]
    fn recover_touchard() {
        let m = touchard(8).moments(8).unwrap();
        let r = jacobi_from_moments(&m).unwrap();
        assert_eq!(r.status, Recovery::Complete);
        assert_eq!(r.params, touchard(4));
    }

    #[test]
    fn recover_factorials() {
        let m: MomentSequence = [1, 1, 2, 6, 24, 120, 720, 5040, 40320].map(int).to_vec().into();
        let r = jacobi_from_moments(&m).unwrap();
        let expected =
            JacobiParams::from_fn(4, int(1), |n| int(2 * n as i64 + 1), |n| int((n * n) as i64));
        assert_eq!(r.params, expected);
    }

    #[test]
    fn point_mass_is_degenerate() {
        for c in [int(3), Scalar::z()] {
            let terms: Vec<Scalar> = (0..4).map(|k| c.powi(k).unwrap()).collect();
            let r = jacobi_from_moments(&terms.into()).unwrap();
            assert_eq!(r.status, Recovery::Degenerate { depth: 1 });
            assert_eq!(r.params.alpha, vec![c.clone()]);
            assert!(r.params.beta.is_empty());
        }
    }

    #[test]
    fn zero_leading_moment() {
        let m: MomentSequence = vec![int(0), int(1), int(2)].into();
        assert_eq!(jacobi_from_moments(&m).unwrap_err(), OrthoError::ZeroLeadingMoment);
    }

    fn random_params() -> impl Strategy<Value = JacobiParams> {
        (
            -2i64..=3,
            prop::collection::vec(-3i64..=3, 6),
            prop::collection::vec(1i64..=4, 5),
        )
            .prop_filter("a0 nonzero", |(a0, _, _)| *a0 != 0)
            .prop_map(|(a0, al, be)| {
                JacobiParams::new(int(a0), al.into_iter().map(int).collect(), be.into_iter().map(int).collect())
                    .unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn round_trip(j in random_params()) {
            let m = j.moments(6).unwrap();
            let r = jacobi_from_moments(&m).unwrap();
            prop_assert_eq!(r.status, Recovery::Complete);
            prop_assert_eq!(r.params.a0, j.a0.clone());
            prop_assert_eq!(&r.params.alpha[..], &j.alpha[..3]);
            prop_assert_eq!(&r.params.beta[..], &j.beta[..2]);
        }

        #[test]
        fn dual_moment_routes(j in random_params()) {
            let (s, m) = (j.jfraction(6).unwrap(), j.moments(6).unwrap());
            prop_assert_eq!(s.coeffs(), &m.terms[..]);
        }
    }
}
