//! Closed-form combinatorial numbers and the named exponential Riordan pairs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::scalars::{binomial, factorial, rat_int, PolyZ, Scalar};
use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("index out of range: need 0 <= k <= n, got n = {n}, k = {k}")]
    OutOfRange { n: i64, k: i64 },
    #[error("unknown pair name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn check(n: i64, k: i64) -> Result<(usize, usize), SequenceError> {
    if k < 0 || k > n {
        return Err(SequenceError::OutOfRange { n, k });
    }
    Ok((n as usize, k as usize))
}

fn pow(base: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// Stirling numbers of the second kind, `S(n,k) = 1/k! Σ_j (-1)^{k-j} C(k,j) j^n`.
pub fn stirling2(n: i64, k: i64) -> Result<BigInt, SequenceError> {
    let (n, k) = check(n, k)?;
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k, j) * pow(j, n);
        if (k - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum / factorial(k))
}

/// Eulerian numbers `A(n,k) = Σ_{j=0}^{k} (-1)^j (k-j)^n C(n+1,j)`, with `0^0 = 1`.
///
/// For `n ≥ 1`, `A(n,k)` counts permutations of `n` elements with `k - 1`
/// excedances, so `A(n,0) = 0`; `A(0,0) = 1`.
pub fn eulerian(n: i64, k: i64) -> Result<BigInt, SequenceError> {
    let (n, k) = check(n, k)?;
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = pow(k - j, n) * binomial(n + 1, j);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Rows `0..=n` of an integer triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntTriangle {
    pub rows: Vec<Vec<BigInt>>,
}

impl IntTriangle {
    pub fn from_fn(
        n: usize,
        entry: impl Fn(i64, i64) -> Result<BigInt, SequenceError>,
    ) -> Result<Self, SequenceError> {
        let rows = (0..=n as i64)
            .map(|r| (0..=r).map(|k| entry(r, k)).collect())
            .collect::<Result<_, _>>()?;
        Ok(IntTriangle { rows })
    }

    pub fn stirling2(n: usize) -> Self {
        Self::from_fn(n, stirling2).expect("indices in range")
    }

    pub fn eulerian(n: usize) -> Self {
        Self::from_fn(n, eulerian).expect("indices in range")
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// Row `n` read as the coefficients of a polynomial in `z`.
    pub fn row_poly(&self, n: usize) -> PolyZ {
        PolyZ::from_coeffs(self.rows[n].iter().cloned().map(rat_int).collect())
    }

    pub fn to_scalar_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| r.iter().cloned().map(Scalar::from_bigint).collect())
            .collect()
    }
}

/// Touchard (Bell) polynomial `e_n(z) = Σ_k S(n,k) z^k`.
pub fn bell_poly(n: usize) -> PolyZ {
    IntTriangle::stirling2(n).row_poly(n)
}

/// Eulerian polynomial `EU_n(z) = Σ_k A(n,k) z^k`.
pub fn eulerian_poly(n: usize) -> PolyZ {
    IntTriangle::eulerian(n).row_poly(n)
}

/// Bell numbers `B_0..=B_n`.
pub fn bell_numbers(n: usize) -> Vec<BigInt> {
    IntTriangle::stirling2(n).row_sums()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedPair {
    /// `[e^{z(e^x-1)}, e^x - 1]`
    Thm1,
    /// `[e^{zx}(1-z)/(e^{zx} - z e^x), (e^x - e^{zx})/(e^{zx} - z e^x)]`
    Thm2,
    /// `[1, e^x - 1]`
    Stirling2,
    /// `[e^x, x]`
    Binomial,
    /// `[1/(1-x), x]`
    LahLike,
    /// `[1, x/(1-x)]`
    SetsOfLists,
    /// `[1/(1-x), x/(1-x)]`
    Laguerre,
    /// `[e^x, ln(1/(1-x))]`
    Charlier,
    /// The `z = 1` value of `Thm2`, `[1/(1-x), x/(1-x)]`.
    Thm2Z1,
}

impl NamedPair {
    pub const ALL: [NamedPair; 9] = [
        NamedPair::Thm1,
        NamedPair::Thm2,
        NamedPair::Stirling2,
        NamedPair::Binomial,
        NamedPair::LahLike,
        NamedPair::SetsOfLists,
        NamedPair::Laguerre,
        NamedPair::Charlier,
        NamedPair::Thm2Z1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedPair::Thm1 => "thm1",
            NamedPair::Thm2 => "thm2",
            NamedPair::Stirling2 => "stirling2",
            NamedPair::Binomial => "binomial",
            NamedPair::LahLike => "lah_like",
            NamedPair::SetsOfLists => "sets_of_lists",
            NamedPair::Laguerre => "laguerre",
            NamedPair::Charlier => "charlier",
            NamedPair::Thm2Z1 => "thm2_z1",
        }
    }

    /// The defining `(g, f)` at truncation order `order`.
    pub fn pair(self, order: usize) -> Result<(Series, Series), SequenceError> {
        let one = Series::one(order);
        let x = Series::x(order);
        let z = Scalar::z();
        let ex = Series::exp_linear(&Scalar::one(), order);
        let em1 = ex.sub(&one)?;
        let geo = Series::geometric(order);
        let pair = match self {
            NamedPair::Thm1 => (em1.scale(&z).exp()?, em1),
            NamedPair::Thm2 => {
                let ezx = Series::exp_linear(&z, order);
                let den = ezx.sub(&ex.scale(&z))?;
                let g = ezx.scale(&(&Scalar::one() - &z)).div(&den)?;
                let f = ex.sub(&ezx)?.div(&den)?;
                (g, f)
            }
            NamedPair::Stirling2 => (one, em1),
            NamedPair::Binomial => (ex, x),
            NamedPair::LahLike => (geo, x),
            NamedPair::SetsOfLists => (one, x.mul(&geo)?),
            NamedPair::Laguerre | NamedPair::Thm2Z1 => (geo.clone(), x.mul(&geo)?),
            NamedPair::Charlier => (ex, geo.log()?),
        };
        Ok(pair)
    }
}

impl fmt::Display for NamedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedPair {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedPair::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| SequenceError::UnknownName(s.to_string()))
    }
}

/// Looks up a pair by name and expands it to `order`.
pub fn named_pair(name: &str, order: usize) -> Result<(Series, Series), SequenceError> {
    name.parse::<NamedPair>()?.pair(order)
}
