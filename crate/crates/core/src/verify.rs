//! Verification suites for the two moment theorems and the worked example arrays.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Pow};

use crate::hankel::hankel_transform;
use crate::matrix::Matrix;
use crate::orthopoly::MomentSequence;
use crate::riordan::{ERArray, ProductionMatrix};
use crate::scalars::{binomial, factorial, factorial_ratio, rat, rat_int, PolyZ, Rational, Scalar};
use crate::sequences::{bell_poly, eulerian_poly, NamedPair};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Thm1,
    Thm2,
    Examples,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "thm1" => Ok(Suite::Thm1),
            "thm2" => Ok(Suite::Thm2),
            "examples" => Ok(Suite::Examples),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}` (thm1, thm2, examples, all)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

type Rows = Vec<Vec<Scalar>>;

fn ints(rows: &[&[i64]]) -> Rows {
    rows.iter()
        .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
        .collect()
}

fn show(row: &[Scalar]) -> String {
    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
    format!("[{}]", cells.join(", "))
}

/// Compares the leading `expected.len()` rows of `m`, zero-padding `expected`.
fn compare_rows(name: &str, m: &Matrix, expected: &Rows) -> Check {
    for (i, want) in expected.iter().enumerate() {
        let got = m.row(i);
        let mut padded = want.clone();
        padded.resize(got.len(), Scalar::zero());
        if got != padded.as_slice() {
            let shown = &got[..want.len().max(i + 2).min(got.len())];
            return Check {
                name: name.into(),
                passed: false,
                detail: format!("row {i}: expected {}, got {}", show(want), show(shown)),
            };
        }
    }
    Check {
        name: name.into(),
        passed: true,
        detail: format!("rows 0..{}", expected.len() - 1),
    }
}

fn compare_seq(name: &str, got: &[Scalar], expected: &[Scalar]) -> Check {
    match got.iter().zip(expected).position(|(a, b)| a != b) {
        Some(i) => Check {
            name: name.into(),
            passed: false,
            detail: format!("n = {i}: expected {}, got {}", expected[i], got[i]),
        },
        None => Check {
            name: name.into(),
            passed: got.len() >= expected.len(),
            detail: format!("n = 0..{}", expected.len().saturating_sub(1)),
        },
    }
}

fn failed(name: &str, err: impl fmt::Display) -> Check {
    Check {
        name: name.into(),
        passed: false,
        detail: err.to_string(),
    }
}

fn build_named(p: NamedPair, order: usize) -> Result<ERArray, String> {
    let (g, f) = p.pair(order).map_err(|e| e.to_string())?;
    ERArray::build(&g, &f).map_err(|e| e.to_string())
}

fn build(g: Series, f: Series) -> Result<ERArray, String> {
    ERArray::build(&g, &f).map_err(|e| e.to_string())
}

/// Tridiagonal rows with `P[n][n-1] = sub(n)`, `P[n][n] = diag(n)`, `P[n][n+1] = 1`.
fn tridiagonal(rows: usize, sub: impl Fn(usize) -> Scalar, diag: impl Fn(usize) -> Scalar) -> Rows {
    (0..rows)
        .map(|n| {
            let mut r = vec![Scalar::zero(); n + 2];
            if n > 0 {
                r[n - 1] = sub(n);
            }
            r[n] = diag(n);
            r[n + 1] = Scalar::one();
            r
        })
        .collect()
}

fn zpoly(c: &[i64]) -> Scalar {
    Scalar::from_poly(PolyZ::from_ints(c))
}

/// `z^{C(n+1,2)} Π_{k ≤ n} (k!)^power`.
fn hankel_closed_form(n: usize, base: PolyZ, power: u32) -> Scalar {
    let prod = (1..=n).fold(Rational::one(), |acc, k| {
        acc * rat_int(factorial(k)).pow(power as i32)
    });
    Scalar::from_poly(base.pow((n * (n + 1) / 2) as u32)).scale(&prod)
}

fn production_checks(name: &str, a: &ERArray, expected: &Rows) -> Vec<Check> {
    let label = format!("{name}: production matrix");
    let pair = match a.production_from_pair() {
        Ok(p) => p,
        Err(e) => return vec![failed(&label, e)],
    };
    let mut out = vec![compare_rows(&label, pair.entries(), expected)];
    out.push(agreement(name, a, &pair));
    out
}

fn agreement(name: &str, a: &ERArray, pair: &ProductionMatrix) -> Check {
    let label = format!("{name}: direct and pair methods agree");
    match a.production_direct() {
        Ok(direct) => match pair.first_difference(&direct) {
            None => Check {
                name: label,
                passed: true,
                detail: format!("rows 0..{}", pair.valid_rows() - 1),
            },
            Some(i) => Check {
                name: label,
                passed: false,
                detail: format!(
                    "row {i}: pair {}, direct {}",
                    show(pair.entries().row(i)),
                    show(direct.entries().row(i))
                ),
            },
        },
        Err(e) => failed(&label, e),
    }
}

fn moment_theorem(
    name: &str,
    pair: NamedPair,
    order: usize,
    sub: impl Fn(usize) -> Scalar,
    diag: impl Fn(usize) -> Scalar,
    moments: impl Fn(usize) -> PolyZ,
    hankel_power: u32,
) -> Result<(ERArray, Vec<Check>), String> {
    let a = build_named(pair, order)?;
    let mut out = production_checks(name, &a, &tridiagonal(order, sub, diag));
    let expected: Vec<Scalar> = (0..=order).map(|n| Scalar::from_poly(moments(n))).collect();
    let col = a.first_column();
    out.push(compare_seq(&format!("{name}: moments"), &col, &expected));
    let nmax = order / 2;
    let label = format!("{name}: Hankel transform");
    match hankel_transform(&MomentSequence::from(col), nmax) {
        Ok(h) => {
            let want: Vec<Scalar> = (0..=nmax)
                .map(|n| hankel_closed_form(n, PolyZ::z(), hankel_power))
                .collect();
            out.push(compare_seq(&label, &h, &want));
        }
        Err(e) => out.push(failed(&label, e)),
    }
    Ok((a, out))
}

fn thm1(order: usize) -> Result<Vec<Check>, String> {
    let (a, mut out) = moment_theorem(
        "thm1",
        NamedPair::Thm1,
        order,
        |n| zpoly(&[0, n as i64]),
        |n| zpoly(&[n as i64, 1]),
        bell_poly,
        1,
    )?;
    let inv = a.inverse().map_err(|e| e.to_string())?;
    let x = Series::x(order);
    let g = x.scale(&-Scalar::z()).exp().map_err(|e| e.to_string())?;
    let f = x.add(&Series::one(order)).and_then(|s| s.log()).map_err(|e| e.to_string())?;
    let expected = build(g, f)?;
    out.push(compare_rows(
        "thm1: inverse is [exp(-z*x), log(1+x)]",
        inv.entries(),
        &expected.entries().rows().to_vec(),
    ));
    Ok(out)
}

fn thm2(order: usize) -> Result<Vec<Check>, String> {
    let (a, mut out) = moment_theorem(
        "thm2",
        NamedPair::Thm2,
        order,
        |n| zpoly(&[0, (n * n) as i64]),
        |n| zpoly(&[n as i64, n as i64 + 1]),
        eulerian_poly,
        2,
    )?;
    let label = "thm2: z = 1 gives n!/k! C(n,k)";
    match a.eval_z(&rat(1, 1)) {
        Ok(m) => {
            out.push(compare_rows(label, &m, &laguerre(order, false)));
            let z1 = build_named(NamedPair::Thm2Z1, order)?;
            out.push(Check {
                name: "thm2: z = 1 matches [1/(1-x), x/(1-x)]".into(),
                passed: &m == z1.entries(),
                detail: String::new(),
            });
        }
        Err((i, j, e)) => out.push(failed(label, format!("entry ({i},{j}): {e}"))),
    }
    Ok(out)
}

/// `(±1)^{n-k} n!/k! C(n,k)`.
fn laguerre(order: usize, signed: bool) -> Rows {
    (0..=order)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let v = Scalar::from_bigint(factorial_ratio(n, k) * binomial(n, k));
                    if signed && (n - k) % 2 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

fn examples(order: usize) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();

    // [e^x, x]
    let pascal = build_named(NamedPair::Binomial, order)?;
    let rows: Rows = (0..=order)
        .map(|n| (0..=n).map(|k| Scalar::from_bigint(binomial(n, k))).collect())
        .collect();
    out.push(compare_rows("binomial: Pascal triangle", pascal.entries(), &rows));
    let cube = pascal
        .mul(&pascal)
        .and_then(|p| p.mul(&pascal))
        .map_err(|e| e.to_string())?;
    let e3x = build(Series::exp_linear(&Scalar::from_int(3), order), Series::x(order))?;
    out.push(Check {
        name: "binomial: cube is [exp(3x), x]".into(),
        passed: cube == e3x,
        detail: String::new(),
    });

    // [1/(1-x), x]
    let lah = build_named(NamedPair::LahLike, order)?;
    let rows: Rows = (0..=order)
        .map(|n| (0..=n).map(|k| Scalar::from_bigint(factorial_ratio(n, k))).collect())
        .collect();
    out.push(compare_rows("lah_like: entries n!/k!", lah.entries(), &rows));
    let inv = lah.inverse().map_err(|e| e.to_string())?;
    out.push(compare_rows(
        "lah_like: inverse is [1-x, x]",
        inv.entries(),
        &ints(&[&[1], &[-1, 1], &[0, -2, 1], &[0, 0, -3, 1], &[0, 0, 0, -4, 1], &[0, 0, 0, 0, -5, 1]]),
    ));
    out.push(compare_seq(
        "lah_like: inverse row sums 1 - n",
        &inv.row_sums(),
        &(0..=order as i64).map(|n| Scalar::from_int(1 - n)).collect::<Vec<_>>(),
    ));
    match (lah.production_from_pair(), lah.production_bivariate_gf(order - 1)) {
        (Ok(p), Ok(phi)) => {
            let bad = phi.mismatches(&p);
            out.push(Check {
                name: "lah_like: production matrix expands exp(t*w)*(1/(1-w) + t)".into(),
                passed: bad.is_empty() && phi.c == Series::geometric(order - 1) && phi.r == Series::one(order - 1),
                detail: if bad.is_empty() {
                    format!("{phi}")
                } else {
                    format!("rows {bad:?} differ")
                },
            });
            out.push(agreement("lah_like", &lah, &p));
            // the array with its first row dropped
            let shifted: Rows = rows[1..].iter().take(order).cloned().collect();
            out.push(compare_rows(
                "lah_like: production matrix is the array without its first row",
                p.entries(),
                &shifted,
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(failed("lah_like: production matrix", e)),
    }

    // [1, x/(1-x)] and its inverse [1, x/(1+x)]
    let sol = build_named(NamedPair::SetsOfLists, order)?;
    let rows: Rows = (0..=order)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    if n == 0 {
                        Scalar::one()
                    } else if k == 0 {
                        Scalar::zero()
                    } else {
                        Scalar::from_bigint(factorial_ratio(n, k) * binomial(n - 1, n - k))
                    }
                })
                .collect()
        })
        .collect();
    out.push(compare_rows("sets_of_lists: entries n!/k! C(n-1,n-k)", sol.entries(), &rows));
    out.push(compare_seq(
        "sets_of_lists: row sums",
        &sol.row_sums(),
        &[1, 1, 3, 13, 73, 501].map(Scalar::from_int),
    ));
    let inv = sol.inverse().map_err(|e| e.to_string())?;
    let x = Series::x(order);
    let expected = build(Series::one(order), x.div(&x.add(&Series::one(order)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?)?;
    out.push(Check {
        name: "sets_of_lists: inverse is [1, x/(1+x)]".into(),
        passed: inv == expected,
        detail: String::new(),
    });
    out.push(compare_seq(
        "sets_of_lists: inverse row sums",
        &inv.row_sums(),
        &[1, 1, -1, 1, 1, -19, 151].map(Scalar::from_int),
    ));
    let shown = ints(&[
        &[0, 1],
        &[0, 2, 1],
        &[0, 2, 4, 1],
        &[0, 0, 6, 6, 1],
        &[0, 0, 0, 12, 8, 1],
    ]);
    let back = inv.inverse().map_err(|e| e.to_string())?;
    out.extend(production_checks("sets_of_lists (inverse of [1, x/(1+x)])", &back, &shown));

    // [1/(1-x), x/(1-x)]
    let lag = build_named(NamedPair::Laguerre, order)?;
    out.push(compare_rows("laguerre: entries n!/k! C(n,k)", lag.entries(), &laguerre(order, false)));
    let inv = lag.inverse().map_err(|e| e.to_string())?;
    out.push(compare_rows(
        "laguerre: inverse entries (-1)^(n-k) n!/k! C(n,k)",
        inv.entries(),
        &laguerre(order, true),
    ));
    let shown = ints(&[
        &[1, 1],
        &[1, 3, 1],
        &[0, 4, 5, 1],
        &[0, 0, 9, 7, 1],
        &[0, 0, 0, 16, 9, 1],
    ]);
    out.extend(production_checks("laguerre", &lag, &shown));

    // [e^x, ln(1/(1-x))]
    let ch = build_named(NamedPair::Charlier, order)?;
    let shown = ints(&[
        &[1],
        &[1, 1],
        &[1, 3, 1],
        &[1, 8, 6, 1],
        &[1, 24, 29, 10, 1],
        &[1, 89, 145, 75, 15, 1],
    ]);
    out.push(compare_rows("charlier: entries", ch.entries(), &shown));
    let inv = ch.inverse().map_err(|e| e.to_string())?;
    let one = Series::one(order);
    let emx = Series::exp_linear(&Scalar::from_int(-1), order);
    let f = one.sub(&emx).map_err(|e| e.to_string())?;
    let g = f.neg().exp().map_err(|e| e.to_string())?;
    let expected = build(g, f)?;
    out.push(Check {
        name: "charlier: inverse is [exp(-(1-e^-x)), 1-e^-x]".into(),
        passed: inv == expected,
        detail: String::new(),
    });
    let shown = ints(&[
        &[-1, 1],
        &[1, -2, 1],
        &[0, 2, -3, 1],
        &[0, 0, 3, -4, 1],
        &[0, 0, 0, 4, -5, 1],
    ]);
    out.extend(production_checks("charlier (inverse)", &inv, &shown));
    Ok(out)
}

type Part = (&'static str, fn(usize) -> Result<Vec<Check>, String>);

/// Smallest order covering every displayed example row.
pub const MIN_ORDER: usize = 6;

/// Runs a suite at truncation order `max(order, MIN_ORDER)`.
pub fn run(suite: Suite, order: usize) -> Vec<Check> {
    let order = order.max(MIN_ORDER);
    let parts: Vec<Part> = match suite {
        Suite::Thm1 => vec![("thm1", thm1)],
        Suite::Thm2 => vec![("thm2", thm2)],
        Suite::Examples => vec![("examples", examples)],
        Suite::All => vec![("thm1", thm1), ("thm2", thm2), ("examples", examples)],
    };
    parts
        .into_iter()
        .flat_map(|(name, f)| f(order).unwrap_or_else(|e| vec![failed(name, e)]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failures(checks: &[Check]) -> Vec<String> {
        checks.iter().filter(|c| !c.passed).map(ToString::to_string).collect()
    }

    #[test]
    fn thm1_suite() {
        let c = run(Suite::Thm1, 8);
        assert_eq!(c.len(), 5);
        assert!(failures(&c).is_empty(), "{:?}", failures(&c));
    }

    #[test]
    fn thm2_suite() {
        let c = run(Suite::Thm2, 8);
        assert!(failures(&c).is_empty(), "{:?}", failures(&c));
    }

    #[test]
    fn examples_suite_flags_only_the_shifted_array_claim() {
        let c = run(Suite::Examples, 8);
        let bad = failures(&c);
        assert_eq!(bad.len(), 1, "{bad:?}");
        assert!(bad[0].contains("without its first row"), "{}", bad[0]);
        assert!(bad[0].contains("row 1: expected [2, 2, 1], got [1, 1, 1]"), "{}", bad[0]);
    }

    #[test]
    fn small_orders_are_raised() {
        let c = run(Suite::Examples, 2);
        assert_eq!(c.iter().filter(|c| !c.passed).count(), 1);
    }

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("thm3".parse::<Suite>().is_err());
    }
}
