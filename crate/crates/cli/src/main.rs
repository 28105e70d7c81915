use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use riordan_core::io::{self as rio, JacobiDoc};
use riordan_core::scalars::parse_rational;
use riordan_core::sequences::{bell_poly, eulerian_poly, IntTriangle};
use riordan_core::verify::{self, Suite};
use riordan_core::{
    binomial_transform, hankel_transform, jacobi_from_moments, ERArray, Expr, JacobiParams,
    MomentSequence, NamedPair, PolyZ, Rational, Recovery, Scalar, Series,
};

mod output;

use output::{Emitter, Format};

#[derive(Parser)]
#[command(name = "riordan", version, about = "Exact exponential Riordan arrays over Q(z)")]
struct Cli {
    /// Truncation order N (rows 0..=N).
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(2..=64))]
    order: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Evaluate results at z = P/Q after computing symbolically.
    #[arg(long = "z", global = true, value_name = "P/Q", value_parser = parse_z)]
    z: Option<Rational>,

    #[command(subcommand)]
    command: Command,
}

fn parse_z(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_named(s: &str) -> Result<NamedPair, String> {
    s.parse::<NamedPair>().map_err(|e| e.to_string())
}

#[derive(Args, Clone)]
struct PairArgs {
    /// Named pair: thm1, thm2, stirling2, binomial, lah_like, sets_of_lists,
    /// laguerre, charlier, thm2_z1.
    #[arg(long, value_parser = parse_named, conflicts_with_all = ["g", "f"])]
    name: Option<NamedPair>,
    /// Expression for g(x), e.g. "exp(z*(exp(x)-1))".
    #[arg(long, requires = "f")]
    g: Option<String>,
    /// Expression for f(x), e.g. "exp(x)-1".
    #[arg(long, requires = "g")]
    f: Option<String>,
}

#[derive(Args, Clone)]
struct SecondPairArgs {
    #[arg(long, value_parser = parse_named, conflicts_with_all = ["g2", "f2"])]
    name2: Option<NamedPair>,
    #[arg(long, requires = "f2")]
    g2: Option<String>,
    #[arg(long, requires = "g2")]
    f2: Option<String>,
}

#[derive(Args, Clone)]
struct SeqArgs {
    /// Sequence file: b-file ("n value" lines) or a JSON list of strings.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "seq")]
    input: Option<PathBuf>,
    /// Inline comma-separated terms, e.g. "1,1,2,5,15".
    #[arg(long)]
    seq: Option<String>,
    #[command(flatten)]
    pair: PairArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Pair,
    Direct,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum TriangleKind {
    Stirling2,
    Eulerian,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Bell,
    Eulerian,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Thm1,
    Thm2,
    Examples,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build the array [g, f].
    Array(PairArgs),
    /// Group inverse of [g, f].
    Inverse(PairArgs),
    /// Product of two arrays.
    Multiply {
        #[command(flatten)]
        first: PairArgs,
        #[command(flatten)]
        second: SecondPairArgs,
    },
    /// Production matrix, rows 0..N-1.
    Prodmat {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = Method::Pair)]
        method: Method,
    },
    /// Recurrence coefficients, from a pair's production matrix or from moments.
    Jacobi(SeqArgs),
    /// Moments from a Jacobi parameter file, or the first column of a pair.
    Moments {
        /// JSON file {"a0": .., "alpha": [..], "beta": [..]}.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Hankel transform h_0..h_nmax.
    Hankel {
        #[command(flatten)]
        source: SeqArgs,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Binomial transform.
    Binom(SeqArgs),
    /// Integer triangle, rows 0..=N.
    Triangle {
        #[arg(value_enum)]
        kind: TriangleKind,
    },
    /// Bell (Touchard) or Eulerian polynomial.
    Poly {
        #[arg(value_enum)]
        kind: PolyKind,
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

/// Exit status 2 with a message.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, Usage>;

struct Ctx {
    order: usize,
    z: Option<Rational>,
    out: Emitter,
}

fn eval(text: &str, order: usize) -> CliResult<Series> {
    let expr = Expr::parse(text).map_err(|e| Usage(format!("{e}\n  {text}\n  {}^", " ".repeat(e.offset))))?;
    expr.eval_series(order).map_err(|e| Usage(e.describe(text)))
}

fn resolve(name: Option<NamedPair>, g: &Option<String>, f: &Option<String>, order: usize) -> CliResult<ERArray> {
    let (g, f) = match (name, g, f) {
        (Some(p), _, _) => p.pair(order)?,
        (None, Some(g), Some(f)) => (eval(g, order)?, eval(f, order)?),
        _ => return Err(Usage("give --name or both --g and --f".into())),
    };
    Ok(ERArray::build(&g, &f)?)
}

impl PairArgs {
    fn given(&self) -> bool {
        self.name.is_some() || self.g.is_some()
    }

    fn array(&self, order: usize) -> CliResult<ERArray> {
        resolve(self.name, &self.g, &self.f, order)
    }
}

impl SecondPairArgs {
    fn array(&self, order: usize) -> CliResult<ERArray> {
        resolve(self.name2, &self.g2, &self.f2, order)
    }
}

fn read_sequence(path: &PathBuf) -> CliResult<Vec<Scalar>> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('[') {
        Ok(rio::sequence_from_json(&text)?)
    } else {
        Ok(rio::read_bfile(&text)?)
    }
}

impl SeqArgs {
    /// Terms from `--in`, `--seq`, or the first column of a pair.
    fn terms(&self, order: usize) -> CliResult<Vec<Scalar>> {
        if let Some(path) = &self.input {
            return read_sequence(path);
        }
        if let Some(inline) = &self.seq {
            return inline
                .split(',')
                .map(|t| t.trim().parse::<Scalar>().map_err(|e| Usage(format!("term `{}`: {e}", t.trim()))))
                .collect();
        }
        if self.pair.given() {
            return Ok(self.pair.array(order)?.first_column());
        }
        Err(Usage("give --in, --seq, or a pair".into()))
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let mut ctx = Ctx {
        order: cli.order as usize,
        z: cli.z,
        out: Emitter::new(cli.format),
    };
    let n = ctx.order;
    match cli.command {
        Command::Array(p) => {
            let a = p.array(n)?;
            ctx.rows(&rio::triangle_rows(a.entries()))?;
        }
        Command::Inverse(p) => {
            let a = p.array(n)?.inverse()?;
            ctx.rows(&rio::triangle_rows(a.entries()))?;
        }
        Command::Multiply { first, second } => {
            let a = first.array(n)?.mul(&second.array(n)?)?;
            ctx.rows(&rio::triangle_rows(a.entries()))?;
        }
        Command::Prodmat { pair, method } => return prodmat(&mut ctx, &pair, method),
        Command::Jacobi(src) => {
            if src.input.is_some() || src.seq.is_some() {
                let terms = src.terms(n)?;
                let rec = jacobi_from_moments(&MomentSequence::from(terms))?;
                if let Recovery::Degenerate { depth } = rec.status {
                    eprintln!("note: moment functional degenerate after depth {depth}");
                }
                ctx.jacobi(&rec.params)?;
            } else {
                let a = src.pair.array(n)?;
                let j = a.production_from_pair()?.extract_jacobi()?;
                ctx.jacobi(&j)?;
            }
        }
        Command::Moments { input, pair } => {
            let terms = match input {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
                    let j = JacobiDoc::from_json(&text)?.params()?;
                    let count = n.min(2 * j.depth().max(1) - 1);
                    j.moments(count)?.terms
                }
                None => pair.array(n)?.first_column(),
            };
            ctx.sequence(&terms)?;
        }
        Command::Hankel { source, nmax } => {
            let terms = source.terms(n)?;
            let nmax = nmax.unwrap_or(terms.len().saturating_sub(1) / 2);
            let h = hankel_transform(&MomentSequence::from(terms), nmax)?;
            ctx.sequence(&h)?;
        }
        Command::Binom(src) => {
            let b = binomial_transform(&MomentSequence::from(src.terms(n)?));
            ctx.sequence(&b.terms)?;
        }
        Command::Triangle { kind } => {
            let t = match kind {
                TriangleKind::Stirling2 => IntTriangle::stirling2(n),
                TriangleKind::Eulerian => IntTriangle::eulerian(n),
            };
            ctx.rows(&t.to_scalar_rows())?;
        }
        Command::Poly { kind, n: k } => {
            let p = match kind {
                PolyKind::Bell => bell_poly(k),
                PolyKind::Eulerian => eulerian_poly(k),
            };
            ctx.poly(&p)?;
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Thm1 => Suite::Thm1,
                SuiteArg::Thm2 => Suite::Thm2,
                SuiteArg::Examples => Suite::Examples,
                SuiteArg::All => Suite::All,
            };
            let checks = verify::run(suite, n);
            let mut all = true;
            for c in &checks {
                all &= c.passed;
                ctx.out.line(&c.to_string());
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            ctx.out.line(&format!("{} checks, {} failed", checks.len(), failed));
            ctx.out.flush()?;
            return Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    ctx.out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn prodmat(ctx: &mut Ctx, pair: &PairArgs, method: Method) -> CliResult<ExitCode> {
    let a = pair.array(ctx.order)?;
    let p = match method {
        Method::Pair | Method::Both => a.production_from_pair()?,
        Method::Direct => a.production_direct()?,
    };
    ctx.rows(&rio::production_rows(&p))?;
    let mut status = ExitCode::SUCCESS;
    if let Method::Both = method {
        let direct = a.production_direct()?;
        let verdict = match p.first_difference(&direct) {
            None => format!("AGREE rows 0..{}", p.valid_rows() - 1),
            Some(i) => {
                status = ExitCode::from(1);
                format!("DISAGREE at row {i}")
            }
        };
        ctx.out.note(&verdict);
    }
    ctx.out.flush()?;
    Ok(status)
}

impl Ctx {
    fn specialize_rows(&self, rows: &[Vec<Scalar>]) -> CliResult<Vec<Vec<Scalar>>> {
        match &self.z {
            Some(v) => Ok(rio::specialize(rows, v)?),
            None => Ok(rows.to_vec()),
        }
    }

    fn specialize_seq(&self, values: &[Scalar]) -> CliResult<Vec<Scalar>> {
        let Some(v) = &self.z else {
            return Ok(values.to_vec());
        };
        let mut rows = rio::specialize(&[values.to_vec()], v)
            .map_err(|e| Usage(format!("term {}: {}", e.col, e.source)))?;
        Ok(rows.remove(0))
    }

    fn rows(&mut self, rows: &[Vec<Scalar>]) -> CliResult<()> {
        let rows = self.specialize_rows(rows)?;
        self.out.rows(self.order, &rows)
    }

    fn sequence(&mut self, values: &[Scalar]) -> CliResult<()> {
        let values = self.specialize_seq(values)?;
        self.out.sequence(&values)
    }

    fn poly(&mut self, p: &PolyZ) -> CliResult<()> {
        let s = Scalar::from_poly(p.clone());
        match &self.z {
            Some(_) => {
                let v = self.specialize_seq(&[s])?;
                self.out.scalar(&v[0])
            }
            None => self.out.poly(p),
        }
    }

    fn jacobi(&mut self, j: &JacobiParams) -> CliResult<()> {
        let a0 = self.specialize_seq(std::slice::from_ref(&j.a0))?.remove(0);
        let j = JacobiParams::new(a0, self.specialize_seq(&j.alpha)?, self.specialize_seq(&j.beta)?)?;
        self.out.jacobi(&j)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = std::io::stdout().flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
