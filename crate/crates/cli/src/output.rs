use std::io::{self, Write};

use clap::ValueEnum;

use riordan_core::io::{self as rio, JacobiDoc, TriangleDoc};
use riordan_core::{JacobiParams, PolyZ, Scalar};

use crate::{CliResult, Usage};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
    Latex,
    Bfile,
}

/// Buffers stdout; notes go to stderr when stdout carries JSON.
pub struct Emitter {
    format: Format,
    buf: String,
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        Emitter {
            format,
            buf: String::new(),
        }
    }

    pub fn line(&mut self, text: &str) {
        self.buf.push_str(text);
        self.buf.push('\n');
    }

    pub fn note(&mut self, text: &str) {
        if self.format == Format::Json {
            eprintln!("{text}");
        } else {
            self.line(text);
        }
    }

    pub fn rows(&mut self, order: usize, rows: &[Vec<Scalar>]) -> CliResult<()> {
        let text = match self.format {
            Format::Json => TriangleDoc::new(order, rows).to_json() + "\n",
            Format::Plain => rio::write_plain(rows),
            Format::Latex => rio::latex_pmatrix(rows),
            Format::Bfile => rio::write_triples(rows),
        };
        self.buf.push_str(&text);
        Ok(())
    }

    pub fn sequence(&mut self, values: &[Scalar]) -> CliResult<()> {
        let text = match self.format {
            Format::Json => rio::sequence_to_json(values) + "\n",
            Format::Plain => join(values.iter().map(ToString::to_string)),
            Format::Latex => join(values.iter().map(rio::latex_scalar)),
            Format::Bfile => rio::write_bfile(values, 0),
        };
        self.buf.push_str(&text);
        Ok(())
    }

    pub fn scalar(&mut self, v: &Scalar) -> CliResult<()> {
        let text = match self.format {
            Format::Json => rio::sequence_to_json(std::slice::from_ref(v)),
            Format::Plain => v.to_string(),
            Format::Latex => rio::latex_scalar(v),
            Format::Bfile => format!("0 {v}"),
        };
        self.line(&text);
        Ok(())
    }

    pub fn poly(&mut self, p: &PolyZ) -> CliResult<()> {
        match self.format {
            Format::Bfile => {
                // coefficient listing
                let coeffs: Vec<Scalar> = p.coeffs().iter().cloned().map(Scalar::from_rational).collect();
                self.buf.push_str(&rio::write_bfile(&coeffs, 0));
                Ok(())
            }
            _ => self.scalar(&Scalar::from_poly(p.clone())),
        }
    }

    pub fn jacobi(&mut self, j: &JacobiParams) -> CliResult<()> {
        let strs = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self.format {
            Format::Json => self.line(&JacobiDoc::from(j).to_json()),
            Format::Plain => {
                self.line(&format!("a0: {}", j.a0));
                self.line(&format!("alpha: {}", strs(&j.alpha)));
                self.line(&format!("beta: {}", strs(&j.beta)));
            }
            Format::Latex => {
                let tex = |v: &[Scalar]| v.iter().map(rio::latex_scalar).collect::<Vec<_>>().join(", ");
                self.line(&format!("a_0 = {}", rio::latex_scalar(&j.a0)));
                self.line(&format!("\\alpha_n = {}", tex(&j.alpha)));
                self.line(&format!("\\beta_n = {}", tex(&j.beta)));
            }
            Format::Bfile => return Err(Usage("bfile format does not apply to Jacobi parameters".into())),
        }
        Ok(())
    }

    pub fn flush(&mut self) -> CliResult<()> {
        let mut out = io::stdout().lock();
        out.write_all(self.buf.as_bytes())?;
        out.flush()?;
        self.buf.clear();
        Ok(())
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(", ") + "\n"
}
