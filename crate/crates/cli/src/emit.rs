//! Machine-readable output on stdout: JSON Lines or CSV with a header.

use std::io::{self, Write};

use serde::Serialize;
use tracepp::campaign::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown output format {s:?}")),
        }
    }
}

/// A report with nested fields spread into columns.
#[derive(Serialize)]
struct FlatReport<'a> {
    schema: &'a str,
    family_id: &'a str,
    family: &'a str,
    m: u32,
    base_modulus: &'a str,
    cubic: &'a str,
    g: Option<&'a str>,
    a: Option<&'a str>,
    c1: Option<&'a str>,
    c2: Option<&'a str>,
    c3: Option<&'a str>,
    c4: Option<&'a str>,
    status: &'a str,
    predicate: Option<bool>,
    oracle: bool,
    agree: Option<bool>,
    counterexample_0: Option<&'a str>,
    counterexample_1: Option<&'a str>,
    mode: &'a str,
    elapsed_ms: u64,
}

impl<'a> From<&'a VerificationReport> for FlatReport<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        let p = &r.params;
        let ce = |k: usize| r.counterexample.as_ref().map(|c| c[k].as_str());
        FlatReport {
            schema: r.schema,
            family_id: &r.family_id,
            family: &r.family,
            m: r.m,
            base_modulus: &r.base_modulus,
            cubic: &r.cubic,
            g: p.g.as_deref(),
            a: p.a.as_deref(),
            c1: p.c1.as_deref(),
            c2: p.c2.as_deref(),
            c3: p.c3.as_deref(),
            c4: p.c4.as_deref(),
            status: r.status,
            predicate: r.predicate,
            oracle: r.oracle,
            agree: r.agree,
            counterexample_0: ce(0),
            counterexample_1: ce(1),
            mode: &r.mode,
            elapsed_ms: r.elapsed_ms,
        }
    }
}

pub enum Emitter {
    Json(io::BufWriter<io::Stdout>),
    Csv(Box<csv::Writer<io::Stdout>>),
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        match format {
            Format::Json => Emitter::Json(io::BufWriter::new(io::stdout())),
            Format::Csv => Emitter::Csv(Box::new(csv::Writer::from_writer(io::stdout()))),
        }
    }

    /// Emits one flat record.
    pub fn row<T: Serialize>(&mut self, row: &T) -> io::Result<()> {
        match self {
            Emitter::Json(w) => {
                serde_json::to_writer(&mut *w, row)?;
                w.write_all(b"\n")
            }
            Emitter::Csv(w) => w.serialize(row).map_err(io::Error::other),
        }
    }

    pub fn report(&mut self, r: &VerificationReport) -> io::Result<()> {
        match self {
            Emitter::Json(_) => self.row(r),
            Emitter::Csv(_) => self.row(&FlatReport::from(r)),
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        match self {
            Emitter::Json(w) => w.flush(),
            Emitter::Csv(w) => w.flush(),
        }
    }
}
