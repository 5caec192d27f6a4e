use std::fs;
use std::io::Read;
use std::sync::Arc;

use clap::ValueEnum;
use eisenkit::eisenstein::{DivisorMode, Variant};
use eisenkit::poly::{is_w_separable, parse_bipoly, parse_unipoly, squarefree_part_w};
use eisenkit::{BiPoly, Error, NumberField};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantArg {
    /// Regular when the branch has e = 1 and no negative part, general otherwise.
    Auto,
    Regular,
    General,
    A0Regular,
    A0General,
}

impl VariantArg {
    pub fn resolve(self, e: u32, kappa: i64) -> Variant {
        match self {
            VariantArg::Auto if e == 1 && kappa >= 0 => Variant::Regular,
            VariantArg::Auto => Variant::General,
            VariantArg::Regular => Variant::Regular,
            VariantArg::General => Variant::General,
            VariantArg::A0Regular => Variant::A0Regular,
            VariantArg::A0General => Variant::A0General,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Coefficient,
    RootBased,
}

impl From<ModeArg> for DivisorMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Coefficient => DivisorMode::Coefficient,
            ModeArg::RootBased => DivisorMode::RootBased,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscArg {
    /// Friendly when p_n(0) ≠ 0, general otherwise.
    Auto,
    Integral,
    Friendly,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Settings shared by every job of one invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub terms: usize,
    pub precision: usize,
    pub variant: VariantArg,
    pub divisor_mode: ModeArg,
    pub disc_formula: DiscArg,
    pub squarefree: bool,
    pub prime_bound: u64,
}

/// One polynomial with its coefficient field.
#[derive(Clone, Debug)]
pub struct Job {
    pub line: usize,
    pub polynomial: String,
    pub field: Option<String>,
}

/// A job whose inputs have been read.
pub struct Prepared {
    pub p: BiPoly,
    pub field: Arc<NumberField>,
    /// The polynomial was replaced by its w-squarefree part.
    pub reduced: bool,
}

/// Reads the jobs of a batch file: one polynomial per line, with `field: <modulus>` lines
/// applying to every later polynomial. Blank lines and `#` comments are skipped.
pub fn read_batch(path: &str, default_field: Option<&str>) -> std::io::Result<Vec<Job>> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    let mut field = default_field.map(str::to_string);
    let mut jobs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field:") {
            let rest = rest.trim();
            field = if rest.is_empty() || rest == "x" || rest == "Q" { None } else { Some(rest.to_string()) };
            continue;
        }
        jobs.push(Job { line: i + 1, polynomial: line.to_string(), field: field.clone() });
    }
    Ok(jobs)
}

pub fn prepare(job: &Job, settings: &Settings) -> Result<Prepared, Error> {
    let p = parse_bipoly(&job.polynomial)?;
    let field = match &job.field {
        Some(text) => NumberField::with_precision(&parse_unipoly(text, 'x')?, settings.precision)?,
        None => NumberField::with_precision(&eisenkit::UniPoly::x(), settings.precision)?,
    };
    if p.is_zero() || p.deg_w() == 0 {
        return Err(Error::Domain("the polynomial must have positive degree in w".into()));
    }
    let separable = is_w_separable(&p)?;
    if separable {
        return Ok(Prepared { p, field: Arc::new(field), reduced: false });
    }
    if !settings.squarefree {
        return Err(Error::NotSeparable);
    }
    Ok(Prepared { p: squarefree_part_w(&p)?, field: Arc::new(field), reduced: true })
}
