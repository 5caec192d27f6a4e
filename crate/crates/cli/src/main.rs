//! `eisenkit`: expansion, Eisenstein bounds, verification and discriminant reports for
//! algebraic series given by `P(z, w) = 0`.

mod commands;
mod job;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eisenkit::poly::parse_bipoly;
use eisenkit::{Error, Rational};
use serde_json::{json, Value};

use job::{prepare, read_batch, DiscArg, Format, Job, ModeArg, Settings, VariantArg};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_UNRESOLVED: u8 = 4;
const EXIT_VIOLATION: u8 = 5;

#[derive(Parser)]
#[command(name = "eisenkit", version, about = "Explicit Eisenstein bounds for algebraic Puiseux series over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the branches of P(z, w) = 0 at z = 0.
    Expand(Common),
    /// Build the Eisenstein divisors and check their height bounds.
    Bounds(Common),
    /// Build the divisors and check every stored coefficient against them.
    Verify(Common),
    /// Compare the observed exceptional primes with the bound on their height.
    Exceptional(Common),
    /// Discriminant bounds for the fields generated by the branch coefficients.
    Disc {
        #[command(flatten)]
        common: Common,
        /// Which estimate to evaluate.
        #[arg(long, value_enum, default_value_t = DiscArg::Auto)]
        formula: DiscArg,
    },
    /// Check the auxiliary root, translation, resultant and Mahler inequalities.
    Lemmas {
        #[command(flatten)]
        common: Common,
        /// Translation amounts; may be repeated.
        #[arg(long = "alpha", value_name = "RATIONAL", default_values_t = ["1".to_string(), "-1".to_string(), "1/2".to_string(), "-3/2".to_string(), "2".to_string()])]
        alphas: Vec<String>,
    },
}

#[derive(Args)]
struct Common {
    /// The polynomial P(z, w), e.g. "z*w^2 - w + 1".
    polynomial: Option<String>,
    /// Read jobs from a file (one polynomial per line, `field: <modulus>` lines allowed; `-` for stdin).
    #[arg(long, short, value_name = "FILE", conflicts_with = "polynomial")]
    input: Option<String>,
    /// Number of series terms K.
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u64).range(1..))]
    terms: u64,
    /// Working precision in bits for approximate quantities.
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u64).range(64..))]
    precision: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Auto)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Coefficient)]
    divisor_mode: ModeArg,
    /// Replace a non-separable P by its w-squarefree part instead of failing.
    #[arg(long)]
    squarefree: bool,
    /// Monic integer modulus g(x) of the coefficient field Q[x]/(g).
    #[arg(long, value_name = "MODULUS")]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest n for the prime-sum check.
    #[arg(long, env = "EISENKIT_PRIME_BOUND", default_value_t = 10_000)]
    prime_bound: u64,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Precondition(_)
        | Error::NotSeparable
        | Error::Domain(_)
        | Error::Unsupported(_)
        | Error::ZeroDivisor(_) => EXIT_PRECONDITION,
        Error::Unresolved { .. } | Error::Numerical(_) => EXIT_UNRESOLVED,
        Error::Internal(_) => EXIT_VIOLATION,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Domain(_) => "domain",
        Error::Precondition(_) => "precondition",
        Error::NotSeparable => "not_separable",
        Error::Unresolved { .. } => "unresolved",
        Error::Numerical(_) => "numerical",
        Error::ZeroDivisor(_) => "zero_divisor",
        Error::Unsupported(_) => "unsupported",
        Error::Internal(_) => "internal",
    }
}

fn hint(e: &Error) -> Option<&'static str> {
    match e {
        Error::Unresolved { .. } => Some("re-run with a larger --terms"),
        Error::NotSeparable => Some("pass --squarefree to work with the w-squarefree part"),
        _ => None,
    }
}

struct JobResult {
    code: u8,
    json: Value,
    text: String,
}

fn run_job(name: &str, job: &Job, settings: &Settings, extra: &Extra) -> JobResult {
    let mut head = json!({
        "command": name,
        "line": job.line,
        "polynomial": job.polynomial,
        "field": job.field,
    });
    let fail = |head: &mut Value, code: u8, e: &Error, stage: &str| {
        head["status"] = json!("error");
        head["exit_code"] = json!(code);
        head["error"] = json!({ "kind": error_kind(e), "stage": stage, "message": e.to_string(), "hint": hint(e) });
        let mut text = format!("error: {e}");
        if let Some(h) = hint(e) {
            text.push_str(&format!(" ({h})"));
        }
        JobResult { code, json: head.clone(), text: text + "\n" }
    };
    let prep = match prepare(job, settings) {
        Ok(p) => p,
        // malformed polynomials and field declarations are input errors
        Err(e @ (Error::Parse(_) | Error::Domain(_))) => return fail(&mut head, EXIT_PARSE, &e, "input"),
        Err(e) => return fail(&mut head, exit_code(&e), &e, "input"),
    };
    if prep.reduced {
        head["squarefree_part"] = json!(prep.p.to_string());
    }
    let outcome = match name {
        "expand" => commands::expand(&prep, settings),
        "bounds" => commands::bounds(&prep, settings),
        "verify" => commands::verify(&prep, settings),
        "exceptional" => commands::exceptional(&prep, settings),
        "disc" => commands::disc(&prep, settings),
        "lemmas" => commands::lemmas(&prep, settings, &extra.alphas),
        _ => unreachable!("unknown command {name}"),
    };
    match outcome {
        Ok(o) => {
            let code = if o.violation { EXIT_VIOLATION } else { 0 };
            head["status"] = json!(if o.violation { "violation" } else { "ok" });
            head["exit_code"] = json!(code);
            head["result"] = o.json;
            let mut text = format!("P = {}", prep.p);
            if prep.reduced {
                text.push_str(" (w-squarefree part)");
            }
            text.push_str(&format!(" over {}\n", commands::field_name(&prep)));
            text.push_str(&o.text);
            JobResult { code, json: head, text }
        }
        Err(e) => fail(&mut head, exit_code(&e), &e, "compute"),
    }
}

#[derive(Default)]
struct Extra {
    alphas: Vec<Rational>,
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let p = parse_bipoly(s)?;
    if p.deg_z() > 0 || p.deg_w() > 0 {
        return Err(Error::Domain(format!("`{s}` is not a rational number")));
    }
    Ok(p.coeff(0, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, formula, alphas) = match cli.command {
        Command::Expand(c) => ("expand", c, DiscArg::Auto, Vec::new()),
        Command::Bounds(c) => ("bounds", c, DiscArg::Auto, Vec::new()),
        Command::Verify(c) => ("verify", c, DiscArg::Auto, Vec::new()),
        Command::Exceptional(c) => ("exceptional", c, DiscArg::Auto, Vec::new()),
        Command::Disc { common, formula } => ("disc", common, formula, Vec::new()),
        Command::Lemmas { common, alphas } => ("lemmas", common, DiscArg::Auto, alphas),
    };
    let settings = Settings {
        terms: common.terms as usize,
        precision: common.precision as usize,
        variant: common.variant,
        divisor_mode: common.divisor_mode,
        disc_formula: formula,
        squarefree: common.squarefree,
        prime_bound: common.prime_bound,
    };
    let mut extra = Extra::default();
    for a in &alphas {
        match parse_rational(a) {
            Ok(q) => extra.alphas.push(q),
            Err(e) => {
                eprintln!("error: --alpha {a}: {e}");
                return ExitCode::from(EXIT_PARSE);
            }
        }
    }
    let jobs = match (&common.polynomial, &common.input) {
        (Some(p), _) => vec![Job { line: 0, polynomial: p.clone(), field: common.field.clone() }],
        (None, Some(path)) => match read_batch(path, common.field.as_deref()) {
            Ok(j) => j,
            Err(e) => {
                eprintln!("error: cannot read {path}: {e}");
                return ExitCode::from(EXIT_PARSE);
            }
        },
        (None, None) => {
            eprintln!("error: give a polynomial or --input FILE");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let results: Vec<JobResult> = jobs.iter().map(|j| run_job(name, j, &settings, &extra)).collect();
    let code = results.iter().map(|r| r.code).max().unwrap_or(0);
    let mut out = std::io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    match common.format {
        Format::Json => {
            let doc = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "settings": settings,
                "exit_code": code,
                "jobs": results.iter().map(|r| r.json.clone()).collect::<Vec<_>>(),
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Text => {
            for (i, r) in results.iter().enumerate() {
                if i > 0 {
                    let _ = writeln!(out);
                }
                if r.code == 0 || r.code == EXIT_VIOLATION {
                    let _ = write!(out, "{}", r.text);
                } else {
                    if jobs.len() > 1 {
                        eprint!("line {}: ", jobs[i].line);
                    }
                    eprint!("{}", r.text);
                }
            }
        }
    }
    ExitCode::from(code)
}
