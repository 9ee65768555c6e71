//! Command-line front end for `planeval`.
//!
//! [`run`] maps a parsed [`Cli`] to the bytes written on success or to a
//! [`CliError`] carrying the exit code: `2` for input errors, `3` for
//! computations that are not supported (such as the Iitaka boundary case over
//! a prime field).

use clap::{Args, Parser, Subcommand, ValueEnum};
use planeval::germ::{
    poly_valuation, realize, realize_with, Direction, Field, Poly2, RealizedConfiguration, WitnessMode, WitnessOutcome,
};
use planeval::report::{
    analyze, decide, export_dot, family_entry, parse_config, render_text, ConfigDoc, EvalReport, FamilyReport, Num,
    Report, WitnessDoc,
};
use planeval::valuation::Configuration;
use planeval::Error;
use rayon::prelude::*;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "planeval", version, about = "Plane divisorial valuations and their surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args, Clone)]
pub struct Options {
    /// Seed for generic choices in realizations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Coefficient field: `rationals` or `prime:p`.
    #[arg(long, global = true, default_value = "rationals")]
    pub field: String,
    /// Largest degree tried by witness searches (default `2 d_m`).
    #[arg(long, global = true)]
    pub budget: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Positive,
    Zero,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check configuration files.
    Validate { inputs: Vec<PathBuf> },
    /// Invariants, proximities and the D_i family.
    Analyze { inputs: Vec<PathBuf> },
    /// Invariants plus all verdicts with certificates.
    Decide { inputs: Vec<PathBuf> },
    /// Evaluate a polynomial in x, y or a germ in u, v, or search for a witness.
    Eval {
        input: PathBuf,
        #[arg(long, conflicts_with_all = ["germ", "witness"])]
        poly: Option<String>,
        #[arg(long, conflicts_with = "witness")]
        germ: Option<String>,
        #[arg(long, value_enum)]
        witness: Option<Mode>,
        /// Comma-separated directions for the free points p_2, ...: `c`, `p/q` or `inf`.
        #[arg(long)]
        directions: Option<String>,
    },
    /// Members of the two-parameter family for ranges of a and r.
    Family {
        #[arg(long)]
        a: String,
        #[arg(long)]
        r: String,
    },
    /// Like `family`, with r optionally given as a span above a.
    Sweep {
        #[arg(long)]
        a: String,
        #[arg(long, conflicts_with = "r_span")]
        r: Option<String>,
        /// Take r in a..=a+K.
        #[arg(long)]
        r_span: Option<u64>,
    },
    /// Dual graph in DOT.
    ExportDot { input: PathBuf },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::FieldTooSmall(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn at(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Configuration, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| at(path, e))?;
    parse_config(&text).map_err(|e| match CliError::from(e) {
        CliError::Input(msg) => at(path, msg),
        other => other,
    })
}

/// `lo..hi` (inclusive) or a single number. `lo > hi` is empty.
pub fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<u64>, CliError> {
    let bad = || CliError::Input(format!("bad range '{text}', expected N or LO..HI"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match text.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = num(text)?;
            Ok(n..=n)
        }
    }
}

fn need_inputs(inputs: &[PathBuf]) -> Result<(), CliError> {
    if inputs.is_empty() {
        return Err(CliError::Input("no input files".into()));
    }
    Ok(())
}

/// Runs every input in parallel and concatenates outputs in input order.
fn each<F>(inputs: &[PathBuf], f: F) -> Result<String, CliError>
where
    F: Fn(&Path) -> Result<String, CliError> + Sync,
{
    need_inputs(inputs)?;
    let parts: Vec<Result<String, CliError>> = inputs.par_iter().map(|p| f(p)).collect();
    let mut out = String::new();
    for part in parts {
        out.push_str(&part?);
    }
    Ok(out)
}

fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Structured => report.to_json(),
        Format::Text => render_text(report),
    }
}

fn parse_directions(text: &str) -> Result<Vec<Direction>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|d| d.parse::<Direction>().map_err(CliError::from)).collect()
}

fn eval(
    config: &Configuration,
    options: &Options,
    field: Field,
    poly: Option<&str>,
    germ: Option<&str>,
    witness: Option<Mode>,
    directions: Option<&str>,
) -> Result<EvalReport, CliError> {
    let target = match (poly, germ, witness) {
        (Some(_), None, None) => "polynomial",
        (None, Some(_), None) => "germ",
        (None, None, Some(_)) => "witness",
        _ => return Err(CliError::Input("eval needs exactly one of --poly, --germ, --witness".into())),
    };
    let parsed_poly = poly.map(|p| Poly2::parse(p, ('x', 'y'))).transpose()?;
    let parsed_germ = germ.map(|g| Poly2::parse(g, ('u', 'v'))).transpose()?;
    let (real, seed): (RealizedConfiguration, Option<u64>) = match directions {
        Some(d) => (realize_with(config, field, &parse_directions(d)?)?, None),
        None => (realize(config, field, options.seed)?, Some(options.seed)),
    };
    let mut report = EvalReport {
        configuration: ConfigDoc::from_config(config),
        field: field.to_string(),
        seed,
        directions: real.directions().iter().map(|d| d.to_string()).collect(),
        target: target.to_string(),
        input: poly.or(germ).map(str::to_string),
        value: None,
        witness: None,
    };
    if let Some(f) = parsed_poly {
        report.value = Some(poly_valuation(&real, &f)?.into());
    }
    if let Some(h) = parsed_germ {
        report.value = Some(real.germ_valuation(&h)?.into());
    }
    if let Some(mode) = witness {
        let (mode, name) = match mode {
            Mode::Positive => (WitnessMode::Positive, "positive"),
            Mode::Zero => (WitnessMode::Zero, "zero"),
        };
        let doc = match planeval::germ::witness_search(&real, mode, options.budget)? {
            WitnessOutcome::Found { f, value } => WitnessDoc {
                mode: name.into(),
                budget: options.budget.unwrap_or_else(|| default_budget(config)),
                f: Some(f.to_string()),
                value: Some(Num(value)),
            },
            WitnessOutcome::NotFound { budget } => WitnessDoc { mode: name.into(), budget, f: None, value: None },
        };
        report.witness = Some(doc);
    }
    Ok(report)
}

fn default_budget(config: &Configuration) -> u32 {
    use num_traits::ToPrimitive;
    let d_m = planeval::picard::d_family(config).d_m().to_u32().unwrap_or(u32::MAX);
    d_m.saturating_mul(2).max(1)
}

fn eval_text(r: &EvalReport) -> String {
    let mut out = format!("field: {}\n", r.field);
    if let Some(seed) = r.seed {
        out.push_str(&format!("seed: {seed}\n"));
    }
    out.push_str(&format!("directions: [{}]\n", r.directions.join(", ")));
    if let (Some(input), Some(value)) = (&r.input, &r.value) {
        out.push_str(&format!("value of {input}: {value}\n"));
    }
    if let Some(w) = &r.witness {
        match (&w.f, &w.value) {
            (Some(f), Some(v)) => out.push_str(&format!("{} witness: {f} (value {v})\n", w.mode)),
            _ => out.push_str(&format!("no {} witness up to degree {}\n", w.mode, w.budget)),
        }
    }
    out
}

fn family_text(f: &FamilyReport) -> String {
    let mut out = String::new();
    for m in &f.members {
        let v = m.report.verdicts.as_ref().expect("decided");
        out.push_str(&format!(
            "a = {}, r = {}: beta_bar = ({}), nonpositive = {}, negative = {}, cox = {}, anticanonical -inf = {}, delta obstruction = {}\n",
            m.a,
            m.r,
            m.report.invariants.beta_bar.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", "),
            v.nonpositive,
            v.negative,
            v.cox_finitely_generated,
            v.anticanonical_minus_infinity,
            m.delta_obstruction
        ));
    }
    for s in &f.skipped {
        out.push_str(&format!("a = {}, r = {}: skipped, {}\n", s.a, s.r, s.reason));
    }
    out
}

fn family(pairs: Vec<(u64, u64)>, format: Format) -> String {
    let results: Vec<_> = pairs.into_par_iter().map(|(a, r)| family_entry(a, r)).collect();
    let mut report = FamilyReport::default();
    for res in results {
        match res {
            Ok(m) => report.members.push(m),
            Err(s) => report.skipped.push(s),
        }
    }
    match format {
        Format::Structured => report.to_json(),
        Format::Text => family_text(&report),
    }
}

/// Executes a command and returns its output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let options = &cli.options;
    let field: Field = options.field.parse().map_err(|e: Error| CliError::Input(format!("--field: {e}")))?;
    let format = options.format;
    match &cli.command {
        Command::Validate { inputs } => each(inputs, |p| {
            let c = load(p)?;
            Ok(match format {
                Format::Structured => planeval::report::emit_config(&c),
                Format::Text => format!("{}: valid, m = {}, s = {}\n", p.display(), c.m(), c.s()),
            })
        }),
        Command::Analyze { inputs } => each(inputs, |p| Ok(emit_report(&analyze(&load(p)?), format))),
        Command::Decide { inputs } => each(inputs, |p| Ok(emit_report(&decide(&load(p)?, &field)?, format))),
        Command::Eval { input, poly, germ, witness, directions } => {
            let config = load(input)?;
            let report =
                eval(&config, options, field, poly.as_deref(), germ.as_deref(), *witness, directions.as_deref())?;
            Ok(match format {
                Format::Structured => report.to_json(),
                Format::Text => eval_text(&report),
            })
        }
        Command::Family { a, r } => {
            let (a, r) = (parse_range(a)?, parse_range(r)?);
            let pairs = a.flat_map(|a| r.clone().map(move |r| (a, r))).collect();
            Ok(family(pairs, format))
        }
        Command::Sweep { a, r, r_span } => {
            let a = parse_range(a)?;
            let pairs: Vec<(u64, u64)> = match (r, r_span) {
                (Some(r), None) => {
                    let r = parse_range(r)?;
                    a.flat_map(|a| r.clone().map(move |r| (a, r))).collect()
                }
                (None, Some(k)) => a.flat_map(|a| (a..=a.saturating_add(*k)).map(move |r| (a, r))).collect(),
                _ => return Err(CliError::Input("sweep needs --r or --r-span".into())),
            };
            Ok(family(pairs, format))
        }
        Command::ExportDot { input } => Ok(export_dot(&load(input)?)),
    }
}
