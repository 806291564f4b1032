//! The `hypermod` command-line tool.
//!
//! Exit codes: 0 on success, 1 on invalid input (usage, syntax, schema,
//! validation or a failed precondition), 2 when a degree exceeds the
//! monomial limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cohomology::{betti_table, BettiOptions, BettiTable, CohomologyError, DEFAULT_MAX_MONOMIALS};
use crate::grca::GradedAlgebra;
use crate::haefliger::{build_section_cdga, HaefligerError};
use crate::hrr::hilbert_polynomial;
use crate::ranges::{self, RangeReport};
use crate::scalar::format_rational;
use crate::stable::{compare_stable, grw_series, stable_moduli_series, ComparisonReport, PoincareSeries, StableError};
use crate::variety::{builtin, parse_element, parse_variety_file, Builtin, ParseError};
use crate::{CdgaPresentation, Rational, VarietyData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

/// Environment variable overriding the per-degree monomial limit.
pub const MAX_MONOMIALS_VAR: &str = "HYPERMOD_MAX_MONOMIALS";

#[derive(Parser, Debug)]
#[command(name = "hypermod", version, about = "Rational models of section spaces and moduli of hypersurfaces")]
pub struct Cli {
    /// Output format: human-readable text or one JSON object per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Naming {
    /// Degree names for the torus, `w{i}_{label}` otherwise.
    Auto,
    Generic,
    Degree,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Variety description file (JSON).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Builtin variety: torus, pN, curveG, abelianG or product:A,B.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct VarietyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Divisor class, e.g. `3u` or `2 h1 + h2`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a variety description and list every violation.
    Validate(VarietyArgs),
    /// Print the CDGA model of the section space.
    Cdga {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long, value_enum, default_value_t = Naming::Auto)]
        names: Naming,
    },
    /// Betti numbers of the CDGA model.
    Betti {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        /// Also print representative cocycles.
        #[arg(long)]
        representatives: bool,
    },
    /// Jet-ampleness bound and homology range.
    Range(RangeArgs),
    /// Poincaré series of the stable cohomology.
    StableSeries {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        /// Include the degree-one generators from H^{2n-1}.
        #[arg(long)]
        grw: bool,
    },
    /// Compare model Betti numbers with the stable series.
    Compare {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Jet-ampleness bound; inferred for curves and projective spaces.
        #[arg(long, allow_hyphen_values = true)]
        jet_bound: Option<i64>,
        /// Uncertified degrees to show beyond the range.
        #[arg(long, default_value_t = 0)]
        extra: u32,
    },
    /// Hilbert polynomial of a line bundle by Riemann–Roch.
    Hilbert {
        #[command(flatten)]
        variety: VarietyArgs,
        /// First Chern class of the bundle; defaults to alpha.
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct RangeArgs {
    #[arg(long, requires = "degree")]
    pub curve_genus: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    /// Intersection numbers with the torus-invariant curves, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub toric: Option<Vec<i64>>,
    #[arg(long, allow_hyphen_values = true)]
    pub jet_bound: Option<i64>,
    /// Jet ampleness of L, combined with --k for L^k.
    #[arg(long, requires = "k")]
    pub power: Option<i64>,
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub degree: u32,
    pub differential: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdgaRecord {
    pub variety: String,
    pub alpha: String,
    pub generators: Vec<GeneratorRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub variety: String,
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRecord {
    pub variety: String,
    pub c1: String,
    /// Coefficients of `m^0, m^1, …` as `p/q` strings.
    pub coefficients: Vec<String>,
    pub polynomial: String,
    pub integer_valued: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub message: String,
    pub exit_code: i32,
}

/// One line of machine-readable output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Validation(ValidationRecord),
    Cdga(CdgaRecord),
    BettiTable(BettiTable),
    RangeReport(RangeReport),
    PoincareSeries(PoincareSeries),
    Comparison(ComparisonReport),
    Hilbert(HilbertRecord),
    Error(ErrorRecord),
}

impl Record {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        let code = match e {
            CohomologyError::ResourceLimit { .. } => EXIT_RESOURCE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<HaefligerError> for Failure {
    fn from(e: HaefligerError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<StableError> for Failure {
    fn from(e: StableError) -> Self {
        match e {
            StableError::Cohomology(c) => c.into(),
            other => Failure::invalid(other.to_string()),
        }
    }
}

fn max_monomials() -> Result<u64, Failure> {
    match std::env::var(MAX_MONOMIALS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::invalid(format!("{MAX_MONOMIALS_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_MONOMIALS),
    }
}

fn betti_options(representatives: bool) -> Result<BettiOptions, Failure> {
    Ok(BettiOptions {
        max_monomials: max_monomials()?,
        parallel: true,
        representatives,
    })
}

/// Loads without validating, so `validate` can report violations itself.
fn load_raw(args: &VarietyArgs) -> Result<VarietyData, Failure> {
    let mut v: VarietyData = match (&args.source.input, &args.source.builtin) {
        (Some(path), _) => parse_variety_file(path)?,
        (None, Some(name)) => builtin(name).map_err(|e| Failure::invalid(e.to_string()))?,
        (None, None) => return Err(Failure::invalid("one of --input or --builtin is required")),
    };
    if let Some(expr) = &args.alpha {
        let alpha = parse_element(&v.ring, expr).map_err(|e| Failure::invalid(e.to_string()))?;
        v = v.with_alpha(alpha);
    }
    Ok(v)
}

fn load(args: &VarietyArgs) -> Result<VarietyData, Failure> {
    let v = load_raw(args)?;
    let violations = v.validate();
    if violations.is_empty() {
        Ok(v)
    } else {
        Err(ParseError::Validation(violations).into())
    }
}

fn apply_naming(v: &VarietyData, cdga: CdgaPresentation, naming: Naming) -> Result<CdgaPresentation, Failure> {
    let degree = match naming {
        Naming::Auto => v.name == "torus",
        Naming::Generic => false,
        Naming::Degree => true,
    };
    if degree {
        Ok(cdga.with_degree_names()?)
    } else {
        Ok(cdga)
    }
}

struct Output<'a> {
    format: Format,
    out: &'a mut (dyn Write + 'a),
}

impl Output<'_> {
    fn emit(&mut self, record: Record, text: impl FnOnce() -> String) -> std::io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", record.to_json_line()),
            Format::Text => writeln!(self.out, "{}", text()),
        }
    }
}

fn render_betti(table: &BettiTable) -> String {
    let degrees: Vec<String> = (0..=table.max_degree).map(|d| d.to_string()).collect();
    let betti: Vec<String> = table.betti.iter().map(u64::to_string).collect();
    let mut s = format!("degree: {}\nbetti:  {}", degrees.join(" "), betti.join(" "));
    if let Some(reps) = &table.representatives {
        for (d, classes) in reps.iter().enumerate() {
            for c in classes {
                s.push_str(&format!("\n  H^{d}: [{c}]"));
            }
        }
    }
    s
}

fn range_report(args: &RangeArgs) -> Result<RangeReport, Failure> {
    let err = |e: ranges::RangeError| Failure::invalid(e.to_string());
    match (args.curve_genus, &args.toric, args.jet_bound, args.power) {
        (Some(g), None, None, None) => Ok(ranges::curve_report(g, args.degree.unwrap_or_default())),
        (None, Some(list), None, None) => ranges::toric_report(list).map_err(err),
        (None, None, Some(d), None) => Ok(ranges::user_report(d)),
        (None, None, None, Some(dl)) => ranges::power_report(dl, args.k.unwrap_or(1)).map_err(err),
        _ => Err(Failure::invalid(
            "give exactly one of --curve-genus/--degree, --toric, --jet-bound or --power/--k",
        )),
    }
}

/// Jet-ampleness bound for `compare`: exact for curves, toric for
/// projective spaces, otherwise it must be supplied.
fn infer_bound(args: &VarietyArgs, v: &VarietyData, explicit: Option<i64>) -> Result<RangeReport, Failure> {
    if let Some(d) = explicit {
        return Ok(ranges::user_report(d));
    }
    let integral = |e| v.ring.integrate(e).map_err(|e| Failure::invalid(e.to_string()));
    let degree_of = |value: Rational| {
        if value.is_integer() {
            Ok(value.to_integer().try_into().unwrap_or(i64::MAX))
        } else {
            Err(Failure::invalid("alpha has non-integral degree"))
        }
    };
    match args.source.builtin.as_deref().map(Builtin::parse) {
        Some(Ok(Builtin::Curve(g))) => Ok(ranges::curve_report(g, degree_of(integral(&v.alpha)?)?)),
        Some(Ok(Builtin::Torus)) => Ok(ranges::curve_report(1, degree_of(integral(&v.alpha)?)?)),
        Some(Ok(Builtin::ProjectiveSpace(n))) => {
            // every invariant curve is a line: α · line = ∫ α h^{n−1}
            let h = v.polarization.clone().expect("projective space has a polarization");
            let mut line = v.ring.unit();
            for _ in 1..n {
                line = v.ring.mul(&line, &h)
                    .map_err(|e| Failure::invalid(e.to_string()))?;
            }
            let product = v.ring.mul(&line, &v.alpha)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let d = degree_of(integral(&product)?)?;
            ranges::toric_report(&[d]).map_err(|e| Failure::invalid(e.to_string()))
        }
        _ => Err(Failure::invalid(
            "no jet-ampleness bound is known for this variety; pass --jet-bound",
        )),
    }
}

fn execute(cli: &Cli, out: &mut Output<'_>) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::invalid(format!("write failed: {e}"));
    match &cli.command {
        Command::Validate(args) => {
            let v = load_raw(args)?;
            let violations: Vec<String> = v.validate().iter().map(ToString::to_string).collect();
            let valid = violations.is_empty();
            let record = ValidationRecord {
                variety: v.name.clone(),
                valid,
                violations: violations.clone(),
            };
            out.emit(Record::Validation(record), || {
                if valid {
                    format!("{}: valid", v.name)
                } else {
                    let mut s = format!("{}: {} violation(s)", v.name, violations.len());
                    for line in &violations {
                        s.push_str("\n  ");
                        s.push_str(line);
                    }
                    s
                }
            })
            .map_err(io)?;
            Ok(if valid { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Cdga { variety, names } => {
            let v = load(variety)?;
            let cdga = apply_naming(&v, build_section_cdga(&v)?, *names)?;
            let generators: Vec<GeneratorRecord> = cdga
                .algebra()
                .generators()
                .iter()
                .map(|g| GeneratorRecord {
                    name: g.name.clone(),
                    degree: g.degree,
                    differential: cdga.format_element(cdga.differential_of(g.id)),
                })
                .collect();
            let record = CdgaRecord {
                variety: v.name.clone(),
                alpha: v.format_element(&v.alpha),
                generators: generators.clone(),
            };
            out.emit(Record::Cdga(record), || {
                let mut s = format!("CDGA model for {}, alpha = {}", v.name, v.format_element(&v.alpha));
                s.push_str("\ngenerators:");
                for g in &generators {
                    s.push_str(&format!("\n  {} (degree {})", g.name, g.degree));
                }
                s.push_str("\ndifferentials:");
                for line in cdga.differential_lines() {
                    s.push_str("\n  ");
                    s.push_str(line.as_str());
                }
                s
            })
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Betti {
            variety,
            max_degree,
            representatives,
        } => {
            let v = load(variety)?;
            let cdga = build_section_cdga(&v)?;
            let cdga = apply_naming(&v, cdga, Naming::Auto)?;
            let table = betti_table(&cdga, *max_degree, betti_options(*representatives)?)?;
            let text = render_betti(&table);
            out.emit(Record::BettiTable(table), || text).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Range(args) => {
            let report = range_report(args)?;
            let text = report.to_string();
            out.emit(Record::RangeReport(report), || text).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::StableSeries {
            variety,
            max_degree,
            grw,
        } => {
            let v = load(variety)?;
            let series = if *grw {
                grw_series(&v, *max_degree)
            } else {
                stable_moduli_series(&v, *max_degree)
            };
            let text = series.to_string();
            out.emit(Record::PoincareSeries(series), || text).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Compare {
            variety,
            jet_bound,
            extra,
        } => {
            let v = load(variety)?;
            let bound = infer_bound(variety, &v, *jet_bound)?;
            let report = compare_stable(&v, bound.jet_bound, *extra, betti_options(false)?)?;
            let text = format!("{bound}\n{report}");
            let verdict = report.all_equal;
            if out.format == Format::Json {
                out.emit(Record::RangeReport(bound), String::new).map_err(io)?;
            }
            out.emit(Record::Comparison(report), || text).map_err(io)?;
            Ok(if verdict { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Hilbert { variety, c1 } => {
            let v = load(variety)?;
            let class = match c1 {
                Some(expr) => parse_element(&v.ring, expr).map_err(|e| Failure::invalid(e.to_string()))?,
                None => v.alpha.clone(),
            };
            let p = hilbert_polynomial(&v, &class, None).map_err(|e| Failure::invalid(e.to_string()))?;
            let record = HilbertRecord {
                variety: v.name.clone(),
                c1: v.format_element(&class),
                coefficients: p.coefficients().iter().map(format_rational).collect(),
                polynomial: p.to_string(),
                integer_valued: p.is_integer_valued(),
            };
            let text = format!(
                "P(m) = {}\ncoefficients (m^0, m^1, ...): {}\ninteger valued: {}",
                record.polynomial,
                record.coefficients.join(" "),
                if record.integer_valued { "yes" } else { "no" }
            );
            out.emit(Record::Hilbert(record), || text).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let format = cli.format;
    let mut output = Output { format, out };
    match execute(&cli, &mut output) {
        Ok(code) => code,
        Err(failure) => {
            if format == Format::Json {
                let record = Record::Error(ErrorRecord {
                    message: failure.message.clone(),
                    exit_code: failure.code,
                });
                let _ = writeln!(output.out, "{}", record.to_json_line());
            }
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
