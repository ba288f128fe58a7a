//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for user errors (bad flags, bad input, violated
//! hypotheses), 2 when an internal invariant breaks.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::bound::{
    buium_curve_bound, complete_intersection_bound, theorem_b_bound, BoundReport,
    SegreDegreeVector,
};
use crate::chow::{ci_cotangent_segre, AmbientSpec, ChernSeries, IntersectionTable};
use crate::delta::{delta_iter, DeltaContext};
use crate::error::{Error, Result};
use crate::jet::{jet_presentation, special_fiber};
use crate::poly::{parse_polynomial, Polynomial, DEFAULT_TERM_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "jetcalc",
    version,
    about = "p-derivations, arithmetic jet presentations, Segre series and explicit torsion bounds"
)]
pub struct Cli {
    /// Output format. Defaults to text for `delta` and `segre`, JSON for `jet` and `bound`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the p-derivation r times to a polynomial.
    Delta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        iter: u32,
        #[arg(long, default_value_t = DEFAULT_TERM_LIMIT)]
        term_limit: usize,
    },
    /// Build the order-r jet algebra presentation of the ideal in FILE.
    Jet {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        order: u32,
        /// One polynomial per line; `#` starts a comment.
        #[arg(long)]
        gens: PathBuf,
        /// Comma-separated base variables (default: those used by the generators).
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        /// Reduce the presentation modulo p.
        #[arg(long)]
        special_fiber: bool,
        #[arg(long, default_value_t = DEFAULT_TERM_LIMIT)]
        term_limit: usize,
    },
    /// Segre series computations.
    Segre {
        #[command(subcommand)]
        kind: SegreCommand,
    },
    /// Explicit torsion bounds.
    Bound {
        #[command(subcommand)]
        kind: BoundCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum SegreCommand {
    /// Segre series of the Frobenius-pulled-back cotangent bundle of a
    /// complete intersection of c hypersurfaces h1..hc in dimension n.
    Ci {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    /// Curve of genus g in its Jacobian.
    Curve {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        genus: u32,
    },
    /// Complete intersection described by an intersection-table config file.
    Ci {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        config: PathBuf,
    },
    /// Explicit Segre degrees N0,...,Nd.
    General {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        segre: Vec<String>,
    },
}

/// Parses a generator file: one polynomial per line, `#` comments, blank
/// lines ignored. Syntax errors report the line within the file.
pub fn parse_generator_file(text: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let poly = parse_polynomial(line).map_err(|e| match e {
            Error::Syntax {
                column,
                message,
                expected,
                ..
            } => Error::Syntax {
                line: i + 1,
                column,
                message,
                expected,
            },
            other => other,
        })?;
        out.push(poly);
    }
    Ok(out)
}

/// Configuration for `bound ci`: an intersection table plus
/// `{"p": .., "hypersurfaces": [..]}`.
#[derive(Debug, Clone)]
pub struct CiConfig {
    pub p: Option<u64>,
    pub hypersurfaces: Vec<String>,
    pub table: IntersectionTable,
}

impl CiConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::invalid_input(format!("config JSON: {e}")))?;
        let p = match v.get("p") {
            None | Some(Value::Null) => None,
            Some(x) => Some(
                x.as_u64()
                    .ok_or_else(|| Error::invalid_input("`p` must be a positive integer"))?,
            ),
        };
        let hypersurfaces = v
            .get("hypersurfaces")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid_input("`hypersurfaces` must be an array of symbols"))?
            .iter()
            .map(|h| {
                h.as_str().map(str::to_owned).ok_or_else(|| {
                    Error::invalid_input("`hypersurfaces` must be an array of symbols")
                })
            })
            .collect::<Result<_>>()?;
        let table = IntersectionTable::from_json_value(&v)?;
        Ok(CiConfig {
            p,
            hypersurfaces,
            table,
        })
    }

    pub fn bound(&self, p: Option<u64>) -> Result<BoundReport> {
        let p = match (p, self.p) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::invalid_input(format!(
                    "--p {a} conflicts with \"p\": {b} in the config"
                )))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => {
                return Err(Error::invalid_input(
                    "no prime given; pass --p or set \"p\" in the config",
                ))
            }
        };
        complete_intersection_bound(p, self.table.ambient(), &self.hypersurfaces, &self.table)
    }
}

#[derive(Serialize)]
struct DeltaJson<'a> {
    p: u64,
    iter: u32,
    input: String,
    result: &'a str,
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    n: u32,
    c: u32,
    p: u64,
    symbols: &'a [String],
    truncation: u32,
    components: Vec<String>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid_input(format!("cannot read {}: {e}", path.display())))
}

fn series_text(series: &ChernSeries) -> String {
    series
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("s_{i} = {c}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Delta {
            p,
            expr,
            iter,
            term_limit,
        } => {
            let ctx = DeltaContext::new(*p)?.with_term_limit(*term_limit);
            let f = parse_polynomial(expr)?;
            let out = delta_iter(&f, &ctx, *iter)?.to_string();
            Ok(match cli.format.unwrap_or(Format::Text) {
                Format::Text => out,
                Format::Json => serde_json::to_string(&DeltaJson {
                    p: *p,
                    iter: *iter,
                    input: f.to_string(),
                    result: &out,
                })
                .expect("serializes"),
            })
        }
        Command::Jet {
            p,
            order,
            gens,
            vars,
            special_fiber: reduce,
            term_limit,
        } => {
            let mut ctx = DeltaContext::new(*p)?.with_term_limit(*term_limit);
            if !vars.is_empty() {
                ctx = ctx.with_base_vars(vars)?;
            }
            let generators = parse_generator_file(&read_file(gens)?)?;
            let pres = jet_presentation(&generators, &ctx, *order)?;
            let (json, levels) = if *reduce {
                let sf = special_fiber(&pres);
                (sf.to_json(), sf.levels().to_vec())
            } else {
                (pres.to_json(), pres.levels().to_vec())
            };
            Ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => json,
                Format::Text => {
                    let mut lines = vec![format!(
                        "p = {}, r = {}, base variables: {}",
                        p,
                        order,
                        pres.base_vars().join(", ")
                    )];
                    for (k, level) in levels.iter().enumerate() {
                        lines.push(format!("level {k}:"));
                        lines.extend(level.iter().map(|g| format!("  {g}")));
                    }
                    lines.join("\n")
                }
            })
        }
        Command::Segre {
            kind: SegreCommand::Ci { n, c, p },
        } => {
            crate::delta::validate_odd_prime(*p)?;
            let ambient = AmbientSpec::with_hypersurfaces(*n, *c)?;
            let hyps: Vec<String> = ambient.symbols()[1..].to_vec();
            let series = ci_cotangent_segre(&ambient, &hyps, *p)?;
            Ok(match cli.format.unwrap_or(Format::Text) {
                Format::Text => series_text(&series),
                Format::Json => serde_json::to_string(&SeriesJson {
                    n: *n,
                    c: *c,
                    p: *p,
                    symbols: ambient.symbols(),
                    truncation: series.truncation(),
                    components: series.components().iter().map(ToString::to_string).collect(),
                })
                .expect("serializes"),
            })
        }
        Command::Bound { kind } => {
            let report = match kind {
                BoundCommand::Curve { p, genus } => buium_curve_bound(*p, *genus)?,
                BoundCommand::Ci { p, config } => {
                    CiConfig::from_json(&read_file(config)?)?.bound(*p)?
                }
                BoundCommand::General { p, n, d, segre } => {
                    let entries = segre
                        .iter()
                        .map(|s| {
                            s.trim().parse::<BigInt>().map_err(|_| {
                                Error::invalid_input(format!("`{s}` is not an integer"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    theorem_b_bound(*p, *n, *d, &SegreDegreeVector::new(entries))?
                }
            };
            Ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json(),
                Format::Text => report.to_string(),
            })
        }
    }
}

fn report_error(err: &Error, format: Format, stderr: &mut dyn Write) {
    let _ = match format {
        Format::Text => writeln!(stderr, "error[{}]: {err}", err.code()),
        Format::Json => writeln!(
            stderr,
            "{}",
            serde_json::json!({"error": {"code": err.code(), "message": err.to_string()}})
        ),
    };
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USER
                }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = writeln!(stdout, "{out}");
            EXIT_OK
        }
        Err(err) => {
            report_error(&err, cli.format.unwrap_or(Format::Text), stderr);
            if err.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_USER
            }
        }
    }
}
