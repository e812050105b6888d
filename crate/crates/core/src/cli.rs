//! Command-line front end.
//!
//! [`run`] renders a command to a string so the binary only prints and maps
//! errors to exit codes with [`exit_code`].

use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adem::{self, default_cap};
use crate::chains::{verify_nilcond, ChainSpec};
use crate::error::{Error, ErrorKind, Result};
use crate::gamma::GradedGenerator;
use crate::sphere::{self, GradedVectorSpace};
use crate::words::{alpha_to_delta, delta_to_alpha, DeltaWord, ParsedWord, SourceDegree};

/// Exit status when a verification ran but did not hold.
pub const EXIT_CHECK_FAILED: i32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "hopcalc",
    version,
    about = "Mod-2 homotopy operations on simplicial commutative algebras"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Degree bound for commands that take one, when not given positionally.
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a δ-word (`d5 d4`) or α-word (`a1 a1 @3`).
    Rewrite {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// Convert between δ- and α-indexing at the source degree `@n`.
    Convert {
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Free generators δ_I(ι_n) of π_*S(n) up to a degree.
    Basis { n: u32, max: Option<u32> },
    /// Dimensions of π_t S(n) for t = 0..=max.
    Poincare { n: u32, max: Option<u32> },
    /// Bigraded E¹ page for W given as `{"generators":[{"name","degree"}]}`.
    E1 {
        /// JSON file, or `-` for stdin.
        input: String,
        s_max: u64,
        t_max: Option<u32>,
    },
    /// Least s with θ(s,t) δ_I = 0; `target` is an index `i` or a word `d8 d4 d2`.
    ThetaAnn {
        target: String,
        t: u32,
        /// Search bound for s, default t + 16.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Least r with γ₂^r(u) = 0 for the chain JSON's `element`.
    Nilpotence {
        /// JSON file, or `-` for stdin.
        input: String,
    },
    /// Checks ∂ϑ^r(u) = γ₂^r(∂u) for r = 1..=r_max.
    Nilcond {
        /// JSON file, or `-` for stdin.
        input: String,
        /// Symbol to start from.
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 6)]
        r_max: u32,
    },
}

/// Output of one command together with the exit status it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err.kind() {
        ErrorKind::Parse => 2,
        ErrorKind::Precondition => 3,
        ErrorKind::SearchCap => 4,
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))
    }
}

fn bound(positional: Option<u32>, global: Option<u32>) -> Result<u32> {
    positional.or(global).ok_or_else(|| {
        Error::precondition("a degree bound is required (positional or --max-degree)")
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn csv_out(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

fn word_indices(w: &DeltaWord) -> String {
    w.indices()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    let fmt = cli.format;
    let text = match &cli.command {
        Command::Rewrite { word } => {
            let input = word.join(" ");
            let parsed: ParsedWord = input.parse()?;
            let sum = adem::normalize(&parsed.to_delta()?);
            match fmt {
                OutputFormat::Table => format!("{sum}\n"),
                OutputFormat::Json => pretty(&json!({ "input": input, "terms": sum })),
                OutputFormat::Csv => csv_out(&["term"], sum.iter().map(|w| vec![word_indices(w)])),
            }
        }
        Command::Convert { word } => {
            let input = word.join(" ");
            let (delta, alpha) = match input.parse::<ParsedWord>()? {
                ParsedWord::Alpha(a, n) => (alpha_to_delta(&a, n)?, a),
                ParsedWord::Delta(d, Some(n)) => (d.clone(), delta_to_alpha(&d, n)?),
                ParsedWord::Delta(_, None) => {
                    return Err(Error::Parse("conversion needs a source degree `@n`".into()))
                }
            };
            match fmt {
                OutputFormat::Table => format!("{delta}\n{alpha}\n"),
                OutputFormat::Json => pretty(&json!({ "delta": delta, "alpha": alpha })),
                OutputFormat::Csv => csv_out(
                    &["delta", "alpha"],
                    [vec![delta.to_string(), alpha.to_string()]],
                ),
            }
        }
        Command::Basis { n, max } => {
            let n = SourceDegree::new(*n)?;
            let max = bound(*max, cli.max_degree)?;
            let gens = sphere::sphere_generators(n, max);
            match fmt {
                OutputFormat::Table => {
                    let words: Vec<String> = gens.iter().map(|g| g.word().tuple_string()).collect();
                    format!("{}\n", words.join(", "))
                }
                OutputFormat::Json => pretty(&Value::Array(
                    gens.iter()
                        .map(|g| json!({ "word": g.word(), "degree": g.degree() }))
                        .collect(),
                )),
                OutputFormat::Csv => csv_out(
                    &["word", "degree"],
                    gens.iter()
                        .map(|g| vec![word_indices(g.word()), g.degree().to_string()]),
                ),
            }
        }
        Command::Poincare { n, max } => {
            let n = SourceDegree::new(*n)?;
            let max = bound(*max, cli.max_degree)?;
            let series = sphere::sphere_poincare(n, max);
            match fmt {
                OutputFormat::Table => format!("{series}\n"),
                OutputFormat::Json => {
                    pretty(&json!({ "n": n.get(), "dimensions": series.coefficients() }))
                }
                OutputFormat::Csv => csv_out(
                    &["degree", "dim"],
                    series
                        .coefficients()
                        .iter()
                        .enumerate()
                        .map(|(t, d)| vec![t.to_string(), d.to_string()]),
                ),
            }
        }
        Command::E1 {
            input,
            s_max,
            t_max,
        } => {
            let space = GradedVectorSpace::from_json(&read_input(input, stdin)?)?;
            let t_max = bound(*t_max, cli.max_degree)?;
            let page = sphere::e1_page(&space, *s_max, t_max)?;
            let rows: Vec<(u64, u32, Vec<String>)> = page
                .entries()
                .map(|((s, t), basis)| (s, t, basis.iter().map(ToString::to_string).collect()))
                .collect();
            match fmt {
                OutputFormat::Table => {
                    let mut out = String::from("s t dim basis\n");
                    for (s, t, labels) in &rows {
                        out += &format!("{s} {t} {} {}\n", labels.len(), labels.join(", "));
                    }
                    out
                }
                OutputFormat::Json => pretty(&Value::Array(
                    rows.iter()
                        .map(|(s, t, labels)| json!({ "s": s, "t": t, "dim": labels.len(), "basis": labels }))
                        .collect(),
                )),
                OutputFormat::Csv => csv_out(
                    &["s", "t", "dim", "basis"],
                    rows.iter().map(|(s, t, labels)| {
                        vec![s.to_string(), t.to_string(), labels.len().to_string(), labels.join("; ")]
                    }),
                ),
            }
        }
        Command::ThetaAnn { target, t, cap } => {
            let cap = cap.unwrap_or_else(|| default_cap(*t));
            let s = match target.trim().parse::<u32>() {
                Ok(i) => adem::annihilation_order(i, *t, cap)?,
                Err(_) => {
                    let word = match target.parse::<ParsedWord>()? {
                        ParsedWord::Delta(w, _) => w,
                        ParsedWord::Alpha(..) => {
                            return Err(Error::Parse("expected a δ-word".into()))
                        }
                    };
                    adem::annihilation_order_word(&word, *t, cap)?
                }
            };
            match fmt {
                OutputFormat::Table => format!("{s}\n"),
                OutputFormat::Json => {
                    pretty(&json!({ "target": target, "t": t, "cap": cap, "s": s }))
                }
                OutputFormat::Csv => csv_out(
                    &["target", "t", "s"],
                    [vec![target.clone(), t.to_string(), s.to_string()]],
                ),
            }
        }
        Command::Nilpotence { input } => {
            let spec = ChainSpec::from_json(&read_input(input, stdin)?)?;
            let complex = spec.build()?;
            let u = spec.element(&complex)?;
            let r = complex.gamma2_nilpotence_order(&u)?;
            let element = complex.render(&u);
            match fmt {
                OutputFormat::Table => format!("{r}\n"),
                OutputFormat::Json => pretty(
                    &json!({ "element": element, "trunc": complex.ring().trunc(), "order": r }),
                ),
                OutputFormat::Csv => csv_out(&["element", "order"], [vec![element, r.to_string()]]),
            }
        }
        Command::Nilcond {
            input,
            symbol,
            r_max,
        } => {
            let spec = ChainSpec::from_json(&read_input(input, stdin)?)?;
            let complex = spec.build()?;
            let id = complex
                .symbol_id(symbol)
                .ok_or_else(|| Error::Parse(format!("unknown symbol `{symbol}`")))?;
            let report = verify_nilcond(&complex, id, *r_max)?;
            let text = match fmt {
                OutputFormat::Table => {
                    let mut out = String::new();
                    for step in &report.steps {
                        let verdict = if step.holds { "ok" } else { "FAILED" };
                        out += &format!("r={} {verdict}: {} = {}\n", step.r, step.lhs, step.rhs);
                    }
                    out
                }
                OutputFormat::Json => pretty(&serde_json::to_value(&report)?),
                OutputFormat::Csv => csv_out(
                    &["r", "holds", "lhs", "rhs"],
                    report.steps.iter().map(|s| {
                        vec![
                            s.r.to_string(),
                            s.holds.to_string(),
                            s.lhs.clone(),
                            s.rhs.clone(),
                        ]
                    }),
                ),
            };
            let status = if report.all_hold() {
                0
            } else {
                EXIT_CHECK_FAILED
            };
            return Ok(Outcome {
                text: ensure_newline(text),
                status,
            });
        }
    };
    Ok(Outcome::ok(ensure_newline(text)))
}

fn ensure_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}
