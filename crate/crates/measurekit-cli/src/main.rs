//! Command-line front end for the measurekit library.
//!
//! Measures travel as JSON (`{"atoms": [{"x","w"}], "density":
//! [{"a","b","value"}]}` with rationals as strings), test functions as the
//! library's piecewise-polynomial JSON, and sequences as closed-form
//! templates in the index `n` (see `expr`). All numeric work is exact; the
//! decimal column in any output is a 12-significant-digit rendering printed
//! alongside the exact rational, never instead of it.

mod expr;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use measurekit::{
    classify, corpus, distribution_function, integrate, jordan, sample_bv, tv_norm, variation,
    Centre, CheckParams, Measure, MeasureSequence, Scalar, Schedule, TestFamily, TestFunction,
};

use expr::Expr;

const DECIMAL_DIGITS: usize = 12;

#[derive(Parser)]
#[command(
    name = "measurekit",
    about = "Exact arithmetic for finite signed measures on the real line",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a measure against a test function; prints the exact value
    /// and a decimal approximation.
    Integrate {
        /// Measure JSON file
        measure: PathBuf,
        /// Test-function JSON file
        function: PathBuf,
    },
    /// Hahn-Jordan decomposition: positive part, negative part, variation
    /// measure and total-variation norm, as JSON.
    Decompose {
        /// Measure JSON file
        measure: PathBuf,
    },
    /// Sample a centred distribution function on a grid; prints CSV.
    Distfun {
        /// Measure JSON file
        measure: PathBuf,
        /// Centring point: a rational, `-inf`, or `+inf`
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        centre: String,
        /// Left end of the sampling grid (rational)
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        /// Right end of the sampling grid (rational)
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Grid step (positive rational)
        #[arg(long)]
        step: String,
    },
    /// Run the full battery of convergence checks on a sequence and print
    /// the classification report as JSON.
    Classify {
        /// Built-in sequence id (see `corpus list`)
        #[arg(long, conflicts_with = "spec")]
        corpus: Option<String>,
        /// Sequence-spec JSON file defining mu_n by closed-form templates
        spec: Option<PathBuf>,
        /// Declared limit measure (JSON file); defaults to the zero measure
        /// for spec files and to the built-in limit for corpus ids
        #[arg(long)]
        limit: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Built-in example sequences.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// List the built-in sequence ids with their labels.
    List,
    /// Print one member of a built-in sequence as measure JSON.
    Export {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: u64,
    },
    /// Print every built-in exact fact, evaluated over small indices, as CSV.
    Facts,
}

#[derive(Args)]
struct Tuning {
    /// `full`, `dyadic`, or a comma-separated list of indices
    #[arg(long)]
    schedule: Option<String>,
    /// How many trailing schedule points a verdict certificate inspects
    #[arg(long)]
    tail_window: Option<usize>,
    /// Distance tolerance for empirical limits (rational)
    #[arg(long)]
    tolerance: Option<String>,
    /// Dyadic refinement depth of the test-function family
    #[arg(long)]
    family_depth: Option<u32>,
    /// Half-width of the test-function family's support grid
    #[arg(long)]
    family_extent: Option<i64>,
    /// Centring point for distribution-function checks
    #[arg(long, allow_hyphen_values = true)]
    centre: Option<String>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid {what} '{got}': {reason}")]
    BadArgument {
        what: &'static str,
        got: String,
        reason: String,
    },
    #[error("{path}: field '{field}': {source}")]
    Template {
        path: PathBuf,
        field: String,
        #[source]
        source: expr::ExprError,
    },
    #[error("{path}: field '{field}' at n={n}: {reason}")]
    TemplateEval {
        path: PathBuf,
        field: String,
        n: u64,
        reason: String,
    },
    #[error("{path}: invalid test function: {reason}")]
    BadFunction { path: PathBuf, reason: String },
    #[error("unknown corpus id '{0}' (try `measurekit corpus list`)")]
    UnknownCorpusId(String),
    #[error("classify needs either --corpus <id> or a sequence-spec file")]
    MissingSequence,
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("MEASUREKIT_THREADS") {
        match raw.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                // ignore the error if a global pool already exists
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            _ => {
                eprintln!("error: MEASUREKIT_THREADS must be a positive integer, got '{raw}'");
                return ExitCode::FAILURE;
            }
        }
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Integrate { measure, function } => {
            let mu = load_measure(&measure)?;
            let f = load_function(&function)?;
            let value = integrate(&mu, &f);
            println!("{} ({})", value, value.to_decimal(DECIMAL_DIGITS));
            Ok(())
        }
        Command::Decompose { measure } => {
            let mu = load_measure(&measure)?;
            println!("{}", render_decomposition(&mu));
            Ok(())
        }
        Command::Distfun {
            measure,
            centre,
            from,
            to,
            step,
        } => {
            let mu = load_measure(&measure)?;
            let centre = parse_centre(&centre)?;
            let from = parse_scalar("--from", &from)?;
            let to = parse_scalar("--to", &to)?;
            let step = parse_scalar("--step", &step)?;
            if !step.is_positive() {
                return Err(CliError::BadArgument {
                    what: "--step",
                    got: step.to_string(),
                    reason: "step must be positive".into(),
                });
            }
            if from > to {
                return Err(CliError::BadArgument {
                    what: "--from/--to",
                    got: format!("{from}..{to}"),
                    reason: "empty grid".into(),
                });
            }
            let bv = distribution_function(&mu, &centre);
            println!("x,F");
            for (x, fx) in sample_bv(&bv, &from, &to, &step) {
                println!(
                    "{},{}",
                    x.to_decimal(DECIMAL_DIGITS),
                    fx.to_decimal(DECIMAL_DIGITS)
                );
            }
            Ok(())
        }
        Command::Classify {
            corpus: corpus_id,
            spec,
            limit,
            tuning,
        } => cmd_classify(corpus_id, spec, limit, tuning),
        Command::Corpus { command } => match command {
            CorpusCommand::List => {
                for entry in corpus::all() {
                    println!("{}\t{}", entry.id, entry.sequence.label);
                }
                Ok(())
            }
            CorpusCommand::Export { id, n } => {
                let entry = corpus::by_id(&id).ok_or(CliError::UnknownCorpusId(id))?;
                let mu = entry.sequence.at(n.max(1));
                println!("{}", serde_json::to_string_pretty(&mu).expect("serializable"));
                Ok(())
            }
            CorpusCommand::Facts => {
                println!("id,description,n,value,decimal");
                for entry in corpus::all() {
                    for fact in &entry.facts {
                        for &n in &entry.schedule.indices {
                            if n < fact.min_n || n > 16 {
                                continue;
                            }
                            let value = (fact.expected)(n);
                            println!(
                                "{},{},{},{},{}",
                                entry.id,
                                fact.description,
                                n,
                                value,
                                value.to_decimal(DECIMAL_DIGITS)
                            );
                        }
                    }
                }
                Ok(())
            }
        },
    }
}

fn cmd_classify(
    corpus_id: Option<String>,
    spec: Option<PathBuf>,
    limit_file: Option<PathBuf>,
    tuning: Tuning,
) -> Result<(), CliError> {
    let (id, sequence, default_limit, default_schedule) = match (corpus_id, spec) {
        (Some(id), None) => {
            let entry = corpus::by_id(&id).ok_or_else(|| CliError::UnknownCorpusId(id.clone()))?;
            (
                id,
                entry.sequence,
                entry.limit,
                entry.schedule,
            )
        }
        (None, Some(path)) => {
            let spec = load_sequence_spec(&path)?;
            let id = spec.label.clone();
            let seq = spec.into_sequence(&path)?;
            (id, seq, Measure::zero(), Schedule::default_full())
        }
        (None, None) => return Err(CliError::MissingSequence),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };

    let limit = match &limit_file {
        Some(path) => load_measure(path)?,
        None => default_limit,
    };

    let mut schedule = match tuning.schedule.as_deref() {
        None => default_schedule,
        Some("full") => Schedule::default_full(),
        Some("dyadic") => Schedule::default_dyadic(),
        Some(list) => {
            let indices = list
                .split(',')
                .map(|t| {
                    t.trim().parse::<u64>().map_err(|_| CliError::BadArgument {
                        what: "--schedule",
                        got: list.to_string(),
                        reason: format!("'{t}' is not a positive integer"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if indices.is_empty() || indices.contains(&0) {
                return Err(CliError::BadArgument {
                    what: "--schedule",
                    got: list.to_string(),
                    reason: "expected `full`, `dyadic`, or a comma-separated list of indices >= 1"
                        .into(),
                });
            }
            let base = Schedule::default_full();
            Schedule::new(indices, 1, base.tolerance)
        }
    };
    if let Some(window) = tuning.tail_window {
        if window < 1 || window > schedule.indices.len() {
            return Err(CliError::BadArgument {
                what: "--tail-window",
                got: window.to_string(),
                reason: format!("must be in 1..={}", schedule.indices.len()),
            });
        }
        schedule.tail_window = window;
    } else {
        schedule.tail_window = schedule.tail_window.min(schedule.indices.len());
    }
    if let Some(t) = &tuning.tolerance {
        let t = parse_scalar("--tolerance", t)?;
        if t.is_negative() {
            return Err(CliError::BadArgument {
                what: "--tolerance",
                got: t.to_string(),
                reason: "must be nonnegative".into(),
            });
        }
        schedule.tolerance = t;
    }

    let extent = tuning.family_extent.unwrap_or(2);
    let depth = tuning.family_depth.unwrap_or(2);
    if extent < 1 {
        return Err(CliError::BadArgument {
            what: "--family-extent",
            got: extent.to_string(),
            reason: "must be >= 1".into(),
        });
    }
    let family = TestFamily::dyadic(extent, depth);

    let mut params = CheckParams::default();
    if let Some(c) = &tuning.centre {
        params.centre = parse_centre(c)?;
    }

    let report = classify(&id, &sequence, &limit, &family, &schedule, &params);
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}

#[derive(Serialize)]
struct Decomposition {
    positive: Measure,
    negative: Measure,
    variation: Measure,
    tv_norm: Scalar,
}

fn render_decomposition(mu: &Measure) -> String {
    let (plus, minus) = jordan(mu);
    let out = Decomposition {
        positive: plus,
        negative: minus,
        variation: variation(mu),
        tv_norm: tv_norm(mu),
    };
    serde_json::to_string_pretty(&out).expect("serializable")
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn from_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn load_measure(path: &Path) -> Result<Measure, CliError> {
    let raw: Measure = from_json(path, &read_file(path)?)?;
    // re-normalize: file contents need not be in canonical form
    Ok(Measure::new(raw.atoms().to_vec(), raw.density().to_vec()))
}

fn load_function(path: &Path) -> Result<TestFunction, CliError> {
    let raw: TestFunction = from_json::<TestFunction>(path, &read_file(path)?)?;
    // route through the validating constructor
    TestFunction::new(
        raw.breakpoints().to_vec(),
        raw.pieces().to_vec(),
        raw.left_tail().clone(),
        raw.right_tail().clone(),
        raw.class(),
    )
    .map_err(|e| CliError::BadFunction {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

fn parse_scalar(what: &'static str, text: &str) -> Result<Scalar, CliError> {
    Scalar::from_str(text).map_err(|e| CliError::BadArgument {
        what,
        got: text.to_string(),
        reason: e.to_string(),
    })
}

fn parse_centre(text: &str) -> Result<Centre, CliError> {
    match text.trim() {
        "-inf" => Ok(Centre::NegInf),
        "+inf" | "inf" => Ok(Centre::PosInf),
        other => Ok(Centre::Finite(parse_scalar("--centre", other)?)),
    }
}

/// Closed-form sequence template: every coordinate is an expression in `n`.
#[derive(Deserialize)]
struct SequenceSpec {
    label: String,
    #[serde(default)]
    atoms: Vec<AtomTemplate>,
    #[serde(default)]
    density: Vec<DensityTemplate>,
}

#[derive(Deserialize)]
struct AtomTemplate {
    x: String,
    w: String,
}

#[derive(Deserialize)]
struct DensityTemplate {
    a: String,
    b: String,
    value: String,
}

fn load_sequence_spec(path: &Path) -> Result<SequenceSpec, CliError> {
    from_json(path, &read_file(path)?)
}

impl SequenceSpec {
    fn into_sequence(self, path: &Path) -> Result<MeasureSequence, CliError> {
        let parse = |field: String, src: &str| -> Result<Expr, CliError> {
            Expr::parse(src).map_err(|source| CliError::Template {
                path: path.to_path_buf(),
                field,
                source,
            })
        };
        let mut atoms = Vec::new();
        for (i, a) in self.atoms.iter().enumerate() {
            atoms.push((
                parse(format!("atoms[{i}].x"), &a.x)?,
                parse(format!("atoms[{i}].w"), &a.w)?,
            ));
        }
        let mut density = Vec::new();
        for (i, d) in self.density.iter().enumerate() {
            density.push((
                parse(format!("density[{i}].a"), &d.a)?,
                parse(format!("density[{i}].b"), &d.b)?,
                parse(format!("density[{i}].value"), &d.value)?,
            ));
        }

        // probe the templates once so evaluation failures (division by zero
        // at small n, inverted density endpoints) surface as CLI errors
        // instead of mid-run panics
        let build = move |n: u64| -> Result<Measure, (String, String)> {
            let eval = |field: &str, e: &Expr| -> Result<Scalar, (String, String)> {
                e.eval(n).map_err(|err| (field.to_string(), err.to_string()))
            };
            let mut measure_atoms = Vec::new();
            for (i, (x, w)) in atoms.iter().enumerate() {
                measure_atoms.push((
                    eval(&format!("atoms[{i}].x"), x)?,
                    eval(&format!("atoms[{i}].w"), w)?,
                ));
            }
            let mut measure_density = Vec::new();
            for (i, (a, b, value)) in density.iter().enumerate() {
                let a = eval(&format!("density[{i}].a"), a)?;
                let b = eval(&format!("density[{i}].b"), b)?;
                if a >= b {
                    return Err((
                        format!("density[{i}]"),
                        format!("endpoints out of order: a={a}, b={b}"),
                    ));
                }
                measure_density.push((a, b, eval(&format!("density[{i}].value"), value)?));
            }
            Ok(Measure::from_atoms(measure_atoms)
                .add(&Measure::from_density(measure_density)))
        };
        for n in [1u64, 2, 3, 4, 16, 1 << 14] {
            build(n).map_err(|(field, reason)| CliError::TemplateEval {
                path: path.to_path_buf(),
                field,
                n,
                reason,
            })?;
        }

        let label = self.label;
        Ok(MeasureSequence::new(label, move |n| {
            build(n).expect("templates validated at load time")
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centre_tokens() {
        assert_eq!(parse_centre("-inf").unwrap(), Centre::NegInf);
        assert_eq!(parse_centre("+inf").unwrap(), Centre::PosInf);
        assert_eq!(
            parse_centre("1/3").unwrap(),
            Centre::Finite(Scalar::ratio(1, 3))
        );
        assert!(parse_centre("oo").is_err());
    }

    #[test]
    fn spec_templates_build_exact_measures() {
        let spec = SequenceSpec {
            label: "escaping dipole".into(),
            atoms: vec![
                AtomTemplate { x: "n".into(), w: "1".into() },
                AtomTemplate { x: "-n".into(), w: "-1".into() },
            ],
            density: vec![],
        };
        let seq = spec.into_sequence(Path::new("inline")).unwrap();
        assert_eq!(seq.at(3), corpus::by_id("example_2_1").unwrap().sequence.at(3));
    }

    #[test]
    fn bad_templates_are_rejected_up_front() {
        let spec = SequenceSpec {
            label: "bad".into(),
            atoms: vec![AtomTemplate { x: "1/(n - 1)".into(), w: "1".into() }],
            density: vec![],
        };
        assert!(matches!(
            spec.into_sequence(Path::new("inline")),
            Err(CliError::TemplateEval { n: 1, .. })
        ));

        let spec = SequenceSpec {
            label: "inverted".into(),
            atoms: vec![],
            density: vec![DensityTemplate {
                a: "1/n".into(),
                b: "0".into(),
                value: "1".into(),
            }],
        };
        assert!(matches!(
            spec.into_sequence(Path::new("inline")),
            Err(CliError::TemplateEval { .. })
        ));
    }
}
