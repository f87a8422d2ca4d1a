use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use relbell::cli::{
    cmd_oracle, cmd_order_effects, cmd_run, cmd_schmidt, parse_cases, parse_forms, to_rounded_json,
    OutputFormat, RunConfig, SchmidtTarget,
};
use relbell::hilbert::{DimensionId, Dimensions, DEFAULT_DIMENSIONS};
use relbell::Error;

#[derive(Parser)]
#[command(
    name = "relbell",
    version,
    about = "Bell-inequality and separability diagnostics for relevance judgments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DimensionArgs {
    /// Comma-separated relevance dimensions present in the log.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DIMENSIONS.map(String::from))]
    dimensions: Vec<String>,
    /// Dimension used as the standard basis (defaults to the first dimension).
    #[arg(long)]
    standard: Option<String>,
}

impl DimensionArgs {
    fn resolve(&self) -> Result<(Dimensions, DimensionId), Error> {
        let dims = Dimensions::new(self.dimensions.iter().cloned())?;
        let standard = match &self.standard {
            Some(s) => dims.get(s)?.clone(),
            None => dims.first().clone(),
        };
        Ok((dims, standard))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Select document pairs and evaluate every inequality and the Schmidt decomposition.
    Run {
        #[arg(long)]
        input: PathBuf,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
        #[command(flatten)]
        dims: DimensionArgs,
        /// 1, 2, 3 or all (comma-separated).
        #[arg(long, default_value = "all")]
        case: String,
        /// chsh_trace, chsh_probability, n_settings or all (comma-separated).
        #[arg(long, default_value = "all")]
        forms: String,
        #[arg(long, default_value_t = 2)]
        min_cooccurrence: usize,
        #[arg(long, default_value_t = 0.0)]
        half_tolerance: f64,
        /// Also evaluate the maximally entangled reference state.
        #[arg(long)]
        oracle: bool,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Sequential judgment probabilities of one document in both orders.
    OrderEffects {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        doc: String,
        /// Restrict to one query.
        #[arg(long)]
        query: Option<String>,
        /// Dimension judged first in the forward order.
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[command(flatten)]
        dims: DimensionArgs,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Schmidt coefficients and separability of a document pair or a given state.
    Schmidt {
        #[arg(long, required_unless_present_any = ["oracle", "state"])]
        input: Option<PathBuf>,
        /// Two document ids, comma-separated.
        #[arg(long, value_delimiter = ',')]
        pair: Vec<String>,
        #[arg(long)]
        query: Option<String>,
        /// Composite coefficients c00,c01,c10,c11.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        state: Vec<f64>,
        /// Use the maximally entangled reference state.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        dims: DimensionArgs,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// CHSH statistic of the maximally entangled reference state.
    Oracle {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Writes a line to stdout; a closed pipe ends output quietly.
fn emit(text: &str) -> Result<(), Error> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Error::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run {
            input,
            output,
            format,
            dims,
            case,
            forms,
            min_cooccurrence,
            half_tolerance,
            oracle,
            threads,
        } => {
            let (dimensions, standard) = dims.resolve()?;
            let config = RunConfig {
                dimensions,
                standard,
                cases: parse_cases(&case)?,
                forms: parse_forms(&forms)?,
                min_cooccurrence,
                half_tolerance,
                oracle,
                format: format.parse::<OutputFormat>()?,
            };
            let (report, text) = cmd_run(&input, output.as_deref(), &config, threads)?;
            if output.is_none() {
                emit(&text)?;
            }
            eprintln!("{}", report.summary_line());
            if let Some(o) = &report.oracle {
                eprintln!(
                    "oracle {}: statistic {:.5}, violated {}",
                    o.kind, o.chsh.statistic, o.chsh.violated
                );
            }
        }
        Command::OrderEffects {
            input,
            doc,
            query,
            first,
            second,
            dims,
            format,
        } => {
            let (dimensions, _) = dims.resolve()?;
            let first = dimensions.get(&first)?.clone();
            let second = dimensions.get(&second)?.clone();
            let rows =
                cmd_order_effects(&input, &dimensions, &doc, query.as_deref(), &first, &second)?;
            if format == "json" {
                emit(&to_rounded_json(&rows)?)?;
            } else {
                let mut text = format!("query\tdoc\t{first}->{second}\t{second}->{first}\tratio\n");
                for r in rows {
                    let ratio = r
                        .effect
                        .ratio
                        .map_or("inf".to_string(), |x| format!("{x:.4}"));
                    text += &format!(
                        "{}\t{}\t{:.4}\t{:.4}\t{}\n",
                        r.query_id, r.doc_id, r.effect.forward, r.effect.reverse, ratio
                    );
                }
                emit(text.trim_end())?;
            }
        }
        Command::Schmidt {
            input,
            pair,
            query,
            state,
            oracle,
            dims,
            format,
        } => {
            let (dimensions, standard) = dims.resolve()?;
            let target = if oracle {
                SchmidtTarget::Oracle
            } else if !state.is_empty() {
                let c: [f64; 4] = state
                    .try_into()
                    .map_err(|_| Error::Argument("--state needs four coefficients".into()))?;
                SchmidtTarget::State(c)
            } else {
                if pair.len() != 2 {
                    return Err(Error::Argument("--pair needs two document ids".into()));
                }
                SchmidtTarget::Pair {
                    input: input.as_deref().expect("required by clap"),
                    dims: &dimensions,
                    standard: &standard,
                    first: &pair[0],
                    second: &pair[1],
                    query: query.as_deref(),
                }
            };
            let r = cmd_schmidt(target)?;
            if format == "json" {
                emit(&to_rounded_json(&r)?)?;
            } else {
                let [s1, s2] = r.schmidt.singular_values;
                emit(&format!(
                    "{}: singular values ({s1:.5}, {s2:.5}), rank {}\n{}",
                    r.source,
                    r.schmidt.rank,
                    if r.separable {
                        "separable"
                    } else {
                        "entangled"
                    }
                ))?;
            }
        }
        Command::Oracle { output } => {
            let text = to_rounded_json(&cmd_oracle())?;
            match output {
                Some(p) => relbell::cli::write_atomic(&p, &text)?,
                None => emit(&text)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
