use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use svn_topsis::io::{
    emit_report, emit_scale, emit_trace_export, input_digest, parse_problem, write_plot_data,
    DEFAULT_EXPORT_PRECISION, DEFAULT_REPORT_PRECISION,
};
use svn_topsis::linguistic::{builtin_rating_scale, builtin_weight_scale};
use svn_topsis::svn::Distance;
use svn_topsis::topsis::{run_pipeline_with, PipelineOptions};

const EXIT_INPUT: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(
    name = "svn-topsis",
    version,
    about = "SVN-TOPSIS group decision making"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a problem file.
    Evaluate {
        problem: PathBuf,
        /// Write the text report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the JSON trace export here.
        #[arg(long)]
        export: Option<PathBuf>,
        /// Write one CSV of plot data per alternative into this directory.
        #[arg(long)]
        plots: Option<PathBuf>,
        /// Decimal places for every output (default: 3 in the report, 4 elsewhere).
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=12))]
        precision: Option<u8>,
        /// Override decision-maker weights, e.g. 0.4,0.35,0.25.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        dm_weights: Option<Vec<f64>>,
        /// Divide separations by 3n instead of 3.
        #[arg(long)]
        normalized_distance: bool,
    },
    /// Parse and validate a problem file without evaluating it.
    Validate { problem: PathBuf },
    /// Print the built-in linguistic scales.
    Scales,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::input(format!("stdout: {e}")))
        }
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Scales => {
            let weights = emit_scale(&builtin_weight_scale(), "Importance weights");
            let ratings = emit_scale(&builtin_rating_scale(), "Alternative ratings");
            emit(&format!("{weights}\n{ratings}"))
        }
        Command::Validate { problem } => {
            let text = read(&problem)?;
            let file = parse_problem(&text)
                .map_err(|e| Failure::input(format!("{}: {e}", problem.display())))?;
            let (m, n, k) = file.problem.dimensions();
            emit(&format!(
                "{}: ok ({k} decision makers, {n} criteria, {m} alternatives)\n",
                problem.display()
            ))
        }
        Command::Evaluate {
            problem,
            report,
            export,
            plots,
            precision,
            dm_weights,
            normalized_distance,
        } => {
            let text = read(&problem)?;
            let mut file = parse_problem(&text)
                .map_err(|e| Failure::input(format!("{}: {e}", problem.display())))?;
            if dm_weights.is_some() {
                file.problem.dm_weight_override = dm_weights;
            }
            let options = PipelineOptions {
                distance: if normalized_distance || file.options.normalized_distance {
                    Distance::Normalized
                } else {
                    Distance::Euclidean
                },
                ..Default::default()
            };
            let trace = run_pipeline_with(&file.problem, &options).map_err(|e| Failure {
                code: if e.is_numeric() {
                    EXIT_NUMERIC
                } else {
                    EXIT_INPUT
                },
                message: format!("{}: {e}", problem.display()),
            })?;

            let precision = precision.map(usize::from).or(file.options.precision);
            let text_report = emit_report(&trace, precision.unwrap_or(DEFAULT_REPORT_PRECISION));
            match report {
                Some(path) => write(&path, &text_report)?,
                None => emit(&text_report)?,
            }
            let data_precision = precision.unwrap_or(DEFAULT_EXPORT_PRECISION);
            if let Some(path) = export {
                write(
                    &path,
                    &emit_trace_export(&trace, data_precision, &input_digest(&text)),
                )?;
            }
            if let Some(dir) = plots {
                write_plot_data(&trace, &dir, data_precision)
                    .map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
