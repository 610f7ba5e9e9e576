//! `qcorr`: classify two-qubit states, report discord and entanglement,
//! sweep the Werner family and check the NMR readout.
//!
//! Exit codes: `classify` returns 0/1/2 for ClassicalCertified /
//! NonclassicalCertified / Inconclusive. Errors: 64 bad input or arguments,
//! 65 invalid state, 66 state outside the witness class, 70 internal failure,
//! 74 I/O failure.

mod output;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qcorr::entanglement::entanglement_report;
use qcorr::measures::discord;
use qcorr::nmr::{run_protocol, Shots};
use qcorr::states::{make_bell_diagonal, make_general, make_product, make_werner};
use qcorr::witness::{class_decomposition, witness_with_tolerance, DEFAULT_TRIALS, ZERO_THRESHOLD};
use qcorr::{Error, State, StateFile, Verdict, WitnessMode};

use output::{envelope, to_pretty};
use sweep::AlphaRange;

const EXIT_USAGE: u8 = 64;
const EXIT_INVALID_STATE: u8 = 65;
const EXIT_OUT_OF_CLASS: u8 = 66;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Two-qubit correlation analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the classicality witness and print its verdict.
    Classify(ClassifyArgs),
    /// Mutual information, classical correlation and discord.
    Discord { file: PathBuf },
    /// Partial-transpose and CHSH report.
    Entanglement { file: PathBuf },
    /// Tabulate W, discord, mutual information, negativity and CHSH over Werner states.
    SweepWerner(SweepArgs),
    /// Run the CNOT/rotation readout and check it against the correlations.
    NmrVerify(NmrArgs),
    /// Write a state file for a standard family.
    State {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Deterministic,
    Randomized,
}

#[derive(Args)]
struct ClassifyArgs {
    file: PathBuf,
    /// Threshold under which W counts as zero.
    #[arg(long, default_value_t = ZERO_THRESHOLD)]
    tol: f64,
    #[arg(long, value_enum, default_value = "deterministic")]
    mode: ModeArg,
    /// Direction pairs tried in randomized mode.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// `start:end:count`, inclusive of both ends.
    #[arg(long, default_value = "0:1:11")]
    alphas: String,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Also compute discord (slower).
    #[arg(long)]
    with_discord: bool,
}

#[derive(Args)]
struct NmrArgs {
    file: PathBuf,
    /// Shots per readout; exact expectation values when absent.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Family {
    /// `(1-alpha) I/4 + alpha |singlet><singlet|`.
    Werner { alpha: f64 },
    /// Diagonal correlations only.
    BellDiagonal {
        #[arg(allow_negative_numbers = true)]
        c1: f64,
        #[arg(allow_negative_numbers = true)]
        c2: f64,
        #[arg(allow_negative_numbers = true)]
        c3: f64,
    },
    /// Local Bloch vectors plus diagonal correlations.
    General {
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        x: [f64; 3],
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        y: [f64; 3],
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        c: [f64; 3],
    },
    /// Product of two single-qubit states.
    Product {
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        a: [f64; 3],
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        b: [f64; 3],
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::AlphaOutOfRange(_)
            | Error::BlochNorm(_) => EXIT_USAGE,
            Error::NotHermitian { .. } | Error::TraceNotOne { .. } | Error::NotPositive { .. } => {
                EXIT_INVALID_STATE
            }
            Error::OutOfClass { .. } => EXIT_OUT_OF_CLASS,
            _ => EXIT_SOFTWARE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read_state(path: &Path) -> Result<State, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    })?;
    let file = StateFile::parse(&text).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        ..Failure::from(e)
    })?;
    Ok(file.to_state()?)
}

fn print_record(record: &impl Serialize) {
    println!("{}", to_pretty(&envelope(record)));
}

fn classify(args: &ClassifyArgs) -> Result<u8, Failure> {
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(usage("--tol must be non-negative"));
    }
    let rho = read_state(&args.file)?;
    let mode = match args.mode {
        ModeArg::Deterministic => WitnessMode::Deterministic,
        ModeArg::Randomized => WitnessMode::Randomized {
            n_trials: args.trials,
            seed: args.seed,
        },
    };
    let report = witness_with_tolerance(&rho, mode, args.tol)?;
    print_record(&report.record());
    Ok(match report.verdict {
        Verdict::ClassicalCertified => 0,
        Verdict::NonclassicalCertified => 1,
        Verdict::Inconclusive => 2,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sweep_werner(args: &SweepArgs) -> Result<u8, Failure> {
    let range = AlphaRange::parse(&args.alphas).map_err(usage)?;
    let rows = sweep::sweep(&range, args.with_discord)?;
    let text = match args.format {
        Format::Csv => sweep::to_csv(&rows),
        Format::Json => sweep::to_json(&rows),
    };
    write_output(args.out.as_deref(), &text)?;
    if let Some(note) = sweep::chsh_note(&rows) {
        eprintln!("note: {note}");
    }
    Ok(0)
}

fn nmr_verify(args: &NmrArgs) -> Result<u8, Failure> {
    let rho = read_state(&args.file)?;
    class_decomposition(&rho)?;
    let shots = match args.shots {
        None => Shots::Exact,
        Some(0) => return Err(usage("--shots must be at least 1")),
        Some(n) => Shots::Sampled(n),
    };
    let run = run_protocol(&rho, shots, args.seed)?;
    print_record(&run.record());
    if run.passes() {
        Ok(0)
    } else {
        eprintln!("readout residuals exceed the allowed threshold");
        Ok(1)
    }
}

/// `a,b,c` as three reals.
fn parse_triple(text: &str) -> Result<[f64; 3], String> {
    let values = text
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number {v:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    <[f64; 3]>::try_from(values)
        .map_err(|v| format!("expected 3 comma-separated values, got {}", v.len()))
}

fn make_state(family: &Family) -> Result<u8, Failure> {
    let file = match family {
        Family::Werner { alpha } => StateFile::from_state(&make_werner(*alpha)?),
        Family::BellDiagonal { c1, c2, c3 } => {
            StateFile::from_state(&make_bell_diagonal([*c1, *c2, *c3])?)
        }
        Family::General { x, y, c } => StateFile::from_state(&make_general(*x, *y, *c)?),
        Family::Product { a, b } => StateFile::from_state(&make_product(*a, *b)?),
    };
    println!("{}", file.to_json());
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Classify(args) => classify(args),
        Command::Discord { file } => {
            print_record(&discord(&read_state(file)?)?.record());
            Ok(0)
        }
        Command::Entanglement { file } => {
            print_record(&entanglement_report(&read_state(file)?).record());
            Ok(0)
        }
        Command::SweepWerner(args) => sweep_werner(args),
        Command::NmrVerify(args) => nmr_verify(args),
        Command::State { family } => make_state(family),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
