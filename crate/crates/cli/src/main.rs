mod algebra;
mod color;
mod report;
mod sat;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use robustgb::Rational;

use report::{CliError, RunReport};

#[derive(Parser, Debug)]
#[command(name = "robustgb", version, about = "Gröbner bases, 3SAT encodings and colouring gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Write the main artifact here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Write the JSON run report here instead of stderr.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a DIMACS 3-CNF formula as a polynomial system.
    Encode(sat::EncodeArgs),
    /// Compute a reduced Gröbner basis of a polynomial file.
    Groebner(algebra::GroebnerArgs),
    /// Solve a structural fraction of an encoded formula and read off an assignment.
    Pipeline(sat::PipelineArgs),
    /// Build one of the hardness gadgets.
    Gadget {
        #[command(subcommand)]
        kind: algebra::GadgetKind,
    },
    /// Check a fractional solution against its generators.
    Verify(algebra::VerifyArgs),
    /// Graph colouring tools.
    Color {
        #[command(subcommand)]
        kind: color::ColorKind,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Switch {
    Off,
    On,
}

/// Command output: the main artifact plus the report.
pub struct Output {
    pub text: String,
}

fn write_output(io: &Io, text: &str) -> Result<(), CliError> {
    match &io.output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::format(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let (name, io) = match &cli.command {
        Command::Encode(a) => ("encode", a.io.clone()),
        Command::Groebner(a) => ("groebner", a.io.clone()),
        Command::Pipeline(a) => ("pipeline", a.io.clone()),
        Command::Gadget { kind } => (kind.name(), kind.io().clone()),
        Command::Verify(a) => ("verify", a.io.clone()),
        Command::Color { kind } => (kind.name(), kind.io().clone()),
    };
    let mut rep = RunReport::new(name);
    let result = match &cli.command {
        Command::Encode(a) => sat::encode(a, &mut rep),
        Command::Groebner(a) => algebra::groebner(a, &mut rep),
        Command::Pipeline(a) => sat::pipeline(a, &mut rep),
        Command::Gadget { kind } => algebra::gadget(kind, &mut rep),
        Command::Verify(a) => algebra::verify(a, &mut rep),
        Command::Color { kind } => color::color(kind, &mut rep),
    };
    // Verification failures still produce their verdict document.
    let result = match result {
        Ok(out) => write_output(&io, &out.text),
        Err((e, Some(out))) => write_output(&io, &out.text).and(Err(e)),
        Err((e, None)) => Err(e),
    };
    let code = rep.finish(&result);
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    let json = serde_json::to_string_pretty(&rep).expect("report serializes");
    match &io.report {
        Some(p) => {
            if let Err(e) = std::fs::write(p, json + "\n") {
                eprintln!("error: cannot write report {}: {e}", p.display());
            }
        }
        None => eprintln!("{json}"),
    }
    std::process::exit(code as i32);
}

pub type CmdResult = Result<Output, (CliError, Option<Output>)>;

pub fn fail(e: CliError) -> (CliError, Option<Output>) {
    (e, None)
}

pub fn done(text: String) -> CmdResult {
    Ok(Output { text })
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| CliError::format(format!("bad number `{s}`")))?;
    let d: BigInt = d.trim().parse().map_err(|_| CliError::format(format!("bad number `{s}`")))?;
    if d.is_zero() {
        return Err(CliError::format(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// `ε` as a rational in `(0, 1]`.
pub fn parse_epsilon(s: &str) -> Result<Rational, CliError> {
    let e = parse_rational(s)?;
    if !e.is_positive() || e > Rational::one() {
        return Err(CliError::format(format!("epsilon must lie in (0, 1], got {s}")));
    }
    Ok(e)
}

/// Comma-separated 1-based indices, optionally prefixed by a letter
/// (`2,5`, `y2,y5`, `x2`).
pub fn parse_index_list(s: &str, limit: usize) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let digits = t.trim_start_matches(|c: char| c.is_ascii_alphabetic());
            match digits.parse::<usize>() {
                Ok(i) if (1..=limit).contains(&i) => Ok(i),
                _ => Err(CliError::format(format!("bad index `{t}` (expected 1..={limit})"))),
            }
        })
        .collect()
}

pub fn ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
