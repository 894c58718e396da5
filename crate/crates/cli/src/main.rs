mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "lazard-lab/1";

#[derive(Parser, Debug)]
#[command(name = "lazard-lab", version, about = "Lazard correspondence workbench")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Group,
    Lie,
    Compare,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CrossedOp {
    Check,
    Log,
    Exp,
    Sum,
    Equiv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse, validate and re-serialize an object file.
    Validate { file: PathBuf },
    /// BCH coefficients up to the given weight.
    BchTable {
        #[arg(long)]
        class: usize,
    },
    /// Order, class and lower central series of exp(L).
    Exp { file: PathBuf },
    /// Recover the Lie ring from the group exp(L).
    Log { file: PathBuf },
    /// H^0, H^1 or H^2 of the triple in the file (trivial Z/p if none).
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "compare")]
        side: SideArg,
    },
    /// Compare both sides in degrees 0, 1 and 2.
    Compare { file: PathBuf },
    /// Baer sums of classes on both sides against transport.
    BaerSum {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Lie-side class coordinates, comma separated.
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
    },
    /// Schur multiplier as a colimit of H^2(-, Z/p^i).
    Schur {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "compare")]
        side: SideArg,
    },
    /// Five-term sequence for an ideal and the normal subgroup it exponentiates to.
    FiveTerm {
        file: PathBuf,
        /// Generators: basis labels or coordinate vectors, separated by `;`.
        #[arg(long)]
        normal: String,
    },
    /// Crossed modules given by the [crossed] section.
    Crossed {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: CrossedOp,
        /// Second crossed module for sum and equiv (defaults: itself, its split form).
        #[arg(long)]
        other: Option<PathBuf>,
        /// Largest |H| for the equivalence search.
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Refused,
    Inconclusive,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Refused => 2,
            Status::Inconclusive => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "error",
            Status::Refused => "refused",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// A finished job: status plus the result body (or an error message).
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub error: Option<String>,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome { status: Status::Ok, result, error: None }
    }

    pub fn with(status: Status, result: Value) -> Self {
        Outcome { status, result, error: None }
    }

    pub fn fail(status: Status, msg: impl Into<String>) -> Self {
        Outcome { status, result: Value::Null, error: Some(msg.into()) }
    }
}

fn read(path: &PathBuf) -> Result<(String, String), Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(Status::Failed, format!("cannot read {}: {e}", path.display())))?;
    let hash = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok((text, hash))
}

fn run(cli: &Cli) -> (Option<String>, Outcome) {
    use commands as c;
    let files = match &cli.command {
        Command::BchTable { .. } => vec![],
        Command::Validate { file }
        | Command::Exp { file }
        | Command::Log { file }
        | Command::Cohomology { file, .. }
        | Command::Compare { file }
        | Command::BaerSum { file, .. }
        | Command::Schur { file, .. }
        | Command::FiveTerm { file, .. } => vec![file],
        Command::Crossed { file, other, .. } => std::iter::once(file).chain(other).collect(),
    };
    let mut texts = Vec::new();
    let mut hasher = Sha256::new();
    for f in &files {
        match read(f) {
            Ok((t, h)) => {
                hasher.update(h.as_bytes());
                texts.push(t);
            }
            Err(o) => return (None, o),
        }
    }
    let hash = match texts.len() {
        0 => None,
        1 => Some(format!("{:x}", Sha256::digest(texts[0].as_bytes()))),
        _ => Some(format!("{:x}", hasher.finalize())),
    };
    let parsed = || format::parse(&texts[0]).map_err(|e| Outcome::fail(Status::Failed, format!("malformed input: {e}")));
    let outcome = match &cli.command {
        Command::Validate { .. } => c::validate(&texts[0]),
        Command::BchTable { class } => c::bch_table(*class),
        cmd => match parsed() {
            Err(o) => o,
            Ok(doc) => match cmd {
                Command::Exp { .. } => c::exp(&doc),
                Command::Log { .. } => c::log(&doc),
                Command::Cohomology { degree, side, .. } => c::cohomology(&doc, *degree, *side),
                Command::Compare { .. } => c::compare_all(&doc),
                Command::BaerSum { degree, left, right, .. } => c::baer_sum(&doc, *degree, left.as_deref(), right.as_deref()),
                Command::Schur { side, .. } => c::schur(&doc, *side),
                Command::FiveTerm { normal, .. } => c::five_term(&doc, normal),
                Command::Crossed { op, bound, .. } => {
                    let other = match texts.get(1).map(|t| format::parse(t)) {
                        None => Ok(None),
                        Some(Ok(d)) => Ok(Some(d)),
                        Some(Err(e)) => Err(Outcome::fail(Status::Failed, format!("malformed --other input: {e}"))),
                    };
                    match other {
                        Ok(other) => c::crossed(&doc, other.as_ref(), *op, *bound),
                        Err(o) => o,
                    }
                }
                Command::Validate { .. } | Command::BchTable { .. } => unreachable!(),
            },
        },
    };
    (hash, outcome)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::BchTable { .. } => "bch-table",
        Command::Exp { .. } => "exp",
        Command::Log { .. } => "log",
        Command::Cohomology { .. } => "cohomology",
        Command::Compare { .. } => "compare",
        Command::BaerSum { .. } => "baer-sum",
        Command::Schur { .. } => "schur",
        Command::FiveTerm { .. } => "five-term",
        Command::Crossed { .. } => "crossed",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (hash, outcome) = run(&cli);
    let mut report = json!({
        "schema": SCHEMA,
        "command": command_name(&cli.command),
        "input_sha256": hash,
        "ok": outcome.status == Status::Ok,
        "status": outcome.status.name(),
        "exit_code": outcome.status.code(),
        "result": outcome.result,
    });
    if let Some(e) = &outcome.error {
        report["error"] = json!(e);
    }
    let text = serde_json::to_string_pretty(&report).expect("json") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = &outcome.error {
        eprintln!("lazard-lab: {e}");
    }
    ExitCode::from(outcome.status.code())
}
