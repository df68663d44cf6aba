//! Command-line layer: session files, task dispatch and JSON reports.

pub mod session;
pub mod tasks;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::groebner::{set_degree_limit, DegreeLimitExceeded};
pub use session::{parse_session, Session, Task, Tier};

pub const SCHEMA: &str = "resint.report/1";

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// One report per task. Keys serialise in sorted order and `timing` is the
/// only field that varies between runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: Value,
    pub ring: String,
    pub task: Task,
    pub seed: u64,
    pub status: &'static str,
    pub result: Value,
    pub error: Option<ErrorInfo>,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self, pretty: bool) -> String {
        let v = serde_json::to_value(self).expect("reports serialise");
        if pretty {
            serde_json::to_string_pretty(&v).unwrap()
        } else {
            serde_json::to_string(&v).unwrap()
        }
    }

    /// Exit code contribution: 2 for input errors, 3 for internal ones.
    pub fn exit_code(&self) -> i32 {
        match self.error.as_ref().map(|e| e.kind) {
            Some("input") => 2,
            Some("internal") => 3,
            _ => 0,
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) | Error::Arity { .. } | Error::RingMismatch(_) => "input",
        Error::Precondition(_) => "precondition",
        Error::Internal(_) => "internal",
        Error::DegreeLimit { .. } => "degree_limit",
    }
}

/// Seed from `RESINT_SEED`, default 0.
pub fn env_seed() -> u64 {
    std::env::var("RESINT_SEED").ok().and_then(|v| v.parse().ok()).unwrap_or(0)
}

/// Degree guard from `RESINT_MAX_DEGREE`, default 40; `0` disables it.
pub fn env_max_degree() -> Option<i64> {
    let v = std::env::var("RESINT_MAX_DEGREE").ok().and_then(|v| v.parse().ok()).unwrap_or(40);
    (v > 0).then_some(v)
}

fn tool() -> Value {
    serde_json::json!({ "name": "resint", "version": env!("CARGO_PKG_VERSION") })
}

/// Run one task under the degree guard, converting guard trips and errors
/// into report fields.
pub fn run_one(session: &Session, task: &Task, seed: u64) -> Report {
    let seed = task.option::<u64>("seed").ok().flatten().unwrap_or(seed);
    let start = Instant::now();
    set_degree_limit(env_max_degree());
    let outcome = catch_unwind(AssertUnwindSafe(|| tasks::run_task(session, task, seed)));
    set_degree_limit(None);
    let outcome = match outcome {
        Ok(r) => r,
        Err(payload) => match payload.downcast_ref::<DegreeLimitExceeded>() {
            Some(d) => Err(Error::DegreeLimit { limit: d.limit, reached: d.reached }),
            None => std::panic::resume_unwind(payload),
        },
    };
    let (status, result, error) = match outcome {
        Ok(v) => ("ok", v, None),
        Err(e) => ("error", Value::Null, Some(ErrorInfo { kind: error_kind(&e), message: e.to_string() })),
    };
    Report {
        schema: SCHEMA,
        tool: tool(),
        ring: session.ring.to_string(),
        task: task.clone(),
        seed,
        status,
        result,
        error,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() },
    }
}

fn skipped(session: &Session, task: &Task, seed: u64) -> Report {
    Report {
        schema: SCHEMA,
        tool: tool(),
        ring: session.ring.to_string(),
        task: task.clone(),
        seed,
        status: "skipped",
        result: serde_json::json!({ "reason": "session is marked 'tier extended'; pass --tier extended" }),
        error: None,
        timing: Timing { elapsed_ms: 0 },
    }
}

/// Run every task in a session.
pub fn run_session(session: &Session, tier: Tier, seed: u64) -> Vec<Report> {
    session
        .tasks
        .iter()
        .map(|t| {
            if session.tier == Tier::Extended && tier == Tier::Fast {
                skipped(session, t, seed)
            } else {
                run_one(session, t, seed)
            }
        })
        .collect()
}

#[derive(Parser, Debug)]
#[command(name = "resint", version, about = "Residual intersections and Koszul homology over graded polynomial rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Run sessions marked `tier extended`.
    #[arg(long, global = true, value_enum, default_value = "fast")]
    pub tier: TierArg,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum TierArg {
    Fast,
    Extended,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every `task` statement of a session file.
    Run { file: PathBuf },
    /// Parse a session file and report its declarations.
    Check { file: PathBuf },
    /// Koszul homology, depths, annihilators and SD/SDC/SCM checks.
    Koszul(TaskArgs),
    /// Classification, saturation residuals, inclusion chain, single b.
    Residual(TaskArgs),
    /// Assemble `_kZ^+` and report its homology.
    Zplus(TaskArgs),
    /// Direct presentation of `Sym^k(I/a)` and its invariants.
    Sympower(TaskArgs),
    /// Invariants of `R/I`.
    Invariants(TaskArgs),
    /// Canonical module of `R/J` against the symmetric power.
    Canonical(TaskArgs),
    /// Conjecture harness or Hilbert-function invariance sampling.
    Experiment {
        #[arg(value_parser = ["conjecture", "hf-invariance"])]
        kind: String,
        #[command(flatten)]
        args: TaskArgs,
    },
}

#[derive(Args, Debug, Default)]
pub struct TaskArgs {
    /// Session file declaring the ring and the ideals.
    pub file: PathBuf,
    /// Name of the ideal `I`.
    #[arg(long = "ideal", short = 'i')]
    pub ideal: String,
    /// Name of the ideal `a`.
    #[arg(long = "a")]
    pub a: Option<String>,
    #[arg(short = 's', long)]
    pub s: Option<usize>,
    #[arg(short = 'k', long)]
    pub k: Option<usize>,
    /// Name of a `lift` matrix.
    #[arg(long)]
    pub lift: Option<String>,
    #[arg(long)]
    pub disguised: bool,
    #[arg(long)]
    pub hypotheses: bool,
    #[arg(long)]
    pub audit: bool,
    #[arg(long)]
    pub findb: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Comma-separated degrees for random sections.
    #[arg(long)]
    pub degrees: Option<String>,
}

impl TaskArgs {
    fn to_task(&self, kind: &str) -> Task {
        let mut t = Task { kind: kind.to_string(), ..Task::default() };
        t.names.push(self.ideal.clone());
        if let Some(a) = &self.a {
            t.names.push(a.clone());
        }
        let opts: [(&str, Option<String>); 6] = [
            ("s", self.s.map(|v| v.to_string())),
            ("k", self.k.map(|v| v.to_string())),
            ("lift", self.lift.clone()),
            ("seed", self.seed.map(|v| v.to_string())),
            ("samples", self.samples.map(|v| v.to_string())),
            ("degrees", self.degrees.clone()),
        ];
        for (k, v) in opts {
            if let Some(v) = v {
                t.options.insert(k.to_string(), v);
            }
        }
        for (f, on) in [("disguised", self.disguised), ("hypotheses", self.hypotheses), ("audit", self.audit), ("findb", self.findb)] {
            if on {
                t.flags.push(f.to_string());
            }
        }
        t
    }
}

/// Print to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn load(file: &PathBuf) -> Result<Session, (i32, String)> {
    let text = std::fs::read_to_string(file).map_err(|e| (2, format!("cannot read {}: {e}", file.display())))?;
    parse_session(&text).map_err(|e| (2, format!("{}: {e}", file.display())))
}

/// Entry point shared by the binary: parse arguments, run, print, and
/// return the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let tier = match cli.tier {
        TierArg::Fast => Tier::Fast,
        TierArg::Extended => Tier::Extended,
    };
    let seed = env_seed();
    let (file, task) = match &cli.command {
        Command::Run { file } | Command::Check { file } => (file, None),
        Command::Koszul(a) => (&a.file, Some(a.to_task("koszul"))),
        Command::Residual(a) => (&a.file, Some(a.to_task("residual"))),
        Command::Zplus(a) => (&a.file, Some(a.to_task("zplus"))),
        Command::Sympower(a) => (&a.file, Some(a.to_task("sympower"))),
        Command::Invariants(a) => (&a.file, Some(a.to_task("invariants"))),
        Command::Canonical(a) => (&a.file, Some(a.to_task("canonical"))),
        Command::Experiment { kind, args } => {
            let mut t = args.to_task("experiment");
            t.flags.push(kind.clone());
            (&args.file, Some(t))
        }
    };
    let session = match load(file) {
        Ok(s) => s,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let reports = match (&cli.command, task) {
        (Command::Check { .. }, _) => {
            let v = serde_json::json!({
                "schema": SCHEMA,
                "ring": session.ring.to_string(),
                "ideals": session.ideals.iter().map(|(k, v)| (k.clone(), tasks::ideal_json(v))).collect::<serde_json::Map<_, _>>(),
                "lifts": session.lifts.keys().collect::<Vec<_>>(),
                "tasks": session.tasks,
                "tier": session.tier,
            });
            emit(&if cli.pretty { serde_json::to_string_pretty(&v).unwrap() } else { v.to_string() });
            return 0;
        }
        (_, Some(t)) => vec![run_one(&session, &t, seed)],
        (_, None) => run_session(&session, tier, seed),
    };
    let docs: Vec<Value> = reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect();
    let out = if docs.len() == 1 { docs[0].clone() } else { Value::Array(docs) };
    emit(&if cli.pretty { serde_json::to_string_pretty(&out).unwrap() } else { out.to_string() });
    reports.iter().map(Report::exit_code).max().unwrap_or(0)
}
