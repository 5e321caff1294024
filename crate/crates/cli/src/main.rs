mod commands;
mod input;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use skelvd::decomposability::DEFAULT_BUDGET;
use skelvd::homology::{DEFAULT_FACE_CAP, DEFAULT_HOCHSTER_CAP};
use skelvd::ideals::DEFAULT_LQ_CAP;
use skelvd::Error;

use input::Source;
use render::Outcome;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "skelvd",
    version,
    about = "Vertex decomposability of expanded hypergraphs built from skeleton attachments"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (reports do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized choices; every current command is deterministic
    /// without one, so it is only echoed.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Node budget for the decomposability search.
    #[arg(long, global = true, env = "SKELVD_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Forest test, special cycles, cycle covers, vertex covers, unmixedness.
    Analyze(AnalyzeArgs),
    /// Check the main theorem on an assembly for each weight.
    VerifyTheoremA(TheoremAArgs),
    /// Run the built-in negative controls; each must fail to be vertex decomposable.
    Counterexamples(CounterexampleArgs),
    /// Expand a weighted hypergraph into H(ℓ).
    Expand(ExpandArgs),
    /// Symbolic power of the cover ideal (or of an input ideal).
    Symbolic(SymbolicArgs),
    /// Compare the polarized symbolic power with the cover ideal of the expansion.
    VerifyIdentity(IdentityArgs),
    /// Replay a reduction trace and check constructible-set duality at each step.
    Trace(TraceArgs),
    /// Decide vertex decomposability.
    Vd(VdArgs),
    /// Search for a linear quotients order.
    LinearQuotients(LqArgs),
    /// Reisner's criterion.
    Cm(CmArgs),
    /// Evaluate the five equivalent conditions up to a power.
    TheoremB(TheoremBArgs),
}

/// Comma-separated weights: one value for every edge, or one per edge.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct Ells(pub Vec<u32>);

fn parse_ells(s: &str) -> Result<Ells, String> {
    let ls: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
    match ls {
        Ok(ls) if !ls.is_empty() => Ok(Ells(ls)),
        _ => Err(format!("{s:?} is not a comma-separated list of weights")),
    }
}

/// Comma-separated vertex labels.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct Labels(pub Vec<String>);

fn parse_labels(s: &str) -> Result<Labels, String> {
    Ok(Labels(s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()))
}

#[derive(Args, Serialize)]
pub struct AnalyzeArgs {
    pub input: String,
    /// Vertices to test as a cycle cover, e.g. `x5` or `x1,x3`.
    #[arg(long, value_parser = parse_labels)]
    pub cover: Option<Labels>,
    /// Longest special cycle to list.
    #[arg(long, default_value_t = 6)]
    pub max_cycle_len: usize,
    /// Number of special cycles to list.
    #[arg(long, default_value_t = 10)]
    pub max_cycles: usize,
}

#[derive(Args, Serialize)]
pub struct TheoremAArgs {
    pub input: String,
    #[arg(long, default_value_t = 2)]
    pub lmax: u32,
    /// Use these weights instead of ℓ = 1..=lmax.
    #[arg(long, value_parser = parse_ells)]
    pub ells: Option<Ells>,
    #[arg(long, default_value_t = DEFAULT_LQ_CAP)]
    pub lq_cap: u64,
    /// Move patterns to check per weight.
    #[arg(long, default_value_t = 64)]
    pub max_patterns: usize,
}

#[derive(Args, Serialize)]
pub struct CounterexampleArgs {}

#[derive(Args, Serialize)]
pub struct ExpandArgs {
    pub input: String,
    #[arg(long, value_parser = parse_ells)]
    pub ells: Option<Ells>,
    /// Drop isolated vertices and trivial edges.
    #[arg(long)]
    pub strip: bool,
}

#[derive(Args, Serialize)]
pub struct SymbolicArgs {
    pub input: String,
    #[arg(long)]
    pub ell: u32,
    #[arg(long)]
    pub polarize: bool,
}

#[derive(Args, Serialize)]
pub struct IdentityArgs {
    pub input: String,
    /// A single power; otherwise every ℓ up to `--lmax`.
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long, default_value_t = 3)]
    pub lmax: u32,
}

#[derive(Args, Serialize)]
pub struct TraceArgs {
    pub input: String,
    #[arg(long, value_parser = parse_ells)]
    pub ells: Option<Ells>,
    /// Steps such as `D:x1#1,L:x1#2`; with `--witness`, move letters such as `D,L`.
    #[arg(long, default_value = "")]
    pub moves: String,
    /// Require each step to act on the least live shadow of its base.
    #[arg(long)]
    pub strict: bool,
    /// Build the witness sequence of an assembly instead of replaying steps.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Args, Serialize)]
pub struct VdArgs {
    pub input: String,
    /// Expand with these weights first.
    #[arg(long, value_parser = parse_ells)]
    pub ells: Option<Ells>,
    /// Include the shedding certificate.
    #[arg(long)]
    pub witness: bool,
    #[arg(long)]
    pub no_memo: bool,
}

#[derive(Args, Serialize)]
pub struct LqArgs {
    pub input: String,
    /// Use the cover ideal of the expansion with these weights.
    #[arg(long, value_parser = parse_ells)]
    pub ells: Option<Ells>,
    #[arg(long, default_value_t = DEFAULT_LQ_CAP)]
    pub cap: u64,
}

#[derive(Args, Serialize)]
pub struct CmArgs {
    pub input: String,
    /// For a complex, test the independence complex of its facet hypergraph.
    #[arg(long)]
    pub facet_ideal: bool,
    #[arg(long, default_value_t = DEFAULT_FACE_CAP)]
    pub face_cap: usize,
}

#[derive(Args, Serialize)]
pub struct TheoremBArgs {
    pub input: String,
    #[arg(long, default_value_t = 3)]
    pub lmax: u32,
    #[arg(long, default_value_t = DEFAULT_FACE_CAP)]
    pub face_cap: usize,
    #[arg(long, default_value_t = DEFAULT_HOCHSTER_CAP)]
    pub hochster_cap: usize,
    #[arg(long, default_value_t = DEFAULT_LQ_CAP)]
    pub lq_cap: u64,
}

/// Settings every command sees.
pub struct Globals {
    pub budget: u64,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::VerifyTheoremA(_) => "verify-theorem-a",
            Command::Counterexamples(_) => "counterexamples",
            Command::Expand(_) => "expand",
            Command::Symbolic(_) => "symbolic",
            Command::VerifyIdentity(_) => "verify-identity",
            Command::Trace(_) => "trace",
            Command::Vd(_) => "vd",
            Command::LinearQuotients(_) => "linear-quotients",
            Command::Cm(_) => "cm",
            Command::TheoremB(_) => "theorem-b",
        }
    }

    fn options(&self) -> serde_json::Value {
        use render::to_value;
        match self {
            Command::Analyze(a) => to_value(a),
            Command::VerifyTheoremA(a) => to_value(a),
            Command::Counterexamples(a) => to_value(a),
            Command::Expand(a) => to_value(a),
            Command::Symbolic(a) => to_value(a),
            Command::VerifyIdentity(a) => to_value(a),
            Command::Trace(a) => to_value(a),
            Command::Vd(a) => to_value(a),
            Command::LinearQuotients(a) => to_value(a),
            Command::Cm(a) => to_value(a),
            Command::TheoremB(a) => to_value(a),
        }
    }

    fn run(&self, g: &Globals) -> Result<(Vec<Source>, Outcome), Error> {
        match self {
            Command::Analyze(a) => commands::analyze(a, g),
            Command::VerifyTheoremA(a) => commands::verify_theorem_a(a, g),
            Command::Counterexamples(a) => commands::counterexamples(a, g),
            Command::Expand(a) => commands::expand(a, g),
            Command::Symbolic(a) => commands::symbolic(a, g),
            Command::VerifyIdentity(a) => commands::verify_identity(a, g),
            Command::Trace(a) => commands::trace(a, g),
            Command::Vd(a) => commands::vd(a, g),
            Command::LinearQuotients(a) => commands::linear_quotients(a, g),
            Command::Cm(a) => commands::cm(a, g),
            Command::TheoremB(a) => commands::theorem_b(a, g),
        }
    }
}

fn error_parts(e: &Error) -> (&'static str, u8) {
    match e {
        Error::InvalidArgument(_) => ("invalid_argument", 2),
        Error::Parse(_) => ("parse", 2),
        Error::PreconditionViolation(_) => ("precondition_violation", 2),
        Error::TraceInvalid { .. } => ("trace_invalid", 2),
        Error::BudgetExceeded(_) => ("budget_exceeded", 3),
        Error::Internal(_) => ("internal", 1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("skelvd: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let globals = Globals { budget: cli.budget };
    let name = cli.command.name();
    let mut options = cli.command.options();
    if let Some(m) = options.as_object_mut() {
        m.insert("budget".into(), json!(cli.budget));
        m.insert("seed".into(), json!(cli.seed));
    }
    let start = std::time::Instant::now();
    let (mut report, code) = match cli.command.run(&globals) {
        Ok((inputs, outcome)) => {
            let code = outcome.verdict.exit_code();
            let report = json!({
                "command": name,
                "inputs": inputs,
                "options": options,
                "verdict": outcome.verdict,
                "exit_code": code,
                "result": outcome.result,
            });
            (report, code)
        }
        Err(e) => {
            let (kind, code) = error_parts(&e);
            eprintln!("skelvd: {e}");
            let report = json!({
                "command": name,
                "options": options,
                "verdict": "error",
                "exit_code": code,
                "error": { "kind": kind, "message": e.to_string() },
            });
            (report, code)
        }
    };
    if cli.timing {
        report["timing"] = json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
    }
    match cli.format {
        Format::Json => println!("{}", render::json(&report)),
        Format::Text => print!("{}", render::text(&report)),
    }
    ExitCode::from(code)
}
