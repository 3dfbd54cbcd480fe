//! Command-line interface.
//!
//! Exit codes: 0 success, 1 mathematical failure (a NotRigid-style error or
//! a negative rigidity verdict), 2 input error, 3 cap exceeded. Reports are
//! still emitted for negative verdicts and partial graphs.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use silting::error::Error;
use silting::io::{parse_field_flag, AnySession, OutputFormat};
use silting::tilting::Caps;

#[derive(Parser)]
#[command(
    name = "silting",
    about = "Exact presentation calculus over bound quiver algebras: E-invariants, silting objects, tau-tilting pairs and exchange graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Bundle document with the algebra and named modules/presentations
    #[arg(long)]
    input: PathBuf,
    /// Coefficient field override: `p` (default prime), `Q`, or a prime
    #[arg(long)]
    field: Option<String>,
    /// Seed for the randomized internals (deterministic per seed)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated exchange-graph vertices
    #[arg(long, default_value_t = 5000)]
    cap_vertices: usize,
    /// Cap on the completion candidate pool
    #[arg(long, default_value_t = 5000)]
    cap_pool: usize,
    /// Output format: text, json, or dot (graph only)
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of the algebra: dimension, basis, Hom-projective table
    AlgebraInfo(Common),
    /// dim E(f1, f2) for two presentation handles
    EDim {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
    },
    /// Rigidity test E(f, f) = 0; exits 1 on a negative verdict
    Rigid {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pres: String,
    },
    /// Minimal projective presentation of a module handle
    MinPres {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    /// Auslander-Reiten translate of a module handle
    Tau {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    /// Complete a tau-rigid module to a tau-tilting module, or a rigid
    /// presentation to a silting object
    Complete {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        pres: Option<String>,
    },
    /// Krull-Schmidt decomposition of a presentation handle
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pres: String,
    },
    /// Mutate a silting presentation at one summand; reports exchange data
    Mutate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pres: String,
        #[arg(long)]
        summand: usize,
    },
    /// Enumerate the exchange graph (text, json or dot)
    Graph(Common),
}

struct Outcome {
    report: String,
    code: i32,
    note: Option<String>,
}

fn ok(report: String) -> Result<Outcome, Error> {
    Ok(Outcome {
        report,
        code: 0,
        note: None,
    })
}

fn session_for(common: &Common) -> Result<(AnySession, OutputFormat), Error> {
    let format = OutputFormat::parse(&common.format)?;
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", common.input.display())))?;
    let field = common.field.as_deref().map(parse_field_flag).transpose()?;
    let caps = Caps {
        max_graph_vertices: common.cap_vertices,
        max_pool: common.cap_pool,
    };
    let session = AnySession::from_json(&text, field, caps, common.seed)?;
    Ok((session, format))
}

fn run_command(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::AlgebraInfo(c) => {
            let (s, f) = session_for(c)?;
            ok(s.cmd_algebra_info(f)?)
        }
        Command::EDim { common, f1, f2 } => {
            let (s, f) = session_for(common)?;
            ok(s.cmd_e_dim(f1, f2, f)?.0)
        }
        Command::Rigid { common, pres } => {
            let (s, f) = session_for(common)?;
            let (report, rigid) = s.cmd_rigid(pres, f)?;
            Ok(Outcome {
                report,
                code: if rigid { 0 } else { 1 },
                note: (!rigid).then(|| format!("presentation '{pres}' is not rigid")),
            })
        }
        Command::MinPres { common, module } => {
            let (s, f) = session_for(common)?;
            ok(s.cmd_min_pres(module, f)?)
        }
        Command::Tau { common, module } => {
            let (s, f) = session_for(common)?;
            ok(s.cmd_tau(module, f)?)
        }
        Command::Complete {
            common,
            module,
            pres,
        } => {
            let (s, f) = session_for(common)?;
            match (module, pres) {
                (Some(m), None) => ok(s.cmd_complete_module(m, f)?),
                (None, Some(p)) => ok(s.cmd_complete_pres(p, f)?),
                _ => Err(Error::invalid(
                    "complete needs exactly one of --module or --pres",
                )),
            }
        }
        Command::Decompose { common, pres } => {
            let (s, f) = session_for(common)?;
            ok(s.cmd_decompose(pres, f)?)
        }
        Command::Mutate {
            common,
            pres,
            summand,
        } => {
            let (s, f) = session_for(common)?;
            ok(s.cmd_mutate(pres, *summand, f)?)
        }
        Command::Graph(c) => {
            let (s, f) = session_for(c)?;
            let (report, complete) = s.cmd_graph(f)?;
            Ok(Outcome {
                report,
                code: if complete { 0 } else { 3 },
                note: (!complete).then(|| {
                    format!(
                        "vertex cap {} exceeded; the graph is partial",
                        c.cap_vertices
                    )
                }),
            })
        }
    }
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::AlgebraInfo(c) | Command::Graph(c) => c,
        Command::EDim { common, .. }
        | Command::Rigid { common, .. }
        | Command::MinPres { common, .. }
        | Command::Tau { common, .. }
        | Command::Complete { common, .. }
        | Command::Decompose { common, .. }
        | Command::Mutate { common, .. } => common,
    }
}

fn emit(common: &Common, report: &str) -> Result<(), String> {
    match &common.out {
        None => {
            print!("{report}");
            std::io::stdout().flush().map_err(|e| e.to_string())
        }
        Some(path) => std::fs::write(path, report.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(&cli.command) {
        Ok(outcome) => {
            if let Err(e) = emit(common_of(&cli.command), &outcome.report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if let Some(note) = outcome.note {
                eprintln!("note: {note}");
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
