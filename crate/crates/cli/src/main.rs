//! `orbifusion` command-line front end.
//!
//! Exit codes: 0 success, 1 validation or assumption failure, 2 unsupported
//! structure, 3 schema, usage or I/O error.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use orbifusion::Error;

#[derive(Parser, Debug)]
#[command(name = "orbifusion", version, about = "Fusion rings, cyclic orbifolds and principal graphs")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the ring axioms of a ring file.
    Validate { ring: PathBuf },
    /// Frobenius–Perron dimensions of a ring file.
    Dims { ring: PathBuf },
    /// Hypotheses A1/A3 and the gcd criterion for the obstruction.
    Obstruction {
        ring: PathBuf,
        #[command(flatten)]
        pair: AlphaRho,
    },
    /// Orbifold sectors, conjugacy and (optionally) the folded graph.
    Orbifold(OrbifoldArgs),
    #[command(subcommand)]
    Graph(GraphCommand),
    #[command(subcommand)]
    Su3(Su3Command),
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug)]
struct AlphaRho {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    rho: String,
}

#[derive(Args, Debug)]
pub struct OrbifoldArgs {
    /// Ring file; omit when `--request` is given.
    ring: Option<PathBuf>,
    /// Orbifold request file (ring, alpha, rho, attestation, obstruction).
    #[arg(long, conflicts_with_all = ["ring", "alpha", "rho", "obstruction"])]
    request: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    /// Attest that the Loi invariant of alpha is trivial (A2). Required.
    #[arg(long)]
    assume_loi_trivial: bool,
    /// Obstruction as an exact phase `j/n`, meaning exp(2πi j/n).
    #[arg(long)]
    obstruction: Option<String>,
    /// Principal graph to fold.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Explicit graph permutation (JSON object vertex -> vertex).
    #[arg(long, requires = "graph")]
    perm: Option<PathBuf>,
    /// Write the folded graph as DOT.
    #[arg(long, requires = "graph")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Recognize a finite or affine Dynkin diagram.
    Identify {
        graph: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Fold a graph along an explicit symmetry.
    Fold {
        graph: PathBuf,
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        order: u32,
        /// Write the folded graph file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Su3Command {
    /// Level-k fusion of two weights `a,b`.
    Fuse {
        #[arg(long)]
        level: u32,
        lambda: String,
        mu: String,
    },
    /// `N_{ρρ}^ρ` for `ρ = (k,k)` at level 3k.
    M {
        #[arg(long)]
        k: u32,
    },
    /// Export the level-k ring in the ring file format.
    Ring {
        #[arg(long)]
        level: u32,
        /// Only the weights with a ≡ b (mod 3).
        #[arg(long)]
        triality_zero: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    /// Run one entry, or every entry with `--all`.
    Run {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Write an entry's ring (and graph) files into a directory.
    Export {
        name: String,
        #[arg(long)]
        dir: PathBuf,
    },
}

/// Result of a subcommand: text for humans, JSON for `--json`, and whether
/// the checked property held.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Schema(_) | Error::UnknownEntry(_) => 3,
        Error::Unsupported(_) => 2,
        Error::Assumption { .. }
        | Error::Precondition(_)
        | Error::ExplicitInputRequired(_)
        | Error::Numeric(_)
        | Error::Symmetry(_) => 1,
    }
}

fn run(cli: Cli) -> orbifusion::Result<Outcome> {
    match cli.command {
        Command::Validate { ring } => commands::validate(&ring),
        Command::Dims { ring } => commands::dims(&ring),
        Command::Obstruction { ring, pair } => commands::obstruction(&ring, &pair.alpha, &pair.rho),
        Command::Orbifold(args) => commands::orbifold(&args),
        Command::Graph(GraphCommand::Identify { graph, dot }) => {
            commands::graph_identify(&graph, dot.as_deref())
        }
        Command::Graph(GraphCommand::Fold {
            graph,
            perm,
            order,
            out,
            dot,
        }) => commands::graph_fold(&graph, &perm, order, out.as_deref(), dot.as_deref()),
        Command::Su3(Su3Command::Fuse { level, lambda, mu }) => {
            commands::su3_fuse(level, &lambda, &mu)
        }
        Command::Su3(Su3Command::M { k }) => commands::su3_m(k),
        Command::Su3(Su3Command::Ring {
            level,
            triality_zero,
            out,
        }) => commands::su3_ring(level, triality_zero, out.as_deref()),
        Command::Catalog(CatalogCommand::List) => commands::catalog_list(),
        Command::Catalog(CatalogCommand::Run { name, all }) => {
            commands::catalog_run(if all { None } else { name.as_deref() })
        }
        Command::Catalog(CatalogCommand::Export { name, dir }) => {
            commands::catalog_export(&name, &dir)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            let body = if json {
                serde_json::to_string_pretty(&outcome.json).expect("serializable report") + "\n"
            } else {
                outcome.text
            };
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(err) => {
            if json {
                let body = serde_json::json!({ "error": err.to_string(), "exit_code": exit_code(&err) });
                let text = serde_json::to_string_pretty(&body).expect("serializable error");
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
