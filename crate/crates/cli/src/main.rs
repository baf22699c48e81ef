//! `qfano`: command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.

mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use render::Format;

#[derive(Debug, Parser)]
#[command(name = "qfano", version, about = "Numerical invariants of Q-Fano threefolds of large index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// h^0(mA) for m = 0..=to by orbifold Riemann-Roch.
    Hilbert(HilbertArgs),
    /// Numerical candidates of a given Fano index.
    Search(SearchArgs),
    /// Invariants and Hilbert series of a weighted hypersurface.
    Wps(WpsArgs),
    /// T-Hilbert series of a hypersurface quotient by mu_n.
    Equivariant(EquivariantArgs),
    /// Normal form case of a degree-10 hypersurface in P(1,2,3,4,5).
    #[command(name = "classify-x10")]
    ClassifyX10(ClassifyArgs),
    /// Sarkisov link arithmetic.
    Link {
        #[command(subcommand)]
        command: LinkCommand,
    },
    /// dim |kA_S| on the del Pezzo surfaces with cyclic class group.
    Dp(DpArgs),
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[arg(long)]
    q: u32,
    /// A^3 as "p/q".
    #[arg(long = "A3")]
    a3: String,
    /// Basket indices, e.g. "2,2,3,4" or "2^3,3,4,5"; pairing units as "r:b".
    #[arg(long)]
    basket: String,
    #[arg(long)]
    to: Option<u32>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long = "require-dim3A-le", allow_hyphen_values = true)]
    require_dim3a_le: Option<i64>,
    /// Prime order of a torsion subgroup of Cl X.
    #[arg(long)]
    torsion: Option<u32>,
    #[arg(long)]
    jobs: Option<usize>,
    /// JSON search config; explicit flags override its fields.
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct WpsArgs {
    /// Weights, e.g. "1,2,3,4,5".
    #[arg(long)]
    weights: String,
    #[arg(long)]
    degree: u32,
    #[arg(long, default_value_t = 10)]
    to: u32,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct EquivariantArgs {
    /// "w1,..,w5 : d / mu n : c1,..,c5 ; cf".
    #[arg(long)]
    model: String,
    #[arg(long, default_value_t = 5)]
    to: u32,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Polynomial in x1..x5, e.g. "x5^2 + x4^2*x2 + x4*x3^2 + x1^10".
    #[arg(long)]
    poly: String,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Subcommand)]
enum LinkCommand {
    /// Solutions of the link relations for a JSON scenario.
    Solve {
        #[arg(long)]
        scenario: std::path::PathBuf,
        /// Print every candidate with the check that killed it.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Replays a library elimination.
    Replay {
        #[arg(long)]
        id: String,
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Ids of the replay library.
    List,
}

#[derive(Debug, Args)]
struct DpArgs {
    /// Surface name (P2, P(1,1,2), P(1,2,3), S_DP5); all four if omitted.
    #[arg(long)]
    surface: Option<String>,
    #[arg(long, default_value_t = 5)]
    to: u32,
    #[command(flatten)]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Hilbert(a) => commands::hilbert(a.q, &a.a3, &a.basket, a.to, a.format.format),
        Command::Search(a) => commands::search(
            commands::SearchFlags { q: a.q, dim3: a.require_dim3a_le, torsion: a.torsion, jobs: a.jobs, config: a.config },
            a.format.format,
        ),
        Command::Wps(a) => commands::wps(&a.weights, a.degree, a.to, a.format.format),
        Command::Equivariant(a) => commands::equivariant(&a.model, a.to, a.format.format),
        Command::ClassifyX10(a) => commands::classify(&a.poly, a.format.format),
        Command::Link { command } => match command {
            LinkCommand::Solve { scenario, trace, format } => commands::link_solve(&scenario, trace, format.format),
            LinkCommand::Replay { id, trace, format } => commands::link_replay(&id, trace, format.format),
            LinkCommand::List => Ok(commands::link_list()),
        },
        Command::Dp(a) => commands::dp(a.surface.as_deref(), a.to, a.format.format),
    };
    match out {
        Ok(text) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
