//! `bimoore`: bound tables, constructions, verification, spectra and census
//! runs for bipartite biregular graphs.

mod commands;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "bimoore",
    version,
    about = "Moore bounds and extremal bipartite biregular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a grid of best Moore bounds for one diameter.
    Bounds(BoundsArgs),
    /// Build a graph from a named construction.
    Construct(ConstructArgs),
    /// Report the parameters of graphs in a file and check expectations.
    Verify(VerifyArgs),
    /// Characteristic polynomial, spectrum and spectral identities.
    Spectrum(SpectrumArgs),
    /// Exhaustive search for Moore graphs.
    Enumerate(EnumerateArgs),
    /// Convert graphs to another format.
    Export(ExportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Graph6,
    Biadjacency,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Subdivision,
    Ktuple,
    /// Pick subdivision or k-tuple from the tags written by `construct`.
    Identity,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Diameter.
    #[arg(long)]
    d: u64,
    /// Largest r.
    #[arg(long)]
    max: u64,
    /// Smallest r and s.
    #[arg(long, default_value_t = 2)]
    min: u64,
    /// Largest s (defaults to --max).
    #[arg(long)]
    s_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Construction name; run with `list` to see all of them.
    name: String,
    /// Numeric parameters of the construction.
    params: Vec<String>,
    /// Named graph the transform is applied to.
    #[arg(long)]
    of: Option<String>,
    /// Graph file the transform is applied to, or an external Moore graph.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Side that is copied by k-tuple and semi-double.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    side: u8,
    /// Multiplicity for k-tuple.
    #[arg(long)]
    k: Option<usize>,
    /// Exchange the two sides of the result.
    #[arg(long)]
    swap_sides: bool,
    #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
    format: GraphFormat,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Graph file, or `-` for stdin.
    file: String,
    /// Expected degrees and diameter.
    #[arg(long, num_args = 3, value_names = ["R", "S", "D"])]
    expect: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    /// Graph file, or `-` for stdin.
    file: String,
    #[arg(long, value_enum)]
    check: Option<Check>,
    /// Multiplicity for the k-tuple check; read from the file tags if absent.
    #[arg(long)]
    k: Option<usize>,
    /// Treat the input as the base graph and build the transform from it.
    #[arg(long)]
    base: bool,
    /// Side copied when building a k-tuple graph from a base graph.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    side: u8,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    r: usize,
    s: usize,
    d: usize,
    /// Size of side 1 (degree r); with --n2 searches one order only.
    #[arg(long, requires = "n2")]
    n1: Option<usize>,
    #[arg(long, requires = "n1")]
    n2: Option<usize>,
    /// No work limit.
    #[arg(long, conflicts_with = "limit")]
    exhaustive: bool,
    /// Work limit in search nodes.
    #[arg(long, env = "BIMOORE_WORK_LIMIT")]
    limit: Option<u64>,
    /// Directory receiving representatives as graph6 files.
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Resume file; needs --n1 and --n2.
    #[arg(long, requires = "n1")]
    checkpoint: Option<PathBuf>,
    /// Start the census at the bound without the odd-diameter improvement.
    #[arg(long)]
    plain_bound: bool,
    /// Count disconnected graphs too.
    #[arg(long)]
    all: bool,
    /// Representatives kept per order.
    #[arg(long, default_value_t = 100)]
    reps: usize,
}

#[derive(Args, Debug)]
struct ExportArgs {
    /// Graph file, or `-` for stdin.
    file: String,
    #[arg(long, value_enum)]
    format: GraphFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit status, following the documented convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Failed,
    Usage,
    Incomplete,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(match s {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Usage => 2,
            Status::Incomplete => 3,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(a) => commands::bounds(a),
        Command::Construct(a) => commands::construct(a),
        Command::Verify(a) => commands::verify(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Export(a) => commands::export(a),
    };
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            commands::status_of(&e).into()
        }
    }
}
