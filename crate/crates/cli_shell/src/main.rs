//! `stabatlas`: command-line front end for the Clifford/stabilizer toolkit.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "stabatlas", version, about = "Clifford groups, stabilizer entropies, Dicke cones and magic")]
struct Cli {
    /// Worker threads (default: all cores). Never changes output bytes.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Numerical tolerance for state and entropy comparisons.
    #[arg(long, global = true, default_value_t = group_engine::DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// What to print on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for output files and the run manifest.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Ignore and do not write the group cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Subgroup closure.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Cayley graph of a generated subgroup.
    Cayley(GroupArgs),
    /// Reachability graph of a state (left cosets of its stabilizer).
    Reach(StateArgs),
    /// Contracted graph of a state (double cosets).
    Contract(StateArgs),
    /// Entropy-vector census of all stabilizer states.
    Census {
        #[arg(long)]
        n: usize,
    },
    /// Dicke-state entropies, cone checks and star graphs.
    #[command(subcommand)]
    Dicke(DickeCmd),
    /// Spectrum-based magic estimates.
    #[command(subcommand)]
    Magic(MagicCmd),
    /// Transverse-field Ising ground-state magic scan.
    Ising(IsingArgs),
    /// Built-in consistency checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GroupCmd {
    /// Order, diameter and depth histogram.
    Close(GroupArgs),
}

#[derive(Args, Debug, Serialize)]
struct GroupArgs {
    /// Comma-separated generators from H1,H2,P1,P2,C12,C21 (or "all").
    #[arg(long, default_value = "H1,H2,C12,C21")]
    gens: String,
    /// Identify elements differing by a global phase.
    #[arg(long)]
    mod_phase: bool,
}

#[derive(Args, Debug, Serialize)]
struct StateArgs {
    /// dicke:N,k | ghz:N | w:N | zeros:N | basis:bits | file:path
    #[arg(long)]
    state: String,
    #[command(flatten)]
    group: GroupArgs,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum DickeCmd {
    /// S_l for l = 0..=N.
    Entropy {
        n: usize,
        k: usize,
        /// Report bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// Symmetrized entropy vector and cone inequalities.
    Cone { n: usize, k: usize },
    /// Star-graph realization of S_l.
    Stars { n: usize, k: usize, l: usize },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum MagicCmd {
    /// Estimate, average and entropy bounds for a Schmidt spectrum.
    M2 {
        /// JSON array of eigenvalues, or an object with a "values" array.
        #[arg(long)]
        spectrum: PathBuf,
    },
}

#[derive(Args, Debug, Serialize)]
struct IsingArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = -0.25, allow_hyphen_values = true)]
    gmin: f64,
    #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
    gmax: f64,
    /// Number of evenly spaced g values, endpoints included.
    #[arg(long, default_value_t = 11)]
    steps: usize,
    /// Explicit comma-separated g values; overrides the grid.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Comma-separated block sizes (sites 1..=cut); default n/2.
    #[arg(long)]
    cut: Option<String>,
    /// Longitudinal bias field b >= 0.
    #[arg(long, default_value_t = 0.0)]
    bias: f64,
    #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
    solver: SolverArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SolverArg {
    Auto,
    Dense,
    Lanczos,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum VerifyCmd {
    /// Every catalog relation as an exact matrix identity.
    Relations,
}

/// Usage problems exit with 2, computation problems with 1.
pub enum Failure {
    Usage(String),
    Compute(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Compute(e.into())
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Group(_) => "group close",
        Command::Cayley(_) => "cayley",
        Command::Reach(_) => "reach",
        Command::Contract(_) => "contract",
        Command::Census { .. } => "census",
        Command::Dicke(DickeCmd::Entropy { .. }) => "dicke entropy",
        Command::Dicke(DickeCmd::Cone { .. }) => "dicke cone",
        Command::Dicke(DickeCmd::Stars { .. }) => "dicke stars",
        Command::Magic(_) => "magic m2",
        Command::Ising(_) => "ising",
        Command::Verify(_) => "verify relations",
    }
}

fn render(out: &output::Output, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(out.text.clone()),
        Format::Csv => out.csv.clone().ok_or_else(|| Failure::Usage("this command has no CSV output".into())),
        Format::Json => Ok(serde_json::to_string_pretty(&out.json).map_err(anyhow::Error::from)? + "\n"),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if !(cli.tolerance > 0.0 && cli.tolerance < 1.0) {
        return Err(Failure::Usage(format!("--tolerance {} must lie in (0, 1)", cli.tolerance)));
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(anyhow::Error::from)?;
    }
    let ctx = commands::Context { tolerance: cli.tolerance, cache: (!cli.no_cache).then(commands::cache_dir) };
    let out = commands::execute(&cli.command, &ctx)?;
    let text = render(&out, cli.format)?;
    if let Some(dir) = &cli.out {
        let mut params = serde_json::to_value(&cli.command).map_err(anyhow::Error::from)?;
        if let Some(obj) = params.as_object_mut() {
            obj.insert("tolerance".into(), cli.tolerance.into());
        }
        let m = output::write_outputs(dir, &out, command_name(&cli.command), params)?;
        eprintln!("wrote {} files to {} (manifest {})", m.body.outputs.len() + 1, dir.display(), &m.manifest_hash[..16]);
    }
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes()).map_err(anyhow::Error::from)?;
    stdout.flush().map_err(anyhow::Error::from)?;
    match out.failure {
        Some(msg) => Err(Failure::Compute(anyhow::anyhow!(msg))),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
