//! Command-line front end for the three-spin refrigerator simulator.
//!
//! Every subcommand reads a flat `key = value` config (optional) overlaid by
//! flags, runs one engine and writes a CSV or JSON table to `--out` or
//! stdout. Diagnostics go to stderr. Exit codes: 0 success, 1 validation
//! error or failed check, 2 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use qfridge_core::bcs::PRNG_ID;

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use commands::Outcome;
use config::{read_pairs, Format, RunConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "qfridge",
    version,
    about = "Three-spin self-contained quantum refrigerator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// One exchange per theta: populations, heats, temperatures, entropies.
    Exchange,
    /// Work/heat ledger over the compiled 40-step gate sequence.
    Ledger,
    /// Repeated exchange/reset cycles for each theta.
    Cycles,
    /// Heat absorbed by spin 1 over a (T2, T3) grid.
    PhaseDiagram,
    /// Static and measured coefficient of performance over a T2 sweep.
    Cop,
    /// Stochastic algorithmic cooling against the bias recursion.
    Bcs,
    /// Check the gate sequence against the direct exponential.
    VerifyDecomposition,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Exchange => "exchange",
            Command::Ledger => "ledger",
            Command::Cycles => "cycles",
            Command::PhaseDiagram => "phase-diagram",
            Command::Cop => "cop",
            Command::Bcs => "bcs",
            Command::VerifyDecomposition => "verify-decomposition",
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct Opts {
    /// key=value config file; flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// csv or json
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// comma-separated evolution angles g*t
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// number of refrigeration cycles
    #[arg(long, global = true)]
    pub cycles: Option<String>,
    /// T2min,T2max,T3min,T3max,steps
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// multiplier applied to energy and temperature columns
    #[arg(long = "delta-scale", global = true)]
    pub delta_scale: Option<String>,
    /// PRNG seed for the bcs command
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// bits per block for the bcs command
    #[arg(long, global = true)]
    pub bits: Option<String>,
    /// initial bias for the bcs command
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    /// compression rounds for the bcs command
    #[arg(long, global = true)]
    pub rounds: Option<String>,
    /// permutation of the four term blocks, e.g. 3,2,1,0
    #[arg(long = "block-order", global = true)]
    pub block_order: Option<String>,
    /// energy gap of spin 1
    #[arg(long, global = true)]
    pub e1: Option<String>,
    /// energy gap of spin 2
    #[arg(long, global = true)]
    pub e2: Option<String>,
    /// energy gap of spin 3
    #[arg(long, global = true)]
    pub e3: Option<String>,
    /// bath temperature of spin 1
    #[arg(long, global = true)]
    pub t1: Option<String>,
    /// bath temperature of spin 2
    #[arg(long, global = true)]
    pub t2: Option<String>,
    /// bath temperature of spin 3
    #[arg(long, global = true)]
    pub t3: Option<String>,
    /// exchange coupling
    #[arg(long, global = true)]
    pub g: Option<String>,
}

impl Opts {
    fn pairs(&self) -> Vec<(String, String)> {
        let flags = [
            ("out", &self.out),
            ("format", &self.format),
            ("theta", &self.theta),
            ("cycles", &self.cycles),
            ("grid", &self.grid),
            ("delta_scale", &self.delta_scale),
            ("seed", &self.seed),
            ("bits", &self.bits),
            ("epsilon", &self.epsilon),
            ("rounds", &self.rounds),
            ("block_order", &self.block_order),
            ("e1", &self.e1),
            ("e2", &self.e2),
            ("e3", &self.e3),
            ("t1", &self.t1),
            ("t2", &self.t2),
            ("t3", &self.t3),
            ("g", &self.g),
        ];
        flags
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect()
    }
}

/// Config file entries followed by flag overrides.
pub fn resolve(opts: &Opts) -> Result<RunConfig, CliError> {
    let mut pairs = match &opts.config {
        Some(path) => read_pairs(path)?,
        None => Vec::new(),
    };
    pairs.extend(opts.pairs());
    RunConfig::from_pairs(&pairs)
}

pub fn dispatch(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Exchange => commands::exchange_cmd(cfg),
        Command::Ledger => commands::ledger_cmd(cfg),
        Command::Cycles => commands::cycles_cmd(cfg),
        Command::PhaseDiagram => commands::phase_diagram_cmd(cfg),
        Command::Cop => commands::cop_cmd(cfg),
        Command::Bcs => commands::bcs_cmd(cfg),
        Command::VerifyDecomposition => commands::verify_cmd(cfg),
    }
}

pub fn meta(command: Command, cfg: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "tool": "qfridge",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "prng": PRNG_ID,
        "delta_scale": cfg.delta_scale,
        "units": "internal units delta = k_B = 1, energy and temperature columns multiplied by delta_scale",
        "config": cfg.echo(),
    })
}

/// Encoded output of a finished command.
pub fn render(command: Command, cfg: &RunConfig, outcome: &Outcome) -> String {
    match cfg.format {
        Format::Csv => outcome.table.to_csv(cfg.delta_scale),
        Format::Json => outcome.table.to_json(cfg.delta_scale, meta(command, cfg)),
    }
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write stdout: {e}")))
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = resolve(&cli.opts)?;
    let outcome = dispatch(cli.command, &cfg)?;
    write_output(&cfg, &render(cli.command, &cfg, &outcome))?;
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    if let Some(msg) = &outcome.failure {
        eprintln!("qfridge: {msg}");
        return Ok(1);
    }
    Ok(0)
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    eprintln!("qfridge: missing subcommand (try --help)");
                    1
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("invalid arguments");
                    eprintln!("qfridge: {}", first.trim_start_matches("error: "));
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qfridge: {e}");
            e.exit_code()
        }
    }
}
