//! `monofan`: batch front end for the monodromy fan toolkit.
//!
//! Exit statuses: 0 pass, 1 failed check (the report carries a witness),
//! 2 I/O or parse error, 3 resource cap exceeded.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use monofan::construct::Caps;
use monofan::io::to_json;

use crate::report::{render_text, Failure, Report};

const CAPS_ENV: &str = "MONODROMY_FAN_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "monofan", version, about = "Monodromy cones, complexes and fan refinements")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Maximum number of cells in one stratum's complex.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_cells: Option<u64>,
    /// Maximum number of hyperintersection states per stratum.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the invariants of a stratification.
    Validate { file: String },
    /// Print the monodromy cone of one stratum.
    Cmc {
        file: String,
        #[arg(long)]
        stratum: String,
    },
    /// Construct a compatible complex on every stratum.
    CmcxBuild {
        file: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Check a complex document for compatibility under adjacent maps.
    CmcxCheck { cmcx: String },
    /// Nilpotent cone closures, over the refined fan when a complex is given.
    Ncc {
        file: String,
        #[arg(long)]
        cmcx: Option<String>,
        #[arg(long)]
        stratum: Option<String>,
    },
    /// Hyperintersection along a path `A | B | C`, or all of them from a stratum.
    Hyperint {
        file: String,
        #[arg(long, conflicts_with = "from", required_unless_present = "from")]
        path: Option<String>,
        #[arg(long, requires = "enumerate")]
        from: Option<String>,
        #[arg(long)]
        enumerate: bool,
    },
    /// Refine the Kato fan along a complex.
    RefineFan {
        file: String,
        #[arg(long)]
        cmcx: String,
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long)]
        simplicialize: bool,
    },
    /// Check that a refined fan is compatible with a complex.
    CheckCompat { fan: String, cmcx: String },
    /// Weight filtration of a nilpotent matrix, or consistency over a cone.
    Weightfilt {
        file: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        center: i64,
    },
    /// List the bundled stratifications, or check one of them.
    Fixtures {
        name: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Cmc { .. } => "cmc",
            Command::CmcxBuild { .. } => "cmcx-build",
            Command::CmcxCheck { .. } => "cmcx-check",
            Command::Ncc { .. } => "ncc",
            Command::Hyperint { .. } => "hyperint",
            Command::RefineFan { .. } => "refine-fan",
            Command::CheckCompat { .. } => "check-compat",
            Command::Weightfilt { .. } => "weightfilt",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}

/// Caps from the defaults, then `MONODROMY_FAN_CAPS` (`cells=N,states=M`),
/// then the flags.
fn caps(cli: &Cli, env: Option<&str>) -> Result<Caps, Failure> {
    let mut caps = Caps::default();
    if let Some(text) = env {
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Failure::parse(format!("{CAPS_ENV}: expected cells=N,states=M, found {part:?}"));
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            if value == 0 {
                return Err(bad());
            }
            match key.trim() {
                "cells" => caps.cells = value,
                "states" => caps.states = value,
                _ => return Err(bad()),
            }
        }
    }
    if let Some(n) = cli.max_cells {
        caps.cells = n as usize;
    }
    if let Some(n) = cli.max_states {
        caps.states = n as usize;
    }
    Ok(caps)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let caps = caps(cli, std::env::var(CAPS_ENV).ok().as_deref())?;
    match &cli.command {
        Command::Validate { file } => commands::validate(file),
        Command::Cmc { file, stratum } => commands::cmc(file, stratum),
        Command::CmcxBuild { file, output } => commands::cmcx_build(file, output.as_deref(), &caps),
        Command::CmcxCheck { cmcx } => commands::cmcx_check(cmcx),
        Command::Ncc { file, cmcx, stratum } => commands::ncc_cmd(file, cmcx.as_deref(), stratum.as_deref()),
        Command::Hyperint { file, path, from, .. } => match (path, from) {
            (Some(p), _) => commands::hyperint_path(file, p),
            (None, Some(f)) => commands::hyperint_enumerate(file, f, &caps),
            (None, None) => Err(Failure::parse("give --path or --from")),
        },
        Command::RefineFan { file, cmcx, output, simplicialize } => {
            commands::refine(file, cmcx, output.as_deref(), *simplicialize)
        }
        Command::CheckCompat { fan, cmcx } => commands::check_compat(fan, cmcx),
        Command::Weightfilt { file, center } => commands::weightfilt(file, *center, cli.seed),
        Command::Fixtures { name, output } => commands::fixtures(name.as_deref(), output.as_deref(), &caps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let report = run(&cli).unwrap_or_else(|f| f.into_report(cli.command.name()));
    let value = report.to_value();
    let text = match cli.format {
        Format::Json => to_json(&value),
        Format::Text => render_text(&value),
    };
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(text.as_bytes());
    ExitCode::from(report.exit)
}
