//! Command-line front end for `flowseries`.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use flowseries::verify::Fault;

use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(name = "flowseries", version, about = "Flows on rooted trees, their Pre-Lie and Dendriform series, and Lie idempotents")]
struct Cli {
    /// Truncation degree N.
    #[arg(long, short = 'N', global = true, env = "FLOWSERIES_DEGREE", default_value_t = 5)]
    degree: usize,
    /// Precision in t for expansions and oracle counts.
    #[arg(long, short = 'M', global = true, env = "FLOWSERIES_ORDER", default_value_t = 8)]
    order: usize,
    #[arg(long, short = 'f', global = true, env = "FLOWSERIES_FORMAT", value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "FLOWSERIES_THREADS")]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "FLOWSERIES_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    CorruptLinearTwo,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate rooted trees with automorphism counts.
    Trees {
        #[arg(long)]
        size: usize,
        /// Planar binary trees of this degree, with canopies.
        #[arg(long)]
        planar: bool,
    },
    /// Flow generating functions of one tree and enumerated counts.
    Flow {
        /// Tree in parenthesis encoding, e.g. "(()(()))".
        #[arg(long)]
        tree: String,
        #[arg(long, default_value = "all")]
        class: String,
    },
    /// Dump a Pre-Lie series: E_t, D_t, Ec_t, E, D, Ec, F, Y, Z, H:k, Crls.
    Series {
        #[arg(long)]
        name: String,
    },
    /// Dump a Dendriform series: sU_t, sV_t, sD_t, sE_t, sEc_t, sF, sF_t, sZ, R, L.
    Dend {
        #[arg(long)]
        name: String,
    },
    /// Dendriform image of a Pre-Lie series.
    Phi {
        #[arg(long)]
        name: String,
    },
    /// Ribbon table of a family and its quasi-idempotency verdict.
    Idempotent {
        /// D, F, F_t or Z.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Run the theorem suite and/or the conjecture scans.
    Verify {
        #[arg(long)]
        theorems: bool,
        #[arg(long)]
        conjectures: bool,
        /// Cap every conjecture scan at this size.
        #[arg(long)]
        limit: Option<usize>,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Deliberately corrupt an input.
        #[arg(long, value_enum)]
        fault: Option<FaultArg>,
    },
    /// Closed flows on the linear tree and their Dyck paths.
    Dyck {
        #[arg(long)]
        n: usize,
    },
}

fn run(cli: Cli) -> Result<Output> {
    if cli.degree < 1 {
        bail!("--degree must be at least 1");
    }
    if cli.order < 2 {
        bail!("--order must be at least 2");
    }
    if let Some(w) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global()?;
    }
    let (n, m) = (cli.degree, cli.order);
    match cli.command {
        Command::Trees { size, planar } => commands::trees(size, planar),
        Command::Flow { tree, class } => commands::flow(&tree, &class, m),
        Command::Series { name } => commands::series(&name, n, m),
        Command::Dend { name } => commands::dend(&name, n),
        Command::Phi { name } => commands::phi_image(&name, n, m),
        Command::Idempotent { family, n } => commands::idempotent(&family, n),
        Command::Verify { theorems, conjectures, limit, out, fault } => {
            let fault = fault.map(|FaultArg::CorruptLinearTwo| Fault::CorruptLinearTwo);
            let (report, output) = commands::verify(theorems, conjectures, n, m, cli.seed, limit, fault)?;
            for c in report.proved_failures() {
                eprintln!("FAIL {} witness={}", c.id, c.witness.as_deref().unwrap_or("-"));
            }
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&report.to_json())? + "\n")?;
            }
            Ok(output)
        }
        Command::Dyck { n } => commands::dyck(n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = out.write(format, &mut stdout).and_then(|_| Ok(stdout.flush()?)) {
                eprintln!("flowseries: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("flowseries: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
