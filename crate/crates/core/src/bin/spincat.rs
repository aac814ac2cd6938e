//! Command-line front end: `run`, `relax`, `poisson`, `oracle`, `validate`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.
//! `SPINCAT_THREADS` caps the number of scenarios run concurrently.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};

use spincat::electrostatics::{poisson_report, DeviceStack, SolverOptions};
use spincat::oracle::{oracle_tables, DEFAULT_TABLE_GAMMAS};
use spincat::runner::{relax_report, run_scenario};
use spincat::scenario::{Severity, PRESETS};
use spincat::{Error, Result, Scenario};

const THREADS_VAR: &str = "SPINCAT_THREADS";

#[derive(Parser)]
#[command(name = "spincat", version, about = "Spin-dependent coherent and cat states in a gated nanowire")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more scenarios and write their artifacts.
    Run {
        /// Preset name (fig2, fig3, fig4) or path to a scenario TOML; repeatable.
        #[arg(long, required = true)]
        scenario: Vec<String>,
        /// Output directory; with several scenarios each gets a subdirectory named after it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Relax the ground state of a scenario and report its energies as JSON.
    Relax {
        #[arg(long, default_value = "fig2")]
        scenario: String,
    },
    /// Solve the cross-section electrostatics and write phi.csv and poisson.json.
    Poisson {
        /// Take the device stack from this scenario (preset or path).
        #[arg(long)]
        scenario: Option<String>,
        /// Side-gate amplitude V_L = −V_R, mV.
        #[arg(long, default_value_t = 500.0)]
        v_lr_mv: f64,
        /// Override the cell size, nm.
        #[arg(long)]
        cell_nm: Option<f64>,
        /// Relative residual tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print (or write) the table of closed-form reference values.
    Oracle {
        /// Couplings γE to tabulate, meV·nm.
        #[arg(long, value_delimiter = ',')]
        gamma: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a scenario without running it.
    Validate {
        #[arg(long)]
        scenario: String,
    },
    /// Print a preset as TOML, as a starting point for custom scenarios.
    Preset { name: String },
}

fn threads() -> usize {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn run_many(specs: &[String], out: &Path) -> Result<()> {
    let scenarios = specs.iter().map(|s| Scenario::resolve(s)).collect::<Result<Vec<_>>>()?;
    for s in &scenarios {
        s.validate()?;
    }
    if scenarios.len() == 1 {
        let a = run_scenario(&scenarios[0], out)?;
        println!("{}", serde_json::to_string_pretty(&a.summary)?);
        return Ok(());
    }
    let mut names: Vec<&str> = scenarios.iter().map(|s| s.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() != scenarios.len() {
        return Err(Error::Config("scenario names must be distinct to get disjoint output directories".into()));
    }
    let next = AtomicUsize::new(0);
    let failures = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..threads().min(scenarios.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(s) = scenarios.get(i) else { break };
                match run_scenario(s, &out.join(&s.name)) {
                    Ok(a) => eprintln!("{}: done ({} samples)", s.name, a.summary.samples),
                    Err(e) => failures.lock().unwrap().push((i, e)),
                }
            });
        }
    });
    let mut failures = failures.into_inner().unwrap();
    failures.sort_by_key(|(i, _)| *i);
    match failures.into_iter().next() {
        Some((i, e)) => {
            eprintln!("{}: failed", scenarios[i].name);
            Err(e)
        }
        None => Ok(()),
    }
}

fn poisson(scenario: Option<&str>, v_lr_mv: f64, cell_nm: Option<f64>, tol: f64, out: &Path) -> Result<()> {
    let mut stack = match scenario {
        Some(spec) => Scenario::resolve(spec)?
            .electrostatics
            .ok_or_else(|| Error::Config(format!("scenario '{spec}' has no [electrostatics] section")))?,
        None => DeviceStack::default(),
    };
    if let Some(c) = cell_nm {
        stack = stack.with_cell(c);
    }
    let opts = SolverOptions { tol, ..SolverOptions::default() };
    let (map, summary) = poisson_report(&stack, v_lr_mv * 1e-3, &opts)?;
    std::fs::create_dir_all(out)?;
    std::fs::write(out.join("phi.csv"), map.to_csv())?;
    let json = serde_json::to_string_pretty(&summary)?;
    std::fs::write(out.join("poisson.json"), &json)?;
    println!("{json}");
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { scenario, out } => run_many(&scenario, &out),
        Command::Relax { scenario } => {
            let r = relax_report(&Scenario::resolve(&scenario)?)?;
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(())
        }
        Command::Poisson { scenario, v_lr_mv, cell_nm, tol, out } => {
            poisson(scenario.as_deref(), v_lr_mv, cell_nm, tol, &out)
        }
        Command::Oracle { gamma, out } => {
            let gammas = gamma.unwrap_or_else(|| DEFAULT_TABLE_GAMMAS.to_vec());
            let table = oracle_tables(&spincat::PhysParams::default(), &gammas);
            match out {
                Some(path) => std::fs::write(path, table)?,
                None => print!("{table}"),
            }
            Ok(())
        }
        Command::Validate { scenario } => {
            let diagnostics = Scenario::resolve(&scenario)?.diagnostics();
            for d in &diagnostics {
                println!("{d}");
            }
            if diagnostics.iter().any(|d| d.severity == Severity::Error) {
                return Err(Error::Config(format!("'{scenario}' has configuration errors")));
            }
            if diagnostics.is_empty() {
                println!("ok");
            }
            Ok(())
        }
        Command::Preset { name } => {
            let s = Scenario::preset(&name)
                .ok_or_else(|| Error::Config(format!("unknown preset '{name}' (known: {})", PRESETS.join(", "))))?;
            print!("{}", s.to_toml_string()?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
