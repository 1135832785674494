use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use oscnet_cli::{builtins, load, run_scenario, validate, CliError, RunOptions, ValidateOptions};

#[derive(Parser)]
#[command(name = "oscnet", version, about = "Coherence dynamics of two coupled dissipative oscillators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run scenarios and write one CSV per observable plus manifest.json.
    Run {
        /// Scenario files or builtin names.
        #[arg(required = true)]
        scenarios: Vec<String>,
        #[arg(long, env = "OSCNET_OUT", default_value = "out")]
        out: PathBuf,
        /// Also compare against the Fock-space integration.
        #[arg(long)]
        oracle: bool,
        /// Fock levels per mode for the oracle.
        #[arg(long)]
        trunc: Option<usize>,
        /// RK4 step for the oracle.
        #[arg(long)]
        dt: Option<f64>,
        /// Scenarios to run at once.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List the built-in scenarios.
    ListBuiltins,
    /// Compare the closed form against the Fock-space integration.
    Validate {
        scenario: String,
        /// Sets both initial amplitudes alpha and eta.
        #[arg(long)]
        alpha: Option<f64>,
        /// Sets eta alone, after --alpha.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
    },
}

fn run_all(scenarios: &[String], opts: &RunOptions, jobs: usize) -> Result<(), CliError> {
    let loaded = scenarios.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
    let next = AtomicUsize::new(0);
    let first_error = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, loaded.len()) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(s) = loaded.get(k) else { break };
                match run_scenario(s, opts) {
                    Ok(summary) => {
                        println!("{}: {}", s.name, summary.dir.display());
                        if let Some(v) = summary.validation {
                            println!("{v}");
                        }
                    }
                    Err(e) => {
                        first_error.lock().unwrap().get_or_insert(e);
                    }
                }
            });
        }
    });
    match first_error.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ListBuiltins => {
            for name in builtins::NAMES {
                let s = builtins::builtin(name).expect("builtin");
                println!("{name:<7} {:<10} {}", s.figure, builtins::describe(name));
            }
            Ok(true)
        }
        Command::Run { scenarios, out, oracle, trunc, dt, jobs } => {
            run_all(&scenarios, &RunOptions { out_dir: out, oracle, trunc, dt }, jobs).map(|_| true)
        }
        Command::Validate { scenario, alpha, eta, trunc, dt } => load(&scenario)
            .and_then(|s| validate(&s, &ValidateOptions { trunc, dt, alpha, eta }))
            .map(|report| {
                println!("{report}");
                report.pass
            }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
