use acr_cli::config::load_config;
use acr_cli::experiment::run_and_write;
use acr_cli::plot::emit_plot_script;
use acr_cli::report::{fmt_float, render_verify_csv};
use acr_cli::verify::verify_all;
use acr_cli::CliError;
use clap::{Parser, Subcommand};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

/// Average convergence rate experiments for (1+1) elitist EAs.
#[derive(Parser)]
#[command(name = "acr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded batch experiment and write series/checkpoint CSVs.
    Run {
        /// Path to the TOML experiment config.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config's `out`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the 1-D Rastrigin sublevel intervals at a query point.
    Region {
        /// Query point.
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification check battery and emit its report.
    Verify {
        /// Battery seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the report CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a gnuplot script for one or more series CSVs.
    Plot {
        /// Series CSV files (one curve per file).
        #[arg(required = true)]
        series: Vec<PathBuf>,
        /// Script output path.
        #[arg(long, default_value = "plot.gp")]
        out: PathBuf,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run { config, out } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| CliError::io(&format!("reading {}", config.display()), e))?;
            let mut experiment = load_config(&text)?;
            if let Some(dir) = out {
                experiment.out = dir;
            }
            let (series, checkpoints) = run_and_write(&experiment)?;
            println!("wrote {}", series.display());
            println!("wrote {}", checkpoints.display());
            Ok(())
        }
        Command::Region { x, out } => {
            let spec = acr::objectives::ObjectiveSpec::rastrigin1d();
            let set = acr::sublevel::sublevel_intervals_1d(&spec, x)?;
            let mut csv = String::from("lo,hi\n");
            for &(lo, hi) in set.intervals() {
                csv.push_str(&format!("{},{}\n", fmt_float(lo), fmt_float(hi)));
            }
            match out {
                Some(path) => fs::write(&path, csv)
                    .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Verify { seed, out } => {
            let rows = verify_all(seed);
            let csv = render_verify_csv(&rows);
            match out {
                Some(path) => {
                    fs::write(&path, &csv)
                        .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                return Err(CliError::ChecksFailed(failed));
            }
            Ok(())
        }
        Command::Plot { series, out } => {
            emit_plot_script(&series, &out)?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
