use std::path::PathBuf;
use std::process::ExitCode;

use antsynth::experiment::{emit_pattern, load_best_vector};
use antsynth::{compare, load_config, run_experiment, HarnessError};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "antsynth", version, about = "Linear array side-lobe and null synthesis with NOABS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured optimizer and write its artifacts.
    Run { config: PathBuf },
    /// Run several optimizers on the same problem and write comparison.csv.
    Compare {
        config: PathBuf,
        /// Comma-separated optimizer names.
        #[arg(long, value_delimiter = ',', default_value = "noabs,pso,ga")]
        optimizers: Vec<String>,
    },
    /// Re-emit pattern.csv for a saved best vector.
    Pattern {
        best_vector: PathBuf,
        config: PathBuf,
        /// Output file; defaults to pattern.csv in the configured output directory.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn fmt_db(value: Option<f64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Run { config } => {
            let config = load_config(&config)?;
            let summary = run_experiment(&config)?;
            println!(
                "{}: fitness {:.6} dB*deg, SLL {} dB, {} evaluations in {:.2} s -> {}",
                summary.optimizer,
                summary.best_fitness,
                fmt_db(summary.sll_db),
                summary.evaluation_count,
                summary.wall_time,
                config.output_dir.display()
            );
            for null in &summary.null_depths {
                println!("  null at {} deg: {:.2} dB", null.angle_deg, null.depth_db);
            }
        }
        Command::Compare { config, optimizers } => {
            let config = load_config(&config)?;
            let rows = compare(&config, &optimizers)?;
            println!(
                "{:<10} {:>14} {:>9} {:>11} {:>8} {:>8}",
                "optimizer", "fitness", "SLL dB", "worst null", "evals", "time s"
            );
            for row in rows {
                println!(
                    "{:<10} {:>14.6} {:>9} {:>11} {:>8} {:>8.2}",
                    row.optimizer,
                    row.best_fitness,
                    fmt_db(row.sll_db),
                    fmt_db(row.worst_null_depth_db),
                    row.evaluation_count,
                    row.wall_time
                );
            }
        }
        Command::Pattern { best_vector, config, output } => {
            let config = load_config(&config)?;
            let best = load_best_vector(&best_vector)?;
            let path = emit_pattern(&best, &config, output.as_deref())?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("antsynth: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
