use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use realgauge::cli::{emit, load, run_named, Format, Report, SCENARIOS};

#[derive(Parser)]
#[command(name = "realgauge", version, about = "Gauges, positive cones and lifting sets for algebras with involution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Overrides the seed of the configuration or scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the number of samples per sampled condition.
    #[arg(long, global = true)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Runs a JSON configuration or a built-in scenario.
    Run {
        #[arg(required_unless_present = "scenario", conflicts_with = "scenario")]
        config: Option<PathBuf>,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SCENARIOS))]
        scenario: Option<String>,
    },
}

fn report(cli: &Cli) -> realgauge::Result<Report> {
    let Command::Run { config, scenario } = &cli.command;
    if let Some(name) = scenario {
        return run_named(name, cli.seed.unwrap_or(realgauge::cli::config::DEFAULT_SEED), cli.samples.unwrap_or(realgauge::cli::config::DEFAULT_SAMPLES));
    }
    let path = config.as_ref().expect("clap requires a config or a scenario");
    let text = std::fs::read_to_string(path).map_err(|e| realgauge::Error::Config { location: path.display().to_string(), msg: e.to_string() })?;
    let name = path.file_stem().map_or("config".into(), |s| s.to_string_lossy().into_owned());
    let mut sc = load(&text, &name)?;
    if let Some(s) = cli.seed {
        sc.seed = s;
    }
    if let Some(n) = cli.samples {
        if n == 0 {
            return Err(realgauge::Error::Config { location: "--samples".into(), msg: "must be positive".into() });
        }
        sc.sample_count = n;
    }
    Ok(Report::from_run(&sc))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match report(&cli) {
        Ok(r) => {
            print!("{}", emit(&r, cli.format));
            if r.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
