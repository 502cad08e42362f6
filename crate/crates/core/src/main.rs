use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use susy_entangle::scenario::{self, ScenarioInputs};
use susy_entangle::{report_peaks, run_scenario, Error, HamiltonianParams};

#[derive(Parser)]
#[command(name = "susy-entangle", version, about = "Two-photon exchange entanglement dynamics at fixed photon number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy trajectory of |N-L>_A|L>_B, written as CSV.
    Run(RunArgs),
    /// Energy levels of the N-photon sector with multiplicities.
    Spectrum {
        #[arg(long)]
        photons: u32,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        g: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        omega: f64,
    },
    /// Datasets behind the published entropy figures.
    PaperFigures {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Total photon number N.
    #[arg(long)]
    photons: Option<u32>,
    /// Photons initially in mode B (L).
    #[arg(long)]
    in_b: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Upper end of the gt window [default: 2.0].
    #[arg(long)]
    gt_max: Option<f64>,
    /// Number of grid points [default: 2001].
    #[arg(long)]
    steps: Option<usize>,
    /// Survival-time tolerance below the peak, in nats [default: 0.05].
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, hide = true)]
    oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value file with the same settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run(args: RunArgs) -> Result<(), Error> {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
            ScenarioInputs::from_key_values(&text)?
        }
        None => ScenarioInputs::default(),
    };
    let flags = ScenarioInputs {
        photons: args.photons,
        in_b: args.in_b,
        g: args.g,
        omega: args.omega,
        gt_max: args.gt_max,
        steps: args.steps,
        epsilon: args.epsilon,
        oracle: args.oracle.then_some(true),
        out: args.out,
    };
    let config = flags.or(file).resolve()?;
    if config.output.is_none() {
        return Err(Error::Parameter("missing output path (--out)".into()));
    }
    let record = run_scenario(&config)?;
    let peaks = report_peaks(&record, config.survival_epsilon)?;
    println!(
        "peak={} peak_gt={} survival_gt={} (epsilon={})",
        peaks.peak, peaks.peak_gt, peaks.survival_gt, config.survival_epsilon
    );
    Ok(())
}

fn spectrum(photons: u32, g: f64, omega: f64) -> Result<(), Error> {
    let params = HamiltonianParams::new(omega, g, photons)?;
    println!("lambda,energy,multiplicity");
    for (lambda, energy, mult) in scenario::spectrum_table(&params)? {
        println!("{lambda},{energy},{mult}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Spectrum { photons, g, omega } => spectrum(photons, g, omega),
        Command::PaperFigures { out_dir } => scenario::write_paper_figures(&out_dir).map(|paths| {
            for p in paths {
                println!("{}", p.display());
            }
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
