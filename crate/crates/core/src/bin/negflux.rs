use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use negflux::cli::{
    cmd_corr, cmd_density, cmd_figures, cmd_qi, cmd_validate, CorrMode, Outcome, RunConfig,
    DEFAULT_SAMPLES, DEFAULT_SHELL,
};
use negflux::qi::DEFAULT_BOUND_CONST;
use negflux::{McRun, Result, ShellSpec};

/// Energy density, flux and vacuum correlators for a localized
/// negative-energy scalar-field state.
#[derive(Parser)]
#[command(version, about)]
struct Args {
    /// JSON run configuration; built-in defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overriding the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed, overriding the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(name = "2d")]
    TwoD,
    #[value(name = "4d")]
    FourD,
}

#[derive(Subcommand)]
enum Command {
    /// Write the figure datasets and a manifest.
    Figures,
    /// Compare Monte Carlo estimates of the momentum integrals with the closed forms.
    Validate {
        /// Inner and outer radius of the momentum shell.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        shell: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        /// Worker threads; 0 uses all cores. Results do not depend on it.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Lorentzian-averaged density against the sampling bound.
    Qi {
        #[arg(long, default_value_t = 0.0)]
        r: f64,
        #[arg(long, default_value_t = DEFAULT_BOUND_CONST)]
        bound_const: f64,
    },
    /// Vacuum energy-density/flux correlator on a grid.
    Corr {
        #[arg(long, value_enum, default_value = "2d")]
        mode: Mode,
    },
    /// Closed-form density and flux on an (r, t) grid.
    Density,
}

fn run(args: Args) -> Result<Outcome> {
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let out = args.out.unwrap_or_else(|| config.output_dir.clone());

    match args.command {
        Command::Figures => {
            for path in cmd_figures(&config, &out)? {
                println!("{}", path.display());
            }
            Ok(Outcome::Success)
        }
        Command::Validate {
            shell,
            samples,
            workers,
        } => {
            let (lo, hi) = shell.map_or(DEFAULT_SHELL, |s| (s[0], s[1]));
            let run = McRun::new(samples, config.seed).with_workers(workers);
            let (report, path) = cmd_validate(&config, ShellSpec::new(lo, hi), &run, &out)?;
            for c in &report.checks {
                println!(
                    "{:<10} r={} t={:<8} mc={:+.6e} ± {:.2e}  target={:+.6e}  {}",
                    c.name,
                    c.r,
                    c.t,
                    c.estimate.mean,
                    c.estimate.std_error,
                    c.target,
                    if c.passed { "pass" } else { "FAIL" }
                );
            }
            println!("{}", path.display());
            Ok(Outcome::from_passed(report.passed))
        }
        Command::Qi { r, bound_const } => {
            let (summary, path) = cmd_qi(&config, r, bound_const, &out)?;
            println!("{}", summary.line());
            println!("{}", path.display());
            Ok(Outcome::from_passed(summary.passed()))
        }
        Command::Corr { mode } => {
            let mode = match mode {
                Mode::TwoD => CorrMode::TwoD,
                Mode::FourD => CorrMode::FourD,
            };
            let (fit, path) = cmd_corr(&config, mode, &out)?;
            if let Some(f) = fit {
                println!(
                    "falloff exponent {:.4} (expected {}) along {:?} at fixed {}",
                    f.exponent, f.expected, f.axis, f.fixed
                );
            }
            println!("{}", path.display());
            Ok(Outcome::Success)
        }
        Command::Density => {
            println!("{}", cmd_density(&config, &out)?.display());
            Ok(Outcome::Success)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
