use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qwalk::check::{run_property_suite, standard_coin};
use qwalk::experiments::{classify, electric, geodesic, schwarzschild};
use qwalk::{AppError, AppResult, ExperimentConfig, Kind, RustFft};

/// Quantum walks in artificial electric and gravitational fields.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Density maps (`electric_density` or `schwarzschild` configs).
    Simulate(Common),
    /// Walk against Dirac convergence study.
    Converge(Common),
    /// Classify a jet and print its limit coefficients.
    Classify(Common),
    /// Integrate null geodesics.
    Geodesic(Common),
    /// Seeded invariant checks of the walk kernels.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// TOML experiment description.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Runs a single resolution instead of the configured list.
    #[arg(long)]
    resolution: Option<usize>,
}

impl Common {
    fn load(&self, allowed: &[Kind]) -> AppResult<(ExperimentConfig, PathBuf)> {
        let mut cfg = ExperimentConfig::from_path(&self.config)?;
        if !allowed.contains(&cfg.kind) {
            return Err(AppError::Config(format!(
                "config kind {} does not fit this subcommand",
                cfg.kind.as_str()
            )));
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(n) = self.resolution {
            cfg.override_resolution(n)?;
        }
        let out = self
            .out
            .clone()
            .or_else(|| cfg.output_dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"));
        Ok((cfg, out))
    }
}

fn announce(dir: &Path) {
    println!("wrote results to {}", dir.display());
}

fn run(cli: Cli) -> AppResult<()> {
    let fft = RustFft::new();
    match cli.command {
        Command::Simulate(c) => {
            let (cfg, out) = c.load(&[Kind::ElectricDensity, Kind::Schwarzschild])?;
            if cfg.kind == Kind::ElectricDensity {
                let maps = electric::run_electric_density(&cfg, &fft)?;
                electric::write_density_maps(&cfg, &maps, &out)?;
                for m in &maps {
                    println!(
                        "n = {} sigma = {}: spectral fraction above mode 20 = {:.3e}",
                        m.n, m.sigma, m.high_mode_fraction
                    );
                }
            } else {
                let r = schwarzschild::run_schwarzschild(&cfg)?;
                schwarzschild::write_schwarzschild(&cfg, &r, &out)?;
                for run in &r.runs {
                    println!(
                        "n = {}: ridge rms error left {:.3} dx, right {:.3} dx",
                        run.n, run.rms_error_dx[0], run.rms_error_dx[1]
                    );
                }
            }
            announce(&out);
        }
        Command::Converge(c) => {
            let (cfg, out) = c.load(&[Kind::ElectricConvergence])?;
            let r = electric::run_electric_convergence(&cfg, &fft)?;
            electric::write_convergence(&cfg, &r, &out)?;
            for row in &r.rows {
                println!("n = {:>6}  eps = {:.4e}  dN_rel = {:.4e}", row.n, row.epsilon, row.delta_n_rel);
            }
            match r.slope {
                Some(s) => println!("slope = {s:.4}"),
                None => println!("slope: needs at least two resolutions"),
            }
            announce(&out);
        }
        Command::Classify(c) => {
            let (cfg, out) = c.load(&[Kind::Classify])?;
            let r = classify::run_classify(&cfg)?;
            print!("{}", r.summary());
            classify::write_classification(&cfg, &r, &out)?;
            announce(&out);
        }
        Command::Geodesic(c) => {
            let (cfg, out) = c.load(&[Kind::Geodesic])?;
            let paths = geodesic::run_geodesic(&cfg)?;
            geodesic::write_geodesics(&cfg, &paths, &out)?;
            for p in &paths {
                println!("{}: ends at T = {:.6} ({:?})", p.branch.as_str(), p.end_time(), p.termination);
            }
            announce(&out);
        }
        Command::Check { seed } => {
            let report = run_property_suite(seed, standard_coin)?;
            print!("{}", report.render());
            if !report.passed() {
                return Err(AppError::Invariant("property suite failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
