//! Walk against Dirac in a constant electric field.

use qwalk_core::continuum::emit_s1_params;
use qwalk_core::dft::Dft;
use qwalk_core::dirac::{delta_n_rel, positive_energy_packet, DensityField, DiracSolver, FlatDiracConfig};
use qwalk_core::walk::Walker;
use qwalk_core::{Complex64, Lattice, SpinorField};
use rayon::prelude::*;
use serde_json::json;

use super::loglog_slope;
use crate::config::{AngleSet, Packet};
use crate::output::{sidecar, write_table, Table};
use crate::{AppError, AppResult, ExperimentConfig};

/// Walk and Dirac states after the same number of steps.
#[derive(Debug, Clone)]
pub struct ElectricPair {
    pub lattice: Lattice,
    pub steps: usize,
    pub mass: f64,
    pub efield: f64,
    pub walk: SpinorField,
    pub dirac: SpinorField,
}

impl ElectricPair {
    /// Time actually reached, `steps·ε`.
    pub fn time(&self) -> f64 {
        self.steps as f64 * self.lattice.dt()
    }

    pub fn delta_n_rel(&self) -> AppResult<f64> {
        Ok(delta_n_rel(
            &DensityField::from_spinor(&self.walk),
            &DensityField::from_spinor(&self.dirac),
        )?)
    }
}

fn packet(cfg: &ExperimentConfig) -> AppResult<&Packet> {
    cfg.packet
        .as_ref()
        .ok_or_else(|| AppError::Config("missing [packet] section".into()))
}

/// Solver setup shared by both electric experiments: the signed mass and the
/// field are read off the emitted limit of the jet.
fn dirac_config(cfg: &ExperimentConfig, lattice: Lattice) -> AppResult<FlatDiracConfig> {
    let jet = cfg.jet()?;
    let samples = [(0.0, 0.0), (cfg.t_final, 0.5 * lattice.length())];
    let params = emit_s1_params(&jet, &samples)?;
    Ok(FlatDiracConfig::from_params(&params, lattice)?)
}

/// Runs walk and Dirac solver side by side to `t_final` at resolution `n`.
pub fn electric_pair(cfg: &ExperimentConfig, n: usize, sigma: f64, dft: &(impl Dft + Sync)) -> AppResult<ElectricPair> {
    let lattice = cfg.lattice(n)?;
    let dcfg = dirac_config(cfg, lattice)?;
    let p = packet(cfg)?;
    let psi0 = positive_energy_packet(p.k0, sigma, p.center.0, dcfg.mass, &lattice, dft)?;
    let steps = lattice.steps_for(cfg.t_final);

    let jet = cfg.jet()?;
    let mut walker = Walker::new(lattice, jet.walk_field(&lattice), psi0.clone())?;
    walker.run(steps)?;
    let mut solver = DiracSolver::new(dcfg, &psi0, 0.0, dft)?;
    solver.advance(lattice.dt(), steps)?;

    let pair = ElectricPair {
        lattice,
        steps,
        mass: dcfg.mass,
        efield: dcfg.efield,
        walk: walker.into_state(),
        dirac: solver.state(dft)?,
    };
    for (name, s) in [("walk", &pair.walk), ("dirac", &pair.dirac)] {
        let drift = (s.norm(lattice.dx()) - 1.0).abs();
        if drift > 1e-9 {
            return Err(AppError::Invariant(format!("{name} norm drifted by {drift:e} at n = {n}")));
        }
    }
    Ok(pair)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub epsilon: f64,
    pub steps: usize,
    pub time: f64,
    pub delta_n_rel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    pub rows: Vec<ConvergenceRow>,
    /// Slope of `log δN_rel` against `log ε`; absent for a single resolution.
    pub slope: Option<f64>,
    pub mass: f64,
    pub efield: f64,
}

impl Convergence {
    pub fn table(&self) -> Table {
        let mut t = Table::new(["n", "epsilon", "steps", "T", "delta_n_rel"]);
        for r in &self.rows {
            t.push(vec![r.n as f64, r.epsilon, r.steps as f64, r.time, r.delta_n_rel]);
        }
        t
    }
}

/// `δN_rel` at `t_final` for every resolution, plus the log-log slope.
pub fn run_electric_convergence(cfg: &ExperimentConfig, dft: &(impl Dft + Sync)) -> AppResult<Convergence> {
    let sigma = packet(cfg)?.sigma_x;
    let rows = cfg
        .resolutions
        .par_iter()
        .map(|&n| {
            let pair = electric_pair(cfg, n, sigma, dft)?;
            log::info!("n = {n}: {} steps", pair.steps);
            Ok(ConvergenceRow {
                n,
                epsilon: pair.lattice.epsilon(),
                steps: pair.steps,
                time: pair.time(),
                delta_n_rel: pair.delta_n_rel()?,
            })
        })
        .collect::<AppResult<Vec<_>>>()?;
    let eps: Vec<f64> = rows.iter().map(|r| r.epsilon).collect();
    let d: Vec<f64> = rows.iter().map(|r| r.delta_n_rel).collect();
    let dcfg = dirac_config(cfg, cfg.lattice(cfg.resolutions[0])?)?;
    Ok(Convergence {
        slope: loglog_slope(&eps, &d),
        rows,
        mass: dcfg.mass,
        efield: dcfg.efield,
    })
}

pub fn write_convergence(cfg: &ExperimentConfig, result: &Convergence, dir: &std::path::Path) -> AppResult<()> {
    let theta_bar = match cfg.angles {
        AngleSet::Electric { mass, .. } => mass,
        _ => f64::NAN,
    };
    let per_step: Vec<_> = result
        .rows
        .iter()
        .map(|r| json!({"n": r.n, "epsilon": r.epsilon, "theta_per_step": theta_bar * r.epsilon}))
        .collect();
    let meta = sidecar(
        cfg,
        json!({
            "slope": result.slope,
            "mass": result.mass,
            "mass_rule": "m = theta_per_step / dt, signed as m- of the limit",
            "efield": result.efield,
            "resolutions": per_step,
        }),
    );
    write_table(dir, "convergence", &result.table(), &meta)?;
    Ok(())
}

/// A recorded space-time density `N(T, X)`.
#[derive(Debug, Clone)]
pub struct DensityMap {
    pub n: usize,
    pub sigma: f64,
    pub lattice: Lattice,
    pub times: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    /// Fraction of the spatial power spectrum of `N(T_final)` above mode 20.
    pub high_mode_fraction: f64,
}

impl DensityMap {
    /// Header `T, x_0, …, x_{n−1}`; one row per recorded time.
    pub fn table(&self) -> Table {
        let header = std::iter::once("T".to_string())
            .chain(self.lattice.points().map(crate::output::format_number))
            .collect::<Vec<_>>();
        let mut t = Table::new(header);
        for (time, row) in self.times.iter().zip(&self.rows) {
            t.push(std::iter::once(*time).chain(row.iter().copied()).collect());
        }
        t
    }
}

/// Share of spectral power of `density` in modes `|κ| > cutoff` (mode 0
/// excluded from the total).
pub fn spectral_fraction_above(density: &[f64], cutoff: usize, dft: &impl Dft) -> f64 {
    let n = density.len();
    let mut buf: Vec<Complex64> = density.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    dft.forward(&mut buf);
    let (mut high, mut total) = (0.0, 0.0);
    for (i, v) in buf.iter().enumerate().skip(1) {
        let p = v.norm_sqr();
        total += p;
        if qwalk_core::dft::mode_index(i, n).unsigned_abs() > cutoff {
            high += p;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        high / total
    }
}

fn density_map(cfg: &ExperimentConfig, n: usize, sigma: f64, frames: usize, dft: &impl Dft) -> AppResult<DensityMap> {
    let lattice = cfg.lattice(n)?;
    let dcfg = dirac_config(cfg, lattice)?;
    let p = packet(cfg)?;
    let psi0 = positive_energy_packet(p.k0, sigma, p.center.0, dcfg.mass, &lattice, dft)?;
    let steps = lattice.steps_for(cfg.t_final);
    let stride = (steps / frames.max(1)).max(1);
    let mut map = DensityMap {
        n,
        sigma,
        lattice,
        times: Vec::new(),
        rows: Vec::new(),
        high_mode_fraction: 0.0,
    };
    let mut walker = Walker::new(lattice, cfg.jet()?.walk_field(&lattice), psi0)?;
    walker.run_observed(steps, |j, s| {
        if j % stride == 0 || j == steps {
            map.times.push(lattice.time(j));
            map.rows.push(s.density());
        }
        Ok(())
    })?;
    map.high_mode_fraction = spectral_fraction_above(map.rows.last().expect("at least one frame"), 20, dft);
    Ok(map)
}

/// One density map per `(resolution, σ_X)`.
pub fn run_electric_density(cfg: &ExperimentConfig, dft: &(impl Dft + Sync)) -> AppResult<Vec<DensityMap>> {
    let d = cfg
        .density
        .as_ref()
        .ok_or_else(|| AppError::Config("missing [density] section".into()))?;
    let jobs: Vec<(usize, f64)> = cfg
        .resolutions
        .iter()
        .flat_map(|&n| d.sigmas.iter().map(move |&s| (n, s)))
        .collect();
    jobs.par_iter()
        .map(|&(n, s)| density_map(cfg, n, s, d.frames, dft))
        .collect()
}

pub fn write_density_maps(cfg: &ExperimentConfig, maps: &[DensityMap], dir: &std::path::Path) -> AppResult<()> {
    for m in maps {
        let norms: Vec<f64> = m.rows.iter().map(|r| r.iter().sum::<f64>() * m.lattice.dx()).collect();
        let meta = sidecar(
            cfg,
            json!({
                "n": m.n,
                "sigma_x": m.sigma,
                "epsilon": m.lattice.epsilon(),
                "high_mode_fraction_above_20": m.high_mode_fraction,
                "max_norm_error": norms.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max),
            }),
        );
        let name = format!("density_n{}_sigma{}", m.n, m.sigma);
        write_table(dir, &name, &m.table(), &meta)?;
    }
    Ok(())
}

/// Circular-mean position `⟨X⟩(T)` of the walk density, unwrapped in time.
pub fn packet_track(cfg: &ExperimentConfig, n: usize, sigma: f64, dft: &impl Dft) -> AppResult<Vec<(f64, f64)>> {
    let lattice = cfg.lattice(n)?;
    let dcfg = dirac_config(cfg, lattice)?;
    let p = packet(cfg)?;
    let psi0 = positive_energy_packet(p.k0, sigma, p.center.0, dcfg.mass, &lattice, dft)?;
    let steps = lattice.steps_for(cfg.t_final);
    let l = lattice.length();
    let k = std::f64::consts::TAU / l;
    let mut track: Vec<(f64, f64)> = Vec::with_capacity(steps + 1);
    let mut walker = Walker::new(lattice, cfg.jet()?.walk_field(&lattice), psi0)?;
    walker.run_observed(steps, |j, s| {
        let z: Complex64 = s
            .density()
            .iter()
            .zip(lattice.points())
            .map(|(w, x)| Complex64::from_polar(*w, k * x))
            .sum();
        let mut x = z.arg() / k;
        if let Some(&(_, prev)) = track.last() {
            x += l * ((prev - x) / l).round();
        }
        track.push((lattice.time(j), x));
        Ok(())
    })?;
    Ok(track)
}
