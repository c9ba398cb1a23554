//! Walk on the infalling Schwarzschild geometry against its null geodesics.
//!
//! Outside the domain `𝒟` the walk runs with `θ = 0` (free transport).

use qwalk_core::characteristics::{integrate_characteristic, Branch, GeodesicPath};
use qwalk_core::schwarzschild::SchwarzschildConfig;
use qwalk_core::walk::Walker;
use qwalk_core::{Complex64, Lattice, SpinorField};
use rayon::prelude::*;
use serde_json::json;

use crate::output::{format_number, sidecar, write_table, Table};
use crate::{AppError, AppResult, ExperimentConfig};

/// Geodesic integration step.
const GEODESIC_DT: f64 = 1e-3;

/// Ridge position against geodesic for one branch at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeSample {
    pub t: f64,
    pub branch: Branch,
    pub x_geodesic: f64,
    pub x_ridge: f64,
}

#[derive(Debug, Clone)]
pub struct SchwarzschildRun {
    pub n: usize,
    pub lattice: Lattice,
    pub times: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub ridge: Vec<RidgeSample>,
    /// RMS ridge error in units of `Δx`, for the left and right branch.
    pub rms_error_dx: [f64; 2],
    pub max_norm_error: f64,
}

#[derive(Debug, Clone)]
pub struct SchwarzschildResult {
    pub geometry: SchwarzschildConfig,
    pub x0: f64,
    pub geodesics: [GeodesicPath; 2],
    pub runs: Vec<SchwarzschildRun>,
}

/// `√N₀ (1, i)/√2` for a Gaussian density `N₀` of unit total probability.
pub fn initial_state(lattice: &Lattice, x0: f64, sigma: f64) -> AppResult<SpinorField> {
    let n0: Vec<f64> = lattice
        .points()
        .map(|x| (-(x - x0) * (x - x0) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = n0.iter().sum::<f64>() * lattice.dx();
    if !(total > 0.0) {
        return Err(AppError::Config("packet has no weight on the grid".into()));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok(SpinorField::from_fn(lattice.n(), |m| {
        let a = (n0[m] / total).sqrt();
        (Complex64::new(a * h, 0.0), Complex64::new(0.0, a * h))
    }))
}

/// Both branches of the null geodesics from `(0, x0)`.
pub fn geodesics(geometry: &SchwarzschildConfig, x0: f64, t_max: f64, dt: f64) -> AppResult<[GeodesicPath; 2]> {
    Ok([
        integrate_characteristic(x0, 0.0, Branch::Left, geometry, t_max, dt)?,
        integrate_characteristic(x0, 0.0, Branch::Right, geometry, t_max, dt)?,
    ])
}

fn branch_index(b: Branch) -> usize {
    match b {
        Branch::Left => 0,
        Branch::Right => 1,
    }
}

/// Argmax of `density` within `4σ + 3Δx` of the geodesic, on the branch's
/// side of the midpoint of the two geodesics, refined by a parabola.
fn ridge_position(density: &[f64], lattice: &Lattice, x_geo: f64, x_other: f64, branch: Branch, sigma: f64) -> Option<f64> {
    let n = lattice.n();
    let dx = lattice.dx();
    let mid = 0.5 * (x_geo + x_other);
    let half = 4.0 * sigma + 3.0 * dx;
    let best = (0..n)
        .filter(|&m| {
            let x = lattice.x(m);
            (x - x_geo).abs() < half && (x - mid) * branch.sign() >= 0.0
        })
        .max_by(|&a, &b| density[a].total_cmp(&density[b]))?;
    let (a, b, c) = (density[(best + n - 1) % n], density[best], density[(best + 1) % n]);
    let den = a - 2.0 * b + c;
    let shift = if den != 0.0 { 0.5 * (a - c) / den } else { 0.0 };
    Some(lattice.x(best) + shift * dx)
}

fn run_one(cfg: &ExperimentConfig, paths: &[GeodesicPath; 2], n: usize) -> AppResult<SchwarzschildRun> {
    let section = cfg.schwarzschild.as_ref().expect("validated");
    let packet = cfg.packet.as_ref().expect("validated");
    let lattice = cfg.lattice(n)?;
    let jet = cfg.jet()?;
    let psi0 = initial_state(&lattice, packet.center.0, packet.sigma_x)?;
    let steps = lattice.steps_for(cfg.t_final);
    let stride = {
        let s = (steps / section.frames.max(1)).max(2);
        s + s % 2
    };
    let ridge_end: Vec<f64> = paths.iter().map(|p| section.ridge_fraction * p.end_time()).collect();

    let mut run = SchwarzschildRun {
        n,
        lattice,
        times: Vec::new(),
        rows: Vec::new(),
        ridge: Vec::new(),
        rms_error_dx: [f64::NAN; 2],
        max_norm_error: 0.0,
    };
    let mut walker = Walker::new(lattice, jet.walk_field(&lattice), psi0)?;
    walker.run_observed(steps, |j, s| {
        if j % 2 != 0 {
            return Ok(());
        }
        let t = lattice.time(j);
        let density = s.density();
        let norm: f64 = density.iter().sum::<f64>() * lattice.dx();
        run.max_norm_error = run.max_norm_error.max((norm - 1.0).abs());
        if j > 0 {
            for (i, branch) in [Branch::Left, Branch::Right].into_iter().enumerate() {
                if t > ridge_end[i] {
                    continue;
                }
                let (Some(xg), Some(xo)) = (paths[i].position_at(t), paths[1 - i].position_at(t)) else {
                    continue;
                };
                if let Some(xr) = ridge_position(&density, &lattice, xg, xo, branch, packet.sigma_x) {
                    run.ridge.push(RidgeSample {
                        t,
                        branch,
                        x_geodesic: xg,
                        x_ridge: xr,
                    });
                }
            }
        }
        if j % stride == 0 || j == steps {
            run.times.push(t);
            run.rows.push(density);
        }
        Ok(())
    })?;
    if run.max_norm_error > 1e-9 {
        return Err(AppError::Invariant(format!(
            "norm drifted by {:e} at n = {n}",
            run.max_norm_error
        )));
    }
    for b in [Branch::Left, Branch::Right] {
        let errs: Vec<f64> = run
            .ridge
            .iter()
            .filter(|r| r.branch == b)
            .map(|r| (r.x_ridge - r.x_geodesic).powi(2))
            .collect();
        if !errs.is_empty() {
            let rms = (errs.iter().sum::<f64>() / errs.len() as f64).sqrt();
            run.rms_error_dx[branch_index(b)] = rms / lattice.dx();
        }
    }
    log::info!("n = {n}: ridge rms {:?} dx", run.rms_error_dx);
    Ok(run)
}

pub fn run_schwarzschild(cfg: &ExperimentConfig) -> AppResult<SchwarzschildResult> {
    let geometry = cfg.geometry()?;
    let x0 = cfg
        .packet
        .as_ref()
        .ok_or_else(|| AppError::Config("missing [packet] section".into()))?
        .center
        .0;
    let paths = geodesics(&geometry, x0, cfg.t_final, GEODESIC_DT)?;
    let runs = cfg
        .resolutions
        .par_iter()
        .map(|&n| run_one(cfg, &paths, n))
        .collect::<AppResult<Vec<_>>>()?;
    Ok(SchwarzschildResult {
        geometry,
        x0,
        geodesics: paths,
        runs,
    })
}

impl SchwarzschildRun {
    /// Header `T, x_0, …, x_{n−1}`.
    pub fn density_table(&self) -> Table {
        let header = std::iter::once("T".to_string())
            .chain(self.lattice.points().map(format_number))
            .collect::<Vec<_>>();
        let mut t = Table::new(header);
        for (time, row) in self.times.iter().zip(&self.rows) {
            t.push(std::iter::once(*time).chain(row.iter().copied()).collect());
        }
        t
    }

    /// `branch` is −1 (left) or +1 (right).
    pub fn ridge_table(&self) -> Table {
        let mut t = Table::new(["T", "branch", "x_geodesic", "x_ridge", "error_dx"]);
        for r in &self.ridge {
            t.push(vec![
                r.t,
                r.branch.sign(),
                r.x_geodesic,
                r.x_ridge,
                (r.x_ridge - r.x_geodesic) / self.lattice.dx(),
            ]);
        }
        t
    }
}

impl SchwarzschildResult {
    /// Geodesics and the singular, horizon and outer-boundary curves at the
    /// frame times of the finest run. Empty cells mark a geodesic that has
    /// ended.
    pub fn overlay_table(&self) -> Table {
        let mut t = Table::new(["T", "geodesic_left", "geodesic_right", "horizon", "singularity", "boundary"]);
        let times = self.runs.last().map(|r| r.times.clone()).unwrap_or_default();
        let g = &self.geometry;
        for time in times {
            let at = |p: &GeodesicPath| p.position_at(time).unwrap_or(f64::NAN);
            t.push(vec![
                time,
                at(&self.geodesics[0]),
                at(&self.geodesics[1]),
                g.horizon_x(time),
                g.singularity_x(time),
                g.boundary_x(time),
            ]);
        }
        t
    }

    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(["n", "dx", "rms_error_left_dx", "rms_error_right_dx"]);
        for r in &self.runs {
            t.push(vec![r.n as f64, r.lattice.dx(), r.rms_error_dx[0], r.rms_error_dx[1]]);
        }
        t
    }
}

pub fn write_schwarzschild(cfg: &ExperimentConfig, result: &SchwarzschildResult, dir: &std::path::Path) -> AppResult<()> {
    let policy = "theta = 0 outside the walk domain";
    let ends: Vec<_> = result
        .geodesics
        .iter()
        .map(|p| json!({"branch": p.branch.as_str(), "end_time": p.end_time(), "termination": format!("{:?}", p.termination)}))
        .collect();
    for r in &result.runs {
        let meta = sidecar(
            cfg,
            json!({
                "n": r.n,
                "epsilon": r.lattice.epsilon(),
                "outside_domain": policy,
                "max_norm_error": r.max_norm_error,
            }),
        );
        write_table(dir, &format!("schwarzschild_n{}", r.n), &r.density_table(), &meta)?;
        let meta = sidecar(
            cfg,
            json!({"n": r.n, "epsilon": r.lattice.epsilon(), "rms_error_dx": r.rms_error_dx, "geodesics": ends}),
        );
        write_table(dir, &format!("ridge_n{}", r.n), &r.ridge_table(), &meta)?;
    }
    let meta = sidecar(cfg, json!({"outside_domain": policy, "geodesics": ends, "x0": result.x0}));
    write_table(dir, "overlay", &result.overlay_table(), &meta)?;
    let meta = sidecar(cfg, json!({"metric": "RMS of ridge minus geodesic over the tracked window, in units of dx"}));
    write_table(dir, "ridge_errors", &result.summary_table(), &meta)?;
    Ok(())
}
