//! Null geodesics of the infalling geometry.

use qwalk_core::characteristics::GeodesicPath;
use serde_json::json;

use super::schwarzschild::geodesics;
use crate::output::{sidecar, write_table, Table};
use crate::{AppError, AppResult, ExperimentConfig};

/// Both branches from `geodesic.x0` up to `t_final`.
pub fn run_geodesic(cfg: &ExperimentConfig) -> AppResult<[GeodesicPath; 2]> {
    let g = cfg
        .geodesic
        .as_ref()
        .ok_or_else(|| AppError::Config("missing [geodesic] section".into()))?;
    geodesics(&cfg.geometry()?, g.x0, cfg.t_final, g.dt)
}

/// Columns `T, X, r, in_domain` (the last is 1 or 0).
pub fn path_table(cfg: &ExperimentConfig, path: &GeodesicPath) -> AppResult<Table> {
    let geometry = cfg.geometry()?;
    let mut t = Table::new(["T", "X", "r", "in_domain"]);
    for (&time, &x) in path.t.iter().zip(&path.x) {
        let inside = geometry.in_domain(time, x);
        let r = geometry.radius(time, x).unwrap_or(f64::NAN);
        t.push(vec![time, x, r, if inside { 1.0 } else { 0.0 }]);
    }
    Ok(t)
}

pub fn write_geodesics(cfg: &ExperimentConfig, paths: &[GeodesicPath; 2], dir: &std::path::Path) -> AppResult<()> {
    for p in paths {
        let meta = sidecar(
            cfg,
            json!({
                "branch": p.branch.as_str(),
                "termination": format!("{:?}", p.termination),
                "end_time": p.end_time(),
            }),
        );
        write_table(dir, &format!("geodesic_{}", p.branch.as_str()), &path_table(cfg, p)?, &meta)?;
    }
    Ok(())
}
