//! The exact U(1) symmetry of the walk.
//!
//! With `Ψ' = Ψ e^{-iφ}` the primed walk has the same form with
//! `α' = α + σ/2`, `ξ' = ξ + δ`, `ζ' = ζ − δ`, `θ' = θ`, where
//!
//! ```text
//! σ_{j,m} = φ_{j,m+1} + φ_{j,m-1} − 2 φ_{j+1,m}
//! δ_{j,m} = (φ_{j,m+1} − φ_{j,m-1}) / 2
//! ```
//!
//! Spatial neighbours wrap around the periodic lattice.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::cis;
use crate::field::{AngleField, ScalarField};
use crate::{Error, Lattice, Result, SpinorField};

/// A real phase `φ_{j,m}` on the lattice.
#[derive(Clone)]
pub enum GaugePhase {
    Function(Arc<dyn Fn(usize, usize) -> f64 + Send + Sync>),
    /// `rows[j][m]`.
    Sampled(Vec<Vec<f64>>),
}

impl GaugePhase {
    pub fn from_fn(f: impl Fn(usize, usize) -> f64 + Send + Sync + 'static) -> Self {
        GaugePhase::Function(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        Self::from_fn(move |_, _| c)
    }

    /// `φ_{j,m} = φ(t_j, x_m)` for a continuum phase.
    pub fn from_continuum(phi: ScalarField, lattice: &Lattice) -> Self {
        let l = *lattice;
        Self::from_fn(move |j, m| phi.value(l.time(j), l.x(m)))
    }

    pub fn value(&self, j: usize, m: usize) -> Result<f64> {
        let v = match self {
            GaugePhase::Function(f) => f(j, m),
            GaugePhase::Sampled(rows) => {
                let row = rows.get(j).ok_or(Error::MissingSlice(j))?;
                *row.get(m).ok_or(Error::Dimension {
                    expected: m + 1,
                    found: row.len(),
                })?
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("gauge phase"))
        }
    }

    pub fn sigma(&self, j: usize, m: usize, n: usize) -> Result<f64> {
        let (up, down) = neighbours(m, n);
        Ok(self.value(j, up)? + self.value(j, down)? - 2.0 * self.value(j + 1, m)?)
    }

    pub fn delta(&self, j: usize, m: usize, n: usize) -> Result<f64> {
        let (up, down) = neighbours(m, n);
        Ok(0.5 * (self.value(j, up)? - self.value(j, down)?))
    }
}

#[inline]
fn neighbours(m: usize, n: usize) -> (usize, usize) {
    ((m + 1) % n, (m + n - 1) % n)
}

impl fmt::Debug for GaugePhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugePhase::Function(_) => f.write_str("GaugePhase::Function(..)"),
            GaugePhase::Sampled(rows) => f.debug_tuple("GaugePhase::Sampled").field(&rows.len()).finish(),
        }
    }
}

/// `Ψ'_{j,m} = Ψ_{j,m} e^{-iφ_{j,m}}`.
pub fn gauge_transform(state: &SpinorField, phase: &GaugePhase, j: usize) -> Result<SpinorField> {
    let mut out = state.clone();
    let (l, r) = out.components_mut();
    for m in 0..l.len() {
        let u = cis(-phase.value(j, m)?);
        l[m] *= u;
        r[m] *= u;
    }
    Ok(out)
}

/// The primed angle field. Evaluation is lazy; rows are produced on demand.
pub fn gauge_transform_angles(angles: &AngleField, phase: &GaugePhase) -> AngleField {
    AngleField::Gauged {
        base: Box::new(angles.clone()),
        phase: phase.clone(),
    }
}
