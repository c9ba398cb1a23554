//! The walk: S¹ stepping, the closed-form S² update, Fourier-space shifts
//! and the exact discrete gauge symmetry.
//!
//! One S¹ step reads
//!
//! ```text
//! ψ^L_{j+1,m} = B_{00} ψ^L_{j,m+1} + B_{01} ψ^R_{j,m-1}
//! ψ^R_{j+1,m} = B_{10} ψ^L_{j,m+1} + B_{11} ψ^R_{j,m-1}
//! ```
//!
//! with `B = B(θ, ξ, ζ, α)_{j,m}` and periodic indices.

pub mod gauge;
mod s2;
mod shift;

use num_complex::Complex64;

use crate::coin::{build_coin, CoinRow};
use crate::field::{sample_angles, AngleField, AngleRow};
use crate::{Error, Lattice, Result, SpinorField};

pub use gauge::{gauge_transform, gauge_transform_angles, GaugePhase};
pub use s2::{build_s2_coefficients, step_s2, S2Coefficients};
pub use shift::{shift_fourier, shift_physical, step_s1_fourier};

/// `Ψ_{j+1}` from `Ψ_j` with the coins of slice `j`.
pub fn step_s1(state: &SpinorField, angles: &AngleField, lattice: &Lattice, j: usize) -> Result<SpinorField> {
    state.check_len(lattice.n())?;
    let row = sample_angles(angles, lattice, j)?;
    step_s1_row(state, &row)
}

/// S¹ step with an explicit angle slice.
pub fn step_s1_row(state: &SpinorField, row: &AngleRow) -> Result<SpinorField> {
    state.check_len(row.len())?;
    let mut out = SpinorField::zeros(state.len());
    step_with_coins(state, &CoinRow::from_angles(row), &mut out);
    Ok(out)
}

/// The stencil itself, writing into `out` (which must have the same length).
pub fn step_with_coins(state: &SpinorField, coins: &CoinRow, out: &mut SpinorField) {
    let n = state.len();
    debug_assert_eq!(out.len(), n);
    let (l, r) = (state.left(), state.right());
    let (ol, or) = out.components_mut();
    for m in 0..n {
        let up = if m + 1 == n { 0 } else { m + 1 };
        let down = if m == 0 { n - 1 } else { m - 1 };
        let (a, b) = coins.at(m).apply(l[up], r[down]);
        ol[m] = a;
        or[m] = b;
    }
}

/// A walk in progress: the lattice, the angle field, the current state and
/// its time index.
#[derive(Debug, Clone)]
pub struct Walker {
    lattice: Lattice,
    angles: AngleField,
    state: SpinorField,
    scratch: SpinorField,
    j: usize,
}

impl Walker {
    pub fn new(lattice: Lattice, angles: AngleField, state: SpinorField) -> Result<Self> {
        state.check_len(lattice.n())?;
        let scratch = SpinorField::zeros(lattice.n());
        Ok(Self {
            lattice,
            angles,
            state,
            scratch,
            j: 0,
        })
    }

    /// Starts at time index `j` instead of 0.
    pub fn starting_at(mut self, j: usize) -> Self {
        self.j = j;
        self
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn state(&self) -> &SpinorField {
        &self.state
    }

    pub fn into_state(self) -> SpinorField {
        self.state
    }

    pub fn time_index(&self) -> usize {
        self.j
    }

    pub fn time(&self) -> f64 {
        self.lattice.time(self.j)
    }

    /// One S¹ step.
    pub fn step(&mut self) -> Result<()> {
        let coins = coin_row(&self.angles, &self.lattice, self.j)?;
        step_with_coins(&self.state, &coins, &mut self.scratch);
        core::mem::swap(&mut self.state, &mut self.scratch);
        self.j += 1;
        Ok(())
    }

    /// Two S¹ steps through the closed-form S² coefficients.
    pub fn step_s2(&mut self) -> Result<()> {
        let coeffs = build_s2_coefficients(&self.angles, &self.lattice, self.j)?;
        self.state = step_s2(&self.state, &coeffs)?;
        self.j += 2;
        Ok(())
    }

    pub fn run(&mut self, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.step()?;
        }
        Ok(())
    }

    /// Runs `steps` S¹ steps, calling `observe` on the initial state and
    /// after every step.
    pub fn run_observed(
        &mut self,
        steps: usize,
        mut observe: impl FnMut(usize, &SpinorField) -> Result<()>,
    ) -> Result<()> {
        observe(self.j, &self.state)?;
        for _ in 0..steps {
            self.step()?;
            observe(self.j, &self.state)?;
        }
        Ok(())
    }
}

/// Coins of slice `j`; a single matrix when no angle depends on `X`.
fn coin_row(angles: &AngleField, lattice: &Lattice, j: usize) -> Result<CoinRow> {
    if let AngleField::Closed(law) = angles {
        if law.fields().iter().all(|f| !f.depends_on_x()) {
            let t = lattice.time(j);
            let [th, xi, z, a] = law.fields().map(|f| f.value(t, 0.0));
            return Ok(CoinRow::Uniform(build_coin(th, xi, z, a)?));
        }
    }
    Ok(CoinRow::from_angles(&sample_angles(angles, lattice, j)?))
}

#[inline]
pub(crate) fn cis(a: f64) -> Complex64 {
    let (s, c) = libm::sincos(a);
    Complex64::new(c, s)
}

pub(crate) fn require_len(n: usize, min: usize, what: &'static str) -> Result<()> {
    if n < min {
        Err(Error::InvalidArgument(what))
    } else {
        Ok(())
    }
}
