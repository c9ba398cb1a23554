//! Continuous limits of walk jets.
//!
//! A jet writes every angle as `a_ε(T, X) = a₀(T, X) + ε ā(T, X)` with all
//! scaling exponents equal to one. The zeroth-order angles decide whether a
//! limit exists and which family it belongs to; the first-order fields
//! become potentials and masses.

mod basis;
mod classify;
mod params;
mod residual;

use core::fmt;

use crate::field::{AngleField, AngleLaw, ScalarField};
use crate::Lattice;

pub use basis::{case1_rhs_pm, rotate_from_pm_basis, rotate_to_pm_basis};
pub use classify::{classify_jet, LimitClass, LimitParams, CONSTRAINT_TOL};
pub use params::{
    emit_case1_params, emit_case21_system, emit_case22_params, emit_params, emit_s1_params, Case21System, ContinuumLimit,
    ComplexFn, DiracParams, GAMMA0, GAMMA1, SIGMA1, SIGMA2, SIGMA3,
};
pub use residual::{case1_rhs_pq, consistency_residual, limit_rhs, BAND_TOL};

/// The scaling exponents `(δ, ω, β, γ, η)`. Only the all-ones scaling is
/// supported.
pub const SCALING_EXPONENTS: [f64; 5] = [1.0; 5];

/// Continuous-limit family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitTag {
    S1,
    Case1,
    Case21,
    Case22,
    Overlap,
    NoLimit,
}

impl LimitTag {
    pub const fn as_str(self) -> &'static str {
        match self {
            LimitTag::S1 => "S1",
            LimitTag::Case1 => "Case1",
            LimitTag::Case21 => "Case2_1",
            LimitTag::Case22 => "Case2_2",
            LimitTag::Overlap => "Overlap_1_and_2",
            LimitTag::NoLimit => "NoLimit",
        }
    }
}

impl fmt::Display for LimitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Observation period of the walk: every step (`S¹`) or every other step (`S²`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroboscope {
    One,
    Two,
}

impl Stroboscope {
    pub const fn steps(self) -> usize {
        match self {
            Stroboscope::One => 1,
            Stroboscope::Two => 2,
        }
    }
}

/// A 1-jet of walks.
#[derive(Debug, Clone)]
pub struct JetSpec {
    pub stroboscope: Stroboscope,
    /// `(θ₀, ξ₀, ζ, α₀)`. Angles left free by the zeroth-order constraint
    /// live here as full functions.
    pub zeroth: AngleLaw,
    /// `(θ̄, ξ̄, ζ̄, ᾱ)`.
    pub first: AngleLaw,
}

impl JetSpec {
    pub fn new(stroboscope: Stroboscope, zeroth: AngleLaw, first: AngleLaw) -> Self {
        Self {
            stroboscope,
            zeroth,
            first,
        }
    }

    pub fn s1(zeroth: AngleLaw, first: AngleLaw) -> Self {
        Self::new(Stroboscope::One, zeroth, first)
    }

    pub fn s2(zeroth: AngleLaw, first: AngleLaw) -> Self {
        Self::new(Stroboscope::Two, zeroth, first)
    }

    pub fn n_steps(&self) -> usize {
        self.stroboscope.steps()
    }

    /// Angles of the member walk at expansion parameter `eps`.
    pub fn walk_angles(&self, eps: f64) -> AngleLaw {
        self.zeroth.add_scaled(&self.first, eps)
    }

    /// Angle field of the member walk living on `lattice` (`ε = Δx`).
    pub fn walk_field(&self, lattice: &Lattice) -> AngleField {
        AngleField::Closed(self.walk_angles(lattice.epsilon()))
    }

    /// The electric-field jet: zero background, `ζ = π/2`, first-order
    /// `θ̄ = mass`, `ξ̄ = E·T`.
    pub fn electric(mass: f64, efield: f64) -> Self {
        Self::s1(
            AngleLaw::constant(0.0, 0.0, core::f64::consts::FRAC_PI_2, 0.0),
            AngleLaw::new(
                ScalarField::constant(mass),
                ScalarField::affine(0.0, efield, 0.0),
                ScalarField::zero(),
                ScalarField::zero(),
            ),
        )
    }
}
