//! Kernels for (1+1)D discrete-time quantum walks driven by space- and
//! time-dependent U(2) coins, and for the Dirac dynamics they converge to.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that requires a fast
//! Fourier transform is written against the [`dft::Dft`] trait; the crate
//! ships a quadratic reference transform, and the `qwalk` companion crate
//! plugs in an FFT.
//!
//! Units are dimensionless throughout: `T = t`, `X = x`, and the time step,
//! the space step and the expansion parameter `ε` all coincide
//! (`Δt = Δx = ε = length / n`).
#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is how NaN gets rejected along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod characteristics;
pub mod coin;
pub mod continuum;
pub mod dft;
pub mod dirac;
mod error;
pub mod field;
pub mod lattice;
pub mod schwarzschild;
pub mod spinor;
pub mod walk;

pub use num_complex::Complex64;

pub use coin::{build_coin, CoinMatrix};
pub use error::{Error, Result};
pub use field::{sample_angles, AngleField, AngleLaw, AngleRow, ScalarField};
pub use lattice::Lattice;
pub use spinor::SpinorField;
