use core::f64::consts::TAU;

use crate::{Error, Result};

/// Periodic space-time lattice.
///
/// `n` collocation points `x_m = m * length / n` on a period of `length`.
/// The time step equals the space step (scaling exponent one), and both are
/// the expansion parameter `ε` of the continuum limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    n: usize,
    length: f64,
    dx: f64,
}

impl Lattice {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLattice("n must be positive"));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidLattice("length must be finite and > 0"));
        }
        Ok(Self {
            n,
            length,
            dx: length / n as f64,
        })
    }

    /// The canonical `2π`-periodic lattice.
    pub fn periodic(n: usize) -> Result<Self> {
        Self::new(n, TAU)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn dt(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn x(&self, m: usize) -> f64 {
        m as f64 * self.length / self.n as f64
    }

    #[inline]
    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |m| self.x(m))
    }

    /// Physical wavenumber of FFT bin `i` (`2π κ / length`, `κ ∈ [-n/2, n/2)`).
    #[inline]
    pub fn wavenumber(&self, i: usize) -> f64 {
        crate::dft::mode_index(i, self.n) as f64 * TAU / self.length
    }

    /// Number of whole steps that best approximates the time span `t`.
    pub fn steps_for(&self, t: f64) -> usize {
        libm::round(t / self.dt()).max(0.0) as usize
    }
}
