//! The U(2) coin.

use num_complex::Complex64;

use crate::field::AngleRow;
use crate::{Error, Result};

/// A 2×2 complex matrix acting on `(ψ^L, ψ^R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix(pub [[Complex64; 2]; 2]);

/// Builds
///
/// ```text
/// B(θ, ξ, ζ, α) = e^{iα} [  e^{iξ} cos θ    e^{iζ} sin θ ]
///                        [ -e^{-iζ} sin θ   e^{-iξ} cos θ ]
/// ```
///
/// which is unitary with determinant `e^{2iα}`.
pub fn build_coin(theta: f64, xi: f64, zeta: f64, alpha: f64) -> Result<CoinMatrix> {
    if !(theta.is_finite() && xi.is_finite() && zeta.is_finite() && alpha.is_finite()) {
        return Err(Error::NonFinite("coin angles"));
    }
    Ok(coin_unchecked(theta, xi, zeta, alpha))
}

#[inline]
pub(crate) fn coin_unchecked(theta: f64, xi: f64, zeta: f64, alpha: f64) -> CoinMatrix {
    let (s, c) = libm::sincos(theta);
    let phase = |a: f64| {
        let (s, c) = libm::sincos(a);
        Complex64::new(c, s)
    };
    CoinMatrix([
        [phase(alpha + xi) * c, phase(alpha + zeta) * s],
        [-phase(alpha - zeta) * s, phase(alpha - xi) * c],
    ])
}

impl CoinMatrix {
    pub const IDENTITY: CoinMatrix = CoinMatrix([
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);

    #[inline]
    pub fn apply(&self, left: Complex64, right: Complex64) -> (Complex64, Complex64) {
        let b = &self.0;
        (
            b[0][0] * left + b[0][1] * right,
            b[1][0] * left + b[1][1] * right,
        )
    }

    pub fn det(&self) -> Complex64 {
        let b = &self.0;
        b[0][0] * b[1][1] - b[0][1] * b[1][0]
    }

    pub fn adjoint(&self) -> CoinMatrix {
        let b = &self.0;
        CoinMatrix([
            [b[0][0].conj(), b[1][0].conj()],
            [b[0][1].conj(), b[1][1].conj()],
        ])
    }

    pub fn mul(&self, other: &CoinMatrix) -> CoinMatrix {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        CoinMatrix(out)
    }

    /// `max |(B†B − I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.0[i][j] - target).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &CoinMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

/// The coins of one time slice; a single matrix when the slice is uniform.
#[derive(Debug, Clone)]
pub enum CoinRow {
    Uniform(CoinMatrix),
    PerSite(alloc::vec::Vec<CoinMatrix>),
}

impl CoinRow {
    pub fn from_angles(row: &AngleRow) -> CoinRow {
        match row.as_uniform() {
            Some([t, x, z, a]) => CoinRow::Uniform(coin_unchecked(t, x, z, a)),
            None => CoinRow::PerSite(
                (0..row.len())
                    .map(|m| {
                        let [t, x, z, a] = row.at(m);
                        coin_unchecked(t, x, z, a)
                    })
                    .collect(),
            ),
        }
    }

    #[inline]
    pub fn at(&self, m: usize) -> &CoinMatrix {
        match self {
            CoinRow::Uniform(b) => b,
            CoinRow::PerSite(v) => &v[m],
        }
    }
}
