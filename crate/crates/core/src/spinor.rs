use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Two complex components `(ψ^L, ψ^R)` on `n` periodic sites.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    left: Vec<Complex64>,
    right: Vec<Complex64>,
}

impl SpinorField {
    pub fn new(left: Vec<Complex64>, right: Vec<Complex64>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::Dimension {
                expected: left.len(),
                found: right.len(),
            });
        }
        if left.is_empty() {
            return Err(Error::InvalidArgument("spinor field needs at least one site"));
        }
        Ok(Self { left, right })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            left: vec![Complex64::new(0.0, 0.0); n],
            right: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// Builds both components from a closure of the site index.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> (Complex64, Complex64)) -> Self {
        let (left, right) = (0..n).map(&mut f).unzip();
        Self { left, right }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.left.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    #[inline]
    pub fn left(&self) -> &[Complex64] {
        &self.left
    }

    #[inline]
    pub fn right(&self) -> &[Complex64] {
        &self.right
    }

    #[inline]
    pub fn left_mut(&mut self) -> &mut [Complex64] {
        &mut self.left
    }

    #[inline]
    pub fn right_mut(&mut self) -> &mut [Complex64] {
        &mut self.right
    }

    pub fn components_mut(&mut self) -> (&mut [Complex64], &mut [Complex64]) {
        (&mut self.left, &mut self.right)
    }

    pub fn into_parts(self) -> (Vec<Complex64>, Vec<Complex64>) {
        (self.left, self.right)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: n,
                found: self.len(),
            })
        }
    }

    /// `Σ_m |ψ^L_m|² + |ψ^R_m|²`.
    pub fn sum_sq(&self) -> f64 {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| l.norm_sqr() + r.norm_sqr())
            .sum()
    }

    /// Total probability `Σ_m (|ψ^L_m|² + |ψ^R_m|²) dx`.
    pub fn norm(&self, dx: f64) -> f64 {
        self.sum_sq() * dx
    }

    /// Pointwise density `|ψ^L_m|² + |ψ^R_m|²`.
    pub fn density(&self) -> Vec<f64> {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| l.norm_sqr() + r.norm_sqr())
            .collect()
    }

    pub fn scale(&mut self, s: Complex64) {
        for v in self.left.iter_mut().chain(self.right.iter_mut()) {
            *v *= s;
        }
    }

    /// Rescales so that `norm(dx) == 1`.
    pub fn normalize(&mut self, dx: f64) -> Result<()> {
        let norm = self.norm(dx);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Degenerate("cannot normalize a zero or non-finite field"));
        }
        self.scale(Complex64::new(1.0 / libm::sqrt(norm), 0.0));
        Ok(())
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &SpinorField, b: Complex64) -> Result<SpinorField> {
        other.check_len(self.len())?;
        let mix = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
            x.iter().zip(y).map(|(x, y)| a * x + b * y).collect()
        };
        Ok(SpinorField {
            left: mix(&self.left, &other.left),
            right: mix(&self.right, &other.right),
        })
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &SpinorField) -> f64 {
        self.left
            .iter()
            .zip(&other.left)
            .chain(self.right.iter().zip(&other.right))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_components_are_rejected() {
        let e = SpinorField::new(vec![Complex64::new(1.0, 0.0)], vec![]);
        assert!(matches!(e, Err(Error::Dimension { .. })));
    }

    #[test]
    fn norm_weights_by_spacing() {
        let s = SpinorField::new(
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)],
        )
        .unwrap();
        assert_eq!(s.sum_sq(), 7.0);
        assert_eq!(s.norm(0.5), 3.5);
        assert_eq!(s.density(), vec![1.0, 6.0]);
    }

    #[test]
    fn normalize_gives_unit_norm() {
        let mut s = SpinorField::from_fn(10, |m| (Complex64::new(m as f64, 1.0), Complex64::new(0.5, 0.0)));
        s.normalize(0.1).unwrap();
        assert!((s.norm(0.1) - 1.0).abs() < 1e-14);
        assert!(SpinorField::zeros(3).normalize(1.0).is_err());
    }
}
