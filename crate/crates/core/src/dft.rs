//! Discrete Fourier transforms on periodic data.
//!
//! Convention: `ψ(x_m) = Σ_κ ψ̂_κ e^{iκ x_m}` with `κ ∈ [-n/2, n/2)` and
//! `ψ̂_κ = (1/n) Σ_m ψ(x_m) e^{-iκ x_m}`. Bin `i` holds mode [`mode_index`]`(i, n)`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, Result};

/// An unnormalized in-place DFT of any length.
///
/// `forward` computes `Σ_m x_m e^{-2πi·im/n}` and `inverse` computes
/// `Σ_i x_i e^{+2πi·im/n}`; the round trip multiplies by `n`.
pub trait Dft {
    fn forward(&self, data: &mut [Complex64]);
    fn inverse(&self, data: &mut [Complex64]);
}

impl<D: Dft + ?Sized> Dft for &D {
    fn forward(&self, data: &mut [Complex64]) {
        (**self).forward(data)
    }

    fn inverse(&self, data: &mut [Complex64]) {
        (**self).inverse(data)
    }
}

/// Signed mode number of FFT bin `i`: `i` below `n/2`, `i - n` from `n/2` on.
#[inline]
pub fn mode_index(i: usize, n: usize) -> isize {
    if i < n / 2 {
        i as isize
    } else {
        i as isize - n as isize
    }
}

/// `e^{2πi·p/n}` with `p` reduced mod `n` first, so that integer phases are
/// exact at the quarter turns.
pub fn root_of_unity(p: i128, n: usize) -> Complex64 {
    let n_i = n as i128;
    let r = p.rem_euclid(n_i);
    if 4 * r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * r == n_i {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * r == n_i {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * r == 3 * n_i {
        return Complex64::new(0.0, -1.0);
    }
    let (s, c) = libm::sincos(TAU * r as f64 / n as f64);
    Complex64::new(c, s)
}

/// Textbook `O(n²)` transform with a precomputed twiddle table.
///
/// Slow but dependency-free; it backs the crate in `no_std` builds and serves
/// as the reference in tests.
#[derive(Debug, Default, Clone, Copy)]
pub struct NaiveDft;

impl NaiveDft {
    fn transform(data: &mut [Complex64], sign: i128) {
        let n = data.len();
        if n <= 1 {
            return;
        }
        let twiddle: Vec<Complex64> = (0..n).map(|p| root_of_unity(sign * p as i128, n)).collect();
        let input = data.to_vec();
        for (k, out) in data.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0usize;
            for x in &input {
                acc += twiddle[idx] * x;
                idx += k;
                if idx >= n {
                    idx -= n;
                }
            }
            *out = acc;
        }
    }
}

impl Dft for NaiveDft {
    fn forward(&self, data: &mut [Complex64]) {
        Self::transform(data, -1)
    }

    fn inverse(&self, data: &mut [Complex64]) {
        Self::transform(data, 1)
    }
}

/// Normalized coefficients `ψ̂` of `values`, in bin order.
pub fn spectrum(dft: &impl Dft, values: &[Complex64]) -> Vec<Complex64> {
    let mut buf = values.to_vec();
    dft.forward(&mut buf);
    let s = 1.0 / values.len() as f64;
    for v in &mut buf {
        *v *= s;
    }
    buf
}

/// Values on the grid from normalized coefficients.
pub fn synthesize(dft: &impl Dft, coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    dft.inverse(&mut buf);
    buf
}

/// Multiplies mode `κ` by `multiplier(κ)` in place.
pub fn apply_symbol(dft: &impl Dft, data: &mut [Complex64], mut multiplier: impl FnMut(isize) -> Complex64) {
    let n = data.len();
    dft.forward(data);
    let s = 1.0 / n as f64;
    for (i, v) in data.iter_mut().enumerate() {
        *v *= multiplier(mode_index(i, n)) * s;
    }
    dft.inverse(data);
}

/// Spectral `d/dx` on a period of `length`. The unpaired Nyquist mode is
/// dropped so that real data keeps a real derivative.
pub fn spectral_derivative(dft: &impl Dft, values: &[Complex64], length: f64) -> Vec<Complex64> {
    let n = values.len();
    let mut buf = values.to_vec();
    apply_symbol(dft, &mut buf, |kappa| {
        if n % 2 == 0 && kappa == -(n as isize / 2) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, TAU * kappa as f64 / length)
        }
    });
    buf
}

/// Spectral derivative of real samples.
pub fn spectral_derivative_real(dft: &impl Dft, values: &[f64], length: f64) -> Vec<f64> {
    let c: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    spectral_derivative(dft, &c, length).into_iter().map(|z| z.re).collect()
}

/// Fraction of spectral power in the top third of the band (`|κ| > n/3`).
pub fn high_band_fraction(dft: &impl Dft, values: &[Complex64]) -> f64 {
    let n = values.len();
    let spec = spectrum(dft, values);
    let mut total = 0.0;
    let mut high = 0.0;
    for (i, v) in spec.iter().enumerate() {
        let p = v.norm_sqr();
        total += p;
        if 3 * mode_index(i, n).unsigned_abs() > n {
            high += p;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        high / total
    }
}

/// Errors unless the top third of the spectrum is empty to `tol`.
pub fn check_band_limited(dft: &impl Dft, values: &[Complex64], tol: f64) -> Result<()> {
    let fraction = high_band_fraction(dft, values);
    if fraction > tol {
        Err(Error::NotBandLimited { fraction })
    } else {
        Ok(())
    }
}
