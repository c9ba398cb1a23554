#![allow(dead_code)]

use std::f64::consts::TAU;

use qwalk_core::dft::NaiveDft;
use qwalk_core::{Complex64, Lattice, ScalarField, SpinorField};

/// `((1 + cos(2π(x − xc)/L))/2)^p e^{2πi q x / L}`: exactly band-limited to
/// modes `q − p ..= q + p`.
pub fn bump(lattice: &Lattice, xc: f64, p: i32, q: i32) -> Vec<Complex64> {
    let l = lattice.length();
    lattice
        .points()
        .map(|x| {
            let b = ((1.0 + (TAU * (x - xc) / l).cos()) / 2.0).powi(p);
            Complex64::from_polar(b, TAU * q as f64 * x / l)
        })
        .collect()
}

/// Two different bumps in the two components.
pub fn test_state(lattice: &Lattice, p: i32) -> SpinorField {
    let l = lattice.length();
    let left = bump(lattice, 0.45 * l, p, 2);
    let right: Vec<Complex64> = bump(lattice, 0.55 * l, p, -1)
        .into_iter()
        .map(|v| v * Complex64::new(0.6, -0.3))
        .collect();
    SpinorField::new(left, right).unwrap()
}

pub fn dft() -> NaiveDft {
    NaiveDft
}

pub fn sx(a: f64, b: f64, c: f64) -> ScalarField {
    ScalarField::with_gradient(
        move |t, x| a + b * (x + 0.3 * t).sin() + c * (2.0 * x).cos(),
        move |t, x| {
            let d = b * (x + 0.3 * t).cos();
            (0.3 * d, d - 2.0 * c * (2.0 * x).sin())
        },
    )
}

/// `rustfft` behind the core `Dft` trait, for the large sizes.
pub struct Fast(std::sync::Arc<dyn rustfft::Fft<f64>>, std::sync::Arc<dyn rustfft::Fft<f64>>);

impl Fast {
    pub fn new(n: usize) -> Self {
        let mut planner = rustfft::FftPlanner::new();
        Fast(planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
    }
}

impl qwalk_core::dft::Dft for Fast {
    fn forward(&self, data: &mut [Complex64]) {
        self.0.process(data)
    }

    fn inverse(&self, data: &mut [Complex64]) {
        self.1.process(data)
    }
}

/// Random unit-norm state from a seeded generator.
pub fn random_state(rng: &mut impl rand::Rng, n: usize, dx: f64) -> SpinorField {
    let mut s = SpinorField::from_fn(n, |_| {
        (
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    });
    s.normalize(dx).unwrap();
    s
}

/// `rows` random angle slices of length `n`.
pub fn random_angles(rng: &mut impl rand::Rng, n: usize, rows: usize) -> qwalk_core::AngleField {
    let mut v = || (0..n).map(|_| rng.gen_range(-TAU..TAU)).collect::<Vec<f64>>();
    let rows = (0..rows)
        .map(|_| qwalk_core::AngleRow::new(v(), v(), v(), v()).unwrap())
        .collect();
    qwalk_core::AngleField::Sampled(rows)
}
