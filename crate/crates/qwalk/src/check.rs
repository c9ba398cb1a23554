//! Seeded invariant checks of the walk kernels.
//!
//! Coins come from an injectable builder, so a broken builder can be fed in
//! to confirm the suite catches it.

use qwalk_core::coin::{build_coin, CoinMatrix, CoinRow};
use qwalk_core::walk::{
    build_s2_coefficients, gauge_transform, gauge_transform_angles, step_s1, step_s1_fourier, step_s2, step_with_coins,
    GaugePhase,
};
use qwalk_core::{AngleField, AngleRow, Complex64, Lattice, SpinorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{AppResult, RustFft};

/// Builds a coin from `(θ, ξ, ζ, α)`.
pub type CoinBuilder = fn(f64, f64, f64, f64) -> CoinMatrix;

/// The standard coin.
pub fn standard_coin(theta: f64, xi: f64, zeta: f64, alpha: f64) -> CoinMatrix {
    build_coin(theta, xi, zeta, alpha).expect("finite angles")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    /// Worst observed violation.
    pub value: f64,
    pub tolerance: f64,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }

    /// `tolerance − value`; negative on failure.
    pub fn margin(&self) -> f64 {
        self.tolerance - self.value
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub checks: Vec<InvariantCheck>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(InvariantCheck::passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("property suite, seed {}\n", self.seed);
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<28} worst {:.3e}  tol {:.0e}  margin {:+.3e}\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.tolerance,
                c.margin()
            ));
        }
        s
    }
}

const CASES: usize = 128;

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-std::f64::consts::TAU..std::f64::consts::TAU)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> SpinorField {
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    SpinorField::from_fn(n, |_| (c(), c()))
}

fn random_row(rng: &mut ChaCha8Rng, n: usize) -> AngleRow {
    let mut v = || (0..n).map(|_| angle(rng)).collect::<Vec<_>>();
    AngleRow::new(v(), v(), v(), v()).expect("equal lengths")
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, slices: usize) -> AngleField {
    AngleField::Sampled((0..slices).map(|_| random_row(rng, n)).collect())
}

fn coin_row(row: &AngleRow, builder: CoinBuilder) -> CoinRow {
    CoinRow::PerSite(
        (0..row.len())
            .map(|m| {
                let [t, x, z, a] = row.at(m);
                builder(t, x, z, a)
            })
            .collect(),
    )
}

/// Runs every invariant on `CASES` random instances drawn from `seed`.
pub fn run_property_suite(seed: u64, builder: CoinBuilder) -> AppResult<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dft = RustFft::new();
    let mut unitarity = 0.0f64;
    let mut det = 0.0f64;
    let mut norm = 0.0f64;
    let mut fourier = 0.0f64;
    let mut s2 = 0.0f64;
    let mut gauge = 0.0f64;

    for _ in 0..CASES {
        let [t, x, z, a] = [angle(&mut rng), angle(&mut rng), angle(&mut rng), angle(&mut rng)];
        let b = builder(t, x, z, a);
        unitarity = unitarity.max(b.unitarity_defect());
        det = det.max((b.det() - Complex64::from_polar(1.0, 2.0 * a)).norm());

        let n = rng.gen_range(4..48);
        let lattice = Lattice::periodic(n)?;
        let mut state = random_state(&mut rng, n);
        let before = state.sum_sq();
        let mut out = SpinorField::zeros(n);
        for _ in 0..20 {
            let prev = state.sum_sq();
            step_with_coins(&state, &coin_row(&random_row(&mut rng, n), builder), &mut out);
            std::mem::swap(&mut state, &mut out);
            norm = norm.max((state.sum_sq() - prev).abs() / before);
        }

        let row = random_row(&mut rng, n);
        let coins = coin_row(&row, builder);
        step_with_coins(&state, &coins, &mut out);
        fourier = fourier.max(out.max_abs_diff(&step_s1_fourier(&state, &coins, &dft)?));

        let field = random_field(&mut rng, n, 3);
        let two = step_s1(&step_s1(&state, &field, &lattice, 0)?, &field, &lattice, 1)?;
        let closed = step_s2(&state, &build_s2_coefficients(&field, &lattice, 0)?)?;
        s2 = s2.max(two.max_abs_diff(&closed));
        norm = norm.max((closed.sum_sq() - state.sum_sq()).abs() / state.sum_sq());

        let (p, q) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let phase = GaugePhase::from_fn(move |j, m| (p * m as f64 + q * j as f64).sin());
        let lhs = gauge_transform(&step_s1(&state, &field, &lattice, 0)?, &phase, 1)?;
        let primed = gauge_transform_angles(&field, &phase);
        let rhs = step_s1(&gauge_transform(&state, &phase, 0)?, &primed, &lattice, 0)?;
        gauge = gauge.max(lhs.max_abs_diff(&rhs));
    }

    let check = |name, value, tolerance| InvariantCheck { name, value, tolerance };
    Ok(CheckReport {
        seed,
        checks: vec![
            check("coin unitarity", unitarity, 1e-12),
            check("coin determinant", det, 1e-12),
            check("norm per S1/S2 step", norm, 1e-12),
            check("fourier vs physical shift", fourier, 1e-12),
            check("S2 closed form vs 2 x S1", s2, 1e-13),
            check("U(1) gauge covariance", gauge, 1e-12),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn broken(theta: f64, xi: f64, zeta: f64, alpha: f64) -> CoinMatrix {
        let mut b = standard_coin(theta, xi, zeta, alpha);
        b.0[1][0] = -b.0[1][0].conj();
        b
    }

    #[test]
    fn standard_builder_passes() {
        let r = run_property_suite(7, standard_coin).unwrap();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn broken_builder_is_caught() {
        let r = run_property_suite(7, broken).unwrap();
        assert!(!r.passed());
        assert!(!r.checks[0].passed());
        assert!(!r.checks[2].passed());
    }
}
