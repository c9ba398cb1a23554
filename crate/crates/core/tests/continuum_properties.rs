//! Properties of classification and parameter emission.

mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::{dft, sx, test_state};
use proptest::prelude::*;
use qwalk_core::continuum::{
    case1_rhs_pm, case1_rhs_pq, classify_jet, emit_case1_params, emit_case22_params, emit_s1_params, JetSpec, LimitTag,
};
use qwalk_core::walk::{gauge_transform_angles, GaugePhase};
use qwalk_core::{sample_angles, AngleLaw, Lattice, ScalarField};

const SAMPLES: [(f64, f64); 4] = [(0.0, 0.0), (0.5, 1.0), (1.5, 3.0), (4.0, 5.5)];

fn bases() -> Vec<(JetSpec, LimitTag)> {
    let s2 = |t: f64, x: f64, z: f64, a: f64| JetSpec::s2(AngleLaw::constant(t, x, z, a), AngleLaw::zero());
    vec![
        (JetSpec::s1(AngleLaw::constant(PI, 0.0, 0.7, PI), AngleLaw::zero()), LimitTag::S1),
        (s2(0.4, FRAC_PI_2, 0.3, FRAC_PI_2), LimitTag::Case1),
        (s2(FRAC_PI_2, 0.3, 0.1, FRAC_PI_2), LimitTag::Case21),
        (s2(0.0, 0.0, 1.0, 0.0), LimitTag::Case22),
        (s2(0.0, FRAC_PI_2, 0.0, FRAC_PI_2), LimitTag::Overlap),
        (s2(0.4, 0.3, 0.0, 0.0), LimitTag::NoLimit),
    ]
}

fn shifted(jet: &JetSpec, k: [i32; 4]) -> JetSpec {
    let z = &jet.zeroth;
    let add = |f: &ScalarField, k: i32| f.add_scaled(&ScalarField::constant(TAU), k as f64);
    JetSpec::new(
        jet.stroboscope,
        AngleLaw::new(add(&z.theta, k[0]), add(&z.xi, k[1]), add(&z.zeta, k[2]), add(&z.alpha, k[3])),
        jet.first.clone(),
    )
}

#[test]
fn classification_table() {
    for (jet, tag) in bases() {
        assert_eq!(classify_jet(&jet, &SAMPLES).unwrap().tag, tag);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn classification_ignores_whole_turns(which in 0usize..6, k in prop::array::uniform4(-3i32..=3)) {
        let (jet, tag) = bases().swap_remove(which);
        prop_assert_eq!(classify_jet(&shifted(&jet, k), &SAMPLES).unwrap().tag, tag);
    }

    #[test]
    fn s1_masses_are_conjugate(
        k in -3i64..=3, s in -3i64..=3, d in -3i64..=3,
        zeta in -7.0..7.0f64, theta_bar in -2.0..2.0f64,
    ) {
        let d = if (s + d) % 2 == 0 { d } else { d + 1 };
        let zeroth = AngleLaw::new(
            ScalarField::constant(k as f64 * PI),
            ScalarField::constant(d as f64 * PI),
            sx(zeta, 0.3, 0.1),
            ScalarField::constant((k + s) as f64 * PI),
        );
        let first = AngleLaw::new(sx(theta_bar, 0.2, 0.0), ScalarField::zero(), ScalarField::zero(), ScalarField::zero());
        let p = emit_s1_params(&JetSpec::s1(zeroth, first), &SAMPLES).unwrap();
        for &(t, x) in &SAMPLES {
            prop_assert!((p.m_plus(t, x) - p.m_minus(t, x).conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn case22_masses_are_conjugate(
        k in -2i64..=2, kp in -3i64..=3, kpp in -3i64..=3,
        zeta in -7.0..7.0f64, theta_bar in -2.0..2.0f64,
    ) {
        let alpha0 = kp as f64 * FRAC_PI_2;
        let zeroth = AngleLaw::new(
            ScalarField::constant(2.0 * k as f64 * FRAC_PI_2),
            ScalarField::constant(alpha0 + kpp as f64 * PI),
            sx(zeta, 0.3, 0.1),
            ScalarField::constant(alpha0),
        );
        let first = AngleLaw::new(sx(theta_bar, 0.2, 0.0), ScalarField::zero(), ScalarField::zero(), ScalarField::zero());
        let p = emit_case22_params(&JetSpec::s2(zeroth, first), &SAMPLES).unwrap();
        for &(t, x) in &SAMPLES {
            prop_assert!((p.m_plus(t, x) - p.m_minus(t, x).conj()).norm() < 1e-14);
        }
    }
}

#[test]
fn case22_mass_example() {
    let zeroth = AngleLaw::constant(0.0, 0.0, 3.0 * FRAC_PI_2, 0.0);
    let first = AngleLaw::constant(1.0, 0.0, 0.0, 0.0);
    let p = emit_case22_params(&JetSpec::s2(zeroth, first), &SAMPLES).unwrap();
    assert!((p.m_minus(0.0, 0.0) - 1.0).norm() < 1e-15);
}

/// The `±` route and the `P/Q` route describe one equation.
#[test]
fn case1_routes_agree() {
    for xi0 in [FRAC_PI_2, -FRAC_PI_2, 3.0 * FRAC_PI_2] {
        let zeroth = AngleLaw::new(
            sx(0.5, 0.2, 0.1),
            ScalarField::constant(xi0),
            sx(0.4, 0.5, 0.2),
            ScalarField::constant(FRAC_PI_2),
        );
        let first = AngleLaw::new(ScalarField::zero(), sx(0.1, -0.4, 0.0), ScalarField::zero(), sx(-0.2, 0.3, 0.2));
        let jet = JetSpec::s2(zeroth, first);
        let lattice = Lattice::periodic(64).unwrap();
        let state = test_state(&lattice, 6);
        for t in [0.0, 0.7] {
            let samples: Vec<(f64, f64)> = lattice.points().map(|x| (t, x)).collect();
            let params = emit_case1_params(&jet, &samples).unwrap();
            let pm = case1_rhs_pm(&params, &jet, &state, &lattice, t, &dft()).unwrap();
            let pq = case1_rhs_pq(&jet, &state, &lattice, t, &dft()).unwrap();
            assert!(pm.max_abs_diff(&pq) < 1e-6, "xi0 {xi0}, t {t}: {}", pm.max_abs_diff(&pq));
        }
    }
}

/// A smooth discrete gauge phase shifts the first-order angles by
/// `(−∂_T φ, +∂_X φ, −∂_X φ)` up to `O(ε)`, so `A' = A − ∂φ`.
#[test]
fn gauge_transform_shifts_potentials() {
    let phi = || {
        ScalarField::with_gradient(
            |t, x| 0.7 * x.sin() * (0.5 * t).cos() + 0.3 * t,
            |t, x| (-0.35 * x.sin() * (0.5 * t).sin() + 0.3, 0.7 * x.cos() * (0.5 * t).cos()),
        )
    };
    let jet = JetSpec::electric(-0.24, 1.1);
    let err = |n: usize| {
        let lattice = Lattice::periodic(n).unwrap();
        let eps = lattice.epsilon();
        let phase = GaugePhase::from_continuum(phi(), &lattice);
        let gauged = gauge_transform_angles(&jet.walk_field(&lattice), &phase);
        let p = phi();
        let mut worst: f64 = 0.0;
        for j in [0usize, 7, 20] {
            let row = sample_angles(&gauged, &lattice, j).unwrap();
            let t = lattice.time(j);
            for (m, x) in lattice.points().enumerate() {
                let (pt, px) = p.gradient(t, x);
                let abar = row.alpha[m] / eps;
                let xibar = row.xi[m] / eps;
                let zbar = (row.zeta[m] - FRAC_PI_2) / eps;
                worst = worst
                    .max((abar + pt).abs())
                    .max((xibar - (1.1 * t + px)).abs())
                    .max((zbar + px).abs());
            }
        }
        worst
    };
    let (a, b) = (err(128), err(256));
    assert!(a < 0.1 && (1.7..=2.3).contains(&(a / b)), "{a} {b}");

    // φ = 0.3 T + 0.7 X re-emitted in closed form.
    let moved = JetSpec::s1(
        jet.zeroth.clone(),
        AngleLaw::new(
            jet.first.theta.clone(),
            jet.first.xi.add_scaled(&ScalarField::constant(0.7), 1.0),
            ScalarField::zero(),
            ScalarField::constant(-0.3),
        ),
    );
    let before = emit_s1_params(&jet, &SAMPLES).unwrap();
    let after = emit_s1_params(&moved, &SAMPLES).unwrap();
    for &(t, x) in &SAMPLES {
        assert!((before.m_minus(t, x).norm() - after.m_minus(t, x).norm()).abs() < 1e-15);
        assert!((after.a0.value(t, x) - (before.a0.value(t, x) - 0.3)).abs() < 1e-15);
        assert!((after.a1.value(t, x) - (before.a1.value(t, x) - 0.7)).abs() < 1e-14);
    }
}
