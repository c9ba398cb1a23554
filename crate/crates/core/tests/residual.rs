//! First-order consistency of every limit family: the one-period residual
//! must shrink linearly in `ε`.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::{dft, sx, test_state};
use qwalk_core::continuum::{consistency_residual, JetSpec};
use qwalk_core::schwarzschild::SchwarzschildConfig;
use qwalk_core::{AngleLaw, Lattice, ScalarField};

fn ratio(jet: &JetSpec, length: f64, n: usize, p: i32) -> (f64, f64, f64) {
    let r = |n: usize| {
        let lattice = Lattice::new(n, length).unwrap();
        consistency_residual(jet, &test_state(&lattice, p), &lattice, &dft()).unwrap()
    };
    let (a, b) = (r(n), r(2 * n));
    (a, b, a / b)
}

fn assert_first_order(name: &str, jet: &JetSpec, length: f64, n: usize, p: i32) {
    let (a, b, q) = ratio(jet, length, n, p);
    println!("{name}: r({n}) = {a:.3e}, r({}) = {b:.3e}, ratio {q:.3}", 2 * n);
    assert!((1.7..=2.3).contains(&q), "{name}: ratio {q}");
}

#[test]
fn electric_s1() {
    assert_first_order("electric", &JetSpec::electric(-0.24, 1.1), 2.0 * PI, 256, 8);
}

#[test]
fn general_s1() {
    // θ₀ = π, α₀ = π, ξ₀ = 0: k = 1, k± = 0.
    let zeroth = AngleLaw::new(
        ScalarField::constant(PI),
        ScalarField::zero(),
        sx(0.4, 0.5, 0.2),
        ScalarField::constant(PI),
    );
    let first = AngleLaw::new(sx(0.3, 0.2, 0.1), sx(0.1, -0.4, 0.0), ScalarField::zero(), sx(-0.2, 0.3, 0.2));
    assert_first_order("s1", &JetSpec::s1(zeroth, first), 2.0 * PI, 128, 6);
}

#[test]
fn case22() {
    for (alpha, xi) in [(0.0, 0.0), (PI, 0.0), (FRAC_PI_2, 3.0 * FRAC_PI_2)] {
        let zeroth = AngleLaw::new(
            ScalarField::zero(),
            ScalarField::constant(xi),
            sx(0.4, 0.5, 0.2),
            ScalarField::constant(alpha),
        );
        let first = AngleLaw::new(sx(0.3, 0.2, 0.1), sx(0.1, -0.4, 0.0), ScalarField::zero(), sx(-0.2, 0.3, 0.2));
        assert_first_order("case 2.2", &JetSpec::s2(zeroth, first), 2.0 * PI, 128, 6);
    }
}

#[test]
fn case21_both_signs() {
    for theta0 in [FRAC_PI_2, -FRAC_PI_2, 3.0 * FRAC_PI_2] {
        let zeroth = AngleLaw::new(
            ScalarField::constant(theta0),
            sx(0.3, 0.7, 0.1),
            sx(0.4, 0.5, 0.2),
            ScalarField::constant(FRAC_PI_2),
        );
        let first = AngleLaw::new(sx(0.3, 0.2, 0.1), ScalarField::zero(), ScalarField::zero(), sx(-0.2, 0.3, 0.2));
        assert_first_order("case 2.1", &JetSpec::s2(zeroth, first), 2.0 * PI, 128, 6);
    }
}

#[test]
fn case1_generic() {
    let zeroth = AngleLaw::new(
        sx(0.5, 0.2, 0.1),
        ScalarField::constant(FRAC_PI_2),
        sx(0.4, 0.5, 0.2),
        ScalarField::constant(FRAC_PI_2),
    );
    let first = AngleLaw::new(ScalarField::zero(), sx(0.1, -0.4, 0.0), ScalarField::zero(), sx(-0.2, 0.3, 0.2));
    assert_first_order("case 1", &JetSpec::s2(zeroth, first), 2.0 * PI, 128, 6);
}

#[test]
fn case1_schwarzschild_interior() {
    // Lattice X ∈ [0, 16) sits at 2 + X, well inside the horizon at 20.
    let cfg = SchwarzschildConfig::new(30.0, 1.0).unwrap();
    let theta = ScalarField::with_gradient(
        move |t, x| cfg.walk_theta(t, x + 2.0).unwrap(),
        move |t, x| cfg.walk_theta_gradient(t, x + 2.0).unwrap(),
    );
    let c = ScalarField::constant(FRAC_PI_2);
    let jet = JetSpec::s2(AngleLaw::new(theta, c.clone(), c.clone(), c), AngleLaw::zero());
    assert_first_order("schwarzschild", &jet, 16.0, 128, 30);
}
