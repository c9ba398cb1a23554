//! Exact discrete invariants of the walk on random angles and states.

mod common;

use common::{random_angles, random_state, Fast};
use proptest::prelude::*;
use qwalk_core::dft::NaiveDft;
use qwalk_core::walk::{
    build_s2_coefficients, gauge_transform, gauge_transform_angles, shift_fourier, shift_physical, step_s1, step_s2,
    GaugePhase,
};
use qwalk_core::{Complex64, Lattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(100)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn s1_and_s2_steps_conserve_norm(seed in any::<u64>(), n in prop::sample::select(vec![4usize, 8, 33, 64])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lattice = Lattice::periodic(n).unwrap();
        let angles = random_angles(&mut rng, n, 3);
        let s = random_state(&mut rng, n, lattice.dx());
        let one = step_s1(&s, &angles, &lattice, 0).unwrap();
        prop_assert!((one.norm(lattice.dx()) - 1.0).abs() < 1e-12);
        let two = step_s2(&s, &build_s2_coefficients(&angles, &lattice, 1).unwrap()).unwrap();
        prop_assert!((two.norm(lattice.dx()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn s2_is_two_s1_steps(seed in any::<u64>(), n in prop::sample::select(vec![8usize, 64, 512])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lattice = Lattice::periodic(n).unwrap();
        let angles = random_angles(&mut rng, n, 2);
        let s = random_state(&mut rng, n, lattice.dx());
        let twice = step_s1(&step_s1(&s, &angles, &lattice, 0).unwrap(), &angles, &lattice, 1).unwrap();
        let direct = step_s2(&s, &build_s2_coefficients(&angles, &lattice, 0).unwrap()).unwrap();
        prop_assert!(direct.max_abs_diff(&twice) < 1e-13, "{}", direct.max_abs_diff(&twice));
    }

    #[test]
    fn fourier_shift_matches_index_shift(
        seed in any::<u64>(),
        n in prop::sample::select(vec![4usize, 16, 256, 4096]),
        a in -9isize..9, b in -9isize..9,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, n, 1.0 / n as f64);
        let phys = shift_physical(&s, (a, b));
        let four = if n <= 256 {
            shift_fourier(&s, (a, b), &NaiveDft).unwrap()
        } else {
            shift_fourier(&s, (a, b), &Fast::new(n)).unwrap()
        };
        prop_assert!(four.max_abs_diff(&phys) < 1e-12, "{}", four.max_abs_diff(&phys));
    }

    #[test]
    fn gauge_covariance_s1_and_s2(seed in any::<u64>(), n in prop::sample::select(vec![4usize, 8, 31, 64])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lattice = Lattice::periodic(n).unwrap();
        let angles = random_angles(&mut rng, n, 3);
        let phi: Vec<Vec<f64>> = (0..4).map(|_| (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()).collect();
        let phase = GaugePhase::Sampled(phi);
        let gauged = gauge_transform_angles(&angles, &phase);
        let s = random_state(&mut rng, n, lattice.dx());

        let s0 = gauge_transform(&s, &phase, 0).unwrap();
        let lhs = step_s1(&s0, &gauged, &lattice, 0).unwrap();
        let rhs = gauge_transform(&step_s1(&s, &angles, &lattice, 0).unwrap(), &phase, 1).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12, "{}", lhs.max_abs_diff(&rhs));

        let s1 = gauge_transform(&s, &phase, 1).unwrap();
        let lhs = step_s2(&s1, &build_s2_coefficients(&gauged, &lattice, 1).unwrap()).unwrap();
        let evolved = step_s2(&s, &build_s2_coefficients(&angles, &lattice, 1).unwrap()).unwrap();
        let rhs = gauge_transform(&evolved, &phase, 3).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12, "{}", lhs.max_abs_diff(&rhs));
    }

    #[test]
    fn steps_are_linear(seed in any::<u64>(), n in 2usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lattice = Lattice::periodic(n).unwrap();
        let angles = random_angles(&mut rng, n, 1);
        let (u, v) = (random_state(&mut rng, n, 1.0), random_state(&mut rng, n, 1.0));
        let (a, b) = (Complex64::new(rng.gen(), rng.gen()), Complex64::new(rng.gen(), rng.gen()));
        let mixed = step_s1(&u.combine(a, &v, b).unwrap(), &angles, &lattice, 0).unwrap();
        let su = step_s1(&u, &angles, &lattice, 0).unwrap();
        let sv = step_s1(&v, &angles, &lattice, 0).unwrap();
        let sum = su.combine(a, &sv, b).unwrap();
        prop_assert!(mixed.max_abs_diff(&sum) < 1e-14);
    }
}
