use proptest::prelude::*;

use takens_lab::bounds::normalize_observation;
use takens_lab::config::{
    CheckSpec, DemoSpec, DimensionSpec, EigvecSpec, ObservationSpec, RunConfig, SweepSpec,
    SystemSpec, SCHEMA_VERSION,
};
use takens_lab::dimension::{correlation_sum, correlation_sums_sorted, sorted_pairwise_distances};
use takens_lab::linalg::{norm, real_norm};
use takens_lab::system::{evolve, flow_step, make_canonical_eigvecs, ClassASystem, SpectralCoords};
use takens_lab::Complex64;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, -1.0..1.0f64, Just(0.1), Just(1.0 / 3.0)]
}

fn eigvec_spec() -> impl Strategy<Value = EigvecSpec> {
    prop_oneof![
        Just(EigvecSpec::Canonical {}),
        any::<u64>().prop_map(|seed| EigvecSpec::Gaussian { seed }),
        (
            prop::collection::vec(
                prop::collection::vec((finite(), finite()).prop_map(|(a, b)| [a, b]), 1..4),
                1..3
            ),
            any::<bool>()
        )
            .prop_map(|(vectors, normalize)| EigvecSpec::Explicit { vectors, normalize }),
    ]
}

fn observation_spec() -> impl Strategy<Value = ObservationSpec> {
    prop_oneof![
        (0.0..1.0f64).prop_map(|variance| ObservationSpec::Perturbed { variance }),
        Just(ObservationSpec::Exact {}),
        prop::collection::vec(finite(), 1..5).prop_map(|h| ObservationSpec::Explicit { h }),
    ]
}

prop_compose! {
    fn run_config()(
        seed in any::<u64>(),
        output in prop::option::of("[a-z]{1,8}\\.csv"),
        system in prop::option::of((prop::collection::vec(0.01..3.0f64, 1..4), 0.1..2.0f64, 1usize..60, eigvec_spec())
            .prop_map(|(thetas, ts, n, eigvecs)| SystemSpec { thetas, ts, n, eigvecs })),
        alpha0 in prop::option::of(prop::collection::vec((finite(), finite()).prop_map(|(a, b)| [a, b]), 0..6)),
        observation in prop::option::of(observation_spec()),
        check in prop::option::of((1usize..500, prop::collection::vec(0.001..1.0f64, 0..3))
            .prop_map(|(m, eps)| CheckSpec { m, eps })),
        sweep in prop::option::of((1usize..10, 10usize..300, 1usize..5, 2usize..2000, 1.0..1e5f64)
            .prop_map(|(m_start, m_stop, m_step, trials, t_max)| SweepSpec { m_start, m_stop, m_step, trials, t_max })),
        dimension in prop::option::of((2usize..5000, prop::collection::vec(1usize..300, 1..5), 0.0..1.0f64,
            prop::option::of(prop::collection::vec(1e-3..10.0f64, 2..6)), 0.01..0.5f64, 0.1..2.0f64, 0usize..5)
            .prop_map(|(k, m_list, noise_sigma, eps_grid, plateau_tol, plateau_min_width, theiler)| DimensionSpec {
                k, m_list, noise_sigma, eps_grid, plateau_tol, plateau_min_width, theiler })),
        demo in prop::option::of((0.001..3.0f64, prop::collection::vec(0.001..0.999f64, 1..4), prop::collection::vec(1usize..500, 1..4))
            .prop_map(|(theta, eps, m)| DemoSpec { theta, eps, m })),
    ) -> RunConfig {
        RunConfig { schema_version: SCHEMA_VERSION, seed, output, system, alpha0, observation, check, sweep, dimension, demo }
    }
}

proptest! {
    #[test]
    fn config_serialization_round_trips(cfg in run_config()) {
        let text = cfg.to_json();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn correlation_sum_is_monotone_bounded_and_exact(
        pts in prop::collection::vec(prop::collection::vec(-5.0..5.0f64, 2), 2..30),
        mut eps in prop::collection::vec(0.001..15.0f64, 2..8),
    ) {
        eps.sort_by(f64::total_cmp);
        let sorted = sorted_pairwise_distances(&pts, 0);
        let fast = correlation_sums_sorted(&sorted, &eps);
        for w in fast.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        for (e, c) in eps.iter().zip(&fast) {
            prop_assert!((0.0..=1.0).contains(c));
            prop_assert_eq!(*c, correlation_sum(&pts, *e).unwrap());
        }
        let beyond = sorted.last().unwrap() + 1e-9;
        prop_assert_eq!(correlation_sums_sorted(&sorted, &[beyond])[0], 1.0);
    }

    #[test]
    fn flow_preserves_symmetry_and_norm(theta in 0.01..3.1f64, t in -1e4..1e4f64, re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let sys = ClassASystem::new(vec![theta], make_canonical_eigvecs(1, 2).unwrap(), 1.0).unwrap();
        let alpha = SpectralCoords::from_modes(&[Complex64::new(re, im)]);
        let moved = evolve(&sys, &alpha, t);
        let s = moved.as_slice();
        prop_assert!((s[0] - s[1].conj()).norm() <= 1e-12 * (1.0 + s[0].norm()));
        prop_assert!((norm(s) - alpha.norm()).abs() <= 1e-12 * (1.0 + alpha.norm()));
        let back = flow_step(&sys, &flow_step(&sys, &alpha, 7), -7);
        prop_assert!(norm(&back.difference(&alpha)) <= 1e-10 * (1.0 + alpha.norm()));
    }

    #[test]
    fn normalized_observation_has_target_norm(c in prop::collection::vec(-10.0..10.0f64, 1..20), d in 1usize..5, m in 1usize..500) {
        prop_assume!(real_norm(&c) > 1e-6);
        let h = normalize_observation(&c, d, m).unwrap();
        let target = 2.0 * d as f64 / m as f64;
        prop_assert!((real_norm(&h).powi(2) - target).abs() <= 1e-12 * target);
    }
}
