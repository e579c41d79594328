use std::f64::consts::PI;

use proptest::prelude::*;
use spiked_core::fit::fit_line;
use spiked_core::oscillator::*;
use spiked_core::weak_coupling::*;

#[test]
fn unperturbed_levels_with_extrapolation() {
    let pure = PotentialSpec::spiked(4.0, 0.0).unwrap();
    let grid = RadialGrid::new(12.0, 2000).unwrap();
    let s = exact_spectrum(&pure, &grid, 3, true).unwrap();
    for (e, want) in s.eigenvalues.iter().zip([3.0, 7.0, 11.0]) {
        assert!((e - want).abs() < 1e-8, "{e}");
    }
}

#[test]
fn raw_finite_differences_converge_at_second_order() {
    let spec = PotentialSpec::spiked(4.0, 0.01).unwrap();
    let grids: Vec<RadialGrid> = [500, 1001, 2003]
        .iter()
        .map(|&n| RadialGrid::new(10.0, n).unwrap())
        .collect();
    let study = convergence_study(&spec, 1, &grids).unwrap();
    let order = study.observed_order.unwrap();
    assert!((order - 2.0).abs() < 0.1, "observed order {order}");
    assert_eq!(study.rows.len(), 3);
}

#[test]
fn wall_position_does_not_matter_once_far_out() {
    let spec = PotentialSpec::spiked(4.0, 0.01).unwrap();
    let a = exact_spectrum(&spec, &RadialGrid::new(10.0, 4000).unwrap(), 1, true).unwrap();
    let b = exact_spectrum(&spec, &RadialGrid::new(12.0, 4800).unwrap(), 1, true).unwrap();
    assert!((a.eigenvalues[0] - b.eigenvalues[0]).abs() < 1e-9);
}

#[test]
fn linear_term_and_centrifugal_barrier_raise_the_levels() {
    let grid = RadialGrid::new(10.0, 2000).unwrap();
    let base = exact_spectrum(&PotentialSpec::new(4.0, 0.1, 0.0, 0).unwrap(), &grid, 2, true).unwrap();
    let tilted = exact_spectrum(&PotentialSpec::new(4.0, 0.1, 0.5, 0).unwrap(), &grid, 2, true).unwrap();
    let barrier = exact_spectrum(&PotentialSpec::new(4.0, 0.1, 0.0, 1).unwrap(), &grid, 2, true).unwrap();
    for k in 0..2 {
        assert!(tilted.eigenvalues[k] > base.eigenvalues[k]);
        assert!(barrier.eigenvalues[k] > base.eigenvalues[k]);
    }
}

#[test]
fn expansion_tracks_the_exact_ground_state() {
    // (E − 3)/√λ against √λ is a line whose intercept is the coefficient
    let grid = RadialGrid::new(10.0, 200_000).unwrap();
    let lambdas = [1e-6, 1e-5, 1e-4];
    let ys: Vec<f64> = lambdas
        .iter()
        .map(|&l| (exact_level(1, 4.0, l, &grid).unwrap() - 3.0) / l.sqrt())
        .collect();
    let xs: Vec<f64> = lambdas.iter().map(|l: &f64| l.sqrt()).collect();
    let fit = fit_line(&xs, &ys).unwrap();
    let want = 4.0 / PI.sqrt();
    assert!(
        ((fit.intercept - want) / want).abs() < 0.02,
        "intercept {}",
        fit.intercept
    );
}

#[test]
fn remainder_is_first_order_in_lambda() {
    let grid = RadialGrid::new(10.0, 200_000).unwrap();
    let fit = remainder_order(1, 4.0, &[1e-6, 1e-5, 1e-4, 1e-3], &grid).unwrap();
    assert!(fit.fit.slope >= 0.9, "slope {}", fit.fit.slope);
    // the exact level lies below the first-order expansion
    assert!(fit.points.iter().all(|p| p.difference() < 0.0));
}

#[test]
fn excited_state_expansion() {
    let grid = RadialGrid::new(10.0, 200_000).unwrap();
    let lambda = 1e-6;
    let exact = exact_level(3, 4.0, lambda, &grid).unwrap();
    let expansion = energy_expansion(3, 4.0, lambda).unwrap();
    assert_eq!(expansion.e0, 7.0);
    assert!((exact - expansion.value).abs() < 1e-2 * expansion.coefficient * lambda.sqrt());
}

#[test]
fn full_line_normalization_misses_the_exact_shift() {
    let grid = RadialGrid::new(10.0, 200_000).unwrap();
    let lambda = 1e-6;
    let exact = exact_level(1, 4.0, lambda, &grid).unwrap();
    let half = energy_expansion_normalized(1, 4.0, lambda, Normalization::HalfLine).unwrap();
    let full = energy_expansion_normalized(1, 4.0, lambda, Normalization::FullLine).unwrap();
    assert!((exact - half.value).abs() < (exact - full.value).abs() / 100.0);
}

#[test]
fn weight_matches_the_exponential_for_alpha_four() {
    for lambda in [0.01, 0.3, 1.0, 2.5] {
        for k in 0..20 {
            let x = 0.2 + 0.5 * k as f64;
            let want = (-(lambda as f64).sqrt() / x).exp();
            let got = w_alpha(4.0, lambda, x).unwrap();
            assert!(((got - want) / want).abs() < 1e-10, "lambda={lambda} x={x}");
        }
    }
}

#[test]
fn weight_limits() {
    for alpha in [4.0, 5.0, 6.0, 8.0] {
        for lambda in [1e-3, 0.1, 1.0] {
            assert!((w_alpha(alpha, lambda, 1e3).unwrap() - 1.0).abs() < 1e-3);
        }
    }
    // the first x where the exponent drops below −700 gives an exact zero
    let edge = (1.0f64 / 700.0) * 0.999;
    assert_eq!(w_alpha(4.0, 1.0, edge).unwrap(), 0.0);
}

#[test]
fn ode_and_identity_residuals_on_grids() {
    for alpha in [4.0, 5.0, 6.0] {
        for k in 0..=40 {
            let x = 0.2 + 9.8 * k as f64 / 40.0;
            let r = w_ode_residual(alpha, 1.0, x).unwrap();
            assert!(r.within(1e-5), "alpha={alpha} x={x} {r:?}");
        }
    }
    for i in [1, 3] {
        for alpha in [4.0, 6.0] {
            for k in 0..=30 {
                let x = 0.3 + 5.7 * k as f64 / 30.0;
                let r = operator_identity_residual(i, alpha, 0.1, x).unwrap();
                assert!(r.relative() <= 1e-5, "i={i} alpha={alpha} x={x} {r:?}");
            }
        }
    }
}

#[test]
fn coefficient_is_finite_and_positive_in_alpha() {
    for k in 0..=40 {
        let alpha = 4.0 + 4.0 * k as f64 / 40.0;
        let r = energy_expansion(1, alpha, 0.01).unwrap();
        assert!(r.coefficient.is_finite() && r.coefficient > 0.0);
        assert!(r.exponent > 0.0 && r.exponent <= 0.5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn eigenvalues_increase_with_coupling(l1 in 0.0f64..0.5, dl in 1e-3f64..0.5) {
        let grid = RadialGrid::new(10.0, 800).unwrap();
        let a = exact_spectrum(&PotentialSpec::spiked(4.0, l1).unwrap(), &grid, 3, false).unwrap();
        let b = exact_spectrum(&PotentialSpec::spiked(4.0, l1 + dl).unwrap(), &grid, 3, false).unwrap();
        for k in 0..3 {
            prop_assert!(b.eigenvalues[k] > a.eigenvalues[k]);
        }
        prop_assert!(a.eigenvalues.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn potential_is_pointwise_monotone_in_lambda(x in 0.01f64..10.0, l in 0.0f64..2.0, kappa in 0.0f64..1.0) {
        let lo = PotentialSpec::new(5.0, l, kappa, 0).unwrap().eval(x).unwrap();
        let hi = PotentialSpec::new(5.0, l + 0.1, kappa, 0).unwrap().eval(x).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn ode_residual_small_for_any_coupling(alpha in 4.0f64..8.0, lambda in 0.01f64..2.0, x in 0.2f64..10.0) {
        let r = w_ode_residual(alpha, lambda, x).unwrap();
        prop_assert!(r.within(1e-5), "{:?}", r);
    }
}
