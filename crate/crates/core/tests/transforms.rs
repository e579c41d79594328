use proptest::prelude::*;
use spiked_core::fit::fit_power_law;
use spiked_core::transforms::*;

fn base() -> TransformSpec {
    TransformSpec::new(1.0, 2.0, 3.0, 4.0, 1.0).unwrap()
}

#[test]
fn remainder_is_fourth_order_in_epsilon() {
    let eps: Vec<f64> = (0..=8).map(|k| 10f64.powf(-3.0 + 2.0 * k as f64 / 8.0)).collect();
    let rem: Vec<f64> = eps
        .iter()
        .map(|&e| f_expansion_remainder(&base().with_epsilon(e).unwrap(), 2.0).unwrap())
        .collect();
    let fit = fit_power_law(&eps, &rem).unwrap();
    assert!((fit.slope - 4.0).abs() <= 0.2, "order {}", fit.slope);
    for e in [1e-3, 0.05, 0.5, 1.0] {
        assert_eq!(
            f_expansion_remainder(&base().with_epsilon(e).unwrap(), 1.0).unwrap(),
            0.0
        );
    }
}

#[test]
fn unit_epsilon_returns_the_original_equation() {
    let s = base();
    for r in [0.3, 1.0, 2.5, 7.0] {
        let c = transformed_coefficients(&s, r).unwrap();
        assert_eq!(c.first_order, 0.0);
        let want = 1.0 - 3.0 / (r * r) - 2.0 * r.powf(-4.0);
        assert!((c.zeroth_order - want).abs() <= 1e-14 * want.abs().max(1.0));
    }
}

#[test]
fn fuchsian_limit_is_approached_linearly() {
    let rho = 3.0;
    let gap = |e: f64| {
        let s = base().with_epsilon(e).unwrap();
        let c = transformed_coefficients(&s, rho).unwrap().zeroth_order;
        let f = fuchsian_limit_coefficients(&s, rho).unwrap().zeroth_order;
        let g = first_correction_coefficients(&s, rho).unwrap().zeroth_order;
        ((c - f).abs() / (e * e), (c - g).abs() / (e * e))
    };
    let (a1, b1) = gap(1e-2);
    let (a2, b2) = gap(1e-3);
    assert!((a1 / a2 - 10.0).abs() < 0.5);
    assert!((b1 / b2 - 100.0).abs() < 5.0);
}

#[test]
fn change_of_variables_maps_solutions_to_solutions() {
    // ψ(r) = φ(r^(1/ε)) with ψ = sin(r) + r²: the transformed operator at ρ
    // equals ε²ρ^(2ε−2) times the original operator at r
    let psi = |r: f64| [r.sin() + r * r, r.cos() + 2.0 * r, -r.sin() + 2.0];
    for eps in [0.2, 0.5, 0.9] {
        let s = base().with_epsilon(eps).unwrap();
        for rho in [0.4f64, 1.3, 2.2] {
            let r = rho.powf(eps);
            let p = psi(r);
            // chain rule: dr/dρ = ε r/ρ, d²r/dρ² = ε(ε−1) r/ρ²
            let dr = eps * r / rho;
            let ddr = eps * (eps - 1.0) * r / (rho * rho);
            let phi = [p[0], p[1] * dr, p[2] * dr * dr + p[1] * ddr];
            let lhs = transformed_operator(&s, rho, phi).unwrap();
            let rhs = eps * eps * rho.powf(2.0 * eps - 2.0) * original_operator(&s, r, p).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0), "eps={eps} rho={rho}");
        }
    }
}

#[test]
fn branch_square_is_the_singular_term() {
    for (a, p) in [(1.0, 4.0), (4.0, 6.0), (0.3, 2.5), (2.0, 1.0)] {
        for branch in [Branch::Plus, Branch::Minus] {
            let f = FactorizationSpec::new(1.0, 3.0, 0, a, p).unwrap().with_branch(branch);
            for k in 0..20 {
                let r = 0.2 + 0.4 * k as f64;
                let d = f.b_derivative(r);
                assert!((d * d - f.singular(r)).abs() <= 1e-12 * f.singular(r));
            }
        }
    }
}

#[test]
fn marched_amplitude_solves_its_equation() {
    let f = FactorizationSpec::new(1.0, 3.0, 0, 1.0, 4.0).unwrap();
    let amp = march_amplitude(&f, 0.5, 6.0, 5500, 1.0, 0.0).unwrap();
    for k in 1..10 {
        let r = 0.5 + 5.5 * k as f64 / 10.0;
        let res = factorization_residual(&f, &amp, r).unwrap();
        assert!(res.amplitude.relative() < 1e-4, "r={r} {:?}", res.amplitude);
        assert!(res.radial.relative() < 1e-4, "r={r} {:?}", res.radial);
    }
}

#[test]
fn validation() {
    assert!(march_amplitude(
        &FactorizationSpec::new(1.0, 3.0, 0, 1.0, 4.0).unwrap(),
        1.0,
        0.5,
        100,
        1.0,
        0.0
    )
    .is_err());
    assert!(SampledFunction::new(0.0, 0.1, vec![1.0; 4]).is_err());
    assert!(f_epsilon(&base(), 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorized_and_radial_residuals_agree(
        c in prop::array::uniform4(-1.0f64..1.0),
        w in 0.3f64..2.0,
        a in 0.1f64..3.0,
        p in prop::sample::select(vec![3.0, 4.0, 6.0]),
        l in 0u32..3,
        branch in prop::sample::select(vec![Branch::Plus, Branch::Minus]),
        r in 0.8f64..4.0,
    ) {
        let f = FactorizationSpec::new(1.0, 2.5, l, a, p).unwrap().with_branch(branch);
        let amp = |x: f64| 1.5 + c[0] * (w * x).sin() + c[1] * (0.7 * w * x).cos() + c[2] * x + c[3] * x * x / 10.0;
        let sampled = SampledFunction::from_fn(0.5, 4.5, 4001, amp).unwrap();
        let res = factorization_residual(&f, &sampled, r).unwrap();
        prop_assert!(res.equivalence_defect() < 1e-5, "{:?}", res);
    }
}
