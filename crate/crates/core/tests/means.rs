use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semigroup_lab::means::{
    self, associated_weight, integral_mean, limit_profile, Exponent, GrowthClass, NormStatus, Resolution, SpaceSpec,
    Tolerances, Weight,
};
use semigroup_lab::series::{ClosedForm, PowerSeries};

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> PowerSeries {
    let n = rng.random_range(0..=max_degree);
    let coeffs = (0..=n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    PowerSeries::polynomial(coeffs, 0.99).unwrap()
}

#[test]
fn parseval_for_random_polynomials() {
    let res = Resolution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let f = random_poly(&mut rng, 64);
        for r in [0.1, 0.5, 0.9] {
            let m = integral_mean(&f, Exponent(2.0), r, &res).unwrap().value;
            let exact: f64 = f
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, a)| a.norm_sqr() * r.powi(2 * k as i32))
                .sum::<f64>()
                .sqrt();
            assert!((m - exact).abs() <= 1e-12 * exact.max(1.0), "r={r}: {m} vs {exact}");
        }
    }
}

#[test]
fn mixed_norm_of_one_is_one() {
    let one = PowerSeries::constant(Complex64::new(1.0, 0.0), 0.99).unwrap();
    let nv = means::norm(&one, &SpaceSpec::mixed(2.0, 2.0, 1.0), &Resolution::default(), &Tolerances::default())
        .unwrap();
    assert!((nv.value - 1.0).abs() < 1e-10, "{}", nv.value);
}

#[test]
fn mixed_norm_of_geometric_matches_radial_oracle() {
    // M_2(r, 1/(1-z))^2 = 1/(1-r^2), so ||f||^2 = 2 ∫ (1-r)/(1-r^2) dr = 2 log 2
    let f = ClosedForm::power_of_one_minus_z(-1.0).expand(1024, 0.99).unwrap();
    let nv = means::norm(&f, &SpaceSpec::mixed(2.0, 2.0, 1.0), &Resolution::default(), &Tolerances::default())
        .unwrap();
    let exact = (2.0 * std::f64::consts::LN_2).sqrt();
    assert!(nv.is_finite());
    assert!((nv.value - exact).abs() <= 1e-4 * exact, "{} vs {exact}", nv.value);
    assert!(nv.abs_error >= 0.0);
}

#[test]
fn extremal_function_has_positive_limit() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let x = SpaceSpec::mixed(2.0, f64::INFINITY, 1.0);
    let f = ClosedForm::power_of_one_minus_z(-1.5).expand(res.degree, res.r_max).unwrap();
    let nv = means::norm(&f, &x, &res, &tol).unwrap();
    assert!(nv.is_finite());
    let prof = limit_profile(&f, &x, &res, &tol).unwrap();
    // |a_k|^2 ~ k / Γ(3/2)^2, so (1-r) M_2(r, f) -> 1/(2Γ(3/2)) = 1/sqrt(π)
    let oracle = 1.0 / std::f64::consts::PI.sqrt();
    match prof.fit.class {
        GrowthClass::Converges { limit } => assert!((limit - oracle).abs() < 0.01 * oracle, "{limit}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn subcritical_function_is_little_oh() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let x = SpaceSpec::mixed(2.0, f64::INFINITY, 1.0);
    let f = ClosedForm::power_of_one_minus_z(-1.3).expand(res.degree, res.r_max).unwrap();
    let prof = limit_profile(&f, &x, &res, &tol).unwrap();
    assert_eq!(prof.fit.class, GrowthClass::Vanishing);
}

#[test]
fn weighted_banach_examples() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let x = SpaceSpec::WeightedBanach { weight: Weight::standard(1.0) };
    let f = ClosedForm::power_of_one_minus_z(-1.0).expand(res.degree, res.r_max).unwrap();
    let nv = means::norm(&f, &x, &res, &tol).unwrap();
    assert!((nv.value - 2.0).abs() < 1e-3, "{}", nv.value);
    let g = ClosedForm::power_of_one_minus_z(-1.5).expand(res.degree, res.r_max).unwrap();
    let nv = means::norm(&g, &x, &res, &tol).unwrap();
    assert_eq!(nv.status, NormStatus::Divergent);
    assert!(nv.value.is_infinite());
}

#[test]
fn bergman_matches_mixed_norm() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let f = random_poly(&mut rng, 32);
        let (p, alpha) = (rng.random_range(1.0..4.0), rng.random_range(-0.5..2.0));
        let a = means::norm(&f, &SpaceSpec::Bergman { p: Exponent(p), alpha }, &res, &tol).unwrap();
        let b = means::norm(&f, &SpaceSpec::mixed(p, p, (alpha + 1.0) / p), &res, &tol).unwrap();
        assert_eq!(a.value, b.value);
    }
}

#[test]
fn associated_weight_is_comparable_to_standard_weight() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let v = Weight::standard(1.0);
    let radii: Vec<f64> = (0..=19).map(|j| 0.05 * j as f64).collect();
    let w = associated_weight(&v, &radii, 2000, &res, &tol).unwrap();
    for (r, wv) in radii.iter().zip(&w.values) {
        let ratio = wv / v.eval(*r);
        assert!((0.25..=4.0).contains(&ratio), "r={r}: ratio {ratio}");
    }
}

#[test]
fn typical_weights() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    assert!(means::is_typical(&Weight::standard(1.0), &res, &tol));
    assert!(means::is_typical(&Weight::LogPower { gamma: 1.0, kappa: 1.0 }, &res, &tol));
}
