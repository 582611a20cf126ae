use num_complex::Complex64;

use semigroup_lab::criteria::{Verdict, T_GRID};
use semigroup_lab::means::{Resolution, SpaceSpec, Tolerances};
use semigroup_lab::operators::{
    apply_w_g, apply_w_gamma, apply_weighted_composition, continuity_profile, maximal_subspace_member, multiplier,
    volterra, Symbol,
};
use semigroup_lab::semiflow::Generator;
use semigroup_lab::series::{ClosedForm, PowerSeries};

const TOL: f64 = 1e-10;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn one() -> PowerSeries {
    PowerSeries::constant(c(1.0), 0.99).unwrap()
}

#[test]
fn dilation_scales_monomials() {
    let gen = Generator::dilation();
    for n in [0usize, 1, 3, 7] {
        let f = PowerSeries::monomial(n, 0.99).unwrap();
        for t in [0.1, 0.5] {
            let tf = apply_weighted_composition(&gen, t, &f, TOL).unwrap();
            let want = (-(n as f64 + 1.0) * t).exp();
            for k in 0..=tf.degree().min(16) {
                let expect = if k == n { want } else { 0.0 };
                assert!((tf.coeff(k) - c(expect)).norm() < 1e-9, "n={n} t={t} k={k}: {}", tf.coeff(k));
            }
        }
    }
}

#[test]
fn boundary_model_maps_one_to_constant() {
    let gen = Generator::boundary_model();
    for t in [0.1, 0.5, 1.0] {
        let tf = apply_weighted_composition(&gen, t, &one(), TOL).unwrap();
        for z in [c(0.0), c(0.5), Complex64::new(-0.3, 0.6)] {
            let v = tf.evaluate(z).unwrap();
            assert!((v - c((-t as f64).exp())).norm() < 1e-8, "t={t} z={z}: {v}");
        }
    }
}

#[test]
fn volterra_and_multiplier() {
    let v = volterra(&one());
    assert_eq!(v.coeff(0), c(0.0));
    assert_eq!(v.coeff(1), c(1.0));
    let g = Symbol::Closed(ClosedForm::power_of_one_minus_z(-1.0));
    let m = multiplier(&g, &v).unwrap();
    assert!((m.coeff(0)).norm() < 1e-15);
    for k in 1..=20 {
        assert!((m.coeff(k) - c(1.0)).norm() < 1e-14, "k={k}");
    }
}

#[test]
fn w_g_of_one_is_z_over_one_minus_z() {
    let g = Symbol::Closed(ClosedForm::power_of_one_minus_z(-1.0));
    let w = apply_w_g(&g, &one()).unwrap();
    assert!(w.coeff(0).norm() < 1e-15);
    for k in 1..=w.degree().min(100) {
        assert!((w.coeff(k) - c(1.0)).norm() < 1e-13, "k={k}: {}", w.coeff(k));
    }
}

#[test]
fn w_gamma_of_one_for_boundary_model() {
    let w = apply_w_gamma(&Generator::boundary_model(), &one()).unwrap();
    assert!(w.coeff(0).norm() < 1e-14);
    for k in 1..=100 {
        assert!((w.coeff(k) - c(1.0)).norm() < 1e-12, "k={k}: {}", w.coeff(k));
    }
}

#[test]
fn dilation_profile_on_mixed_norm_space() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let f = ClosedForm::power_of_one_minus_z(-0.5)
        .expand(res.degree, res.r_max)
        .unwrap()
        .multiply(&PowerSeries::monomial(1, res.r_max).unwrap())
        .truncate(res.degree);
    let x = SpaceSpec::mixed(2.0, 2.0, 1.0);
    let cp = continuity_profile(&Generator::dilation(), &f, &x, &T_GRID, &res, &tol).unwrap();
    assert!(cp.strictly_decreasing(), "{:?}", cp.norms);
    assert!(cp.norms.iter().all(|n| *n >= 0.0));
    assert!(cp.extrapolated_limit.abs() <= tol.band, "{}", cp.extrapolated_limit);
}

#[test]
fn big_space_witness_has_positive_floor() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let f = ClosedForm::power_of_one_minus_z(-1.5).expand(res.degree, res.r_max).unwrap();
    let x = SpaceSpec::mixed(2.0, f64::INFINITY, 1.0);
    let cp = continuity_profile(&Generator::dilation(), &f, &x, &T_GRID, &res, &tol).unwrap();
    assert!(cp.min_lower_bound() > 0.3, "{:?}", cp.lower_bounds);
}

#[test]
fn maximal_subspace_core_examples() {
    let (res, tol) = (Resolution::default(), Tolerances::default());
    let x = SpaceSpec::mixed(2.0, f64::INFINITY, 1.0);
    let f = ClosedForm::power_of_one_minus_z(-1.5).expand(res.degree, res.r_max).unwrap();
    let v = maximal_subspace_member(&Generator::boundary_model(), &f, &x, &res, &tol).unwrap();
    assert_eq!(v.verdict, Verdict::Holds, "{}", v.summary);
    let v = maximal_subspace_member(&Generator::dilation(), &f, &x, &res, &tol).unwrap();
    assert_eq!(v.verdict, Verdict::Fails, "{}", v.summary);
}
