use num_complex::Complex64;

use semigroup_lab::semiflow::{
    flow, koenigs, koenigs_residual, polar_grid, semigroup_residual, DwMode, Generator,
};
use semigroup_lab::series::ClosedForm;

const TOL: f64 = 1e-10;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn generator_formula() {
    let d = Generator::dilation();
    let b = Generator::boundary_model();
    for z in polar_grid(0.9, 3, 8) {
        assert!((d.g(z) + z).norm() < 1e-15);
        assert!((b.g(z) - (c(1.0) - z)).norm() < 1e-12);
    }
    assert!((d.eigenvalue().unwrap() - c(-1.0)).norm() < 1e-12);
    assert!(Generator::new(c(0.0), ClosedForm::constant(-1.0)).is_err());
    assert!(Generator::new(c(0.0), ClosedForm::constant(0.0)).unwrap().is_trivial());
}

#[test]
fn model_flows_match_closed_forms() {
    let zs = polar_grid(0.9, 6, 24);
    for t in [0.1, 0.5, 1.0, 2.0] {
        let e = (-t as f64).exp();
        let d = flow(&Generator::dilation(), t, &zs, TOL).unwrap();
        let b = flow(&Generator::boundary_model(), t, &zs, TOL).unwrap();
        for (i, z) in zs.iter().enumerate() {
            assert!((d.phi[i] - e * z).norm() <= 1e-9, "dilation t={t} z={z}");
            assert!((d.dphi[i] - c(e)).norm() <= 1e-9);
            let exact = c(1.0) + e * (z - c(1.0));
            assert!((b.phi[i] - exact).norm() <= 1e-9, "boundary t={t} z={z}");
            assert!((b.dphi[i] - c(e)).norm() <= 1e-9);
            assert!(d.phi[i].norm() < 1.0 && b.phi[i].norm() < 1.0);
        }
    }
}

#[test]
fn flow_at_time_zero_is_identity() {
    let zs = polar_grid(0.9, 3, 8);
    let fs = flow(&Generator::boundary_model(), 0.0, &zs, TOL).unwrap();
    for (z, w) in zs.iter().zip(&fs.phi) {
        assert!((z - w).norm() <= TOL);
    }
}

#[test]
fn semigroup_law_residuals() {
    let zs = polar_grid(0.9, 4, 16);
    let times = [0.1, 0.3, 0.7];
    for g in [Generator::dilation(), Generator::boundary_model()] {
        for t in times {
            for s in times {
                let r = semigroup_residual(&g, t, s, &zs, TOL).unwrap();
                assert!(r <= 1e-8, "{} t={t} s={s}: {r:e}", g.label());
            }
        }
    }
}

#[test]
fn koenigs_of_model_semigroups() {
    let n = 256;
    let k = koenigs(&Generator::dilation(), n, 0.97).unwrap();
    assert_eq!(k.mode, DwMode::Interior);
    assert!((k.h.coeff(1) - c(1.0)).norm() < 1e-12);
    assert!((1..=n).filter(|j| *j != 1).all(|j| k.h.coeff(j).norm() < 1e-12));

    let k = koenigs(&Generator::boundary_model(), n, 0.97).unwrap();
    assert_eq!(k.mode, DwMode::Boundary);
    let log = ClosedForm::logarithm().expand(n, 0.97).unwrap();
    assert!(k.h.coeff(0).norm() <= 1e-12);
    for j in 0..=n {
        assert!((k.h.coeff(j) - log.coeff(j)).norm() < 1e-12, "coefficient {j}");
    }
}

#[test]
fn koenigs_residuals() {
    let zs = polar_grid(0.8, 4, 16);
    let d = Generator::dilation();
    let kd = koenigs(&d, 256, 0.97).unwrap();
    assert!(koenigs_residual(&d, &kd, 0.5, &zs, TOL).unwrap() <= 1e-8);
    let b = Generator::boundary_model();
    let kb = koenigs(&b, 1024, 0.97).unwrap();
    for t in [0.1, 0.7, 1.0] {
        let r = koenigs_residual(&b, &kb, t, &zs, TOL).unwrap();
        assert!(r <= 1e-6, "t={t}: {r:e}");
    }
}

#[test]
fn interior_koenigs_normalization_off_origin() {
    let b = Complex64::new(0.3, 0.2);
    let g = Generator::new(b, ClosedForm::constant(1.0)).unwrap();
    assert!(g.g(b).norm() < 1e-14);
    let k = koenigs(&g, 512, 0.9).unwrap();
    assert!(k.h.evaluate(b).unwrap().norm() < 1e-8);
    assert!((k.h.derivative().evaluate(b).unwrap() - c(1.0)).norm() < 1e-8);
}
