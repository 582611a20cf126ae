//! Semigroups of analytic self-maps of the disk from generator data.
//!
//! A generator is `G(z) = (b̄z − 1)(z − b)P(z)` with Denjoy–Wolff point `b`
//! and `Re P ≥ 0`. The flow `∂φ_t/∂t = G(φ_t)` is integrated numerically;
//! `φ_t′ = G(φ_t)/G` away from zeros of `G`.

mod ode;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use ode::{integrate, Trajectory, ESCAPE_MARGIN, MAX_STEP};

use crate::series::{fft, ClosedForm, PowerSeries};
use crate::{LabError, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Below this `|G(z)|` the derivative of the flow uses divided differences.
pub const G_FLOOR: f64 = 1e-8;
/// Sampled Herglotz condition: `Re P ≥ −HERGLOTZ_SLACK`.
pub const HERGLOTZ_SLACK: f64 = 1e-9;

/// An analytic function given in closed form or as a series.
#[derive(Debug, Clone, PartialEq)]
pub enum Analytic {
    Closed(ClosedForm),
    Series(PowerSeries),
}

impl Analytic {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Analytic::Closed(c) => c.eval(z),
            Analytic::Series(s) => s.eval_unchecked(z),
        }
    }

    /// Radius up to which `eval` is trustworthy.
    pub fn reach(&self) -> f64 {
        match self {
            Analytic::Closed(_) => 1.0,
            Analytic::Series(s) => s.r_max(),
        }
    }

    pub fn expand(&self, n: usize, r_max: f64) -> Result<PowerSeries> {
        match self {
            Analytic::Closed(c) => c.expand(n, r_max),
            Analytic::Series(s) => {
                let t = if r_max < s.r_max() { s.clone().restrict(r_max)? } else { s.clone() };
                Ok(t.truncate(n))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Analytic::Closed(ClosedForm::Constant { value }) => *value == ZERO,
            Analytic::Closed(ClosedForm::Polynomial { coeffs }) => coeffs.iter().all(|c| *c == ZERO),
            Analytic::Closed(ClosedForm::Binomial { scale, .. })
            | Analytic::Closed(ClosedForm::Logarithm { scale, .. }) => *scale == ZERO,
            Analytic::Closed(_) => false,
            Analytic::Series(s) => s.is_zero(),
        }
    }

    /// `f(u z)`.
    pub fn rotate(&self, u: Complex64) -> Self {
        match self {
            Analytic::Closed(c) => Analytic::Closed(c.rotate(u)),
            Analytic::Series(s) => Analytic::Series(s.rotate(u)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Analytic::Closed(c) => c.label(),
            Analytic::Series(s) => format!("series[N={}]", s.degree()),
        }
    }
}

impl From<ClosedForm> for Analytic {
    fn from(c: ClosedForm) -> Self {
        Analytic::Closed(c)
    }
}

impl From<PowerSeries> for Analytic {
    fn from(s: PowerSeries) -> Self {
        Analytic::Series(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DwMode {
    Interior,
    Boundary,
}

/// Denjoy–Wolff point and Herglotz datum, with `G` assembled as `poly · factor`.
#[derive(Debug, Clone)]
pub struct Generator {
    b: Complex64,
    p: Analytic,
    mode: DwMode,
    trivial: bool,
    poly: Vec<Complex64>,
    factor: Analytic,
}

fn poly_eval(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(ZERO, |s, a| s * z + a)
}

impl Generator {
    /// Validates `|b| ≤ 1` and the sampled Herglotz condition, then assembles `G`.
    pub fn new(b: Complex64, p: impl Into<Analytic>) -> Result<Self> {
        let p = p.into();
        if let Analytic::Closed(c) = &p {
            c.validate()?;
        }
        let nb = b.norm();
        if !(nb <= 1.0 + 1e-12) {
            return Err(LabError::InvalidGenerator(format!("|b| = {nb} > 1")));
        }
        let mode = if (nb - 1.0).abs() <= 1e-12 { DwMode::Boundary } else { DwMode::Interior };
        let b = if mode == DwMode::Boundary { b / nb } else { b };
        let trivial = p.is_zero();
        if !trivial {
            herglotz_check(&p)?;
        }
        let (poly, factor) = assemble(b, &p, mode);
        Ok(Self { b, p, mode, trivial, poly, factor })
    }

    /// Dilation semigroup: `b = 0`, `P ≡ 1`, `G(z) = −z`.
    pub fn dilation() -> Self {
        Self::new(ZERO, ClosedForm::constant(1.0)).expect("valid generator")
    }

    /// `b = 1`, `P = 1/(1 − z)`, `G(z) = 1 − z`.
    pub fn boundary_model() -> Self {
        Self::new(ONE, ClosedForm::binomial_pole(1.0).unwrap()).expect("valid generator")
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn p(&self) -> &Analytic {
        &self.p
    }

    pub fn mode(&self) -> DwMode {
        self.mode
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn g(&self, z: Complex64) -> Complex64 {
        if self.trivial {
            return ZERO;
        }
        poly_eval(&self.poly, z) * self.factor.eval(z)
    }

    /// `G′(b) = (|b|² − 1) P(b)` for an interior point.
    pub fn eigenvalue(&self) -> Option<Complex64> {
        match self.mode {
            DwMode::Interior => Some((self.b.norm_sqr() - 1.0) * self.p.eval(self.b)),
            DwMode::Boundary => None,
        }
    }

    /// Symbolic form of `G` when available.
    pub fn g_closed(&self) -> Option<ClosedForm> {
        if self.trivial {
            return Some(ClosedForm::constant(0.0));
        }
        match (&self.factor, self.poly.as_slice()) {
            (Analytic::Closed(c), [one]) if *one == ONE => Some(c.clone()),
            _ => None,
        }
    }

    /// `G` as a truncated series on `|z| ≤ r_max`.
    pub fn g_series(&self, n: usize, r_max: f64) -> Result<PowerSeries> {
        if self.trivial {
            return PowerSeries::zero(r_max);
        }
        let poly = PowerSeries::polynomial(self.poly.clone(), r_max)?;
        let f = self.factor.expand(n, r_max)?;
        Ok(poly.multiply(&f))
    }

    /// Modulus at which trajectories count as escaped.
    fn escape_limit(&self) -> f64 {
        (1.0 - ESCAPE_MARGIN).min(self.factor.reach())
    }

    pub fn label(&self) -> String {
        format!("b={}, P={}", fmt_c(self.b), self.p.label())
    }
}

fn fmt_c(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("{}{:+}i", c.re, c.im)
    }
}

fn herglotz_check(p: &Analytic) -> Result<()> {
    let top = p.reach().min(0.999);
    let radii: Vec<f64> = (0..=32).map(|j| top * j as f64 / 32.0).collect();
    let m = 128;
    for r in radii {
        let vals: Vec<Complex64> = match p {
            Analytic::Series(s) => fft::circle_values(s.coeffs(), r, m, 0.0),
            Analytic::Closed(c) => fft::circle_nodes(r, m, 0.0).into_iter().map(|z| c.eval(z)).collect(),
        };
        if let Some(v) = vals.iter().find(|v| !(v.re >= -HERGLOTZ_SLACK)) {
            return Err(LabError::InvalidGenerator(format!(
                "Re P = {} < 0 on |z| = {r}",
                v.re
            )));
        }
    }
    Ok(())
}

/// Splits `G` into an exact polynomial times an analytic factor, simplifying
/// the pole of a boundary datum `P = c(1 − b̄z)^e` against `(1 − b̄z)²`.
fn assemble(b: Complex64, p: &Analytic, mode: DwMode) -> (Vec<Complex64>, Analytic) {
    let bb = b.conj();
    if mode == DwMode::Boundary {
        if let Analytic::Closed(c) = p {
            match c {
                ClosedForm::Binomial { scale, omega, exponent } if (omega - bb).norm() < 1e-14 => {
                    return (
                        vec![ONE],
                        Analytic::Closed(ClosedForm::Binomial {
                            scale: b * scale,
                            omega: bb,
                            exponent: exponent + 2.0,
                        }),
                    );
                }
                ClosedForm::Constant { value } => {
                    return (
                        vec![ONE],
                        Analytic::Closed(ClosedForm::Binomial { scale: b * value, omega: bb, exponent: 2.0 }),
                    );
                }
                _ => {}
            }
        }
    }
    if b == ZERO {
        return (vec![ZERO, -ONE], p.clone());
    }
    (vec![b, -(1.0 + b.norm_sqr()) * ONE, bb], p.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMethod {
    Algebraic,
    DividedDifference,
}

/// `(φ_t(z), φ_t′(z))` on a grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowSample {
    pub t: f64,
    pub z: Vec<Complex64>,
    pub phi: Vec<Complex64>,
    pub dphi: Vec<Complex64>,
    pub method: Vec<DerivativeMethod>,
    pub ode_error: f64,
}

/// Step used by the divided-difference fallback for `φ_t′`.
const DD_STEP: f64 = 1e-3;

fn flow_point(gen: &Generator, t: f64, z: Complex64, tol: f64) -> Result<Trajectory> {
    if gen.trivial {
        return Ok(Trajectory { end: z, error: 0.0, steps: 0 });
    }
    let f = |w: Complex64| gen.g(w);
    integrate(&f, z, t, tol, gen.escape_limit())
}

/// Five-point divided difference of `φ_t` at `z` along the real direction.
pub fn dphi_divided_difference(gen: &Generator, t: f64, z: Complex64) -> Result<Complex64> {
    let h = DD_STEP;
    let at = |d: f64| flow_point(gen, t, z + d, 1e-13).map(|tr| tr.end);
    Ok((-at(2.0 * h)? + at(h)? * 8.0 - at(-h)? * 8.0 + at(-2.0 * h)?) / (12.0 * h))
}

/// Integrates the flow at time `t` from every grid point.
pub fn flow(gen: &Generator, t: f64, z_grid: &[Complex64], tol: f64) -> Result<FlowSample> {
    let pts: Vec<Result<(Complex64, Complex64, DerivativeMethod, f64)>> = z_grid
        .par_iter()
        .map(|z| {
            let tr = flow_point(gen, t, *z, tol)?;
            if t == 0.0 || gen.trivial {
                return Ok((tr.end, ONE, DerivativeMethod::Algebraic, 0.0));
            }
            let gz = gen.g(*z);
            if gz.norm() > G_FLOOR {
                Ok((tr.end, gen.g(tr.end) / gz, DerivativeMethod::Algebraic, tr.error))
            } else {
                let d = dphi_divided_difference(gen, t, *z)?;
                Ok((tr.end, d, DerivativeMethod::DividedDifference, tr.error))
            }
        })
        .collect();
    let mut sample = FlowSample {
        t,
        z: z_grid.to_vec(),
        phi: Vec::with_capacity(z_grid.len()),
        dphi: Vec::with_capacity(z_grid.len()),
        method: Vec::with_capacity(z_grid.len()),
        ode_error: 0.0,
    };
    for p in pts {
        let (phi, dphi, m, e) = p?;
        sample.phi.push(phi);
        sample.dphi.push(dphi);
        sample.method.push(m);
        sample.ode_error = sample.ode_error.max(e);
    }
    Ok(sample)
}

/// `max |φ_{t+s}(z) − φ_t(φ_s(z))|` over the grid.
pub fn semigroup_residual(gen: &Generator, t: f64, s: f64, z_grid: &[Complex64], tol: f64) -> Result<f64> {
    let fs = flow(gen, s, z_grid, tol)?;
    let fts = flow(gen, t, &fs.phi, tol)?;
    let fsum = flow(gen, t + s, z_grid, tol)?;
    Ok(fsum
        .phi
        .iter()
        .zip(&fts.phi)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

/// Koenigs function of a semigroup.
#[derive(Debug, Clone)]
pub struct KoenigsFunction {
    pub h: PowerSeries,
    pub mode: DwMode,
    /// `G′(b)` in interior mode.
    pub eigenvalue: Option<Complex64>,
}

/// Estimated remainder of a series from the size of its last coefficients.
fn coefficient_tail(c: &[Complex64], r: f64) -> f64 {
    let n = c.len();
    let k0 = n.saturating_sub(8);
    let last = (k0..n).map(|k| c[k].norm() * r.powi(k as i32)).fold(0.0, f64::max);
    last * r / (1.0 - r)
}

/// Solves `(n−1)λ hₙ = −Σ_{j<n} j hⱼ g_{n+1−j}` with `h₀ = 0`, `h₁ = 1`.
fn interior_recurrence(g: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    let lambda = g.get(1).copied().unwrap_or(ZERO);
    if lambda.norm() < 1e-14 {
        return Err(LabError::KoenigsSingularity("G′(b) = 0".into()));
    }
    let gc = |k: usize| g.get(k).copied().unwrap_or(ZERO);
    let mut h = vec![ZERO; n + 1];
    if n >= 1 {
        h[1] = ONE;
    }
    for m in 2..=n {
        let mut s = ZERO;
        for j in 1..m {
            s += h[j] * j as f64 * gc(m + 1 - j);
        }
        h[m] = -s / (lambda * (m - 1) as f64);
    }
    Ok(h)
}

/// Koenigs function of degree `n`, valid on `|z| ≤ r_h`.
///
/// Interior: `h′G = G′(b) h`, `h(b) = 0`, `h′(b) = 1`.
/// Boundary: `h′G = 1`, `h(0) = 0`.
pub fn koenigs(gen: &Generator, n: usize, r_h: f64) -> Result<KoenigsFunction> {
    if gen.trivial {
        return Err(LabError::TrivialSemigroup);
    }
    match gen.mode {
        DwMode::Interior => koenigs_interior(gen, n, r_h),
        DwMode::Boundary => koenigs_boundary(gen, n, r_h),
    }
}

fn koenigs_interior(gen: &Generator, n: usize, r_h: f64) -> Result<KoenigsFunction> {
    let b = gen.b;
    let lambda = gen.eigenvalue().unwrap();
    if b == ZERO {
        let g = gen.g_series(n, r_h)?;
        let h = interior_recurrence(g.coeffs(), n)?;
        let tail = coefficient_tail(&h, r_h);
        return Ok(KoenigsFunction {
            h: PowerSeries::new(h, tail, r_h)?,
            mode: DwMode::Interior,
            eigenvalue: Some(lambda),
        });
    }
    // Conjugate by τ(z) = (z − b)/(1 − b̄z), so the fixed point sits at 0.
    let bb = b.conj();
    let sigma = |w: Complex64| (w + b) / (ONE + bb * w);
    let dsigma = |w: Complex64| (1.0 - b.norm_sqr()) / (ONE + bb * w).powi(2);
    let gt = PowerSeries::from_circle_samples(
        |ws| Ok(ws.iter().map(|w| gen.g(sigma(*w)) / dsigma(*w)).collect()),
        r_h,
        n,
    )?;
    let ht = interior_recurrence(gt.coeffs(), n)?;
    let ht = PowerSeries::new(ht.clone(), coefficient_tail(&ht, r_h), r_h)?;
    let nb = b.norm();
    let r_out = (r_h - nb) / (1.0 - nb * r_h);
    if !(r_out > 0.0) {
        return Err(LabError::KoenigsSingularity(format!(
            "Denjoy–Wolff point {b} too close to the validity circle {r_h}"
        )));
    }
    let scale = 1.0 - b.norm_sqr();
    let h = PowerSeries::from_circle_samples(
        |zs| Ok(zs.iter().map(|z| ht.eval_unchecked((z - b) / (ONE - bb * z)) * scale).collect()),
        r_out,
        n,
    )?
    .with_extra_tail(ht.tail_bound() * scale);
    Ok(KoenigsFunction { h, mode: DwMode::Interior, eigenvalue: Some(lambda) })
}

fn koenigs_boundary(gen: &Generator, n: usize, r_h: f64) -> Result<KoenigsFunction> {
    let b = gen.b;
    // After rotating b to 1: G̃(z) = (1 − z)² P(bz), h = h̃(b̄z).
    let pt = gen.p.rotate(b);
    let closed_inverse = match &pt {
        Analytic::Closed(ClosedForm::Binomial { scale, omega, exponent })
            if (omega - ONE).norm() < 1e-14 && *scale != ZERO =>
        {
            Some((scale.inv(), -(exponent + 2.0)))
        }
        Analytic::Closed(ClosedForm::Constant { value }) if *value != ZERO => Some((value.inv(), -2.0)),
        _ => None,
    };
    let ht = match closed_inverse {
        Some((c, e)) if (e + 1.0).abs() < 1e-14 => {
            ClosedForm::Logarithm { scale: c, omega: ONE }.expand(n, r_h)?
        }
        Some((c, e)) => ClosedForm::Binomial { scale: c, omega: ONE, exponent: e }
            .expand(n, r_h)?
            .antiderivative()
            .truncate(n),
        None => {
            let sq = PowerSeries::polynomial(vec![ONE, -2.0 * ONE, ONE], r_h)?;
            let gt = sq.multiply(&pt.expand(n, r_h)?);
            gt.reciprocal()
                .map_err(|e| LabError::KoenigsSingularity(format!("1/G on |z| ≤ {r_h}: {e}")))?
                .antiderivative()
                .truncate(n)
        }
    };
    Ok(KoenigsFunction { h: ht.rotate(b.conj()), mode: DwMode::Boundary, eigenvalue: None })
}

/// `max |h(φ_t(z)) − e^{G′(b)t} h(z)|` (interior) or `max |h(φ_t(z)) − h(z) − t|` (boundary).
pub fn koenigs_residual(
    gen: &Generator,
    k: &KoenigsFunction,
    t: f64,
    z_grid: &[Complex64],
    tol: f64,
) -> Result<f64> {
    let fs = flow(gen, t, z_grid, tol)?;
    let mut worst: f64 = 0.0;
    for (z, w) in z_grid.iter().zip(&fs.phi) {
        let hz = k.h.evaluate(*z)?;
        let hw = k.h.evaluate(*w)?;
        let want = match k.mode {
            DwMode::Interior => (k.eigenvalue.unwrap() * t).exp() * hz,
            DwMode::Boundary => hz + t,
        };
        worst = worst.max((hw - want).norm());
    }
    Ok(worst)
}

/// Points on concentric circles `|z| = j·r/rings`, `per_ring` angles each, plus 0.
pub fn polar_grid(r: f64, rings: usize, per_ring: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO];
    for j in 1..=rings {
        let rho = r * j as f64 / rings as f64;
        for k in 0..per_ring {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.5 * (j % 2) as f64) / per_ring as f64;
            out.push(Complex64::from_polar(rho, th));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn model_generators() {
        let d = Generator::dilation();
        let z = c64(0.3, -0.2);
        assert!((d.g(z) + z).norm() < 1e-15);
        let bm = Generator::boundary_model();
        assert!((bm.g(z) - (ONE - z)).norm() < 1e-15);
        let triv = Generator::new(ZERO, ClosedForm::constant(0.0)).unwrap();
        assert!(triv.is_trivial() && triv.g(z) == ZERO);
    }

    #[test]
    fn herglotz_violation_rejected() {
        let p = ClosedForm::Polynomial { coeffs: vec![ZERO, ONE] };
        assert!(matches!(Generator::new(ZERO, p), Err(LabError::InvalidGenerator(_))));
        assert!(Generator::new(c64(1.5, 0.0), ClosedForm::constant(1.0)).is_err());
    }

    #[test]
    fn interior_generator_vanishes_at_b() {
        let b = c64(0.3, 0.1);
        let g = Generator::new(b, ClosedForm::constant(2.0)).unwrap();
        assert!(g.g(b).norm() < 1e-15);
        let lam = g.eigenvalue().unwrap();
        let h = 1e-6;
        let fd = (g.g(b + h) - g.g(b - h)) / (2.0 * h);
        assert!((fd - lam).norm() < 1e-8);
    }

    #[test]
    fn flow_at_time_zero_is_identity() {
        let g = Generator::boundary_model();
        let zs = polar_grid(0.9, 3, 8);
        let s = flow(&g, 0.0, &zs, 1e-10).unwrap();
        assert_eq!(s.phi, zs);
        assert!(s.dphi.iter().all(|d| *d == ONE));
    }

    #[test]
    fn divided_difference_used_at_fixed_point() {
        let g = Generator::dilation();
        let s = flow(&g, 0.5, &[ZERO], 1e-10).unwrap();
        assert_eq!(s.method[0], DerivativeMethod::DividedDifference);
        assert!((s.dphi[0] - c64((-0.5f64).exp(), 0.0)).norm() < 1e-8);
    }

    #[test]
    fn interior_koenigs_for_exponential_model() {
        // P = 1/(1 − z) gives G = −z/(1 − z) and h(z) = z e^{−z}.
        let g = Generator::new(ZERO, ClosedForm::binomial_pole(1.0).unwrap()).unwrap();
        let k = koenigs(&g, 64, 0.9).unwrap();
        let z = c64(0.4, 0.3);
        assert!((k.h.evaluate(z).unwrap() - z * (-z).exp()).norm() < 1e-12);
    }
}
