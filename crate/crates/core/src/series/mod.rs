//! Truncated Taylor series on the unit disk.
//!
//! A [`PowerSeries`] stores the coefficients `a_0..a_N`, a validity radius
//! `r_max < 1` and a bound on the truncation error on `|z| ≤ r_max`. Every
//! operation propagates the bound, so downstream norms can surface it in
//! their error estimates.

mod closed_form;
pub mod fft;

use num_complex::Complex64;

pub use closed_form::ClosedForm;

use crate::{LabError, Result};

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 256;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative slack when testing `|z| ≤ r_max`.
const RADIUS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    tail_bound: f64,
    r_max: f64,
}

fn check_radius(r_max: f64) -> Result<()> {
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(LabError::InvalidArgument(format!(
            "validity radius must lie in (0,1), got {r_max}"
        )));
    }
    Ok(())
}

/// Number of circle nodes used for sampled checks on a degree-`n` series.
fn check_nodes(n: usize) -> usize {
    (4 * (n + 1)).max(512).next_power_of_two()
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>, tail_bound: f64, r_max: f64) -> Result<Self> {
        check_radius(r_max)?;
        if !(tail_bound.is_finite() && tail_bound >= 0.0) {
            return Err(LabError::InvalidArgument(format!(
                "tail bound must be finite and nonnegative, got {tail_bound}"
            )));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(LabError::InvalidArgument("non-finite coefficient".into()));
        }
        let coeffs = if coeffs.is_empty() { vec![ZERO] } else { coeffs };
        Ok(Self { coeffs, tail_bound, r_max })
    }

    /// An exact polynomial (zero tail).
    pub fn polynomial(coeffs: Vec<Complex64>, r_max: f64) -> Result<Self> {
        Self::new(coeffs, 0.0, r_max)
    }

    pub fn zero(r_max: f64) -> Result<Self> {
        Self::polynomial(vec![ZERO], r_max)
    }

    pub fn constant(c: Complex64, r_max: f64) -> Result<Self> {
        Self::polynomial(vec![c], r_max)
    }

    pub fn monomial(n: usize, r_max: f64) -> Result<Self> {
        let mut c = vec![ZERO; n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        Self::polynomial(c, r_max)
    }

    pub fn identity(r_max: f64) -> Result<Self> {
        Self::monomial(1, r_max)
    }

    pub(crate) fn from_parts(coeffs: Vec<Complex64>, tail_bound: f64, r_max: f64) -> Self {
        debug_assert!(tail_bound >= 0.0 && r_max > 0.0 && r_max < 1.0);
        let coeffs = if coeffs.is_empty() { vec![ZERO] } else { coeffs };
        let tail_bound = if tail_bound.is_finite() { tail_bound } else { f64::MAX };
        Self { coeffs, tail_bound, r_max }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn is_exact(&self) -> bool {
        self.tail_bound == 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.tail_bound == 0.0 && self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Same coefficients, additional error budget.
    pub fn with_extra_tail(mut self, extra: f64) -> Self {
        self.tail_bound += extra.max(0.0);
        self
    }

    /// Shrinks the validity radius. The tail bound stays valid on the smaller disk.
    pub fn restrict(mut self, r_max: f64) -> Result<Self> {
        check_radius(r_max)?;
        if r_max > self.r_max * (1.0 + RADIUS_SLACK) {
            return Err(LabError::OutOfValidity { modulus: r_max, r_max: self.r_max });
        }
        self.r_max = r_max.min(self.r_max);
        Ok(self)
    }

    fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, a| acc * z + a)
    }

    /// Horner evaluation without the validity check.
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.horner(z)
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > self.r_max * (1.0 + RADIUS_SLACK) {
            return Err(LabError::OutOfValidity { modulus: z.norm(), r_max: self.r_max });
        }
        Ok(self.horner(z))
    }

    /// Values on `m` equispaced nodes of the circle of radius `r`.
    pub fn circle_values(&self, r: f64, m: usize) -> Result<Vec<Complex64>> {
        if r > self.r_max * (1.0 + RADIUS_SLACK) {
            return Err(LabError::OutOfValidity { modulus: r, r_max: self.r_max });
        }
        Ok(fft::circle_values(&self.coeffs, r, m, 0.0))
    }

    /// `Σ_{k} |a_k| r^k`, an upper bound for `sup_{|z|=r} |f_N(z)|`.
    pub fn majorant(&self, r: f64) -> f64 {
        let mut rk = 1.0;
        let mut s = 0.0;
        for a in &self.coeffs {
            s += a.norm() * rk;
            rk *= r;
        }
        s
    }

    fn sampled_sup(&self, r: f64) -> f64 {
        let m = check_nodes(self.degree());
        let vals = fft::circle_values(&self.coeffs, r, m, 0.0);
        let node_max = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        // between-node correction from the derivative majorant
        let dmax: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| k as f64 * a.norm() * r.powi(k as i32 - 1))
            .sum();
        (node_max + dmax * std::f64::consts::PI * r / m as f64).min(self.majorant(r))
    }

    /// Estimated `sup_{|z| ≤ r_max} |f(z)|` including the tail.
    pub fn sup_estimate(&self) -> f64 {
        self.sampled_sup(self.r_max) + self.tail_bound
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_parts(
            self.coeffs.iter().map(|a| a * c).collect(),
            self.tail_bound * c.norm(),
            self.r_max,
        )
    }

    /// `f(u z)` for `|u| = 1`.
    pub fn rotate(&self, u: Complex64) -> Self {
        let mut uk = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * uk;
                uk *= u;
                v
            })
            .collect();
        Self::from_parts(coeffs, self.tail_bound, self.r_max)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k) * sign).collect();
        Self::from_parts(coeffs, self.tail_bound + other.tail_bound, self.r_max.min(other.r_max))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0)
    }

    pub fn subtract(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    /// Degree kept by a product: exact polynomials multiply out in full,
    /// otherwise the smallest degree among the inexact factors.
    fn product_degree(&self, other: &Self) -> usize {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.degree() + other.degree(),
            (true, false) => other.degree(),
            (false, true) => self.degree(),
            (false, false) => self.degree().min(other.degree()),
        }
    }

    /// Cauchy product on the intersection of the validity disks.
    pub fn multiply(&self, other: &Self) -> Self {
        let r = self.r_max.min(other.r_max);
        let keep = self.product_degree(other);
        let mut full = fft::convolve(&self.coeffs, &other.coeffs);
        let mut dropped = 0.0;
        if full.len() > keep + 1 {
            let mut rk = r.powi(keep as i32 + 1);
            for c in &full[keep + 1..] {
                dropped += c.norm() * rk;
                rk *= r;
            }
            full.truncate(keep + 1);
        }
        let floor = self.degree().max(other.degree()) + 1;
        while full.len() > floor && full.last() == Some(&ZERO) {
            full.pop();
        }
        let sup_a = if other.tail_bound > 0.0 { self.restricted_sup(r) } else { 0.0 };
        let sup_b = if self.tail_bound > 0.0 { other.restricted_sup(r) } else { 0.0 };
        let tail = dropped
            + sup_a * other.tail_bound
            + sup_b * self.tail_bound
            + self.tail_bound * other.tail_bound;
        Self::from_parts(full, tail, r)
    }

    /// [`multiply`](Self::multiply) with coefficients below their rounding
    /// bound set to zero, for products where cancellation is expected.
    pub fn multiply_clean(&self, other: &Self) -> Self {
        let mut p = self.multiply(other);
        let abs = |c: &[Complex64]| -> Vec<Complex64> { c.iter().map(|x| Complex64::new(x.norm(), 0.0)).collect() };
        let bound = fft::convolve(&abs(&self.coeffs), &abs(&other.coeffs));
        let l2 = |c: &[Complex64]| c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let len = (self.coeffs.len() + other.coeffs.len()).next_power_of_two() as f64;
        let global = 16.0 * f64::EPSILON * len.log2() * l2(&self.coeffs) * l2(&other.coeffs);
        for (c, b) in p.coeffs.iter_mut().zip(&bound) {
            if c.norm() <= (64.0 * f64::EPSILON * b.re).max(global) {
                *c = ZERO;
            }
        }
        p
    }

    fn restricted_sup(&self, r: f64) -> f64 {
        self.sampled_sup(r)
    }

    /// Termwise derivative. The tail bound is inflated by a Cauchy-type
    /// factor `((N+1) + 4r/(1-r)) / r` that matches geometric and
    /// binomial-type tails.
    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::from_parts(vec![ZERO], self.tail_bound * self.derivative_factor(), self.r_max);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * k as f64)
            .collect();
        Self::from_parts(coeffs, self.tail_bound * self.derivative_factor(), self.r_max)
    }

    /// Inflation applied to the tail bound by [`Self::derivative`].
    pub fn derivative_factor(&self) -> f64 {
        let r = self.r_max;
        ((self.degree() + 1) as f64 + 4.0 * r / (1.0 - r)) / r
    }

    /// Primitive vanishing at 0. `|∫_0^z e| ≤ |z|·sup|e|` keeps the bound rigorous.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, a)| a / (k + 1) as f64));
        Self::from_parts(coeffs, self.tail_bound * self.r_max, self.r_max)
    }

    /// Drops trailing coefficients whose majorant on `|z| ≤ r_max` is below
    /// `rel · max_k |a_k| r^k`; their contribution moves into the tail bound.
    pub fn trimmed(&self, rel: f64) -> Self {
        let r = self.r_max;
        let scaled: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.norm() * r.powi(k as i32))
            .collect();
        let peak = scaled.iter().cloned().fold(0.0, f64::max);
        let mut keep = self.coeffs.len();
        let mut moved = 0.0;
        while keep > 1 && scaled[keep - 1] <= rel * peak {
            moved += scaled[keep - 1];
            keep -= 1;
        }
        Self::from_parts(self.coeffs[..keep].to_vec(), self.tail_bound + moved, r)
    }

    /// Keeps coefficients `0..=n`; dropped ones move into the tail bound.
    pub fn truncate(&self, n: usize) -> Self {
        if n >= self.degree() {
            return self.clone();
        }
        let r = self.r_max;
        let moved: f64 = self.coeffs[n + 1..]
            .iter()
            .enumerate()
            .map(|(j, a)| a.norm() * r.powi((n + 1 + j) as i32))
            .sum();
        Self::from_parts(self.coeffs[..=n].to_vec(), self.tail_bound + moved, r)
    }

    /// `f ∘ g` by Horner's scheme in the truncated series ring.
    ///
    /// The result lives on the validity disk of `g`; `g` must map it into
    /// the validity disk of `self`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let r = inner.r_max;
        let m = check_nodes(self.degree().max(inner.degree()));
        let g_vals = fft::circle_values(&inner.coeffs, r, m, 0.0);
        let g_sup = inner.sampled_sup(r) + inner.tail_bound;
        if g_sup > self.r_max * (1.0 + 1e-9) {
            return Err(LabError::CompositionOutOfRange { sup: g_sup, r_max: self.r_max });
        }

        let keep = self.degree().max(inner.degree());
        let g = &inner.coeffs;
        let mut acc: Vec<Complex64> = vec![*self.coeffs.last().unwrap()];
        for a in self.coeffs.iter().rev().skip(1) {
            let mut next = if g.len() <= 16 || acc.len() <= 16 {
                let n = (acc.len() + g.len() - 1).min(keep + 1);
                let mut out = vec![ZERO; n];
                for (i, x) in acc.iter().enumerate() {
                    if *x == ZERO {
                        continue;
                    }
                    for (j, y) in g.iter().enumerate() {
                        if i + j >= n {
                            break;
                        }
                        out[i + j] += x * y;
                    }
                }
                out
            } else {
                let mut full = fft::convolve(&acc, g);
                full.truncate(keep + 1);
                full
            };
            next[0] += a;
            acc = next;
        }

        // Truncation loss: compare with pointwise Horner on the same nodes.
        let shifted = fft::circle_values(&acc, r, m, 0.0);
        let trunc = g_vals
            .iter()
            .zip(&shifted)
            .map(|(w, v)| (self.horner(*w) - v).norm())
            .fold(0.0, f64::max);
        let lipschitz = if inner.tail_bound > 0.0 {
            let d = self.derivative_coeffs();
            g_vals
                .iter()
                .map(|w| d.iter().rev().fold(ZERO, |s, c| s * w + c).norm())
                .fold(0.0, f64::max)
                * 1.5
        } else {
            0.0
        };
        let tail = 2.0 * trunc + self.tail_bound + lipschitz * inner.tail_bound;
        Ok(Self::from_parts(acc, tail, r))
    }

    fn derivative_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * k as f64)
            .collect()
    }

    /// `1/f` via the coefficient recurrence. Fails when `f` vanishes on the
    /// closed validity disk (argument principle on the boundary circle).
    pub fn reciprocal(&self) -> Result<Self> {
        let f0 = self.coeffs[0];
        if f0.norm() == 0.0 {
            return Err(LabError::SymbolZero("f(0) = 0".into()));
        }
        let n = self.degree();
        let mut q = vec![ZERO; n + 1];
        q[0] = f0.inv();
        for k in 1..=n {
            let mut s = ZERO;
            for j in 1..=k {
                s += self.coeffs[j] * q[k - j];
            }
            q[k] = -s / f0;
        }
        let r = self.r_max;
        let m = check_nodes(n);
        let fv = fft::circle_values(&self.coeffs, r, m, 0.0);
        if fft::winding_number(&fv) != 0 {
            return Err(LabError::SymbolZero(format!("zero inside |z| < {r}")));
        }
        let qv = fft::circle_values(&q, r, m, 0.0);
        let mut bound: f64 = 0.0;
        for (f, g) in fv.iter().zip(&qv) {
            let denom = f.norm() - self.tail_bound;
            if denom <= 0.0 {
                return Err(LabError::SymbolZero(format!(
                    "|f| ≤ tail bound on |z| = {r}"
                )));
            }
            let resid = (f * g - 1.0).norm() + self.tail_bound * g.norm();
            bound = bound.max(resid / denom);
        }
        Ok(Self::from_parts(q, 1.5 * bound, r))
    }

    /// Builds a series from a function sampled on the circle of radius `r`.
    ///
    /// The coefficients come from a discrete Fourier inversion on `m` nodes;
    /// the tail bound is twice the largest misfit on the half-shifted nodes,
    /// which bounds the error on the whole disk by the maximum principle.
    pub fn from_circle_samples<F>(f: F, r: f64, degree: usize) -> Result<Self>
    where
        F: Fn(&[Complex64]) -> Result<Vec<Complex64>>,
    {
        check_radius(r)?;
        let m = (2 * (degree + 1)).max(64).next_power_of_two();
        let nodes = fft::circle_nodes(r, m, 0.0);
        let vals = f(&nodes)?;
        let coeffs = fft::refit_coefficients(&vals, r, degree);
        let phase = std::f64::consts::PI / m as f64;
        let check_nodes = fft::circle_nodes(r, m, phase);
        let check_vals = f(&check_nodes)?;
        let fitted = fft::circle_values(&coeffs, r, m, phase);
        let misfit = check_vals
            .iter()
            .zip(&fitted)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Ok(Self::from_parts(coeffs, 2.0 * misfit + 1e-15 * scale, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|x| c64(*x, 0.0)).collect()
    }

    #[test]
    fn evaluate_checks_validity_disk() {
        let f = PowerSeries::polynomial(real(&[0.0, 0.0, 1.0]), 0.9).unwrap();
        let v = f.evaluate(c64(0.0, 0.5)).unwrap();
        assert!((v - c64(-0.25, 0.0)).norm() < 1e-15);
        assert!(matches!(
            f.evaluate(c64(0.95, 0.0)),
            Err(LabError::OutOfValidity { .. })
        ));
    }

    #[test]
    fn derivative_power_rule_and_constant() {
        let z3 = PowerSeries::monomial(3, 0.5).unwrap();
        assert_eq!(z3.derivative().coeffs(), &real(&[0.0, 0.0, 3.0])[..]);
        let one = PowerSeries::constant(c64(1.0, 0.0), 0.5).unwrap();
        assert!(one.derivative().is_zero());
    }

    #[test]
    fn antiderivative_of_one_and_zero() {
        let one = PowerSeries::constant(c64(1.0, 0.0), 0.5).unwrap();
        assert_eq!(one.antiderivative().coeffs(), &real(&[0.0, 1.0])[..]);
        let zero = PowerSeries::zero(0.5).unwrap();
        assert!(zero.antiderivative().coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn multiply_small_cases() {
        let a = PowerSeries::polynomial(real(&[1.0, 1.0]), 0.9).unwrap();
        let b = PowerSeries::polynomial(real(&[1.0, -1.0]), 0.9).unwrap();
        assert_eq!(a.multiply(&b).coeffs(), &real(&[1.0, 0.0, -1.0])[..]);
        let z = PowerSeries::zero(0.9).unwrap();
        assert!(a.multiply(&z).coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn compose_monomial_with_dilation() {
        let t: f64 = 0.3;
        let f = PowerSeries::monomial(2, 0.9).unwrap();
        let g = PowerSeries::polynomial(vec![c64(0.0, 0.0), c64((-t).exp(), 0.0)], 0.9).unwrap();
        let h = f.compose(&g).unwrap();
        assert!((h.coeff(2) - c64((-2.0 * t).exp(), 0.0)).norm() < 1e-15);
        assert!(h.coeff(0).norm() + h.coeff(1).norm() < 1e-15);
        assert!(h.tail_bound() < 1e-14);
    }

    #[test]
    fn compose_rejects_range_violation() {
        let f = PowerSeries::monomial(2, 0.5).unwrap();
        let g = PowerSeries::identity(0.9).unwrap();
        assert!(matches!(f.compose(&g), Err(LabError::CompositionOutOfRange { .. })));
    }

    #[test]
    fn reciprocal_of_one_minus_z() {
        let f = PowerSeries::polynomial(real(&[1.0, -1.0]), 0.8).unwrap();
        let q = f.reciprocal().unwrap();
        assert!(q.coeffs().iter().all(|c| (c - 1.0).norm() < 1e-15));
        // remainder r^{N+1}/(1-r) with N = 1
        assert!(q.tail_bound() >= 0.64 / 0.2 * 0.99);
    }

    #[test]
    fn reciprocal_detects_interior_zero() {
        let f = PowerSeries::polynomial(real(&[0.25, -1.0]), 0.8).unwrap();
        assert!(matches!(f.reciprocal(), Err(LabError::SymbolZero(_))));
    }

    #[test]
    fn circle_refit_is_exact_for_polynomials() {
        let p = real(&[0.5, -1.0, 0.25]);
        let s = PowerSeries::from_circle_samples(
            |zs| Ok(zs.iter().map(|z| c64(0.5, 0.0) - z + z * z * 0.25).collect()),
            0.9,
            8,
        )
        .unwrap();
        for k in 0..=8 {
            let want = p.get(k).copied().unwrap_or_default();
            assert!((s.coeff(k) - want).norm() < 1e-14);
        }
        assert!(s.tail_bound() < 1e-13);
    }

    #[test]
    fn trimmed_moves_mass_into_tail() {
        let s = PowerSeries::polynomial(real(&[1.0, 1.0, 1e-20, 1e-22]), 0.5).unwrap();
        let t = s.trimmed(1e-15);
        assert_eq!(t.degree(), 1);
        assert!(t.tail_bound() > 0.0 && t.tail_bound() < 1e-19);
    }
}
