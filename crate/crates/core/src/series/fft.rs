//! Circle sampling, discrete Fourier refits and convolution.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Below this many multiply-adds the schoolbook product is used.
const NAIVE_CUTOFF: usize = 64 * 64;

fn fft_forward(buf: &mut [Complex64]) {
    let plan = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    plan.process(buf);
}

fn fft_inverse(buf: &mut [Complex64]) {
    let plan = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()));
    plan.process(buf);
}

/// Values of `Σ a_k z^k` at `z_j = r·exp(2πi j/m + i·phase)`, `j = 0..m`.
///
/// Coefficients beyond `m` are folded onto their alias, which is exact for
/// point sampling.
pub fn circle_values(coeffs: &[Complex64], r: f64, m: usize, phase: f64) -> Vec<Complex64> {
    assert!(m > 0);
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    let mut rk = 1.0;
    for (k, a) in coeffs.iter().enumerate() {
        let twist = if phase == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, phase * k as f64)
        };
        buf[k % m] += a * rk * twist;
        rk *= r;
    }
    fft_inverse(&mut buf);
    buf
}

/// Nodes `r·exp(2πi j/m + i·phase)`.
pub fn circle_nodes(r: f64, m: usize, phase: f64) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::from_polar(r, 2.0 * PI * j as f64 / m as f64 + phase))
        .collect()
}

/// Taylor coefficients `0..=degree` recovered from samples on the circle of
/// radius `r` (unshifted nodes). Requires `degree < values.len()`.
pub fn refit_coefficients(values: &[Complex64], r: f64, degree: usize) -> Vec<Complex64> {
    let m = values.len();
    assert!(degree < m, "refit degree must be below the node count");
    let mut buf = values.to_vec();
    fft_forward(&mut buf);
    let scale = 1.0 / m as f64;
    let mut out = Vec::with_capacity(degree + 1);
    let mut inv_rk = 1.0;
    for c in buf.into_iter().take(degree + 1) {
        out.push(c * scale * inv_rk);
        inv_rk /= r;
    }
    out
}

/// Full linear convolution of two coefficient vectors.
pub fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if a.len() * b.len() <= NAIVE_CUTOFF || a.len().min(b.len()) <= 8 {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        return out;
    }
    let len = n.next_power_of_two();
    let mut fa = vec![Complex64::new(0.0, 0.0); len];
    let mut fb = fa.clone();
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    fft_forward(&mut fa);
    fft_forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fft_inverse(&mut fa);
    let scale = 1.0 / len as f64;
    fa.truncate(n);
    for x in &mut fa {
        *x *= scale;
    }
    fa
}

/// Number of times the sampled closed curve winds around the origin.
pub fn winding_number(values: &[Complex64]) -> i64 {
    let m = values.len();
    let mut total = 0.0;
    for j in 0..m {
        let a = values[j];
        let b = values[(j + 1) % m];
        total += (b / a).arg();
    }
    (total / (2.0 * PI)).round() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn circle_values_match_horner() {
        let coeffs = vec![c(1.0), Complex64::new(0.5, -0.25), c(-2.0), c(0.125)];
        let r = 0.7;
        let vals = circle_values(&coeffs, r, 16, 0.3);
        let nodes = circle_nodes(r, 16, 0.3);
        for (v, z) in vals.iter().zip(&nodes) {
            let h = coeffs.iter().rev().fold(c(0.0), |acc, a| acc * z + a);
            assert!((v - h).norm() < 1e-13);
        }
    }

    #[test]
    fn refit_recovers_polynomial() {
        let coeffs = vec![c(1.0), c(2.0), c(3.0)];
        let vals = circle_values(&coeffs, 0.5, 8, 0.0);
        let back = refit_coefficients(&vals, 0.5, 4);
        for k in 0..5 {
            let want = coeffs.get(k).copied().unwrap_or(c(0.0));
            assert!((back[k] - want).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn fft_convolution_matches_schoolbook() {
        let a: Vec<_> = (0..300).map(|k| Complex64::new(k as f64 * 0.01, 1.0 / (k + 1) as f64)).collect();
        let b: Vec<_> = (0..200).map(|k| Complex64::new((k as f64).sin(), 0.5)).collect();
        let fast = convolve(&a, &b);
        let mut slow = vec![c(0.0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                slow[i + j] += x * y;
            }
        }
        for (x, y) in fast.iter().zip(&slow) {
            assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn winding_of_shifted_circle() {
        let nodes = circle_nodes(0.5, 64, 0.0);
        assert_eq!(winding_number(&nodes), 1);
        let shifted: Vec<_> = nodes.iter().map(|z| z + 2.0).collect();
        assert_eq!(winding_number(&shifted), 0);
    }
}
