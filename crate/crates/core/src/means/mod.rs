//! Integral means and the norms built from them.
//!
//! Mixed norms use the normalization
//! `‖f‖_{p,q,α}^q = αq ∫₀¹ (1−r)^{αq−1} M_p(r,f)^q dr`, so `‖1‖ = 1`.
//! Nothing is ever sampled beyond the validity radius of a series; the
//! region `r → 1` is handled by fitting the growth on the last decade of
//! the radial grid and extrapolating.

mod fit;
mod grid;
mod space;

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use fit::{fit_growth, linear_intercept, GrowthClass, GrowthFit, Tolerances};
pub use grid::Resolution;
pub use space::{Exponent, Interpolation, SpaceSpec, Weight};

use crate::series::{fft, PowerSeries};
use crate::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormStatus {
    Finite,
    /// The growth exponent exceeds the critical one: the norm is `+∞`.
    Divergent,
    /// The growth exponent sits in the undecidable band.
    Borderline,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    /// `f64::INFINITY` when divergent.
    pub value: f64,
    pub abs_error: f64,
    /// Value certified from the sampled region alone, without extrapolation.
    pub lower_bound: f64,
    pub status: NormStatus,
    pub resolution: String,
    pub growth: Option<GrowthFit>,
}

impl NormValue {
    fn finite(value: f64, abs_error: f64, res: &Resolution) -> Self {
        Self {
            value,
            abs_error,
            lower_bound: value,
            status: NormStatus::Finite,
            resolution: res.describe(),
            growth: None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.status == NormStatus::Divergent
    }

    pub fn is_finite(&self) -> bool {
        self.status == NormStatus::Finite
    }
}

/// Samples `(r, quantity)` of a radial profile together with its asymptotic fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub r: Vec<f64>,
    pub values: Vec<f64>,
    pub fit: GrowthFit,
}

impl Profile {
    pub fn from_samples(r: Vec<f64>, values: Vec<f64>, tol: &Tolerances) -> Self {
        let (d, v): (Vec<f64>, Vec<f64>) = r
            .iter()
            .zip(&values)
            .filter(|(r, _)| **r > 0.0)
            .map(|(r, v)| (1.0 - r, *v))
            .unzip();
        let fit = fit_growth(&d, &v, tol);
        Self { r, values, fit }
    }

    pub fn grid_sup(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    pub fn last(&self) -> f64 {
        *self.values.last().unwrap_or(&0.0)
    }
}

fn mean_of(vals: &[Complex64], p: Exponent) -> f64 {
    if p.is_inf() {
        return vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    let pp = p.value();
    let s: f64 = vals.iter().map(|v| v.norm().powf(pp)).sum::<f64>() / vals.len() as f64;
    s.powf(1.0 / pp)
}

/// `M_p(r, f)` by the trapezoidal rule on `max(512, 4N)` circle nodes.
///
/// For `p = ∞` the node maximum is returned and the between-node
/// correction `π r max|f′| / M` is reported in `abs_error`.
pub fn integral_mean(f: &PowerSeries, p: Exponent, r: f64, res: &Resolution) -> Result<NormValue> {
    if !(r >= 0.0) {
        return Err(LabError::InvalidArgument(format!("radius must be nonnegative, got {r}")));
    }
    if !(p.value() > 0.0) {
        return Err(LabError::InvalidArgument(format!("exponent must be positive, got {}", p.0)));
    }
    let m = res.theta_nodes(f.degree());
    let vals = f.circle_values(r, m)?;
    let value = mean_of(&vals, p);
    let mut abs_error = f.tail_bound();
    if p.is_inf() {
        let d: Vec<Complex64> =
            f.coeffs().iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
        let dmax = fft::circle_values(&d, r, m, 0.0).iter().map(|v| v.norm()).fold(0.0, f64::max);
        abs_error += std::f64::consts::PI * r * dmax / m as f64;
    }
    Ok(NormValue::finite(value, abs_error, res))
}

/// `M_p(r, f)` for every radius (in input order).
pub fn means_on_grid(f: &PowerSeries, p: Exponent, radii: &[f64], res: &Resolution) -> Result<Vec<f64>> {
    if let Some(r) = radii.iter().find(|r| **r > f.r_max() * (1.0 + 1e-12)) {
        return Err(LabError::OutOfValidity { modulus: *r, r_max: f.r_max() });
    }
    let m = res.theta_nodes(f.degree());
    Ok(radii
        .par_iter()
        .map(|r| mean_of(&fft::circle_values(f.coeffs(), *r, m, 0.0), p))
        .collect())
}

/// Radial grid of `res` truncated to the validity radius of `f`.
fn grid_for(f: &PowerSeries, res: &Resolution) -> Vec<f64> {
    res.radial_grid_up_to(f.r_max().min(res.r_max))
}

/// Rounding level of circle sums of `f` at radius `r`: `64 ε Σ|a_k| r^k`.
fn noise_floor(f: &PowerSeries, r: f64) -> f64 {
    let mut acc = 0.0;
    let mut rk = 1.0;
    for a in f.coeffs() {
        acc += a.norm() * rk;
        rk *= r;
    }
    64.0 * f64::EPSILON * acc
}

/// Zeroes samples that sit at the rounding level of `f`.
fn denoise(f: &PowerSeries, r: &[f64], means: &mut [f64]) {
    for (m, r) in means.iter_mut().zip(r) {
        if *m <= noise_floor(f, *r) {
            *m = 0.0;
        }
    }
}

/// Turns a sup-type profile into a norm value.
fn sup_from_profile(profile: &Profile, tail_weight: f64, res: &Resolution, tol: &Tolerances) -> NormValue {
    let grid_sup = profile.grid_sup();
    let mut nv = NormValue::finite(grid_sup, tail_weight, res);
    match profile.fit.class {
        GrowthClass::Unbounded => {
            nv.value = f64::INFINITY;
            nv.abs_error = f64::INFINITY;
            nv.status = NormStatus::Divergent;
        }
        GrowthClass::Converges { limit } => {
            nv.value = grid_sup.max(limit);
            nv.abs_error += (limit - profile.last()).abs();
        }
        GrowthClass::Vanishing => {}
        GrowthClass::Borderline => {
            if profile.fit.exponent.unwrap_or(0.0) > tol.tol_zero {
                nv.abs_error = f64::INFINITY;
                nv.status = NormStatus::Borderline;
            }
        }
    }
    nv.growth = Some(profile.fit.clone());
    nv
}

/// `sup_r (1−r)^α M_p(r,f)` with the sampled profile.
pub fn sup_norm_profile(
    f: &PowerSeries,
    p: Exponent,
    alpha: f64,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<(NormValue, Profile)> {
    let r = grid_for(f, res);
    let mut m = means_on_grid(f, p, &r, res)?;
    denoise(f, &r, &mut m);
    let values: Vec<f64> = r.iter().zip(&m).map(|(r, m)| (1.0 - r).powf(alpha) * m).collect();
    let profile = Profile::from_samples(r, values, tol);
    let nv = sup_from_profile(&profile, f.tail_bound(), res, tol);
    Ok((nv, profile))
}

/// `sup_r v(r) M_∞(r,f)` with the sampled profile.
pub fn weighted_norm(
    f: &PowerSeries,
    v: &Weight,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<(NormValue, Profile)> {
    v.validate()?;
    let r = grid_for(f, res);
    let mut m = means_on_grid(f, Exponent::INF, &r, res)?;
    denoise(f, &r, &mut m);
    let values: Vec<f64> = r.iter().zip(&m).map(|(r, m)| v.eval(*r) * m).collect();
    let profile = Profile::from_samples(r, values, tol);
    let nv = sup_from_profile(&profile, f.tail_bound() * v.eval(0.0), res, tol);
    Ok((nv, profile))
}

/// `∫` over `δ ∈ [δ_min, 1]` of the mixed-norm integrand, in the variable
/// `u = δ^{αq}` on geometric panels.
fn radial_integral(
    f: &PowerSeries,
    p: Exponent,
    q: f64,
    aq: f64,
    d_min: f64,
    panels_per_decade: usize,
    order: usize,
    res: &Resolution,
) -> f64 {
    let decades = -d_min.log10();
    let panels = ((decades * panels_per_decade as f64).ceil() as usize).max(1);
    let ratio = d_min.powf(1.0 / panels as f64);
    let rule = GaussLegendre::new(NonZeroUsize::new(order).unwrap());
    let pairs = rule.as_node_weight_pairs();
    let mut nodes = Vec::with_capacity(panels * order);
    let mut d_hi = 1.0_f64;
    for j in 0..panels {
        let d_lo = if j + 1 == panels { d_min } else { d_hi * ratio };
        let (u_lo, u_hi) = (d_lo.powf(aq), d_hi.powf(aq));
        let half = 0.5 * (u_hi - u_lo);
        for (x, w) in pairs {
            let u = u_lo + half * (x + 1.0);
            nodes.push((1.0 - u.powf(1.0 / aq), w * half));
        }
        d_hi = d_lo;
    }
    let m = res.theta_nodes(f.degree());
    let terms: Vec<f64> = nodes
        .par_iter()
        .map(|(r, w)| w * mean_of(&fft::circle_values(f.coeffs(), *r, m, 0.0), p).powf(q))
        .collect();
    terms.iter().sum()
}

/// `(αq ∫₀¹ (1−r)^{αq−1} M_p^q dr)^{1/q}` for finite `q`.
pub fn mixed_norm(
    f: &PowerSeries,
    p: Exponent,
    q: Exponent,
    alpha: f64,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<NormValue> {
    if q.is_inf() {
        return sup_norm_profile(f, p, alpha, res, tol).map(|x| x.0);
    }
    if !(alpha > 0.0 && q.value() > 0.0) {
        return Err(LabError::InvalidArgument(format!(
            "mixed norm needs α > 0 and q > 0, got α={alpha}, q={}",
            q.0
        )));
    }
    let qv = q.value();
    let aq = alpha * qv;
    let r_top = f.r_max().min(res.r_max);
    let d_min = 1.0 - r_top;

    let fine = radial_integral(f, p, qv, aq, d_min, res.panels_per_decade, res.gauss_order, res);
    let coarse = radial_integral(
        f,
        p,
        qv,
        aq,
        d_min,
        res.panels_per_decade,
        (res.gauss_order / 2).max(1),
        res,
    );

    // Growth of M_p itself on the last decade controls the tail [r_top, 1).
    let grid = grid_for(f, res);
    let mut means = means_on_grid(f, p, &grid, res)?;
    denoise(f, &grid, &mut means);
    let profile = Profile::from_samples(grid, means, tol);
    let s = profile.fit.exponent.unwrap_or(0.0).max(0.0);
    let m_top = profile.last();
    let u_max = d_min.powf(aq);

    let mut nv = NormValue::finite(0.0, 0.0, res);
    nv.lower_bound = fine.max(0.0).powf(1.0 / qv);
    nv.growth = Some(profile.fit.clone());
    if s >= alpha + tol.band {
        nv.value = f64::INFINITY;
        nv.abs_error = f64::INFINITY;
        nv.status = NormStatus::Divergent;
        return Ok(nv);
    }
    let (tail, borderline) = if s >= alpha {
        (0.0, true)
    } else {
        (m_top.powf(qv) * u_max / (1.0 - s / alpha), false)
    };
    let total = fine + tail;
    let value = total.max(0.0).powf(1.0 / qv);
    let dvalue = if total > 0.0 { value / (qv * total) } else { 0.0 };
    nv.value = value;
    nv.abs_error = if borderline {
        f64::INFINITY
    } else {
        dvalue * ((fine - coarse).abs() + tail) + f.tail_bound()
    };
    if borderline {
        nv.status = NormStatus::Borderline;
    }
    Ok(nv)
}

/// Norm of `f` in `X`.
pub fn norm(f: &PowerSeries, x: &SpaceSpec, res: &Resolution, tol: &Tolerances) -> Result<NormValue> {
    x.validate()?;
    match x {
        SpaceSpec::Hardy { p } => sup_norm_profile(f, *p, 0.0, res, tol).map(|x| x.0),
        SpaceSpec::Bergman { p, alpha } => {
            mixed_norm(f, *p, *p, (alpha + 1.0) / p.value(), res, tol)
        }
        SpaceSpec::MixedNorm { p, q, alpha } => mixed_norm(f, *p, *q, *alpha, res, tol),
        SpaceSpec::MixedNormLittle { p, alpha } => {
            sup_norm_profile(f, *p, *alpha, res, tol).map(|x| x.0)
        }
        SpaceSpec::WeightedBanach { weight } | SpaceSpec::WeightedBanachLittle { weight } => {
            weighted_norm(f, weight, res, tol).map(|x| x.0)
        }
        SpaceSpec::WeightedBloch { weight } => {
            let (mut nv, _) = weighted_norm(&f.derivative(), weight, res, tol)?;
            let f0 = f.coeff(0).norm();
            nv.value += f0;
            nv.lower_bound += f0;
            nv.abs_error += f.tail_bound();
            Ok(nv)
        }
    }
}

/// The profile whose vanishing decides little-oh membership in `X`.
pub fn limit_profile(f: &PowerSeries, x: &SpaceSpec, res: &Resolution, tol: &Tolerances) -> Result<Profile> {
    match x.big_space() {
        SpaceSpec::MixedNorm { p, q, alpha } if q.is_inf() => {
            sup_norm_profile(f, p, alpha, res, tol).map(|x| x.1)
        }
        SpaceSpec::WeightedBanach { weight } => weighted_norm(f, &weight, res, tol).map(|x| x.1),
        SpaceSpec::WeightedBloch { weight } => {
            weighted_norm(&f.derivative(), &weight, res, tol).map(|x| x.1)
        }
        SpaceSpec::Hardy { p } if p.is_inf() => sup_norm_profile(f, p, 0.0, res, tol).map(|x| x.1),
        other => Err(LabError::InvalidSpace(format!(
            "{} has no sup-type limit functional",
            other.label()
        ))),
    }
}

/// Whether `v(r) → 0` as `r → 1`, decided on the radial grid.
pub fn is_typical(v: &Weight, res: &Resolution, tol: &Tolerances) -> bool {
    let r = res.radial_grid();
    let vals: Vec<f64> = r.iter().map(|r| v.eval(*r)).collect();
    let prof = Profile::from_samples(r, vals, tol);
    match prof.fit.class {
        GrowthClass::Vanishing => true,
        GrowthClass::Converges { limit } => limit <= tol.eps_limit,
        _ => false,
    }
}

/// Monomial lower-bound scheme for the associated weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociatedWeight {
    pub r: Vec<f64>,
    /// `ṽ_approx(r) = 1 / max_{n ≤ M} rⁿ / sup_s v(s) sⁿ`; satisfies `ṽ_approx ≥ ṽ`.
    pub values: Vec<f64>,
    pub candidate_degree: usize,
    pub one_sided: bool,
}

impl AssociatedWeight {
    /// Linear interpolation on the stored grid.
    pub fn eval(&self, r: f64) -> f64 {
        let j = self.r.partition_point(|x| *x <= r);
        if j == 0 {
            return self.values[0];
        }
        if j >= self.r.len() {
            return *self.values.last().unwrap();
        }
        let s = (r - self.r[j - 1]) / (self.r[j] - self.r[j - 1]);
        self.values[j - 1] + s * (self.values[j] - self.values[j - 1])
    }
}

pub fn associated_weight(
    v: &Weight,
    radii: &[f64],
    candidate_degree: usize,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<AssociatedWeight> {
    v.validate()?;
    if !is_typical(v, res, tol) {
        return Err(LabError::UnsupportedWeight(format!("{} is not typical", v.label())));
    }
    // sup_s v(s) s^n on a fine grid, refined toward s = 1.
    let mut s_grid: Vec<f64> = (0..=2000).map(|j| j as f64 / 2000.0).collect();
    s_grid.extend((1..=400).map(|j| 1.0 - 10f64.powf(-3.0 - 6.0 * j as f64 / 400.0)));
    s_grid.sort_by(f64::total_cmp);
    let vs: Vec<f64> = s_grid.iter().map(|s| v.eval(*s)).collect();
    let c: Vec<f64> = (0..=candidate_degree)
        .into_par_iter()
        .map(|n| {
            s_grid
                .iter()
                .zip(&vs)
                .map(|(s, v)| v * s.powi(n as i32))
                .fold(0.0, f64::max)
        })
        .collect();
    let values = radii
        .iter()
        .map(|r| {
            let best = c
                .iter()
                .enumerate()
                .filter(|(_, c)| **c > 0.0)
                .map(|(n, c)| r.powi(n as i32) / c)
                .fold(0.0, f64::max);
            1.0 / best
        })
        .collect();
    Ok(AssociatedWeight {
        r: radii.to_vec(),
        values,
        candidate_degree,
        one_sided: true,
    })
}
