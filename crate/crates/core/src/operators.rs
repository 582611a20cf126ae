//! The weighted composition semigroup `T_t f = φ_t′·(f∘φ_t)` and the
//! operators `V f = ∫₀^z f`, `M_g`, `W_g = M_g V` and `W_γ`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{CriterionVerdict, Verdict};
use crate::means::{self, linear_intercept, NormStatus, Resolution, SpaceSpec, Tolerances};
use crate::semiflow::{flow, Analytic, DwMode, Generator};
use crate::series::{fft, ClosedForm, PowerSeries, DEFAULT_DEGREE};
use crate::{LabError, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Symbol of a multiplication operator.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    Closed(ClosedForm),
    Series(PowerSeries),
}

impl Symbol {
    fn expand(&self, n: usize, r_max: f64) -> Result<PowerSeries> {
        match self {
            Symbol::Closed(c) => c.expand(n, r_max),
            Symbol::Series(s) => {
                if s.r_max() + 1e-15 < r_max {
                    return Err(LabError::OutOfValidity { modulus: r_max, r_max: s.r_max() });
                }
                Ok(s.clone().restrict(r_max)?)
            }
        }
    }

    /// Degree at which products with `f` are truncated.
    fn working_degree(&self, f: &PowerSeries) -> usize {
        match self {
            Symbol::Closed(ClosedForm::Constant { .. }) => f.degree(),
            Symbol::Closed(ClosedForm::Polynomial { coeffs }) => f.degree() + coeffs.len(),
            Symbol::Closed(_) => f.degree().max(DEFAULT_DEGREE),
            Symbol::Series(s) => f.degree().max(s.degree()),
        }
    }
}

impl From<ClosedForm> for Symbol {
    fn from(c: ClosedForm) -> Self {
        Symbol::Closed(c)
    }
}

impl From<PowerSeries> for Symbol {
    fn from(s: PowerSeries) -> Self {
        Symbol::Series(s)
    }
}

/// `V f(z) = ∫₀^z f`.
pub fn volterra(f: &PowerSeries) -> PowerSeries {
    f.antiderivative()
}

/// `M_g f = g·f` on the validity disk of `f`.
pub fn multiplier(g: &Symbol, f: &PowerSeries) -> Result<PowerSeries> {
    let n = g.working_degree(f);
    Ok(g.expand(n, f.r_max())?.multiply(f).truncate(n))
}

/// `W_g f(z) = g(z) ∫₀^z f`.
pub fn apply_w_g(g: &Symbol, f: &PowerSeries) -> Result<PowerSeries> {
    let v = volterra(f);
    let n = g.working_degree(&v);
    Ok(g.expand(n, f.r_max())?.multiply(&v).truncate(n))
}

/// Reciprocal of the symbol of `W_γ`: `1/P` (interior) or `1/((1 − b̄z)² P)` (boundary).
fn w_gamma_symbol(gen: &Generator, n: usize, r: f64) -> Result<PowerSeries> {
    if gen.is_trivial() {
        return Err(LabError::TrivialSemigroup);
    }
    let b = gen.b();
    match gen.mode() {
        DwMode::Interior => {
            if let Analytic::Closed(c) = gen.p() {
                if let Some(inv) = c.reciprocal() {
                    return inv.expand(n, r);
                }
            }
            gen.p().expand(n, r)?.reciprocal()
        }
        DwMode::Boundary => {
            // (1 − b̄z)² P = b̄ G.
            if let Some(g) = gen.g_closed() {
                if let Some(inv) = g.scaled(b.conj()).and_then(|c| c.reciprocal()) {
                    return inv.expand(n, r);
                }
            }
            let bb = b.conj();
            let sq = PowerSeries::polynomial(vec![ONE, -2.0 * bb, bb * bb], r)?;
            sq.multiply(&gen.p().expand(n, r)?).truncate(n).reciprocal()
        }
    }
}

/// `W_γ f`, the operator whose boundedness and compactness decide the
/// dichotomy of the maximal subspace.
pub fn apply_w_gamma(gen: &Generator, f: &PowerSeries) -> Result<PowerSeries> {
    let v = volterra(f);
    let n = v.degree().max(DEFAULT_DEGREE);
    let inv = w_gamma_symbol(gen, n, f.r_max())?;
    Ok(inv.multiply(&v).truncate(n))
}

/// Largest radius `ρ ≤ r_f` with `max_{|z|=ρ} |φ_t(z)| ≤ r_f` on a sampled circle.
fn validity_radius(gen: &Generator, t: f64, r_f: f64, tol: f64) -> Result<f64> {
    const NODES: usize = 512;
    let sup = |rho: f64| -> Result<f64> {
        let s = flow(gen, t, &fft::circle_nodes(rho, NODES, 0.0), tol)?;
        Ok(s.phi.iter().map(|w| w.norm()).fold(0.0, f64::max))
    };
    if sup(r_f)? <= r_f {
        return Ok(r_f);
    }
    let (mut lo, mut hi) = (0.0, r_f);
    if sup(lo)? > r_f {
        let w = flow(gen, t, &[Complex64::new(0.0, 0.0)], tol)?.phi[0];
        return Err(LabError::CompositionOutOfRange { sup: w.norm(), r_max: r_f });
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if sup(mid)? <= r_f {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `T_t f = φ_t′·(f∘φ_t)`, refit from circle samples of the flow.
///
/// The result lives on the largest circle that the flow maps inside the
/// validity disk of `f`; its tail bound carries the refit misfit and
/// `tail(f)·max|φ_t′|`.
pub fn apply_weighted_composition(gen: &Generator, t: f64, f: &PowerSeries, tol: f64) -> Result<PowerSeries> {
    if t == 0.0 || gen.is_trivial() {
        return Ok(f.clone());
    }
    let r_f = f.r_max();
    let mut rho = validity_radius(gen, t, r_f, tol)?;
    let max_dphi = std::sync::Mutex::new(0.0_f64);
    for _ in 0..20 {
        let attempt = PowerSeries::from_circle_samples(
            |zs| {
                let s = flow(gen, t, zs, tol)?;
                let sup = s.phi.iter().map(|w| w.norm()).fold(0.0, f64::max);
                if sup > r_f * (1.0 + 1e-12) {
                    return Err(LabError::CompositionOutOfRange { sup, r_max: r_f });
                }
                let d = s.dphi.iter().map(|d| d.norm()).fold(0.0, f64::max);
                let mut m = max_dphi.lock().unwrap();
                *m = m.max(d);
                Ok(s.phi
                    .par_iter()
                    .zip(&s.dphi)
                    .map(|(w, d)| d * f.eval_unchecked(*w))
                    .collect())
            },
            rho,
            f.degree(),
        );
        match attempt {
            Ok(s) => {
                let extra = f.tail_bound() * *max_dphi.lock().unwrap();
                return Ok(s.with_extra_tail(extra));
            }
            Err(LabError::CompositionOutOfRange { .. }) => rho = 1.0 - (1.0 - rho) * 1.05,
            Err(e) => return Err(e),
        }
    }
    Err(LabError::CompositionOutOfRange { sup: f64::NAN, r_max: r_f })
}

/// `‖T_t f − f‖_X` on a decreasing `t`-grid with a linear extrapolation to `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityProfile {
    pub t_grid: Vec<f64>,
    pub norms: Vec<f64>,
    pub abs_errors: Vec<f64>,
    /// Norms certified on the sampled radii only.
    pub lower_bounds: Vec<f64>,
    pub space: SpaceSpec,
    /// Intercept of the line through the last three points.
    pub extrapolated_limit: f64,
    /// One-sigma band of the intercept.
    pub confidence: f64,
    pub slope: f64,
    /// Some norm in the profile is `+∞`.
    pub divergent: bool,
    /// Some norm in the profile sits in the borderline band.
    pub borderline: bool,
}

impl ContinuityProfile {
    pub fn strictly_decreasing(&self) -> bool {
        self.norms.windows(2).all(|w| w[1] < w[0])
    }

    pub fn min_norm(&self) -> f64 {
        self.norms.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// `min_t` of the certified lower bounds.
    pub fn min_lower_bound(&self) -> f64 {
        self.lower_bounds.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// The limit is zero relative to `scale` within `rel`.
    pub fn tends_to_zero(&self, scale: f64, rel: f64) -> bool {
        !self.divergent && self.extrapolated_limit.max(0.0) <= rel * scale
    }
}

/// Norm of `T_t f − f` in `X` for each `t` of a strictly decreasing positive grid.
pub fn continuity_profile(
    gen: &Generator,
    f: &PowerSeries,
    x: &SpaceSpec,
    t_grid: &[f64],
    res: &Resolution,
    tol: &Tolerances,
) -> Result<ContinuityProfile> {
    x.validate()?;
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t > 0.0)) || t_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(LabError::InvalidArgument("t-grid must be positive and strictly decreasing".into()));
    }
    let mut norms = Vec::with_capacity(t_grid.len());
    let mut errs = Vec::with_capacity(t_grid.len());
    let mut lower = Vec::with_capacity(t_grid.len());
    let mut divergent = false;
    let mut borderline = false;
    for &t in t_grid {
        let tf = apply_weighted_composition(gen, t, f, tol.ode_tol)?;
        let base = f.clone().restrict(tf.r_max())?;
        let d = tf.subtract(&base);
        let nv = means::norm(&d, x, res, tol)?;
        divergent |= nv.status == NormStatus::Divergent;
        borderline |= nv.status == NormStatus::Borderline;
        norms.push(nv.value);
        errs.push(nv.abs_error);
        lower.push(nv.lower_bound);
    }
    let k = t_grid.len().min(3);
    let (ts, ys) = (&t_grid[t_grid.len() - k..], &norms[norms.len() - k..]);
    let (c, slope, se) = if divergent {
        (f64::INFINITY, 0.0, f64::INFINITY)
    } else {
        linear_intercept(ts, ys)
    };
    Ok(ContinuityProfile {
        t_grid: t_grid.to_vec(),
        norms,
        abs_errors: errs,
        lower_bounds: lower,
        space: x.clone(),
        extrapolated_limit: c,
        confidence: se,
        slope,
        divergent,
        borderline,
    })
}

/// `t`-grid used for cross-checks inside verdicts.
pub const CROSS_CHECK_T: [f64; 3] = [0.1, 0.05, 0.025];

/// Tests the core condition `(Gf)′ ∈ X` of the maximal subspace `[φ_t′, X]`.
///
/// For `X = H(p,∞,α)` with `α > 1` the equivalent condition `Gf ∈ H(p,∞,α−1)`
/// is used. A finite norm certifies membership in the core, not only in its
/// closure; a continuity profile is attached as a cross-check.
pub fn maximal_subspace_member(
    gen: &Generator,
    f: &PowerSeries,
    x: &SpaceSpec,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<CriterionVerdict> {
    const ID: &str = "maximal_subspace_core";
    let fx = means::norm(f, x, res, tol)?;
    if !fx.is_finite() {
        return Err(LabError::InvalidArgument(format!("f is not in {} (norm {:?})", x.label(), fx.status)));
    }
    let n = f.degree();
    let gf = gen.g_series(n, f.r_max())?.multiply_clean(f).truncate(n);
    let (tested, space, form) = match x {
        SpaceSpec::MixedNorm { p, q, alpha } if q.is_inf() && *alpha > 1.0 => {
            (gf, SpaceSpec::MixedNorm { p: *p, q: *q, alpha: alpha - 1.0 }, "Gf in H(p,inf,alpha-1)")
        }
        _ => (gf.derivative(), x.clone(), "(Gf)' in X"),
    };
    let nv = means::norm(&tested, &space, res, tol)?;
    let verdict = match nv.status {
        NormStatus::Finite => Verdict::Holds,
        NormStatus::Divergent => Verdict::Fails,
        NormStatus::Borderline => Verdict::Inconclusive,
    };
    let summary = match verdict {
        Verdict::Holds => format!("{form}: norm {:.6e}, f lies in the core of the maximal subspace", nv.value),
        Verdict::Fails => format!("{form}: norm diverges"),
        Verdict::Inconclusive => format!("{form}: growth exponent in the borderline band"),
    };
    let mut v = CriterionVerdict::new(ID, verdict, summary, tol)
        .with("tested_form", form)
        .with("tested_space", space.label())
        .with("tested_norm", &nv)
        .with("norm_f", &fx)
        .with("closure_gap", "core membership only; closure is not decided numerically");
    if let Ok(cp) = continuity_profile(gen, f, x, &CROSS_CHECK_T, res, tol) {
        v = v.with("continuity_cross_check", &cp);
    }
    Ok(v)
}
