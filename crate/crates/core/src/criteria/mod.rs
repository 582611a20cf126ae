//! Three-valued numerical classifiers for the characterization results.
//!
//! Every decision about `r → 1` comes from the growth fit on the last decade
//! of the radial grid; exponents inside the `±band` window and outside the
//! `±tol_zero` window give an inconclusive verdict.

mod verdict;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use verdict::{CriterionVerdict, Verdict};

use crate::means::{
    self, fit_growth, sup_norm_profile, Exponent, GrowthClass, GrowthFit, NormStatus, Profile, Resolution, SpaceSpec, Tolerances,
    Weight,
};
use crate::operators::{apply_w_g, continuity_profile, maximal_subspace_member, Symbol, CROSS_CHECK_T};
use crate::semiflow::{flow, Analytic, DwMode, Generator};
use crate::series::{fft, ClosedForm, PowerSeries};
use crate::{LabError, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default `t`-grid for continuity profiles.
pub const T_GRID: [f64; 5] = [0.4, 0.2, 0.1, 0.05, 0.025];

/// Decay exponent above which the probe norms count as tending to zero.
/// The probe stops at `1 − |z_n| = 0.05`, so its window is wider than `band`.
pub const PROBE_BAND: f64 = 0.1;

/// Moduli of the points `z_n` used by the compactness probe.
pub const PROBE_MODULI: [f64; 6] = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95];

fn expand(g: &Symbol, res: &Resolution) -> Result<PowerSeries> {
    match g {
        Symbol::Closed(c) => c.expand(res.degree, res.r_max),
        Symbol::Series(s) => {
            let r = s.r_max().min(res.r_max);
            Ok(s.clone().restrict(r)?)
        }
    }
}

fn exponent_of(p: &Profile) -> f64 {
    p.fit.exponent.unwrap_or(f64::NEG_INFINITY)
}

fn profile_h_inf_inf_1(g: &Symbol, res: &Resolution, tol: &Tolerances) -> Result<Profile> {
    let s = expand(g, res)?;
    Ok(sup_norm_profile(&s, Exponent::INF, 1.0, res, tol)?.1)
}

/// `g ∈ H(∞,∞,1)`, i.e. `(1 − r) M_∞(r, g)` bounded.
pub fn in_h_inf_inf_1(g: &Symbol, res: &Resolution, tol: &Tolerances) -> Result<CriterionVerdict> {
    let prof = profile_h_inf_inf_1(g, res, tol)?;
    Ok(bounded_verdict(&prof, tol))
}

fn bounded_verdict(prof: &Profile, tol: &Tolerances) -> CriterionVerdict {
    let e = exponent_of(prof);
    let (verdict, summary) = if e <= tol.tol_zero {
        (Verdict::Holds, format!("(1-r)M_inf(r,g) bounded, growth exponent {e:.4}"))
    } else if e > tol.band {
        (Verdict::Fails, format!("(1-r)M_inf(r,g) grows like (1-r)^-{e:.4}"))
    } else {
        (Verdict::Inconclusive, format!("growth exponent {e:.4} inside the borderline band"))
    };
    CriterionVerdict::new("in_H_inf_inf_1", verdict, summary, tol)
        .with("exponent", e)
        .with("fit", &prof.fit)
        .with("r", &prof.r)
        .with("profile", &prof.values)
}

/// `g ∈ H₀(∞,∞,1)`, i.e. `(1 − r) M_∞(r, g) → 0`.
pub fn in_h0_inf_inf_1(g: &Symbol, res: &Resolution, tol: &Tolerances) -> Result<CriterionVerdict> {
    let prof = profile_h_inf_inf_1(g, res, tol)?;
    Ok(little_oh_verdict("in_H0_inf_inf_1", &prof, tol))
}

/// Vanishing of a sup-type profile at the boundary.
fn little_oh_verdict(id: &str, prof: &Profile, tol: &Tolerances) -> CriterionVerdict {
    let e = exponent_of(prof);
    let (verdict, summary, limit) = match prof.fit.class {
        GrowthClass::Vanishing => (Verdict::Holds, format!("profile decays like (1-r)^{:.4}", -e), 0.0),
        GrowthClass::Converges { limit } if limit <= tol.eps_limit => {
            (Verdict::Holds, format!("extrapolated limit {limit:.3e} below eps_limit"), limit)
        }
        GrowthClass::Converges { limit } => {
            (Verdict::Fails, format!("profile tends to the positive floor {limit:.6}"), limit)
        }
        GrowthClass::Unbounded => (Verdict::Fails, format!("profile unbounded, exponent {e:.4}"), f64::INFINITY),
        GrowthClass::Borderline => (
            Verdict::Inconclusive,
            format!("growth exponent {e:.4} inside the borderline band"),
            f64::NAN,
        ),
    };
    CriterionVerdict::new(id, verdict, summary, tol)
        .with("exponent", e)
        .with("extrapolated_limit", limit)
        .with("fit", &prof.fit)
        .with("r", &prof.r)
        .with("profile", &prof.values)
}

/// Norms `‖W_g f_{z_n}‖` on the normalized test family with `|z_n| → 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactnessProbe {
    pub moduli: Vec<f64>,
    pub angle: f64,
    pub norms: Vec<f64>,
    /// Fitted `κ` in `‖W_g f_{z_n}‖ ≈ C (1 − |z_n|)^κ (1 + b(1 − |z_n|))`.
    pub decay_exponent: f64,
    pub fit: GrowthFit,
    /// `‖W_g f_{z_0}‖ / ‖W_g f_{z_last}‖`.
    pub decay_ratio: f64,
    pub space: SpaceSpec,
}

impl CompactnessProbe {
    /// Whether the probe norms tend to zero.
    pub fn indicates_compact(&self) -> bool {
        self.decay_exponent > PROBE_BAND
    }
}

/// Runs `W_g` on `f_z(w) = (1−|z|²)^s/(1−z̄w)^{2s}`, `s = α + 1/p`, in `H(2,∞,1)`.
pub fn compactness_probe(g: &Symbol, res: &Resolution, tol: &Tolerances) -> Result<CompactnessProbe> {
    let (p, alpha) = (2.0, 1.0);
    let space = SpaceSpec::mixed(p, f64::INFINITY, alpha);
    let gs = expand(g, res)?;
    let vals = fft::circle_values(gs.coeffs(), gs.r_max(), 1024, 0.0);
    let k = (0..vals.len()).fold(0, |k, j| if vals[j].norm() > vals[k].norm() { j } else { k });
    let angle = 2.0 * std::f64::consts::PI * k as f64 / vals.len() as f64;
    let mut norms = Vec::with_capacity(PROBE_MODULI.len());
    for m in PROBE_MODULI {
        let z = Complex64::from_polar(m, angle);
        let f = ClosedForm::test_function(z, alpha, p)?.expand(res.degree, res.r_max)?;
        let w = apply_w_g(g, &f)?;
        let nv = means::norm(&w, &space, res, tol)?;
        norms.push(if nv.status == NormStatus::Divergent { f64::INFINITY } else { nv.value });
    }
    let deltas: Vec<f64> = PROBE_MODULI.iter().map(|m| 1.0 - m).collect();
    let fit = fit_growth(&deltas, &norms, tol);
    // a divergent norm means W_g is unbounded on the family
    let decay_exponent = if norms.iter().all(|n| n.is_finite()) {
        -fit.exponent.unwrap_or(f64::NEG_INFINITY)
    } else {
        f64::NEG_INFINITY
    };
    Ok(CompactnessProbe {
        moduli: PROBE_MODULI.to_vec(),
        angle,
        norms: norms.clone(),
        decay_exponent,
        fit,
        decay_ratio: norms[0] / norms[norms.len() - 1],
        space,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WgClassification {
    pub bounded: CriterionVerdict,
    pub compact: CriterionVerdict,
    pub probe: CompactnessProbe,
}

/// Boundedness (`g ∈ H(∞,∞,1)`) and compactness (`g ∈ H₀(∞,∞,1)`) of `W_g`.
///
/// A definite compactness verdict contradicted by the probe becomes inconclusive.
pub fn w_g_classification(g: &Symbol, res: &Resolution, tol: &Tolerances) -> Result<WgClassification> {
    let prof = profile_h_inf_inf_1(g, res, tol)?;
    let mut bounded = bounded_verdict(&prof, tol);
    bounded.criterion_id = "wg_bounded".into();
    let mut compact = little_oh_verdict("wg_compact", &prof, tol);
    let probe = compactness_probe(g, res, tol)?;
    let says = probe.indicates_compact();
    if compact.verdict.is_definite() && says != compact.holds() {
        compact.verdict = Verdict::Inconclusive;
        compact.summary = format!(
            "{}; the test-family probe disagrees (decay exponent {:.4})",
            compact.summary, probe.decay_exponent
        );
    }
    compact = compact
        .with("probe_decay_exponent", probe.decay_exponent)
        .with("probe_norms", &probe.norms)
        .with("weak_compactness", "equivalent by theory, not independently checked");
    Ok(WgClassification { bounded, compact, probe })
}

/// `max_{|z|=r} |F(z)|` over the radial grid for a pointwise function.
fn sup_profile(
    f: impl Fn(Complex64) -> Complex64 + Sync,
    weight: impl Fn(f64) -> f64,
    res: &Resolution,
    tol: &Tolerances,
) -> Profile {
    let r = res.radial_grid();
    let m = res.theta_nodes(res.degree).min(4096);
    let values: Vec<f64> = r
        .iter()
        .map(|r| {
            let s = fft::circle_nodes(*r, m, 0.0).into_iter().map(|z| f(z).norm()).fold(0.0, f64::max);
            weight(*r) * s
        })
        .collect();
    Profile::from_samples(r, values, tol)
}

/// Sufficient conditions for strong continuity of `{T_t}` on a separable space `X`.
pub fn strong_continuity_sufficient(
    gen: &Generator,
    x: &SpaceSpec,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<CriterionVerdict> {
    const ID: &str = "separable_strong_continuity";
    x.validate()?;
    if !x.polynomial_dense() {
        return Ok(CriterionVerdict::new(
            ID,
            Verdict::Inconclusive,
            format!(
                "{} is not polynomial-dense; decide through interior_dichotomy / boundary_strict",
                x.label()
            ),
            tol,
        )
        .with("polynomial_dense", false));
    }
    let (n, r) = (res.degree, res.r_max);
    let id = PowerSeries::identity(r)?;
    let one = PowerSeries::constant(ONE, r)?;
    let mut phi_norms = Vec::new();
    let mut dphi_norms = Vec::new();
    for &t in &T_GRID {
        let s = flow_series(gen, t, n, r, tol)?;
        let (phi, dphi) = (s.0, s.1);
        let rr = phi.r_max();
        phi_norms.push(means::norm(&phi.subtract(&id.clone().restrict(rr)?), x, res, tol)?);
        dphi_norms.push(means::norm(&dphi.subtract(&one.clone().restrict(rr)?), x, res, tol)?);
    }
    let limit = |v: &[means::NormValue]| -> (f64, bool) {
        let bad = v.iter().any(|n| !n.is_finite());
        let ys: Vec<f64> = v.iter().map(|n| n.value).collect();
        let k = ys.len() - 3;
        (means::linear_intercept(&T_GRID[k..], &ys[k..]).0, bad)
    };
    let (l_phi, bad_phi) = limit(&phi_norms);
    let (l_dphi, bad_dphi) = limit(&dphi_norms);
    let scale = means::norm(&id, x, res, tol)?.value.max(1.0);
    let cond4 = l_phi.max(l_dphi) <= tol.continuity_rel * scale;

    let battery = continuity_battery();
    let mut ratios = Vec::new();
    let mut skipped = Vec::new();
    for f in &battery {
        let s = f.expand(n, r)?;
        let nf = means::norm(&s, x, res, tol)?;
        if !nf.is_finite() {
            skipped.push(f.label());
            continue;
        }
        let mut worst: f64 = 0.0;
        for &t in &[1.0, 0.5, 0.1] {
            let tf = crate::operators::apply_weighted_composition(gen, t, &s, tol.ode_tol)?;
            let nt = means::norm(&tf, x, res, tol)?;
            worst = worst.max(nt.value / nf.value);
        }
        ratios.push((f.label(), worst));
    }
    let cond3_const = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    let cond3 = cond3_const.is_finite();

    let verdict = if bad_phi || bad_dphi || !cond3 {
        Verdict::Inconclusive
    } else {
        Verdict::from_bool(cond4)
    };
    let summary = format!(
        "flow continuity: lim ||phi_t - id|| ~ {l_phi:.3e}, lim ||phi_t' - 1|| ~ {l_dphi:.3e}; \
         uniform bound: sup ||T_t f||/||f|| = {cond3_const:.4}"
    );
    Ok(CriterionVerdict::new(ID, verdict, summary, tol)
        .with("polynomial_dense", true)
        .with("t_grid", T_GRID)
        .with("phi_minus_id", phi_norms.iter().map(|n| n.value).collect::<Vec<_>>())
        .with("dphi_minus_one", dphi_norms.iter().map(|n| n.value).collect::<Vec<_>>())
        .with("limit_phi", l_phi)
        .with("limit_dphi", l_dphi)
        .with("battery_ratios", ratios)
        .with("battery_skipped", skipped))
}

/// Functions used to probe uniform boundedness of `T_t` near `t = 0`.
pub fn continuity_battery() -> Vec<ClosedForm> {
    let c = |x: f64| Complex64::new(x, 0.0);
    vec![
        ClosedForm::constant(1.0),
        ClosedForm::Polynomial { coeffs: vec![c(0.0), c(1.0)] },
        ClosedForm::Polynomial { coeffs: vec![c(0.0), c(0.0), c(1.0)] },
        ClosedForm::Polynomial { coeffs: vec![c(1.0), c(0.5), c(0.0), c(0.0), c(0.0), c(0.25)] },
        ClosedForm::power_of_one_minus_z(0.5),
        ClosedForm::power_of_one_minus_z(-0.25),
        ClosedForm::logarithm(),
        ClosedForm::Binomial { scale: c(1.0), omega: c(-1.0), exponent: -0.25 },
        ClosedForm::Binomial { scale: c(1.0), omega: Complex64::new(0.0, 1.0), exponent: -0.25 },
        ClosedForm::Binomial { scale: c(1.0), omega: c(0.5), exponent: -2.0 },
    ]
}

/// `φ_t` and `φ_t′` as series on the largest circle mapped inside `|w| ≤ r`.
pub fn flow_series(gen: &Generator, t: f64, n: usize, r: f64, tol: &Tolerances) -> Result<(PowerSeries, PowerSeries)> {
    let id = PowerSeries::identity(r)?.truncate(n);
    let one = PowerSeries::constant(ONE, r)?;
    let phi = crate::operators::apply_weighted_composition(gen, t, &id, tol.ode_tol)?;
    // T_t 1 = φ_t′ and T_t z = φ_t′ φ_t share the validity circle.
    let dphi = crate::operators::apply_weighted_composition(gen, t, &one, tol.ode_tol)?;
    let rr = phi.r_max().min(dphi.r_max());
    let phi_only = PowerSeries::from_circle_samples(
        |zs| Ok(flow(gen, t, zs, tol.ode_tol)?.phi),
        rr,
        n,
    )?;
    Ok((phi_only, dphi.restrict(rr)?))
}

/// `1/P ∈ H₀(∞,∞,1)`, equivalently `[φ_t′, X] = X₀` for an interior Denjoy–Wolff point.
pub fn interior_dw_dichotomy(
    gen: &Generator,
    x: &SpaceSpec,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<CriterionVerdict> {
    if gen.is_trivial() {
        return Err(LabError::TrivialSemigroup);
    }
    if gen.mode() != DwMode::Interior {
        return Err(LabError::InvalidGenerator("interior_dichotomy needs |b| < 1".into()));
    }
    let inv = match gen.p() {
        Analytic::Closed(c) => match c.reciprocal() {
            Some(r) => Symbol::Closed(r),
            None => Symbol::Series(c.expand(res.degree, res.r_max)?.reciprocal()?),
        },
        Analytic::Series(s) => Symbol::Series(s.reciprocal()?),
    };
    let prof = profile_h_inf_inf_1(&inv, res, tol)?;
    let mut v = little_oh_verdict("interior_dichotomy", &prof, tol);
    v.summary = match v.verdict {
        Verdict::Holds => format!("1/P in H0(inf,inf,1): maximal subspace equals little-oh space ({})", v.summary),
        Verdict::Fails => format!("1/P not in H0(inf,inf,1): maximal subspace strictly larger ({})", v.summary),
        Verdict::Inconclusive => v.summary,
    };
    Ok(v.with("space", x.label()).with("generator", gen.label()))
}

/// Witness `(1 − ζ̄z)^{−γ}` singular at a boundary point `ζ`.
fn singular_witness(x: &SpaceSpec, zeta: Complex64) -> Result<ClosedForm> {
    let gamma = match x.big_space() {
        SpaceSpec::MixedNorm { p, alpha, .. } => alpha + p.recip(),
        SpaceSpec::WeightedBanach { weight: Weight::StandardPower { gamma } } => gamma,
        other => {
            return Err(LabError::InvalidWitness(format!(
                "no default witness for {}; pass one explicitly",
                other.label()
            )))
        }
    };
    Ok(ClosedForm::Binomial { scale: ONE, omega: zeta.conj(), exponent: -gamma })
}

/// `X₀ ⊊ [φ_t′, X]` for a boundary Denjoy–Wolff point, shown by a witness.
pub fn boundary_dw_strictness(
    gen: &Generator,
    x: &SpaceSpec,
    witness: Option<&ClosedForm>,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<CriterionVerdict> {
    const ID: &str = "boundary_strict";
    if gen.mode() != DwMode::Boundary {
        return Err(LabError::InvalidGenerator("boundary_strict needs |b| = 1".into()));
    }
    let x = x.big_space();
    let w = match witness {
        Some(w) => w.clone(),
        None => singular_witness(&x, gen.b())?,
    };
    let f = w.expand(res.degree, res.r_max)?;
    let nf = means::norm(&f, &x, res, tol)?;
    if nf.is_infinite() {
        return Err(LabError::InvalidWitness(format!("{} is not in {}", w.label(), x.label())));
    }
    let in_x = Verdict::from_bool(nf.is_finite()).max_inconclusive(nf.status == NormStatus::Borderline);
    let lp = means::limit_profile(&f, &x, res, tol)?;
    let lo = little_oh_verdict("little_oh", &lp, tol);
    let not_little_oh = match lo.verdict {
        Verdict::Holds => Verdict::Fails,
        Verdict::Fails => Verdict::Holds,
        Verdict::Inconclusive => Verdict::Inconclusive,
    };
    let core = maximal_subspace_member(gen, &f, &x, res, tol)?;
    let subs = [in_x, not_little_oh, core.verdict];
    let verdict = if subs.contains(&Verdict::Fails) {
        Verdict::Fails
    } else if subs.contains(&Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    };
    let summary = format!(
        "witness {}: in X {}, outside X0 {}, in core {}",
        w.label(),
        in_x.as_str(),
        not_little_oh.as_str(),
        core.verdict.as_str()
    );
    Ok(CriterionVerdict::new(ID, verdict, summary, tol)
        .with("space", x.label())
        .with("witness", &w)
        .with("norm", &nf)
        .with("little_oh_check", &lo.evidence)
        .with("core_check", &core.evidence))
}

trait Downgrade {
    fn max_inconclusive(self, borderline: bool) -> Self;
}

impl Downgrade for Verdict {
    fn max_inconclusive(self, borderline: bool) -> Self {
        if borderline {
            Verdict::Inconclusive
        } else {
            self
        }
    }
}

/// No nontrivial semigroup is strongly continuous on a big space `H(p,∞,α)` or `H_v^∞`.
///
/// Tests the necessary condition `|G(z)| ≤ C(1 − |z|)` with `C → 0` against
/// the growth of `max_{|z|=r}|G|/(1 − r)`, and cross-checks with the
/// continuity profile of a witness singular at a point moved by the flow.
pub fn no_nontrivial_on_big_space(
    gen: &Generator,
    x: &SpaceSpec,
    witness: Option<&ClosedForm>,
    res: &Resolution,
    tol: &Tolerances,
) -> Result<CriterionVerdict> {
    const ID: &str = "no_nontrivial_big";
    x.validate()?;
    if !x.is_big_space() {
        return Err(LabError::InvalidSpace(format!("{} is not a big space", x.label())));
    }
    if gen.is_trivial() {
        return Ok(CriterionVerdict::new(ID, Verdict::Inconclusive, "trivial semigroup: not applicable", tol)
            .with("trivial", true));
    }
    let prof = sup_profile(|z| gen.g(z), |r| 1.0 / (1.0 - r), res, tol);
    let e = exponent_of(&prof);
    let necessary_violated = match prof.fit.class {
        GrowthClass::Unbounded => Verdict::Holds,
        GrowthClass::Converges { limit } if limit > tol.eps_limit => Verdict::Holds,
        GrowthClass::Converges { .. } | GrowthClass::Vanishing => Verdict::Fails,
        GrowthClass::Borderline => Verdict::Inconclusive,
    };
    let zeta = match gen.mode() {
        DwMode::Boundary => -gen.b(),
        DwMode::Interior if gen.b().norm() > 0.0 => -gen.b() / gen.b().norm(),
        DwMode::Interior => -ONE,
    };
    let w = match witness {
        Some(w) => w.clone(),
        None => singular_witness(x, zeta)?,
    };
    let f = w.expand(res.degree, res.r_max)?;
    let cp = continuity_profile(gen, &f, x, &CROSS_CHECK_T, res, tol)?;
    let floor = cp.min_lower_bound();
    let floor_positive = floor > tol.eps_limit;
    let verdict = match (necessary_violated, floor_positive) {
        (Verdict::Holds, true) => Verdict::Holds,
        (Verdict::Fails, false) => Verdict::Fails,
        _ => Verdict::Inconclusive,
    };
    let summary = format!(
        "max|G|/(1-r) growth exponent {e:.4} ({}); witness {} keeps ||T_t f - f|| >= {floor:.4}",
        necessary_violated.as_str(),
        w.label()
    );
    Ok(CriterionVerdict::new(ID, verdict, summary, tol)
        .with("space", x.label())
        .with("g_profile_r", &prof.r)
        .with("g_profile", &prof.values)
        .with("g_fit", &prof.fit)
        .with("witness", &w)
        .with("witness_floor", floor)
        .with("continuity_profile", &cp))
}

/// Almost-monotonicity of samples: `x_i ≤ C x_j` for `i < j` (increasing) or `x_j ≤ C x_i`.
fn almost_monotone(vals: &[f64], c: f64, increasing: bool) -> bool {
    let mut extreme = if increasing { 0.0_f64 } else { f64::INFINITY };
    for &v in vals {
        if increasing {
            // all earlier samples ≤ C·v
            if extreme > c * v {
                return false;
            }
            extreme = extreme.max(v);
        } else {
            if v > c * extreme {
                return false;
            }
            extreme = extreme.min(v);
        }
    }
    true
}

/// Candidate exponents `2^{k/8}`.
pub fn exponent_candidates() -> Vec<f64> {
    (-32..=32).map(|k| 2f64.powf(k as f64 / 8.0)).collect()
}

/// Properties (U) and (L) of a radial weight with power witnesses.
pub fn weight_normality(v: &Weight, res: &Resolution, tol: &Tolerances) -> Result<CriterionVerdict> {
    const ID: &str = "weight_normality";
    v.validate()?;
    if !means::is_typical(v, res, tol) {
        return Err(LabError::UnsupportedWeight(format!("{} is not typical (v(r) does not tend to 0)", v.label())));
    }
    let r = res.radial_grid();
    let vals: Vec<f64> = r.iter().map(|r| v.eval(*r)).collect();
    let ratio = |a: f64| -> Profile {
        let q: Vec<f64> = r.iter().zip(&vals).map(|(r, v)| v / (1.0 - r).powf(a)).collect();
        Profile::from_samples(r.clone(), q, tol)
    };
    let u_ok = |a: f64| {
        let p = ratio(a);
        almost_monotone(&p.values, tol.c_mono, true) && exponent_of(&p) >= -tol.tol_zero
    };
    let l_ok = |b: f64| {
        let p = ratio(b);
        almost_monotone(&p.values, tol.c_mono, false) && exponent_of(&p) <= tol.tol_zero
    };
    let cands = exponent_candidates();
    let alpha = cands.iter().copied().find(|a| u_ok(*a));
    let beta = cands.iter().rev().copied().find(|b| l_ok(*b));
    let verdict = Verdict::from_bool(alpha.is_some() && beta.is_some());
    let show = |x: Option<f64>| x.map_or("none".to_string(), |x| format!("{x:.4}"));
    let summary = format!(
        "(U) witness alpha = {}, (L) witness beta = {}{}",
        show(alpha),
        show(beta),
        if verdict == Verdict::Holds { "; normal weight, quasi-normal pathway enabled" } else { "" }
    );
    Ok(CriterionVerdict::new(ID, verdict, summary, tol)
        .with("weight", v.label())
        .with("alpha_u", alpha)
        .with("beta_l", beta)
        .with("c_mono", tol.c_mono)
        .with("candidates", cands.len()))
}
