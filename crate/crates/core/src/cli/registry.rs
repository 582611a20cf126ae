//! The registered experiments, one per characterization result.

use num_complex::Complex64;

use crate::criteria::{
    boundary_dw_strictness, interior_dw_dichotomy, no_nontrivial_on_big_space,
    strong_continuity_sufficient, w_g_classification, weight_normality, CriterionVerdict, Verdict,
};
use crate::means::{self, Resolution, SpaceSpec, Tolerances, Weight};
use crate::operators::{continuity_profile, maximal_subspace_member, Symbol};
use crate::semiflow::{koenigs, koenigs_residual, semigroup_residual, Generator};
use crate::series::ClosedForm;
use crate::{LabError, Result};

use super::config::ExperimentConfig;
use super::report::{CheckedVerdict, Table};

/// Semigroup-law residual accepted by `structural_identities`.
pub const SEMIGROUP_TOL: f64 = 1e-8;
/// Koenigs-identity residual accepted by `structural_identities`.
pub const KOENIGS_TOL: f64 = 1e-6;
/// Validity radius of computed Koenigs functions.
pub const KOENIGS_RADIUS: f64 = 0.97;

pub struct Context<'a> {
    pub cfg: &'a ExperimentConfig,
    pub res: Resolution,
    pub tol: Tolerances,
}

#[derive(Default)]
pub struct Outcome {
    pub verdicts: Vec<CheckedVerdict>,
    pub tables: Vec<Table>,
}

impl Outcome {
    fn check(&mut self, label: String, expected: Option<Verdict>, v: CriterionVerdict) {
        self.verdicts.push(CheckedVerdict::new(label, expected, v));
    }
}

pub struct Experiment {
    pub id: &'static str,
    pub anchor: &'static str,
    pub quote: &'static str,
    pub description: &'static str,
    pub expected: &'static str,
    pub tables: &'static [&'static str],
    run: fn(&Context) -> Result<Outcome>,
}

impl Experiment {
    pub fn run(&self, ctx: &Context) -> Result<Outcome> {
        (self.run)(ctx)
    }
}

pub const REGISTRY: [Experiment; 10] = [
    Experiment {
        id: "sarason_dilation",
        anchor: "Strong continuity of the dilation semigroup on mixed norm spaces",
        quote: "then ‖T_t f − f‖_{p,q,α} → 0; for q = ∞ this holds iff f ∈ H_0(p,∞,α)",
        description: "Continuity profiles ‖T_t f − f‖ of the dilation semigroup for a battery in H(2,2,1) \
                      and for the witness (1−z)^{−(α+1/p)} in H(2,∞,1).",
        expected: "holds for q < ∞ and for little-oh members; fails for the H(p,∞,α) witness",
        tables: &["sarason_profiles"],
        run: run_sarason,
    },
    Experiment {
        id: "separable_strong_continuity",
        anchor: "Sufficient conditions for strong continuity on separable spaces",
        quote: "(1) polynomials are dense in X … (4) ‖φ_t − id‖_X → 0 and ‖φ_t′ − 1‖_X → 0",
        description: "Checks flow continuity at t = 0 by continuity profiles and the uniform bound of T_t on a ten-function battery.",
        expected: "holds for the model semigroups on H(2,2,1) and H^2",
        tables: &["strong_continuity"],
        run: run_separable,
    },
    Experiment {
        id: "maximal_subspace_core",
        anchor: "Characterization of the maximal subspace",
        quote: "[φ_t′, X] = closure of {f ∈ X : (Gf)′ ∈ X}",
        description: "Tests the core condition (Gf)′ ∈ X with a continuity cross-check.",
        expected: "holds for G = 1 − z with f = (1−z)^{−(α+1/p)}; fails for the dilation with the same f",
        tables: &["maximal_subspace"],
        run: run_maximal,
    },
    Experiment {
        id: "wg_bounded",
        anchor: "Boundedness of W_g = M_g V",
        quote: "W_g is bounded ⟺ g ∈ H(∞,∞,1)",
        description: "Classifies (1 − r)M_∞(r, g) on the battery (1−z)^{−s}, −log(1−z), 1.",
        expected: "holds iff the pole order s ≤ 1",
        tables: &["wg_profiles"],
        run: run_wg_bounded,
    },
    Experiment {
        id: "wg_compact",
        anchor: "Compactness of W_g",
        quote: "W_g is compact ⟺ g ∈ H_0(∞,∞,1)",
        description: "Little-oh classification plus the probe ‖W_g f_{z_n}‖ on the normalized test family.",
        expected: "holds iff the pole order s < 1",
        tables: &["wg_profiles", "wg_probe"],
        run: run_wg_compact,
    },
    Experiment {
        id: "no_nontrivial_big",
        anchor: "No strongly continuous semigroup on the big spaces",
        quote: "No nontrivial semigroup of analytic functions induces a strongly continuous semigroup",
        description: "Growth of max|G|/(1 − r) and a continuity profile with a positive floor, on H(2,∞,1) and H_v^∞.",
        expected: "holds for every nontrivial generator",
        tables: &["big_space"],
        run: run_no_nontrivial,
    },
    Experiment {
        id: "interior_dichotomy",
        anchor: "Dichotomy for an interior Denjoy–Wolff point",
        quote: "H_0(p,∞,α) = [φ_t′, H(p,∞,α)] ⟺ 1/P ∈ H_0(∞,∞,1)",
        description: "Decides 1/P ∈ H_0(∞,∞,1) for P ∈ {1, 1/(1−z), 1−z}.",
        expected: "holds for P = 1 and P = 1/(1−z); fails for P = 1 − z",
        tables: &["dichotomy"],
        run: run_interior,
    },
    Experiment {
        id: "boundary_strict",
        anchor: "Strict inclusion for a boundary Denjoy–Wolff point",
        quote: "H_0(p,∞,α) ⊊ [φ_t′, H(p,∞,α)] and H_v^0 ⊊ [φ_t′, H_v^∞]",
        description: "Shows a witness in X, outside X_0 and inside the core of the maximal subspace.",
        expected: "holds for G = 1 − z on H(2,∞,1) and on H_v^∞ with v = 1 − r²",
        tables: &["boundary_strict"],
        run: run_boundary,
    },
    Experiment {
        id: "weight_normality",
        anchor: "Normal weights and the Lusky identification",
        quote: "a weight is normal if it satisfies both properties (U) and (L); then H_v^0 = B^0_{(1−r²)v(r)}",
        description: "Searches power witnesses for almost-monotonicity of v(r)/(1−r)^α and v(r)/(1−r)^β.",
        expected: "holds for (1−r²) and (1−r)log(e/(1−r))",
        tables: &["weights"],
        run: run_weights,
    },
    Experiment {
        id: "structural_identities",
        anchor: "Semigroup law and Koenigs linearization",
        quote: "φ_{t+s} = φ_t ∘ φ_s;  h(φ_t) = e^{G′(b)t} h  or  h(φ_t) = h + t",
        description: "Residuals of the semigroup law and of the Koenigs identity on a polar grid.",
        expected: "holds: residuals ≤ 1e-8 (semigroup law) and ≤ 1e-6 (Koenigs)",
        tables: &["structural"],
        run: run_structural,
    },
];

pub fn find(id: &str) -> Option<&'static Experiment> {
    REGISTRY.iter().find(|e| e.id == id)
}

/// Boundary pole order `s` of a closed form: `|g(z)| ≍ |1 − ω̄z|^{−s}`.
/// Bounded functions and logarithms have order 0.
pub fn pole_order(g: &ClosedForm) -> f64 {
    match g {
        ClosedForm::Binomial { scale, omega, exponent } if *scale != Complex64::new(0.0, 0.0) => {
            if (omega.norm() - 1.0).abs() < 1e-12 {
                (-exponent).max(0.0)
            } else {
                0.0
            }
        }
        _ => 0.0,
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn polynomial(coeffs: &[f64]) -> ClosedForm {
    ClosedForm::Polynomial { coeffs: coeffs.iter().map(|x| c(*x)).collect() }
}

fn battery_or(ctx: &Context, default: Vec<ClosedForm>) -> Vec<ClosedForm> {
    if ctx.cfg.battery.is_empty() {
        default
    } else {
        ctx.cfg.battery.clone()
    }
}

fn generator_or(ctx: &Context, default: Generator) -> Result<Generator> {
    match &ctx.cfg.generator {
        Some(g) => g.build(),
        None => Ok(default),
    }
}

fn big_mixed() -> SpaceSpec {
    SpaceSpec::mixed(2.0, f64::INFINITY, 1.0)
}

fn big_weighted() -> SpaceSpec {
    SpaceSpec::WeightedBanach { weight: Weight::standard(1.0) }
}

/// Whether the theory places `f` in the little-oh subspace of a big space.
fn predicted_little_oh(f: &ClosedForm, x: &SpaceSpec) -> Option<bool> {
    let s = pole_order(f);
    match x.big_space() {
        SpaceSpec::MixedNorm { p, alpha, .. } => Some(s < alpha + p.recip()),
        SpaceSpec::WeightedBanach { weight: Weight::StandardPower { gamma } } => Some(s < gamma),
        _ => None,
    }
}

fn sarason_case(
    ctx: &Context,
    gen: &Generator,
    f: &ClosedForm,
    x: &SpaceSpec,
    table: &mut Table,
) -> Result<CriterionVerdict> {
    let (res, tol) = (&ctx.res, &ctx.tol);
    let s = f.expand(res.degree, res.r_max)?;
    let nf = means::norm(&s, x, res, tol)?;
    if nf.is_infinite() {
        return Err(LabError::Divergent(format!("{} has infinite norm in {}", f.label(), x.label())));
    }
    let cp = continuity_profile(gen, &s, x, &ctx.cfg.grids.t, res, tol)?;
    for (i, t) in cp.t_grid.iter().enumerate() {
        table.push(vec![
            x.label().into(),
            f.label().into(),
            (*t).into(),
            cp.norms[i].into(),
            cp.abs_errors[i].into(),
            cp.lower_bounds[i].into(),
        ]);
    }
    let zero = cp.tends_to_zero(nf.value, tol.continuity_rel);
    let verdict = if cp.divergent || cp.borderline {
        if cp.min_lower_bound() > tol.continuity_rel * nf.value && !x.polynomial_dense() {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        }
    } else {
        Verdict::from_bool(zero && cp.strictly_decreasing())
    };
    let summary = format!(
        "||T_t f - f|| on t = {:?}: extrapolated limit {:.3e} (||f|| = {:.6}), min certified {:.4}",
        cp.t_grid,
        cp.extrapolated_limit,
        nf.value,
        cp.min_lower_bound()
    );
    Ok(CriterionVerdict::new("sarason_dilation", verdict, summary, tol)
        .with("space", x.label())
        .with("function", f.label())
        .with("norm_f", nf.value)
        .with("profile", &cp))
}

fn run_sarason(ctx: &Context) -> Result<Outcome> {
    let gen = generator_or(ctx, Generator::dilation())?;
    let mut out = Outcome::default();
    let mut table = Table::new("sarason_profiles", &["space", "function", "t", "norm", "abs_error", "lower_bound"]);
    let mut cases: Vec<(ClosedForm, SpaceSpec)> = Vec::new();
    match &ctx.cfg.space {
        Some(x) => {
            let bat = battery_or(ctx, vec![ClosedForm::constant(1.0), polynomial(&[0.0, 1.0])]);
            cases.extend(bat.into_iter().map(|f| (f, x.clone())));
        }
        None => {
            let x = SpaceSpec::mixed(2.0, 2.0, 1.0);
            let bat = battery_or(
                ctx,
                vec![
                    ClosedForm::constant(1.0),
                    polynomial(&[0.0, 1.0]),
                    ClosedForm::power_of_one_minus_z(-0.5),
                    ClosedForm::logarithm(),
                ],
            );
            cases.extend(bat.into_iter().map(|f| (f, x.clone())));
            cases.push((ClosedForm::power_of_one_minus_z(-1.5), big_mixed()));
        }
    }
    for (f, x) in cases {
        let v = sarason_case(ctx, &gen, &f, &x, &mut table)?;
        let expected = if x.polynomial_dense() { Some(true) } else { predicted_little_oh(&f, &x) };
        out.check(format!("sarason_dilation[{}; {}]", x.label(), f.label()), expected.map(Verdict::from_bool), v);
    }
    out.tables.push(table);
    Ok(out)
}

fn run_separable(ctx: &Context) -> Result<Outcome> {
    let pairs: Vec<(Generator, SpaceSpec)> = if ctx.cfg.generator.is_some() || ctx.cfg.space.is_some() {
        vec![(
            generator_or(ctx, Generator::dilation())?,
            ctx.cfg.space.clone().unwrap_or(SpaceSpec::mixed(2.0, 2.0, 1.0)),
        )]
    } else {
        vec![
            (Generator::dilation(), SpaceSpec::mixed(2.0, 2.0, 1.0)),
            (Generator::boundary_model(), SpaceSpec::Hardy { p: means::Exponent(2.0) }),
        ]
    };
    let mut out = Outcome::default();
    let mut table = Table::new("strong_continuity", &["generator", "space", "t", "phi_minus_id", "dphi_minus_one"]);
    for (gen, x) in pairs {
        let v = strong_continuity_sufficient(&gen, &x, &ctx.res, &ctx.tol)?;
        if let (Some(a), Some(b), Some(ts)) = (
            v.evidence.get("phi_minus_id").and_then(|v| v.as_array()),
            v.evidence.get("dphi_minus_one").and_then(|v| v.as_array()),
            v.evidence.get("t_grid").and_then(|v| v.as_array()),
        ) {
            for i in 0..ts.len() {
                let num = |v: &serde_json::Value| v.as_f64().unwrap_or(f64::INFINITY);
                table.push(vec![
                    gen.label().into(),
                    x.label().into(),
                    num(&ts[i]).into(),
                    num(&a[i]).into(),
                    num(&b[i]).into(),
                ]);
            }
        }
        let expected = x.polynomial_dense().then_some(Verdict::Holds);
        out.check(format!("separable_strong_continuity[{}; {}]", gen.label(), x.label()), expected, v);
    }
    out.tables.push(table);
    Ok(out)
}

fn run_maximal(ctx: &Context) -> Result<Outcome> {
    let x = ctx.cfg.space.clone().unwrap_or_else(big_mixed);
    let custom = ctx.cfg.generator.is_some() || !ctx.cfg.battery.is_empty() || ctx.cfg.space.is_some();
    let witness = ClosedForm::power_of_one_minus_z(-1.5);
    let cases: Vec<(Generator, ClosedForm, Option<Verdict>)> = if custom {
        let gen = generator_or(ctx, Generator::boundary_model())?;
        battery_or(ctx, vec![witness])
            .into_iter()
            .map(|f| (gen.clone(), f, None))
            .collect()
    } else {
        vec![
            (Generator::dilation(), polynomial(&[1.0, 1.0, 1.0]), Some(Verdict::Holds)),
            (Generator::boundary_model(), witness.clone(), Some(Verdict::Holds)),
            (Generator::dilation(), witness, Some(Verdict::Fails)),
        ]
    };
    let mut out = Outcome::default();
    let mut table = Table::new(
        "maximal_subspace",
        &["generator", "function", "verdict", "tested_norm", "cross_check_limit"],
    );
    for (gen, f, expected) in cases {
        let s = f.expand(ctx.res.degree, ctx.res.r_max)?;
        let v = maximal_subspace_member(&gen, &s, &x, &ctx.res, &ctx.tol)?;
        let tested = v
            .evidence
            .get("tested_norm")
            .and_then(|n| n.get("value"))
            .and_then(|n| n.as_f64())
            .unwrap_or(f64::INFINITY);
        let cross = v
            .evidence
            .get("continuity_cross_check")
            .and_then(|n| n.get("extrapolated_limit"))
            .and_then(|n| n.as_f64())
            .unwrap_or(f64::NAN);
        table.push(vec![
            gen.label().into(),
            f.label().into(),
            v.verdict.as_str().into(),
            tested.into(),
            cross.into(),
        ]);
        out.check(format!("maximal_subspace_core[{}; {}]", gen.label(), f.label()), expected, v);
    }
    out.tables.push(table);
    Ok(out)
}

fn wg_battery(ctx: &Context) -> Vec<ClosedForm> {
    let mut d: Vec<ClosedForm> = [0.25, 0.5, 0.75, 1.0, 1.25]
        .iter()
        .map(|s| ClosedForm::power_of_one_minus_z(-s))
        .collect();
    d.push(ClosedForm::logarithm());
    d.push(ClosedForm::constant(1.0));
    battery_or(ctx, d)
}

fn wg_profile_rows(table: &mut Table, g: &ClosedForm, v: &CriterionVerdict) {
    let arr = |k: &str| -> Vec<f64> {
        v.evidence
            .get(k)
            .and_then(|a| a.as_array())
            .map(|a| a.iter().map(|x| x.as_f64().unwrap_or(f64::NAN)).collect())
            .unwrap_or_default()
    };
    for (r, p) in arr("r").into_iter().zip(arr("profile")) {
        table.push(vec![g.label().into(), r.into(), p.into()]);
    }
}

fn run_wg_bounded(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut table = Table::new("wg_profiles", &["g", "r", "one_minus_r_times_m_inf"]);
    for g in wg_battery(ctx) {
        let v = crate::criteria::in_h_inf_inf_1(&Symbol::Closed(g.clone()), &ctx.res, &ctx.tol)?;
        let mut v = v;
        v.criterion_id = "wg_bounded".into();
        wg_profile_rows(&mut table, &g, &v);
        let expected = Verdict::from_bool(pole_order(&g) <= 1.0);
        out.check(format!("wg_bounded[{}]", g.label()), Some(expected), v);
    }
    out.tables.push(table);
    Ok(out)
}

fn run_wg_compact(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut table = Table::new("wg_profiles", &["g", "r", "one_minus_r_times_m_inf"]);
    let mut probe = Table::new("wg_probe", &["g", "modulus", "norm"]);
    for g in wg_battery(ctx) {
        let sym = Symbol::Closed(g.clone());
        let cls = w_g_classification(&sym, &ctx.res, &ctx.tol)?;
        wg_profile_rows(&mut table, &g, &cls.compact);
        for (m, n) in cls.probe.moduli.iter().zip(&cls.probe.norms) {
            probe.push(vec![g.label().into(), (*m).into(), (*n).into()]);
        }
        let expected = Verdict::from_bool(pole_order(&g) < 1.0);
        out.check(format!("wg_compact[{}]", g.label()), Some(expected), cls.compact);
    }
    out.tables.push(table);
    out.tables.push(probe);
    Ok(out)
}

fn run_no_nontrivial(ctx: &Context) -> Result<Outcome> {
    let gens = match &ctx.cfg.generator {
        Some(g) => vec![g.build()?],
        None => vec![Generator::dilation(), Generator::boundary_model()],
    };
    let spaces = match &ctx.cfg.space {
        Some(x) => vec![x.clone()],
        None => vec![big_mixed(), big_weighted()],
    };
    let mut out = Outcome::default();
    let mut table = Table::new("big_space", &["generator", "space", "t", "norm_lower_bound"]);
    for gen in &gens {
        for x in &spaces {
            let v = no_nontrivial_on_big_space(gen, x, ctx.cfg.witness.as_ref(), &ctx.res, &ctx.tol)?;
            if let Some(cp) = v.evidence.get("continuity_profile") {
                let arr = |k: &str| -> Vec<f64> {
                    cp.get(k)
                        .and_then(|a| a.as_array())
                        .map(|a| a.iter().map(|x| x.as_f64().unwrap_or(f64::NAN)).collect())
                        .unwrap_or_default()
                };
                for (t, lb) in arr("t_grid").into_iter().zip(arr("lower_bounds")) {
                    table.push(vec![gen.label().into(), x.label().into(), t.into(), lb.into()]);
                }
            }
            let expected = (!gen.is_trivial()).then_some(Verdict::Holds);
            out.check(format!("no_nontrivial_big[{}; {}]", gen.label(), x.label()), expected, v);
        }
    }
    out.tables.push(table);
    Ok(out)
}

fn run_interior(ctx: &Context) -> Result<Outcome> {
    let x = ctx.cfg.space.clone().unwrap_or_else(big_mixed);
    let gens: Vec<Generator> = match &ctx.cfg.generator {
        Some(g) => vec![g.build()?],
        None => vec![
            Generator::new(c(0.0), ClosedForm::constant(1.0))?,
            Generator::new(c(0.0), ClosedForm::power_of_one_minus_z(-1.0))?,
            Generator::new(c(0.0), ClosedForm::power_of_one_minus_z(1.0))?,
        ],
    };
    let mut out = Outcome::default();
    let mut table = Table::new("dichotomy", &["generator", "r", "one_minus_r_times_m_inf_inv_p"]);
    for gen in gens {
        let v = interior_dw_dichotomy(&gen, &x, &ctx.res, &ctx.tol)?;
        let start = table.rows.len();
        wg_profile_rows(&mut table, &ClosedForm::constant(0.0), &v);
        for row in &mut table.rows[start..] {
            row[0] = gen.label().into();
        }
        let expected = match gen.p() {
            crate::semiflow::Analytic::Closed(p) => p.reciprocal().map(|inv| Verdict::from_bool(pole_order(&inv) < 1.0)),
            _ => None,
        };
        out.check(format!("interior_dichotomy[{}]", gen.label()), expected, v);
    }
    out.tables.push(table);
    Ok(out)
}

fn run_boundary(ctx: &Context) -> Result<Outcome> {
    let gen = generator_or(ctx, Generator::boundary_model())?;
    let spaces = match &ctx.cfg.space {
        Some(x) => vec![x.clone()],
        None => vec![big_mixed(), big_weighted()],
    };
    let mut out = Outcome::default();
    let mut table = Table::new("boundary_strict", &["space", "witness", "norm", "little_oh_limit", "verdict"]);
    for x in spaces {
        let v = boundary_dw_strictness(&gen, &x, ctx.cfg.witness.as_ref(), &ctx.res, &ctx.tol)?;
        let norm = v.evidence.get("norm").and_then(|n| n.get("value")).and_then(|n| n.as_f64());
        let lim = v
            .evidence
            .get("little_oh_check")
            .and_then(|n| n.get("extrapolated_limit"))
            .and_then(|n| n.as_f64());
        let witness = v
            .evidence
            .get("witness")
            .and_then(|w| serde_json::from_value::<ClosedForm>(w.clone()).ok())
            .map_or_else(|| "?".to_string(), |w| w.label());
        table.push(vec![
            x.label().into(),
            witness.into(),
            norm.unwrap_or(f64::INFINITY).into(),
            lim.unwrap_or(f64::NAN).into(),
            v.verdict.as_str().into(),
        ]);
        let expected = ctx.cfg.witness.is_none().then_some(Verdict::Holds);
        out.check(format!("boundary_strict[{}; {}]", gen.label(), x.label()), expected, v);
    }
    out.tables.push(table);
    Ok(out)
}

fn run_weights(ctx: &Context) -> Result<Outcome> {
    let (weights, expected) = match ctx.cfg.space.as_ref().and_then(|x| x.weight()) {
        Some(w) => (vec![w.clone()], None),
        None => (
            vec![Weight::standard(1.0), Weight::LogPower { gamma: 1.0, kappa: 1.0 }],
            Some(Verdict::Holds),
        ),
    };
    let mut out = Outcome::default();
    let mut table = Table::new("weights", &["weight", "alpha_u", "beta_l", "verdict"]);
    for w in weights {
        let v = weight_normality(&w, &ctx.res, &ctx.tol)?;
        let get = |k: &str| v.evidence.get(k).and_then(|x| x.as_f64()).unwrap_or(f64::NAN);
        table.push(vec![w.label().into(), get("alpha_u").into(), get("beta_l").into(), v.verdict.as_str().into()]);
        out.check(format!("weight_normality[{}]", w.label()), expected, v);
    }
    out.tables.push(table);
    Ok(out)
}

fn run_structural(ctx: &Context) -> Result<Outcome> {
    let gens = match &ctx.cfg.generator {
        Some(g) => vec![g.build()?],
        None => vec![Generator::dilation(), Generator::boundary_model()],
    };
    let zs = ctx.cfg.grids.z.points();
    let tol = &ctx.tol;
    let mut out = Outcome::default();
    let mut table = Table::new("structural", &["generator", "identity", "t", "s", "residual"]);
    let times = [0.1, 0.3, 0.7];
    for gen in gens {
        let mut worst: f64 = 0.0;
        for &t in &times {
            for &s in &times {
                let r = semigroup_residual(&gen, t, s, &zs, tol.ode_tol)?;
                table.push(vec![gen.label().into(), "semigroup_law".into(), t.into(), s.into(), r.into()]);
                worst = worst.max(r);
            }
        }
        let v = CriterionVerdict::new(
            "semigroup_law",
            Verdict::from_bool(worst <= SEMIGROUP_TOL),
            format!("max |phi_(t+s) - phi_t o phi_s| = {worst:.3e}"),
            tol,
        )
        .with("max_residual", worst)
        .with("threshold", SEMIGROUP_TOL);
        out.check(format!("semigroup_law[{}]", gen.label()), Some(Verdict::Holds), v);

        let k = koenigs(&gen, ctx.res.degree, KOENIGS_RADIUS)?;
        let mut worst: f64 = 0.0;
        for &t in &[0.1, 0.5, 1.0] {
            let r = koenigs_residual(&gen, &k, t, &zs, tol.ode_tol)?;
            table.push(vec![gen.label().into(), "koenigs".into(), t.into(), 0.0.into(), r.into()]);
            worst = worst.max(r);
        }
        let v = CriterionVerdict::new(
            "koenigs_identity",
            Verdict::from_bool(worst <= KOENIGS_TOL),
            format!("max Koenigs residual {worst:.3e} ({:?} mode)", k.mode),
            tol,
        )
        .with("max_residual", worst)
        .with("threshold", KOENIGS_TOL)
        .with("h_tail_bound", k.h.tail_bound());
        out.check(format!("koenigs_identity[{}]", gen.label()), Some(Verdict::Holds), v);
    }
    out.tables.push(table);
    Ok(out)
}
