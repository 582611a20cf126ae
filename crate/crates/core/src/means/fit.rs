use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Decision thresholds used by profile classification and the criteria.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// `|e| ≤ tol_zero` counts as a flat (convergent) profile.
    pub tol_zero: f64,
    /// `|e| > band` counts as definite growth or decay.
    pub band: f64,
    /// Extrapolated limits at or below this are zero.
    pub eps_limit: f64,
    /// Constant allowed in almost-monotonicity checks.
    pub c_mono: f64,
    /// Continuity limits are zero when below `continuity_rel · ‖f‖`.
    pub continuity_rel: f64,
    /// Local tolerance of the flow integrator.
    pub ode_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_zero: 0.005,
            band: 0.05,
            eps_limit: 1e-3,
            c_mono: 4.0,
            continuity_rel: 1e-2,
            ode_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> crate::Result<()> {
        let all = [
            self.tol_zero,
            self.band,
            self.eps_limit,
            self.c_mono,
            self.continuity_rel,
            self.ode_tol,
        ];
        if all.iter().any(|x| !(x.is_finite() && *x > 0.0)) || self.tol_zero >= self.band {
            return Err(crate::LabError::InvalidArgument(
                "tolerances must be positive with tol_zero < band".into(),
            ));
        }
        if self.c_mono < 1.0 {
            return Err(crate::LabError::InvalidArgument("c_mono must be at least 1".into()));
        }
        Ok(())
    }
}

/// Asymptotic behaviour of a positive profile `P(δ)` as `δ = 1 − r → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum GrowthClass {
    /// Decays like a positive power of `δ`.
    Vanishing,
    /// Tends to a finite positive limit.
    Converges { limit: f64 },
    /// Exponent inside the undecidable band.
    Borderline,
    /// Grows like a negative power of `δ`.
    Unbounded,
}

/// Least-squares fit `log P ≈ a + e·log(1/δ) + b·δ` over the last decade.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    /// Growth exponent `e`; `None` for an identically zero profile.
    pub exponent: Option<f64>,
    pub log_amplitude: f64,
    pub correction: f64,
    pub rms_residual: f64,
    pub points: usize,
    pub class: GrowthClass,
}

impl GrowthFit {
    pub fn limit(&self) -> Option<f64> {
        match self.class {
            GrowthClass::Vanishing => Some(0.0),
            GrowthClass::Converges { limit } => Some(limit),
            GrowthClass::Borderline => None,
            GrowthClass::Unbounded => Some(f64::INFINITY),
        }
    }

    pub fn is_bounded(&self) -> Option<bool> {
        match self.class {
            GrowthClass::Vanishing | GrowthClass::Converges { .. } => Some(true),
            GrowthClass::Unbounded => Some(false),
            GrowthClass::Borderline => None,
        }
    }
}

fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Option<Vec<f64>> {
    let n = rows.len();
    let k = rows.first()?.len();
    if n < k {
        return None;
    }
    let x = DMatrix::from_fn(n, k, |i, j| rows[i][j]);
    let y = DVector::from_column_slice(y);
    let sol = x.svd(true, true).solve(&y, 1e-13).ok()?;
    Some(sol.iter().copied().collect())
}

/// Points of `(delta, value)` inside the last decade above `delta_min`.
fn last_decade(deltas: &[f64], values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let d_min = deltas.iter().cloned().fold(f64::INFINITY, f64::min);
    let cut = 10.0 * d_min * (1.0 + 1e-9);
    deltas
        .iter()
        .zip(values)
        .filter(|(d, _)| **d <= cut)
        .map(|(d, v)| (*d, *v))
        .unzip()
}

/// Fits the growth model on the last decade of the profile and classifies it.
///
/// `deltas` are the values `1 − r` of the profile samples.
pub fn fit_growth(deltas: &[f64], values: &[f64], tol: &Tolerances) -> GrowthFit {
    let (d, v) = last_decade(deltas, values);
    let peak = v.iter().cloned().fold(0.0, f64::max);
    if peak <= 0.0 || !peak.is_finite() {
        let class = if peak.is_finite() { GrowthClass::Vanishing } else { GrowthClass::Unbounded };
        return GrowthFit {
            exponent: None,
            log_amplitude: f64::NEG_INFINITY.max(-1e300),
            correction: 0.0,
            rms_residual: 0.0,
            points: d.len(),
            class,
        };
    }
    let floor = peak * 1e-300_f64.max(f64::MIN_POSITIVE);
    let logs: Vec<f64> = v.iter().map(|x| x.max(floor).ln()).collect();
    let rows: Vec<Vec<f64>> = d.iter().map(|x| vec![1.0, -x.ln(), *x]).collect();
    let (a, e, b) = match least_squares(&rows, &logs) {
        Some(s) => (s[0], s[1], s[2]),
        None => {
            // Too few points for the correction term: two-parameter fit.
            let rows2: Vec<Vec<f64>> = d.iter().map(|x| vec![1.0, -x.ln()]).collect();
            match least_squares(&rows2, &logs) {
                Some(s) => (s[0], s[1], 0.0),
                None => (logs[0], 0.0, 0.0),
            }
        }
    };
    let rms = (rows
        .iter()
        .zip(&logs)
        .map(|(r, y)| {
            let m = a + e * r[1] + b * r[2];
            (m - y).powi(2)
        })
        .sum::<f64>()
        / rows.len() as f64)
        .sqrt();

    let class = if e > tol.band {
        GrowthClass::Unbounded
    } else if e < -tol.band {
        GrowthClass::Vanishing
    } else if e.abs() <= tol.tol_zero {
        // Refit with a flat leading term to read off the limit.
        let rows0: Vec<Vec<f64>> = d.iter().map(|x| vec![1.0, *x]).collect();
        let a0 = least_squares(&rows0, &logs).map(|s| s[0]).unwrap_or(a);
        GrowthClass::Converges { limit: a0.exp() }
    } else {
        GrowthClass::Borderline
    };
    GrowthFit {
        exponent: Some(e),
        log_amplitude: a,
        correction: b,
        rms_residual: rms,
        points: d.len(),
        class,
    }
}

/// Linear least-squares intercept of `y ≈ c + k·t` with a one-sigma band.
pub fn linear_intercept(ts: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let rows: Vec<Vec<f64>> = ts.iter().map(|t| vec![1.0, *t]).collect();
    let Some(s) = least_squares(&rows, ys) else {
        let last = ys.last().copied().unwrap_or(0.0);
        return (last, 0.0, f64::INFINITY);
    };
    let (c, k) = (s[0], s[1]);
    let n = ts.len() as f64;
    let dof = (n - 2.0).max(1.0);
    let sse: f64 = ts.iter().zip(ys).map(|(t, y)| (c + k * t - y).powi(2)).sum();
    let sigma2 = sse / dof;
    let mean_t = ts.iter().sum::<f64>() / n;
    let sxx: f64 = ts.iter().map(|t| (t - mean_t).powi(2)).sum();
    let se = if sxx > 0.0 { (sigma2 * (1.0 / n + mean_t * mean_t / sxx)).sqrt() } else { f64::INFINITY };
    (c, k, se)
}
