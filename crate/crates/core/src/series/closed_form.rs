use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PowerSeries;
use crate::{LabError, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Analytic functions with known Taylor coefficients and explicit remainders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedForm {
    Constant { value: Complex64 },
    Polynomial { coeffs: Vec<Complex64> },
    /// `scale · (1 − ω z)^exponent` with `|ω| ≤ 1`.
    Binomial { scale: Complex64, omega: Complex64, exponent: f64 },
    /// `−scale · log(1 − ω z)` with `|ω| ≤ 1`.
    Logarithm { scale: Complex64, omega: Complex64 },
    /// `λ (z − a) / (1 − ā z)` with `|λ| = 1`, `|a| < 1`.
    Moebius { rotation: Complex64, a: Complex64 },
    /// `(1 − |z|²)^s / (1 − z̄ w)^{2s}` with `s = α + 1/p`.
    TestFunction { point: Complex64, alpha: f64, p: f64 },
}

impl ClosedForm {
    pub fn constant(c: f64) -> Self {
        ClosedForm::Constant { value: Complex64::new(c, 0.0) }
    }

    /// `(1 − z)^{−β}`, β > 0.
    pub fn binomial_pole(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(LabError::InvalidClosedForm(format!(
                "pole exponent must be positive, got {beta}"
            )));
        }
        Ok(ClosedForm::Binomial { scale: ONE, omega: ONE, exponent: -beta })
    }

    /// `(1 − z)^e` for any real `e`.
    pub fn power_of_one_minus_z(e: f64) -> Self {
        ClosedForm::Binomial { scale: ONE, omega: ONE, exponent: e }
    }

    /// `−log(1 − z)`.
    pub fn logarithm() -> Self {
        ClosedForm::Logarithm { scale: ONE, omega: ONE }
    }

    pub fn moebius(rotation: Complex64, a: Complex64) -> Result<Self> {
        let cf = ClosedForm::Moebius { rotation, a };
        cf.validate()?;
        Ok(cf)
    }

    pub fn test_function(point: Complex64, alpha: f64, p: f64) -> Result<Self> {
        let cf = ClosedForm::TestFunction { point, alpha, p };
        cf.validate()?;
        Ok(cf)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(LabError::InvalidClosedForm(m));
        match self {
            ClosedForm::Constant { value } => {
                if !value.is_finite() {
                    return bad("non-finite constant".into());
                }
            }
            ClosedForm::Polynomial { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return bad("non-finite polynomial coefficient".into());
                }
            }
            ClosedForm::Binomial { scale, omega, exponent } => {
                if !scale.is_finite() || !exponent.is_finite() || !(omega.norm() <= 1.0 + 1e-14) {
                    return bad(format!("binomial parameters out of range: ω={omega}, e={exponent}"));
                }
            }
            ClosedForm::Logarithm { scale, omega } => {
                if !scale.is_finite() || !(omega.norm() <= 1.0 + 1e-14) {
                    return bad(format!("logarithm parameter |ω| > 1: {omega}"));
                }
            }
            ClosedForm::Moebius { rotation, a } => {
                if !(a.norm() < 1.0) || (rotation.norm() - 1.0).abs() > 1e-12 {
                    return bad(format!(
                        "not a disk automorphism: λ={rotation}, a={a}"
                    ));
                }
            }
            ClosedForm::TestFunction { point, alpha, p } => {
                if !(point.norm() < 1.0) || !(*p > 0.0) || !(alpha + 1.0 / p > 0.0) {
                    return bad(format!(
                        "test function needs |z|<1 and α+1/p>0: z={point}, α={alpha}, p={p}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Rewrites the test function as a binomial.
    fn normalized(&self) -> Self {
        match self {
            ClosedForm::TestFunction { point, alpha, p } => {
                let s = alpha + 1.0 / p;
                ClosedForm::Binomial {
                    scale: Complex64::new((1.0 - point.norm_sqr()).powf(s), 0.0),
                    omega: point.conj(),
                    exponent: -2.0 * s,
                }
            }
            other => other.clone(),
        }
    }

    /// Direct evaluation (principal branches).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self.normalized() {
            ClosedForm::Constant { value } => value,
            ClosedForm::Polynomial { coeffs } => coeffs.iter().rev().fold(ZERO, |s, c| s * z + c),
            ClosedForm::Binomial { scale, omega, exponent } => {
                let base = ONE - omega * z;
                if base == ZERO {
                    return if exponent > 0.0 { ZERO } else { Complex64::new(f64::INFINITY, 0.0) };
                }
                scale * base.powf(exponent)
            }
            ClosedForm::Logarithm { scale, omega } => -scale * (ONE - omega * z).ln(),
            ClosedForm::Moebius { rotation, a } => rotation * (z - a) / (ONE - a.conj() * z),
            ClosedForm::TestFunction { .. } => unreachable!(),
        }
    }

    /// Degree-`n` Taylor polynomial at 0 with a remainder bound on `|z| ≤ r_max`.
    pub fn expand(&self, n: usize, r_max: f64) -> Result<PowerSeries> {
        self.validate()?;
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(LabError::InvalidArgument(format!(
                "validity radius must lie in (0,1), got {r_max}"
            )));
        }
        let rho = r_max;
        let (coeffs, tail) = match self.normalized() {
            ClosedForm::Constant { value } => {
                let mut c = vec![ZERO; n + 1];
                c[0] = value;
                (c, 0.0)
            }
            ClosedForm::Polynomial { coeffs } => {
                let mut c = vec![ZERO; n + 1];
                let mut tail = 0.0;
                for (k, a) in coeffs.iter().enumerate() {
                    if k <= n {
                        c[k] = *a;
                    } else {
                        tail += a.norm() * rho.powi(k as i32);
                    }
                }
                (c, tail)
            }
            ClosedForm::Binomial { scale, omega, exponent } => {
                binomial_expansion(scale, omega, exponent, n, rho)
            }
            ClosedForm::Logarithm { scale, omega } => {
                let mut c = vec![ZERO; n + 1];
                let mut wk = ONE;
                for (k, ck) in c.iter_mut().enumerate().skip(1) {
                    wk *= omega;
                    *ck = scale * wk / k as f64;
                }
                let q = omega.norm() * rho;
                let tail = scale.norm() * q.powi(n as i32 + 1) / ((n + 1) as f64 * (1.0 - q));
                (c, tail)
            }
            ClosedForm::Moebius { rotation, a } => {
                let mut c = vec![ZERO; n + 1];
                c[0] = -rotation * a;
                let m = 1.0 - a.norm_sqr();
                let ab = a.conj();
                let mut ak = ONE;
                for ck in c.iter_mut().skip(1) {
                    *ck = rotation * m * ak;
                    ak *= ab;
                }
                let s = a.norm();
                let tail = m * s.powi(n as i32) * rho.powi(n as i32 + 1) / (1.0 - s * rho);
                (c, tail)
            }
            ClosedForm::TestFunction { .. } => unreachable!(),
        };
        PowerSeries::new(coeffs, tail, r_max)
    }

    /// `z ↦ f(u z)` for `|u| = 1`.
    pub fn rotate(&self, u: Complex64) -> Self {
        match self {
            ClosedForm::Constant { .. } => self.clone(),
            ClosedForm::Polynomial { coeffs } => {
                let mut uk = ONE;
                ClosedForm::Polynomial {
                    coeffs: coeffs
                        .iter()
                        .map(|c| {
                            let v = c * uk;
                            uk *= u;
                            v
                        })
                        .collect(),
                }
            }
            ClosedForm::Binomial { scale, omega, exponent } => {
                ClosedForm::Binomial { scale: *scale, omega: omega * u, exponent: *exponent }
            }
            ClosedForm::Logarithm { scale, omega } => {
                ClosedForm::Logarithm { scale: *scale, omega: omega * u }
            }
            ClosedForm::Moebius { rotation, a } => {
                ClosedForm::Moebius { rotation: rotation * u, a: a * u.conj() }
            }
            ClosedForm::TestFunction { point, alpha, p } => {
                ClosedForm::TestFunction { point: point * u.conj(), alpha: *alpha, p: *p }
            }
        }
    }

    /// `c · f`, unless `f` is a Möbius map (not closed under scaling).
    pub fn scaled(&self, c: Complex64) -> Option<Self> {
        Some(match self.normalized() {
            ClosedForm::Constant { value } => ClosedForm::Constant { value: value * c },
            ClosedForm::Polynomial { coeffs } => {
                ClosedForm::Polynomial { coeffs: coeffs.iter().map(|a| a * c).collect() }
            }
            ClosedForm::Binomial { scale, omega, exponent } => {
                ClosedForm::Binomial { scale: scale * c, omega, exponent }
            }
            ClosedForm::Logarithm { scale, omega } => {
                ClosedForm::Logarithm { scale: scale * c, omega }
            }
            ClosedForm::Moebius { .. } => return None,
            ClosedForm::TestFunction { .. } => unreachable!(),
        })
    }

    /// `1/f` when it is again a closed form.
    pub fn reciprocal(&self) -> Option<Self> {
        match self.normalized() {
            ClosedForm::Constant { value } if value != ZERO => {
                Some(ClosedForm::Constant { value: value.inv() })
            }
            ClosedForm::Polynomial { coeffs } if coeffs.len() == 1 && coeffs[0] != ZERO => {
                Some(ClosedForm::Constant { value: coeffs[0].inv() })
            }
            ClosedForm::Binomial { scale, omega, exponent } if scale != ZERO => {
                Some(ClosedForm::Binomial { scale: scale.inv(), omega, exponent: -exponent })
            }
            _ => None,
        }
    }

    /// `f′` when it is again a closed form.
    pub fn derivative(&self) -> Option<Self> {
        match self.normalized() {
            ClosedForm::Constant { .. } => Some(ClosedForm::Constant { value: ZERO }),
            ClosedForm::Polynomial { coeffs } => Some(ClosedForm::Polynomial {
                coeffs: coeffs.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect(),
            }),
            ClosedForm::Binomial { scale, omega, exponent } => Some(ClosedForm::Binomial {
                scale: -scale * omega * exponent,
                omega,
                exponent: exponent - 1.0,
            }),
            ClosedForm::Logarithm { scale, omega } => {
                Some(ClosedForm::Binomial { scale: scale * omega, omega, exponent: -1.0 })
            }
            ClosedForm::Moebius { rotation, a } => Some(ClosedForm::Binomial {
                scale: rotation * (1.0 - a.norm_sqr()),
                omega: a.conj(),
                exponent: -2.0,
            }),
            ClosedForm::TestFunction { .. } => unreachable!(),
        }
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        match self {
            ClosedForm::Constant { value } => fmt_c(*value),
            ClosedForm::Polynomial { coeffs } => {
                let terms: Vec<String> =
                    coeffs.iter().enumerate().map(|(k, c)| format!("{}z^{k}", fmt_c(*c))).collect();
                terms.join(" + ")
            }
            ClosedForm::Binomial { scale, omega, exponent } => {
                format!("{}(1-{}z)^{exponent}", fmt_c(*scale), fmt_c(*omega))
            }
            ClosedForm::Logarithm { scale, omega } => {
                format!("-{}log(1-{}z)", fmt_c(*scale), fmt_c(*omega))
            }
            ClosedForm::Moebius { rotation, a } => {
                format!("{}(z-{})/(1-conj({})z)", fmt_c(*rotation), fmt_c(*a), fmt_c(*a))
            }
            ClosedForm::TestFunction { point, alpha, p } => {
                format!("f_{}[alpha={alpha},p={p}]", fmt_c(*point))
            }
        }
    }
}

fn fmt_c(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

/// Coefficients of `scale (1 − ωz)^e` up to degree `n` and the remainder on `|z| ≤ ρ`.
///
/// The remainder sums terms explicitly until the ratio bound
/// `|ω|ρ · max(1, (k − e)/(k + 1))` drops below one, then closes with a
/// geometric series.
fn binomial_expansion(
    scale: Complex64,
    omega: Complex64,
    e: f64,
    n: usize,
    rho: f64,
) -> (Vec<Complex64>, f64) {
    let mut c = Vec::with_capacity(n + 1);
    let mut d = scale;
    c.push(d);
    for k in 1..=n {
        d *= omega * ((k as f64 - 1.0 - e) / k as f64);
        c.push(d);
    }
    // |d_k| ρ^k for k > n
    let w = omega.norm();
    let mut k = n + 1;
    let mut t = d.norm() * rho.powi(n as i32) * w * rho * ((k as f64 - 1.0 - e).abs() / k as f64);
    let mut tail = 0.0;
    for _ in 0..1_000_000 {
        if t == 0.0 {
            break;
        }
        tail += t;
        let kf = k as f64;
        let q = if kf + 1.0 > e { w * rho * ((kf - e) / (kf + 1.0)).max(1.0) } else { f64::INFINITY };
        if q < 1.0 {
            tail += t * q / (1.0 - q);
            break;
        }
        t *= w * rho * ((kf - e).abs() / (kf + 1.0));
        k += 1;
    }
    (c, tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn constant_expands_exactly() {
        let s = ClosedForm::constant(1.0).expand(4, 0.9).unwrap();
        assert_eq!(s.coeffs().len(), 5);
        assert_eq!(s.coeff(0), ONE);
        assert!(s.coeffs()[1..].iter().all(|c| *c == ZERO));
        assert_eq!(s.tail_bound(), 0.0);
    }

    #[test]
    fn geometric_series_remainder() {
        let s = ClosedForm::binomial_pole(1.0).unwrap().expand(3, 0.5).unwrap();
        for k in 0..4 {
            assert!((s.coeff(k) - ONE).norm() < 1e-15);
        }
        let exact = 0.5f64.powi(4) / 0.5;
        assert!(s.tail_bound() >= exact * (1.0 - 1e-12));
        assert!(s.tail_bound() <= exact * (1.0 + 1e-12));
    }

    #[test]
    fn log_coefficients() {
        let s = ClosedForm::logarithm().expand(3, 0.5).unwrap();
        let want = [0.0, 1.0, 0.5, 1.0 / 3.0];
        for (k, w) in want.iter().enumerate() {
            assert!((s.coeff(k) - c64(*w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ClosedForm::binomial_pole(0.0).is_err());
        assert!(ClosedForm::binomial_pole(-1.0).is_err());
        assert!(ClosedForm::moebius(ONE, c64(1.0, 0.0)).is_err());
        assert!(ClosedForm::moebius(c64(2.0, 0.0), ZERO).is_err());
    }

    #[test]
    fn test_function_peak_value() {
        let z = c64(0.3, 0.4);
        let f = ClosedForm::test_function(z, 1.0, 2.0).unwrap();
        let want = (1.0 - z.norm_sqr()).powf(-1.5);
        assert!((f.eval(z).norm() - want).abs() < 1e-12);
    }

    #[test]
    fn derivative_of_moebius() {
        let m = ClosedForm::moebius(c64(0.0, 1.0), c64(0.2, -0.1)).unwrap();
        let d = m.derivative().unwrap();
        let z = c64(0.1, 0.3);
        let h = 1e-6;
        let fd = (m.eval(z + h) - m.eval(z - h)) / (2.0 * h);
        assert!((fd - d.eval(z)).norm() < 1e-8);
    }
}
