use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{LabError, Result};

/// Integrability exponent in `(0, ∞]`. Serialized as a number or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl Exponent {
    pub const INF: Exponent = Exponent(f64::INFINITY);

    pub fn is_inf(&self) -> bool {
        self.0.is_infinite()
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn recip(&self) -> f64 {
        if self.is_inf() {
            0.0
        } else {
            1.0 / self.0
        }
    }
}

impl From<f64> for Exponent {
    fn from(x: f64) -> Self {
        Exponent(x)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_inf() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Exponent(x)),
            Raw::Text(t) => match t.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => Ok(Exponent::INF),
                other => other
                    .parse::<f64>()
                    .map(Exponent)
                    .map_err(|_| serde::de::Error::custom(format!("bad exponent {t:?}"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    Linear,
    LogLinear,
}

/// Radial weight profile `v(r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "snake_case")]
pub enum Weight {
    /// `(1 − r²)^γ`.
    StandardPower { gamma: f64 },
    /// `(1 − r)^γ · log(e/(1 − r))^κ`.
    LogPower { gamma: f64, kappa: f64 },
    /// Samples `(r_i, v_i)` with `r_0 = 0`, interpolated; `v` at `r → 1` is
    /// the last sample when `r_last = 1`, otherwise held constant.
    UserTable { r: Vec<f64>, v: Vec<f64>, interpolation: Interpolation },
}

impl Weight {
    pub fn standard(gamma: f64) -> Self {
        Weight::StandardPower { gamma }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(LabError::InvalidSpace(m));
        match self {
            Weight::StandardPower { gamma } => {
                if !(gamma.is_finite() && *gamma >= 0.0) {
                    return bad(format!("weight exponent must be nonnegative, got {gamma}"));
                }
            }
            Weight::LogPower { gamma, kappa } => {
                if !(gamma.is_finite() && kappa.is_finite() && *gamma > 0.0) {
                    return bad(format!("log weight needs γ > 0, got γ={gamma}, κ={kappa}"));
                }
            }
            Weight::UserTable { r, v, interpolation } => {
                if r.len() < 2 || r.len() != v.len() {
                    return bad("weight table needs at least two (r, v) pairs".into());
                }
                if r[0] != 0.0 || r.windows(2).any(|w| w[1] <= w[0]) || *r.last().unwrap() > 1.0 {
                    return bad("weight table radii must increase from 0 within [0,1]".into());
                }
                let positive = |x: &f64| x.is_finite() && *x > 0.0;
                let interior = if *r.last().unwrap() == 1.0 { &v[..v.len() - 1] } else { &v[..] };
                if !interior.iter().all(positive) || !v.iter().all(|x| x.is_finite() && *x >= 0.0) {
                    return bad("weight table values must be positive on [0,1)".into());
                }
                if *interpolation == Interpolation::LogLinear && v.iter().any(|x| *x <= 0.0) {
                    return bad("log-linear interpolation needs positive values".into());
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Weight::StandardPower { gamma } => (1.0 - r * r).max(0.0).powf(*gamma),
            Weight::LogPower { gamma, kappa } => {
                let d = (1.0 - r).max(0.0);
                if d == 0.0 {
                    return 0.0;
                }
                d.powf(*gamma) * (1.0 - d.ln()).powf(*kappa)
            }
            Weight::UserTable { r: rs, v, interpolation } => {
                let r = r.clamp(0.0, 1.0);
                let j = rs.partition_point(|x| *x <= r);
                if j == 0 {
                    return v[0];
                }
                if j >= rs.len() {
                    return *v.last().unwrap();
                }
                let (r0, r1, v0, v1) = (rs[j - 1], rs[j], v[j - 1], v[j]);
                let s = (r - r0) / (r1 - r0);
                match interpolation {
                    Interpolation::Linear => v0 + s * (v1 - v0),
                    Interpolation::LogLinear => (v0.ln() + s * (v1.ln() - v0.ln())).exp(),
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Weight::StandardPower { gamma } => format!("(1-r^2)^{gamma}"),
            Weight::LogPower { gamma, kappa } => format!("(1-r)^{gamma}*log(e/(1-r))^{kappa}"),
            Weight::UserTable { r, .. } => format!("table[{}]", r.len()),
        }
    }
}

/// A target space of analytic functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Hardy { p: Exponent },
    /// Weighted Bergman space `A^p_α`, `α > −1`.
    Bergman { p: Exponent, alpha: f64 },
    MixedNorm { p: Exponent, q: Exponent, alpha: f64 },
    /// Little-oh subspace `H₀(p, ∞, α)`.
    MixedNormLittle { p: Exponent, alpha: f64 },
    WeightedBanach { weight: Weight },
    WeightedBanachLittle { weight: Weight },
    WeightedBloch { weight: Weight },
}

impl SpaceSpec {
    pub fn mixed(p: f64, q: f64, alpha: f64) -> Self {
        SpaceSpec::MixedNorm { p: Exponent(p), q: Exponent(q), alpha }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(LabError::InvalidSpace(m));
        let check_p = |p: &Exponent| -> Result<()> {
            if !(p.0 > 0.0) || p.0.is_nan() {
                return Err(LabError::InvalidSpace(format!("exponent must be in (0,∞], got {}", p.0)));
            }
            Ok(())
        };
        match self {
            SpaceSpec::Hardy { p } => check_p(p)?,
            SpaceSpec::Bergman { p, alpha } => {
                check_p(p)?;
                if p.is_inf() {
                    return bad("Bergman exponent must be finite".into());
                }
                if !(*alpha > -1.0 && alpha.is_finite()) {
                    return bad(format!("Bergman weight needs α > −1, got {alpha}"));
                }
            }
            SpaceSpec::MixedNorm { p, q, alpha } => {
                check_p(p)?;
                check_p(q)?;
                if !(*alpha > 0.0 && alpha.is_finite()) {
                    return bad(format!("mixed norm needs α > 0, got {alpha}"));
                }
            }
            SpaceSpec::MixedNormLittle { p, alpha } => {
                check_p(p)?;
                if !(*alpha > 0.0 && alpha.is_finite()) {
                    return bad(format!("mixed norm needs α > 0, got {alpha}"));
                }
            }
            SpaceSpec::WeightedBanach { weight }
            | SpaceSpec::WeightedBanachLittle { weight }
            | SpaceSpec::WeightedBloch { weight } => weight.validate()?,
        }
        Ok(())
    }

    /// Whether polynomials are dense in the space.
    pub fn polynomial_dense(&self) -> bool {
        match self {
            SpaceSpec::Hardy { p } => !p.is_inf(),
            SpaceSpec::Bergman { .. } => true,
            SpaceSpec::MixedNorm { q, .. } => !q.is_inf(),
            SpaceSpec::MixedNormLittle { .. } => true,
            SpaceSpec::WeightedBanachLittle { .. } => true,
            SpaceSpec::WeightedBanach { .. } | SpaceSpec::WeightedBloch { .. } => false,
        }
    }

    /// The sup-type space whose little-oh subspace is meaningful, if any.
    pub fn is_big_space(&self) -> bool {
        matches!(
            self,
            SpaceSpec::MixedNorm { q, .. } if q.is_inf()
        ) || matches!(self, SpaceSpec::WeightedBanach { .. })
    }

    /// `(p, α)` of a mixed-norm family member.
    pub fn mixed_parameters(&self) -> Option<(Exponent, f64)> {
        match self {
            SpaceSpec::MixedNorm { p, alpha, .. } | SpaceSpec::MixedNormLittle { p, alpha } => {
                Some((*p, *alpha))
            }
            _ => None,
        }
    }

    pub fn weight(&self) -> Option<&Weight> {
        match self {
            SpaceSpec::WeightedBanach { weight }
            | SpaceSpec::WeightedBanachLittle { weight }
            | SpaceSpec::WeightedBloch { weight } => Some(weight),
            _ => None,
        }
    }

    /// The big space containing this little-oh space, or itself.
    pub fn big_space(&self) -> SpaceSpec {
        match self {
            SpaceSpec::MixedNormLittle { p, alpha } => {
                SpaceSpec::MixedNorm { p: *p, q: Exponent::INF, alpha: *alpha }
            }
            SpaceSpec::WeightedBanachLittle { weight } => {
                SpaceSpec::WeightedBanach { weight: weight.clone() }
            }
            other => other.clone(),
        }
    }

    pub fn label(&self) -> String {
        let e = |x: &Exponent| if x.is_inf() { "inf".to_string() } else { format!("{}", x.0) };
        match self {
            SpaceSpec::Hardy { p } => format!("H^{}", e(p)),
            SpaceSpec::Bergman { p, alpha } => format!("A^{}_{alpha}", e(p)),
            SpaceSpec::MixedNorm { p, q, alpha } => format!("H({},{},{alpha})", e(p), e(q)),
            SpaceSpec::MixedNormLittle { p, alpha } => format!("H0({},inf,{alpha})", e(p)),
            SpaceSpec::WeightedBanach { weight } => format!("H_v[{}]", weight.label()),
            SpaceSpec::WeightedBanachLittle { weight } => format!("H0_v[{}]", weight.label()),
            SpaceSpec::WeightedBloch { weight } => format!("B_v[{}]", weight.label()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_accepts_inf_strings() {
        let s: SpaceSpec =
            serde_json::from_str(r#"{"family":"mixed_norm","p":2,"q":"inf","alpha":1}"#).unwrap();
        assert_eq!(s, SpaceSpec::mixed(2.0, f64::INFINITY, 1.0));
        assert!(s.is_big_space() && !s.polynomial_dense());
    }

    #[test]
    fn weights_evaluate() {
        assert!((Weight::standard(1.0).eval(0.5) - 0.75).abs() < 1e-15);
        let lp = Weight::LogPower { gamma: 1.0, kappa: 1.0 };
        assert!((lp.eval(0.0) - 1.0).abs() < 1e-15);
        assert_eq!(lp.eval(1.0), 0.0);
        let t = Weight::UserTable {
            r: vec![0.0, 0.5, 1.0],
            v: vec![1.0, 0.5, 0.0],
            interpolation: Interpolation::Linear,
        };
        t.validate().unwrap();
        assert!((t.eval(0.75) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn invalid_spaces_rejected() {
        assert!(SpaceSpec::mixed(2.0, 2.0, 0.0).validate().is_err());
        assert!(SpaceSpec::Bergman { p: Exponent(2.0), alpha: -1.0 }.validate().is_err());
        assert!(SpaceSpec::Hardy { p: Exponent(-1.0) }.validate().is_err());
    }
}
