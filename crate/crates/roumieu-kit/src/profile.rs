//! Derivative-bound profiles.
//!
//! A profile is the sequence `a_p = sup |f^{(p)}|` over a fixed compact
//! set, which is all the seminorm formulas ever see of a function. The
//! corpus ships closed-form synthetic families plus two function-backed
//! profiles with exactly known derivative bounds, so no numerical
//! differentiation happens anywhere.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::WeightSequence;
use crate::util::log_factorial;

#[derive(Debug, Clone, PartialEq)]
enum ProfileKind {
    Tabulated { log_values: Vec<f64> },
    /// `a_p = c h^p (p!)^sigma` with `c, h > 0`, `sigma >= 0`.
    GevreyFamily { log_c: f64, log_h: f64, sigma: f64 },
    /// `a_p = c p^p p!` (with `0^0 = 1`).
    SelfPowerFactorial { log_c: f64 },
}

/// Provenance of a profile, carried through reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileProvenance {
    Synthetic { family: String },
    FunctionBacked { name: String, domain: String, note: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeBoundProfile {
    kind: ProfileKind,
    provenance: ProfileProvenance,
}

impl DerivativeBoundProfile {
    /// `a_p = c h^p (p!)^sigma`.
    pub fn synthetic_gevrey(c: f64, h: f64, sigma: f64) -> Result<Self> {
        if !(c > 0.0 && h > 0.0 && sigma >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "gevrey profile needs c > 0, h > 0, sigma >= 0 (got {c}, {h}, {sigma})"
            )));
        }
        Ok(DerivativeBoundProfile {
            kind: ProfileKind::GevreyFamily { log_c: c.ln(), log_h: h.ln(), sigma },
            provenance: ProfileProvenance::Synthetic {
                family: format!("gevrey(c={c}, h={h}, sigma={sigma})"),
            },
        })
    }

    /// `x -> 1/(1-x)` on `[-1/2, 1/2]`: the p-th derivative is
    /// `p!/(1-x)^{p+1}`, maximised at `x = 1/2`, so `a_p = 2^{p+1} p!`.
    pub fn analytic_cauchy() -> Self {
        DerivativeBoundProfile {
            kind: ProfileKind::GevreyFamily {
                log_c: 2.0_f64.ln(),
                log_h: 2.0_f64.ln(),
                sigma: 1.0,
            },
            provenance: ProfileProvenance::FunctionBacked {
                name: "1/(1-x)".into(),
                domain: "[-1/2, 1/2]".into(),
                note: "sup of the p-th derivative is p! 2^(p+1), attained at x = 1/2".into(),
            },
        }
    }

    /// `sin` on `[0, 2pi]`: every derivative is bounded by 1.
    pub fn sine() -> Self {
        DerivativeBoundProfile {
            kind: ProfileKind::GevreyFamily { log_c: 0.0, log_h: 0.0, sigma: 0.0 },
            provenance: ProfileProvenance::FunctionBacked {
                name: "sin".into(),
                domain: "[0, 2pi]".into(),
                note: "all derivatives bounded by 1".into(),
            },
        }
    }

    /// `a_p = p^p p!`, the canonical profile escaping every factorial
    /// class with a fixed geometric scale.
    pub fn self_power_factorial() -> Self {
        DerivativeBoundProfile {
            kind: ProfileKind::SelfPowerFactorial { log_c: 0.0 },
            provenance: ProfileProvenance::Synthetic { family: "p^p p!".into() },
        }
    }

    pub fn tabulated(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("profile prefix is empty".into()));
        }
        let mut log_values = Vec::with_capacity(values.len());
        for (p, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidSequence(format!(
                    "a_{p} = {v}; positive finite values required"
                )));
            }
            log_values.push(v.ln());
        }
        Ok(DerivativeBoundProfile {
            kind: ProfileKind::Tabulated { log_values },
            provenance: ProfileProvenance::Synthetic { family: "tabulated".into() },
        })
    }

    pub fn from_log_values(log_values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if log_values.is_empty() || log_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence("profile log values must be finite".into()));
        }
        Ok(DerivativeBoundProfile {
            kind: ProfileKind::Tabulated { log_values },
            provenance: ProfileProvenance::Synthetic { family: label.into() },
        })
    }

    /// Use a weight sequence itself as a profile.
    pub fn from_sequence(seq: &WeightSequence, depth: usize) -> Result<Self> {
        Ok(DerivativeBoundProfile {
            kind: ProfileKind::Tabulated { log_values: seq.log_prefix(depth)? },
            provenance: ProfileProvenance::Synthetic { family: "weight sequence row".into() },
        })
    }

    pub fn provenance(&self) -> &ProfileProvenance {
        &self.provenance
    }

    pub fn description(&self) -> String {
        match &self.provenance {
            ProfileProvenance::Synthetic { family } => family.clone(),
            ProfileProvenance::FunctionBacked { name, domain, .. } => {
                format!("{name} on {domain}")
            }
        }
    }

    pub fn depth(&self) -> Option<usize> {
        match &self.kind {
            ProfileKind::Tabulated { log_values } => Some(log_values.len() - 1),
            _ => None,
        }
    }

    pub fn log_at(&self, p: usize) -> Result<f64> {
        match &self.kind {
            ProfileKind::Tabulated { log_values } => {
                log_values.get(p).copied().ok_or(Error::DepthExceeded {
                    requested: p,
                    available: log_values.len() - 1,
                })
            }
            ProfileKind::GevreyFamily { log_c, log_h, sigma } => {
                Ok(log_c + p as f64 * log_h + sigma * log_factorial(p))
            }
            ProfileKind::SelfPowerFactorial { log_c } => {
                Ok(log_c + p as f64 * (p.max(1) as f64).ln() + log_factorial(p))
            }
        }
    }

    pub fn log_prefix(&self, pmax: usize) -> Result<Vec<f64>> {
        (0..=pmax).map(|p| self.log_at(p)).collect()
    }

    /// Scale the profile by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!("lambda = {lambda}; positive required")));
        }
        let kind = match &self.kind {
            ProfileKind::Tabulated { log_values } => ProfileKind::Tabulated {
                log_values: log_values.iter().map(|l| l + lambda.ln()).collect(),
            },
            ProfileKind::GevreyFamily { log_c, log_h, sigma } => ProfileKind::GevreyFamily {
                log_c: log_c + lambda.ln(),
                log_h: *log_h,
                sigma: *sigma,
            },
            ProfileKind::SelfPowerFactorial { log_c } => {
                ProfileKind::SelfPowerFactorial { log_c: log_c + lambda.ln() }
            }
        };
        Ok(DerivativeBoundProfile { kind, provenance: self.provenance.clone() })
    }
}

// ---------------------------------------------------------------------------
// JSON representation
//
// {"provenance":{...},"a":[...]}
// {"provenance":{...},"family":{"name":"gevrey","c":..,"h":..,"sigma":..}}
// {"provenance":{...},"family":{"name":"self-power-factorial"}}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    provenance: ProfileProvenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_a: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyRepr>,
}

impl Serialize for DerivativeBoundProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.kind {
            ProfileKind::Tabulated { log_values } => ProfileRepr {
                provenance: self.provenance.clone(),
                a: None,
                log_a: Some(log_values.clone()),
                family: None,
            },
            ProfileKind::GevreyFamily { log_c, log_h, sigma } => ProfileRepr {
                provenance: self.provenance.clone(),
                a: None,
                log_a: None,
                family: Some(FamilyRepr {
                    name: "gevrey".into(),
                    c: Some(log_c.exp()),
                    h: Some(log_h.exp()),
                    sigma: Some(*sigma),
                }),
            },
            ProfileKind::SelfPowerFactorial { log_c } => ProfileRepr {
                provenance: self.provenance.clone(),
                a: None,
                log_a: None,
                family: Some(FamilyRepr {
                    name: "self-power-factorial".into(),
                    c: Some(log_c.exp()),
                    h: None,
                    sigma: None,
                }),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DerivativeBoundProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ProfileRepr::deserialize(deserializer)?;
        let built: Result<DerivativeBoundProfile> = (|| {
            if let Some(values) = &repr.a {
                let mut p = DerivativeBoundProfile::tabulated(values)?;
                p.provenance = repr.provenance.clone();
                return Ok(p);
            }
            if let Some(log_values) = &repr.log_a {
                let mut p =
                    DerivativeBoundProfile::from_log_values(log_values.clone(), "tabulated")?;
                p.provenance = repr.provenance.clone();
                return Ok(p);
            }
            let family = repr
                .family
                .as_ref()
                .ok_or_else(|| Error::Parse("profile needs a, log_a or family".into()))?;
            match family.name.as_str() {
                "gevrey" => {
                    let get = |name: &str, v: Option<f64>| {
                        v.ok_or_else(|| Error::Parse(format!("missing field family.{name}")))
                    };
                    let mut p = DerivativeBoundProfile::synthetic_gevrey(
                        get("c", family.c)?,
                        get("h", family.h)?,
                        get("sigma", family.sigma)?,
                    )?;
                    p.provenance = repr.provenance.clone();
                    Ok(p)
                }
                "self-power-factorial" => {
                    let mut p = DerivativeBoundProfile::self_power_factorial();
                    if let Some(c) = family.c {
                        p = p.scaled(c)?;
                    }
                    p.provenance = repr.provenance.clone();
                    Ok(p)
                }
                other => Err(Error::Parse(format!("unknown profile family {other:?}"))),
            }
        })();
        built.map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_evaluate() {
        let cauchy = DerivativeBoundProfile::analytic_cauchy();
        // a_3 = 2^4 * 3! = 96.
        assert!((cauchy.log_at(3).unwrap() - 96.0_f64.ln()).abs() < 1e-12);
        let sine = DerivativeBoundProfile::sine();
        for p in 0..5 {
            assert_eq!(sine.log_at(p).unwrap(), 0.0);
        }
        let spf = DerivativeBoundProfile::self_power_factorial();
        assert_eq!(spf.log_at(0).unwrap(), 0.0);
        // a_3 = 27 * 6 = 162.
        assert!((spf.log_at(3).unwrap() - 162.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn validation_and_scaling() {
        assert!(DerivativeBoundProfile::tabulated(&[1.0, 0.0]).is_err());
        assert!(DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, -0.5).is_err());
        let g = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0).unwrap();
        let s = g.scaled(0.5).unwrap();
        for p in 0..6 {
            let d = s.log_at(p).unwrap() - g.log_at(p).unwrap();
            assert!((d - 0.5_f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let g = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: DerivativeBoundProfile = serde_json::from_str(&s).unwrap();
        for p in 0..8 {
            assert!((back.log_at(p).unwrap() - g.log_at(p).unwrap()).abs() < 1e-12);
        }
        let tab: DerivativeBoundProfile = serde_json::from_str(
            r#"{"provenance":{"synthetic":{"family":"demo"}},"a":[1,2,6]}"#,
        )
        .unwrap();
        assert!((tab.log_at(2).unwrap() - 6.0_f64.ln()).abs() < 1e-12);
        assert!(serde_json::from_str::<DerivativeBoundProfile>(
            r#"{"provenance":{"synthetic":{"family":"x"}}}"#
        )
        .is_err());
    }
}
