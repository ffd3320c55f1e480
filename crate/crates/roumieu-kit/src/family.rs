//! Komatsu's family of index sequences and the product-weight bridge.
//!
//! An `RSequence` is a non-decreasing positive sequence `r_j -> inf`. The
//! products `M_p * prod_{j=0}^{p} r_j` (the index range is inclusive on
//! both ends) define the classical projective seminorms for a single
//! weight sequence `M`; the conversions in this module connect them to
//! the dominating-sequence picture.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::{relation, Relation, WeightSequence};

/// Default growth floor: a tabulated sequence is accepted as unbounded
/// evidence when its last entry is at least this multiple of the first.
pub const DEFAULT_GROWTH_FLOOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
enum RKind {
    Tabulated { values: Vec<f64> },
    /// `r_j = (j+1)^gamma`, `gamma > 0`.
    Power { gamma: f64 },
    /// `r_j = ratio^j`, `ratio > 1`.
    Geometric { ratio: f64 },
}

/// An element of Komatsu's index family: non-decreasing, positive,
/// diverging to infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct RSequence {
    kind: RKind,
}

impl RSequence {
    /// Tabulated index sequence with the default growth floor.
    pub fn tabulated(values: &[f64]) -> Result<Self> {
        Self::tabulated_with_floor(values, DEFAULT_GROWTH_FLOOR)
    }

    /// Tabulated index sequence; `r_P >= floor * r_0` is required as
    /// unboundedness evidence.
    pub fn tabulated_with_floor(values: &[f64], floor: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument("at least two entries required".into()));
        }
        for (j, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidSequence(format!("r_{j} = {v}; positive required")));
            }
            if j > 0 && v < values[j - 1] {
                return Err(Error::InvalidSequence(format!(
                    "r_{j} = {v} < r_{} = {}; non-decreasing required",
                    j - 1,
                    values[j - 1]
                )));
            }
        }
        let last = *values.last().unwrap();
        if last < floor * values[0] {
            return Err(Error::InvalidArgument(format!(
                "no growth evidence: r_last/r_0 = {:.3} below the floor {floor}",
                last / values[0]
            )));
        }
        Ok(RSequence { kind: RKind::Tabulated { values: values.to_vec() } })
    }

    /// Internal constructor for sequences produced by `r_from_n`, whose
    /// divergence is inherited from the `≺` precondition rather than from
    /// the growth floor.
    fn from_construction(values: Vec<f64>) -> Self {
        RSequence { kind: RKind::Tabulated { values } }
    }

    /// `r_j = (j+1)^gamma` with `gamma > 0`.
    pub fn power(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "gamma = {gamma}; a positive exponent is required for divergence"
            )));
        }
        Ok(RSequence { kind: RKind::Power { gamma } })
    }

    /// `r_j = ratio^j` with `ratio > 1`.
    pub fn geometric(ratio: f64) -> Result<Self> {
        if !(ratio > 1.0) || !ratio.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "ratio = {ratio}; ratio > 1 is required for divergence"
            )));
        }
        Ok(RSequence { kind: RKind::Geometric { ratio } })
    }

    pub fn depth(&self) -> Option<usize> {
        match &self.kind {
            RKind::Tabulated { values } => Some(values.len() - 1),
            _ => None,
        }
    }

    pub fn at(&self, j: usize) -> Result<f64> {
        match &self.kind {
            RKind::Tabulated { values } => values
                .get(j)
                .copied()
                .ok_or(Error::DepthExceeded { requested: j, available: values.len() - 1 }),
            _ => Ok(self.log_at(j)?.exp()),
        }
    }

    pub fn log_at(&self, j: usize) -> Result<f64> {
        match &self.kind {
            RKind::Tabulated { values } => values
                .get(j)
                .map(|v| v.ln())
                .ok_or(Error::DepthExceeded { requested: j, available: values.len() - 1 }),
            RKind::Power { gamma } => Ok(gamma * ((j + 1) as f64).ln()),
            RKind::Geometric { ratio } => Ok(j as f64 * ratio.ln()),
        }
    }

    /// `log prod_{j=0}^{p} r_j` for `p = 0..=pmax`.
    pub fn log_products(&self, pmax: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(pmax + 1);
        let mut acc = 0.0;
        for j in 0..=pmax {
            acc += self.log_at(j)?;
            out.push(acc);
        }
        Ok(out)
    }
}

/// `M_p * prod_{j=0}^{p} r_j`, computed in log space.
pub fn product_weight(m: &WeightSequence, r: &RSequence, p: usize) -> Result<f64> {
    Ok(log_product_weight(m, r, p)?.exp())
}

/// Log of the product weight; the overflow-safe form.
pub fn log_product_weight(m: &WeightSequence, r: &RSequence, p: usize) -> Result<f64> {
    let products = r.log_products(p)?;
    Ok(m.log_at(p)? + products[p])
}

/// The dominating sequence `N_p = M_p * prod_{j=0}^{p} r_j` tabulated on
/// the prefix. Divergence of `r` makes `(M_p/N_p)^{1/p}` vanish, so the
/// output dominates `M` in the strong sense on the checked prefix.
pub fn n_from_r(m: &WeightSequence, r: &RSequence, depth: usize) -> Result<WeightSequence> {
    let products = r.log_products(depth)?;
    let log_values: Result<Vec<f64>> =
        (0..=depth).map(|p| Ok(m.log_at(p)? + products[p])).collect();
    WeightSequence::from_log_values(log_values?)
}

/// An index sequence extracted from a dominating sequence.
#[derive(Debug, Clone)]
pub struct ExtractedR {
    pub r: RSequence,
    /// Constant `kappa` with `prod_{j<=p} r_j <= kappa * N_p/M_p` at every
    /// checked `p`.
    pub kappa: f64,
}

/// Recover an index sequence from a pair `M ≺ N`.
///
/// Greedy construction: with `q_p = N_p/M_p`, set
/// `r_j = min over p >= max(j, 1) of q_p^(1/p)`. A minimum over a suffix
/// is automatically non-decreasing in `j`, and each `r_j` is below every
/// later root, which gives `prod_{j=0}^{p} r_j <= r_0 * q_p` index by
/// index. The reported `kappa = r_0` certifies the seminorm domination.
pub fn r_from_n(m: &WeightSequence, n: &WeightSequence, depth: usize) -> Result<ExtractedR> {
    let prec = relation(m, n, Relation::Prec, depth)?;
    if !prec.is_holds() {
        return Err(Error::InvalidArgument(format!(
            "M ≺ N is a precondition and its check returned: {prec}"
        )));
    }
    let lm = m.log_prefix(depth)?;
    let ln = n.log_prefix(depth)?;
    let roots: Vec<f64> = (1..=depth).map(|p| (ln[p] - lm[p]) / p as f64).collect();
    // Suffix minima of the roots, in log space.
    let mut suffix_min = roots.clone();
    for i in (0..suffix_min.len() - 1).rev() {
        suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
    }
    let mut log_r = Vec::with_capacity(depth + 1);
    log_r.push(suffix_min[0]); // r_0 = r_1
    log_r.extend_from_slice(&suffix_min);
    let mut values: Vec<f64> = log_r.iter().map(|l| l.exp()).collect();
    // Clip exactly non-decreasing against floating-point wobble.
    for j in 1..values.len() {
        if values[j] < values[j - 1] {
            values[j] = values[j - 1];
        }
    }
    let kappa = values[0];
    Ok(ExtractedR { r: RSequence::from_construction(values), kappa })
}

// ---------------------------------------------------------------------------
// JSON representation
//
// {"r":[...]} | {"kind":"power","gamma":g} | {"kind":"geometric","ratio":q}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RRepr {
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
}

impl Serialize for RSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.kind {
            RKind::Tabulated { values } => {
                RRepr { r: Some(values.clone()), kind: None, gamma: None, ratio: None }
            }
            RKind::Power { gamma } => {
                RRepr { r: None, kind: Some("power".into()), gamma: Some(*gamma), ratio: None }
            }
            RKind::Geometric { ratio } => {
                RRepr { r: None, kind: Some("geometric".into()), gamma: None, ratio: Some(*ratio) }
            }
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RRepr::deserialize(deserializer)?;
        let built = match (&repr.r, repr.kind.as_deref()) {
            (Some(values), _) => RSequence::tabulated(values),
            (None, Some("power")) => RSequence::power(
                repr.gamma.ok_or_else(|| D::Error::custom("missing field gamma"))?,
            ),
            (None, Some("geometric")) => RSequence::geometric(
                repr.ratio.ok_or_else(|| D::Error::custom("missing field ratio"))?,
            ),
            (None, Some(other)) => Err(Error::Parse(format!("unknown r kind {other:?}"))),
            (None, None) => Err(Error::Parse("either r or kind is required".into())),
        };
        built.map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// CSV rows `(j, r_j)` for export.
pub fn r_csv(r: &RSequence, jmax: usize) -> Result<String> {
    let mut out = String::from("j,r\n");
    for j in 0..=jmax {
        out.push_str(&format!("{j},{:.17e}\n", r.at(j)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::log_factorial;

    #[test]
    fn validation_rejects_bounded_or_decreasing() {
        assert!(RSequence::tabulated(&[1.0, 1.0, 1.0]).is_err()); // bounded
        assert!(RSequence::tabulated(&[1.0, 3.0, 2.0, 20.0]).is_err()); // dip
        assert!(RSequence::tabulated(&[1.0, -2.0]).is_err());
        assert!(RSequence::power(0.0).is_err());
        assert!(RSequence::geometric(1.0).is_err());
        assert!(RSequence::tabulated(&[1.0, 2.0, 4.0, 10.0]).is_ok());
        assert!(RSequence::tabulated_with_floor(&[1.0, 2.0], 2.0).is_ok());
    }

    #[test]
    fn product_weight_inclusive_indexing() {
        // M = p!, r_j = j+1, p = 3: 3! * (1*2*3*4) = 144.
        let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
        let r = RSequence::power(1.0).unwrap();
        assert!((product_weight(&m, &r, 3).unwrap() - 144.0).abs() < 1e-9);
        // p = 0: a single factor M_0 * r_0.
        assert!((product_weight(&m, &r, 0).unwrap() - 1.0).abs() < 1e-12);
        let m2 = WeightSequence::tabulated(&[5.0, 1.0]).unwrap();
        assert!((product_weight(&m2, &r, 0).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn n_from_r_closed_forms() {
        // r_j = j+1 gives prod_{j<=p}(j+1) = (p+1)!, so N_p = p!(p+1)!.
        let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
        let r = RSequence::power(1.0).unwrap();
        let n = n_from_r(&m, &r, 120).unwrap();
        for p in 0..=120 {
            let expected = log_factorial(p) + log_factorial(p + 1);
            assert!((n.log_at(p).unwrap() - expected).abs() < 1e-9);
        }
        // r_j = 2^j gives prod = 2^{p(p+1)/2}.
        let r2 = RSequence::geometric(2.0).unwrap();
        let n2 = n_from_r(&m, &r2, 120).unwrap();
        for p in 0..=120 {
            let expected = log_factorial(p) + (p * (p + 1)) as f64 / 2.0 * 2.0_f64.ln();
            assert!((n2.log_at(p).unwrap() - expected).abs() < 1e-9);
        }
        // Both dominate M in the strong sense on the prefix. The tail of
        // ((p+1)!)^(-1/p) only clears the 10% criterion from depth ~75 on.
        assert!(relation(&m, &n, Relation::Prec, 120).unwrap().is_holds());
        assert!(relation(&m, &n, Relation::Prec, 50).unwrap().is_inconclusive());
        assert!(relation(&m, &n2, Relation::Prec, 120).unwrap().is_holds());
    }

    #[test]
    fn r_from_n_certifies_product_bound() {
        let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
        let n = n_from_r(&m, &RSequence::power(1.0).unwrap(), 120).unwrap();
        let ex = r_from_n(&m, &n, 120).unwrap();
        assert!(ex.kappa <= std::f64::consts::E);
        // prod_{j<=p} r_j <= kappa * N_p/M_p index by index.
        let products = ex.r.log_products(120).unwrap();
        for p in 0..=120 {
            let q = n.log_at(p).unwrap() - m.log_at(p).unwrap();
            assert!(
                products[p] <= ex.kappa.ln() + q + 1e-9,
                "product bound violated at p = {p}"
            );
        }
        // Non-decreasing with genuine growth.
        for j in 1..=120 {
            assert!(ex.r.at(j).unwrap() >= ex.r.at(j - 1).unwrap());
        }
        assert!(ex.r.at(120).unwrap() > 10.0 * ex.r.at(0).unwrap());
    }

    #[test]
    fn r_from_n_requires_prec() {
        let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
        assert!(r_from_n(&m, &m.clone(), 30).is_err());
    }

    #[test]
    fn round_trip_is_subset_with_kappa() {
        let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
        let n = n_from_r(&m, &RSequence::power(1.0).unwrap(), 100).unwrap();
        let ex = r_from_n(&m, &n, 100).unwrap();
        let back = n_from_r(&m, &ex.r, 100).unwrap();
        // back_p <= kappa * N_p with h = 1, exactly in log space.
        for p in 0..=100 {
            assert!(back.log_at(p).unwrap() <= ex.kappa.ln() + n.log_at(p).unwrap() + 1e-9);
        }
    }

    #[test]
    fn json_round_trip() {
        let r = RSequence::power(1.5).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: RSequence = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
        let tab: RSequence = serde_json::from_str(r#"{"r":[1,2,4,8,16]}"#).unwrap();
        assert_eq!(tab.at(3).unwrap(), 8.0);
        assert!(serde_json::from_str::<RSequence>(r#"{"r":[1,1,1]}"#).is_err());
        let csv = r_csv(&tab, 2).unwrap();
        assert!(csv.starts_with("j,r\n0,"));
    }
}
