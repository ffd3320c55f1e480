//! Weight sequences and the sequence-level growth conditions.
//!
//! A weight sequence is a positive sequence `(M_p)` controlling the
//! derivative growth of a function class. All arithmetic is carried out
//! in log space (`log M_p` is stored and evaluated), since factorial-type
//! sequences overflow `f64` near `p = 170`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::util::{
    first_argmax, log_factorial, running_max_stable, running_min_stable, tail_decay, LOG_EQ_TOL,
};
use crate::verdict::{witness_of, Verdict, Witness};

/// Default tolerance for the tail-decay test behind the `≺` relation: the
/// maximum of the last quarter of the root sequence must fall below this
/// fraction of its global maximum.
pub const DEFAULT_TOL_PREC: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
enum SequenceKind {
    /// Finite prefix, stored as `log M_p`.
    Tabulated { log_values: Vec<f64> },
    /// `M_p = h^p (p!)^s` with `s >= 1`, `h > 0`.
    Gevrey { s: f64, scale: f64 },
    /// `M_p = r^p` with `r > 0`.
    Geometric { ratio: f64 },
    /// `M_p = base_p * rho^p`; kept as a wrapper so that scaling by `rho`
    /// and then by `1/rho` restores the original sequence exactly.
    Scaled { base: Box<WeightSequence>, rho: f64 },
}

/// A positive sequence `(M_p)`, tabulated or in parametric closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    kind: SequenceKind,
}

impl WeightSequence {
    /// Tabulated sequence from plain values. Values must be finite and
    /// strictly positive; the prefix must be non-empty.
    pub fn tabulated(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("tabulated prefix is empty".into()));
        }
        let mut log_values = Vec::with_capacity(values.len());
        for (p, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidSequence(format!(
                    "value at p = {p} is {v}; positive finite values required"
                )));
            }
            log_values.push(v.ln());
        }
        Ok(WeightSequence { kind: SequenceKind::Tabulated { log_values } })
    }

    /// Tabulated sequence from log values.
    pub fn from_log_values(log_values: Vec<f64>) -> Result<Self> {
        if log_values.is_empty() {
            return Err(Error::InvalidSequence("tabulated prefix is empty".into()));
        }
        if let Some(p) = log_values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "log value at p = {p} is not finite"
            )));
        }
        Ok(WeightSequence { kind: SequenceKind::Tabulated { log_values } })
    }

    /// `M_p = h^p (p!)^s`. Requires `s >= 1` and `h > 0`.
    pub fn gevrey(s: f64, scale: f64) -> Result<Self> {
        if !(s >= 1.0) || !s.is_finite() {
            return Err(Error::InvalidArgument(format!("gevrey order s = {s}; s >= 1 required")));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidArgument(format!("gevrey scale h = {scale}; h > 0 required")));
        }
        Ok(WeightSequence { kind: SequenceKind::Gevrey { s, scale } })
    }

    /// `M_p = ratio^p`. Requires `ratio > 0`.
    pub fn geometric(ratio: f64) -> Result<Self> {
        if !(ratio > 0.0) || !ratio.is_finite() {
            return Err(Error::InvalidArgument(format!("ratio = {ratio}; ratio > 0 required")));
        }
        Ok(WeightSequence { kind: SequenceKind::Geometric { ratio } })
    }

    /// Largest index available, or `None` for parametric kinds defined at
    /// every `p`.
    pub fn depth(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Tabulated { log_values } => Some(log_values.len() - 1),
            SequenceKind::Gevrey { .. } | SequenceKind::Geometric { .. } => None,
            SequenceKind::Scaled { base, .. } => base.depth(),
        }
    }

    /// `log M_p`.
    pub fn log_at(&self, p: usize) -> Result<f64> {
        match &self.kind {
            SequenceKind::Tabulated { log_values } => {
                log_values.get(p).copied().ok_or(Error::DepthExceeded {
                    requested: p,
                    available: log_values.len() - 1,
                })
            }
            SequenceKind::Gevrey { s, scale } => {
                Ok(p as f64 * scale.ln() + s * log_factorial(p))
            }
            SequenceKind::Geometric { ratio } => Ok(p as f64 * ratio.ln()),
            SequenceKind::Scaled { base, rho } => Ok(base.log_at(p)? + p as f64 * rho.ln()),
        }
    }

    /// `M_p`, which may overflow to `inf` for fast-growing sequences.
    pub fn at(&self, p: usize) -> Result<f64> {
        Ok(self.log_at(p)?.exp())
    }

    /// Materialised `log M_p` for `p = 0..=pmax`.
    pub fn log_prefix(&self, pmax: usize) -> Result<Vec<f64>> {
        (0..=pmax).map(|p| self.log_at(p)).collect()
    }

    /// `(s, log h)` when the sequence has the closed form
    /// `M_p = h^p (p!)^s` (geometric kinds have `s = 0`).
    fn power_form(&self) -> Option<(f64, f64)> {
        match &self.kind {
            SequenceKind::Tabulated { .. } => None,
            SequenceKind::Gevrey { s, scale } => Some((*s, scale.ln())),
            SequenceKind::Geometric { ratio } => Some((0.0, ratio.ln())),
            SequenceKind::Scaled { base, rho } => {
                base.power_form().map(|(s, ls)| (s, ls + rho.ln()))
            }
        }
    }

    /// True when the two sequences are structurally identical or agree on
    /// the whole checked prefix.
    pub fn coincides_with(&self, other: &WeightSequence, pmax: usize) -> bool {
        if self == other {
            return true;
        }
        let (Ok(a), Ok(b)) = (self.log_prefix(pmax), other.log_prefix(pmax)) else {
            return false;
        };
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-12 * (1.0 + x.abs()))
    }
}

/// The classical growth conditions on a single weight sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `(M.0)`: `M_p >= c h^p` for some `c, h > 0`.
    M0,
    /// `(M.1)`: log-convexity, `M_p^2 <= M_{p-1} M_{p+1}`.
    M1,
    /// `(M.2)'`: derivation closedness, `M_{p+1} <= C H^p M_p`.
    M2Prime,
}

/// Check one of the sequence conditions on the prefix `p <= depth`.
///
/// `(M.1)` is decided exactly on the prefix. `(M.0)` and `(M.2)'` extract
/// constants from the prefix and downgrade to inconclusive when the
/// extracted constant is still drifting over the last quarter, since
/// tabulated data can never certify an asymptotic statement. Parametric
/// kinds return analytically valid constants.
pub fn check_condition(seq: &WeightSequence, cond: Condition, depth: usize) -> Result<Verdict> {
    if depth < 2 {
        return Err(Error::InvalidArgument(format!("depth = {depth}; at least 2 required")));
    }
    match cond {
        Condition::M1 => check_m1(seq, depth),
        Condition::M0 => check_m0(seq, depth),
        Condition::M2Prime => check_m2_prime(seq, depth),
    }
}

fn check_m1(seq: &WeightSequence, depth: usize) -> Result<Verdict> {
    let l = seq.log_prefix(depth)?;
    for p in 1..depth {
        let lhs = 2.0 * l[p];
        let rhs = l[p - 1] + l[p + 1];
        if lhs > rhs + LOG_EQ_TOL {
            let values = witness_of(&[
                ("log_lhs", lhs),
                ("log_rhs", rhs),
                ("M[p-1]", l[p - 1].exp()),
                ("M[p]", l[p].exp()),
                ("M[p+1]", l[p + 1].exp()),
            ]);
            return Ok(Verdict::fails(p, values).with_trace(format!(
                "M_p^2 > M_(p-1) M_(p+1) at p = {p}"
            )));
        }
    }
    Ok(Verdict::holds_empty()
        .with_trace(format!("log-convex at every 1 <= p <= {}", depth - 1)))
}

fn check_m0(seq: &WeightSequence, depth: usize) -> Result<Verdict> {
    if let Some((_, log_scale)) = seq.power_form() {
        let c = 1.0_f64.min(seq.at(0)?);
        let h = log_scale.exp();
        return Ok(Verdict::holds(witness_of(&[("c", c), ("h", h)]))
            .with_trace("closed form: (p!)^s >= 1"));
    }
    let l = seq.log_prefix(depth)?;
    let roots: Vec<f64> = (1..=depth).map(|p| l[p] / p as f64).collect();
    let log_h = roots.iter().cloned().fold(f64::INFINITY, f64::min);
    let c = 1.0_f64.min(l[0].exp());
    if !running_min_stable(&roots) {
        return Ok(Verdict::inconclusive(depth).with_trace(format!(
            "inferred h = {:.6e} still decaying over the last quarter of the prefix",
            log_h.exp()
        )));
    }
    Ok(Verdict::holds(witness_of(&[("c", c), ("h", log_h.exp())]))
        .with_trace("M_p >= c h^p at every checked p"))
}

fn check_m2_prime(seq: &WeightSequence, depth: usize) -> Result<Verdict> {
    if let Some((s, log_scale)) = seq.power_form() {
        // M_{p+1}/M_p = h (p+1)^s <= max(1, h) * (2^s)^p since p+1 <= 2^p.
        let c = 1.0_f64.max(log_scale.exp());
        let h_cap = (s * 2.0_f64.ln()).exp();
        return Ok(Verdict::holds(witness_of(&[("C", c), ("H", h_cap)]))
            .with_trace("closed form: p+1 <= 2^p"));
    }
    let l = seq.log_prefix(depth + 1)?;
    let log_c = 0.0_f64.max(l[1] - l[0]);
    let estimates: Vec<f64> = (1..=depth)
        .map(|p| (l[p + 1] - l[p] - log_c) / p as f64)
        .collect();
    let log_h = estimates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !running_max_stable(&estimates) {
        return Ok(Verdict::inconclusive(depth).with_trace(format!(
            "H estimate {:.6e} still growing over the last quarter of the prefix",
            log_h.exp()
        )));
    }
    Ok(Verdict::holds(witness_of(&[("C", log_c.exp()), ("H", log_h.exp())]))
        .with_trace("smallest H covering every checked ratio"))
}

/// The log-convex minorant `N^c`: the pointwise-largest sequence below
/// `N` on the prefix whose logarithm is convex in `p`.
///
/// Computed as the lower convex hull of the points `(p, log N_p)` by the
/// monotone-chain sweep; the endpoints `p = 0` and `p = depth` are always
/// hull vertices, so the minorant is tight there.
pub fn log_convex_minorant(seq: &WeightSequence, depth: usize) -> Result<WeightSequence> {
    let l = seq.log_prefix(depth)?;
    let env = lower_hull_envelope(&l);
    WeightSequence::from_log_values(env)
}

fn lower_hull_envelope(l: &[f64]) -> Vec<f64> {
    let n = l.len();
    if n <= 2 {
        return l.to_vec();
    }
    // Hull vertices as indices; slopes between consecutive vertices are
    // strictly increasing.
    let mut hull: Vec<usize> = Vec::with_capacity(n);
    for p in 0..n {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b - a) as f64 * (l[p] - l[a]) - (l[b] - l[a]) * (p - a) as f64;
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut env = vec![0.0; n];
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        env[a] = l[a];
        for p in a + 1..b {
            env[p] = chord_value(a as f64, l[a], b as f64, l[b], p as f64);
        }
    }
    env[n - 1] = l[n - 1];
    env
}

/// Linear interpolation of the chord through `(xa, ya)` and `(xb, yb)`.
pub(crate) fn chord_value(xa: f64, ya: f64, xb: f64, yb: f64, x: f64) -> f64 {
    ya + (yb - ya) * (x - xa) / (xb - xa)
}

/// The two comparison relations between weight sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// `M ⊂ N`: `M_p <= C h^p N_p` for some `C, h > 0`.
    Subset,
    /// `M ≺ N`: the same bound for every `h > 0`.
    Prec,
}

/// Compare two sequences with the default `≺` tail tolerance.
pub fn relation(
    m: &WeightSequence,
    n: &WeightSequence,
    rel: Relation,
    depth: usize,
) -> Result<Verdict> {
    relation_with(m, n, rel, depth, DEFAULT_TOL_PREC)
}

/// Compare two sequences, with the `≺` tail tolerance made explicit.
///
/// Both relations are read off the root sequence `q_p = (M_p/N_p)^{1/p}`.
/// `⊂` holds with `h` the maximum of a stabilised tail of `q_p` and `C`
/// the minimal constant covering small `p`; it is inconclusive while the
/// roots are still growing at the prefix end. `≺` holds when the tail of
/// `q_p` decays below `tol_prec` times its global maximum; it fails only
/// with a certified reason (identical inputs, or a closed-form pair).
pub fn relation_with(
    m: &WeightSequence,
    n: &WeightSequence,
    rel: Relation,
    depth: usize,
    tol_prec: f64,
) -> Result<Verdict> {
    if depth < 2 {
        return Err(Error::InvalidArgument(format!("depth = {depth}; at least 2 required")));
    }
    if !(tol_prec > 0.0 && tol_prec < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "tol_prec = {tol_prec}; a value in (0, 1) is required"
        )));
    }
    if m.coincides_with(n, depth) {
        return Ok(match rel {
            Relation::Subset => Verdict::holds(witness_of(&[("C", 1.0), ("h", 1.0)]))
                .with_trace("identical sequences"),
            Relation::Prec => Verdict::fails(depth, witness_of(&[("q", 1.0)]))
                .with_trace("sequences coincide on the prefix; quotient root is identically 1"),
        });
    }
    if let (Some((s1, l1)), Some((s2, l2))) = (m.power_form(), n.power_form()) {
        return Ok(relation_closed_form(s1, l1, s2, l2, rel, depth));
    }
    let lm = m.log_prefix(depth)?;
    let ln = n.log_prefix(depth)?;
    let roots: Vec<f64> = (1..=depth).map(|p| (lm[p] - ln[p]) / p as f64).collect();
    match rel {
        Relation::Subset => {
            if !running_max_stable(&roots) {
                return Ok(Verdict::inconclusive(depth)
                    .with_trace("roots (M_p/N_p)^(1/p) still growing at the prefix end"));
            }
            let tail_len = depth.div_ceil(4).max(1);
            let log_h = roots[roots.len() - tail_len..]
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            let log_c = (0..=depth)
                .map(|p| lm[p] - ln[p] - p as f64 * log_h)
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(Verdict::holds(witness_of(&[("C", log_c.exp()), ("h", log_h.exp())]))
                .with_trace("h from the stabilised tail of the roots, C covering small p"))
        }
        Relation::Prec => {
            let d = tail_decay(&roots, tol_prec);
            if d.decays {
                Ok(Verdict::holds(witness_of(&[
                    ("q_max", d.global_max.exp()),
                    ("q_tail_max", d.tail_max.exp()),
                ]))
                .with_trace("tail of (M_p/N_p)^(1/p) decayed below tolerance"))
            } else {
                Ok(Verdict::inconclusive(depth)
                    .with_trace("roots neither decay below tolerance nor admit a certificate"))
            }
        }
    }
}

fn relation_closed_form(
    s1: f64,
    l1: f64,
    s2: f64,
    l2: f64,
    rel: Relation,
    depth: usize,
) -> Verdict {
    let dq = l1 - l2;
    match rel {
        Relation::Subset => {
            if s1 <= s2 {
                // M_p / N_p = e^{p dq} (p!)^{s1-s2} <= e^{p dq}.
                Verdict::holds(witness_of(&[("C", 1.0), ("h", dq.exp())]))
                    .with_trace("closed form: factorial exponents compare")
            } else {
                let q_end = dq + (s1 - s2) * log_factorial(depth) / depth as f64;
                Verdict::fails(depth, witness_of(&[("log_q", q_end)])).with_trace(
                    "closed form: (p!)^(s1-s2) outgrows every geometric factor",
                )
            }
        }
        Relation::Prec => {
            if s1 < s2 {
                Verdict::holds(witness_of(&[("q_limit", 0.0)]))
                    .with_trace("closed form: roots (p!)^((s1-s2)/p) vanish")
            } else if s1 == s2 {
                Verdict::fails(depth, witness_of(&[("q", dq.exp())])).with_trace(
                    "closed form: constant quotient root; sup over p diverges for h below it",
                )
            } else {
                let q_end = dq + (s1 - s2) * log_factorial(depth) / depth as f64;
                Verdict::fails(depth, witness_of(&[("log_q", q_end)]))
                    .with_trace("closed form: roots diverge")
            }
        }
    }
}

/// The associated function `omega_N(t) = max_{p <= depth} log(t^p N_0 / N_p)`
/// evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssociatedValue {
    pub value: f64,
    /// Smallest maximising index.
    pub argmax: usize,
    /// Set when the maximum is only attained at the prefix end: the
    /// truncation is too shallow for this `t`.
    pub boundary_attained: bool,
}

/// Evaluate the associated function of `n` at `t >= 0` on the prefix
/// `p <= depth`.
pub fn associated_function(n: &WeightSequence, t: f64, depth: usize) -> Result<AssociatedValue> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!("t = {t}; t >= 0 required")));
    }
    let l = n.log_prefix(depth)?;
    if t == 0.0 {
        return Ok(AssociatedValue { value: 0.0, argmax: 0, boundary_attained: false });
    }
    let log_t = t.ln();
    let terms: Vec<f64> = (0..=depth).map(|p| p as f64 * log_t + l[0] - l[p]).collect();
    let (argmax, value) = first_argmax(&terms);
    Ok(AssociatedValue { value, argmax, boundary_attained: argmax == depth })
}

/// `(N_p * rho^p)`: geometric rescaling, used to pass between summable
/// and sup-type estimates.
///
/// Scaling by `rho` and then by `1/rho` restores the input exactly: the
/// factor is tracked on a wrapper and reciprocal pairs cancel
/// structurally instead of through floating-point arithmetic.
pub fn scale_geometric(n: &WeightSequence, rho: f64) -> Result<WeightSequence> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidArgument(format!("rho = {rho}; rho > 0 required")));
    }
    if rho == 1.0 {
        return Ok(n.clone());
    }
    if let SequenceKind::Scaled { base, rho: r } = &n.kind {
        if *r == 1.0 / rho || rho == 1.0 / *r || r * rho == 1.0 {
            return Ok((**base).clone());
        }
        let combined = r * rho;
        if combined == 1.0 {
            return Ok((**base).clone());
        }
        return Ok(WeightSequence {
            kind: SequenceKind::Scaled { base: base.clone(), rho: combined },
        });
    }
    Ok(WeightSequence { kind: SequenceKind::Scaled { base: Box::new(n.clone()), rho } })
}

// ---------------------------------------------------------------------------
// JSON representation
//
// {"kind":"tabulated","values":[...]} or {"kind":"tabulated","log_values":[...]}
// {"kind":"gevrey","params":{"s":..,"h":..}}
// {"kind":"geometric","params":{"ratio":..}}
// {"kind":"scaled","params":{"rho":..},"base":{...}}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<std::collections::BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base: Option<Box<SequenceRepr>>,
}

impl WeightSequence {
    fn to_repr(&self) -> SequenceRepr {
        match &self.kind {
            SequenceKind::Tabulated { log_values } => SequenceRepr {
                kind: "tabulated".into(),
                values: None,
                log_values: Some(log_values.clone()),
                params: None,
                base: None,
            },
            SequenceKind::Gevrey { s, scale } => SequenceRepr {
                kind: "gevrey".into(),
                values: None,
                log_values: None,
                params: Some(witness_of(&[("s", *s), ("h", *scale)])),
                base: None,
            },
            SequenceKind::Geometric { ratio } => SequenceRepr {
                kind: "geometric".into(),
                values: None,
                log_values: None,
                params: Some(witness_of(&[("ratio", *ratio)])),
                base: None,
            },
            SequenceKind::Scaled { base, rho } => SequenceRepr {
                kind: "scaled".into(),
                values: None,
                log_values: None,
                params: Some(witness_of(&[("rho", *rho)])),
                base: Some(Box::new(base.to_repr())),
            },
        }
    }

    fn from_repr(repr: &SequenceRepr) -> Result<Self> {
        let param = |params: &Option<Witness>, name: &str| -> Result<f64> {
            params
                .as_ref()
                .and_then(|p| p.get(name))
                .copied()
                .ok_or_else(|| Error::Parse(format!("missing field params.{name}")))
        };
        match repr.kind.as_str() {
            "tabulated" => match (&repr.values, &repr.log_values) {
                (Some(v), _) => WeightSequence::tabulated(v),
                (None, Some(lv)) => WeightSequence::from_log_values(lv.clone()),
                (None, None) => {
                    Err(Error::Parse("tabulated kind requires values or log_values".into()))
                }
            },
            "gevrey" => WeightSequence::gevrey(param(&repr.params, "s")?, param(&repr.params, "h")?),
            "geometric" => WeightSequence::geometric(param(&repr.params, "ratio")?),
            "scaled" => {
                let base = repr
                    .base
                    .as_ref()
                    .ok_or_else(|| Error::Parse("scaled kind requires base".into()))?;
                let inner = WeightSequence::from_repr(base)?;
                scale_geometric(&inner, param(&repr.params, "rho")?)
            }
            other => Err(Error::Parse(format!("unknown sequence kind {other:?}"))),
        }
    }
}

impl Serialize for WeightSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SequenceRepr::deserialize(deserializer)?;
        WeightSequence::from_repr(&repr).map_err(|e| D::Error::custom(e.to_string()))
    }
}
