//! Braun-Meise-Taylor weight functions.
//!
//! A weight function is a continuous non-decreasing `omega` on `[0, inf)`
//! vanishing on `[0, 1]`, tested against the three classical properties:
//! doubling `(alpha)`, beating the logarithm `(gamma_0)`, and convexity
//! of `phi(x) = omega(e^x)` `(delta)`. The Young conjugate of `phi`
//! generates the associated weight matrix `p -> exp(phi*(np)/n)`.
//!
//! Everything is evaluated through `phi` on the `x = log t` axis, which
//! keeps factorial-scale arguments finite.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{MatrixProvenance, WeightMatrix};
use crate::sequence::{associated_function, WeightSequence};
use crate::util::{golden_max, running_max_stable, tail_decay};
use crate::verdict::{witness_of, Verdict};

#[derive(Debug, Clone, PartialEq)]
enum OmegaKind {
    /// `omega(t) = max(0, t^beta - 1)`, `beta` in `(0, 1]`.
    Power { beta: f64 },
    /// `omega(t) = max(0, log t)^q`, `q >= 1`.
    LogPower { q: f64 },
    /// Samples on a grid of `x = log t` values, linearly interpolated in
    /// `x` and extrapolated with the last slope beyond the grid.
    Tabulated { xs: Vec<f64>, values: Vec<f64> },
}

/// A candidate weight function. Construction enforces the structural
/// normalisation (non-decreasing, vanishing at `t <= 1`); the asymptotic
/// properties are decided by [`check_weight_function`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunctionOmega {
    kind: OmegaKind,
}

impl WeightFunctionOmega {
    pub fn power(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "beta = {beta}; an exponent in (0, 1] is required"
            )));
        }
        Ok(WeightFunctionOmega { kind: OmegaKind::Power { beta } })
    }

    pub fn log_power(q: f64) -> Result<Self> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::InvalidArgument(format!("q = {q}; q >= 1 required")));
        }
        Ok(WeightFunctionOmega { kind: OmegaKind::LogPower { q } })
    }

    /// Tabulate from `(t, omega(t))` samples with `t >= 1` increasing.
    /// Values must be non-negative and non-decreasing; the first sample
    /// is pinned to `t = 1, omega = 0` (inserted when missing).
    pub fn tabulated(ts: &[f64], values: &[f64]) -> Result<Self> {
        if ts.len() != values.len() || ts.len() < 2 {
            return Err(Error::InvalidArgument(
                "tabulated weight function needs matching t/omega samples, at least two".into(),
            ));
        }
        let mut xs = Vec::with_capacity(ts.len() + 1);
        let mut vs = Vec::with_capacity(ts.len() + 1);
        if ts[0] > 1.0 {
            xs.push(0.0);
            vs.push(0.0);
        }
        for (i, (&t, &v)) in ts.iter().zip(values).enumerate() {
            if !(t >= 1.0) || !t.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "grid.t[{i}] = {t}; samples start at t >= 1"
                )));
            }
            if i > 0 && t <= ts[i - 1] {
                return Err(Error::InvalidArgument(format!(
                    "grid.t[{i}] = {t} not strictly increasing"
                )));
            }
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "grid.omega[{i}] = {v}; non-negative values required"
                )));
            }
            if i > 0 && v < values[i - 1] {
                return Err(Error::InvalidArgument(format!(
                    "grid.omega[{i}] = {v} decreases; weight functions are non-decreasing"
                )));
            }
            xs.push(t.ln());
            vs.push(v);
        }
        if vs[0] != 0.0 {
            return Err(Error::InvalidArgument(
                "omega must vanish at t = 1 (first sample non-zero)".into(),
            ));
        }
        Ok(WeightFunctionOmega { kind: OmegaKind::Tabulated { xs, values: vs } })
    }

    /// `phi(x) = omega(e^x)` for `x >= 0`; the overflow-safe evaluation
    /// axis. May return `inf` where the underlying power overflows.
    pub fn phi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            OmegaKind::Power { beta } => (beta * x).exp() - 1.0,
            OmegaKind::LogPower { q } => x.powf(*q),
            OmegaKind::Tabulated { xs, values } => {
                let n = xs.len();
                if x <= xs[0] {
                    return values[0];
                }
                if x >= xs[n - 1] {
                    // Extrapolate with the last slope.
                    let slope = (values[n - 1] - values[n - 2]) / (xs[n - 1] - xs[n - 2]);
                    return values[n - 1] + slope * (x - xs[n - 1]);
                }
                let i = xs.partition_point(|&g| g <= x).min(n - 1);
                let (x0, x1) = (xs[i - 1], xs[i]);
                let (v0, v1) = (values[i - 1], values[i]);
                v0 + (v1 - v0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// `omega(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 1.0 {
            0.0
        } else {
            self.phi(t.ln()).max(0.0)
        }
    }

    pub fn description(&self) -> String {
        match &self.kind {
            OmegaKind::Power { beta } => format!("power({beta})"),
            OmegaKind::LogPower { q } => format!("logpower({q})"),
            OmegaKind::Tabulated { xs, .. } => {
                format!("tabulated({} samples, t <= {:.3e})", xs.len(), xs.last().unwrap().exp())
            }
        }
    }
}

/// The three classical weight-function properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaCondition {
    /// `omega(2t) = O(omega(t))`.
    Alpha,
    /// `log t = o(omega(t))`.
    Gamma0,
    /// `x -> omega(e^x)` convex.
    Delta,
}

fn require_span(ts: &[f64]) -> Result<()> {
    if ts.len() < 16 || ts[0] > 1.0 || *ts.last().unwrap() < 1e6 * (1.0 - 1e-12) {
        return Err(Error::InvalidArgument(
            "the t-grid must span at least [1, 1e6] with a reasonable resolution".into(),
        ));
    }
    Ok(())
}

/// Check one property on a grid of `t` values (sorted, spanning at least
/// `[1, 1e6]`).
///
/// `(alpha)` reports the ratio bound over grid points with `omega >= 1`
/// and is inconclusive while the running bound still grows. `(gamma_0)`
/// uses the same tail-decay criterion as the strict sequence relation;
/// the pure-log case `q = 1` fails by closed form. `(delta)` checks
/// second differences of `phi` on the uniform log-grid against `-1e-9`.
pub fn check_omega_condition(
    omega: &WeightFunctionOmega,
    cond: OmegaCondition,
    ts: &[f64],
) -> Result<Verdict> {
    require_span(ts)?;
    match cond {
        OmegaCondition::Alpha => {
            let kept: Vec<f64> = ts
                .iter()
                .copied()
                .filter(|&t| omega.eval(t) >= 1.0)
                .collect();
            if kept.is_empty() {
                return Ok(Verdict::inconclusive(ts.len())
                    .with_trace("omega below 1 on the whole grid"));
            }
            let log_ratios: Vec<f64> = kept
                .iter()
                .map(|&t| (omega.eval(2.0 * t) / omega.eval(t)).ln())
                .collect();
            let bound = log_ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max).exp();
            if running_max_stable(&log_ratios) {
                let tail_len = kept.len().div_ceil(4);
                let tail_bound = log_ratios[log_ratios.len() - tail_len..]
                    .iter()
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max)
                    .exp();
                Ok(Verdict::holds(witness_of(&[("bound", bound), ("tail_bound", tail_bound)]))
                    .with_trace("doubling ratio stabilised over the grid"))
            } else {
                Ok(Verdict::inconclusive(ts.len())
                    .with_trace("doubling ratio still growing at the grid end"))
            }
        }
        OmegaCondition::Gamma0 => {
            if let OmegaKind::LogPower { q } = &omega.kind {
                if *q == 1.0 {
                    return Ok(Verdict::fails(ts.len() - 1, witness_of(&[("ratio", 1.0)]))
                        .with_trace("closed form: log t / omega(t) is identically 1"));
                }
            }
            let kept: Vec<f64> = ts
                .iter()
                .copied()
                .filter(|&t| omega.eval(t) >= 1.0)
                .collect();
            if kept.is_empty() {
                return Ok(Verdict::inconclusive(ts.len())
                    .with_trace("omega below 1 on the whole grid"));
            }
            let log_ratios: Vec<f64> =
                kept.iter().map(|&t| (t.ln() / omega.eval(t)).ln()).collect();
            let d = tail_decay(&log_ratios, crate::sequence::DEFAULT_TOL_PREC);
            if d.decays {
                Ok(Verdict::holds(witness_of(&[
                    ("ratio_max", d.global_max.exp()),
                    ("ratio_tail_max", d.tail_max.exp()),
                ]))
                .with_trace("log t / omega decayed below tolerance over the tail"))
            } else {
                Ok(Verdict::inconclusive(ts.len())
                    .with_trace("log t / omega not yet below tolerance on the tail"))
            }
        }
        OmegaCondition::Delta => {
            let x_max = ts.last().unwrap().ln();
            let points = ts.len().max(256);
            let xs = crate::util::linear_grid(0.0, x_max, points);
            let vals: Vec<f64> = xs.iter().map(|&x| omega.phi(x)).collect();
            for i in 1..points - 1 {
                let second = vals[i + 1] - 2.0 * vals[i] + vals[i - 1];
                if second < -1e-9 {
                    return Ok(Verdict::fails(
                        i,
                        witness_of(&[("x", xs[i]), ("second_difference", second)]),
                    )
                    .with_trace("phi has a concave dent on the log-grid"));
                }
            }
            Ok(Verdict::holds_empty().with_trace("second differences non-negative on the log-grid"))
        }
    }
}

/// All three properties combined conjunctively; witness constants are
/// prefixed by the property name.
pub fn check_weight_function(omega: &WeightFunctionOmega, ts: &[f64]) -> Result<Verdict> {
    let mut combined: Option<Verdict> = None;
    for (name, cond) in [
        ("alpha", OmegaCondition::Alpha),
        ("gamma0", OmegaCondition::Gamma0),
        ("delta", OmegaCondition::Delta),
    ] {
        let mut v = check_omega_condition(omega, cond, ts)?;
        if let crate::verdict::VerdictStatus::Holds { witness } = &mut v.status {
            let prefixed: crate::verdict::Witness =
                witness.iter().map(|(k, val)| (format!("{name}.{k}"), *val)).collect();
            *witness = prefixed;
        }
        v.trace = v.trace.map(|t| format!("{name}: {t}"));
        combined = Some(match combined {
            None => v,
            Some(acc) => acc.and(v, ts.len()),
        });
    }
    Ok(combined.unwrap())
}

/// Sampled Young conjugate `phi*(y) = sup_{x >= 0} (xy - phi(x))` of a
/// weight function with convex `phi`.
#[derive(Debug, Clone)]
pub struct YoungConjugate {
    source: WeightFunctionOmega,
    x_hi: f64,
    ys: Vec<f64>,
    values: Vec<f64>,
}

const COARSE_X_POINTS: usize = 4097;

impl YoungConjugate {
    pub fn source(&self) -> &WeightFunctionOmega {
        &self.source
    }

    pub fn y_max(&self) -> f64 {
        *self.ys.last().unwrap()
    }

    /// The sampled `(y, phi*(y))` pairs.
    pub fn samples(&self) -> (&[f64], &[f64]) {
        (&self.ys, &self.values)
    }

    /// Interpolated evaluation from the stored samples; exact at `y = 0`.
    pub fn eval(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::InvalidArgument(format!("y = {y}; y >= 0 required")));
        }
        let y_max = self.y_max();
        if y > y_max * (1.0 + 1e-12) {
            return Err(Error::ExtendGrid { y, y_max });
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        let y = y.min(y_max);
        let n = self.ys.len();
        let i = self.ys.partition_point(|&g| g <= y).clamp(1, n - 1);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        Ok(v0 + (v1 - v0) * (y - y0) / (y1 - y0))
    }

    /// Fresh maximisation of `xy - phi(x)`: no interpolation error, at
    /// the cost of a scan plus golden refinement per call.
    pub fn eval_exact(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::InvalidArgument(format!("y = {y}; y >= 0 required")));
        }
        let y_max = self.y_max();
        if y > y_max * (1.0 + 1e-12) {
            return Err(Error::ExtendGrid { y, y_max });
        }
        Ok(conjugate_at(&self.source, y, self.x_hi).1.max(0.0))
    }

    /// Exact conjugate values along a non-decreasing list of arguments.
    ///
    /// The maximiser is non-decreasing in `y`, so one cursor sweeps the
    /// coarse grid once for the whole batch; each value is then refined
    /// like `eval_exact`.
    pub fn eval_exact_many(&self, ys: &[f64]) -> Result<Vec<f64>> {
        let y_max = self.y_max();
        let step = self.x_hi / (COARSE_X_POINTS - 1) as f64;
        let mut cursor = 0usize;
        let mut out = Vec::with_capacity(ys.len());
        let mut prev = 0.0_f64;
        for &y in ys {
            if !(y >= prev) {
                return Err(Error::InvalidArgument(
                    "eval_exact_many needs non-decreasing arguments".into(),
                ));
            }
            prev = y;
            if y > y_max * (1.0 + 1e-12) {
                return Err(Error::ExtendGrid { y, y_max });
            }
            let g = |x: f64| x * y - self.source.phi(x);
            while cursor + 1 < COARSE_X_POINTS
                && g(step * (cursor + 1) as f64) >= g(step * cursor as f64)
            {
                cursor += 1;
            }
            let lo = step * cursor.saturating_sub(1) as f64;
            let hi = step * (cursor + 1).min(COARSE_X_POINTS - 1) as f64;
            let (_, v) = golden_max(g, lo, hi);
            out.push(v.max(0.0));
        }
        Ok(out)
    }

    /// `(phi*)*(x) = sup_{0 <= y <= y_max} (xy - phi*(y))`: the bracket
    /// comes from the stored samples, the refinement re-maximises the
    /// primal so no interpolation error enters.
    pub fn biconjugate_at(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::InvalidArgument(format!("x = {x}; x >= 0 required")));
        }
        let n = self.ys.len();
        let obj = |i: usize| x * self.ys[i] - self.values[i];
        let mut best = 0usize;
        for i in 1..n {
            if obj(i) > obj(best) {
                best = i;
            }
        }
        if best + 1 == n {
            return Err(Error::ExtendGrid { y: self.ys[best], y_max: self.y_max() });
        }
        let lo = self.ys[best.saturating_sub(1)];
        let hi = self.ys[best + 1];
        let f = |y: f64| x * y - conjugate_at(&self.source, y, self.x_hi).1.max(0.0);
        let (_, v) = golden_max(f, lo, hi);
        Ok(v.max(0.0))
    }

    /// CSV rows `(y, phi_star)`.
    pub fn csv(&self) -> String {
        let mut out = String::from("y,phi_star\n");
        for (y, v) in self.ys.iter().zip(&self.values) {
            out.push_str(&format!("{y:.17e},{v:.17e}\n"));
        }
        out
    }
}

/// Maximise `xy - phi(x)` over `[0, x_hi]`: coarse scan then golden
/// refinement around the bracket. Returns `(argmax, value)`.
fn conjugate_at(omega: &WeightFunctionOmega, y: f64, x_hi: f64) -> (f64, f64) {
    let step = x_hi / (COARSE_X_POINTS - 1) as f64;
    let g = |x: f64| x * y - omega.phi(x);
    let mut best = 0usize;
    let mut best_val = g(0.0);
    for i in 1..COARSE_X_POINTS {
        let v = g(step * i as f64);
        if v > best_val {
            best = i;
            best_val = v;
        }
    }
    let lo = step * best.saturating_sub(1) as f64;
    let hi = step * (best + 1).min(COARSE_X_POINTS - 1) as f64;
    golden_max(g, lo, hi)
}

/// Build the sampled conjugate on the uniform grid `[0, y_max]`.
///
/// `(delta)` must hold for the source (the inner maximisation is only
/// unimodal for convex `phi`); the horizon `x_hi` doubles until the
/// maximiser for `y_max` sits strictly inside, and the construction
/// aborts with an extend-grid error when no horizon works (slope-capped
/// tabulated sources).
pub fn young_conjugate(
    omega: &WeightFunctionOmega,
    y_max: f64,
    points: usize,
) -> Result<YoungConjugate> {
    if !(y_max > 0.0) || points < 16 {
        return Err(Error::InvalidArgument(
            "y_max > 0 and at least 16 sample points are required".into(),
        ));
    }
    let delta_grid = crate::util::geometric_grid(1.0, 1e6, 257);
    let delta = check_omega_condition(omega, OmegaCondition::Delta, &delta_grid)?;
    if !delta.is_holds() {
        return Err(Error::InvalidArgument(format!(
            "the conjugate needs convex phi and the check returned: {delta}"
        )));
    }
    let mut x_hi = 32.0;
    loop {
        let step = x_hi / (COARSE_X_POINTS - 1) as f64;
        let g = |x: f64| x * y_max - omega.phi(x);
        let mut best = 0usize;
        let mut best_val = g(0.0);
        for i in 1..COARSE_X_POINTS {
            let v = g(step * i as f64);
            if v > best_val {
                best = i;
                best_val = v;
            }
        }
        if best + 2 < COARSE_X_POINTS {
            break;
        }
        x_hi *= 2.0;
        if x_hi > 1e13 {
            return Err(Error::ExtendGrid { y: y_max, y_max });
        }
    }
    let ys = crate::util::linear_grid(0.0, y_max, points);
    let mut values = Vec::with_capacity(points);
    // Warm-started scan: the maximiser is non-decreasing in y.
    let step = x_hi / (COARSE_X_POINTS - 1) as f64;
    let mut cursor = 0usize;
    for &y in &ys {
        let g = |x: f64| x * y - omega.phi(x);
        while cursor + 1 < COARSE_X_POINTS
            && g(step * (cursor + 1) as f64) >= g(step * cursor as f64)
        {
            cursor += 1;
        }
        let lo = step * cursor.saturating_sub(1) as f64;
        let hi = step * (cursor + 1).min(COARSE_X_POINTS - 1) as f64;
        let (_, v) = golden_max(g, lo, hi);
        values.push(v.max(0.0));
    }
    values[0] = 0.0;
    // Clamp the samples monotone against refinement wobble at the level
    // of 1e-12; anything larger is a genuine defect.
    for i in 1..points {
        if values[i] < values[i - 1] {
            if values[i - 1] - values[i] > 1e-9 * (1.0 + values[i - 1].abs()) {
                return Err(Error::ConstructionFailed(format!(
                    "conjugate decreased at y = {}",
                    ys[i]
                )));
            }
            values[i] = values[i - 1];
        }
    }
    for i in 1..points - 1 {
        let second = values[i + 1] - 2.0 * values[i] + values[i - 1];
        if second < -1e-6 * (1.0 + values[i + 1].abs()) {
            return Err(Error::ConstructionFailed(format!(
                "conjugate lost convexity at y = {}",
                ys[i]
            )));
        }
    }
    Ok(YoungConjugate { source: omega.clone(), x_hi, ys, values })
}

/// The weight matrix generated by a weight function: rows
/// `log M^n_p = phi*(np)/n` for `n = 1..=nmax`, with row 0 duplicating
/// row 1 so that the vector index equals the family index.
pub fn matrix_from_omega(
    omega: &WeightFunctionOmega,
    nmax: usize,
    pmax: usize,
) -> Result<WeightMatrix> {
    if nmax == 0 || pmax < 2 {
        return Err(Error::InvalidArgument("nmax >= 1 and pmax >= 2 required".into()));
    }
    let y_max = (nmax * pmax) as f64;
    let conj = young_conjugate(omega, y_max, 1025)?;
    let mut rows = Vec::with_capacity(nmax + 1);
    for n in 1..=nmax {
        let ys: Vec<f64> = (0..=pmax).map(|p| (n * p) as f64).collect();
        let log_values: Vec<f64> =
            conj.eval_exact_many(&ys)?.into_iter().map(|v| v / n as f64).collect();
        rows.push(WeightSequence::from_log_values(log_values)?);
    }
    rows.insert(0, rows[0].clone());
    WeightMatrix::try_new(
        rows,
        MatrixProvenance::FromOmega { description: omega.description() },
        pmax,
    )
}

/// Membership of `sigma` in the dominating family of `omega`:
/// `sigma = o(omega)`, decided by closed form for parametric pairs and by
/// the tail-decay criterion on the grid otherwise.
pub fn vomega_membership(
    sigma: &WeightFunctionOmega,
    omega: &WeightFunctionOmega,
    ts: &[f64],
) -> Result<Verdict> {
    for (name, w) in [("sigma", sigma), ("omega", omega)] {
        let v = check_weight_function(w, ts)?;
        if v.is_fails() {
            return Err(Error::InvalidArgument(format!(
                "{name} is not a weight function: {v}"
            )));
        }
    }
    if sigma == omega {
        return Ok(Verdict::fails(ts.len() - 1, witness_of(&[("ratio", 1.0)]))
            .with_trace("sigma and omega coincide; the quotient is identically 1"));
    }
    match (&sigma.kind, &omega.kind) {
        (OmegaKind::Power { beta: b1 }, OmegaKind::Power { beta: b2 }) => {
            return Ok(if b1 < b2 {
                Verdict::holds(witness_of(&[("exponent_gap", b2 - b1)]))
                    .with_trace("closed form: t^(b1-b2) vanishes")
            } else {
                Verdict::fails(ts.len() - 1, witness_of(&[("exponent_gap", b2 - b1)]))
                    .with_trace("closed form: the quotient does not vanish")
            });
        }
        (OmegaKind::LogPower { q: q1 }, OmegaKind::LogPower { q: q2 }) => {
            return Ok(if q1 < q2 {
                Verdict::holds(witness_of(&[("power_gap", q2 - q1)]))
                    .with_trace("closed form: (log t)^(q1-q2) vanishes")
            } else {
                Verdict::fails(ts.len() - 1, witness_of(&[("power_gap", q2 - q1)]))
                    .with_trace("closed form: the quotient does not vanish")
            });
        }
        (OmegaKind::LogPower { .. }, OmegaKind::Power { .. }) => {
            return Ok(Verdict::holds_empty()
                .with_trace("closed form: log powers are little-o of positive powers"));
        }
        (OmegaKind::Power { .. }, OmegaKind::LogPower { .. }) => {
            return Ok(Verdict::fails(ts.len() - 1, crate::verdict::Witness::new())
                .with_trace("closed form: positive powers outgrow log powers"));
        }
        _ => {}
    }
    let kept: Vec<f64> = ts.iter().copied().filter(|&t| omega.eval(t) >= 1.0).collect();
    if kept.is_empty() {
        return Ok(Verdict::inconclusive(ts.len()).with_trace("omega below 1 on the whole grid"));
    }
    let log_ratios: Vec<f64> =
        kept.iter().map(|&t| (sigma.eval(t) / omega.eval(t)).ln()).collect();
    if log_ratios.iter().all(|r| *r == f64::NEG_INFINITY) {
        return Ok(Verdict::holds_empty().with_trace("sigma vanishes on the grid"));
    }
    let d = tail_decay(&log_ratios, crate::sequence::DEFAULT_TOL_PREC);
    if d.decays {
        Ok(Verdict::holds(witness_of(&[
            ("ratio_max", d.global_max.exp()),
            ("ratio_tail_max", d.tail_max.exp()),
        ]))
        .with_trace("sigma/omega decayed below tolerance over the tail"))
    } else {
        Ok(Verdict::inconclusive(ts.len())
            .with_trace("sigma/omega not yet below tolerance on the tail"))
    }
}

/// Interpolate a weight function strictly between a dominated associated
/// function and a dominating weight function.
///
/// Construction: pointwise geometric mean of the two, made non-decreasing
/// and grid-convex on the `x = log t` axis by lifting (slopes are clipped
/// non-decreasing, which only raises values), floored by `(log t)^2` so
/// that `(gamma_0)` cannot be lost. Every required property is verified
/// a posteriori and a failure is reported, never patched silently.
pub fn interpolate_sigma(
    omega_n: &dyn Fn(f64) -> f64,
    omega: &WeightFunctionOmega,
    ts: &[f64],
) -> Result<WeightFunctionOmega> {
    require_span(ts)?;
    let wn: Vec<f64> = ts.iter().map(|&t| omega_n(t).max(0.0)).collect();
    let w: Vec<f64> = ts.iter().map(|&t| omega.eval(t)).collect();
    // Precondition: omega_n = o(omega) on the grid.
    let kept: Vec<f64> = ts
        .iter()
        .zip(&wn)
        .zip(&w)
        .filter(|((_, _), &wv)| wv >= 1.0)
        .map(|((_, &nv), &wv)| (nv / wv).ln())
        .collect();
    let degenerate = kept.iter().all(|r| *r == f64::NEG_INFINITY);
    if !degenerate {
        let d = tail_decay(&kept, crate::sequence::DEFAULT_TOL_PREC);
        if !d.decays {
            return Err(Error::NoGap(
                "omega_n/omega does not decay on the grid; nothing to interpolate into".into(),
            ));
        }
    }
    let xs: Vec<f64> = ts.iter().map(|&t| t.ln()).collect();
    let mut vals: Vec<f64> = wn.iter().zip(&w).map(|(&a, &b)| (a * b).sqrt()).collect();
    // Non-decreasing.
    for i in 1..vals.len() {
        if vals[i] < vals[i - 1] {
            vals[i] = vals[i - 1];
        }
    }
    // Grid-convex in x by lifting: slopes never decrease.
    let mut prev_slope = f64::NEG_INFINITY;
    for i in 1..vals.len() {
        let dx = xs[i] - xs[i - 1];
        let slope = (vals[i] - vals[i - 1]) / dx;
        if slope < prev_slope {
            vals[i] = vals[i - 1] + prev_slope * dx;
        } else {
            prev_slope = slope;
        }
    }
    // Floor by (log t)^2, keeping (gamma_0) alive even when omega_n
    // carries no growth at all.
    for (v, x) in vals.iter_mut().zip(&xs) {
        *v = v.max(x * x);
    }
    let sigma = WeightFunctionOmega::tabulated(ts, &vals)?;
    // A-posteriori verification, as loud failures.
    let wf = check_weight_function(&sigma, ts)?;
    if !wf.is_holds() {
        return Err(Error::ConstructionFailed(format!(
            "interpolant is not a verified weight function: {wf}"
        )));
    }
    let upper = vomega_membership(&sigma, omega, ts)?;
    if !upper.is_holds() {
        return Err(Error::ConstructionFailed(format!(
            "interpolant is not little-o of omega on the grid: {upper}"
        )));
    }
    let lower: Vec<f64> = ts
        .iter()
        .filter(|&&t| sigma.eval(t) >= 1.0)
        .map(|&t| (omega_n(t).max(0.0) / sigma.eval(t)).ln())
        .collect();
    let lower_ok = lower.iter().all(|r| *r == f64::NEG_INFINITY)
        || tail_decay(&lower, crate::sequence::DEFAULT_TOL_PREC).decays;
    if !lower_ok {
        return Err(Error::ConstructionFailed(
            "omega_n is not little-o of the interpolant on the grid".into(),
        ));
    }
    Ok(sigma)
}

/// Two-sided comparison between a weight function and the associated
/// function of the first row of its own matrix.
///
/// Over grid points with `sigma(t) >= 1`, computes
/// `omega_{M^1}(t) / sigma(t)` and reports the window `[c, C]`. A
/// boundary-attained associated value means the truncation `pmax` cannot
/// see the maximiser for that `t`, reported as extend-depth.
pub fn check_equiv_associated(
    sigma: &WeightFunctionOmega,
    pmax: usize,
    ts: &[f64],
) -> Result<Verdict> {
    let mat = matrix_from_omega(sigma, 1, pmax)?;
    let row1 = mat.row(1)?;
    let mut c = f64::INFINITY;
    let mut c_arg = f64::NAN;
    let mut big_c = f64::NEG_INFINITY;
    let mut big_c_arg = f64::NAN;
    let mut used = 0usize;
    for &t in ts {
        let s = sigma.eval(t);
        if s < 1.0 {
            continue;
        }
        let a = associated_function(row1, t, pmax)?;
        if a.boundary_attained {
            return Err(Error::ExtendDepth { at: t, depth: pmax });
        }
        let ratio = a.value / s;
        if ratio < c {
            c = ratio;
            c_arg = t;
        }
        if ratio > big_c {
            big_c = ratio;
            big_c_arg = t;
        }
        used += 1;
    }
    if used == 0 {
        return Ok(Verdict::inconclusive(ts.len())
            .with_trace("sigma below 1 on the whole grid"));
    }
    Ok(Verdict::holds(witness_of(&[
        ("c", c),
        ("C", big_c),
        ("t_at_c", c_arg),
        ("t_at_C", big_c_arg),
        ("points", used as f64),
    ]))
    .with_trace("two-sided ratio window of the associated function against sigma"))
}

// ---------------------------------------------------------------------------
// JSON representation
//
// {"kind":"power","params":{"beta":0.5}}
// {"kind":"logpower","params":{"q":2}}
// {"kind":"tabulated","grid":{"t":[...],"omega":[...]}}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct OmegaGridRepr {
    t: Vec<f64>,
    omega: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct OmegaRepr {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<std::collections::BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<OmegaGridRepr>,
}

impl Serialize for WeightFunctionOmega {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.kind {
            OmegaKind::Power { beta } => OmegaRepr {
                kind: "power".into(),
                params: Some(witness_of(&[("beta", *beta)])),
                grid: None,
            },
            OmegaKind::LogPower { q } => OmegaRepr {
                kind: "logpower".into(),
                params: Some(witness_of(&[("q", *q)])),
                grid: None,
            },
            OmegaKind::Tabulated { xs, values } => OmegaRepr {
                kind: "tabulated".into(),
                params: None,
                grid: Some(OmegaGridRepr {
                    t: xs.iter().map(|x| x.exp()).collect(),
                    omega: values.clone(),
                }),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightFunctionOmega {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = OmegaRepr::deserialize(deserializer)?;
        let param = |name: &str| -> std::result::Result<f64, D::Error> {
            repr.params
                .as_ref()
                .and_then(|p| p.get(name))
                .copied()
                .ok_or_else(|| D::Error::custom(format!("missing field params.{name}")))
        };
        let built = match repr.kind.as_str() {
            "power" => WeightFunctionOmega::power(param("beta")?),
            "logpower" => WeightFunctionOmega::log_power(param("q")?),
            "tabulated" => {
                let grid = repr
                    .grid
                    .as_ref()
                    .ok_or_else(|| D::Error::custom("missing field grid"))?;
                WeightFunctionOmega::tabulated(&grid.t, &grid.omega)
            }
            other => Err(Error::Parse(format!("unknown weight-function kind {other:?}"))),
        };
        built.map_err(|e| D::Error::custom(e.to_string()))
    }
}
