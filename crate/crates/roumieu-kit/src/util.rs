//! Shared numeric helpers: log-factorials, tail-stability tests and
//! one-dimensional concave maximisation.
//!
//! Everything downstream works in log space, so the helpers here do too.

use std::cell::RefCell;

/// Relative slack for the tail-stability tests: a running extreme that
/// moves by more than 5% over the last quarter of a prefix is treated as
/// still drifting.
pub(crate) const GROWTH_SLACK: f64 = 0.05;

/// Slack for exact-on-prefix comparisons done in log space.
pub(crate) const LOG_EQ_TOL: f64 = 1e-9;

thread_local! {
    static LOG_FACTORIAL: RefCell<Vec<f64>> = const { RefCell::new(Vec::new()) };
}

/// `ln(p!)` via a cached cumulative sum of `ln k`.
pub fn log_factorial(p: usize) -> f64 {
    LOG_FACTORIAL.with(|cell| {
        let mut table = cell.borrow_mut();
        if table.is_empty() {
            table.push(0.0);
        }
        while table.len() <= p {
            let k = table.len() as f64;
            let last = *table.last().unwrap();
            table.push(last + k.ln());
        }
        table[p]
    })
}

/// Index of the first entry attaining the maximum of `values` within a
/// small absolute tolerance, together with the maximum itself.
///
/// Values are log-scale terms; `-inf` entries are allowed and never win
/// unless all entries are `-inf`.
pub(crate) fn first_argmax(values: &[f64]) -> (usize, f64) {
    debug_assert!(!values.is_empty());
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tol = attain_tol(max);
    let idx = values
        .iter()
        .position(|&v| v >= max - tol)
        .unwrap_or(0);
    (idx, max)
}

fn attain_tol(max: f64) -> f64 {
    if max.is_finite() {
        1e-12 * (1.0 + max.abs())
    } else {
        0.0
    }
}

/// True when the running maximum of `values` did not grow by more than
/// `GROWTH_SLACK` (in log terms) over the last quarter of the prefix.
pub(crate) fn running_max_stable(log_values: &[f64]) -> bool {
    if log_values.len() < 4 {
        return true;
    }
    let cut = (3 * log_values.len()).div_ceil(4);
    let early = log_values[..cut]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let full = log_values
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    full <= early + GROWTH_SLACK.ln_1p()
}

/// True when the running minimum of `values` did not shrink by more than
/// `GROWTH_SLACK` (in log terms) over the last quarter of the prefix.
pub(crate) fn running_min_stable(log_values: &[f64]) -> bool {
    if log_values.len() < 4 {
        return true;
    }
    let cut = (3 * log_values.len()).div_ceil(4);
    let early = log_values[..cut]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let full = log_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    full >= early + (-GROWTH_SLACK).ln_1p()
}

/// Outcome of the tail-decay test used for `o(...)`-style comparisons:
/// the maximum of the last quarter must fall below `tol` times the global
/// maximum (all in log space).
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailDecay {
    pub global_max: f64,
    pub tail_max: f64,
    pub decays: bool,
}

pub(crate) fn tail_decay(log_ratios: &[f64], tol: f64) -> TailDecay {
    debug_assert!(tol > 0.0);
    let n = log_ratios.len();
    let tail_len = n.div_ceil(4).max(1);
    let global_max = log_ratios
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let tail_max = log_ratios[n - tail_len..]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    TailDecay {
        global_max,
        tail_max,
        decays: tail_max < global_max + tol.ln(),
    }
}

/// Maximise a concave function on `[lo, hi]` by golden-section search.
///
/// Returns `(argmax, max)`. The caller is responsible for bracketing: the
/// search converges to the global maximum only when `f` is unimodal on
/// the interval.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if b - a <= 1e-12 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// A geometric grid of `points` values from `min` to `max` inclusive.
pub fn geometric_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    assert!(min > 0.0 && max > min && points >= 2);
    let step = (max / min).ln() / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                max
            } else {
                min * (step * i as f64).exp()
            }
        })
        .collect()
}

/// Write a file through a sibling temp path and rename, so partially
/// written outputs are never observed.
pub fn write_atomic(path: &std::path::Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

/// A uniform grid of `points` values from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    assert!(max > min && points >= 2);
    let step = (max - min) / (points - 1) as f64;
    (0..points)
        .map(|i| if i + 1 == points { max } else { min + step * i as f64 })
        .collect()
}
