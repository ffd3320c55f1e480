//! Growth conditions on weight sequences: positivity floor (M.0),
//! log-convexity (M.1) and derivation closedness (M.2)', each returning
//! a truncation-aware verdict with re-verifiable constants.

use roumieu_kit::sequence::{check_condition, Condition, WeightSequence};
use roumieu_kit::util::log_factorial;

fn main() -> roumieu_kit::Result<()> {
    let depth = 50;

    // The factorial sequence p! carries every condition.
    let factorial = WeightSequence::gevrey(1.0, 1.0)?;
    println!("M = p!");
    for cond in [Condition::M0, Condition::M1, Condition::M2Prime] {
        let v = check_condition(&factorial, cond, depth)?;
        println!("  {cond:?}: {v}");
    }

    // A dent at one index breaks log-convexity with a concrete
    // counterexample: M_2^2 = 16 > M_1 M_3 = 9.
    let dented = WeightSequence::tabulated(&[1.0, 1.0, 4.0, 9.0])?;
    println!("M = (1, 1, 4, 9)");
    println!("  M1: {}", check_condition(&dented, Condition::M1, 3)?);

    // Tabulated data can only certify what the prefix shows: the roots
    // of 1/p! keep decaying, so (M.0) stays inconclusive.
    let shrinking: Vec<f64> = (0..=60).map(|p| -log_factorial(p)).collect();
    let reciprocal = WeightSequence::from_log_values(shrinking)?;
    println!("M = 1/p! (tabulated)");
    println!("  M0: {}", check_condition(&reciprocal, Condition::M0, 60)?);
    Ok(())
}
