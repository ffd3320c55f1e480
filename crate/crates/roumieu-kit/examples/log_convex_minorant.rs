//! The log-convex minorant: the largest sequence below a given one whose
//! logarithm is convex in p. Dents are replaced by chords of the lower
//! convex hull; log-convex inputs pass through unchanged.

use roumieu_kit::sequence::{check_condition, log_convex_minorant, Condition, WeightSequence};

fn main() -> roumieu_kit::Result<()> {
    let dented = WeightSequence::tabulated(&[1.0, 4.0, 2.0])?;
    let minorant = log_convex_minorant(&dented, 2)?;
    println!("N   = (1, 4, 2)");
    print!("N^c = (");
    for p in 0..=2 {
        print!("{}{:.6}", if p > 0 { ", " } else { "" }, minorant.at(p)?);
    }
    println!(")  -- the middle value drops to sqrt(2)");

    let wild = WeightSequence::tabulated(&[3.0, 10.0, 4.0, 60.0, 2.0, 90.0, 120.0])?;
    let reg = log_convex_minorant(&wild, 6)?;
    println!("\nN   = (3, 10, 4, 60, 2, 90, 120)");
    print!("N^c = (");
    for p in 0..=6 {
        print!("{}{:.4}", if p > 0 { ", " } else { "" }, reg.at(p)?);
    }
    println!(")");
    println!("minorant satisfies M1: {}", check_condition(&reg, Condition::M1, 5)?);

    // Idempotent, and the identity on log-convex input.
    let factorial = WeightSequence::gevrey(1.0, 1.0)?;
    let same = log_convex_minorant(&factorial, 20)?;
    let max_gap: f64 = (0..=20)
        .map(|p| (same.log_at(p).unwrap() - factorial.log_at(p).unwrap()).abs())
        .fold(0.0, f64::max)
        ;
    println!("\np! is already log-convex: largest log gap after regularisation = {max_gap:.3e}");
    Ok(())
}
