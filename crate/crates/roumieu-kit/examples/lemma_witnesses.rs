//! The two witness constructions behind the projective description: the
//! diagonal witness certifies divergence of a profile against every row
//! (non-membership evidence), and the sup-type witness produces a
//! dominating sequence with a_p N_p <= 1 exactly on the prefix.

use roumieu_kit::matrix::{witness_diagonal, witness_sup, WeightMatrix, WitnessConstruction};
use roumieu_kit::sequence::WeightSequence;
use roumieu_kit::util::log_factorial;

fn main() -> roumieu_kit::Result<()> {
    let depth = 200;
    let mat = WeightMatrix::constant(WeightSequence::gevrey(1.0, 1.0)?, 8);

    // a_p = p^p p! diverges against n^p p! for every n: the block starts
    // are where a/(n^p M^n_p) first reaches max(n, threshold).
    let log_a: Vec<f64> = (0..=depth)
        .map(|p| p as f64 * (p.max(1) as f64).ln() + log_factorial(p))
        .collect();
    let w = witness_diagonal(&log_a, &mat, depth, &[1e6])?;
    if let WitnessConstruction::Diagonal { blocks } = &w.construction {
        println!("diagonal witness for a_p = p^p p! (first block gated at 1e6):");
        for (i, (p, n)) in blocks.iter().enumerate().skip(1) {
            println!(
                "  block {n}: starts at p = {p:>3}, log partial sup = {:>9.3}",
                w.divergence_log_trace[i - 1]
            );
        }
    }

    // a_p = 1/(p!)^2 is uniformly small: the constants C_n = max n^p/p!
    // peak near p = n, well inside the prefix.
    let log_small: Vec<f64> = (0..=depth).map(|p| -2.0 * log_factorial(p)).collect();
    let w = witness_sup(&log_small, &mat, 8, depth)?;
    let worst = (0..=depth)
        .map(|p| log_small[p] + w.sequence.log_at(p).unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    println!("\nsup-type witness for a_p = 1/(p!)^2:");
    println!("  max log(a_p N_p) over the prefix = {worst:.3e}  (never above 0)");

    // a_p = 1/p! has no interior maxima for n >= 2: the hypothesis has
    // no numeric support and the construction refuses.
    let log_harmless: Vec<f64> = (0..=depth).map(|p| -log_factorial(p)).collect();
    match witness_sup(&log_harmless, &mat, 8, depth) {
        Err(e) => println!("\nsup-type witness for a_p = 1/p!: {e}"),
        Ok(_) => unreachable!("boundary-attained constants must be rejected"),
    }
    Ok(())
}
