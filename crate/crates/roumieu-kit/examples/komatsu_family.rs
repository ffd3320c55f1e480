//! Komatsu's index sequences r_j -> inf and the product weights
//! M_p prod_{j<=p} r_j: the classical projective system for a single
//! weight sequence, and the conversions to and from dominating
//! sequences.

use roumieu_kit::family::{n_from_r, product_weight, r_from_n, RSequence};
use roumieu_kit::sequence::{relation, Relation, WeightSequence};

fn main() -> roumieu_kit::Result<()> {
    let depth = 120;
    let factorial = WeightSequence::gevrey(1.0, 1.0)?;
    let linear = RSequence::power(1.0)?; // r_j = j + 1

    println!("product weight at p = 3: 3! * (1*2*3*4) = {}", product_weight(&factorial, &linear, 3)?);

    // r_j = j+1 turns p! into p!(p+1)!.
    let n = n_from_r(&factorial, &linear, depth)?;
    println!(
        "N_5 = {}  (expected 5! * 6! = {})",
        n.at(5)?,
        120.0 * 720.0
    );
    println!("p! ≺ N: {}", relation(&factorial, &n, Relation::Prec, depth)?);

    // The reverse direction extracts an index sequence with a certified
    // product bound prod r_j <= kappa N_p/M_p.
    let extracted = r_from_n(&factorial, &n, depth)?;
    println!("\nextracted r from N = p!(p+1)!: kappa = {:.4}", extracted.kappa);
    for j in [0usize, 1, 5, 20, 100] {
        println!("  r_{j:>3} = {:.4}", extracted.r.at(j)?);
    }

    // Round trip: the rebuilt product sequence sits within kappa of N.
    let back = n_from_r(&factorial, &extracted.r, depth)?;
    let worst = (0..=depth)
        .map(|p| back.log_at(p).unwrap() - n.log_at(p).unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    println!("\nmax log(back_p / N_p) = {:.4}  (log kappa = {:.4})", worst, extracted.kappa.ln());
    Ok(())
}
