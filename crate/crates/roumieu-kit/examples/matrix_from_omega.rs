//! The weight matrix generated by a weight function: rows
//! log M^n_p = phi*(np)/n. Every row satisfies (M.0) and (M.1), the
//! matrix is derivation-closed, and for omega = sqrt(t) - 1 the first
//! row carries Gevrey-2 growth.

use roumieu_kit::matrix::check_matrix_m2_prime;
use roumieu_kit::omega::{matrix_from_omega, WeightFunctionOmega};
use roumieu_kit::sequence::{check_condition, relation, Condition, Relation, WeightSequence};
use roumieu_kit::util::log_factorial;

fn main() -> roumieu_kit::Result<()> {
    let half = WeightFunctionOmega::power(0.5)?;
    let pmax = 60;
    let mat = matrix_from_omega(&half, 4, pmax)?;
    println!("matrix of omega = sqrt(t) - 1, rows 0..=4, depth {pmax}");

    for n in 1..=4usize {
        let row = mat.row(n)?;
        let m0 = check_condition(row, Condition::M0, pmax)?;
        let m1 = check_condition(row, Condition::M1, pmax - 1)?;
        println!("  row {n}: M0 {}, M1 {}", m0, m1);
    }
    println!("  matrix derivation closedness: {}", check_matrix_m2_prime(&mat, pmax - 1)?);

    // Row 1 grows like the Gevrey-2 sequence in factorial form (2p)!;
    // the extra 4^p scale relative to (p!)^2 is a class-invisible factor.
    let row1 = mat.row(1)?;
    println!("\n  log M^1_p / log((2p)!):");
    for p in [20usize, 40, 60] {
        let ratio = row1.log_at(p)? / log_factorial(2 * p);
        println!("    p = {p:>2}: {ratio:.4}");
    }
    let gevrey2 = WeightSequence::gevrey(2.0, 1.0)?;
    println!(
        "  row1 within the (p!)^2 class both ways: {} / {}",
        relation(row1, &gevrey2, Relation::Subset, pmax)?,
        relation(&gevrey2, row1, Relation::Subset, pmax)?
    );
    Ok(())
}
