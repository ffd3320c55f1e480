//! Comparing weight sequences: inclusion M ⊂ N (a bound C h^p for some
//! h) versus strict domination M ≺ N (the bound for every h). Both are
//! read off the root sequence (M_p/N_p)^{1/p}.

use roumieu_kit::sequence::{relation, Relation, WeightSequence};

fn main() -> roumieu_kit::Result<()> {
    let depth = 120;
    let factorial = WeightSequence::gevrey(1.0, 1.0)?;
    let square = WeightSequence::gevrey(2.0, 1.0)?;
    let doubled = WeightSequence::gevrey(1.0, 2.0)?;

    println!("p! vs (p!)^2:");
    println!("  subset: {}", relation(&factorial, &square, Relation::Subset, depth)?);
    println!("  prec:   {}", relation(&factorial, &square, Relation::Prec, depth)?);

    println!("\np! vs 2^p p!  (geometric gap only):");
    println!("  subset: {}", relation(&factorial, &doubled, Relation::Subset, depth)?);
    println!("  prec:   {}", relation(&factorial, &doubled, Relation::Prec, depth)?);

    println!("\nM vs M (self-comparison):");
    println!("  subset: {}", relation(&factorial, &factorial.clone(), Relation::Subset, depth)?);
    println!("  prec:   {}", relation(&factorial, &factorial.clone(), Relation::Prec, depth)?);

    // The numeric route sees only the prefix: a tabulated copy of the
    // geometric-gap pair cannot certify the failure, only decline.
    let tab_m = WeightSequence::from_log_values(factorial.log_prefix(depth)?)?;
    let tab_n = WeightSequence::from_log_values(doubled.log_prefix(depth)?)?;
    println!("\nsame pair, tabulated prefixes only:");
    println!("  prec:   {}", relation(&tab_m, &tab_n, Relation::Prec, depth)?);
    Ok(())
}
