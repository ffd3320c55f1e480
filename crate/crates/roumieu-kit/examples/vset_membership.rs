//! The dominating family of a weight matrix: sequences N with M^n ≺ N
//! for every row. Samples come from diverging schedules; the starred
//! variant additionally demands log-convexity of the candidate.

use roumieu_kit::family::{n_from_r, RSequence};
use roumieu_kit::matrix::{
    schedule_isqrt, schedule_linear, vset_membership, vset_sample, vset_star_membership,
    WeightMatrix,
};
use roumieu_kit::sequence::WeightSequence;

fn main() -> roumieu_kit::Result<()> {
    let depth = 200;
    let factorial = WeightSequence::gevrey(1.0, 1.0)?;
    let mat = WeightMatrix::constant(factorial.clone(), 8);
    println!("matrix: constant rows p!, depth {depth}");

    // p!(p+1)! dominates strictly; it is also log-convex.
    let heavy = n_from_r(&factorial, &RSequence::power(1.0)?, depth)?;
    println!("  N = p!(p+1)!       : {}", vset_membership(&heavy, &mat, depth)?);
    println!("  N = p!(p+1)! (star): {}", vset_star_membership(&heavy, &mat, depth)?);

    // A geometric gap is not enough, and a row never dominates itself.
    let doubled = WeightSequence::gevrey(1.0, 2.0)?;
    println!("  N = 2^p p!         : {}", vset_membership(&doubled, &mat, depth)?);
    println!("  N = p! (a row)     : {}", vset_membership(&factorial, &mat, depth)?);

    // Sampled members: the linear schedule settles at this depth, the
    // sqrt schedule needs a longer prefix before its tail root clears
    // the tolerance.
    let fast = vset_sample(&mat, &schedule_linear(depth), depth)?;
    println!("  sampled (p+1)^p p! : {}", vset_membership(&fast, &mat, depth)?);
    let slow = vset_sample(&mat, &schedule_isqrt(depth), depth)?;
    println!("  sampled sqrt-sched : {}", vset_membership(&slow, &mat, depth)?);
    let deep = 800;
    let slow_deep = vset_sample(&mat, &schedule_isqrt(deep), deep)?;
    println!("  same at depth {deep}: {}", vset_membership(&slow_deep, &mat, deep)?);
    Ok(())
}
