//! The associated function omega_N(t) = sup_p log(t^p N_0 / N_p): the
//! growth of a weight sequence read as a function on [0, inf). The
//! boundary flag reports when the truncation is too shallow to trust the
//! value.

use roumieu_kit::sequence::{associated_function, WeightSequence};

fn main() -> roumieu_kit::Result<()> {
    let factorial = WeightSequence::gevrey(1.0, 1.0)?;
    let depth = 200;
    println!("omega_N for N = p! at depth {depth}:");
    for t in [0.5, 1.0, 2.0, 10.0, 100.0] {
        let a = associated_function(&factorial, t, depth)?;
        println!(
            "  t = {t:>6}: omega_N = {:>12.6}, argmax p = {:>3}, boundary: {}",
            a.value, a.argmax, a.boundary_attained
        );
    }

    // A constant sequence has an infinite associated function for t > 1;
    // the prefix maximum rides the boundary and says so.
    let flat = WeightSequence::from_log_values(vec![0.0; depth + 1])?;
    let a = associated_function(&flat, 2.0, depth)?;
    println!("\nN = (1, 1, 1, ...) at t = 2: value {:.4} with boundary = {}", a.value, a.boundary_attained);

    // Monotone in t and in the depth.
    let shallow = associated_function(&factorial, 10.0, 50)?;
    let deep = associated_function(&factorial, 10.0, 400)?;
    println!(
        "\nmonotone in depth at t = 10: {:.6} (depth 50) <= {:.6} (depth 400)",
        shallow.value, deep.value
    );
    Ok(())
}
