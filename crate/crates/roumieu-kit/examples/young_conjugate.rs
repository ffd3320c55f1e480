//! Young conjugation of phi(x) = omega(e^x): sampled phi*, the exact
//! zero at the origin, the increasing ratio phi*(y)/y and the
//! biconjugation round trip.

use roumieu_kit::omega::{young_conjugate, WeightFunctionOmega};

fn main() -> roumieu_kit::Result<()> {
    // logpower(2) has phi(x) = x^2 whose conjugate is y^2/4 in closed
    // form; a direct accuracy probe.
    let lp2 = WeightFunctionOmega::log_power(2.0)?;
    let conj = young_conjugate(&lp2, 100.0, 1025)?;
    println!("omega = (log t)^2, so phi(x) = x^2 and phi*(y) = y^2/4:");
    for y in [0.0, 1.0, 10.0, 50.0] {
        let v = conj.eval(y)?;
        println!("  phi*({y:>4}) = {v:>12.6}   (exact {:>12.6})", y * y / 4.0);
    }

    let half = WeightFunctionOmega::power(0.5)?;
    let conj = young_conjugate(&half, 400.0, 2049)?;
    println!("\nomega = sqrt(t) - 1:");
    println!("  phi*(0) = {} (exact by construction)", conj.eval(0.0)?);
    let (ys, values) = conj.samples();
    let ratio_start = values[1] / ys[1];
    let ratio_end = values[values.len() - 1] / ys[ys.len() - 1];
    println!("  phi*(y)/y rises from {ratio_start:.4} to {ratio_end:.4} across the grid");

    let x = 5.0;
    let back = conj.biconjugate_at(x)?;
    println!("  biconjugation at x = {x}: (phi*)*(x) = {back:.8} vs phi(x) = {:.8}", half.phi(x));
    Ok(())
}
