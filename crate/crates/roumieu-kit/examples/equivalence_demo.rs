//! The two-sided membership demo: the inductive search (some row and
//! geometric factor give a finite seminorm) against the projective test
//! (every sampled dominating sequence controls the profile, unless a
//! diagonal witness refutes it). The two verdicts must never contradict
//! each other.
//!
//! The designed negative case needs a deep prefix: the diagonal witness
//! for (p!)^{2.2} against (p!)^2 places its n-th block near
//! log p = (0.2 + log n)/0.2, which reaches p ~ 9e4 for n = 8.

use roumieu_kit::config::RunConfig;
use roumieu_kit::profile::DerivativeBoundProfile;
use roumieu_kit::seminorm::equivalence_report;
use roumieu_kit::matrix::WeightMatrix;
use roumieu_kit::sequence::WeightSequence;

fn main() -> roumieu_kit::Result<()> {
    let cfg = RunConfig { depth: 100_000, ..RunConfig::default() };
    let gevrey2_matrix = WeightMatrix::constant(WeightSequence::gevrey(2.0, 1.0)?, 8);

    println!("matrix: constant rows (p!)^2, depth {}", cfg.depth);

    let positive = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0)?;
    let rep = equivalence_report(&positive, &gevrey2_matrix, &cfg)?;
    println!("\nprofile (p!)^2 (designed positive):");
    println!("  inductive : {}", rep.inductive.verdict);
    println!("  projective: {}", rep.projective.verdict);
    println!("  consistent: {}", rep.consistent);

    let negative = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2)?;
    let rep = equivalence_report(&negative, &gevrey2_matrix, &cfg)?;
    println!("\nprofile (p!)^2.2 (designed negative):");
    println!("  inductive : {}", rep.inductive.verdict);
    println!("  projective: {}", rep.projective.verdict);
    if let Some(w) = &rep.projective.refutation {
        println!(
            "  witness   : {} blocks, first log partial sup = {:.3}",
            w.divergence_log_trace.len(),
            w.divergence_log_trace[0]
        );
    }
    println!("  consistent: {}", rep.consistent);
    Ok(())
}
