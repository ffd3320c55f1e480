//! All four seminorm systems on one function-backed profile:
//! a_p = 2^{p+1} p!, the derivative bounds of 1/(1-x) on [-1/2, 1/2].

use roumieu_kit::family::{n_from_r, RSequence};
use roumieu_kit::omega::{young_conjugate, WeightFunctionOmega};
use roumieu_kit::profile::DerivativeBoundProfile;
use roumieu_kit::seminorm::{seminorm_mh, seminorm_n1, seminorm_omega_rho, seminorm_r};
use roumieu_kit::sequence::WeightSequence;

fn main() -> roumieu_kit::Result<()> {
    let depth = 200;
    let profile = DerivativeBoundProfile::analytic_cauchy();
    let factorial = WeightSequence::gevrey(1.0, 1.0)?;
    println!("profile: {} with a_p = 2^(p+1) p!", profile.description());

    // Geometric-factor system: at h = 1/4 the ratio is 2 (1/2)^p.
    let s = seminorm_mh(&profile, &factorial, 0.25, depth)?;
    println!("\n  mh    (M = p!, h = 1/4): value {:.6}, argmax {}", s.value(), s.argmax);

    // Unit system against a dominating sequence.
    let n = n_from_r(&factorial, &RSequence::power(1.0)?, depth)?;
    let s = seminorm_n1(&profile, &n, depth)?;
    println!("  n1    (N = p!(p+1)!)   : value {:.6}, argmax {}", s.value(), s.argmax);

    // Weight-function system through the Young conjugate.
    let half = WeightFunctionOmega::power(0.5)?;
    let conj = young_conjugate(&half, depth as f64 + 1.0, 1025)?;
    let s = seminorm_omega_rho(&profile, &conj, 1.0, depth)?;
    println!("  omega (power(1/2), rho = 1): log value {:.6}, settled: {}", s.log_value, s.stabilized);

    // Product-weight system; by construction it agrees with n1 over the
    // sequence built from the same index family.
    let s_r = seminorm_r(&profile, &factorial, &RSequence::power(1.0)?, depth)?;
    println!("  r     (r_j = j+1)      : value {:.6}", s_r.value());
    let s_n = seminorm_n1(&profile, &n, depth)?;
    println!(
        "\nbridge: |log r-seminorm - log n1-seminorm| = {:.3e}",
        (s_r.log_value - s_n.log_value).abs()
    );
    Ok(())
}
