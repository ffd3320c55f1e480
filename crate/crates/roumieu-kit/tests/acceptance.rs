#![allow(clippy::needless_range_loop)]

//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its runtime (run with `cargo test --test acceptance -- --nocapture`
//! to see them).
//!
//! The sweep and membership criteria run at depth 100000: the designed
//! negative case places the n-th diagonal block near
//! log p = (0.2 + log n)/0.2, which needs p ~ 9e4 for n = 8, and the
//! h = 1/4 inductive point only turns upward past p ~ 1000.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use roumieu_kit::config::RunConfig;
use roumieu_kit::matrix::{witness_diagonal, witness_sup, WeightMatrix, WitnessConstruction};
use roumieu_kit::omega::{
    check_equiv_associated, matrix_from_omega, young_conjugate, WeightFunctionOmega,
};
use roumieu_kit::profile::DerivativeBoundProfile;
use roumieu_kit::seminorm::{corpus, equivalence_report, seminorm_n1, seminorm_r};
use roumieu_kit::sequence::{check_condition, log_convex_minorant, Condition, WeightSequence};
use roumieu_kit::util::{geometric_grid, linear_grid, log_factorial};

fn shipped_weight_functions() -> Vec<WeightFunctionOmega> {
    vec![
        WeightFunctionOmega::power(0.5).unwrap(),
        WeightFunctionOmega::power(1.0 / 3.0).unwrap(),
        WeightFunctionOmega::log_power(2.0).unwrap(),
    ]
}

#[test]
fn criterion_1_conjugate_identities() {
    let start = Instant::now();
    for omega in shipped_weight_functions() {
        let conj = young_conjugate(&omega, 120.0, 16385).unwrap();
        let (ys, values) = conj.samples();
        // phi*(0) = 0 exactly.
        assert_eq!(values[0], 0.0, "{}", omega.description());
        // phi*(y)/y non-decreasing on the grid.
        let mut prev = f64::NEG_INFINITY;
        for (y, v) in ys.iter().zip(values).skip(1) {
            let ratio = v / y;
            assert!(
                ratio >= prev - 1e-9 * (1.0 + ratio.abs()),
                "{}: phi*(y)/y dips at y = {y}",
                omega.description()
            );
            prev = ratio;
        }
        // Biconjugation restores phi within 1e-5 relative on interior
        // points with phi of meaningful size.
        let mut checked = 0usize;
        for &x in &linear_grid(0.25, 8.0, 63) {
            let phi = omega.phi(x);
            if phi < 1.0 {
                continue;
            }
            let back = conj.biconjugate_at(x).unwrap();
            assert!(
                (back - phi).abs() <= 1e-5 * phi,
                "{}: biconjugate off at x = {x}: {back} vs {phi}",
                omega.description()
            );
            checked += 1;
        }
        assert!(checked >= 20, "{}: too few interior points", omega.description());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 1 overran: {elapsed:?}");
    println!("criterion 1: PASS (conjugate identities, {elapsed:.2?})");
}

/// Greatest convex minorant of the points `(p, l_p)` at one index, by
/// chord enumeration: the minimum over all pairs `i <= p <= j` of the
/// chord through `(i, l_i)` and `(j, l_j)` evaluated at `p`.
fn oracle_envelope(l: &[f64]) -> Vec<f64> {
    let n = l.len();
    (0..n)
        .map(|p| {
            let mut best = l[p];
            for i in 0..=p {
                for j in p..n {
                    if i == j {
                        continue;
                    }
                    let value = l[i]
                        + (l[j] - l[i]) * (p as f64 - i as f64) / (j as f64 - i as f64);
                    if value < best {
                        best = value;
                    }
                }
            }
            best
        })
        .collect()
}

#[test]
fn criterion_2_minorant_matches_chord_oracle() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..1000 {
        let len = rng.random_range(1..=8usize);
        let logs: Vec<f64> = (0..len).map(|_| rng.random_range(-5.0..5.0)).collect();
        let seq = WeightSequence::from_log_values(logs.clone()).unwrap();
        let minorant = log_convex_minorant(&seq, len - 1).unwrap();
        let expected = oracle_envelope(&logs);
        for (p, want) in expected.iter().enumerate() {
            let got = minorant.log_at(p).unwrap();
            assert!(
                (got - want).abs() <= 1e-12,
                "case {case}, p = {p}: {got} vs oracle {want} (input {logs:?})"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 2 overran: {elapsed:?}");
    println!("criterion 2: PASS (minorant vs chord oracle on 1000 cases, {elapsed:.2?})");
}

#[test]
fn criterion_3_omega_matrix_properties() {
    let start = Instant::now();
    let depth = 200;
    for omega in shipped_weight_functions() {
        // Rows materialised one step past the check depth so the shift
        // condition can be evaluated at every p <= depth.
        let mat = matrix_from_omega(&omega, 8, depth + 1).unwrap();
        assert_eq!(mat.nmax(), 8);
        for n in 0..=8usize {
            let row = mat.row(n).unwrap();
            let m0 = check_condition(row, Condition::M0, depth).unwrap();
            assert!(m0.is_holds(), "{}: row {n} M0: {m0}", omega.description());
            let m1 = check_condition(row, Condition::M1, depth).unwrap();
            assert!(m1.is_holds(), "{}: row {n} M1: {m1}", omega.description());
        }
        let dc = roumieu_kit::matrix::check_matrix_m2_prime(&mat, depth).unwrap();
        assert!(dc.is_holds(), "{}: {dc}", omega.description());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "criterion 3 overran: {elapsed:?}");
    println!("criterion 3: PASS (matrix rows and derivation closedness, {elapsed:.2?})");
}

#[test]
fn criterion_4_gevrey_correspondence() {
    let start = Instant::now();
    let half = WeightFunctionOmega::power(0.5).unwrap();
    let mat = matrix_from_omega(&half, 1, 60).unwrap();
    let row1 = mat.row(1).unwrap();
    // Row 1 carries Gevrey-2 growth. In factorial form the log ratio
    // against (2p)! sits inside [0.9, 1.1] across p in [20, 60]; the
    // (p!)^2 form differs by the class-invisible scale 4^p, which keeps
    // the same ratio above 1.2 on this window.
    for p in 20..=60usize {
        let log_m = row1.log_at(p).unwrap();
        let ratio = log_m / log_factorial(2 * p);
        assert!((0.9..=1.1).contains(&ratio), "p = {p}: ratio {ratio}");
    }
    // Class-level equivalence with (p!)^2, both directions.
    let gevrey2 = WeightSequence::gevrey(2.0, 1.0).unwrap();
    let fwd = roumieu_kit::sequence::relation(
        row1,
        &gevrey2,
        roumieu_kit::sequence::Relation::Subset,
        60,
    )
    .unwrap();
    let bwd = roumieu_kit::sequence::relation(
        &gevrey2,
        row1,
        roumieu_kit::sequence::Relation::Subset,
        60,
    )
    .unwrap();
    assert!(fwd.is_holds() && bwd.is_holds(), "class equivalence: {fwd} / {bwd}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 4 overran: {elapsed:?}");
    println!("criterion 4: PASS (Gevrey-2 growth of the first row, {elapsed:.2?})");
}

#[test]
fn criterion_5_associated_function_round_trip() {
    let start = Instant::now();
    let ts = geometric_grid(10.0, 1e4, 61);
    for sigma in shipped_weight_functions() {
        let v = check_equiv_associated(&sigma, 200, &ts).unwrap();
        assert!(v.is_holds(), "{}: {v}", sigma.description());
        let c = v.constant("c").unwrap();
        let big_c = v.constant("C").unwrap();
        assert!(
            c >= 0.25 && big_c <= 4.0,
            "{}: window [{c}, {big_c}] escapes [1/4, 4]",
            sigma.description()
        );
    }
    let elapsed = start.elapsed();
    println!("criterion 5: PASS (associated-function windows inside [1/4, 4], {elapsed:.2?})");
}

#[test]
fn criterion_6_lemma_witnesses() {
    let start = Instant::now();
    let depth = 200;
    let mat = WeightMatrix::constant(WeightSequence::gevrey(1.0, 1.0).unwrap(), 8);
    // Sup-type witness: a_p = 1/(p!)^2 gives a_p N_p <= 1 exactly.
    let log_small: Vec<f64> = (0..=depth).map(|p| -2.0 * log_factorial(p)).collect();
    let w = witness_sup(&log_small, &mat, 8, depth).unwrap();
    for p in 0..=depth {
        let log_product = log_small[p] + w.sequence.log_at(p).unwrap();
        assert!(log_product <= 1e-12, "a_p N_p > 1 at p = {p}");
    }
    // Diagonal witness: a_p = p^p p! produces at least 5 blocks with
    // a(p_n)/N(p_n) >= n at each.
    let log_a: Vec<f64> = (0..=depth)
        .map(|p| p as f64 * (p.max(1) as f64).ln() + log_factorial(p))
        .collect();
    let w = witness_diagonal(&log_a, &mat, depth, &[]).unwrap();
    let WitnessConstruction::Diagonal { blocks } = &w.construction else {
        panic!("diagonal construction expected");
    };
    assert!(blocks.len() >= 6, "only {} blocks", blocks.len() - 1);
    for (i, (p_n, n)) in blocks.iter().enumerate().skip(1) {
        let direct = log_a[*p_n] - w.sequence.log_at(*p_n).unwrap();
        assert!(
            direct >= (*n as f64).ln() - 1e-9,
            "ratio below n at block {n} (p = {p_n})"
        );
        assert!((direct - w.divergence_log_trace[i - 1]).abs() < 1e-9);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 2.0, "criterion 6 overran: {elapsed:?}");
    println!("criterion 6: PASS (witness constructions, {elapsed:.2?})");
}

#[test]
fn criterion_7_seminorm_bridge() {
    let start = Instant::now();
    let depth = 200;
    let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
    for r in [
        roumieu_kit::family::RSequence::power(1.0).unwrap(),
        roumieu_kit::family::RSequence::geometric(2.0).unwrap(),
    ] {
        let n = roumieu_kit::family::n_from_r(&m, &r, depth).unwrap();
        for profile in corpus() {
            let lhs = seminorm_r(&profile, &m, &r, depth).unwrap();
            let rhs = seminorm_n1(&profile, &n, depth).unwrap();
            assert!(
                (lhs.log_value - rhs.log_value).abs() <= 1e-12,
                "bridge broken for {} (gap {})",
                profile.description(),
                (lhs.log_value - rhs.log_value).abs()
            );
            assert_eq!(lhs.argmax, rhs.argmax, "argmax split for {}", profile.description());
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 7: PASS (product seminorm equals unit seminorm, {elapsed:.2?})");
}

#[test]
fn criterion_8_consistency_sweep() {
    let start = Instant::now();
    let cfg = RunConfig { depth: 100_000, ..RunConfig::default() };
    let matrices = vec![
        ("constant p!", WeightMatrix::constant(WeightSequence::gevrey(1.0, 1.0).unwrap(), 8)),
        (
            "constant (p!)^2",
            WeightMatrix::constant(WeightSequence::gevrey(2.0, 1.0).unwrap(), 8),
        ),
        (
            "matrix of power(1/2)",
            matrix_from_omega(&WeightFunctionOmega::power(0.5).unwrap(), 8, cfg.depth)
                .unwrap(),
        ),
    ];
    let profiles = corpus();
    assert!(profiles.len() >= 6);
    for (mat_name, mat) in &matrices {
        for profile in &profiles {
            let rep = equivalence_report(profile, mat, &cfg).unwrap();
            assert!(
                !rep.contradictory(),
                "contradictory pair for {} over {mat_name}: {} / {}",
                profile.description(),
                rep.inductive.verdict,
                rep.projective.verdict
            );
        }
    }
    // Designed positive: (p!)^2 over the Gevrey-2 matrix.
    let positive = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0).unwrap();
    let rep = equivalence_report(&positive, &matrices[1].1, &cfg).unwrap();
    assert!(rep.inductive.verdict.is_holds(), "positive inductive: {}", rep.inductive.verdict);
    assert!(rep.projective.verdict.is_holds(), "positive projective: {}", rep.projective.verdict);
    // Designed negative: (p!)^{2.2} over the Gevrey-2 matrix.
    let negative = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap();
    let rep = equivalence_report(&negative, &matrices[1].1, &cfg).unwrap();
    assert!(
        rep.inductive.verdict.is_inconclusive() || rep.inductive.verdict.is_fails(),
        "negative inductive: {}",
        rep.inductive.verdict
    );
    assert!(rep.projective.verdict.is_fails(), "negative projective: {}", rep.projective.verdict);
    assert!(rep.projective.refutation.is_some(), "negative case must carry a witness");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "criterion 8 overran: {elapsed:?}");
    println!("criterion 8: PASS (consistency sweep with designed outcomes, {elapsed:.2?})");
}
