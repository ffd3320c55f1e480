#![allow(clippy::needless_range_loop)]

//! Property tests for the structural invariants: regularisation,
//! relations, scaling, witnesses, product weights and seminorm algebra.

use proptest::prelude::*;

use roumieu_kit::family::{n_from_r, product_weight, r_from_n, RSequence};
use roumieu_kit::matrix::{
    schedule_isqrt, schedule_linear, vset_membership, vset_sample, witness_diagonal,
    witness_sup, WeightMatrix,
};
use roumieu_kit::profile::DerivativeBoundProfile;
use roumieu_kit::seminorm::{roumieu_membership, seminorm_mh};
use roumieu_kit::sequence::{
    associated_function, check_condition, log_convex_minorant, relation, scale_geometric,
    Condition, Relation, WeightSequence,
};
use roumieu_kit::util::{geometric_grid, log_factorial};

fn log_values(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-6.0..6.0f64, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// The minorant sits below the input, is log-convex on the prefix,
    /// and applying it twice changes nothing.
    #[test]
    fn minorant_below_convex_idempotent(logs in log_values(3..=40)) {
        let depth = logs.len() - 1;
        let seq = WeightSequence::from_log_values(logs.clone()).unwrap();
        let minorant = log_convex_minorant(&seq, depth).unwrap();
        for p in 0..=depth {
            prop_assert!(minorant.log_at(p).unwrap() <= logs[p] + 1e-12);
        }
        if depth >= 2 {
            prop_assert!(check_condition(&minorant, Condition::M1, depth).unwrap().is_holds());
        }
        let twice = log_convex_minorant(&minorant, depth).unwrap();
        for p in 0..=depth {
            prop_assert!(
                (twice.log_at(p).unwrap() - minorant.log_at(p).unwrap()).abs() <= 1e-12
            );
        }
    }

    /// On short prefixes the minorant equals the brute-force chord
    /// enumeration (the greatest convex minorant of finitely many points
    /// evaluates at p as the minimum over all chords spanning p).
    #[test]
    fn minorant_is_maximal_on_short_prefixes(logs in log_values(2..=8)) {
        let depth = logs.len() - 1;
        let seq = WeightSequence::from_log_values(logs.clone()).unwrap();
        let minorant = log_convex_minorant(&seq, depth).unwrap();
        for p in 0..=depth {
            let mut oracle = logs[p];
            for i in 0..=p {
                for j in p..=depth {
                    if i == j { continue; }
                    let chord = logs[i]
                        + (logs[j] - logs[i]) * (p - i) as f64 / (j - i) as f64;
                    oracle = oracle.min(chord);
                }
            }
            prop_assert!((minorant.log_at(p).unwrap() - oracle).abs() <= 1e-12);
        }
    }

    /// Strict domination implies inclusion on the same prefix.
    #[test]
    fn prec_implies_subset(
        lm in log_values(16..=48),
        shift in prop::collection::vec(0.0..2.0f64, 16..=48),
    ) {
        let depth = lm.len().min(shift.len()) - 1;
        let lm = &lm[..=depth];
        // N grows at least as fast as M by a cumulative positive drift.
        let mut ln = Vec::with_capacity(depth + 1);
        let mut acc = 0.0;
        for p in 0..=depth {
            acc += shift[p];
            ln.push(lm[p] + acc);
        }
        let m = WeightSequence::from_log_values(lm.to_vec()).unwrap();
        let n = WeightSequence::from_log_values(ln).unwrap();
        let prec = relation(&m, &n, Relation::Prec, depth).unwrap();
        if prec.is_holds() {
            prop_assert!(relation(&m, &n, Relation::Subset, depth).unwrap().is_holds());
        }
    }

    /// Scaling by rho and then by 1/rho restores the sequence exactly.
    #[test]
    fn geometric_scaling_round_trip(
        logs in log_values(2..=20),
        rho in prop_oneof![0.01..100.0f64, Just(0.3), Just(3.0)],
    ) {
        let seq = WeightSequence::from_log_values(logs).unwrap();
        let there = scale_geometric(&seq, rho).unwrap();
        let back = scale_geometric(&there, 1.0 / rho).unwrap();
        prop_assert_eq!(&back, &seq);
        // And in the other order.
        let there = scale_geometric(&seq, 1.0 / rho).unwrap();
        let back = scale_geometric(&there, rho).unwrap();
        prop_assert_eq!(&back, &seq);
    }

    /// The associated function is non-decreasing in t and in the depth.
    #[test]
    fn associated_function_monotone(
        logs in log_values(8..=40),
        t1 in 0.0..50.0f64,
        t2 in 0.0..50.0f64,
    ) {
        let depth = logs.len() - 1;
        let seq = WeightSequence::from_log_values(logs).unwrap();
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let a_lo = associated_function(&seq, lo, depth).unwrap();
        let a_hi = associated_function(&seq, hi, depth).unwrap();
        prop_assert!(a_lo.value <= a_hi.value + 1e-12);
        let shallow = associated_function(&seq, hi, depth / 2).unwrap();
        prop_assert!(shallow.value <= a_hi.value + 1e-12);
    }

    /// The sup-type witness bound a_p N_p <= 1 is exact whenever the
    /// construction accepts the profile.
    #[test]
    fn sup_witness_bound_exact(s in 1.3..3.0f64, c in 0.1..10.0f64) {
        let depth = 120;
        let mat = WeightMatrix::constant(WeightSequence::gevrey(1.0, 1.0).unwrap(), 6);
        let log_a: Vec<f64> =
            (0..=depth).map(|p| c.ln() - s * log_factorial(p)).collect();
        if let Ok(w) = witness_sup(&log_a, &mat, 6, depth) {
            for p in 0..=depth {
                prop_assert!(log_a[p] + w.sequence.log_at(p).unwrap() <= 1e-12);
            }
        }
    }

    /// Diagonal witness block starts certify their levels whenever the
    /// construction completes.
    #[test]
    fn diagonal_witness_levels(extra in 0.3..1.5f64) {
        let depth = 200;
        let mat = WeightMatrix::constant(WeightSequence::gevrey(1.0, 1.0).unwrap(), 6);
        let log_a: Vec<f64> = (0..=depth)
            .map(|p| (1.0 + extra) * p as f64 * (p.max(1) as f64).ln() + log_factorial(p))
            .collect();
        if let Ok(w) = witness_diagonal(&log_a, &mat, depth, &[]) {
            for (i, level) in w.divergence_log_trace.iter().enumerate() {
                prop_assert!(*level >= ((i + 1) as f64).ln() - 1e-12);
            }
        }
    }

    /// The product weight strictly increases when any single factor
    /// r_j with j <= p is bumped.
    #[test]
    fn product_weight_monotone_in_entries(
        j in 0usize..12,
        bump in 0.1..3.0f64,
    ) {
        let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
        let p = 12;
        let base: Vec<f64> = (0..=p).map(|k| 1.0 + k as f64).collect();
        let mut bumped = base.clone();
        for v in bumped.iter_mut().skip(j) {
            *v += bump; // keep it non-decreasing
        }
        // A relaxed growth floor: the property under test is product
        // monotonicity, not divergence evidence.
        let r0 = RSequence::tabulated_with_floor(&base, 1.5).unwrap();
        let r1 = RSequence::tabulated_with_floor(&bumped, 1.5).unwrap();
        prop_assert!(
            product_weight(&m, &r1, p).unwrap() > product_weight(&m, &r0, p).unwrap()
        );
    }

    /// Seminorms are positively homogeneous in the profile and
    /// non-decreasing in h.
    #[test]
    fn seminorm_scaling_laws(
        lambda in 0.01..100.0f64,
        h1 in 0.05..2.0f64,
        h2 in 0.05..2.0f64,
    ) {
        let depth = 100;
        let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
        let profile = DerivativeBoundProfile::analytic_cauchy();
        let s = seminorm_mh(&profile, &m, h1, depth).unwrap();
        let scaled = seminorm_mh(&profile.scaled(lambda).unwrap(), &m, h1, depth).unwrap();
        prop_assert!((scaled.log_value - (s.log_value + lambda.ln())).abs() <= 1e-9);
        let (lo, hi) = if h1 <= h2 { (h1, h2) } else { (h2, h1) };
        let s_lo = seminorm_mh(&profile, &m, lo, depth).unwrap();
        let s_hi = seminorm_mh(&profile, &m, hi, depth).unwrap();
        prop_assert!(s_lo.log_value <= s_hi.log_value + 1e-12);
    }
}

#[test]
fn associated_function_recovers_log_convex_sequences() {
    // For log-convex N with N_0 = 1, sup over a t-grid of
    // t^p exp(-omega_N(t)) returns N_p up to grid resolution: within a
    // factor 1.05 for p <= 10 on a 10^4-point geometric grid.
    let n = WeightSequence::gevrey(1.0, 1.0).unwrap();
    let depth = 200;
    let ts = geometric_grid(1e-2, 1e6, 10_000);
    let omega_values: Vec<f64> = ts
        .iter()
        .map(|&t| associated_function(&n, t, depth).unwrap().value)
        .collect();
    for p in 0..=10usize {
        let recovered = ts
            .iter()
            .zip(&omega_values)
            .map(|(&t, &w)| p as f64 * t.ln() - w)
            .fold(f64::NEG_INFINITY, f64::max);
        let exact = n.log_at(p).unwrap();
        assert!(recovered <= exact + 1e-12, "recovery overshoots at p = {p}");
        assert!(
            exact - recovered <= 1.05f64.ln(),
            "recovery misses a factor > 1.05 at p = {p}: gap {}",
            (exact - recovered).exp()
        );
    }
}

#[test]
fn sampled_members_pass_membership_where_their_tails_settle() {
    // Parametric unbounded index sequences produce dominating sequences
    // that pass the domination test once the prefix is long enough for
    // their tails.
    let m = WeightSequence::gevrey(1.0, 1.0).unwrap();
    let mat = WeightMatrix::constant(m.clone(), 8);
    for r in [RSequence::power(1.0).unwrap(), RSequence::geometric(2.0).unwrap()] {
        let n = n_from_r(&m, &r, 200).unwrap();
        let v = vset_membership(&n, &mat, 200).unwrap();
        assert!(v.is_holds(), "{v}");
        let extracted = r_from_n(&m, &n, 200).unwrap();
        let products = extracted.r.log_products(200).unwrap();
        for p in 0..=200usize {
            let q = n.log_at(p).unwrap() - m.log_at(p).unwrap();
            assert!(products[p] <= extracted.kappa.ln() + q + 1e-9);
        }
    }
}

#[test]
fn membership_witness_freezes_sampled_partial_sups() {
    // When the inductive search certifies a profile with (n, h), the
    // partial suprema of a_p/N_p along any sampled dominating sequence
    // stop setting records once the schedule passes 1/h: from there on
    // a_p/N_p <= bound * (h n_p)^{-p} decays.
    let depth = 400;
    let profile = DerivativeBoundProfile::analytic_cauchy();
    let mat = WeightMatrix::constant(WeightSequence::gevrey(1.0, 1.0).unwrap(), 8);
    let v = roumieu_membership(&profile, &mat, &[1.0, 0.5, 0.25], depth).unwrap();
    let h = v.constant("h").expect("membership holds");
    for schedule in [schedule_isqrt(depth), schedule_linear(depth)] {
        let n = vset_sample(&mat, &schedule, depth).unwrap();
        let la = profile.log_prefix(depth).unwrap();
        let ln = n.log_prefix(depth).unwrap();
        let domination_start = (0..=depth)
            .find(|&p| schedule[p] as f64 * h > 1.0)
            .expect("schedule diverges");
        let mut run = f64::NEG_INFINITY;
        let mut last_record = 0usize;
        for p in 0..=depth {
            let term = la[p] - ln[p];
            if term > run + 1e-12 {
                run = term;
                last_record = p;
            }
        }
        assert!(
            last_record <= domination_start,
            "a new partial supremum at p = {last_record} after domination began at \
             {domination_start}"
        );
    }
}

#[test]
fn boundary_divergence_does_not_reverse_with_depth() {
    // For ratio-monotone profiles, boundary-attained evidence at one
    // depth persists at every deeper truncation.
    let profile = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap();
    let m = WeightSequence::gevrey(2.0, 1.0).unwrap();
    for depth in [50usize, 100, 200, 400, 800] {
        let s = seminorm_mh(&profile, &m, 1.0, depth).unwrap();
        assert!(s.boundary_attained, "lost divergence evidence at depth {depth}");
    }
}
