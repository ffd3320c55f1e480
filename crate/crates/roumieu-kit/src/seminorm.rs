//! The four seminorm systems and the membership demos.
//!
//! Every seminorm is a supremum over the prefix of a ratio between a
//! profile and a weight; at desk scale "finite" means: finite value, the
//! maximum not pinned to the prefix end, and partial maxima already
//! settled in the first three quarters. Non-membership is only ever
//! claimed through a diagonal witness whose partial suprema demonstrably
//! cross the configured divergence threshold.

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::family::{log_product_weight, RSequence};
use crate::matrix::{
    schedule_isqrt, schedule_linear, vset_membership, vset_sample, witness_diagonal, VWitness,
    WeightMatrix,
};
use crate::omega::YoungConjugate;
use crate::profile::DerivativeBoundProfile;
use crate::sequence::WeightSequence;
use crate::util::first_argmax;
use crate::verdict::{witness_of, Verdict};

/// A computed seminorm: the supremum over the checked prefix, in log
/// scale, with the truncation diagnostics needed to read it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeminormValue {
    pub log_value: f64,
    /// Smallest index attaining the supremum.
    pub argmax: usize,
    pub depth: usize,
    /// The supremum is first attained at the prefix end.
    pub boundary_attained: bool,
    /// The running maximum did not move in the last quarter.
    pub stabilized: bool,
}

impl SeminormValue {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    /// The desk-scale reading of "the seminorm is finite".
    pub fn finite_evidence(&self) -> bool {
        self.stabilized && !self.boundary_attained
    }
}

fn sup_of(terms: &[f64]) -> SeminormValue {
    let depth = terms.len() - 1;
    let (argmax, log_value) = first_argmax(terms);
    SeminormValue {
        log_value,
        argmax,
        depth,
        boundary_attained: argmax == depth,
        stabilized: argmax <= (3 * depth) / 4,
    }
}

/// `sup_p h^p a_p / M_p` over the prefix.
pub fn seminorm_mh(
    profile: &DerivativeBoundProfile,
    m: &WeightSequence,
    h: f64,
    depth: usize,
) -> Result<SeminormValue> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("h = {h}; h > 0 required")));
    }
    let la = profile.log_prefix(depth)?;
    let lm = m.log_prefix(depth)?;
    let log_h = h.ln();
    let terms: Vec<f64> =
        (0..=depth).map(|p| p as f64 * log_h + la[p] - lm[p]).collect();
    Ok(sup_of(&terms))
}

/// `sup_p a_p / N_p`: the projective-side seminorm.
pub fn seminorm_n1(
    profile: &DerivativeBoundProfile,
    n: &WeightSequence,
    depth: usize,
) -> Result<SeminormValue> {
    seminorm_mh(profile, n, 1.0, depth)
}

/// `sup_p a_p exp(-phi*(rho p)/rho)`: the weight-function seminorm.
pub fn seminorm_omega_rho(
    profile: &DerivativeBoundProfile,
    conj: &YoungConjugate,
    rho: f64,
    depth: usize,
) -> Result<SeminormValue> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidArgument(format!("rho = {rho}; rho > 0 required")));
    }
    let la = profile.log_prefix(depth)?;
    let mut terms = Vec::with_capacity(depth + 1);
    for (p, la_p) in la.iter().enumerate() {
        terms.push(la_p - conj.eval_exact(rho * p as f64)? / rho);
    }
    Ok(sup_of(&terms))
}

/// `sup_p a_p / (M_p prod_{j<=p} r_j)`: the product-weight seminorm.
pub fn seminorm_r(
    profile: &DerivativeBoundProfile,
    m: &WeightSequence,
    r: &RSequence,
    depth: usize,
) -> Result<SeminormValue> {
    let la = profile.log_prefix(depth)?;
    let terms: Result<Vec<f64>> =
        (0..=depth).map(|p| Ok(la[p] - log_product_weight(m, r, p)?)).collect();
    Ok(sup_of(&terms?))
}

/// Inductive-side membership: search the `(row, h)` grid for one finite
/// seminorm.
///
/// Holds with the witnessing `(n, h, bound)` when some grid point shows
/// finite evidence; otherwise inconclusive. Never fails: absence of a
/// finite point on a finite grid refutes nothing.
pub fn roumieu_membership(
    profile: &DerivativeBoundProfile,
    mat: &WeightMatrix,
    h_grid: &[f64],
    depth: usize,
) -> Result<Verdict> {
    if h_grid.is_empty() {
        return Err(Error::InvalidArgument("empty h grid".into()));
    }
    for &n in &mat.distinct_rows(depth) {
        for &h in h_grid {
            let s = seminorm_mh(profile, mat.row(n)?, h, depth)?;
            if s.finite_evidence() {
                return Ok(Verdict::holds(witness_of(&[
                    ("n", n as f64),
                    ("h", h),
                    ("bound", s.value()),
                    ("log_bound", s.log_value),
                ]))
                .with_trace(format!(
                    "finite seminorm at row {n}, h = {h}, attained at p = {}",
                    s.argmax
                )));
            }
        }
    }
    Ok(Verdict::inconclusive(depth)
        .with_trace("no grid point showed a settled finite seminorm"))
}

/// One examined dominating sequence inside the projective evidence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleEvidence {
    pub label: String,
    pub membership: Verdict,
    pub seminorm: SeminormValue,
}

/// The projective side of the membership question, with the evidence
/// that produced the verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectiveEvidence {
    pub verdict: Verdict,
    pub samples: Vec<SampleEvidence>,
    /// A successful diagonal witness: the refutation certificate.
    pub refutation: Option<VWitness>,
}

/// Projective-side membership against explicit samples.
///
/// Samples must not fail the domination test (a failing sample is
/// rejected as invalid; an inconclusive one is admitted with a note,
/// since slowly-diverging schedules settle only on long prefixes). The
/// refutation route runs the diagonal witness with the configured
/// thresholds; when it completes, non-membership evidence wins over any
/// finite sample seminorms.
pub fn projective_membership(
    profile: &DerivativeBoundProfile,
    mat: &WeightMatrix,
    samples: &[(String, WeightSequence)],
    depth: usize,
    thresholds: &[f64],
) -> Result<ProjectiveEvidence> {
    let log_a = profile.log_prefix(depth)?;
    let mut evidence = Vec::with_capacity(samples.len());
    for (label, n) in samples {
        let membership = vset_membership(n, mat, depth)?;
        if membership.is_fails() {
            return Err(Error::InvalidArgument(format!(
                "sample {label:?} fails the domination test: {membership}"
            )));
        }
        let seminorm = seminorm_n1(profile, n, depth)?;
        evidence.push(SampleEvidence { label: label.clone(), membership, seminorm });
    }
    match witness_diagonal(&log_a, mat, depth, thresholds) {
        Ok(witness) => {
            let (p1, _) = match &witness.construction {
                crate::matrix::WitnessConstruction::Diagonal { blocks } => blocks[1],
                _ => unreachable!("diagonal witness"),
            };
            let verdict = Verdict::fails(
                p1,
                witness_of(&[
                    ("first_block", p1 as f64),
                    ("log_partial_sup", witness.divergence_log_trace[0]),
                    ("blocks", (witness.divergence_log_trace.len()) as f64),
                ]),
            )
            .with_trace(
                "diagonal witness constructed: partial suprema cross every configured threshold",
            );
            Ok(ProjectiveEvidence { verdict, samples: evidence, refutation: Some(witness) })
        }
        Err(Error::BlockNotFound { .. }) => {
            let all_finite = evidence.iter().all(|s| s.seminorm.finite_evidence());
            let verdict = if evidence.is_empty() {
                Verdict::inconclusive(depth).with_trace("no samples and no refutation")
            } else if all_finite {
                Verdict::holds(witness_of(&[("samples", evidence.len() as f64)]))
                    .with_trace("finite settled seminorm on every sampled dominating sequence")
            } else {
                Verdict::inconclusive(depth)
                    .with_trace("some sampled seminorm has not settled on the prefix")
            };
            Ok(ProjectiveEvidence { verdict, samples: evidence, refutation: None })
        }
        Err(other) => Err(other),
    }
}

/// Summary of one inductive grid point, kept in the report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InductivePoint {
    pub row: usize,
    pub h: f64,
    pub seminorm: SeminormValue,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InductiveEvidence {
    pub verdict: Verdict,
    pub tried: Vec<InductivePoint>,
}

/// The two-sided membership report: the executable shadow of the
/// equivalence between the inductive and projective descriptions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub profile: String,
    pub matrix: String,
    pub config: RunConfig,
    pub inductive: InductiveEvidence,
    pub projective: ProjectiveEvidence,
    /// False exactly when the two sides contradict each other
    /// (holds/fails in either order), which no run should produce.
    pub consistent: bool,
}

impl EquivalenceReport {
    pub fn contradictory(&self) -> bool {
        !self.consistent
    }
}

/// Run both sides on a profile against a matrix.
///
/// Samples are generated from the square-root and linear schedules; the
/// inductive side records every grid point it examined.
pub fn equivalence_report(
    profile: &DerivativeBoundProfile,
    mat: &WeightMatrix,
    cfg: &RunConfig,
) -> Result<EquivalenceReport> {
    cfg.validate()?;
    let depth = cfg.depth;
    let mut tried = Vec::new();
    for &n in &mat.distinct_rows(depth) {
        for &h in &cfg.h_grid {
            tried.push(InductivePoint {
                row: n,
                h,
                seminorm: seminorm_mh(profile, mat.row(n)?, h, depth)?,
            });
        }
    }
    let inductive_verdict = roumieu_membership(profile, mat, &cfg.h_grid, depth)?;
    let samples = vec![
        ("isqrt".to_string(), vset_sample(mat, &schedule_isqrt(depth), depth)?),
        ("linear".to_string(), vset_sample(mat, &schedule_linear(depth), depth)?),
    ];
    let projective =
        projective_membership(profile, mat, &samples, depth, &[cfg.divergence_threshold])?;
    let consistent = !(inductive_verdict.is_holds() && projective.verdict.is_fails())
        && !(inductive_verdict.is_fails() && projective.verdict.is_holds());
    Ok(EquivalenceReport {
        profile: profile.description(),
        matrix: format!("{:?} with {} rows", mat.provenance(), mat.nmax() + 1),
        config: cfg.clone(),
        inductive: InductiveEvidence { verdict: inductive_verdict, tried },
        projective,
        consistent,
    })
}

/// CSV trace `(p, log_ratio, ratio)` of a profile against a sequence.
pub fn ratio_trace_csv(
    profile: &DerivativeBoundProfile,
    n: &WeightSequence,
    depth: usize,
) -> Result<String> {
    let la = profile.log_prefix(depth)?;
    let ln = n.log_prefix(depth)?;
    let mut out = String::from("p,log_ratio,ratio\n");
    for p in 0..=depth {
        let log_ratio = la[p] - ln[p];
        out.push_str(&format!("{p},{log_ratio:.17e},{:.17e}\n", log_ratio.exp()));
    }
    Ok(out)
}

/// CSV trace `(p, log_partial_sup)` of the running maxima of `a_p/N_p`.
pub fn partial_sup_csv(
    profile: &DerivativeBoundProfile,
    n: &WeightSequence,
    depth: usize,
) -> Result<String> {
    let la = profile.log_prefix(depth)?;
    let ln = n.log_prefix(depth)?;
    let mut out = String::from("p,log_partial_sup\n");
    let mut run = f64::NEG_INFINITY;
    for p in 0..=depth {
        run = run.max(la[p] - ln[p]);
        out.push_str(&format!("{p},{run:.17e}\n"));
    }
    Ok(out)
}

/// Pre-built corpus used by the demos and the acceptance sweep: at least
/// six profiles with known growth.
pub fn corpus() -> Vec<DerivativeBoundProfile> {
    vec![
        DerivativeBoundProfile::analytic_cauchy(),
        DerivativeBoundProfile::sine(),
        DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 1.0).unwrap(),
        DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0).unwrap(),
        DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap(),
        DerivativeBoundProfile::self_power_factorial(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::n_from_r;
    use crate::omega::{young_conjugate, WeightFunctionOmega};
    use crate::util::log_factorial;

    fn factorial() -> WeightSequence {
        WeightSequence::gevrey(1.0, 1.0).unwrap()
    }

    #[test]
    fn mh_seminorm_closed_forms() {
        // Profile 2^{p+1} p! against M = p! at h = 1/4: ratio 2 (1/2)^p,
        // supremum 2 at p = 0.
        let cauchy = DerivativeBoundProfile::analytic_cauchy();
        let s = seminorm_mh(&cauchy, &factorial(), 0.25, 200).unwrap();
        assert!((s.value() - 2.0).abs() < 1e-12);
        assert_eq!(s.argmax, 0);
        assert!(s.finite_evidence());
        // a = M at h = 1: ratio identically one.
        let row = DerivativeBoundProfile::from_sequence(&factorial(), 200).unwrap();
        let s = seminorm_mh(&row, &factorial(), 1.0, 200).unwrap();
        assert_eq!(s.value(), 1.0);
        assert_eq!(s.argmax, 0);
        assert!(s.finite_evidence());
        // (p!)^{2.2} against (p!)^2: the ratio (p!)^{0.2} is monotone, so
        // the supremum rides the boundary.
        let fast = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap();
        let s = seminorm_mh(&fast, &WeightSequence::gevrey(2.0, 1.0).unwrap(), 1.0, 200).unwrap();
        assert!(s.boundary_attained && !s.finite_evidence());
        assert!(seminorm_mh(&fast, &factorial(), 0.0, 10).is_err());
    }

    #[test]
    fn n1_seminorm_examples() {
        let n = n_from_r(&factorial(), &RSequence::power(1.0).unwrap(), 200).unwrap();
        let row = DerivativeBoundProfile::from_sequence(&n, 200).unwrap();
        assert_eq!(seminorm_n1(&row, &n, 200).unwrap().value(), 1.0);
        // 2^{p+1} p! against p!(p+1)!: the ratio 2^{p+1}/(p+1)! peaks at
        // small p and vanishes.
        let cauchy = DerivativeBoundProfile::analytic_cauchy();
        let s = seminorm_n1(&cauchy, &n, 200).unwrap();
        assert!(s.finite_evidence());
        let brute = (0..=200)
            .map(|p| (p as f64 + 1.0) * 2.0_f64.ln() - log_factorial(p + 1))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((s.log_value - brute).abs() < 1e-12);
        assert!(s.argmax <= 2);
        // p^p p! against the slow sqrt sample: divergence evidence.
        let spf = DerivativeBoundProfile::self_power_factorial();
        let mat = WeightMatrix::constant(factorial(), 8);
        let sample = vset_sample(&mat, &schedule_isqrt(200), 200).unwrap();
        let s = seminorm_n1(&spf, &sample, 200).unwrap();
        assert!(s.boundary_attained);
    }

    #[test]
    fn omega_seminorm_exact_cancellation() {
        let half = WeightFunctionOmega::power(0.5).unwrap();
        let rho = 2.0;
        let depth = 60;
        let conj = young_conjugate(&half, rho * depth as f64 + 8.0, 257).unwrap();
        // Row profile a_p = exp(phi*(rho p)/rho) cancels exactly.
        let log_a: Vec<f64> =
            (0..=depth).map(|p| conj.eval_exact(rho * p as f64).unwrap() / rho).collect();
        let row = DerivativeBoundProfile::from_log_values(log_a, "conjugate row").unwrap();
        let s = seminorm_omega_rho(&row, &conj, rho, depth).unwrap();
        assert_eq!(s.value(), 1.0);
        // A Gevrey-2-scale profile is controlled at some rho by the
        // power(1/2) conjugate.
        let g2 = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0).unwrap();
        let s = seminorm_omega_rho(&g2, &conj, 1.0, depth).unwrap();
        assert!(s.finite_evidence(), "{s:?}");
        // Too fast for every rho: boundary evidence.
        let fast = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 3.0).unwrap();
        let s = seminorm_omega_rho(&fast, &conj, 1.0, depth).unwrap();
        assert!(s.boundary_attained);
        // Grid coverage is a hard precondition.
        assert!(matches!(
            seminorm_omega_rho(&g2, &conj, 4.0, depth),
            Err(Error::ExtendGrid { .. })
        ));
    }

    #[test]
    fn r_seminorm_bridges_to_n1() {
        let m = factorial();
        let depth = 160;
        for r in [RSequence::power(1.0).unwrap(), RSequence::geometric(2.0).unwrap()] {
            let n = n_from_r(&m, &r, depth).unwrap();
            for profile in corpus() {
                let lhs = seminorm_r(&profile, &m, &r, depth).unwrap();
                let rhs = seminorm_n1(&profile, &n, depth).unwrap();
                assert!(
                    (lhs.log_value - rhs.log_value).abs() <= 1e-12,
                    "bridge broken for {}",
                    profile.description()
                );
                assert_eq!(lhs.argmax, rhs.argmax);
            }
        }
        // a = M: products increase, so the supremum 1/r_0 sits at p = 0.
        let row = DerivativeBoundProfile::from_sequence(&m, depth).unwrap();
        let s = seminorm_r(&row, &m, &RSequence::power(1.0).unwrap(), depth).unwrap();
        assert_eq!(s.argmax, 0);
        assert!((s.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inductive_membership_search() {
        let mat2 = WeightMatrix::constant(WeightSequence::gevrey(2.0, 1.0).unwrap(), 8);
        // (p!)^2 against the constant (p!)^2 matrix: h = 1 works with
        // bound 1.
        let g2 = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0).unwrap();
        let v = roumieu_membership(&g2, &mat2, &[1.0, 0.5, 0.25], 200).unwrap();
        assert!(v.is_holds());
        assert_eq!(v.constant("h"), Some(1.0));
        assert_eq!(v.constant("bound"), Some(1.0));
        // 2^{p+1} p! over constant (p!): finite with bound 2.
        let mat1 = WeightMatrix::constant(factorial(), 8);
        let cauchy = DerivativeBoundProfile::analytic_cauchy();
        let v = roumieu_membership(&cauchy, &mat1, &[1.0, 0.5, 0.25], 200).unwrap();
        assert!(v.is_holds());
        assert!((v.constant("bound").unwrap() - 2.0).abs() < 1e-12);
        // (p!)^{2.2} over (p!)^2: at depth 100000 every grid point rides
        // the boundary, so the search is inconclusive. (At depth 200 the
        // h = 1/4 point still looks settled: the ratio only turns upward
        // near p ~ 1000.)
        let fast = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap();
        let v = roumieu_membership(&fast, &mat2, &[1.0, 0.5, 0.25], 100_000).unwrap();
        assert!(v.is_inconclusive(), "{v}");
        let shallow = roumieu_membership(&fast, &mat2, &[1.0, 0.5, 0.25], 200).unwrap();
        assert!(shallow.is_holds(), "{shallow}");
    }

    #[test]
    fn projective_membership_positive_and_negative() {
        let depth = 100_000;
        let mat2 = WeightMatrix::constant(WeightSequence::gevrey(2.0, 1.0).unwrap(), 8);
        let samples = vec![
            ("isqrt".to_string(), vset_sample(&mat2, &schedule_isqrt(depth), depth).unwrap()),
            ("linear".to_string(), vset_sample(&mat2, &schedule_linear(depth), depth).unwrap()),
        ];
        // (p!)^2 is controlled by every sampled dominating sequence.
        let g2 = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0).unwrap();
        let ev = projective_membership(&g2, &mat2, &samples, depth, &[1e6]).unwrap();
        assert!(ev.verdict.is_holds(), "{}", ev.verdict);
        assert!(ev.refutation.is_none());
        // (p!)^{2.2} is refuted by the diagonal witness once the depth
        // admits all eight blocks (the n-th needs log p >= 0.2 + log n
        // over 0.2).
        let fast = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap();
        let ev = projective_membership(&fast, &mat2, &samples, depth, &[1e6]).unwrap();
        assert!(ev.verdict.is_fails(), "{}", ev.verdict);
        let w = ev.refutation.expect("witness attached");
        assert!(w.divergence_log_trace[0] >= 1e6_f64.ln() - 1e-9);
        // A sample failing domination is rejected outright.
        let bad = vec![("row".to_string(), WeightSequence::gevrey(2.0, 1.0).unwrap())];
        assert!(projective_membership(&g2, &mat2, &bad, 200, &[1e6]).is_err());
    }

    #[test]
    fn equivalence_reports_land_as_designed() {
        let cfg = RunConfig { depth: 100_000, ..RunConfig::default() };
        let mat2 = WeightMatrix::constant(WeightSequence::gevrey(2.0, 1.0).unwrap(), 8);
        // Designed positive: Gevrey-2 profile over the Gevrey-2 matrix.
        let g2 = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.0).unwrap();
        let rep = equivalence_report(&g2, &mat2, &cfg).unwrap();
        assert!(rep.inductive.verdict.is_holds());
        assert!(rep.projective.verdict.is_holds());
        assert!(rep.consistent);
        // Designed negative: (p!)^{2.2} over the same matrix.
        let fast = DerivativeBoundProfile::synthetic_gevrey(1.0, 1.0, 2.2).unwrap();
        let rep = equivalence_report(&fast, &mat2, &cfg).unwrap();
        assert!(rep.inductive.verdict.is_inconclusive(), "{}", rep.inductive.verdict);
        assert!(rep.projective.verdict.is_fails());
        assert!(rep.projective.refutation.is_some());
        assert!(rep.consistent);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"consistent\":true"));
    }

    #[test]
    fn trace_exports_are_deterministic() {
        let cauchy = DerivativeBoundProfile::analytic_cauchy();
        let n = n_from_r(&factorial(), &RSequence::power(1.0).unwrap(), 50).unwrap();
        let a = ratio_trace_csv(&cauchy, &n, 50).unwrap();
        let b = ratio_trace_csv(&cauchy, &n, 50).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("p,log_ratio,ratio\n0,"));
        let sups = partial_sup_csv(&cauchy, &n, 50).unwrap();
        assert_eq!(sups.lines().count(), 52);
    }
}
