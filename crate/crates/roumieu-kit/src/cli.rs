//! Command-line front end.
//!
//! One thin binary with a subcommand per library operation. Verdicts map
//! to exit codes (0 holds, 2 fails, 3 inconclusive), input parse errors
//! exit 1 naming the offending field, and a contradictory equivalence
//! report exits 4 (a bug signal, not an expected outcome). Outputs carry
//! no timestamps: re-running a command on the same inputs produces byte
//! identical files.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::family::{n_from_r, r_csv, r_from_n, RSequence};
use crate::matrix::{
    check_matrix_m2_prime, schedule_isqrt, schedule_linear, schedule_log2, vset_membership,
    vset_sample, vset_star_membership, witness_diagonal, witness_sup, WeightMatrix,
};
use crate::omega::{
    check_omega_condition, check_weight_function, matrix_from_omega, young_conjugate,
    OmegaCondition, WeightFunctionOmega,
};
use crate::profile::DerivativeBoundProfile;
use crate::seminorm::{
    equivalence_report, partial_sup_csv, ratio_trace_csv, seminorm_mh, seminorm_n1,
    seminorm_omega_rho, seminorm_r, SeminormValue,
};
use crate::sequence::{
    associated_function, check_condition, log_convex_minorant, Condition, WeightSequence,
};
use crate::util::write_atomic;
use crate::verdict::Verdict;

#[derive(Parser)]
#[command(
    name = "roumieu-kit",
    version,
    about = "Weight sequences, weight matrices and weight functions: growth checks, \
             Young conjugates and projective seminorm demos"
)]
struct Cli {
    #[command(flatten)]
    overrides: GlobalOverrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOverrides {
    /// key = value config file (default: $ROUMIEU_KIT_CONFIG when set)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Truncation depth for prefix computations
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Largest materialised matrix row
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Tail tolerance of the strict domination test
    #[arg(long = "tol-prec", global = true)]
    tol_prec: Option<f64>,
    /// Divergence threshold for witness-based refutations
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Report format
    #[arg(long, global = true, value_enum, ignore_case = true)]
    format: Option<FormatArg>,
    /// Output directory for generated files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CondArg {
    M0,
    M1,
    M2prime,
    Alpha,
    Gamma0,
    Delta,
    /// All three weight-function properties combined
    Omega,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    /// n_p = floor(sqrt(p)) + 1
    Isqrt,
    /// n_p = p + 1
    Linear,
    /// n_p = floor(log2(p + 2))
    Log2,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    /// sup h^p a_p / M_p
    Mh,
    /// sup a_p / N_p
    N1,
    /// sup a_p exp(-phi*(rho p)/rho)
    Omega,
    /// sup a_p / (M_p prod r_j)
    R,
}

#[derive(Subcommand)]
enum Command {
    /// Check a growth condition on a sequence, matrix or weight function
    Check {
        #[arg(long, value_enum, ignore_case = true)]
        cond: CondArg,
        input: PathBuf,
    },
    /// Log-convex minorant of a sequence
    Minorant { input: PathBuf },
    /// Associated function of a sequence at one point or over the t-grid
    Associated {
        input: PathBuf,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Young conjugate of a weight function, as CSV samples
    Conjugate {
        input: PathBuf,
        #[arg(long)]
        ymax: f64,
        #[arg(long)]
        points: Option<usize>,
    },
    /// The weight matrix generated by a weight function
    MatrixFromOmega {
        input: PathBuf,
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Membership of a sequence in the dominating family of a matrix
    VsetTest {
        sequence: PathBuf,
        matrix: PathBuf,
        /// Additionally require log-convexity of the candidate
        #[arg(long)]
        star: bool,
    },
    /// Sample a dominating sequence from a diverging schedule
    Sample {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "isqrt", ignore_case = true)]
        schedule: ScheduleArg,
    },
    /// Construct a diagonal or sup-type witness for a profile
    Witness {
        profile: PathBuf,
        matrix: PathBuf,
        #[arg(long, conflicts_with = "sup")]
        diagonal: bool,
        #[arg(long)]
        sup: bool,
    },
    /// Convert between index sequences and dominating sequences
    Convert {
        /// Build N_p = M_p prod r_j from an index sequence
        #[arg(long = "to-n", conflicts_with = "to_r")]
        to_n: bool,
        /// Extract an index sequence from a dominating sequence
        #[arg(long = "to-r")]
        to_r: bool,
        m: PathBuf,
        other: PathBuf,
    },
    /// Evaluate one of the seminorm systems on a profile
    Seminorm {
        #[arg(long, value_enum, ignore_case = true)]
        system: SystemArg,
        profile: PathBuf,
        /// Weight input: a sequence for mh/n1/r, a weight function for omega
        weight: PathBuf,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        rho: Option<f64>,
        /// Index sequence file (for the r system)
        #[arg(long)]
        r: Option<PathBuf>,
    },
    /// Two-sided membership demo: the equivalence report plus traces
    Demo { profile: PathBuf, matrix: PathBuf },
}

/// Entry point for the binary.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run(&args)
}

/// Run with explicit arguments; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load_config(overrides: &GlobalOverrides) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let path = overrides
        .config
        .clone()
        .or_else(|| std::env::var_os("ROUMIEU_KIT_CONFIG").map(PathBuf::from));
    if let Some(path) = path {
        let text = std::fs::read_to_string(&path)?;
        cfg.apply_text(&text)?;
    }
    if let Some(depth) = overrides.depth {
        cfg.depth = depth;
    }
    if let Some(nmax) = overrides.nmax {
        cfg.nmax = nmax;
    }
    if let Some(tol) = overrides.tol_prec {
        cfg.tol_prec = tol;
    }
    if let Some(threshold) = overrides.threshold {
        cfg.divergence_threshold = threshold;
    }
    if let Some(format) = overrides.format {
        cfg.format = match format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{what} file {}: {e}", path.display())))
}

fn emit_verdict(v: &Verdict, cfg: &RunConfig) -> i32 {
    match cfg.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(v).unwrap()),
        _ => println!("{v}"),
    }
    v.exit_code()
}

fn seminorm_report(label: &str, s: &SeminormValue, cfg: &RunConfig) -> i32 {
    match cfg.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({ "system": label, "value": s });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => println!(
            "{label}: log value {:.6e} (value {:.6e}), attained at p = {}, boundary: {}, \
             settled: {}",
            s.log_value,
            s.value(),
            s.argmax,
            s.boundary_attained,
            s.stabilized
        ),
    }
    0
}

fn execute(cli: Cli) -> Result<i32> {
    let cfg = load_config(&cli.overrides)?;
    let dir = cli.overrides.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    match cli.command {
        Command::Check { cond, input } => {
            let v = run_check(cond, &input, &cfg)?;
            Ok(emit_verdict(&v, &cfg))
        }
        Command::Minorant { input } => {
            let seq: WeightSequence = read_json(&input, "sequence")?;
            let depth = seq.depth().map_or(cfg.depth, |d| d.min(cfg.depth));
            let minorant = log_convex_minorant(&seq, depth)?;
            let path = dir.join("minorant.json");
            write_atomic(&path, &serde_json::to_string_pretty(&minorant).unwrap())?;
            println!("wrote {}", path.display());
            Ok(0)
        }
        Command::Associated { input, t } => {
            let seq: WeightSequence = read_json(&input, "sequence")?;
            match t {
                Some(t) => {
                    let a = associated_function(&seq, t, cfg.depth)?;
                    println!("{}", serde_json::to_string_pretty(&a).unwrap());
                    Ok(0)
                }
                None => {
                    let mut csv = String::from("t,omega_N,argmax,boundary_attained\n");
                    for t in cfg.t_grid.values() {
                        let a = associated_function(&seq, t, cfg.depth)?;
                        csv.push_str(&format!(
                            "{t:.17e},{:.17e},{},{}\n",
                            a.value, a.argmax, a.boundary_attained
                        ));
                    }
                    let path = dir.join("associated.csv");
                    write_atomic(&path, &csv)?;
                    println!("wrote {}", path.display());
                    Ok(0)
                }
            }
        }
        Command::Conjugate { input, ymax, points } => {
            let omega: WeightFunctionOmega = read_json(&input, "weight function")?;
            let conj = young_conjugate(&omega, ymax, points.unwrap_or(cfg.y_points))?;
            let path = dir.join("conjugate.csv");
            write_atomic(&path, &conj.csv())?;
            println!("wrote {}", path.display());
            Ok(0)
        }
        Command::MatrixFromOmega { input, pmax } => {
            let omega: WeightFunctionOmega = read_json(&input, "weight function")?;
            let mat = matrix_from_omega(&omega, cfg.nmax, pmax.unwrap_or(cfg.depth))?;
            let path = dir.join("matrix.json");
            write_atomic(&path, &serde_json::to_string_pretty(&mat).unwrap())?;
            println!("wrote {}", path.display());
            Ok(0)
        }
        Command::VsetTest { sequence, matrix, star } => {
            let seq: WeightSequence = read_json(&sequence, "sequence")?;
            let mat: WeightMatrix = read_json(&matrix, "matrix")?;
            let v = if star {
                vset_star_membership(&seq, &mat, cfg.depth)?
            } else {
                vset_membership(&seq, &mat, cfg.depth)?
            };
            Ok(emit_verdict(&v, &cfg))
        }
        Command::Sample { matrix, schedule } => {
            let mat: WeightMatrix = read_json(&matrix, "matrix")?;
            let schedule = match schedule {
                ScheduleArg::Isqrt => schedule_isqrt(cfg.depth),
                ScheduleArg::Linear => schedule_linear(cfg.depth),
                ScheduleArg::Log2 => schedule_log2(cfg.depth),
            };
            let n = vset_sample(&mat, &schedule, cfg.depth)?;
            let path = dir.join("sample.json");
            write_atomic(&path, &serde_json::to_string_pretty(&n).unwrap())?;
            println!("wrote {}", path.display());
            Ok(0)
        }
        Command::Witness { profile, matrix, diagonal, sup } => {
            if diagonal == sup {
                return Err(Error::InvalidArgument(
                    "choose exactly one of --diagonal and --sup".into(),
                ));
            }
            let profile: DerivativeBoundProfile = read_json(&profile, "profile")?;
            let mat: WeightMatrix = read_json(&matrix, "matrix")?;
            let log_a = profile.log_prefix(cfg.depth)?;
            let witness = if diagonal {
                witness_diagonal(&log_a, &mat, cfg.depth, &[cfg.divergence_threshold])?
            } else {
                witness_sup(&log_a, &mat, cfg.nmax, cfg.depth)?
            };
            let path = dir.join("witness.json");
            write_atomic(&path, &serde_json::to_string_pretty(&witness).unwrap())?;
            println!("wrote {}", path.display());
            Ok(0)
        }
        Command::Convert { to_n, to_r, m, other } => {
            if to_n == to_r {
                return Err(Error::InvalidArgument(
                    "choose exactly one of --to-n and --to-r".into(),
                ));
            }
            let m: WeightSequence = read_json(&m, "sequence")?;
            if to_n {
                let r: RSequence = read_json(&other, "index sequence")?;
                let n = n_from_r(&m, &r, cfg.depth)?;
                let path = dir.join("n_from_r.json");
                write_atomic(&path, &serde_json::to_string_pretty(&n).unwrap())?;
                println!("wrote {}", path.display());
            } else {
                let n: WeightSequence = read_json(&other, "sequence")?;
                let extracted = r_from_n(&m, &n, cfg.depth)?;
                let path = dir.join("r_from_n.json");
                write_atomic(&path, &serde_json::to_string_pretty(&extracted.r).unwrap())?;
                write_atomic(&dir.join("r_from_n.csv"), &r_csv(&extracted.r, cfg.depth)?)?;
                println!("wrote {} (kappa = {:.6e})", path.display(), extracted.kappa);
            }
            Ok(0)
        }
        Command::Seminorm { system, profile, weight, h, rho, r } => {
            let profile: DerivativeBoundProfile = read_json(&profile, "profile")?;
            let (label, value) = match system {
                SystemArg::Mh => {
                    let m: WeightSequence = read_json(&weight, "sequence")?;
                    let h = h.ok_or_else(|| {
                        Error::InvalidArgument("--h is required for the mh system".into())
                    })?;
                    ("mh", seminorm_mh(&profile, &m, h, cfg.depth)?)
                }
                SystemArg::N1 => {
                    let n: WeightSequence = read_json(&weight, "sequence")?;
                    ("n1", seminorm_n1(&profile, &n, cfg.depth)?)
                }
                SystemArg::Omega => {
                    let omega: WeightFunctionOmega = read_json(&weight, "weight function")?;
                    let rho = rho.ok_or_else(|| {
                        Error::InvalidArgument("--rho is required for the omega system".into())
                    })?;
                    let conj =
                        young_conjugate(&omega, rho * cfg.depth as f64 + 1.0, cfg.y_points)?;
                    ("omega", seminorm_omega_rho(&profile, &conj, rho, cfg.depth)?)
                }
                SystemArg::R => {
                    let m: WeightSequence = read_json(&weight, "sequence")?;
                    let r_path = r.ok_or_else(|| {
                        Error::InvalidArgument("--r FILE is required for the r system".into())
                    })?;
                    let r: RSequence = read_json(&r_path, "index sequence")?;
                    ("r", seminorm_r(&profile, &m, &r, cfg.depth)?)
                }
            };
            Ok(seminorm_report(label, &value, &cfg))
        }
        Command::Demo { profile, matrix } => {
            let profile: DerivativeBoundProfile = read_json(&profile, "profile")?;
            let mat: WeightMatrix = read_json(&matrix, "matrix")?;
            let report = equivalence_report(&profile, &mat, &cfg)?;
            let report_path = dir.join("report.json");
            write_atomic(&report_path, &serde_json::to_string_pretty(&report).unwrap())?;
            for sample in &report.projective.samples {
                let n = match sample.label.as_str() {
                    "isqrt" => vset_sample(&mat, &schedule_isqrt(cfg.depth), cfg.depth)?,
                    _ => vset_sample(&mat, &schedule_linear(cfg.depth), cfg.depth)?,
                };
                write_atomic(
                    &dir.join(format!("trace_{}.csv", sample.label)),
                    &ratio_trace_csv(&profile, &n, cfg.depth)?,
                )?;
                write_atomic(
                    &dir.join(format!("partial_sups_{}.csv", sample.label)),
                    &partial_sup_csv(&profile, &n, cfg.depth)?,
                )?;
                let mut assoc = String::from("t,omega_N\n");
                for t in cfg.t_grid.values() {
                    let a = associated_function(&n, t, cfg.depth)?;
                    assoc.push_str(&format!("{t:.17e},{:.17e}\n", a.value));
                }
                write_atomic(&dir.join(format!("omega_n_{}.csv", sample.label)), &assoc)?;
            }
            if let Some(witness) = &report.projective.refutation {
                write_atomic(
                    &dir.join("witness.json"),
                    &serde_json::to_string_pretty(witness).unwrap(),
                )?;
            }
            println!(
                "inductive: {} | projective: {} | consistent: {}",
                report.inductive.verdict, report.projective.verdict, report.consistent
            );
            println!("wrote {}", report_path.display());
            if report.contradictory() {
                eprintln!("error: contradictory verdict pair; this is a bug signal");
                return Ok(4);
            }
            Ok(0)
        }
    }
}

/// Clamp the configured depth to what a tabulated prefix can serve;
/// shift-type conditions need one extra index.
fn clamp_depth(available: Option<usize>, configured: usize, needs_shift: bool) -> usize {
    match available {
        Some(d) if needs_shift => configured.min(d.saturating_sub(1)),
        Some(d) => configured.min(d),
        None => configured,
    }
}

fn run_check(cond: CondArg, input: &Path, cfg: &RunConfig) -> Result<Verdict> {
    match cond {
        CondArg::M0 | CondArg::M1 | CondArg::M2prime => {
            let sequence_cond = match cond {
                CondArg::M0 => Condition::M0,
                CondArg::M1 => Condition::M1,
                _ => Condition::M2Prime,
            };
            let needs_shift = matches!(cond, CondArg::M2prime);
            let value: serde_json::Value = read_json(input, "check input")?;
            if value.get("rows").is_some() {
                let mat: WeightMatrix = read_json(input, "matrix")?;
                let depth = (0..=mat.nmax()).try_fold(cfg.depth, |acc, n| {
                    Ok::<_, Error>(acc.min(clamp_depth(mat.row(n)?.depth(), cfg.depth, true)))
                })?;
                if matches!(cond, CondArg::M2prime) {
                    check_matrix_m2_prime(&mat, depth)
                } else {
                    // Row-wise conjunction for the single-sequence conditions.
                    let mut combined: Option<Verdict> = None;
                    for n in 0..=mat.nmax() {
                        let v = check_condition(mat.row(n)?, sequence_cond, depth)?;
                        combined = Some(match combined {
                            None => v,
                            Some(acc) => acc.and(v, depth),
                        });
                    }
                    Ok(combined.unwrap())
                }
            } else {
                let seq: WeightSequence = read_json(input, "sequence")?;
                let depth = clamp_depth(seq.depth(), cfg.depth, needs_shift);
                check_condition(&seq, sequence_cond, depth)
            }
        }
        CondArg::Alpha | CondArg::Gamma0 | CondArg::Delta | CondArg::Omega => {
            let omega: WeightFunctionOmega = read_json(input, "weight function")?;
            let ts = cfg.t_grid.values();
            match cond {
                CondArg::Alpha => check_omega_condition(&omega, OmegaCondition::Alpha, &ts),
                CondArg::Gamma0 => check_omega_condition(&omega, OmegaCondition::Gamma0, &ts),
                CondArg::Delta => check_omega_condition(&omega, OmegaCondition::Delta, &ts),
                _ => check_weight_function(&omega, &ts),
            }
        }
    }
}
