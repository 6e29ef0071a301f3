//! Command-line surface: load curve and divisor files, run the Jacobian
//! operations, and drive the consistency and benchmark suites.
//!
//! Exit codes are a stable contract: 0 success, 1 property-check failure,
//! 2 special divisor, 3 non-split result, 4 invalid input.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::curve::{parse_curve, NsCurve};
use crate::divisor::{parse_divisor, random_points_divisor, Divisor};
use crate::error::{Error, Result};
use crate::field::{embed_prime, Field};
use crate::jacobian;
use crate::oracle;
use crate::poly::irreducible_of_degree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_SPECIAL: i32 = 2;
pub const EXIT_NONSPLIT: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

#[derive(Parser)]
#[command(
    name = "nsjac",
    about = "Divisor class arithmetic on (n,s) curves over finite fields",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OpFlags {
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
    /// On a non-split result over a prime field, extend once to the smallest
    /// field containing every residual place and retry.
    #[arg(long)]
    auto_extend: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, s, field, genus, gap sequence, and leading basis monomials.
    CurveInfo {
        curve: String,
        #[arg(long)]
        json: bool,
    },
    /// Add two divisors (reduce the union).
    Add {
        curve: String,
        divisor1: String,
        divisor2: String,
        #[command(flatten)]
        flags: OpFlags,
    },
    /// Negate a reduced divisor.
    Neg {
        curve: String,
        divisor: String,
        #[command(flatten)]
        flags: OpFlags,
    },
    /// Reduce a divisor to its canonical degree <= g representative.
    Reduce {
        curve: String,
        divisor: String,
        #[command(flatten)]
        flags: OpFlags,
    },
    /// Multiply a reduced divisor by a nonnegative integer.
    Mul {
        curve: String,
        k: u64,
        divisor: String,
        #[command(flatten)]
        flags: OpFlags,
    },
    /// Test whether n times the divisor class is the identity.
    Torsion {
        curve: String,
        n: usize,
        divisor: String,
        #[command(flatten)]
        flags: OpFlags,
    },
    /// Run the randomized consistency suites.
    Check {
        curve: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Median / 95th percentile wall time of the core operations.
    Bench {
        curve: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Entry point shared by the binary and the in-process tests. `args` includes
/// the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit codes collide with the SpecialDivisor code;
            // help/version requests stay successful, everything else is
            // invalid input
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_INVALID
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::SpecialDivisor(_) => EXIT_SPECIAL,
        Error::NonSplitResult(_) => EXIT_NONSPLIT,
        _ => EXIT_INVALID,
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::CurveInfo { curve, json } => {
            let curve = load_curve(&curve)?;
            cmd_curve_info(&curve, json, out);
            Ok(EXIT_OK)
        }
        Command::Add { curve, divisor1, divisor2, flags } => {
            let curve = load_curve(&curve)?;
            let d1 = load_divisor(&curve, &divisor1)?;
            let d2 = load_divisor(&curve, &divisor2)?;
            let outcome = with_auto_extend(&curve, &[d1, d2], flags.auto_extend, |c, d| {
                jacobian::add(c, &d[0], &d[1])
            })?;
            emit_divisor(&outcome, "add", flags.json, out);
            Ok(EXIT_OK)
        }
        Command::Neg { curve, divisor, flags } => {
            let curve = load_curve(&curve)?;
            let d = load_divisor(&curve, &divisor)?;
            let outcome = with_auto_extend(&curve, &[d], flags.auto_extend, |c, d| {
                jacobian::negate(c, &d[0])
            })?;
            emit_divisor(&outcome, "neg", flags.json, out);
            Ok(EXIT_OK)
        }
        Command::Reduce { curve, divisor, flags } => {
            let curve = load_curve(&curve)?;
            let d = load_divisor(&curve, &divisor)?;
            let outcome = with_auto_extend(&curve, &[d], flags.auto_extend, |c, d| {
                jacobian::reduce(c, &d[0])
            })?;
            emit_divisor(&outcome, "reduce", flags.json, out);
            Ok(EXIT_OK)
        }
        Command::Mul { curve, k, divisor, flags } => {
            let curve = load_curve(&curve)?;
            let d = load_divisor(&curve, &divisor)?;
            let outcome = with_auto_extend(&curve, &[d], flags.auto_extend, |c, d| {
                jacobian::scalar_mul(c, k, &d[0])
            })?;
            emit_divisor(&outcome, "mul", flags.json, out);
            Ok(EXIT_OK)
        }
        Command::Torsion { curve, n, divisor, flags } => {
            let curve = load_curve(&curve)?;
            let d = load_divisor(&curve, &divisor)?;
            let check = jacobian::is_n_torsion(&curve, n, &d)?;
            if flags.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({
                        "op": "torsion",
                        "n": n,
                        "torsion": check.is_torsion,
                        "via_matrix": check.via_matrix,
                    })
                );
            } else {
                let _ = writeln!(out, "{}", check.is_torsion);
            }
            Ok(EXIT_OK)
        }
        Command::Check { curve, trials, seed, json } => {
            let curve = load_curve(&curve)?;
            let report = run_check(&curve, trials, seed);
            emit_check(&report, json, out);
            if report.iter().any(|s| s.fail > 0) {
                Ok(EXIT_CHECK_FAILED)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Bench { curve, trials, seed, json } => {
            let curve = load_curve(&curve)?;
            let report = run_bench(&curve, trials, seed)?;
            emit_bench(&report, json, out);
            Ok(EXIT_OK)
        }
    }
}

fn load_curve(path: &str) -> Result<NsCurve> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read curve file {path}: {e}")))?;
    parse_curve(&text)
}

fn load_divisor(curve: &NsCurve, path: &str) -> Result<Divisor> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read divisor file {path}: {e}")))?;
    parse_divisor(curve, &text)
}

/// Result of an operation, remembering whether auto-extension kicked in.
struct OpOutcome {
    curve: NsCurve,
    divisor: Divisor,
    extended: bool,
}

/// Run `op`; on a non-split result over a prime field with auto-extend
/// enabled, build the extension of degree lcm(residue degrees), embed all
/// inputs canonically, and retry exactly once.
fn with_auto_extend(
    curve: &NsCurve,
    divisors: &[Divisor],
    auto: bool,
    op: impl Fn(&NsCurve, &[Divisor]) -> Result<Divisor>,
) -> Result<OpOutcome> {
    match op(curve, divisors) {
        Ok(divisor) => Ok(OpOutcome { curve: curve.clone(), divisor, extended: false }),
        Err(Error::NonSplitResult(degrees))
            if auto && curve.field().is_prime_field() && !degrees.is_empty() =>
        {
            let d = degrees.iter().fold(1usize, |acc, &e| lcm(acc, e));
            let field = curve.field();
            let modulus = irreducible_of_degree(field, d, 1)?;
            let coords: Vec<u64> = modulus.coeffs().iter().map(|c| c.coords()[0]).collect();
            let ext = Field::extension(field.characteristic(), &coords)?;
            let lifted_curve = NsCurve::new(&ext, curve.n(), curve.s(), curve.tail().embed(&ext)?)?;
            let lifted: Result<Vec<Divisor>> =
                divisors.iter().map(|d| embed_divisor(d, &lifted_curve)).collect();
            let divisor = op(&lifted_curve, &lifted?)?;
            Ok(OpOutcome { curve: lifted_curve, divisor, extended: true })
        }
        Err(e) => Err(e),
    }
}

fn embed_divisor(d: &Divisor, target: &NsCurve) -> Result<Divisor> {
    let points: Result<Vec<_>> = d
        .points()
        .iter()
        .map(|p| {
            let x = embed_prime(p.x(), target.field())?;
            let y = embed_prime(p.y(), target.field())?;
            target.point(x, y)
        })
        .collect();
    Divisor::from_points(target, points?)
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn field_json(field: &Field) -> serde_json::Value {
    json!({
        "p": field.characteristic().to_string(),
        "ext": field.modulus().map(|m| {
            m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        }),
    })
}

fn emit_divisor(outcome: &OpOutcome, op: &str, as_json: bool, out: &mut dyn Write) {
    if as_json {
        let points: Vec<serde_json::Value> = outcome
            .divisor
            .points()
            .iter()
            .map(|p| json!({"x": p.x().to_string(), "y": p.y().to_string()}))
            .collect();
        let _ = writeln!(
            out,
            "{}",
            json!({
                "op": op,
                "field": field_json(outcome.curve.field()),
                "extended": outcome.extended,
                "degree": outcome.divisor.degree(),
                "points": points,
            })
        );
        return;
    }
    if outcome.extended {
        let field = outcome.curve.field();
        let modulus = field
            .modulus()
            .map(|m| m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_default();
        let _ = writeln!(out, "# extended: p={} ext={}", field.characteristic(), modulus);
    }
    let _ = write!(out, "{}", outcome.divisor.to_text());
}

fn cmd_curve_info(curve: &NsCurve, as_json: bool, out: &mut dyn Write) {
    let field = curve.field();
    let basis = curve.basis_prefix(2 * curve.genus() + 1);
    if as_json {
        let _ = writeln!(
            out,
            "{}",
            json!({
                "n": curve.n(),
                "s": curve.s(),
                "field": field_json(field),
                "size": field.order().map(|o| o.to_string()),
                "genus": curve.genus(),
                "gaps": curve.gap_sequence(),
                "basis": basis
                    .iter()
                    .map(|m| json!({"i": m.i, "j": m.j, "pole": m.pole}))
                    .collect::<Vec<_>>(),
            })
        );
        return;
    }
    let _ = writeln!(out, "n = {}", curve.n());
    let _ = writeln!(out, "s = {}", curve.s());
    let _ = writeln!(out, "p = {}", field.characteristic());
    match (field.modulus(), field.order()) {
        (Some(m), order) => {
            let parts: Vec<String> = m.iter().map(|c| c.to_string()).collect();
            let size = order.map_or_else(|| format!("{}^{}", field.characteristic(), field.ext_degree()), |o| o.to_string());
            let _ = writeln!(out, "field size = {size} (modulus {})", parts.join(","));
        }
        (None, _) => {
            let _ = writeln!(out, "field size = {}", field.characteristic());
        }
    }
    let _ = writeln!(out, "genus = {}", curve.genus());
    let gaps: Vec<String> = curve.gap_sequence().iter().map(|g| g.to_string()).collect();
    let _ = writeln!(out, "gaps = {}", gaps.join(", "));
    let _ = writeln!(out, "basis (first {}):", basis.len());
    for m in &basis {
        let name = match (m.i, m.j) {
            (0, 0) => "1".to_string(),
            (i, 0) if i == 1 => "x".to_string(),
            (i, 0) => format!("x^{i}"),
            (0, 1) => "y".to_string(),
            (0, j) => format!("y^{j}"),
            (1, 1) => "x*y".to_string(),
            (i, 1) => format!("x^{i}*y"),
            (1, j) => format!("x*y^{j}"),
            (i, j) => format!("x^{i}*y^{j}"),
        };
        let _ = writeln!(out, "  {name} (pole {})", m.pole);
    }
}

// --- check suites ---

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub resamples: usize,
    pub note: String,
}

/// Sample a reduced degree-g divisor; distinct support when `distinct`.
/// `None` once the draw budget runs out (point-starved curves).
fn sample_reduced(
    curve: &NsCurve,
    rng: &mut ChaCha8Rng,
    distinct: bool,
    resamples: &mut usize,
) -> Option<Divisor> {
    for _ in 0..200 {
        match random_points_divisor(curve, rng, curve.genus()) {
            Ok(d) => {
                if distinct && d.grouped().len() != curve.genus() {
                    *resamples += 1;
                    continue;
                }
                return Some(d);
            }
            Err(_) => {
                *resamples += 1;
            }
        }
    }
    None
}

fn is_degenerate(e: &Error) -> bool {
    matches!(e, Error::SpecialDivisor(_) | Error::NonSplitResult(_))
}

/// Group axioms on random reduced divisors, resampling on degenerate inputs.
fn suite_group_axioms(curve: &NsCurve, trials: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        SuiteReport { name: "group-axioms", pass: 0, fail: 0, resamples: 0, note: String::new() };
    let mut done = 0;
    let mut attempts = 0;
    while done < trials {
        attempts += 1;
        if attempts > 50 * trials + 100 {
            report.note = "aborted: degenerate-input budget exhausted".into();
            break;
        }
        let (Some(d1), Some(d2), Some(d3)) = (
            sample_reduced(curve, &mut rng, false, &mut report.resamples),
            sample_reduced(curve, &mut rng, false, &mut report.resamples),
            sample_reduced(curve, &mut rng, false, &mut report.resamples),
        ) else {
            report.note = "aborted: could not sample divisors on this curve".into();
            break;
        };
        let outcome = (|| -> Result<bool> {
            let ab = jacobian::add(curve, &d1, &d2)?;
            let ba = jacobian::add(curve, &d2, &d1)?;
            let assoc_left = jacobian::add(curve, &ab, &d3)?;
            let bc = jacobian::add(curve, &d2, &d3)?;
            let assoc_right = jacobian::add(curve, &d1, &bc)?;
            let identity = jacobian::add(curve, &d1, &Divisor::empty(curve.field()))?;
            let inverse = jacobian::add(curve, &d1, &jacobian::negate(curve, &d1)?)?;
            Ok(ab == ba
                && assoc_left == assoc_right
                && identity == d1
                && inverse.is_empty())
        })();
        match outcome {
            Ok(true) => {
                report.pass += 1;
                done += 1;
            }
            Ok(false) => {
                report.fail += 1;
                done += 1;
            }
            Err(e) if is_degenerate(&e) => report.resamples += 1,
            Err(e) => {
                report.fail += 1;
                report.note = format!("unexpected error: {e}");
                done += 1;
            }
        }
    }
    report
}

/// Determinant path against the classical oracles (only on (2,s) curves
/// with a y-free tail: chord-tangent for s = 3, Cantor for odd s >= 5).
fn suite_oracle(curve: &NsCurve, trials: usize, seed: u64) -> SuiteReport {
    let mut report =
        SuiteReport { name: "oracle-equivalence", pass: 0, fail: 0, resamples: 0, note: String::new() };
    if curve.n() != 2 || curve.tail().deg_y().unwrap_or(0) > 0 || curve.s() % 2 == 0 {
        report.note = "skipped: no classical oracle for this curve shape".into();
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0bac1e);
    let mut done = 0;
    let mut attempts = 0;
    while done < trials {
        attempts += 1;
        if attempts > 50 * trials + 100 {
            report.note = "aborted: degenerate-input budget exhausted".into();
            break;
        }
        let (Some(d1), Some(d2)) = (
            sample_reduced(curve, &mut rng, false, &mut report.resamples),
            sample_reduced(curve, &mut rng, false, &mut report.resamples),
        ) else {
            report.note = "aborted: could not sample divisors on this curve".into();
            break;
        };
        let det_sum = match jacobian::add(curve, &d1, &d2) {
            Ok(s) => s,
            Err(e) if is_degenerate(&e) => {
                report.resamples += 1;
                continue;
            }
            Err(e) => {
                report.fail += 1;
                report.note = format!("unexpected error: {e}");
                done += 1;
                continue;
            }
        };
        let agreed = if curve.s() == 3 {
            let (Ok(p1), Ok(p2)) =
                (oracle::divisor_to_ec_point(&d1), oracle::divisor_to_ec_point(&d2))
            else {
                report.resamples += 1;
                continue;
            };
            match oracle::chord_tangent_add(curve, &p1, &p2) {
                Ok(classical) => {
                    oracle::divisor_to_ec_point(&det_sum).ok() == Some(classical)
                }
                Err(_) => {
                    report.resamples += 1;
                    continue;
                }
            }
        } else {
            let (Ok(m1), Ok(m2)) =
                (oracle::divisor_to_mumford(curve, &d1), oracle::divisor_to_mumford(curve, &d2))
            else {
                report.resamples += 1;
                continue;
            };
            match (oracle::cantor_add(curve, &m1, &m2), oracle::divisor_to_mumford(curve, &det_sum))
            {
                (Ok(cantor), Ok(det_pair)) => cantor == det_pair,
                _ => {
                    report.resamples += 1;
                    continue;
                }
            }
        };
        if agreed {
            report.pass += 1;
        } else {
            report.fail += 1;
        }
        done += 1;
    }
    report
}

/// direct_multiple against double-and-add for n in {2, 3}.
fn suite_multiplication(curve: &NsCurve, trials: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport {
        name: "direct-vs-double-and-add",
        pass: 0,
        fail: 0,
        resamples: 0,
        note: String::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd1ec7);
    let mut matrix_ok = 0usize;
    let mut matrix_special = 0usize;
    let mut done = 0;
    let mut attempts = 0;
    while done < trials {
        attempts += 1;
        if attempts > 50 * trials + 100 {
            report.note = "aborted: degenerate-input budget exhausted".into();
            break;
        }
        let Some(d) = sample_reduced(curve, &mut rng, true, &mut report.resamples) else {
            report.note = "aborted: could not sample divisors on this curve".into();
            break;
        };
        let n = if done % 2 == 0 { 2 } else { 3 };
        let by_chain = match jacobian::scalar_mul(curve, n as u64, &d) {
            Ok(v) => v,
            Err(e) if is_degenerate(&e) => {
                report.resamples += 1;
                continue;
            }
            Err(e) => {
                report.fail += 1;
                report.note = format!("unexpected error: {e}");
                done += 1;
                continue;
            }
        };
        match jacobian::direct_multiple(curve, n, &d) {
            Ok(direct) => {
                matrix_ok += 1;
                if direct == by_chain {
                    report.pass += 1;
                } else {
                    report.fail += 1;
                }
                done += 1;
            }
            Err(Error::NonSplitResult(_)) => {
                report.resamples += 1;
            }
            Err(Error::SpecialDivisor(_)) => {
                matrix_special += 1;
                report.pass += 1;
                done += 1;
            }
            Err(e) => {
                report.fail += 1;
                report.note = format!("unexpected error: {e}");
                done += 1;
            }
        }
    }
    report.note = format!("matrix path {matrix_ok}/{} (special: {matrix_special})", matrix_ok + matrix_special);
    report
}

/// is_n_torsion against the definition n*[D] = 0.
fn suite_torsion(curve: &NsCurve, trials: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport {
        name: "torsion-consistency",
        pass: 0,
        fail: 0,
        resamples: 0,
        note: String::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7035);
    let mut done = 0;
    let mut attempts = 0;
    while done < trials {
        attempts += 1;
        if attempts > 50 * trials + 100 {
            report.note = "aborted: degenerate-input budget exhausted".into();
            break;
        }
        let Some(d) = sample_reduced(curve, &mut rng, true, &mut report.resamples) else {
            report.note = "aborted: could not sample divisors on this curve".into();
            break;
        };
        let n = 2 + (done % 2);
        let outcome = (|| -> Result<bool> {
            let check = jacobian::is_n_torsion(curve, n, &d)?;
            let ground = jacobian::scalar_mul(curve, n as u64, &d)?.is_empty();
            Ok(check.is_torsion == ground)
        })();
        match outcome {
            Ok(true) => {
                report.pass += 1;
                done += 1;
            }
            Ok(false) => {
                report.fail += 1;
                done += 1;
            }
            Err(e) if is_degenerate(&e) => report.resamples += 1,
            Err(e) => {
                report.fail += 1;
                report.note = format!("unexpected error: {e}");
                done += 1;
            }
        }
    }
    report
}

pub fn run_check(curve: &NsCurve, trials: usize, seed: u64) -> Vec<SuiteReport> {
    vec![
        suite_group_axioms(curve, trials, seed),
        suite_oracle(curve, trials, seed),
        suite_multiplication(curve, trials, seed),
        suite_torsion(curve, trials, seed),
    ]
}

fn emit_check(report: &[SuiteReport], as_json: bool, out: &mut dyn Write) {
    if as_json {
        let suites: Vec<serde_json::Value> = report
            .iter()
            .map(|s| {
                json!({
                    "suite": s.name,
                    "pass": s.pass,
                    "fail": s.fail,
                    "resamples": s.resamples,
                    "note": s.note,
                })
            })
            .collect();
        let _ = writeln!(out, "{}", json!({ "suites": suites }));
        return;
    }
    for s in report {
        let status = if s.fail == 0 { "ok" } else { "FAILED" };
        let _ = writeln!(
            out,
            "{:<28} {status}: {} passed, {} failed, {} resampled {}",
            s.name, s.pass, s.fail, s.resamples, s.note
        );
    }
}

// --- bench ---

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub name: &'static str,
    pub trials: usize,
    pub median_ms: f64,
    pub p95_ms: f64,
}

pub fn run_bench(curve: &NsCurve, trials: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbe7c4);
    let g = curve.genus();
    let mut rows = vec![];
    let mut resamples = 0usize;

    let timed =
        |name: &'static str,
         rng: &mut ChaCha8Rng,
         op: &mut dyn FnMut(&mut ChaCha8Rng) -> Result<std::time::Duration>|
         -> Result<BenchRow> {
            let mut samples = vec![];
            let mut attempts = 0;
            while samples.len() < trials {
                attempts += 1;
                if attempts > 100 * trials.max(1) + 100 {
                    return Err(Error::invalid(format!(
                        "bench `{name}` could not collect {trials} successful trials"
                    )));
                }
                match op(rng) {
                    Ok(elapsed) => samples.push(elapsed.as_secs_f64() * 1e3),
                    Err(e) if is_degenerate(&e) => continue,
                    Err(e) => return Err(e),
                }
            }
            samples.sort_by(f64::total_cmp);
            let median = if samples.is_empty() { 0.0 } else { samples[samples.len() / 2] };
            let p95 = if samples.is_empty() {
                0.0
            } else {
                samples[(((samples.len() as f64) * 0.95) as usize).min(samples.len() - 1)]
            };
            Ok(BenchRow { name, trials: samples.len(), median_ms: median, p95_ms: p95 })
        };

    let starved = || Error::invalid("could not sample divisors on this curve");
    rows.push(timed("add", &mut rng, &mut |rng| {
        let d1 = sample_reduced(curve, rng, false, &mut resamples).ok_or_else(starved)?;
        let d2 = sample_reduced(curve, rng, false, &mut resamples).ok_or_else(starved)?;
        let start = Instant::now();
        jacobian::add(curve, &d1, &d2)?;
        Ok(start.elapsed())
    })?);
    rows.push(timed("reduce-from-2g", &mut rng, &mut |rng| {
        let d = random_points_divisor(curve, rng, 2 * g).map_err(|_| starved())?;
        let start = Instant::now();
        jacobian::reduce(curve, &d)?;
        Ok(start.elapsed())
    })?);
    rows.push(timed("negate", &mut rng, &mut |rng| {
        let d = sample_reduced(curve, rng, false, &mut resamples).ok_or_else(starved)?;
        let start = Instant::now();
        jacobian::negate(curve, &d)?;
        Ok(start.elapsed())
    })?);
    rows.push(timed("direct-multiple-2", &mut rng, &mut |rng| {
        let d = sample_reduced(curve, rng, true, &mut resamples).ok_or_else(starved)?;
        let start = Instant::now();
        jacobian::direct_multiple(curve, 2, &d)?;
        Ok(start.elapsed())
    })?);
    Ok(rows)
}

fn emit_bench(rows: &[BenchRow], as_json: bool, out: &mut dyn Write) {
    if as_json {
        let items: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "op": r.name,
                    "trials": r.trials,
                    "median_ms": r.median_ms,
                    "p95_ms": r.p95_ms,
                })
            })
            .collect();
        let _ = writeln!(out, "{}", json!({ "bench": items }));
        return;
    }
    let _ = writeln!(out, "{:<20} {:>8} {:>12} {:>12}", "op", "trials", "median(ms)", "p95(ms)");
    for r in rows {
        let _ = writeln!(
            out,
            "{:<20} {:>8} {:>12.3} {:>12.3}",
            r.name, r.trials, r.median_ms, r.p95_ms
        );
    }
}
