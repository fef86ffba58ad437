//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cuboid_core::*;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_cuboid");
const FULL_SWEEP_HEIGHT: u64 = 50;
const FULL_SWEEP_BUDGET: Duration = Duration::from_secs(3600);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

fn cuboid(args: &[&str]) -> std::process::Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("running the cuboid binary")
}

fn parametrization_identity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut checked, mut skipped) = (0, 0);
    while checked < 1000 {
        let p = ParamPair::new(random_rational(&mut rng, 30), random_rational(&mut rng, 30));
        let Ok(e) = evaluate_param_map(&p) else {
            skipped += 1;
            continue;
        };
        let residuals = eform_residuals(&e, &rat(1, 1));
        if let Some(k) = residuals.iter().position(|r| !r.is_zero()) {
            return verdict(
                false,
                format!("b={} c={}: residual {k} is {}", p.b, p.c, residuals[k]),
            );
        }
        checked += 1;
    }
    verdict(
        true,
        format!("{checked} pairs ({skipped} degenerate skipped), 9 residuals each exactly zero"),
    )
}

fn substitution_commutes() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 0..1000 {
        let mut r = || random_rational(&mut rng, 30);
        let t = CuboidCandidate::new([r(), r(), r()], [r(), r(), r()], r());
        let eform = eform_residuals(&elementary_values(&t), &t.l);
        let factor = factor_residuals(&t);
        for k in 0..8 {
            if eform[k] != rat(PHI_SCALE[k], 1) * &factor[k] {
                return verdict(
                    false,
                    format!("tuple {n}, component {k}: {} vs {}", eform[k], factor[k]),
                );
            }
        }
    }
    verdict(
        true,
        "1000 tuples, 8 components equal exactly (components 6 to 8 carry the factor 3)",
    )
}

/// Integer roots of `u³ + au² + bu + c` with multiplicity, found by testing
/// every divisor; the root list is only complete when it has three entries.
fn integer_roots_by_exhaustion(a: i64, b: i64, c: i64) -> Vec<Rational> {
    let f = |u: i64| ((u + a) * u + b) * u + c;
    let divisors = |n: i64| {
        (1..=n.abs())
            .filter(move |d| n % d == 0)
            .flat_map(|d| [-d, d])
    };
    let candidates: Vec<i64> = match (c, b) {
        (0, 0) => vec![0, -a],
        (0, _) => std::iter::once(0).chain(divisors(b)).collect(),
        _ => divisors(c).collect(),
    };
    let mut roots: Vec<i64> = candidates.into_iter().filter(|&u| f(u) == 0).collect();
    roots.sort();
    roots.dedup();
    let double = |u: i64| 3 * u * u + 2 * a * u + b == 0;
    if roots.len() == 1 && double(roots[0]) {
        roots.push(roots[0]);
    }
    if roots.len() == 2 {
        roots.push(-a - roots[0] - roots[1]);
    }
    let mut out: Vec<Rational> = roots.into_iter().map(|u| rat(u, 1)).collect();
    out.sort();
    out
}

fn cubic_completeness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 0..1000 {
        let r = [
            random_rational(&mut rng, 30),
            random_rational(&mut rng, 30),
            random_rational(&mut rng, 30),
        ];
        let mut want = r.to_vec();
        want.sort();
        let got = match rational_roots(&MonicCubic::from_roots(&r[0], &r[1], &r[2])) {
            Ok(got) => got.roots,
            Err(e) => return verdict(false, format!("root cubic {n}: {e}")),
        };
        if got != want {
            return verdict(
                false,
                format!("root cubic {n}: expected {want:?}, got {got:?}"),
            );
        }
    }
    for n in 0..200 {
        let (a, b, c) = if n % 2 == 0 {
            (
                rng.gen_range(-50..=50),
                rng.gen_range(-500..=500),
                rng.gen_range(-10_000..=10_000),
            )
        } else {
            let r: [i64; 3] = [
                rng.gen_range(-21..=21),
                rng.gen_range(-21..=21),
                rng.gen_range(-21..=21),
            ];
            (
                -(r[0] + r[1] + r[2]),
                r[0] * r[1] + r[1] * r[2] + r[2] * r[0],
                -r[0] * r[1] * r[2],
            )
        };
        let q = MonicCubic::new(rat(a, 1), rat(b, 1), rat(c, 1));
        let want = integer_roots_by_exhaustion(a, b, c);
        match rational_roots(&q) {
            Ok(got) if got.roots == want => {}
            other => {
                return verdict(
                    false,
                    format!("integer cubic {q}: oracle {want:?}, got {other:?}"),
                )
            }
        }
    }
    verdict(
        true,
        "1000 rational-root cubics recovered exactly, 200 integer cubics match exhaustive search",
    )
}

fn no_go_regressions() -> Verdict {
    let report = check_one_parameter_cases(20);
    let samples: usize = report.cases.iter().map(|c| c.samples).sum();
    let failures: Vec<&String> = report.cases.iter().flat_map(|c| &c.failures).collect();
    match failures.first() {
        None if report.pass() => verdict(
            true,
            format!("4 families, {samples} samples at height 20, all exact"),
        ),
        None => verdict(false, "a family had no samples"),
        Some(f) => verdict(false, format!("{} failure(s), first: {f}", failures.len())),
    }
}

fn sweep_into(dir: &Path, extra: &[&str]) -> Result<Vec<u8>, String> {
    let out = dir.to_str().unwrap();
    let mut args = vec!["sweep", "--height", "5", "--all-records", "--out", out];
    args.extend_from_slice(extra);
    let run = cuboid(&args);
    if !run.status.success() {
        return Err(format!("sweep {extra:?} exited with {}", run.status));
    }
    fs::read(dir.join(RECORDS_FILE)).map_err(|e| e.to_string())
}

fn multiset(bytes: &[u8]) -> HashMap<String, usize> {
    let mut m = HashMap::new();
    for line in String::from_utf8_lossy(bytes).lines() {
        *m.entry(line.to_owned()).or_default() += 1;
    }
    m
}

fn sweep_determinism() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let run = || -> Result<Verdict, String> {
        let one = sweep_into(&tmp.path().join("w1"), &["--workers", "1"])?;
        let eight = sweep_into(&tmp.path().join("w8"), &["--workers", "8"])?;
        if one != eight {
            return Ok(verdict(false, "1-worker and 8-worker record files differ"));
        }
        let mut union = Vec::new();
        for k in 0..4 {
            let shard = format!("{k}/4");
            union.extend(sweep_into(
                &tmp.path().join(format!("s{k}")),
                &["--workers", "2", "--shard", &shard],
            )?);
        }
        if multiset(&union) != multiset(&one) {
            return Ok(verdict(
                false,
                "4-way shard union differs from the unsharded records",
            ));
        }
        let lines = String::from_utf8_lossy(&one).lines().count() as u64;
        let expected = grid_count(5).pow(2);
        if lines != expected {
            return Ok(verdict(
                false,
                format!("{lines} records, expected {expected}"),
            ));
        }
        Ok(verdict(
            true,
            format!(
                "byte-identical at 1 and 8 workers, shard union equal, {lines} = {}² records",
                grid_count(5)
            ),
        ))
    };
    run().unwrap_or_else(|e| verdict(false, e))
}

fn full_sweep() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let plan = SweepPlan::new(FULL_SWEEP_HEIGHT);
    let opts = SweepOptions {
        workers,
        ..Default::default()
    };
    let started = Instant::now();
    let summary = match SweepDir::new(tmp.path()).run(&plan, &opts, false) {
        Ok(s) => s,
        Err(e) => return verdict(false, format!("sweep failed: {e}")),
    };
    let elapsed = started.elapsed();
    let expected = grid_count(FULL_SWEEP_HEIGHT).pow(2);
    let timing = format!(
        "{} pairs in {:.1}s on {workers} worker(s)",
        summary.classified(),
        elapsed.as_secs_f64()
    );
    if summary.classified() != expected {
        return verdict(false, format!("{timing}, expected {expected} pairs"));
    }
    if elapsed > FULL_SWEEP_BUDGET {
        return verdict(
            false,
            format!("{timing}, over the {}s budget", FULL_SWEEP_BUDGET.as_secs()),
        );
    }
    let counts: Vec<String> = summary
        .counts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    if summary.perfect.is_empty() {
        return verdict(
            true,
            format!("{timing}, zero PERFECT_CUBOID ({})", counts.join(" ")),
        );
    }
    let mut findings = Vec::new();
    for p in &summary.perfect {
        let rec = evaluate_pair(p);
        let t = rec
            .detail
            .candidate
            .expect("a perfect cuboid record carries its tuple");
        let args: Vec<String> =
            t.x.iter()
                .chain(&t.d)
                .chain([&t.l])
                .map(rational_to_string)
                .collect();
        let mut argv = vec!["verify-tuple"];
        argv.extend(args.iter().map(String::as_str));
        let verified = cuboid(&argv).status.success();
        findings.push(format!(
            "FINDING b={} c={} verify-tuple {}",
            p.b,
            p.c,
            if verified { "passes" } else { "fails" }
        ));
    }
    verdict(true, format!("{timing}; escalate: {}", findings.join("; ")))
}

fn euler_brick_control() -> Verdict {
    let t = CuboidCandidate::new(
        [rat(44, 1), rat(117, 1), rat(240, 1)],
        [rat(267, 1), rat(244, 1), rat(125, 1)],
        rat(271, 1),
    );
    let r = cuboid_residuals(&t);
    if !r[1..].iter().all(Zero::is_zero) || r[0] != rat(-216, 1) {
        return verdict(false, format!("residuals {r:?}"));
    }
    let run = cuboid(&[
        "verify-tuple",
        "44",
        "117",
        "240",
        "267",
        "244",
        "125",
        "271",
    ]);
    if run.status.success() {
        return verdict(false, "verify-tuple exited 0");
    }
    verdict(
        true,
        format!(
            "faces 0, 0, 0; diagonal -216; verify-tuple exit {}",
            run.status.code().unwrap_or(-1)
        ),
    )
}

fn main() -> ExitCode {
    let only: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("parametrization identity", parametrization_identity),
        ("substitution commutes", substitution_commutes),
        ("cubic solver completeness", cubic_completeness),
        ("one-parameter no-go regressions", no_go_regressions),
        ("sweep determinism and coverage", sweep_determinism),
        ("height-50 sweep", full_sweep),
        ("Euler brick negative control", euler_brick_control),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        if only.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let started = Instant::now();
        let v = check();
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {} {name}: {} ({:.2}s)",
            n + 1,
            v.detail,
            started.elapsed().as_secs_f64()
        );
        failed += usize::from(!v.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
