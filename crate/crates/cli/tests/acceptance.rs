//! One PASS/FAIL line per acceptance criterion. Exits non-zero when a criterion
//! outside `KNOWN_UNATTAINABLE` fails, or when one inside it starts passing.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hankel_spectra_cli::exact::exact_report;
use hankel_spectra_cli::verify::{
    compression_hygiene, constant_slices, engines_agree, interval_evidence, quadrature_doubling, toeplitz_identity,
    weyl_trend, Check, REFERENCE_SYMBOLS,
};
use hankel_spectra_cli::{parse_symbol, RunConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

/// The reference symbol `zb1` has `e_0 (x) k_p` as an exact eigenvector for `1/2`,
/// so every residual is 0 and the sequence cannot decrease strictly.
const KNOWN_UNATTAINABLE: [u32; 1] = [8];

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Independent closed form over a subset `b` (0-based coordinates).
fn lambda(n: &[i64], m: &[i64], a: &[i64], b: &[usize]) -> Q {
    let mut first = q(1, 1);
    let mut second = q(1, 1);
    let mut kernel = false;
    for &k in b {
        first *= q(a[k] + 1, a[k] + n[k] + m[k] + 1);
        if a[k] < m[k] - n[k] {
            kernel = true;
        } else {
            second *= q((a[k] + 1) * (a[k] + n[k] - m[k] + 1), (a[k] + n[k] + 1).pow(2));
        }
    }
    if kernel {
        first
    } else {
        first - second
    }
}

fn rat_str(r: &Q) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn run_exact(spec: &str, extra: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hankel-spectra"))
        .arg("exact")
        .arg(spec)
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn values(report: &Value) -> BTreeSet<String> {
    report["values"].as_array().into_iter().flatten().filter_map(|v| v["value"].as_str().map(String::from)).collect()
}

type Criterion = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks(checks: &[Check]) -> Outcome {
    Outcome {
        passed: checks.iter().all(|c| c.passed),
        detail: checks.iter().map(|c| c.detail.clone()).collect::<Vec<_>>().join("; "),
    }
}

fn criterion_1() -> Outcome {
    for n in 1..=3i64 {
        let r = match run_exact(&format!("zb1^{n}"), &["--dim", "2", "--cap", "50"]) {
            Ok(r) => r,
            Err(e) => return Outcome { passed: false, detail: e },
        };
        let mut want: BTreeSet<String> = [rat_str(&q(0, 1))].into();
        for a in 0..=50 {
            let v = if a < n { q(a + 1, a + n + 1) } else { q(n * n, (a + n + 1) * (a + 1)) };
            want.insert(rat_str(&v));
        }
        let got = values(&r);
        if got != want {
            let missing: Vec<_> = want.difference(&got).take(3).collect();
            let extra: Vec<_> = got.difference(&want).take(3).collect();
            return Outcome { passed: false, detail: format!("n={n}: missing {missing:?}, extra {extra:?}") };
        }
        if r["multiplicity_class"] != "AllInfinite"
            || !r["values"].as_array().unwrap().iter().all(|v| v["multiplicity"] == "Infinite")
        {
            return Outcome { passed: false, detail: format!("n={n}: multiplicity not infinite") };
        }
    }
    Outcome { passed: true, detail: "n=1,2,3: both families exact for alpha1<=50, multiplicity infinite".into() }
}

fn five_families(n: i64, m: i64, top: i64) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut add = |v: Q| {
        out.insert(rat_str(&v));
    };
    for a1 in 0..n {
        for a2 in 0..m {
            add(q(a1 + 1, a1 + n + 1));
            add(q(a2 + 1, a2 + m + 1));
        }
    }
    for a1 in n..=top {
        for a2 in m..=top {
            add(q(n * n, (a1 + n + 1) * (a1 + 1)));
            add(q(m * m, (a2 + m + 1) * (a2 + 1)));
            add(q(
                n * n * (a2 + 1).pow(2) + m * m * (a1 + 1).pow(2) - n * n * m * m,
                (a1 + n + 1) * (a2 + m + 1) * (a1 + 1) * (a2 + 1),
            ));
        }
    }
    for a1 in 0..n {
        for a2 in 0..=top {
            add(q((a1 + 1) * (a2 + 1), (a1 + n + 1) * (a2 + m + 1)));
        }
    }
    for a1 in 0..=top {
        for a2 in 0..m {
            add(q((a1 + 1) * (a2 + 1), (a1 + n + 1) * (a2 + m + 1)));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    for (n, m) in [(1i64, 1i64), (2, 1), (2, 3)] {
        let cap = (10 + n.max(m)).to_string();
        let r = match run_exact(&format!("zb1^{n}*zb2^{m}"), &["--cap", &cap]) {
            Ok(r) => r,
            Err(e) => return Outcome { passed: false, detail: e },
        };
        let got = values(&r);
        let want = five_families(n, m, 10);
        let missing: Vec<_> = want.difference(&got).take(3).collect();
        if !missing.is_empty() {
            return Outcome { passed: false, detail: format!("(n,m)=({n},{m}) missing {missing:?}") };
        }
        if r["multiplicity_class"] != "AllFinite" {
            return Outcome { passed: false, detail: format!("(n,m)=({n},{m}) not finite multiplicity") };
        }
        total += want.len();
    }
    Outcome { passed: true, detail: format!("{total} family values found") }
}

fn criterion_5() -> Outcome {
    let cfg = |cap| RunConfig { alpha_cap: cap, ..RunConfig::default() };
    let strs = |v: &[hankel_spectra::rational::ExactScalar]| v.iter().map(ToString::to_string).collect::<BTreeSet<_>>();
    let single = parse_symbol("zb1", Some(2)).unwrap();
    for cap in 0..=6 {
        let r = exact_report(&single, &cfg(cap)).unwrap();
        let all: BTreeSet<String> = r.values.iter().map(|v| v.value.to_string()).collect();
        if all != strs(&r.essential_spectrum) || !r.values.iter().all(|v| v.in_essential_spectrum) {
            return Outcome { passed: false, detail: format!("zb1: essential differs from spectrum at cap {cap}") };
        }
    }
    let cap = 6i64;
    let (n, m) = ([0i64, 0], [1i64, 1]);
    let mut full = BTreeSet::new();
    let mut proper: BTreeSet<String> = [rat_str(&q(0, 1))].into();
    for a1 in 0..=cap {
        for a2 in 0..=cap {
            full.insert(rat_str(&lambda(&n, &m, &[a1, a2], &[0, 1])));
        }
        proper.insert(rat_str(&lambda(&n, &m, &[a1, 0], &[0])));
        proper.insert(rat_str(&lambda(&n, &m, &[0, a1], &[1])));
    }
    let full_only: BTreeSet<String> = full.difference(&proper).cloned().collect();
    let r = exact_report(&parse_symbol("zb1*zb2", None).unwrap(), &cfg(cap as u32)).unwrap();
    let all: BTreeSet<String> = r.values.iter().map(|v| v.value.to_string()).collect();
    let ess = strs(&r.essential_spectrum);
    let excluded: BTreeSet<String> = all.difference(&ess).cloned().collect();
    let flagged: BTreeSet<String> =
        r.values.iter().filter(|v| !v.in_essential_spectrum).map(|v| v.value.to_string()).collect();
    let passed = ess == proper && excluded == full_only && flagged == full_only && !full_only.is_empty();
    Outcome {
        passed,
        detail: format!("zb1 caps 0..=6 equal; zb1*zb2 cap 6: {} essential, {} excluded", ess.len(), excluded.len()),
    }
}

fn criterion_9() -> Outcome {
    let checks = [compression_hygiene(6), compression_hygiene(10), quadrature_doubling(64)];
    from_checks(&checks)
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "exact families for zb1^n on the bidisc", Duration::from_secs(1), Box::new(criterion_1)),
        (2, "five two-variable families present", Duration::from_secs(5), Box::new(criterion_2)),
        (
            3,
            "closed form, radial and Galerkin engines agree",
            Duration::from_secs(30),
            Box::new(|| from_checks(&[engines_agree(2, 3, 4)])),
        ),
        (
            4,
            "Toeplitz identity at N=6",
            Duration::from_secs(10),
            Box::new(|| from_checks(&[toeplitz_identity(&REFERENCE_SYMBOLS, 6)])),
        ),
        (5, "essential spectrum classifier", Duration::from_secs(5), Box::new(criterion_5)),
        (
            6,
            "constant slice norms for zb1^2*zb2^3",
            Duration::from_secs(60),
            Box::new(|| from_checks(&[constant_slices(12, 64)])),
        ),
        (
            7,
            "interval evidence for zb1*(zb2+1)",
            Duration::from_secs(300),
            Box::new(|| from_checks(&interval_evidence(&[8, 12, 16]))),
        ),
        (8, "Weyl residual trend for zb1", Duration::from_secs(60), Box::new(|| from_checks(&[weyl_trend()]))),
        (9, "numerical hygiene", Duration::from_secs(120), Box::new(criterion_9)),
    ];
    let mut unexpected = Vec::new();
    for (id, title, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let passed = outcome.passed && elapsed <= limit;
        let timing = if elapsed <= limit { String::new() } else { format!(" (over the {limit:?} limit)") };
        println!(
            "{} criterion {id}: {title}: {} [{:.2}s]{timing}",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
        if passed == KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected (known unattainable: {KNOWN_UNATTAINABLE:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
