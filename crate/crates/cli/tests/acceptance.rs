//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails unexpectedly.
//!
//! Criterion 4 has two parts. Part 4b, `|E(40)| < 1e-6` on the default
//! grid, is false for several cells with k >= 5 and is expected to fail;
//! the suite fails if it ever starts passing so the expectation gets revisited.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qkbonacci::exact::{
    companion_row, definition_row, series_coefficients, shortcut_row, term_fast, term_shortcut,
    theorem3_row, CompanionKind,
};
use qkbonacci::lawcheck::{self, DecayCheck, Grid, LawId, LawReport};
use qkbonacci::numerics::{u_closed_form, AuxPoly, CharPoly, IntPoly};
use qkbonacci::{Rational, SequenceParams};
use qkbonacci_cli::run;

const PUBLISHED_Q3: [[u64; 9]; 4] = [
    [1, 3, 10, 33, 109, 360, 1189, 3927, 12970],
    [1, 3, 10, 34, 115, 389, 1316, 4452, 15061],
    [1, 3, 10, 34, 116, 395, 1345, 4580, 15596],
    [1, 3, 10, 34, 116, 396, 1351, 4609, 15724],
];

const PUBLISHED_Q4: [[u64; 9]; 4] = [
    [1, 4, 17, 72, 305, 1292, 5473, 23184, 98209],
    [1, 4, 17, 73, 313, 1342, 5754, 24671, 105780],
    [1, 4, 17, 73, 314, 1350, 5804, 24953, 107280],
    [1, 4, 17, 73, 314, 1351, 5812, 25003, 132565],
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn summarize(reports: &[LawReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{}={:?}/{}", r.law_id, r.verdict, r.comparisons))
        .collect::<Vec<_>>()
        .join(" ")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut erratum_noted = false;
    for (q, published) in [(3u32, PUBLISHED_Q3), (4, PUBLISHED_Q4)] {
        let q_arg = q.to_string();
        let out = run([
            "qkbonacci",
            "table",
            "--q",
            &q_arg,
            "--k-min",
            "2",
            "--k-max",
            "5",
            "--n-max",
            "9",
        ]);
        if out.code != 0 {
            return outcome(false, format!("table exited {}", out.code));
        }
        erratum_noted |= out.stderr.contains("132565") && out.stderr.contains("107562");
        let lines: Vec<&str> = out.stdout.lines().collect();
        if lines.first() != Some(&"q,k,n,value") || lines.len() != 37 {
            return outcome(false, "unexpected CSV shape");
        }
        for line in &lines[1..] {
            let f: Vec<&str> = line.split(',').collect();
            let (k, n): (usize, usize) = (f[1].parse().unwrap(), f[2].parse().unwrap());
            let printed = published[k - 2][n - 1].to_string();
            if f[3] != printed {
                mismatches.push(format!("({q},{k},{n}) computed {} printed {printed}", f[3]));
            }
        }
    }
    let params = SequenceParams::new(4, 5).unwrap();
    let strategies: Vec<BigInt> = ["def", "shortcut", "fast", "theorem3"]
        .iter()
        .map(|m| {
            let out = run([
                "qkbonacci",
                "term",
                "--q",
                "4",
                "--k",
                "5",
                "--n",
                "9",
                "--method",
                m,
            ]);
            out.stdout.trim().parse().unwrap()
        })
        .chain([series_coefficients::<BigInt>(&params, 10).unwrap()[9].clone()])
        .collect();
    let agree = strategies.iter().all(|v| *v == BigInt::from(107562));
    let elapsed = start.elapsed();
    let only_erratum = mismatches == ["(4,5,9) computed 107562 printed 132565"];
    outcome(
        only_erratum && agree && erratum_noted && elapsed < Duration::from_secs(1),
        format!(
            "mismatches {mismatches:?}; strategies agree on 107562: {agree}; erratum note: {erratum_noted}; {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut compared = 0u64;
    let mut mismatches = Vec::new();
    for q in 1..=5u32 {
        for k in 2..=10u32 {
            let params = SequenceParams::new(q, k).unwrap();
            let def = definition_row::<BigInt>(&params, 200).unwrap();
            let short = shortcut_row::<BigInt>(&params, 200).unwrap();
            let series = series_coefficients::<BigInt>(&params, 201).unwrap();
            let conv = (q >= 3).then(|| theorem3_row::<BigInt>(&params, 200).unwrap());
            for (n, expected) in def.iter() {
                let mut check = |name: &str, got: &BigInt| {
                    compared += 1;
                    if got != expected {
                        mismatches.push(format!("{name} ({q},{k},{n})"));
                    }
                };
                check("shortcut", short.get(n).unwrap());
                if n >= 0 {
                    check("series", &series[n as usize]);
                }
                if n >= 1 {
                    check("fast", &term_fast::<BigInt>(&params, n).unwrap());
                    if let Some(c) = &conv {
                        check("theorem3", c.get(n).unwrap());
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{compared} comparisons, {} mismatches {:?}; {:.1} s",
            mismatches.len(),
            &mismatches[..mismatches.len().min(5)],
            elapsed.as_secs_f64()
        ),
    )
}

fn default_grid(n_max: i64) -> Grid {
    Grid::new(vec![3, 4, 5], 2..=8, n_max)
}

fn criterion_3() -> Outcome {
    let reports = lawcheck::check_reconstruction(&default_grid(60), 256).unwrap();
    let r = &reports[0];
    outcome(
        r.passed(),
        format!("{}; precisions {:?}", summarize(&reports), r.bits_used),
    )
}

fn criterion_4a() -> Outcome {
    let reports = lawcheck::check_term_bounds(&default_grid(300), lawcheck::DEFAULT_BITS).unwrap();
    let r = reports
        .into_iter()
        .find(|r| r.law_id == LawId::ErrorBound)
        .unwrap();
    outcome(
        r.passed(),
        format!(
            "{}; {}",
            summarize(std::slice::from_ref(&r)),
            r.notes.join("; ")
        ),
    )
}

fn criterion_4b() -> Outcome {
    let r = lawcheck::check_error_decay(
        &default_grid(300),
        lawcheck::DEFAULT_BITS,
        DecayCheck::default(),
    )
    .unwrap();
    let cells: Vec<String> = r
        .witnesses
        .iter()
        .map(|w| format!("({},{})", w.q, w.k))
        .collect();
    outcome(
        r.passed(),
        format!(
            "heuristic; {} witnesses at {}",
            r.witnesses.len(),
            cells.join(" ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let grid = default_grid(300).with_n_min(1);
    let reports = lawcheck::check_term_bounds(&grid, lawcheck::DEFAULT_BITS).unwrap();
    let r = reports
        .into_iter()
        .find(|r| r.law_id == LawId::GrowthBounds)
        .unwrap();
    outcome(
        r.passed() && r.comparisons == 21 * 300,
        summarize(std::slice::from_ref(&r)),
    )
}

fn criterion_6() -> Outcome {
    let reports = lawcheck::check_root_laws(&default_grid(0), lawcheck::DEFAULT_BITS).unwrap();
    let expected = [
        LawId::Lemma1Monotone,
        LawId::Lemma1Sandwich,
        LawId::Lemma2Sandwich,
        LawId::DominantBracket,
        LawId::UnitCircle,
    ];
    let ids: Vec<LawId> = reports.iter().map(|r| r.law_id).collect();
    outcome(
        ids == expected && reports.iter().all(LawReport::passed),
        summarize(&reports),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let half = Rational::new(1.into(), 2.into());
    for q in 3..=5u32 {
        let exact = companion_row::<BigInt>(q, CompanionKind::U, 60).unwrap();
        for (n, u) in exact.iter().filter(|(n, _)| *n >= 1) {
            let x = u_closed_form(q, n, 192).unwrap();
            if !x.contains_rational(&Rational::from_integer(u.clone()))
                || x.width().to_rational() >= half
            {
                failures.push((q, n));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("180 points, failures {failures:?}"),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    for q in 1..=10u32 {
        for k in 2..=16u32 {
            let params = SequenceParams::new(q, k).unwrap();
            let phi = CharPoly::new(&params);
            let product = IntPoly::new(vec![BigInt::from(-1), BigInt::from(1)]).mul(phi.as_ref());
            if product != *AuxPoly::new(&params).as_ref() {
                failures.push((q, k));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("150 (q,k) pairs, failures {failures:?}"),
    )
}

fn bench_seconds(csv: &str, method: &str) -> f64 {
    csv.lines()
        .find(|l| l.starts_with(&format!("{method},")))
        .and_then(|l| l.split(',').nth(5))
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::INFINITY)
}

fn criterion_9() -> Outcome {
    let params = SequenceParams::new(3, 2).unwrap();
    let start = Instant::now();
    let big: BigInt = term_fast(&params, 1_000_000).unwrap();
    let fast_time = start.elapsed();
    let spot = term_fast::<BigInt>(&params, 10_000).unwrap()
        == term_shortcut::<BigInt>(&params, 10_000).unwrap();
    let bench = run([
        "qkbonacci",
        "bench",
        "--q",
        "3",
        "--k",
        "2",
        "--n",
        "100000",
        "--reps",
        "1",
    ]);
    let (def, short, fast) = (
        bench_seconds(&bench.stdout, "def"),
        bench_seconds(&bench.stdout, "shortcut"),
        bench_seconds(&bench.stdout, "fast"),
    );
    outcome(
        fast_time < Duration::from_secs(5) && spot && bench.code == 0 && fast < def && fast < short,
        format!(
            "F(10^6) has {} bits in {:.2} s; spot check at 10^4: {spot}; bench n=10^5 def {def:.3} s, shortcut {short:.3} s, fast {fast:.3} s",
            big.bits(),
            fast_time.as_secs_f64()
        ),
    )
}

/// Label, check, and whether it is expected to pass.
type Criterion = (&'static str, fn() -> Outcome, bool);

fn main() {
    let criteria: [Criterion; 10] = [
        ("1  published tables", criterion_1, true),
        ("2  cross-strategy equivalence", criterion_2, true),
        ("3  Binet reconstruction", criterion_3, true),
        ("4a error bound |E| <= 1/q", criterion_4a, true),
        ("4b decay proxy |E(40)| < 1e-6", criterion_4b, false),
        ("5  growth chain", criterion_5, true),
        ("6  root laws", criterion_6, true),
        ("7  closed-form U", criterion_7, true),
        ("8  h = (t-1)Φ", criterion_8, true),
        ("9  performance", criterion_9, true),
    ];
    let mut unexpected = 0;
    for (label, check, expect) in criteria {
        let start = Instant::now();
        let o = check();
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if o.passed == expect {
            ""
        } else {
            " (unexpected)"
        };
        println!(
            "{status} criterion {label}{note} [{:.2} s]: {}",
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if o.passed != expect {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria did not match expectations");
        std::process::exit(1);
    }
}
