//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Timing limits are checked on wall-clock time.

use std::process::Command;
use std::time::{Duration, Instant};

use lclab_core::arith::{factorial, int, ratio};
use lclab_core::concavity::{self, is_logconcave, Coord};
use lclab_core::polyfam::{
    check_closed_forms, check_conversion, convert, default_xs, euler_product_crosscheck,
    genfun_crosscheck, row_poly,
};
use lclab_core::stirling::{delta_sequence, sibuya_strict_check};
use lclab_core::{build_triangle, partitions, ArithFn, HFn, Rational, Series, Triangle};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn lclab(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lclab"))
        .args(args)
        .env_remove("LCLAB_CACHE")
        .output()
        .map_err(|e| format!("cannot run lclab: {e}"))?;
    let code = out.status.code().unwrap_or(-1);
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table1() -> Outcome {
    let (code, stdout) = lclab(&["check", "table1", "--m-max", "7"])?;
    ensure(stdout.trim() == "2 5 17 54 162 469 1330", || {
        format!("printed {stdout:?}")
    })?;
    ensure(code == 0, || format!("exit code {code}"))?;
    Ok(stdout.trim().to_string())
}

fn rising_factorial_table() -> Outcome {
    let expected_rows: [&[u64]; 6] = [
        &[1],
        &[1, 1],
        &[2, 3, 1],
        &[6, 11, 6, 1],
        &[24, 50, 35, 10, 1],
        &[120, 274, 225, 85, 15, 1],
    ];
    let (code, stdout) = lclab(&[
        "triangle", "--g", "one", "--h", "id", "--n", "6", "--format", "csv",
    ])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let mut seen = 0;
    for line in stdout.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: usize = f[0].parse().map_err(|_| format!("bad line {line}"))?;
        let m: usize = f[1].parse().map_err(|_| format!("bad line {line}"))?;
        ensure(f[2] == factorial(n).to_string(), || {
            format!("row {n} scale {}", f[2])
        })?;
        let want = expected_rows[n - 1][m - 1].to_string();
        ensure(f[3] == want, || {
            format!("({n},{m}) = {}, expected {want}", f[3])
        })?;
        seen += 1;
    }
    ensure(seen == 21, || format!("{seen} entries"))?;
    Ok("21 values".into())
}

fn closed_forms() -> Outcome {
    let r = check_closed_forms(30).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("{:?}", r.mismatch))?;
    Ok(format!("{} comparisons", r.checked))
}

fn conversion() -> Outcome {
    let mut total = 0;
    for g in [
        ArithFn::one(),
        ArithFn::id(),
        ArithFn::square(),
        ArithFn::sigma(),
    ] {
        let r = check_conversion(&g, 50).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("g = {}: {:?}", g.label(), r.mismatch))?;
        total += r.checked;
    }
    Ok(format!("{total} comparisons"))
}

fn no_identity() -> Outcome {
    let r = partitions::check_no_identity(20).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("{:?}", r.mismatch))?;
    let (code, _) = lclab(&["check", "no-identity", "--n-max", "10"])?;
    ensure(code == 0, || format!("cli exit code {code}"))?;
    Ok(format!("{} comparisons", r.checked))
}

/// `p(n)` by Euler's pentagonal recurrence.
fn partition_numbers(n_max: usize) -> Vec<u64> {
    let mut p = vec![0i64; n_max + 1];
    p[0] = 1;
    for n in 1..=n_max {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n] += sign * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                p[n] += sign * p[n - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|v| v as u64).collect()
}

fn series_checks() -> Outcome {
    let xs = default_xs();
    let gs = [
        ArithFn::one(),
        ArithFn::id(),
        ArithFn::square(),
        ArithFn::sigma(),
    ];
    let mut total = 0;
    for g in &gs {
        for h in [HFn::One, HFn::Id] {
            let r = genfun_crosscheck(g, h, 30, &xs).map_err(|e| e.to_string())?;
            ensure(r.passed, || {
                format!("genfun {} {}: {:?}", g.label(), h.label(), r.mismatch)
            })?;
            total += r.checked;
        }
        for x in &xs {
            let r = euler_product_crosscheck(g, 30, x).map_err(|e| e.to_string())?;
            ensure(r.passed, || {
                format!("euler {} x={x}: {:?}", g.label(), r.mismatch)
            })?;
            total += r.checked;
        }
    }
    let tri = build_triangle(&ArithFn::sigma(), HFn::Id, 30).map_err(|e| e.to_string())?;
    let p = partition_numbers(30);
    ensure(p[30] == 5604, || format!("oracle p(30) = {}", p[30]))?;
    for (n, &pn) in p.iter().enumerate() {
        let v = row_poly(&tri, n)
            .map_err(|e| e.to_string())?
            .evaluate(&int(1));
        ensure(v == int(pn as i64), || {
            format!("P_{n}(1) = {v}, p({n}) = {pn}")
        })?;
    }
    Ok(format!("{total} comparisons, p(0..=30) reproduced"))
}

fn darcais_horizontal() -> Outcome {
    let tri = build_triangle(&ArithFn::sigma(), HFn::Id, 500).map_err(|e| e.to_string())?;
    let r = concavity::horizontal_check(&tri, 1, 500).map_err(|e| e.to_string())?;
    ensure(r.passed, || {
        format!("failures {:?}", &r.failures[..r.failures.len().min(5)])
    })?;
    Ok(format!("n <= 500, {} equalities", r.equalities.len()))
}

fn failure_set(failures: &[Coord], m: usize) -> Vec<usize> {
    failures.iter().filter(|c| c.m == m).map(|c| c.n).collect()
}

fn vertical_laws() -> Outcome {
    let tri = Triangle::builder(&ArithFn::one(), HFn::Id, 1001)
        .columns(2)
        .build()
        .map_err(|e| e.to_string())?;
    let r = concavity::vertical_check(&tri, 1, 2, 1001).map_err(|e| e.to_string())?;
    let col1 = failure_set(&r.failures, 1);
    let col2 = failure_set(&r.failures, 2);
    ensure(col1 == (2..=1000).collect::<Vec<_>>(), || {
        format!("m=1 failures {col1:?}")
    })?;
    ensure(col2 == (5..=1000).collect::<Vec<_>>(), || {
        format!("m=2 failures {col2:?}")
    })?;

    let (code, stdout) = lclab(&[
        "check", "vertical", "--g", "one", "--h", "id", "--m", "1", "--n-max", "10",
    ])?;
    ensure(code == 1, || format!("cli exit code {code}"))?;
    ensure(
        stdout.contains("failures m=1: n = 2 3 4 5 6 7 8 9\n"),
        || stdout.clone(),
    )?;

    // sign(Delta(n)) against the column-2 verdict, and the exact law
    // a_n^2 - a_{n+1} a_{n-1} = 4 Delta(n) / (n^2 (n^2 - 1)) on A^{1~,1}.
    let deltas = delta_sequence(200);
    let geometric =
        convert(&tri.truncate(201).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    for (i, d) in deltas.iter().enumerate() {
        let n = i + 2;
        let fails = col2.contains(&n);
        ensure(fails == (*d < int(0)), || {
            format!("n={n}: Delta={d}, fails={fails}")
        })?;
        let a = |k: usize| geometric.get(k, 2).expect("in range");
        let lhs = a(n) * a(n) - a(n + 1) * a(n - 1);
        let nn = Rational::from_integer((n as i64).into());
        let rhs = d * int(4) / (&nn * &nn * (&nn * &nn - int(1)));
        ensure(lhs == rhs, || format!("n={n}: {lhs} != {rhs}"))?;
    }
    Ok("m=1 fails on 2..=1000, m=2 on 5..=1000, Delta signs agree to 200".into())
}

fn hong_zhang() -> Outcome {
    let r = concavity::hz_equivalence_check(50, 10).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("{:?}", r.mismatch))?;
    let (code, stdout) = lclab(&["check", "hz", "--C", "2", "--m-max", "9"])?;
    ensure(code == 0, || format!("hz scan exit code {code}: {stdout}"))?;
    ensure(stdout.contains("m=9: n <= 512, checked to 512\n"), || {
        stdout.clone()
    })?;
    Ok(format!(
        "{} comparisons; C=2 scan to n=512 passes",
        r.checked
    ))
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn table_fn() -> impl Strategy<Value = ArithFn> {
    prop::collection::vec((0i64..12, 1i64..4), 1..10).prop_map(|tail| {
        let values = std::iter::once(int(1))
            .chain(tail.into_iter().map(|(p, q)| ratio(p, q)))
            .collect();
        ArithFn::custom("random", values).expect("g(1) = 1")
    })
}

fn series_strategy(constant: bool) -> impl Strategy<Value = Series> {
    prop::collection::vec((-9i64..10, 1i64..5), 6).prop_map(move |c| {
        let coeffs = c
            .into_iter()
            .enumerate()
            .map(|(i, (p, q))| match (i, constant) {
                (0, true) => ratio(p.abs() + 1, q),
                (0, false) => int(0),
                _ => ratio(p, q),
            });
        Series::from_coeffs(5, coeffs)
    })
}

fn properties() -> Outcome {
    run_property("moebius round trip", 64, table_fn(), |g| {
        let n_max = g.domain_limit().unwrap();
        let f = g.moebius_convolve(n_max).unwrap();
        for n in 1..=n_max {
            let sum: Rational = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| f.eval(d).unwrap())
                .sum();
            prop_assert_eq!(sum, g.eval(n).unwrap());
        }
        Ok(())
    })?;
    run_property("exp(a) exp(-a) = 1", 64, series_strategy(false), |a| {
        let product = a.exp().unwrap().mul(&a.neg().exp().unwrap()).unwrap();
        prop_assert_eq!(product, Series::one(5));
        Ok(())
    })?;
    run_property("b b^-1 = 1", 64, series_strategy(true), |b| {
        prop_assert_eq!(b.mul(&b.inverse().unwrap()).unwrap(), Series::one(5));
        Ok(())
    })?;
    run_property(
        "zero extension",
        256,
        prop::collection::vec(0i64..30, 0..12),
        |v| {
            let seq: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
            let base = is_logconcave(&seq).unwrap();
            let mut padded = seq.clone();
            padded.extend([int(0), int(0), int(0)]);
            prop_assert_eq!(is_logconcave(&padded).unwrap(), base);
            let shifted: Vec<Rational> = std::iter::once(int(0)).chain(seq).collect();
            prop_assert_eq!(is_logconcave(&shifted).unwrap(), base.map(|k| k + 1));
            Ok(())
        },
    )?;
    let integer_fn = prop::collection::vec(0i64..6, 1..9).prop_map(|tail| {
        let values = std::iter::once(int(1))
            .chain(tail.into_iter().map(int))
            .collect();
        ArithFn::custom("random-int", values).expect("g(1) = 1")
    });
    run_property("vertical verdict scale invariance", 48, integer_fn, |g| {
        let n = g.domain_limit().unwrap();
        let tri = build_triangle(&g, HFn::Id, n).unwrap();
        let scaled = convert(&tri).unwrap();
        let a = concavity::vertical_check(&tri, 1, n, n).unwrap();
        let b = concavity::vertical_check(&scaled, 1, n, n).unwrap();
        prop_assert_eq!(a.failures, b.failures);
        Ok(())
    })?;
    for n in 3..=200 {
        ensure(sibuya_strict_check(n).map_err(|e| e.to_string())?, || {
            format!("Sibuya fails at n = {n}")
        })?;
    }
    Ok("5 property suites, Sibuya 3..=200".into())
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "first vertical failure per column of A^{1,id}, m <= 7",
            limit: Some(Duration::from_secs(120)),
            run: table1,
        },
        Criterion {
            id: 2,
            name: "n! A^{1,id} for n <= 6",
            limit: None,
            run: rising_factorial_table,
        },
        Criterion {
            id: 3,
            name: "closed forms, n <= 30",
            limit: Some(Duration::from_secs(10)),
            run: closed_forms,
        },
        Criterion {
            id: 4,
            name: "conversion for 1, id, s, sigma, n <= 50",
            limit: Some(Duration::from_secs(30)),
            run: conversion,
        },
        Criterion {
            id: 5,
            name: "hook-length identity, n <= 20",
            limit: Some(Duration::from_secs(60)),
            run: no_identity,
        },
        Criterion {
            id: 6,
            name: "generating series and Euler product, n <= 30",
            limit: None,
            run: series_checks,
        },
        Criterion {
            id: 7,
            name: "D'Arcais horizontal log-concavity, n <= 500",
            limit: Some(Duration::from_secs(600)),
            run: darcais_horizontal,
        },
        Criterion {
            id: 8,
            name: "vertical failure laws of A^{1,id}",
            limit: None,
            run: vertical_laws,
        },
        Criterion {
            id: 9,
            name: "Hong-Zhang equivalence and C=2 scan",
            limit: Some(Duration::from_secs(300)),
            run: hong_zhang,
        },
        Criterion {
            id: 10,
            name: "property suites",
            limit: None,
            run: properties,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.1?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS [{:>2}] {} ({detail}; {elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: {why} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
