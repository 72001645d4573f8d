//! Acceptance suite: one PASS/FAIL line per criterion, each under its time limit.
//! Runs without the libtest harness so the lines always reach the output.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use mvpascal::checks::{
    check_action, check_homomorphism, suite_exp, suite_inverse, suite_lu, suite_powers, SuiteReport,
};
use mvpascal::mindex::homogeneous;
use mvpascal::pascal::{binomial_transform, build_a, build_l, build_s};
use mvpascal::random::{
    random_basis, random_integer_sequence, random_polynomial_sequence, random_small_downset, rng,
};
use mvpascal::riordan::{check_row_lemma, riordan_matrix, riordan_matrix_integer, RiordanBasis, RowLemma};
use mvpascal::series::{ts_comp_inverse, TruncatedSeries};
use mvpascal::stirling::{build_stirling_matrix, stirling_poly, stirling_poly_egf, verify_decomposition};
use mvpascal::{degree_window, ExactMatrix, MultiIndex, PointSet, Polynomial};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, Box<dyn FnOnce() -> Outcome>);

fn set(points: &[&[u32]]) -> PointSet {
    PointSet::from_exps(&points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn ints(m: &ExactMatrix<BigInt>) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|v| i64::try_from(v).unwrap()).collect())
        .collect()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn clean(rep: &SuiteReport) -> Outcome {
    ensure(rep.passed(), || {
        format!(
            "{}: {} of {} checks failed, first {}",
            rep.suite,
            rep.failures,
            rep.checks,
            rep.counterexample.clone().unwrap_or(Value::Null)
        )
    })
}

fn golden() -> Outcome {
    let r = set(&[&[0, 0], &[0, 1], &[1, 0], &[0, 2]]);
    let l = vec![vec![1, 0, 0, 0], vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![1, 2, 0, 1]];
    let s = vec![vec![1, 1, 1, 1], vec![1, 2, 1, 3], vec![1, 1, 2, 1], vec![1, 3, 1, 6]];
    ensure(ints(&build_l(&r)) == l, || "L_R differs".into())?;
    ensure(ints(&build_s(&r)) == s, || "S_R differs".into())?;
    let r5 = set(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1], &[2, 0]]);
    let a = vec![
        vec![0, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 0],
        vec![0, 1, 1, 0, 0],
        vec![0, 0, 2, 0, 0],
    ];
    ensure(ints(&build_a(&r5)) == a, || "A_R differs".into())
}

const POWERS: [i64; 6] = [-3, -2, -1, 1, 2, 3];

fn identities() -> Outcome {
    let mut g = rng(2024);
    let sets: Vec<PointSet> = (0..100).map(|_| random_small_downset(&mut g, 40)).collect();
    clean(&suite_lu(&sets).map_err(|e| e.to_string())?)?;
    clean(&suite_inverse(&sets).map_err(|e| e.to_string())?)?;
    clean(&suite_powers(&sets, &POWERS, &POWERS).map_err(|e| e.to_string())?)
}

fn exponential() -> Outcome {
    let mut g = rng(31);
    let sets: Vec<PointSet> = (0..25).map(|_| random_small_downset(&mut g, 40)).collect();
    clean(&suite_exp(&sets, &[-2, -1, 0, 1, 2]).map_err(|e| e.to_string())?)
}

fn action() -> Outcome {
    let example = set(&[&[0, 0], &[0, 1], &[1, 0], &[2, 0]]);
    let one = Polynomial::one(3);
    let (x, y) = (Polynomial::var(3, 1), Polynomial::var(3, 2));
    let displayed = vec![one.clone(), &one + &y, &one + &x, (&one + &x).pow(2)];
    let l = mvpascal::pascal::to_polynomial_matrix(&build_l(&example), 3);
    let got = l.mul_vec(&mvpascal::pascal::monomial_vector(&example)).map_err(|e| e.to_string())?;
    ensure(got == displayed, || "displayed p=1 vector differs".into())?;

    let mut g = rng(4);
    let mut sets = vec![example];
    sets.extend((0..10).map(|_| random_small_downset(&mut g, 40)));
    for r in &sets {
        for p in [-2, -1, 1, 2] {
            clean(&check_action(r, p).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

fn stirling() -> Outcome {
    for n in 1..=2 {
        for d in 0..=4 {
            for k in homogeneous(n, d) {
                for ell in 0..=6 {
                    ensure(stirling_poly(&k, ell) == stirling_poly_egf(&k, ell), || {
                        format!("closed formula and generating function disagree at k={k}, ell={ell}")
                    })?;
                }
            }
        }
    }

    let r = set(&[&[0, 0], &[0, 1], &[1, 0], &[2, 0]]);
    let printed = [
        ["1", "x0", "x0^2", "x0^3", "x0^4", "x0^5"],
        [
            "0",
            "x2",
            "2*x0*x2 + x2^2",
            "3*x0^2*x2 + 3*x0*x2^2 + x2^3",
            "4*x0^3*x2 + 6*x0^2*x2^2 + 4*x0*x2^3 + x2^4",
            "5*x0^4*x2 + 10*x0^3*x2^2 + 10*x0^2*x2^3 + 5*x0*x2^4 + x2^5",
        ],
        [
            "0",
            "x1",
            "2*x0*x1 + x1^2",
            "3*x0^2*x1 + 3*x0*x1^2 + x1^3",
            "4*x0^3*x1 + 6*x0^2*x1^2 + 4*x0*x1^3 + x1^4",
            "5*x0^4*x1 + 10*x0^3*x1^2 + 10*x0^2*x1^3 + 5*x0*x1^4 + x1^5",
        ],
        [
            "0",
            "0",
            "2*x1^2",
            "6*x0*x1^2 + 6*x1^3",
            "12*x0^2*x1^2 + 24*x0*x1^3 + 14*x1^4",
            "20*x0^3*x1^2 + 60*x0^2*x1^3 + 70*x0*x1^4 + 30*x1^5",
        ],
    ];
    let m = build_stirling_matrix(&r, 5);
    for (i, row) in printed.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            let got = m.get(i, j).to_string();
            ensure(&got == want, || format!("entry ({i},{j}) is {got}, printed {want}"))?;
        }
    }
    ensure(verify_decomposition(&r, 5), || "decomposition fails on the example".into())?;

    let mut g = rng(5);
    for _ in 0..50 {
        let r = random_small_downset(&mut g, 40);
        for ell in 0..=5 {
            ensure(verify_decomposition(&r, ell), || format!("decomposition fails on {r:?}, ell={ell}"))?;
        }
    }
    let violating = set(&[&[0, 0], &[1, 0], &[0, 2]]);
    ensure(!verify_decomposition(&violating, 5), || "decomposition unexpectedly holds on R'".into())
}

fn riordan() -> Outcome {
    let b = RiordanBasis::pascal(2, 2, 1);
    let window = vec![
        vec![1, 0, 0, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 0],
        vec![1, 0, 1, 0, 0, 0],
        vec![1, 2, 0, 1, 0, 0],
        vec![1, 1, 1, 0, 1, 0],
        vec![1, 0, 2, 0, 0, 1],
    ];
    let m = riordan_matrix_integer(&b, &degree_window(2, 2)).map_err(|e| e.to_string())?;
    ensure(ints(&m) == window, || "two-variable window differs".into())?;

    for n in 1..=3 {
        for d in 0..=5 {
            let w = degree_window(n, d);
            for p in POWERS {
                let m = riordan_matrix_integer(&RiordanBasis::pascal(n, d, p), &w).map_err(|e| e.to_string())?;
                let l = mvpascal::pascal::build_l_power(&w, p).map_err(|e| e.to_string())?;
                ensure(m == l, || format!("Pascal basis p={p} differs from L^p at n={n}, D={d}"))?;
            }
        }
    }

    let mut g = rng(6);
    for case in 0..25 {
        let n = 1 + case % 2;
        let d = 1 + (case as u32 % 5);
        let a = random_basis(&mut g, n, d);
        let b = random_basis(&mut g, n, d);
        clean(&check_homomorphism(&a, &b, &degree_window(n, d)).map_err(|e| e.to_string())?)?;
    }

    for n in 1..=3 {
        for d in 1..=5 {
            let cap_series = |p: i64| RiordanBasis::pascal(n, d, p).x().to_vec();
            let inv: Vec<TruncatedSeries> = ts_comp_inverse(&cap_series(1)).map_err(|e| e.to_string())?;
            ensure(inv == cap_series(-1), || format!("compositional inverse differs at n={n}, D={d}"))?;
        }
    }
    // rational entries stay exact
    let half = RiordanBasis::new(
        TruncatedSeries::from_int(1, 3, 2),
        vec![TruncatedSeries::z(1, 3, 1)],
    )
    .map_err(|e| e.to_string())?;
    let m = riordan_matrix(&half, &degree_window(1, 3)).map_err(|e| e.to_string())?;
    let inv = riordan_matrix(&mvpascal::riordan::riordan_inverse(&half).map_err(|e| e.to_string())?, &degree_window(1, 3))
        .map_err(|e| e.to_string())?;
    ensure(*inv.get(0, 0) == BigRational::new(1.into(), 2.into()) && inv == m.inverse().unwrap(), || {
        "rational inverse differs".into()
    })
}

fn lemmas() -> Outcome {
    for lemma in RowLemma::ALL {
        for n in 1..=2 {
            for d in 0..=6 {
                let bad = check_row_lemma(lemma, n, d);
                ensure(bad.is_empty(), || format!("{} fails at n={n}, D={d}: {:?}", lemma.name(), bad[0]))?;
            }
        }
    }
    Ok(())
}

fn transforms() -> Outcome {
    let mut g = rng(8);
    for case in 0..100 {
        let r = random_small_downset(&mut g, 40);
        let a = random_integer_sequence(&mut g, &r);
        let there = binomial_transform(&r, &a, false).map_err(|e| e.to_string())?;
        let back: BTreeMap<MultiIndex, BigInt> = binomial_transform(&r, &there, true).map_err(|e| e.to_string())?;
        ensure(back == a, || format!("integer round trip fails in case {case}"))?;
        let p = random_polynomial_sequence(&mut g, &r);
        let there = binomial_transform(&r, &p, false).map_err(|e| e.to_string())?;
        let back = binomial_transform(&r, &there, true).map_err(|e| e.to_string())?;
        ensure(back == p, || format!("polynomial round trip fails in case {case}"))?;
    }
    Ok(())
}

fn cli(dir: &Path) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mvpascal");
    let run = |args: &[&str]| -> (i32, String) {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
    };
    let expect = |args: &[&str], code: i32, check: &dyn Fn(&str) -> bool| -> Outcome {
        let (got, out) = run(args);
        ensure(got == code && check(&out), || format!("`{}` gave exit {got}, output {out:?}", args.join(" ")))
    };
    let entries = |out: &str| -> Value { serde_json::from_str::<Value>(out).map(|v| v["entries"].clone()).unwrap_or(Value::Null) };
    let strings = |rows: &[&[&str]]| -> Value { serde_json::to_value(rows).unwrap() };

    expect(&["std", "--n", "2", "--gens", "[[3,0],[1,1],[0,2]]"], 0, &|o| o.trim() == "[[0,0],[0,1],[1,0],[2,0]]")?;
    expect(&["std", "--n", "2", "--gens", "[[1,0],[0,1]]"], 0, &|o| o.trim() == "[[0,0]]")?;
    expect(&["std", "--n", "2", "--gens", "[[1,1]]"], 3, &|_| true)?;

    let s_r: &[&[&str]] = &[&["1", "1", "1", "1"], &["1", "2", "1", "3"], &["1", "1", "2", "1"], &["1", "3", "1", "6"]];
    expect(&["matrix", "--kind", "S", "--set", "[[0,0],[0,1],[1,0],[0,2]]"], 0, &|o| entries(o) == strings(s_r))?;
    expect(&["matrix", "--kind", "L", "--set", "[[0,0]]"], 0, &|o| entries(o) == strings(&[&["1"]]))?;
    let l_inv: &[&[&str]] = &[&["1", "0", "0", "0"], &["-1", "1", "0", "0"], &["-1", "0", "1", "0"], &["1", "-2", "0", "1"]];
    expect(
        &["matrix", "--kind", "L", "--power", "-1", "--set", "[[0,0],[0,1],[1,0],[0,2]]"],
        0,
        &|o| entries(o) == strings(l_inv),
    )?;
    expect(&["matrix", "--kind", "L", "--power", "2", "--set", "[[0,0],[1,1]]"], 4, &|_| true)?;
    expect(&["matrix", "--kind", "L", "--set", "[[0,0],"], 2, &|_| true)?;

    let report = |o: &str| serde_json::from_str::<Value>(o).unwrap_or(Value::Null);
    expect(&["verify", "--suite", "lu", "--set", "[[0,0],[0,1],[1,0],[0,2]]"], 0, &|o| {
        report(o)["failures"] == 0 && report(o)["suite"] == "lu"
    })?;
    expect(&["verify", "--suite", "lu", "--set", "[[0,0],[1,0],[0,2]]"], 1, &|o| {
        report(o)["counterexample"]["check"] == "S = L*U"
    })?;
    expect(&["verify", "--suite", "riordan", "--n", "2", "--degree", "3", "--p", "1"], 0, &|o| {
        report(o)["failures"] == 0
    })?;

    expect(&["stirling", "--k", "0,1", "--ell", "2"], 0, &|o| o.trim() == "2*x0*x2 + x2^2")?;

    let ones = dir.join("ones.json");
    let w = "[[0,0],[0,1],[1,0],[0,2],[1,1],[2,0]]";
    let values: Vec<Value> = serde_json::from_str::<Vec<Vec<u32>>>(w)
        .unwrap()
        .into_iter()
        .map(|k| serde_json::json!({"k": k, "value": 1}))
        .collect();
    std::fs::write(&ones, serde_json::json!({"n": 2, "values": values}).to_string()).unwrap();
    let ones = ones.to_str().unwrap();
    expect(&["transform", "--set", w, "--input", ones], 0, &|o| {
        let v = report(o);
        let got: Vec<&str> = v["values"].as_array().map(|a| a.iter().filter_map(|e| e["value"].as_str()).collect()).unwrap_or_default();
        got == ["1", "2", "2", "4", "4", "4"]
    })?;

    let window: &[&[&str]] = &[
        &["1", "0", "0", "0", "0", "0"],
        &["1", "1", "0", "0", "0", "0"],
        &["1", "0", "1", "0", "0", "0"],
        &["1", "2", "0", "1", "0", "0"],
        &["1", "1", "1", "0", "1", "0"],
        &["1", "0", "2", "0", "0", "1"],
    ];
    expect(
        &["riordan", "--g", "1/((1-z1)*(1-z2))", "--x", "z1/(1-z1)", "--x", "z2/(1-z2)", "--degree", "2"],
        0,
        &|o| entries(o) == strings(window),
    )?;
    // identical flags give identical bytes
    let again = |args: &[&str]| run(args) == run(args);
    ensure(again(&["verify", "--suite", "transform", "--random", "5", "--seed", "9"]), || "output is not deterministic".into())
}

fn main() {
    let tmp = tempfile::tempdir().expect("temporary directory");
    let criteria: Vec<Criterion> = vec![
        ("golden L, S and A matrices", Duration::from_secs(1), Box::new(golden)),
        ("identity suite on 100 random sets", Duration::from_secs(30), Box::new(identities)),
        ("exponential of the creation matrix", Duration::from_secs(10), Box::new(exponential)),
        ("symbolic action of L^p", Duration::from_secs(10), Box::new(action)),
        ("Stirling polynomials and decomposition", Duration::from_secs(60), Box::new(stirling)),
        ("Riordan group and representation", Duration::from_secs(60), Box::new(riordan)),
        ("truncated infinite-matrix lemmas", Duration::from_secs(10), Box::new(lemmas)),
        ("binomial transform round trips", Duration::from_secs(5), Box::new(transforms)),
        ("CLI examples end to end", Duration::from_secs(10), Box::new(move || cli(tmp.path()))),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS {}: {name} ({took:.2?}, limit {limit:?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({took:.2?}, limit {limit:?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
