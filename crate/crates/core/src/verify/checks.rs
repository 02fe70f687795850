use num_traits::{One, Zero};
use serde::Serialize;

use super::{brute_force_table, exact_distribution};
use crate::cluster::{avoiding_gf, stopping_gf};
use crate::moments::{
    coin_moment_partition, moment, moment_run_rec, moment_run_tail_rec, moments, run_closed_form, run_tail_closed_form,
    CoinPattern,
};
use crate::rational::{frac, int, Ratio};
use crate::sequences::{
    binomial, carlitz_sum, eulerian_ext, eulerian_ext_closed, fib_k_bar, fib_k_prefix, fubini, power_sum_closed,
    power_sum_direct, tail_sum, EulerianTable,
};
use crate::words::{all_words, ProbModel, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// number of individual comparisons made
    pub cases: u64,
    /// first failing case
    pub failure: Option<String>,
}

type Check = fn(&mut u64) -> std::result::Result<(), String>;

fn expect_eq<T: PartialEq + std::fmt::Display>(
    cases: &mut u64,
    a: T,
    b: T,
    what: impl FnOnce() -> String,
) -> std::result::Result<(), String> {
    *cases += 1;
    if a == b {
        Ok(())
    } else {
        Err(format!("{}: {a} != {b}", what()))
    }
}

fn big(v: impl Into<num_bigint::BigInt>) -> Ratio {
    Ratio::from_integer(v.into())
}

fn eulerian_basics(cases: &mut u64) -> std::result::Result<(), String> {
    let t = EulerianTable::with_rows(10);
    let mut fact = num_bigint::BigInt::one();
    for n in 0..=10usize {
        if n > 0 {
            fact *= n;
        }
        let sum: num_bigint::BigInt = t.row(n).iter().sum();
        expect_eq(cases, sum, fact.clone(), || format!("row sum n={n}"))?;
        for i in 1..=n as i64 {
            expect_eq(cases, t.get(n, i), t.get(n, n as i64 + 1 - i), || {
                format!("symmetry n={n} i={i}")
            })?;
        }
    }
    Ok(())
}

fn ek_closed_form(cases: &mut u64) -> std::result::Result<(), String> {
    for n in 0..=8usize {
        for k in 0..=8u32 {
            for i in 0..=8i64 {
                let rec = eulerian_ext(n, i, k);
                let closed = if i <= n as i64 {
                    eulerian_ext_closed(n as u32, i, k)
                } else {
                    num_bigint::BigInt::zero()
                };
                expect_eq(cases, rec, closed, || format!("e^{k}_{{{n},{i}}}"))?;
            }
        }
    }
    Ok(())
}

fn worpitzky(cases: &mut u64) -> std::result::Result<(), String> {
    for n in 0..=8usize {
        for k in 0..=8u32 {
            for j in 0..=8i64 {
                let lhs: num_bigint::BigInt = (0..=n as i64)
                    .map(|i| eulerian_ext(n, i, k) * binomial(n as i64 + j - i, n as i64))
                    .sum();
                let rhs = num_traits::pow(num_bigint::BigInt::from(j + k as i64 + 1), n);
                expect_eq(cases, lhs, rhs, || format!("n={n} k={k} j={j}"))?;
            }
        }
    }
    Ok(())
}

fn carlitz_split(cases: &mut u64) -> std::result::Result<(), String> {
    for x in [frac(1, 2), frac(1, 3), frac(2, 3), frac(3, 2)] {
        for n in 0..=6 {
            for k in 0..=8 {
                let closed = power_sum_closed(n, k, &x).map_err(|e| e.to_string())?;
                expect_eq(cases, power_sum_direct(n, k, &x), closed, || {
                    format!("x={x} n={n} k={k}")
                })?;
                if x < Ratio::one() {
                    let whole = carlitz_sum(n, &x).map_err(|e| e.to_string())?;
                    let split = power_sum_direct(n, k, &x) + tail_sum(n, k, &x).map_err(|e| e.to_string())?;
                    expect_eq(cases, split, whole, || format!("tail x={x} n={n} k={k}"))?;
                }
            }
        }
    }
    Ok(())
}

fn fubini_values(cases: &mut u64) -> std::result::Result<(), String> {
    for (n, want) in [1, 1, 3, 13, 75, 541, 4683, 47293].into_iter().enumerate() {
        expect_eq(cases, fubini(n as u32), want.into(), || format!("b_{n}"))?;
        let half = carlitz_sum(n as u32, &frac(1, 2)).map_err(|e| e.to_string())?;
        expect_eq(cases, half, int(2) * big(want), || format!("sum d^{n}/2^d"))?;
    }
    Ok(())
}

fn run_word(k: u32) -> Word {
    Word::run(1, k as usize, 2).expect("k >= 1")
}

fn run_tail_word(k: u32) -> Word {
    let mut letters = vec![1; k as usize];
    letters.push(2);
    Word::new(letters, 2).expect("valid coin word")
}

fn coin_p() -> [Ratio; 4] {
    [frac(1, 2), frac(1, 3), frac(2, 3), frac(9, 10)]
}

fn triple_run(cases: &mut u64) -> std::result::Result<(), String> {
    for p in coin_p() {
        let model = ProbModel::coin(p.clone()).map_err(|e| e.to_string())?;
        for k in 1..=6 {
            let general = moments(&run_word(k), &model, 5).map_err(|e| e.to_string())?;
            for n in 1..=5u32 {
                let g = &general[n as usize - 1];
                let rec = moment_run_rec(k, &p, n).map_err(|e| e.to_string())?;
                expect_eq(cases, g, &rec, || format!("recursion k={k} p={p} n={n}"))?;
                let part = coin_moment_partition(CoinPattern::Run, k, 0, &p, n).map_err(|e| e.to_string())?;
                expect_eq(cases, g, &part, || format!("partition k={k} p={p} n={n}"))?;
                if let Some(c) = run_closed_form(k, &p, n) {
                    expect_eq(cases, g, &c, || format!("closed form k={k} p={p} n={n}"))?;
                }
            }
        }
    }
    Ok(())
}

fn triple_run_tail(cases: &mut u64) -> std::result::Result<(), String> {
    for p in coin_p() {
        let model = ProbModel::coin(p.clone()).map_err(|e| e.to_string())?;
        for k in 1..=6 {
            let general = moments(&run_tail_word(k), &model, 5).map_err(|e| e.to_string())?;
            for n in 1..=5u32 {
                let g = &general[n as usize - 1];
                let rec = moment_run_tail_rec(k, &p, n).map_err(|e| e.to_string())?;
                expect_eq(cases, g, &rec, || format!("recursion k={k} p={p} n={n}"))?;
                let part = coin_moment_partition(CoinPattern::RunTail, k, 1, &p, n).map_err(|e| e.to_string())?;
                expect_eq(cases, g, &part, || format!("partition k={k} p={p} n={n}"))?;
                if let Some(c) = run_tail_closed_form(k, &p, n) {
                    expect_eq(cases, g, &c, || format!("closed form k={k} p={p} n={n}"))?;
                }
            }
        }
    }
    Ok(())
}

fn oracle_equivalence(cases: &mut u64) -> std::result::Result<(), String> {
    let models = [ProbModel::uniform(3), ProbModel::parse("1/2,1/3,1/6")];
    for model in models {
        let model = model.map_err(|e| e.to_string())?;
        for len in 1..=4 {
            for w in all_words(3, len) {
                let dp = exact_distribution(&w, &model, 30).map_err(|e| e.to_string())?;
                let gf = stopping_gf(&w, &model).map_err(|e| e.to_string())?.series(30);
                *cases += 1;
                if dp.pmf != gf {
                    return Err(format!("distribution of {w}"));
                }
            }
        }
    }
    let uniform = ProbModel::uniform(2).map_err(|e| e.to_string())?;
    for len in 1..=5 {
        for w in all_words(2, len) {
            let counts = avoiding_gf(&w, &uniform)
                .map_err(|e| e.to_string())?
                .series(10)
                .scaled_by_power(2);
            let brute = brute_force_table(&w, 10).map_err(|e| e.to_string())?;
            for d in 0..=10 {
                expect_eq(cases, &counts[d], &big(brute[d].avoiding), || {
                    format!("avoiding {w} d={d}")
                })?;
            }
        }
    }
    Ok(())
}

fn reversal(cases: &mut u64) -> std::result::Result<(), String> {
    let model = ProbModel::parse("1/2,1/3,1/6").map_err(|e| e.to_string())?;
    for len in 1..=5 {
        for w in all_words(3, len) {
            for n in 1..=4 {
                let a = moment(&w, &model, n).map_err(|e| e.to_string())?;
                let b = moment(&w.reverse(), &model, n).map_err(|e| e.to_string())?;
                expect_eq(cases, a, b, || format!("{w} n={n}"))?;
            }
        }
    }
    Ok(())
}

fn fibonacci_bridge(cases: &mut u64) -> std::result::Result<(), String> {
    for k in 1..=4u32 {
        let f = fib_k_prefix(k, 15);
        let brute = brute_force_table(&run_word(k), 14).map_err(|e| e.to_string())?;
        for d in 1..=14 {
            expect_eq(cases, big(brute[d].ending), big(f[d - 1].clone()), || {
                format!("Z_{d}(H^{k})")
            })?;
        }
    }
    let fib = fib_k_prefix(2, 20);
    for i in 0..=14i64 {
        expect_eq(cases, fib_k_bar(i, 1), (i + 1).into(), || format!("bar F^1_{i}"))?;
        expect_eq(cases, fib_k_bar(i, 2), &fib[i as usize + 2] - 1, || {
            format!("bar F^2_{i}")
        })?;
    }
    Ok(())
}

const CHECKS: &[(&str, Check)] = &[
    ("eulerian-basics", eulerian_basics),
    ("ek-closed-form", ek_closed_form),
    ("worpitzky", worpitzky),
    ("carlitz-split", carlitz_split),
    ("fubini", fubini_values),
    ("triple-agreement-run", triple_run),
    ("triple-agreement-run-tail", triple_run_tail),
    ("oracle-equivalence", oracle_equivalence),
    ("reversal", reversal),
    ("fibonacci-bridge", fibonacci_bridge),
];

/// Names of the checks run by [`run_checks`], in order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs the identity suite, optionally restricted to the named checks.
pub fn run_checks(only: &[String]) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .filter(|(name, _)| only.is_empty() || only.iter().any(|o| o == name))
        .map(|(name, f)| {
            let mut cases = 0;
            let res = f(&mut cases);
            CheckOutcome {
                name,
                passed: res.is_ok(),
                cases,
                failure: res.err(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for outcome in run_checks(&[]) {
            assert!(outcome.passed, "{outcome:?}");
            assert!(outcome.cases > 0, "{}", outcome.name);
        }
    }

    #[test]
    fn filter_by_name() {
        let out = run_checks(&["fubini".to_string()]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].cases, 16);
        assert_eq!(check_names().len(), CHECKS.len());
    }

    #[test]
    fn failures_are_reported() {
        let mut cases = 0;
        let err = expect_eq(&mut cases, 1, 2, || "demo".to_string()).unwrap_err();
        assert_eq!(err, "demo: 1 != 2");
        assert_eq!(cases, 1);
    }
}
