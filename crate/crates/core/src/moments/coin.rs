//! Coin game (`H` = face 1 with probability `p`) for the patterns `H^k`
//! and `H^k T`: first-step recursions, their Eulerian-number forms, closed
//! forms for small `n`, and the specialised set-partition sums.

use num_traits::{One, Zero};

use super::partition::partition_sum;
use crate::error::{Error, Result};
use crate::rational::{powi, Ratio};
use crate::sequences::{binomial, fubini, EulerianTable, ExtEulerianTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinPattern {
    /// `H^k`
    Run,
    /// `H^k T^l`
    RunTail,
}

fn check(k: u32, p: &Ratio) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("run length k must be at least 1"));
    }
    if *p <= Ratio::zero() || *p >= Ratio::one() {
        return Err(Error::domain(format!("heads probability must lie in (0, 1), got {p}")));
    }
    Ok(())
}

fn r(v: i64) -> Ratio {
    Ratio::from_integer(v.into())
}

fn choose(n: u32, j: u32) -> Ratio {
    Ratio::from_integer(binomial(n as i64, j as i64))
}

/// `sum_{i=1}^k (1-p) i^e / p^{k-i+1}`
fn wasted_sum_direct(k: u32, p: &Ratio, e: u32) -> Ratio {
    let q = Ratio::one() - p;
    (1..=k as i64)
        .map(|i| &q * powi(&r(i), e as i64) / powi(p, k as i64 - i + 1))
        .sum()
}

/// The same sum through the split Carlitz identity, `e >= 1`.
fn wasted_sum_eulerian(k: u32, p: &Ratio, e: u32, eul: &EulerianTable, ext: &ExtEulerianTable) -> Ratio {
    let q = Ratio::one() - p;
    let num: Ratio = (0..=e as i64)
        .map(|i| {
            Ratio::from_integer(eul.get(e as usize, i)) * powi(p, i)
                - Ratio::from_integer(ext.get(e as usize, i)) * powi(p, k as i64 + i + 1)
        })
        .sum();
    num / (powi(&q, e as i64) * powi(p, k as i64 + 1))
}

/// `E(Y^0..=Y^n)` for `H^k` by the first-step recursion.
pub fn run_moments_direct(k: u32, p: &Ratio, n: u32) -> Result<Vec<Ratio>> {
    check(k, p)?;
    let mut e = vec![Ratio::one()];
    for m in 1..=n {
        let mut acc = powi(&r(k as i64), m as i64);
        for j in 0..m {
            acc += choose(m, j) * &e[j as usize] * wasted_sum_direct(k, p, m - j);
        }
        e.push(acc);
    }
    Ok(e)
}

/// `E(Y^0..=Y^n)` for `H^k` with the inner sums in Eulerian form.
pub fn run_moments_eulerian(k: u32, p: &Ratio, n: u32) -> Result<Vec<Ratio>> {
    check(k, p)?;
    let eul = EulerianTable::with_rows(n as usize);
    let ext = ExtEulerianTable::with_rows(k, n as usize);
    let mut e = vec![Ratio::one()];
    for m in 1..=n {
        let mut acc = powi(&r(k as i64), m as i64);
        for j in 0..m {
            acc += choose(m, j) * &e[j as usize] * wasted_sum_eulerian(k, p, m - j, &eul, &ext);
        }
        e.push(acc);
    }
    Ok(e)
}

/// `E(Y^n)` for `S = H^k`.
pub fn moment_run_rec(k: u32, p: &Ratio, n: u32) -> Result<Ratio> {
    let direct = run_moments_direct(k, p, n)?;
    debug_assert_eq!(direct, run_moments_eulerian(k, p, n)?);
    Ok(direct[n as usize].clone())
}

/// `sum_{i>=0} i^j p^i` for `j = 0..=n`, from
/// `(1-p) B_n = p sum_{j<n} C(n,j) B_j`, `B_0 = 1/(1-p)`.
fn polylog_moments(p: &Ratio, n: u32) -> Vec<Ratio> {
    let q = Ratio::one() - p;
    let mut b = vec![q.recip()];
    for m in 1..=n {
        let s: Ratio = (0..m).map(|j| choose(m, j) * &b[j as usize]).sum();
        b.push(p * s / &q);
    }
    b
}

/// `E(Y^0..=Y^n)` for `H^k T` by the first-step recursion, the infinite
/// sum evaluated through the shift recursion for `sum i^n p^i`.
pub fn run_tail_moments_direct(k: u32, p: &Ratio, n: u32) -> Result<Vec<Ratio>> {
    check(k, p)?;
    let q = Ratio::one() - p;
    let b = polylog_moments(p, n);
    let mut e = vec![Ratio::one()];
    for m in 1..=n {
        let mut acc = &q / powi(p, k as i64 + 1) * &b[m as usize];
        for j in 1..m {
            acc += choose(m, j) * &e[j as usize] * wasted_sum_direct(k, p, m - j);
        }
        e.push(acc);
    }
    Ok(e)
}

/// `E(Y^0..=Y^n)` for `H^k T` with Carlitz / split-Carlitz sums.
pub fn run_tail_moments_eulerian(k: u32, p: &Ratio, n: u32) -> Result<Vec<Ratio>> {
    check(k, p)?;
    let q = Ratio::one() - p;
    let eul = EulerianTable::with_rows(n as usize);
    let ext = ExtEulerianTable::with_rows(k, n as usize);
    let mut e = vec![Ratio::one()];
    for m in 1..=n {
        let full: Ratio = (0..=m as i64)
            .map(|i| Ratio::from_integer(eul.get(m as usize, i)) * powi(p, i))
            .sum();
        let mut acc = full / (powi(&q, m as i64) * powi(p, k as i64 + 1));
        for j in 1..m {
            acc += choose(m, j) * &e[j as usize] * wasted_sum_eulerian(k, p, m - j, &eul, &ext);
        }
        e.push(acc);
    }
    Ok(e)
}

/// Fair-coin version for `H^k T`:
/// `E(Y^n) = 2^{k+1} b_n + sum_{j=1}^{n-1} C(n,j) E(Y^j) sum_{i=1}^k i^{n-j} 2^{k-i}`.
pub fn run_tail_moments_fubini(k: u32, n: u32) -> Result<Vec<Ratio>> {
    if k == 0 {
        return Err(Error::invalid("run length k must be at least 1"));
    }
    let mut e = vec![Ratio::one()];
    for m in 1..=n {
        let mut acc = Ratio::from_integer(fubini(m)) * powi(&r(2), k as i64 + 1);
        for j in 1..m {
            let inner: Ratio = (1..=k as i64)
                .map(|i| powi(&r(i), (m - j) as i64) * powi(&r(2), k as i64 - i))
                .sum();
            acc += choose(m, j) * &e[j as usize] * inner;
        }
        e.push(acc);
    }
    Ok(e)
}

/// `E(Y^n)` for `S = H^k T`.
pub fn moment_run_tail_rec(k: u32, p: &Ratio, n: u32) -> Result<Ratio> {
    let direct = run_tail_moments_direct(k, p, n)?;
    debug_assert_eq!(direct, run_tail_moments_eulerian(k, p, n)?);
    Ok(direct[n as usize].clone())
}

/// Closed forms for `H^k`, available for `1 <= n <= 4`.
pub fn run_closed_form(k: u32, p: &Ratio, n: u32) -> Option<Ratio> {
    let q = Ratio::one() - p;
    let pk = powi(p, k as i64);
    let k = r(k as i64);
    let t = |j: i64| powi(&q, j) * powi(&pk, j);
    let one = Ratio::one();
    Some(match n {
        1 => (&one - &pk) / t(1),
        2 => r(2) * (&one - &pk) / t(2) - (r(2) * &k + r(1) - &pk) / t(1),
        3 => {
            r(6) * (&one - &pk) / t(3) - (r(12) * &k + r(6) - (r(6) * &k + r(6)) * &pk) / t(2)
                + (r(3) * &k * &k + r(3) * &k + r(1) - &pk) / t(1)
        }
        4 => {
            let k2 = &k * &k;
            let k3 = &k2 * &k;
            r(24) * (&one - &pk) / t(4) - (r(72) * &k + r(36) - (r(48) * &k + r(36)) * &pk) / t(3)
                + (r(48) * &k2 + r(48) * &k + r(14) - (r(12) * &k2 + r(24) * &k + r(14)) * &pk) / t(2)
                - (r(4) * k3 + r(6) * k2 + r(4) * &k + r(1) - &pk) / t(1)
        }
        _ => return None,
    })
}

/// Closed forms for `H^k T`, available for `1 <= n <= 5`.
pub fn run_tail_closed_form(k: u32, p: &Ratio, n: u32) -> Option<Ratio> {
    let q = Ratio::one() - p;
    let pk = powi(p, k as i64);
    let k = r(k as i64);
    let k2 = &k * &k;
    let k3 = &k2 * &k;
    let t = |j: i64| powi(&q, j) * powi(&pk, j);
    Some(match n {
        1 => t(1).recip(),
        2 => r(2) / t(2) - (r(2) * &k + r(1)) / t(1),
        3 => r(6) / t(3) - (r(12) * &k + r(6)) / t(2) + (r(3) * &k2 + r(3) * &k + r(1)) / t(1),
        4 => {
            r(24) / t(4) - (r(72) * &k + r(36)) / t(3) + (r(48) * &k2 + r(48) * &k + r(14)) / t(2)
                - (r(4) * &k3 + r(6) * &k2 + r(4) * &k + r(1)) / t(1)
        }
        5 => {
            let k1 = &k + r(1);
            r(120) / t(5) - r(240) * (r(2) * &k + r(1)) / t(4) + r(30) * (r(18) * &k2 + r(18) * &k + r(5)) / t(3)
                - r(10) * (r(16) * &k3 + r(24) * &k2 + r(14) * &k + r(3)) / t(2)
                + (powi(&k1, 5) - powi(&k, 5)) / t(1)
        }
        _ => return None,
    })
}

/// Signed set-partition sums specialised to `H^k` (`l` ignored) and
/// `H^k T^l`.
pub fn coin_moment_partition(kind: CoinPattern, k: u32, l: u32, p: &Ratio, n: u32) -> Result<Ratio> {
    check(k, p)?;
    if n == 0 {
        return Ok(Ratio::one());
    }
    let q = Ratio::one() - p;
    let weights: Vec<Ratio> = match kind {
        CoinPattern::Run => (1..=n as i64)
            .map(|b| {
                (1..=k as i64)
                    .map(|i| (powi(&r(i), b) - powi(&r(i - 1), b)) / powi(p, i))
                    .sum()
            })
            .collect(),
        CoinPattern::RunTail => {
            if l == 0 {
                return Err(Error::invalid("tail length l must be at least 1"));
            }
            let len = r(k as i64 + l as i64);
            let denom = powi(p, k as i64) * powi(&q, l as i64);
            (1..=n as i64)
                .map(|b| (powi(&len, b) - powi(&(&len - r(1)), b)) / &denom)
                .collect()
        }
    };
    partition_sum(n as usize, &weights, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn base_cases() {
        assert_eq!(moment_run_rec(3, &frac(1, 3), 0).unwrap(), r(1));
        assert_eq!(moment_run_tail_rec(3, &frac(1, 3), 0).unwrap(), r(1));
        for k in 1..=6 {
            for p in [frac(1, 2), frac(1, 3), frac(2, 3)] {
                let pk = powi(&p, k as i64);
                let q = r(1) - &p;
                assert_eq!(moment_run_rec(k, &p, 1).unwrap(), (r(1) - &pk) / (&q * &pk));
                assert_eq!(moment_run_tail_rec(k, &p, 1).unwrap(), (&q * &pk).recip());
            }
        }
    }

    #[test]
    fn fair_coin_second_moment_of_runs() {
        for k in 1..=10u32 {
            let two = |e: u32| powi(&r(2), e as i64);
            let expect = two(2 * k + 3) - r(2 * k as i64 + 5) * two(k + 1) + r(2);
            assert_eq!(moment_run_rec(k, &frac(1, 2), 2).unwrap(), expect);
        }
    }

    #[test]
    fn fair_coin_higher_moments_of_runs() {
        let two = |e: i64| powi(&r(2), e);
        for k in 1..=8i64 {
            let e3 = r(3) * two(3 * k + 4) - r(3) * r(2 * k + 3) * two(2 * k + 3)
                + r(3 * k * k + 15 * k + 13) * two(k + 1)
                - r(2);
            let e4 = r(3) * two(4 * k + 7) - r(3) * r(6 * k + 7) * two(3 * k + 5)
                + r(24 * k * k + 72 * k + 43) * two(2 * k + 3)
                - r(4 * k * k * k + 30 * k * k + 52 * k + 29) * two(k + 1)
                + r(2);
            assert_eq!(moment_run_rec(k as u32, &frac(1, 2), 3).unwrap(), e3);
            assert_eq!(moment_run_rec(k as u32, &frac(1, 2), 4).unwrap(), e4);
        }
    }

    #[test]
    fn both_recursion_forms_agree() {
        for k in 1..=8 {
            for p in [frac(1, 2), frac(1, 3), frac(2, 3), frac(9, 10)] {
                assert_eq!(
                    run_moments_direct(k, &p, 6).unwrap(),
                    run_moments_eulerian(k, &p, 6).unwrap()
                );
                assert_eq!(
                    run_tail_moments_direct(k, &p, 6).unwrap(),
                    run_tail_moments_eulerian(k, &p, 6).unwrap()
                );
            }
            assert_eq!(
                run_tail_moments_fubini(k, 6).unwrap(),
                run_tail_moments_direct(k, &frac(1, 2), 6).unwrap()
            );
        }
    }

    #[test]
    fn closed_forms() {
        for k in 1..=8 {
            for p in [frac(1, 2), frac(1, 3), frac(2, 3), frac(9, 10)] {
                let run = run_moments_direct(k, &p, 4).unwrap();
                let tail = run_tail_moments_direct(k, &p, 5).unwrap();
                for n in 1..=4 {
                    assert_eq!(
                        run_closed_form(k, &p, n).unwrap(),
                        run[n as usize],
                        "run k={k} p={p} n={n}"
                    );
                }
                for n in 1..=5 {
                    assert_eq!(
                        run_tail_closed_form(k, &p, n).unwrap(),
                        tail[n as usize],
                        "tail k={k} p={p} n={n}"
                    );
                }
            }
        }
        assert!(run_closed_form(2, &frac(1, 2), 5).is_none());
        assert!(run_tail_closed_form(2, &frac(1, 2), 6).is_none());
    }

    #[test]
    fn partition_specialisations() {
        let p = frac(1, 3);
        for k in 1..=4 {
            assert_eq!(
                coin_moment_partition(CoinPattern::Run, k, 0, &p, 1).unwrap(),
                run_closed_form(k, &p, 1).unwrap()
            );
            assert_eq!(
                coin_moment_partition(CoinPattern::RunTail, k, 1, &p, 1).unwrap(),
                run_tail_closed_form(k, &p, 1).unwrap()
            );
        }
        assert_eq!(
            coin_moment_partition(CoinPattern::RunTail, 1, 2, &frac(2, 3), 1).unwrap(),
            frac(27, 2)
        );
        assert!(coin_moment_partition(CoinPattern::RunTail, 1, 0, &p, 1).is_err());
    }

    #[test]
    fn domain_errors() {
        for bad in [r(0), r(1), frac(3, 2), frac(-1, 2)] {
            assert!(matches!(moment_run_rec(2, &bad, 2), Err(Error::Domain(_))));
            assert!(matches!(moment_run_tail_rec(2, &bad, 2), Err(Error::Domain(_))));
        }
        assert!(moment_run_rec(0, &frac(1, 2), 2).is_err());
    }
}
