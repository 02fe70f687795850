//! Eulerian numbers, their one-parameter extension `e^k_{n,i}`, truncated
//! power sums, Fubini numbers and order-k Fibonacci numbers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{interpolate, Poly};
use crate::rational::{powi, Ratio};

pub const DEFAULT_ROWS: usize = 12;

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

fn ipow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Triangle of Eulerian numbers `e_{n,i}`, `0 <= i <= n`, grown on demand.
#[derive(Debug, Clone)]
pub struct EulerianTable {
    rows: Vec<Vec<BigInt>>,
}

impl Default for EulerianTable {
    fn default() -> Self {
        EulerianTable::with_rows(DEFAULT_ROWS)
    }
}

impl EulerianTable {
    pub fn with_rows(n_max: usize) -> Self {
        let mut t = EulerianTable {
            rows: vec![vec![BigInt::one()]],
        };
        t.ensure(n_max);
        t
    }

    pub fn ensure(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let n = self.rows.len() as i64;
            let prev = &self.rows[n as usize - 1];
            let at = |i: i64| -> BigInt {
                if i < 0 || i as usize >= prev.len() {
                    BigInt::zero()
                } else {
                    prev[i as usize].clone()
                }
            };
            let row = (0..=n)
                .map(|i| {
                    if i == 0 {
                        BigInt::zero()
                    } else {
                        i * at(i) + (n - i + 1) * at(i - 1)
                    }
                })
                .collect();
            self.rows.push(row);
        }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `e_{n,i}`, zero outside the triangle. Row `n` must be built.
    pub fn get(&self, n: usize, i: i64) -> BigInt {
        let row = &self.rows[n];
        if i < 0 || i as usize >= row.len() {
            BigInt::zero()
        } else {
            row[i as usize].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

/// Table of `e^k_{n,i}` for one fixed `k`.
#[derive(Debug, Clone)]
pub struct ExtEulerianTable {
    k: i64,
    rows: Vec<Vec<BigInt>>,
}

impl ExtEulerianTable {
    pub fn with_rows(k: u32, n_max: usize) -> Self {
        let mut t = ExtEulerianTable {
            k: k as i64,
            rows: vec![vec![BigInt::one()]],
        };
        t.ensure(n_max);
        t
    }

    pub fn ensure(&mut self, n_max: usize) {
        let k = self.k;
        while self.rows.len() <= n_max {
            let n = self.rows.len() as i64;
            let prev = &self.rows[n as usize - 1];
            let at = |i: i64| -> BigInt {
                if i < 0 || i as usize >= prev.len() {
                    BigInt::zero()
                } else {
                    prev[i as usize].clone()
                }
            };
            let row = (0..=n).map(|i| (k + i + 1) * at(i) + (n - k - i) * at(i - 1)).collect();
            self.rows.push(row);
        }
    }

    pub fn k(&self) -> u32 {
        self.k as u32
    }

    pub fn get(&self, n: usize, i: i64) -> BigInt {
        let row = &self.rows[n];
        if i < 0 || i as usize >= row.len() {
            BigInt::zero()
        } else {
            row[i as usize].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

pub fn eulerian(n: usize, i: i64) -> BigInt {
    EulerianTable::with_rows(n).get(n, i)
}

pub fn eulerian_ext(n: usize, i: i64, k: u32) -> BigInt {
    ExtEulerianTable::with_rows(k, n).get(n, i)
}

/// Alternating-sum closed form `sum_j (-1)^j C(n+1, j) (k+i+1-j)^n`.
pub fn eulerian_ext_closed(n: u32, i: i64, k: u32) -> BigInt {
    if i < 0 {
        return BigInt::zero();
    }
    (0..=i)
        .map(|j| {
            let term = binomial(n as i64 + 1, j) * ipow(k as i64 + i + 1 - j, n);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `e^k_{n,i}` as a polynomial in `k`, obtained by interpolating the
/// recurrence values at `k = 0..=n+1`. The result has degree at most `n+1`
/// by construction; the true degree is checked by callers.
pub fn eulerian_ext_poly(n: usize, i: i64) -> Poly {
    let pts: Vec<(Ratio, Ratio)> = (0..=n as u32 + 1)
        .map(|k| {
            (
                Ratio::from_integer(k.into()),
                Ratio::from_integer(eulerian_ext(n, i, k)),
            )
        })
        .collect();
    interpolate(&pts)
}

/// `sum_{d=0}^k d^n x^d` by direct summation (`0^0 = 1`).
pub fn power_sum_direct(n: u32, k: u32, x: &Ratio) -> Ratio {
    (0..=k)
        .map(|d| Ratio::from_integer(ipow(d as i64, n)) * powi(x, d as i64))
        .sum()
}

/// Right-hand side of the split Carlitz identity; requires `x != 1`.
pub fn power_sum_closed(n: u32, k: u32, x: &Ratio) -> Result<Ratio> {
    let one = Ratio::one();
    if *x == one {
        return Err(Error::domain(
            "closed power-sum form divides by 1 - x; x must differ from 1",
        ));
    }
    let e = EulerianTable::with_rows(n as usize);
    let ek = ExtEulerianTable::with_rows(k, n as usize);
    let num: Ratio = (0..=n as i64)
        .map(|i| {
            Ratio::from_integer(e.get(n as usize, i)) * powi(x, i)
                - Ratio::from_integer(ek.get(n as usize, i)) * powi(x, k as i64 + i + 1)
        })
        .sum();
    Ok(num / powi(&(one - x), n as i64 + 1))
}

pub fn power_sum(n: u32, k: u32, x: &Ratio) -> Ratio {
    let direct = power_sum_direct(n, k, x);
    if let Ok(closed) = power_sum_closed(n, k, x) {
        debug_assert_eq!(closed, direct, "split Carlitz identity failed at n={n} k={k} x={x}");
    }
    direct
}

fn require_unit_disc(x: &Ratio) -> Result<()> {
    if x.abs() >= Ratio::one() {
        return Err(Error::domain(format!("series diverges: |x| = |{x}| must be < 1")));
    }
    Ok(())
}

/// `sum_{d>k} d^n x^d = sum_i e^k_{n,i} x^{k+i+1} / (1-x)^{n+1}` for `|x| < 1`.
pub fn tail_sum(n: u32, k: u32, x: &Ratio) -> Result<Ratio> {
    require_unit_disc(x)?;
    let ek = ExtEulerianTable::with_rows(k, n as usize);
    let num: Ratio = (0..=n as i64)
        .map(|i| Ratio::from_integer(ek.get(n as usize, i)) * powi(x, k as i64 + i + 1))
        .sum();
    Ok(num / powi(&(Ratio::one() - x), n as i64 + 1))
}

/// Carlitz: `sum_{d>=0} d^n x^d = sum_i e_{n,i} x^i / (1-x)^{n+1}` for `|x| < 1`.
pub fn carlitz_sum(n: u32, x: &Ratio) -> Result<Ratio> {
    require_unit_disc(x)?;
    let e = EulerianTable::with_rows(n as usize);
    let num: Ratio = (0..=n as i64)
        .map(|i| Ratio::from_integer(e.get(n as usize, i)) * powi(x, i))
        .sum();
    Ok(num / powi(&(Ratio::one() - x), n as i64 + 1))
}

/// Ordered Bell (Fubini) number `b_n = sum_i e_{n,i} 2^{n-i}`.
pub fn fubini(n: u32) -> BigInt {
    let e = EulerianTable::with_rows(n as usize);
    (0..=n as i64)
        .map(|i| e.get(n as usize, i) * ipow(2, n - i as u32))
        .sum()
}

/// `c_{n,l} = C(n,l) sum_{i=0}^n sum_{j=0}^i (-1)^j C(n+1,j) (i+1-j)^l 2^{n-i}`.
///
/// These are the coefficients of `sum_{d<=k} d^n/2^d = 2 b_n - sum_l c_{n,l} k^{n-l} / 2^k`.
pub fn c_coeff(n: u32, l: u32) -> Result<BigInt> {
    if l > n {
        return Err(Error::invalid(format!("c_coeff requires l <= n (got n={n}, l={l})")));
    }
    let mut total = BigInt::zero();
    for i in 0..=n as i64 {
        let inner: BigInt = (0..=i)
            .map(|j| {
                let t = binomial(n as i64 + 1, j) * ipow(i + 1 - j, l);
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum();
        total += inner * ipow(2, n - i as u32);
    }
    Ok(binomial(n as i64, l as i64) * total)
}

/// Order-k Fibonacci numbers `F^k_0..F^k_{len-1}`.
pub fn fib_k_prefix(k: u32, len: usize) -> Vec<BigInt> {
    assert!(k >= 1, "order must be positive");
    let k = k as usize;
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    for i in 0..len {
        let v = if i + 1 < k {
            BigInt::zero()
        } else if i + 1 == k {
            BigInt::one()
        } else {
            out[i - k..i].iter().sum()
        };
        out.push(v);
    }
    out
}

/// `F^k_i`: 0 for `i < k-1`, 1 at `i = k-1`, then the k-term recurrence.
pub fn fib_k(i: i64, k: u32) -> BigInt {
    if i < 0 {
        return BigInt::zero();
    }
    fib_k_prefix(k, i as usize + 1).pop().expect("nonempty")
}

/// The partial-sum variant: 0 for `i < k-1`, 1 at `i = k-1`, then
/// `sum of the previous k values + 1`.
pub fn fib_k_bar(i: i64, k: u32) -> BigInt {
    assert!(k >= 1, "order must be positive");
    if i < 0 {
        return BigInt::zero();
    }
    let k = k as usize;
    let len = i as usize + 1;
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    for j in 0..len {
        let v = if j + 1 < k {
            BigInt::zero()
        } else if j + 1 == k {
            BigInt::one()
        } else {
            out[j - k..j].iter().sum::<BigInt>() + 1
        };
        out.push(v);
    }
    out.pop().expect("nonempty")
}
