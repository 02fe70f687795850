//! Goulden–Jackson generating functions for a single pattern, specialised
//! to one variable by substituting `x_i -> p_i x`.
//!
//! With `c(x) = sum_{R in overlap(S)} P(S)/P(R) x^{|S|-|R|}` (constant term 1):
//!
//! * avoiding words: `F(x) = c(x) / ((1 - x) c(x) + P(S) x^{|S|})`
//! * first occurrence: `G(x) = P(S) x^{|S|} / (P(S) x^{|S|} + (1 - x) c(x))`

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{powi, Ratio};
use crate::words::{overlaps, ProbModel, Word};

/// `numerator / denominator`, normalised so the denominator's constant
/// term is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        let d0 = denominator.coeff(0);
        if d0.is_zero() {
            return Err(Error::invalid(
                "denominator has zero constant term; no power series at x = 0",
            ));
        }
        let inv = d0.recip();
        Ok(RationalFunction {
            numerator: numerator.scale(&inv),
            denominator: denominator.scale(&inv),
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// Value at `x`; `None` where the denominator vanishes.
    pub fn eval(&self, x: &Ratio) -> Option<Ratio> {
        let d = self.denominator.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.numerator.eval(x) / d)
        }
    }

    /// Maclaurin coefficients `c_0..=c_order`.
    pub fn series(&self, order: usize) -> RationalSeries {
        let den = self.denominator.coeffs();
        let d0 = &den[0];
        let mut coeffs: Vec<Ratio> = Vec::with_capacity(order + 1);
        for d in 0..=order {
            let mut acc = self.numerator.coeff(d);
            for (j, dj) in den.iter().enumerate().skip(1).take(d) {
                if !dj.is_zero() {
                    acc -= dj * &coeffs[d - j];
                }
            }
            coeffs.push(acc / d0);
        }
        RationalSeries { coeffs }
    }
}

/// Truncated power series `c_0 + c_1 x + ... + c_L x^L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Ratio>,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<Ratio>) -> Self {
        RationalSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[Ratio] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, d: usize) -> Ratio {
        self.coeffs.get(d).cloned().unwrap_or_else(Ratio::zero)
    }

    /// `sum_d d^n c_d`
    pub fn weighted_power_sum(&self, n: u32) -> Ratio {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| c * powi(&Ratio::from_integer(d.into()), n as i64))
            .sum()
    }

    /// Coefficients times `m^d`; exact integers when the model is uniform.
    pub fn scaled_by_power(&self, m: u32) -> Vec<Ratio> {
        let base = Ratio::from_integer(m.into());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| c * powi(&base, d as i64))
            .collect()
    }
}

pub fn series(f: &RationalFunction, order: usize) -> RationalSeries {
    f.series(order)
}

/// `c(x)` together with `P(S)`. `None` if `P(S) = 0`.
fn cluster_polynomial(s: &Word, model: &ProbModel) -> Result<Option<(Poly, Ratio)>> {
    let ov = overlaps(s)?;
    let p_s = model.word_probability(s)?;
    if p_s.is_zero() {
        return Ok(None);
    }
    let mut c = Poly::zero();
    for r in &ov {
        let p_r = model.word_probability(&r.word)?;
        c = &c + &Poly::monomial(&p_s / p_r, s.len() - r.len);
    }
    Ok(Some((c, p_s)))
}

fn one_minus_x() -> Poly {
    Poly::new(vec![Ratio::one(), -Ratio::one()])
}

/// Generating function whose `x^d` coefficient is the probability that `d`
/// rolls avoid `S` as a factor.
pub fn avoiding_gf(s: &Word, model: &ProbModel) -> Result<RationalFunction> {
    s.require_pattern()?;
    match cluster_polynomial(s, model)? {
        // S never occurs: every sequence avoids it
        None => RationalFunction::new(Poly::constant(Ratio::one()), one_minus_x()),
        Some((c, p_s)) => {
            let den = &(&one_minus_x() * &c) + &Poly::monomial(p_s, s.len());
            RationalFunction::new(c, den)
        }
    }
}

/// Probability generating function of the waiting time `Y`:
/// `[x^d] = P(Y = d)`.
pub fn stopping_gf(s: &Word, model: &ProbModel) -> Result<RationalFunction> {
    s.require_pattern()?;
    model.require_reachable(s)?;
    let (c, p_s) = cluster_polynomial(s, model)?.expect("reachable pattern has P(S) > 0");
    let num = Poly::monomial(p_s, s.len());
    let den = &num + &(&one_minus_x() * &c);
    RationalFunction::new(num, den)
}

/// `sum_{d=0}^{L} d^n P(Y = d)`, a lower bound for `E(Y^n)` increasing in `L`.
pub fn truncated_moment(s: &Word, model: &ProbModel, n: u32, order: usize) -> Result<Ratio> {
    if order < s.len() {
        return Err(Error::invalid(format!(
            "truncation order {order} is shorter than the pattern"
        )));
    }
    Ok(stopping_gf(s, model)?.series(order).weighted_power_sum(n))
}
