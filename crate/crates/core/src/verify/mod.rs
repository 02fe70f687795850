//! Oracles that do not go through the generating-function derivation: a
//! forward dynamic program on the matching automaton, exhaustive word
//! enumeration and a seeded Monte Carlo simulator.

mod automaton;
mod checks;
pub mod rng;
mod simulate;

pub use automaton::{build_automaton, PatternAutomaton};
pub use checks::{check_names, run_checks, CheckOutcome};
pub use simulate::{simulate, SimConfig, SimReport, SIM_MOMENTS, SIM_STREAMS};

use num_traits::{One, Zero};

use crate::cluster::RationalSeries;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Ratio};
use crate::words::{ProbModel, Word};

/// `P(Y = d)` for `d <= L` and the mass still running after `L` rolls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution {
    pub pmf: RationalSeries,
    pub survival: Ratio,
}

/// Forward DP over automaton states with exact rationals.
struct Dp<'a> {
    automaton: PatternAutomaton,
    model: &'a ProbModel,
    // mass on non-accepting states
    mass: Vec<Ratio>,
}

impl<'a> Dp<'a> {
    fn new(s: &Word, model: &'a ProbModel) -> Result<Self> {
        if model.size() != s.alphabet_size() {
            return Err(Error::invalid("model and pattern use different alphabets"));
        }
        let automaton = PatternAutomaton::new(s)?;
        let mut mass = vec![Ratio::zero(); automaton.accepting()];
        mass[0] = Ratio::one();
        Ok(Dp { automaton, model, mass })
    }

    /// Advances one roll; returns the mass absorbed at this step.
    fn step(&mut self) -> Ratio {
        let acc = self.automaton.accepting();
        let mut next = vec![Ratio::zero(); acc];
        let mut hit = Ratio::zero();
        for (q, w) in self.mass.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for face in 1..=self.model.size() {
                let p = self.model.prob(face);
                if p.is_zero() {
                    continue;
                }
                let to = self.automaton.step(q, face);
                let add = w * p;
                if to == acc {
                    hit += add;
                } else {
                    next[to] += add;
                }
            }
        }
        self.mass = next;
        hit
    }

    fn survival(&self) -> Ratio {
        self.mass.iter().sum()
    }
}

pub fn exact_distribution(s: &Word, model: &ProbModel, order: usize) -> Result<ExactDistribution> {
    let mut dp = Dp::new(s, model)?;
    let mut pmf = vec![Ratio::zero()];
    for _ in 1..=order {
        pmf.push(dp.step());
    }
    Ok(ExactDistribution {
        pmf: RationalSeries::new(pmf),
        survival: dp.survival(),
    })
}

/// Upper bound on `sum_{d > L} d^n P(Y = d)` given `P(Y > L)`.
///
/// From any state, rolling `S` outright ends the game, so each further
/// block of `|S|` rolls survives with probability at most `1 - P(S)`.
pub fn tail_bound(survival_at_l: f64, l: usize, pattern_len: usize, p_s: f64, n: u32) -> f64 {
    if survival_at_l == 0.0 {
        return 0.0;
    }
    let decay = 1.0 - p_s;
    if decay >= 1.0 {
        return f64::INFINITY;
    }
    let mut total = 0.0;
    let mut surv = survival_at_l;
    for t in 0.. {
        let top = (l + (t + 1) * pattern_len) as f64;
        let block = top.powi(n as i32) * surv;
        total += block;
        if block < total * 1e-17 || t > 1_000_000 {
            break;
        }
        surv *= decay;
    }
    total
}

/// Smallest `L` whose tail bound for `E(Y^n)` falls below `tol`, searching
/// up to `max_order`.
pub fn truncation_for_moment(s: &Word, model: &ProbModel, n: u32, tol: f64, max_order: usize) -> Result<usize> {
    model.require_reachable(s)?;
    let p_s = to_f64(&model.word_probability(s)?);
    let mut dp = Dp::new(s, model)?;
    for l in 0..=max_order {
        if l > 0 {
            dp.step();
        }
        if l >= s.len() && tail_bound(to_f64(&dp.survival()), l, s.len(), p_s, n) < tol {
            return Ok(l);
        }
    }
    Err(Error::invalid(format!(
        "no truncation up to {max_order} meets tolerance {tol}"
    )))
}

/// Smallest `L >= |S|` with `P(Y > L) < tol`.
pub fn truncation_for_tail(s: &Word, model: &ProbModel, tol: f64, max_order: usize) -> Result<usize> {
    model.require_reachable(s)?;
    let mut dp = Dp::new(s, model)?;
    for l in 0..=max_order {
        if l > 0 {
            dp.step();
        }
        if l >= s.len() && to_f64(&dp.survival()) < tol {
            return Ok(l);
        }
    }
    Err(Error::invalid(format!(
        "no truncation up to {max_order} meets tolerance {tol}"
    )))
}

/// Counts over all `m^d` words of length `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteCounts {
    /// words avoiding `S` as a factor
    pub avoiding: u64,
    /// words in which `S` occurs exactly once, at the end (`Z_d(S)`)
    pub ending: u64,
}

/// Largest `m^d` accepted by the enumerators.
pub const BRUTE_FORCE_BUDGET: u64 = 10_000_000;

/// Exhaustive counts for `d = 0..=d_max`.
///
/// Walks the tree of all words, extending only words that still avoid `S`;
/// a word containing `S` before its end has neither property, nor does any
/// extension of it. Occurrences are detected by direct suffix comparison.
pub fn brute_force_table(s: &Word, d_max: usize) -> Result<Vec<BruteCounts>> {
    s.require_pattern()?;
    let m = s.alphabet_size();
    if (m as u64)
        .checked_pow(d_max as u32)
        .is_none_or(|v| v > BRUTE_FORCE_BUDGET)
    {
        return Err(Error::invalid(format!(
            "{m}^{d_max} words exceed the enumeration budget {BRUTE_FORCE_BUDGET}"
        )));
    }
    let pat = s.letters();
    let mut counts = vec![BruteCounts { avoiding: 0, ending: 0 }; d_max + 1];
    let mut word: Vec<u32> = Vec::with_capacity(d_max);
    fn walk(pat: &[u32], m: u32, d_max: usize, word: &mut Vec<u32>, counts: &mut [BruteCounts]) {
        counts[word.len()].avoiding += 1;
        if word.len() == d_max {
            return;
        }
        for face in 1..=m {
            word.push(face);
            if word.ends_with(pat) {
                counts[word.len()].ending += 1;
            } else {
                walk(pat, m, d_max, word, counts);
            }
            word.pop();
        }
    }
    walk(pat, m, d_max, &mut word, &mut counts);
    Ok(counts)
}

pub fn brute_force_counts(s: &Word, d: usize) -> Result<BruteCounts> {
    Ok(brute_force_table(s, d)?[d])
}
