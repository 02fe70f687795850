//! Moments of the waiting time `Y` for a pattern `S`.
//!
//! `E(Y^n) = sum_{pi in Pi_n} |pi|! prod_{B in pi} w(|B|)` with
//! `w(b) = sum_{R in overlap(S)} ((1-|R|)^b - (-|R|)^b) / P(R)`.

mod coin;
mod partition;

pub use coin::{
    coin_moment_partition, moment_run_rec, moment_run_tail_rec, run_closed_form, run_moments_direct,
    run_moments_eulerian, run_tail_closed_form, run_tail_moments_direct, run_tail_moments_eulerian,
    run_tail_moments_fubini, CoinPattern,
};
pub use partition::{
    block_shapes, partition_sum, set_partitions, SetPartition, SetPartitions, ShapeCounts, MAX_PARTITION_N,
};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{powi, Ratio};
use crate::words::{all_words, overlaps, ProbModel, Word};

/// `(|R|, P(R))` for every overlap, rejecting unreachable patterns.
fn weighted_overlaps(s: &Word, model: &ProbModel) -> Result<Vec<(usize, Ratio)>> {
    overlaps(s)?.weighted(model)
}

/// `w(b)` for `b = 1..=n`.
fn block_weights(ov: &[(usize, Ratio)], n: usize) -> Vec<Ratio> {
    (1..=n as i64)
        .map(|b| {
            ov.iter()
                .map(|(len, p)| {
                    let len = Ratio::from_integer((*len).into());
                    (powi(&(Ratio::one() - &len), b) - powi(&(-len), b)) / p
                })
                .sum()
        })
        .collect()
}

/// `E(S) = sum_{R in overlap(S)} 1 / P(R)`.
pub fn expected_time(s: &Word, model: &ProbModel) -> Result<Ratio> {
    Ok(weighted_overlaps(s, model)?.iter().map(|(_, p)| p.recip()).sum())
}

/// Exact `E(Y^n)` for `n <= 12`; `n = 0` gives 1.
pub fn moment(s: &Word, model: &ProbModel, n: u32) -> Result<Ratio> {
    let ov = weighted_overlaps(s, model)?;
    if n == 0 {
        return Ok(Ratio::one());
    }
    partition_sum(n as usize, &block_weights(&ov, n as usize), false)
}

/// `E(Y^1..=Y^n_max)` sharing one overlap computation.
pub fn moments(s: &Word, model: &ProbModel, n_max: u32) -> Result<Vec<Ratio>> {
    let ov = weighted_overlaps(s, model)?;
    let weights = block_weights(&ov, n_max as usize);
    (1..=n_max as usize)
        .map(|n| partition_sum(n, &weights, false))
        .collect()
}

/// `Var(Y) = E(Y^2) - E(Y)^2`.
pub fn variance(s: &Word, model: &ProbModel) -> Result<Ratio> {
    let e1 = expected_time(s, model)?;
    Ok(moment(s, model, 2)? - &e1 * &e1)
}

/// Variance from the explicit overlap sum
/// `(sum 1/P(R))^2 + sum ((1-|R|)^2 - |R|^2) / P(R)`.
pub fn variance_explicit(s: &Word, model: &ProbModel) -> Result<Ratio> {
    let ov = weighted_overlaps(s, model)?;
    let a: Ratio = ov.iter().map(|(_, p)| p.recip()).sum();
    let b: Ratio = ov
        .iter()
        .map(|(len, p)| {
            let l = Ratio::from_integer((*len).into());
            (powi(&(Ratio::one() - &l), 2) - powi(&l, 2)) / p
        })
        .sum();
    Ok(&a * &a + b)
}

/// Expected number of occurrences in `rolls` rolls, `rolls / E(S)`.
pub fn occurrence_rate(s: &Word, model: &ProbModel, rolls: u64) -> Result<Ratio> {
    Ok(Ratio::from_integer(rolls.into()) / expected_time(s, model)?)
}

/// Exact moments of one pattern under one model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub pattern: Vec<u32>,
    #[serde(serialize_with = "crate::rational::serde_ratios")]
    pub model: Vec<Ratio>,
    pub n_max: u32,
    #[serde(serialize_with = "crate::rational::serde_ratio")]
    pub expected: Ratio,
    #[serde(serialize_with = "crate::rational::serde_ratios")]
    pub moments: Vec<Ratio>,
    #[serde(serialize_with = "crate::rational::serde_ratio")]
    pub variance: Ratio,
}

impl MomentReport {
    pub fn compute(s: &Word, model: &ProbModel, n_max: u32) -> Result<Self> {
        if n_max == 0 || n_max as usize > MAX_PARTITION_N {
            return Err(Error::invalid(format!("moment order must be in 1..={MAX_PARTITION_N}")));
        }
        let ms = moments(s, model, n_max.max(2))?;
        let expected = ms[0].clone();
        let variance = &ms[1] - &expected * &expected;
        Ok(MomentReport {
            pattern: s.letters().to_vec(),
            model: model.probs().to_vec(),
            n_max,
            expected,
            moments: ms.into_iter().take(n_max as usize).collect(),
            variance,
        })
    }
}

/// Outcome of an exhaustive search over `[m]^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extrema {
    pub max: Ratio,
    pub argmax: Word,
    pub min: Ratio,
    pub argmin: Word,
}

/// Largest search space accepted by [`extremal_expected`].
pub const EXTREMA_BUDGET: u64 = 1_000_000;

/// Brute-force extrema of `E(S)` over all words of length `k`; witnesses
/// are the lexicographically first words attaining each value.
pub fn extremal_expected(m: u32, k: usize, model: &ProbModel) -> Result<Extrema> {
    if m == 0 || k == 0 {
        return Err(Error::invalid("extremal search needs m >= 1 and k >= 1"));
    }
    if model.size() != m {
        return Err(Error::invalid(format!(
            "model has {} faces, expected {m}",
            model.size()
        )));
    }
    let space = (m as u64).checked_pow(k as u32).filter(|&s| s <= EXTREMA_BUDGET);
    if space.is_none() {
        return Err(Error::invalid(format!(
            "search space {m}^{k} exceeds {EXTREMA_BUDGET} words"
        )));
    }
    let (face, p) = model.min_prob();
    if p.is_zero() {
        return Err(Error::Unreachable { face });
    }
    let mut best: Option<Extrema> = None;
    for w in all_words(m, k) {
        let e = expected_time(&w, model)?;
        match &mut best {
            None => {
                best = Some(Extrema {
                    max: e.clone(),
                    argmax: w.clone(),
                    min: e,
                    argmin: w,
                })
            }
            Some(b) => {
                if e > b.max {
                    b.max = e.clone();
                    b.argmax = w.clone();
                }
                if e < b.min {
                    b.min = e;
                    b.argmin = w;
                }
            }
        }
    }
    Ok(best.expect("search space is nonempty"))
}

/// `p^{-1} + ... + p^{-k}`, the expected waiting time for a run of `k`
/// faces of probability `p`.
pub fn run_expected(k: usize, p: &Ratio) -> Ratio {
    (1..=k as i64).map(|i| powi(p, -i)).sum()
}

/// Which of two words is expected to occur more often.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Prediction {
    First,
    Second,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareEntry {
    pub pattern: Vec<u32>,
    #[serde(serialize_with = "crate::rational::serde_ratio")]
    pub expected: Ratio,
    pub overlaps: usize,
    #[serde(serialize_with = "crate::rational::serde_ratio")]
    pub occurrences: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub rolls: u64,
    pub first: CompareEntry,
    pub second: CompareEntry,
    pub more_frequent: Prediction,
}

pub fn compare(first: &Word, second: &Word, model: &ProbModel, rolls: u64) -> Result<CompareReport> {
    let entry = |w: &Word| -> Result<CompareEntry> {
        Ok(CompareEntry {
            pattern: w.letters().to_vec(),
            expected: expected_time(w, model)?,
            overlaps: overlaps(w)?.len(),
            occurrences: occurrence_rate(w, model, rolls)?,
        })
    };
    let a = entry(first)?;
    let b = entry(second)?;
    let more_frequent = match a.occurrences.cmp(&b.occurrences) {
        std::cmp::Ordering::Greater => Prediction::First,
        std::cmp::Ordering::Less => Prediction::Second,
        std::cmp::Ordering::Equal => Prediction::Tie,
    };
    Ok(CompareReport {
        rolls,
        first: a,
        second: b,
        more_frequent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::words::Alphabet;
    use num_bigint::BigInt;

    fn hw(s: &str) -> Word {
        Alphabet::coin().parse_word(s).unwrap()
    }

    fn half() -> ProbModel {
        ProbModel::coin(frac(1, 2)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Ratio> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn abracadabra() {
        let az = Alphabet::parse("A-Z").unwrap();
        let w = az.parse_word("ABRACADABRA").unwrap();
        let e = expected_time(&w, &ProbModel::uniform(26).unwrap()).unwrap();
        let pow = |k| num_traits::pow(BigInt::from(26), k);
        assert_eq!(e, Ratio::from_integer(pow(11) + pow(4) + pow(1)));
        assert_eq!(e.to_integer().to_string(), "3670344487444778");
    }

    #[test]
    fn expected_examples() {
        assert_eq!(
            expected_time(&hw("HTT"), &ProbModel::coin(frac(2, 3)).unwrap()).unwrap(),
            frac(27, 2)
        );
        for k in 1..=6 {
            for p in [frac(1, 2), frac(1, 3), frac(9, 10)] {
                let e = expected_time(&Word::run(1, k, 2).unwrap(), &ProbModel::coin(p.clone()).unwrap()).unwrap();
                let pk = powi(&p, k as i64);
                assert_eq!(e, (int(1) - &pk) / ((int(1) - &p) * pk));
            }
        }
        // overlap(S) = {S} gives 1/P(S)
        let m = ProbModel::parse("1/2,1/3,1/6").unwrap();
        let w = Word::new(vec![1, 2, 3, 3], 3).unwrap();
        assert_eq!(expected_time(&w, &m).unwrap(), m.word_probability(&w).unwrap().recip());
    }

    #[test]
    fn moment_sequences() {
        assert_eq!(
            moments(&hw("H"), &half(), 6).unwrap(),
            ints(&[2, 6, 26, 150, 1082, 9366])
        );
        assert_eq!(
            moments(&hw("HH"), &half(), 5).unwrap(),
            ints(&[6, 58, 822, 15514, 366006])
        );
        assert_eq!(moments(&hw("HT"), &half(), 5).unwrap(), ints(&[4, 20, 124, 932, 8284]));
        let third = ProbModel::coin(frac(1, 3)).unwrap();
        assert_eq!(moments(&hw("H"), &third, 5).unwrap(), ints(&[3, 15, 111, 1095, 13503]));
        assert_eq!(moment(&hw("HH"), &half(), 0).unwrap(), int(1));
        assert!(moment(&hw("HH"), &half(), 13).is_err());
    }

    // Direct transcription of the expanded n = 2, 3, 4 expressions.
    fn expanded(s: &Word, model: &ProbModel, n: u32) -> Ratio {
        let ov = overlaps(s).unwrap().weighted(model).unwrap();
        let sum = |f: &dyn Fn(Ratio) -> Ratio| -> Ratio {
            ov.iter()
                .map(|(len, p)| f(Ratio::from_integer((*len).into())) / p)
                .sum()
        };
        let a = sum(&|_| int(1));
        let b = sum(&|l| powi(&(int(1) - &l), 2) - powi(&l, 2));
        let c = sum(&|l| powi(&(int(1) - &l), 3) + powi(&l, 3));
        let d = sum(&|l| powi(&(int(1) - &l), 4) - powi(&l, 4));
        match n {
            2 => int(2) * powi(&a, 2) + b,
            3 => int(6) * powi(&a, 3) + int(6) * &a * &b + c,
            4 => int(24) * powi(&a, 4) + int(36) * powi(&a, 2) * &b + int(6) * powi(&b, 2) + int(8) * &a * &c + d,
            _ => unreachable!(),
        }
    }

    #[test]
    fn partition_sum_reproduces_expanded_forms() {
        let m = ProbModel::parse("1/2,1/3,1/6").unwrap();
        for len in 1..=5 {
            for w in all_words(3, len) {
                for n in 2..=4 {
                    assert_eq!(moment(&w, &m, n).unwrap(), expanded(&w, &m, n), "{w} n={n}");
                }
            }
        }
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance(&hw("H"), &half()).unwrap(), int(2));
        assert_eq!(variance(&hw("HH"), &half()).unwrap(), int(22));
        let det = ProbModel::parse("1").unwrap();
        let w = Word::run(1, 4, 1).unwrap();
        assert_eq!(variance(&w, &det).unwrap(), int(0));
        assert_eq!(expected_time(&w, &det).unwrap(), int(4));
        let m = ProbModel::parse("1/5,4/5").unwrap();
        for w in all_words(2, 5) {
            assert_eq!(variance(&w, &m).unwrap(), variance_explicit(&w, &m).unwrap());
        }
    }

    #[test]
    fn unreachable_patterns() {
        let m = ProbModel::parse("1,0").unwrap();
        assert_eq!(expected_time(&hw("HT"), &m), Err(Error::Unreachable { face: 2 }));
        assert_eq!(moment(&hw("TH"), &m, 3), Err(Error::Unreachable { face: 2 }));
    }

    #[test]
    fn occurrence_rates() {
        assert_eq!(occurrence_rate(&hw("HH"), &half(), 600).unwrap(), int(100));
        assert_eq!(occurrence_rate(&hw("HT"), &half(), 600).unwrap(), int(150));
    }

    #[test]
    fn compare_reports() {
        let r = compare(&hw("HH"), &hw("HT"), &half(), 100).unwrap();
        assert_eq!(r.more_frequent, Prediction::Second);
        assert_eq!(r.second.occurrences, int(25));
        assert_eq!(r.first.occurrences, frac(50, 3));
        assert_eq!((r.first.overlaps, r.second.overlaps), (2, 1));
        assert_eq!(
            compare(&hw("HHT"), &hw("HHT"), &half(), 10).unwrap().more_frequent,
            Prediction::Tie
        );
        let biased = ProbModel::coin(frac(1, 3)).unwrap();
        assert_eq!(
            compare(&hw("HHTHT"), &hw("THTHH"), &biased, 10).unwrap().more_frequent,
            Prediction::Tie
        );
    }

    #[test]
    fn extrema_examples() {
        let ex = extremal_expected(2, 3, &ProbModel::uniform(2).unwrap()).unwrap();
        assert_eq!(ex.max, int(14));
        assert_eq!(ex.argmax, hw("HHH"));
        assert_eq!(ex.min, int(8));
        assert_eq!(overlaps(&ex.argmin).unwrap().len(), 1);

        let m = ProbModel::parse("1/2,1/4,1/4").unwrap();
        for k in 2..=6usize {
            let mut w = vec![1; k];
            let run = expected_time(&Word::new(w.clone(), 3).unwrap(), &m).unwrap();
            w[k - 1] = 2;
            let tail2 = expected_time(&Word::new(w.clone(), 3).unwrap(), &m).unwrap();
            w[k - 1] = 3;
            let tail3 = expected_time(&Word::new(w, 3).unwrap(), &m).unwrap();
            let two_k1 = Ratio::from_integer(num_traits::pow(BigInt::from(2), k + 1));
            assert_eq!(tail2, two_k1);
            assert_eq!(tail3, two_k1);
            assert_eq!(run, &two_k1 - int(2));
            assert!(tail2 > run);
        }

        assert!(extremal_expected(10, 7, &ProbModel::uniform(10).unwrap()).is_err());
        assert!(extremal_expected(2, 3, &ProbModel::parse("1,0").unwrap()).is_err());
    }

    #[test]
    fn report_is_consistent() {
        let r = MomentReport::compute(&hw("HH"), &half(), 3).unwrap();
        assert_eq!(r.moments, ints(&[6, 58, 822]));
        assert_eq!(r.variance, int(22));
        let one = MomentReport::compute(&hw("HH"), &half(), 1).unwrap();
        assert_eq!(one.moments.len(), 1);
        assert_eq!(one.variance, int(22));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["moments"][1], "58/1");
        assert_eq!(json["model"][0], "1/2");
        assert!(MomentReport::compute(&hw("HH"), &half(), 0).is_err());
    }
}
