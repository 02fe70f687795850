//! Alphabets, words over `[m]`, face-probability models and the overlap
//! (autocorrelation) structure of a pattern.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_ratio, Ratio};

/// Maps faces `1..=m` to printable symbols. A numeric alphabet has no
/// symbols and reads/writes comma separated integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    size: u32,
    symbols: Option<Vec<char>>,
}

impl Alphabet {
    pub fn numeric(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        Ok(Alphabet { size: m, symbols: None })
    }

    pub fn symbols(chars: &[char]) -> Result<Self> {
        if chars.is_empty() {
            return Err(Error::invalid("alphabet must contain at least one symbol"));
        }
        for (i, c) in chars.iter().enumerate() {
            if c.is_whitespace() || *c == ',' || *c == '-' {
                return Err(Error::invalid(format!("symbol {c:?} cannot be used in an alphabet")));
            }
            if chars[..i].contains(c) {
                return Err(Error::invalid(format!("duplicate alphabet symbol {c:?}")));
            }
        }
        if chars.iter().all(|c| c.is_ascii_digit()) {
            return Err(Error::invalid(
                "digit symbols are ambiguous with integer letters; use --m instead",
            ));
        }
        Ok(Alphabet {
            size: chars.len() as u32,
            symbols: Some(chars.to_vec()),
        })
    }

    /// The coin alphabet: `H` is face 1, `T` is face 2.
    pub fn coin() -> Self {
        Alphabet {
            size: 2,
            symbols: Some(vec!['H', 'T']),
        }
    }

    /// Parses an alphabet spec: a range such as `A-Z`, a symbol list such
    /// as `HT`, or a bare integer `m` for the numeric alphabet `[m]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty alphabet spec (try HT, A-Z or 6)"));
        }
        if s.bytes().all(|b| b.is_ascii_digit()) {
            let m: u32 = s
                .parse()
                .map_err(|_| Error::invalid(format!("alphabet size {s:?} is too large")))?;
            return Alphabet::numeric(m);
        }
        let chars: Vec<char> = s.chars().collect();
        if chars.len() == 3 && chars[1] == '-' {
            let (lo, hi) = (chars[0], chars[2]);
            if lo > hi {
                return Err(Error::invalid(format!("empty symbol range {s:?}")));
            }
            let range: Vec<char> = (lo..=hi).collect();
            if range.len() > 4096 {
                return Err(Error::invalid(format!("symbol range {s:?} is too large")));
            }
            return Alphabet::symbols(&range);
        }
        Alphabet::symbols(&chars)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn has_symbols(&self) -> bool {
        self.symbols.is_some()
    }

    /// Reads a word. Symbol alphabets take the symbols directly; the numeric
    /// alphabet takes `1,3,2` or, when `m <= 9`, compact digits `132`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(Word::empty(self.size));
        }
        let letters: Vec<u32> = match &self.symbols {
            Some(syms) => t
                .chars()
                .map(|c| {
                    syms.iter()
                        .position(|s| *s == c)
                        .map(|i| i as u32 + 1)
                        .ok_or_else(|| Error::invalid(format!("symbol {c:?} is not in the alphabet")))
                })
                .collect::<Result<_>>()?,
            None if t.contains(',') => t
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::invalid(format!("bad letter {part:?} (expected e.g. 1,3,2)")))
                })
                .collect::<Result<_>>()?,
            None if self.size <= 9 => t
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::invalid(format!("bad letter {c:?} (expected digits 1..={})", self.size)))
                })
                .collect::<Result<_>>()?,
            None => {
                let v = t
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad word {t:?} (expected comma separated letters)")))?;
                vec![v]
            }
        };
        Word::new(letters, self.size)
    }

    pub fn format_word(&self, w: &Word) -> String {
        match &self.symbols {
            Some(syms) => w.letters().iter().map(|&l| syms[(l - 1) as usize]).collect(),
            None => w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","),
        }
    }

    /// Canonical spec string, suitable for [`Alphabet::parse`].
    pub fn spec(&self) -> String {
        match &self.symbols {
            Some(syms) => syms.iter().collect(),
            None => self.size.to_string(),
        }
    }
}

/// A finite word over `[m]`, letters 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u32>,
    m: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if let Some(bad) = letters.iter().find(|&&l| l == 0 || l > m) {
            return Err(Error::invalid(format!(
                "letter {bad} is outside the alphabet [1..={m}]"
            )));
        }
        Ok(Word { letters, m })
    }

    pub fn empty(m: u32) -> Self {
        Word { letters: Vec::new(), m }
    }

    /// Word of `len` copies of `letter`.
    pub fn run(letter: u32, len: usize, m: u32) -> Result<Self> {
        Word::new(vec![letter; len], m)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet_size(&self) -> u32 {
        self.m
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            letters: self.letters[..len].to_vec(),
            m: self.m,
        }
    }

    pub fn reverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
            m: self.m,
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.m != other.m {
            return Err(Error::invalid("cannot concatenate words over different alphabets"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters, m: self.m })
    }

    /// True iff `self` occurs as a consecutive subword of `w`.
    pub fn is_factor_of(&self, w: &Word) -> bool {
        is_factor(&self.letters, &w.letters)
    }

    /// Rejects the empty word; stopping patterns need at least one letter.
    pub fn require_pattern(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::invalid("the pattern must contain at least one letter"))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Naive factor test over raw letters.
pub fn is_factor(needle: &[u32], hay: &[u32]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// Face probabilities `p_1..p_m`, nonnegative and summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbModel {
    probs: Vec<Ratio>,
}

impl ProbModel {
    pub fn new(probs: Vec<Ratio>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid("probability vector is empty"));
        }
        if let Some(neg) = probs.iter().find(|p| **p < Ratio::zero()) {
            return Err(Error::invalid(format!("negative probability {neg}")));
        }
        let total: Ratio = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        Ok(ProbModel { probs })
    }

    pub fn uniform(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        let p = Ratio::new(1.into(), m.into());
        Ok(ProbModel {
            probs: vec![p; m as usize],
        })
    }

    /// Two-faced coin with heads (face 1) probability `p`.
    pub fn coin(p: Ratio) -> Result<Self> {
        let q = Ratio::one() - &p;
        ProbModel::new(vec![p, q])
    }

    /// Parses a comma separated list such as `1/2,1/4,1/4`.
    pub fn parse(spec: &str) -> Result<Self> {
        let probs = spec.split(',').map(parse_ratio).collect::<Result<Vec<_>>>()?;
        ProbModel::new(probs)
    }

    pub fn size(&self) -> u32 {
        self.probs.len() as u32
    }

    pub fn probs(&self) -> &[Ratio] {
        &self.probs
    }

    /// Probability of face `letter` (1-based).
    pub fn prob(&self, letter: u32) -> &Ratio {
        &self.probs[(letter - 1) as usize]
    }

    pub fn is_uniform(&self) -> bool {
        self.probs.windows(2).all(|w| w[0] == w[1])
    }

    pub fn min_prob(&self) -> (u32, &Ratio) {
        let (i, p) = self
            .probs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("model is nonempty");
        (i as u32 + 1, p)
    }

    fn check_alphabet(&self, w: &Word) -> Result<()> {
        if w.alphabet_size() != self.size() {
            return Err(Error::invalid(format!(
                "word over [{}] used with a {}-face model",
                w.alphabet_size(),
                self.size()
            )));
        }
        Ok(())
    }

    /// `P(w)`: product of face probabilities along `w`; `P(empty) = 1`.
    pub fn word_probability(&self, w: &Word) -> Result<Ratio> {
        self.check_alphabet(w)?;
        Ok(w.letters().iter().map(|&l| self.prob(l)).product())
    }

    /// Fails with [`Error::Unreachable`] if `w` uses a zero-probability face.
    pub fn require_reachable(&self, w: &Word) -> Result<()> {
        self.check_alphabet(w)?;
        match w.letters().iter().find(|&&l| self.prob(l).is_zero()) {
            Some(&face) => Err(Error::Unreachable { face }),
            None => Ok(()),
        }
    }
}

/// Prefix-function (border) table: `table[i]` is the length of the longest
/// proper border of `s[..=i]`.
pub fn border_table(s: &[u32]) -> Vec<usize> {
    let mut table = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = table[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        table[i] = k;
    }
    table
}

/// One overlap `R` of a pattern, stored as a prefix length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub len: usize,
    pub word: Word,
}

/// Nonempty prefixes of `S` that are also suffixes, including `S` itself,
/// in increasing length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapSet {
    overlaps: Vec<Overlap>,
}

impl OverlapSet {
    pub fn of(s: &Word) -> Result<Self> {
        s.require_pattern()?;
        let table = border_table(s.letters());
        let mut lens = vec![s.len()];
        let mut b = table[s.len() - 1];
        while b > 0 {
            lens.push(b);
            b = table[b - 1];
        }
        lens.reverse();
        Ok(OverlapSet {
            overlaps: lens
                .into_iter()
                .map(|len| Overlap {
                    len,
                    word: s.prefix(len),
                })
                .collect(),
        })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Overlap> {
        self.overlaps.iter()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.overlaps.iter().map(|o| o.len).collect()
    }

    pub fn len(&self) -> usize {
        self.overlaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.overlaps.is_empty()
    }

    /// `(|R|, P(R))` for each overlap. Fails if the pattern is unreachable.
    pub fn weighted(&self, model: &ProbModel) -> Result<Vec<(usize, Ratio)>> {
        if let Some(full) = self.overlaps.last() {
            model.require_reachable(&full.word)?;
        }
        self.overlaps
            .iter()
            .map(|o| Ok((o.len, model.word_probability(&o.word)?)))
            .collect()
    }
}

impl<'a> IntoIterator for &'a OverlapSet {
    type Item = &'a Overlap;
    type IntoIter = std::slice::Iter<'a, Overlap>;
    fn into_iter(self) -> Self::IntoIter {
        self.overlaps.iter()
    }
}

pub fn overlaps(s: &Word) -> Result<OverlapSet> {
    OverlapSet::of(s)
}

/// All words of length `k` over `[m]` in lexicographic order.
pub fn all_words(m: u32, k: usize) -> impl Iterator<Item = Word> {
    let total = (m as u64).checked_pow(k as u32);
    let mut cur = vec![1u32; k];
    let mut remaining = total.unwrap_or(u64::MAX);
    std::iter::from_fn(move || {
        if remaining == 0 {
            return None;
        }
        remaining -= 1;
        let out = Word {
            letters: cur.clone(),
            m,
        };
        for pos in (0..k).rev() {
            if cur[pos] < m {
                cur[pos] += 1;
                break;
            }
            cur[pos] = 1;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn naive_overlap_lengths(s: &[u32]) -> Vec<usize> {
        (1..=s.len()).filter(|&l| s[..l] == s[s.len() - l..]).collect()
    }

    #[test]
    fn overlaps_examples() {
        let w = Alphabet::numeric(3).unwrap().parse_word("13211").unwrap();
        let o = overlaps(&w).unwrap();
        assert_eq!(o.lengths(), vec![1, 5]);
        assert_eq!(o.iter().next().unwrap().word.letters(), &[1]);

        let az = Alphabet::parse("A-Z").unwrap();
        let abra = az.parse_word("ABRACADABRA").unwrap();
        let names: Vec<String> = overlaps(&abra)
            .unwrap()
            .iter()
            .map(|o| az.format_word(&o.word))
            .collect();
        assert_eq!(names, ["A", "ABRA", "ABRACADABRA"]);

        let single = Word::new(vec![2], 3).unwrap();
        assert_eq!(overlaps(&single).unwrap().lengths(), vec![1]);

        let run = Alphabet::coin().parse_word("HHHH").unwrap();
        assert_eq!(overlaps(&run).unwrap().lengths(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn empty_pattern_rejected() {
        assert!(matches!(overlaps(&Word::empty(2)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn overlaps_match_naive_exhaustively() {
        for m in 1..=3 {
            for k in 1..=8 {
                for w in all_words(m, k) {
                    let lens = overlaps(&w).unwrap().lengths();
                    assert_eq!(lens, naive_overlap_lengths(w.letters()), "{w}");
                    assert_eq!(overlaps(&w.reverse()).unwrap().lengths(), lens);
                }
            }
        }
    }

    #[test]
    fn reverse_examples() {
        let a = Alphabet::numeric(3).unwrap();
        assert_eq!(a.parse_word("13211").unwrap().reverse(), a.parse_word("11231").unwrap());
        let pal = a.parse_word("121").unwrap();
        assert_eq!(pal.reverse(), pal);
        let one = a.parse_word("2").unwrap();
        assert_eq!(one.reverse(), one);
    }

    #[test]
    fn probabilities() {
        let coin = ProbModel::coin(frac(2, 3)).unwrap();
        let htt = Alphabet::coin().parse_word("HTT").unwrap();
        assert_eq!(coin.word_probability(&htt).unwrap(), frac(2, 27));
        assert_eq!(coin.word_probability(&Word::empty(2)).unwrap(), frac(1, 1));

        let uni = ProbModel::uniform(26).unwrap();
        let w = Alphabet::parse("A-Z").unwrap().parse_word("ABRACADABRA").unwrap();
        let expect = Ratio::new(1.into(), num_traits::pow(num_bigint::BigInt::from(26), 11));
        assert_eq!(uni.word_probability(&w).unwrap(), expect);

        let skew = ProbModel::parse("1/2,1/2,0").unwrap();
        let w3 = Word::new(vec![1, 3], 3).unwrap();
        assert_eq!(skew.word_probability(&w3).unwrap(), frac(0, 1));
        assert_eq!(skew.require_reachable(&w3), Err(Error::Unreachable { face: 3 }));

        assert!(uni.word_probability(&htt).is_err());
    }

    #[test]
    fn model_validation() {
        assert!(ProbModel::parse("1/2,1/3").is_err());
        assert!(ProbModel::parse("3/2,-1/2").is_err());
        assert!(ProbModel::parse("").is_err());
        assert!(ProbModel::parse("1").unwrap().is_uniform());
        assert_eq!(ProbModel::parse("1/2,1/4,1/4").unwrap().min_prob(), (2, &frac(1, 4)));
    }

    #[test]
    fn factor_examples() {
        let a = Alphabet::numeric(3).unwrap();
        let w = a.parse_word("13211").unwrap();
        assert!(a.parse_word("321").unwrap().is_factor_of(&w));
        assert!(!a.parse_word("121").unwrap().is_factor_of(&w));
        assert!(Word::empty(3).is_factor_of(&w));
    }

    #[test]
    fn alphabet_specs() {
        let a = Alphabet::parse("HT").unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.parse_word("HTT").unwrap().letters(), &[1, 2, 2]);
        assert!(a.parse_word("HX").is_err());
        assert_eq!(Alphabet::parse("A-Z").unwrap().size(), 26);
        let six = Alphabet::parse("6").unwrap();
        assert_eq!(six.parse_word("1,6,2").unwrap().letters(), &[1, 6, 2]);
        assert_eq!(six.parse_word("162").unwrap().letters(), &[1, 6, 2]);
        assert!(six.parse_word("1,7").is_err());
        let twelve = Alphabet::numeric(12).unwrap();
        assert_eq!(twelve.parse_word("11,12").unwrap().letters(), &[11, 12]);
        assert_eq!(twelve.format_word(&twelve.parse_word("11,2").unwrap()), "11,2");
        assert!(Alphabet::parse("HH").is_err());
        assert!(Alphabet::parse("Z-A").is_err());
        assert!(Alphabet::parse("0").is_err());
    }

    #[test]
    fn all_words_enumerates() {
        let v: Vec<Word> = all_words(2, 3).collect();
        assert_eq!(v.len(), 8);
        assert_eq!(v[0].letters(), &[1, 1, 1]);
        assert_eq!(v[7].letters(), &[2, 2, 2]);
        assert_eq!(all_words(3, 0).count(), 1);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn probability_is_multiplicative(u in proptest::collection::vec(1u32..=3, 0..8),
                                         v in proptest::collection::vec(1u32..=3, 0..8)) {
            let model = ProbModel::parse("1/2,1/3,1/6").unwrap();
            let u = Word::new(u, 3).unwrap();
            let v = Word::new(v, 3).unwrap();
            let uv = u.concat(&v).unwrap();
            prop_assert_eq!(
                model.word_probability(&uv).unwrap(),
                model.word_probability(&u).unwrap() * model.word_probability(&v).unwrap()
            );
        }
    }
}
