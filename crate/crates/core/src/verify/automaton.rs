use crate::error::Result;
use crate::words::Word;

/// Matching automaton for one pattern. State `q` means the longest prefix
/// of `S` that is a suffix of the rolls so far has length `q`; state `|S|`
/// marks an occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternAutomaton {
    pattern: Vec<u32>,
    m: u32,
    // delta[q][a - 1]
    delta: Vec<Vec<usize>>,
    // restart[q]: state reached by the rolls S[1..q], i.e. the longest
    // proper border of S[..q]
    restart: Vec<usize>,
}

impl PatternAutomaton {
    pub fn new(s: &Word) -> Result<Self> {
        s.require_pattern()?;
        let pat = s.letters();
        let m = s.alphabet_size() as usize;
        let len = pat.len();
        let mut delta = vec![vec![0usize; m]; len + 1];
        let mut restart = vec![0usize; len + 1];
        delta[0][pat[0] as usize - 1] = 1;
        let mut x = 0usize;
        for q in 1..=len {
            restart[q] = x;
            delta[q] = delta[x].clone();
            if q < len {
                let c = pat[q] as usize - 1;
                delta[q][c] = q + 1;
                x = delta[x][c];
            }
        }
        Ok(PatternAutomaton {
            pattern: pat.to_vec(),
            m: s.alphabet_size(),
            delta,
            restart,
        })
    }

    pub fn accepting(&self) -> usize {
        self.pattern.len()
    }

    pub fn alphabet_size(&self) -> u32 {
        self.m
    }

    /// Next state after rolling `face` (1-based).
    #[inline]
    pub fn step(&self, state: usize, face: u32) -> usize {
        self.delta[state][face as usize - 1]
    }

    /// Border lengths of `S` read off the restart chain, increasing, with
    /// `|S|` itself last.
    pub fn borders(&self) -> Vec<usize> {
        let mut out = vec![self.accepting()];
        let mut b = self.restart[self.accepting()];
        while b > 0 {
            out.push(b);
            b = self.restart[b];
        }
        out.reverse();
        out
    }
}

pub fn build_automaton(s: &Word) -> Result<PatternAutomaton> {
    PatternAutomaton::new(s)
}
