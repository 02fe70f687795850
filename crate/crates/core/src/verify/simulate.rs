use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::automaton::PatternAutomaton;
use super::rng::XorShift64Star;
use crate::error::{Error, Result};
use crate::moments::expected_time;
use crate::rational::{to_f64, Ratio};
use crate::words::{ProbModel, Word};

/// Trials are split across this many independent streams regardless of
/// the thread count, so reports depend only on the seed.
pub const SIM_STREAMS: u64 = 16;

/// Empirical moments `E(Y^1..=Y^4)` are reported.
pub const SIM_MOMENTS: usize = 4;

/// Largest `E(S)` for which a default cap is derived.
const DEFAULT_CAP_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    /// maximum rolls per trial
    pub cap: u64,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64, cap: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::invalid("at least one trial is required"));
        }
        Ok(SimConfig { trials, seed, cap })
    }

    /// Cap of `ceil(100 E(S))`; only available when `E(S) <= 10^6`.
    pub fn with_default_cap(s: &Word, model: &ProbModel, trials: u64, seed: u64) -> Result<Self> {
        let e = expected_time(s, model)?;
        if e > Ratio::from_integer(DEFAULT_CAP_LIMIT.into()) {
            return Err(Error::invalid(format!(
                "E(S) = {} exceeds {DEFAULT_CAP_LIMIT}; pass an explicit cap",
                crate::rational::to_decimal(&e, 6)
            )));
        }
        let cap = (e * Ratio::from_integer(100.into())).ceil().to_integer();
        let cap = u64::try_from(cap).expect("bounded by 10^8");
        SimConfig::new(trials, seed, cap)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub trials: u64,
    pub seed: u64,
    pub cap: u64,
    /// trials that saw the pattern within the cap
    pub hits: u64,
    /// trials stopped at the cap; excluded from the moments
    pub capped: u64,
    pub capped_fraction: f64,
    /// set when any trial hit the cap
    pub warning: bool,
    /// empirical `E(Y^n)`, `n = 1..=4`, over the hits
    pub moments: Vec<f64>,
    /// standard errors of those means
    pub std_errors: Vec<f64>,
}

#[derive(Default, Clone)]
struct Tally {
    hits: u64,
    capped: u64,
    sums: [f64; SIM_MOMENTS],
    sq_sums: [f64; SIM_MOMENTS],
}

impl Tally {
    fn absorb(&mut self, other: &Tally) {
        self.hits += other.hits;
        self.capped += other.capped;
        for i in 0..SIM_MOMENTS {
            self.sums[i] += other.sums[i];
            self.sq_sums[i] += other.sq_sums[i];
        }
    }
}

/// Face sampler by inversion on cumulative thresholds converted once to
/// `f64`. Rounding of the thresholds biases face probabilities by at most
/// a few ulps.
struct Sampler {
    thresholds: Vec<f64>,
    fallback: u32,
}

impl Sampler {
    fn new(model: &ProbModel) -> Self {
        let mut cum = Ratio::zero();
        let mut thresholds = Vec::with_capacity(model.size() as usize);
        let mut fallback = 1;
        for (i, p) in model.probs().iter().enumerate() {
            cum += p;
            thresholds.push(to_f64(&cum));
            if !p.is_zero() {
                fallback = i as u32 + 1;
            }
        }
        Sampler { thresholds, fallback }
    }

    #[inline]
    fn sample(&self, u: f64) -> u32 {
        match self.thresholds.iter().position(|&t| u < t) {
            Some(i) => i as u32 + 1,
            None => self.fallback,
        }
    }
}

fn run_stream(auto: &PatternAutomaton, sampler: &Sampler, cfg: &SimConfig, worker: u64, trials: u64) -> Tally {
    let mut rng = XorShift64Star::stream(cfg.seed, worker);
    let accept = auto.accepting();
    let mut tally = Tally::default();
    for _ in 0..trials {
        let mut state = 0;
        let mut rolls = 0u64;
        let mut hit = false;
        while rolls < cfg.cap {
            rolls += 1;
            state = auto.step(state, sampler.sample(rng.next_f64()));
            if state == accept {
                hit = true;
                break;
            }
        }
        if hit {
            tally.hits += 1;
            let y = rolls as f64;
            let mut pw = 1.0;
            for i in 0..SIM_MOMENTS {
                pw *= y;
                tally.sums[i] += pw;
                tally.sq_sums[i] += pw * pw;
            }
        } else {
            tally.capped += 1;
        }
    }
    tally
}

/// Seeded Monte Carlo estimate of the first four moments of `Y`.
pub fn simulate(s: &Word, model: &ProbModel, cfg: &SimConfig) -> Result<SimReport> {
    model.require_reachable(s)?;
    if cfg.cap < s.len() as u64 {
        return Err(Error::invalid(format!("cap {} is shorter than the pattern", cfg.cap)));
    }
    let auto = PatternAutomaton::new(s)?;
    let sampler = Sampler::new(model);
    let per = cfg.trials / SIM_STREAMS;
    let extra = cfg.trials % SIM_STREAMS;
    let tallies: Vec<Tally> = (0..SIM_STREAMS)
        .into_par_iter()
        .map(|w| run_stream(&auto, &sampler, cfg, w, per + u64::from(w < extra)))
        .collect();
    let mut total = Tally::default();
    for t in &tallies {
        total.absorb(t);
    }

    let n = total.hits as f64;
    let mut moments = vec![f64::NAN; SIM_MOMENTS];
    let mut std_errors = vec![f64::NAN; SIM_MOMENTS];
    if total.hits > 0 {
        for i in 0..SIM_MOMENTS {
            let mean = total.sums[i] / n;
            moments[i] = mean;
            if total.hits > 1 {
                let var = ((total.sq_sums[i] / n - mean * mean) * n / (n - 1.0)).max(0.0);
                std_errors[i] = (var / n).sqrt();
            }
        }
    }
    Ok(SimReport {
        trials: cfg.trials,
        seed: cfg.seed,
        cap: cfg.cap,
        hits: total.hits,
        capped: total.capped,
        capped_fraction: total.capped as f64 / cfg.trials as f64,
        warning: total.capped > 0,
        moments,
        std_errors,
    })
}
