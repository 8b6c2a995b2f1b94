//! Monte Carlo calibration harness.
//!
//! Each experiment draws a true probability `p ~ U[0, 1)`, simulates
//! `m ~ Binomial(n, p)`, builds an interval with the chosen method and records
//! whether the closed interval contains `p`. Under the uniform prior the exact
//! method's coverage converges to the nominal level for every `n`.
//!
//! Experiments are split into fixed-size chunks; chunk `j` draws from a
//! ChaCha8 generator seeded with the master seed on stream `j`. Results are
//! therefore identical regardless of how many worker threads run.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::standard_estimate;
use crate::discrete::{discrete_interval, discrete_posterior};
use crate::error::{Error, Result};
use crate::exact::{credible_interval, ConfidenceLevel, SampleSummary};
use crate::numfmt::fmt_sig;
use crate::special_fn::{ln_beta, BetaParams};

/// Experiments per RNG stream.
pub const CHUNK_SIZE: u64 = 4096;

/// Largest `n` simulated with explicit Bernoulli draws.
pub const BERNOULLI_DRAW_LIMIT: u64 = 10_000;

pub const RNG_FAMILY: &str = "ChaCha8Rng, stream per 4096-experiment chunk";

pub const DEFAULT_DISCRETE_K: usize = 10_000;

/// Interval construction under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Standard,
    Discrete { k: usize },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => f.write_str("exact"),
            Method::Standard => f.write_str("standard"),
            Method::Discrete { k } => write!(f, "discrete:{k}"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts `exact`, `standard`, `discrete` and `discrete:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "standard" => Ok(Method::Standard),
            "discrete" => Ok(Method::Discrete {
                k: DEFAULT_DISCRETE_K,
            }),
            _ => {
                let k = s
                    .strip_prefix("discrete:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::UnknownMethod(s.to_string()))?;
                Ok(Method::Discrete { k })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub method: String,
    pub n: u64,
    pub c: f64,
    pub experiments: u64,
    pub coverage: f64,
    pub mean_width: f64,
    pub seed: u64,
    pub rng: String,
}

impl CoverageReport {
    pub const CSV_HEADER: &'static str = "method,n,c,experiments,coverage,mean_width,seed";

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report fields are always serializable")
    }

    /// One CSV row matching [`CSV_HEADER`](Self::CSV_HEADER), reals at 12
    /// significant digits.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.method,
            self.n,
            fmt_sig(self.c, 12),
            self.experiments,
            fmt_sig(self.coverage, 12),
            fmt_sig(self.mean_width, 12),
            self.seed
        )
    }
}

fn interval_for(method: Method, s: SampleSummary, c: ConfidenceLevel) -> Result<(f64, f64)> {
    match method {
        Method::Exact => {
            let ci = credible_interval(s, c)?;
            Ok((ci.lower, ci.upper))
        }
        Method::Standard => {
            let e = standard_estimate(s, c, None)?;
            Ok((e.lower, e.upper))
        }
        Method::Discrete { k } => {
            let d = discrete_posterior(s, k)?;
            let ci = discrete_interval(&d, c);
            Ok((ci.lower, ci.upper))
        }
    }
}

/// Binomial variate by inversion. The support is searched outward from the
/// mode, alternating sides, so the expected cost is `O(√(n p (1 - p)))` and
/// the starting probability never underflows.
pub fn binomial_by_inversion<R: Rng + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    if p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    let nf = n as f64;
    let mode = (((nf + 1.0) * p).floor() as u64).min(n);
    let ln_choose = -(nf + 1.0).ln()
        - ln_beta(BetaParams {
            a: mode as f64 + 1.0,
            b: (n - mode) as f64 + 1.0,
        })
        .expect("shapes are >= 1");
    let pmf_mode = (ln_choose + mode as f64 * p.ln() + (n - mode) as f64 * (-p).ln_1p()).exp();
    let odds = p / (1.0 - p);

    let mut u: f64 = rng.random();
    u -= pmf_mode;
    if u <= 0.0 {
        return mode;
    }
    let (mut lo, mut hi) = (mode, mode);
    let (mut pmf_lo, mut pmf_hi) = (pmf_mode, pmf_mode);
    loop {
        let mut moved = false;
        if hi < n {
            pmf_hi *= (n - hi) as f64 / (hi + 1) as f64 * odds;
            hi += 1;
            u -= pmf_hi;
            if u <= 0.0 {
                return hi;
            }
            moved = true;
        }
        if lo > 0 {
            pmf_lo *= lo as f64 / (n - lo + 1) as f64 / odds;
            lo -= 1;
            u -= pmf_lo;
            if u <= 0.0 {
                return lo;
            }
            moved = true;
        }
        // Leftover mass below rounding: the mode is the best answer.
        if !moved || (pmf_lo == 0.0 && pmf_hi == 0.0) {
            return mode;
        }
    }
}

/// `m ~ Binomial(n, p)`: explicit Bernoulli draws up to
/// [`BERNOULLI_DRAW_LIMIT`] trials, inversion above.
pub fn draw_successes<R: Rng + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    if n <= BERNOULLI_DRAW_LIMIT {
        (0..n).filter(|_| rng.random::<f64>() < p).count() as u64
    } else {
        binomial_by_inversion(rng, n, p)
    }
}

/// Runs `experiments` simulated experiments of `n` trials each.
pub fn run_coverage(
    method: Method,
    n: u64,
    c: ConfidenceLevel,
    experiments: u64,
    seed: u64,
) -> Result<CoverageReport> {
    // With fewer possible outcomes than experiments, tabulate every interval once.
    simulate(method, n, c, experiments, seed, n < experiments)
}

fn simulate(
    method: Method,
    n: u64,
    c: ConfidenceLevel,
    experiments: u64,
    seed: u64,
    tabulate: bool,
) -> Result<CoverageReport> {
    if n < 1 {
        return Err(Error::domain("coverage simulation needs n >= 1 trials"));
    }
    if experiments < 1 {
        return Err(Error::domain("coverage simulation needs at least one experiment"));
    }

    let table: Option<Vec<(f64, f64)>> = if tabulate {
        Some(
            (0..=n)
                .into_par_iter()
                .map(|m| interval_for(method, SampleSummary::new(n, m)?, c))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };

    let chunks = experiments.div_ceil(CHUNK_SIZE);
    let per_chunk: Vec<(u64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j);
            let count = CHUNK_SIZE.min(experiments - j * CHUNK_SIZE);
            let mut covered = 0u64;
            let mut width = 0.0f64;
            for _ in 0..count {
                let p: f64 = rng.random();
                let m = draw_successes(&mut rng, n, p);
                let (lo, hi) = match &table {
                    Some(t) => t[m as usize],
                    None => interval_for(method, SampleSummary::new(n, m)?, c)?,
                };
                if lo <= p && p <= hi {
                    covered += 1;
                }
                width += hi - lo;
            }
            Ok((covered, width))
        })
        .collect::<Result<_>>()?;

    let covered: u64 = per_chunk.iter().map(|(k, _)| k).sum();
    let width: f64 = per_chunk.iter().map(|(_, w)| w).sum();
    Ok(CoverageReport {
        method: method.to_string(),
        n,
        c: c.value(),
        experiments,
        coverage: covered as f64 / experiments as f64,
        mean_width: width / experiments as f64,
        seed,
        rng: RNG_FAMILY.to_string(),
    })
}
