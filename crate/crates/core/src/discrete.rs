//! Posterior over a finite grid of candidate success probabilities.
//!
//! The unit interval is cut into `k` equal bins represented by their
//! midpoints `p_i = (i - ½) / k`. After `m` successes in `n` trials the
//! posterior weight of bin `i` is proportional to `p_i^m (1 - p_i)^(n - m)`;
//! the binomial coefficient is common to all bins and cancels. As `k → ∞`
//! the weights approach the continuous posterior density.

use crate::error::{Error, Result};
use crate::exact::{ConfidenceLevel, CredibleInterval, SampleSummary};

/// Slack for comparing cumulative weights against tail targets, absorbing the
/// rounding left after normalization.
const TAIL_TIE_TOL: f64 = 1e-12;

/// Grid midpoints and their normalized posterior weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePosterior {
    k: usize,
    grid: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscretePosterior {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// `ln(p^m (1 - p)^(n - m))`; the unnormalized bin weight in log space.
fn ln_unnormalized_weight(p: f64, s: SampleSummary) -> f64 {
    let succ = s.m() as f64;
    let fail = s.failures() as f64;
    let mut w = 0.0;
    if s.m() > 0 {
        w += succ * p.ln();
    }
    if s.failures() > 0 {
        w += fail * (-p).ln_1p();
    }
    w
}

/// Compensated (Neumaier) running sum.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    values.into_iter().for_each(|v| acc.add(v));
    acc.value()
}

/// Builds the grid posterior. Weights are shifted by their maximum log value
/// before exponentiation, so large `n` cannot underflow every bin.
pub fn discrete_posterior(s: SampleSummary, k: usize) -> Result<DiscretePosterior> {
    if k < 1 {
        return Err(Error::domain("grid size k must be at least 1"));
    }
    let kf = k as f64;
    let grid: Vec<f64> = (1..=k).map(|i| (i as f64 - 0.5) / kf).collect();
    let log_w: Vec<f64> = grid.iter().map(|&p| ln_unnormalized_weight(p, s)).collect();
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut weights: Vec<f64> = log_w.iter().map(|&lw| (lw - max).exp()).collect();
    let total = neumaier_sum(weights.iter().copied());
    for w in &mut weights {
        *w /= total;
    }
    Ok(DiscretePosterior { k, grid, weights })
}

/// `Σ p_i e_i`.
pub fn discrete_mean(d: &DiscretePosterior) -> f64 {
    neumaier_sum(d.grid.iter().zip(&d.weights).map(|(p, w)| p * w))
}

/// Equal-tailed interval on the grid.
///
/// The lower bound is the midpoint of the first bin whose cumulative weight
/// (counted from the bottom, through that bin) exceeds `(1 - c) / 2`; the
/// upper bound mirrors this from the top of the grid. Both tail sums are
/// accumulated independently so the construction is symmetric under
/// `p ↦ 1 - p`.
pub fn discrete_interval(d: &DiscretePosterior, c: ConfidenceLevel) -> CredibleInterval {
    let tail = c.lower_tail() + TAIL_TIE_TOL;

    let lower_idx = first_exceeding(d.weights.iter().copied(), tail).unwrap_or(d.k - 1);
    let upper_from_top = first_exceeding(d.weights.iter().rev().copied(), tail).unwrap_or(d.k - 1);
    let upper_idx = d.k - 1 - upper_from_top;

    CredibleInterval {
        lower: d.grid[lower_idx],
        upper: d.grid[upper_idx],
        level: c,
    }
}

fn first_exceeding(weights: impl Iterator<Item = f64>, threshold: f64) -> Option<usize> {
    let mut acc = Neumaier::default();
    weights.enumerate().find_map(|(i, w)| {
        acc.add(w);
        (acc.value() > threshold).then_some(i)
    })
}
