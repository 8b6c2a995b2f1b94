//! The continuous exact method.
//!
//! With a uniform prior and `m` successes in `n` trials the posterior density
//! of the success probability is
//!
//! ```text
//! e(x) = x^m (1 - x)^(n - m) / B(m + 1, n - m + 1)
//! ```
//!
//! whose mean is `(m + 1) / (n + 2)` and whose CDF is `I_x(m + 1, n - m + 1)`.
//! The credible interval is equal-tailed: each excluded tail holds `(1 - c) / 2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::{self, BetaParams};

/// Observed data: `m` successes in `n` trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleSummary {
    n: u64,
    m: u64,
}

impl SampleSummary {
    /// `n = 0` is allowed and yields the uniform prior.
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if m > n {
            return Err(Error::domain(format!(
                "successes m={m} exceed trials n={n}"
            )));
        }
        Ok(SampleSummary { n, m })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Failures, `n - m`.
    pub fn failures(&self) -> u64 {
        self.n - self.m
    }

    /// The same sample with successes and failures exchanged.
    pub fn mirrored(&self) -> Self {
        SampleSummary {
            n: self.n,
            m: self.n - self.m,
        }
    }

    pub(crate) fn beta_params(&self) -> BetaParams {
        BetaParams::posterior(self.n, self.m)
    }
}

/// Target coverage `c`, strictly between 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ConfidenceLevel(f64);

impl ConfidenceLevel {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::domain(format!(
                "confidence level must lie strictly between 0 and 1, got {c}"
            )));
        }
        Ok(ConfidenceLevel(c))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Posterior mass below the lower bound, `(1 - c) / 2`.
    pub fn lower_tail(self) -> f64 {
        0.5 * (1.0 - self.0)
    }

    /// Posterior mass below the upper bound, `(1 + c) / 2`.
    pub fn upper_target(self) -> f64 {
        0.5 * (1.0 + self.0)
    }
}

impl TryFrom<f64> for ConfidenceLevel {
    type Error = Error;

    fn try_from(c: f64) -> Result<Self> {
        ConfidenceLevel::new(c)
    }
}

impl From<ConfidenceLevel> for f64 {
    fn from(c: ConfidenceLevel) -> f64 {
        c.0
    }
}

/// An interval `[lower, upper]` within `[0, 1]` at a stated level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CredibleInterval {
    pub lower: f64,
    pub upper: f64,
    pub level: ConfidenceLevel,
}

impl CredibleInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Closed-interval containment.
    pub fn contains(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }
}

/// Posterior density of the success probability for a given sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorDensity {
    sample: SampleSummary,
    log_norm: f64,
}

impl PosteriorDensity {
    pub fn new(sample: SampleSummary) -> Result<Self> {
        let log_norm = special_fn::ln_beta(sample.beta_params())?;
        Ok(PosteriorDensity { sample, log_norm })
    }

    pub fn sample(&self) -> SampleSummary {
        self.sample
    }

    /// `ln B(m + 1, n - m + 1)`.
    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    /// `e(x)`, evaluated in log space. `0⁰ = 1` at the endpoints.
    pub fn density_at(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::domain(format!("x must lie in [0, 1], got {x}")));
        }
        let p = self.sample.beta_params();
        Ok(special_fn::ln_beta_density(x, 1.0 - x, p, self.log_norm).exp())
    }

    /// Posterior CDF, `I_x(m + 1, n - m + 1)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        special_fn::reg_inc_beta(x, self.sample.beta_params())
    }

    /// Posterior quantile, the inverse of [`cdf`](Self::cdf).
    pub fn quantile(&self, t: f64) -> Result<f64> {
        special_fn::inv_reg_inc_beta(t, self.sample.beta_params())
    }

    pub fn mean(&self) -> f64 {
        posterior_mean(self.sample)
    }
}

/// The rule-of-succession estimate `(m + 1) / (n + 2)`.
pub fn posterior_mean(s: SampleSummary) -> f64 {
    (s.m as f64 + 1.0) / (s.n as f64 + 2.0)
}

/// Equal-tailed credible interval: `x1 = I⁻¹((1 - c)/2)`, `x2 = I⁻¹((1 + c)/2)`
/// with shapes `(m + 1, n - m + 1)`.
pub fn credible_interval(s: SampleSummary, c: ConfidenceLevel) -> Result<CredibleInterval> {
    let p = s.beta_params();
    let lower = special_fn::inv_reg_inc_beta(c.lower_tail(), p)?;
    let upper = special_fn::inv_reg_inc_beta(c.upper_target(), p)?;
    Ok(CredibleInterval {
        lower,
        upper,
        level: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: u64, m: u64) -> SampleSummary {
        SampleSummary::new(n, m).unwrap()
    }

    fn level(c: f64) -> ConfidenceLevel {
        ConfidenceLevel::new(c).unwrap()
    }

    #[test]
    fn sample_rejects_more_successes_than_trials() {
        assert!(matches!(SampleSummary::new(3, 4), Err(Error::Domain(_))));
        assert!(SampleSummary::new(0, 0).is_ok());
    }

    #[test]
    fn confidence_level_is_open_interval() {
        for c in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(ConfidenceLevel::new(c).is_err(), "c={c}");
        }
        assert!(ConfidenceLevel::new(0.95).is_ok());
    }

    #[test]
    fn uniform_prior_density_is_one() {
        let d = PosteriorDensity::new(sample(0, 0)).unwrap();
        for x in [0.0, 0.2, 0.5, 1.0] {
            assert!((d.density_at(x).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn density_values() {
        let d = PosteriorDensity::new(sample(2, 1)).unwrap();
        assert!((d.density_at(0.5).unwrap() - 1.5).abs() < 1e-14);
        let d = PosteriorDensity::new(sample(5, 0)).unwrap();
        assert!((d.density_at(0.0).unwrap() - 6.0).abs() < 1e-13);
        assert_eq!(d.density_at(1.0).unwrap(), 0.0);
        assert!(d.density_at(1.01).is_err());
    }

    #[test]
    fn mean_examples() {
        assert_eq!(posterior_mean(sample(5, 0)), 1.0 / 7.0);
        assert_eq!(posterior_mean(sample(1600, 917)), 918.0 / 1602.0);
        assert_eq!(posterior_mean(sample(0, 0)), 0.5);
    }

    #[test]
    fn cdf_examples() {
        let d = PosteriorDensity::new(sample(5, 0)).unwrap();
        assert_eq!(d.cdf(0.0).unwrap(), 0.0);
        assert_eq!(d.cdf(1.0).unwrap(), 1.0);
        assert!((d.cdf(0.319).unwrap() - 0.9).abs() < 1e-3);
        let d = PosteriorDensity::new(sample(2, 1)).unwrap();
        assert!((d.cdf(0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn interval_examples() {
        let ci = credible_interval(sample(5, 0), level(0.8)).unwrap();
        assert!((ci.lower - 0.017).abs() < 1e-3 && (ci.upper - 0.319).abs() < 1e-3, "{ci:?}");
        let ci = credible_interval(sample(1600, 917), level(0.95)).unwrap();
        assert!((ci.lower - 0.549).abs() < 1e-3 && (ci.upper - 0.597).abs() < 1e-3, "{ci:?}");
        let ci = credible_interval(sample(0, 0), level(0.8)).unwrap();
        assert!((ci.lower - 0.1).abs() < 1e-15 && (ci.upper - 0.9).abs() < 1e-15, "{ci:?}");
    }

    #[test]
    fn zero_successes_interval_is_not_degenerate() {
        for n in [1, 5, 100, 1_000_000] {
            let ci = credible_interval(sample(n, 0), level(0.8)).unwrap();
            assert!(ci.lower > 0.0 && ci.upper > ci.lower, "n={n}: {ci:?}");
            let ci = credible_interval(sample(n, n), level(0.8)).unwrap();
            assert!(ci.upper < 1.0 && ci.upper > ci.lower, "n={n}: {ci:?}");
        }
    }
}
