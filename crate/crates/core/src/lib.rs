//! Exact Bayesian estimation of a Bernoulli success probability.
//!
//! Given `m` successes in `n` independent trials and a uniform prior on the
//! unknown probability, the posterior is `Beta(m + 1, n - m + 1)`. This crate
//! evaluates that posterior without approximation:
//!
//! - [`exact`]: posterior density, mean `(m + 1) / (n + 2)`, CDF and the
//!   equal-tailed credible interval via the inverse regularized incomplete
//!   beta function.
//! - [`discrete`]: the same construction over a finite grid of `k` candidate
//!   probabilities, which converges to the continuous result as `k` grows.
//! - [`baseline`]: the normal-approximation interval `m/n ± z·se`, kept for
//!   comparison and to expose its zero-width failure at `m = 0` or `m = n`.
//! - [`coverage`]: a seeded Monte Carlo harness measuring interval coverage
//!   under the uniform prior.
//! - [`special_fn`]: log-gamma, log-beta, the regularized incomplete beta
//!   function and its inverse, and the standard normal quantile.
//!
//! All computation happens in log space where needed, so sample sizes in
//! the billions are handled without overflow.

pub mod baseline;
pub mod coverage;
pub mod discrete;
pub mod error;
pub mod exact;
pub mod numfmt;
pub mod special_fn;

pub use baseline::{standard_estimate, StandardEstimate};
pub use coverage::{run_coverage, CoverageReport, Method};
pub use discrete::{discrete_interval, discrete_mean, discrete_posterior, DiscretePosterior};
pub use error::{Error, Result};
pub use exact::{
    credible_interval, posterior_mean, ConfidenceLevel, CredibleInterval, PosteriorDensity,
    SampleSummary,
};
pub use special_fn::{
    inv_reg_inc_beta, ln_beta, ln_gamma, normal_quantile, reg_inc_beta, BetaParams,
};
