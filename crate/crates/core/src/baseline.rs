//! Normal-approximation ("standard") interval for comparison.
//!
//! Point estimate `m/n`, plug-in standard deviation `sqrt(p̂(1 - p̂))`,
//! standard error `sd / √n` and interval `p̂ ± z·se` clipped to `[0, 1]`.
//! At `m = 0` or `m = n` the standard deviation vanishes and the interval
//! collapses to a single point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ConfidenceLevel, SampleSummary};
use crate::special_fn::normal_quantile;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardEstimate {
    pub point: f64,
    pub sd: f64,
    pub se: f64,
    pub lower: f64,
    pub upper: f64,
    pub z: f64,
    /// True when either endpoint was clipped to `[0, 1]`.
    pub clipped: bool,
}

impl StandardEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Zero-width interval, the failure mode at `m = 0` or `m = n`.
    pub fn is_degenerate(&self) -> bool {
        self.width() == 0.0
    }
}

/// Normal-approximation estimate. `z_override` replaces the multiplier
/// `Φ⁻¹((1 + c) / 2)`, e.g. the textbook's rounded `z = 2` at 95%.
pub fn standard_estimate(
    s: SampleSummary,
    c: ConfidenceLevel,
    z_override: Option<f64>,
) -> Result<StandardEstimate> {
    if s.n() == 0 {
        return Err(Error::domain("the standard method needs at least one trial"));
    }
    let z = match z_override {
        Some(z) if !(z >= 0.0 && z.is_finite()) => {
            return Err(Error::domain(format!("z multiplier must be finite and >= 0, got {z}")))
        }
        Some(z) => z,
        None => normal_quantile(c.upper_target())?,
    };
    let n = s.n() as f64;
    let point = s.m() as f64 / n;
    let sd = (point * (1.0 - point)).sqrt();
    let se = sd / n.sqrt();
    let raw_lower = point - z * se;
    let raw_upper = point + z * se;
    let lower = raw_lower.max(0.0);
    let upper = raw_upper.min(1.0);
    Ok(StandardEstimate {
        point,
        sd,
        se,
        lower,
        upper,
        z,
        clipped: lower != raw_lower || upper != raw_upper,
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
    fn voting_example_with_rounded_z() {
        let e = standard_estimate(sample(1600, 917), level(0.95), Some(2.0)).unwrap();
        assert!((e.point - 0.573).abs() < 1e-3);
        assert!((e.lower - 0.548).abs() < 1e-3, "{e:?}");
        assert!((e.upper - 0.598).abs() < 1e-3, "{e:?}");
        assert_eq!(e.z, 2.0);
        assert!(!e.clipped);
    }

    #[test]
    fn all_failures_collapse() {
        for c in [0.5, 0.8, 0.99] {
            let e = standard_estimate(sample(5, 0), level(c), None).unwrap();
            assert_eq!((e.point, e.sd, e.lower, e.upper), (0.0, 0.0, 0.0, 0.0));
            assert!(e.is_degenerate());
        }
        let e = standard_estimate(sample(5, 5), level(0.8), None).unwrap();
        assert_eq!((e.lower, e.upper), (1.0, 1.0));
    }

    #[test]
    fn zero_multiplier_collapses_to_point() {
        let e = standard_estimate(sample(2, 1), level(0.3), Some(0.0)).unwrap();
        assert_eq!((e.lower, e.upper), (0.5, 0.5));
    }

    #[test]
    fn default_multiplier_is_normal_quantile() {
        let e = standard_estimate(sample(100, 30), level(0.95), None).unwrap();
        assert!((e.z - 1.959_963_984_540_054).abs() < 1e-12);
    }

    #[test]
    fn clipping_is_recorded() {
        let e = standard_estimate(sample(3, 1), level(0.99), None).unwrap();
        assert_eq!(e.lower, 0.0);
        assert!(e.clipped);
    }

    #[test]
    fn no_trials_is_an_error() {
        assert!(matches!(
            standard_estimate(sample(0, 0), level(0.9), None),
            Err(Error::Domain(_))
        ));
        assert!(standard_estimate(sample(4, 1), level(0.9), Some(-1.0)).is_err());
    }
}
