//! Fraction of witnesses among random candidates.

use serde::Serialize;

use super::{search_with_filter, SchinzelProblem, Strategy, DEFAULT_SEED};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub samples: u64,
    pub witnesses: u64,
    pub fraction: f64,
    /// Wilson score interval at 95%.
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

fn wilson(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Samples `samples` candidates uniformly from the box (seeded by the
/// problem's random strategy, or the default seed) and counts witnesses.
pub fn density_probe(problem: &SchinzelProblem, samples: u64) -> Result<DensityReport> {
    let seed = match problem.constraints.strategy {
        Strategy::Random { seed } => seed,
        Strategy::Exhaustive => DEFAULT_SEED,
    };
    let mut p = problem.clone();
    p.constraints.strategy = Strategy::Random { seed };
    p.constraints.budget = samples.max(1);
    p.constraints.max_witnesses = None;
    let rep = search_with_filter(&p, None)?;
    let k = rep.witnesses.len() as u64;
    let (ci_low, ci_high) = wilson(k, rep.tested);
    Ok(DensityReport {
        samples: rep.tested,
        witnesses: k,
        fraction: k as f64 / rep.tested.max(1) as f64,
        ci_low,
        ci_high,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_interval() {
        let (lo, hi) = wilson(50, 100);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
        assert_eq!(wilson(0, 10).0, 0.0);
    }
}
