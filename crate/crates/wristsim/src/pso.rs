//! Global-best particle swarm minimizer.
//!
//! Synchronous updates: all random draws come sequentially from the seeded
//! generator before particles are evaluated, so evaluations may run in
//! parallel while results combine in particle-index order. Two runs with
//! the same config are byte-identical regardless of thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Swarm configuration. The defaults are the constriction-style standard:
/// w = 0.729, c1 = c2 = 1.49445, 20 particles, 40 iterations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoConfig {
    pub particles: usize,
    pub iterations: usize,
    pub inertia_weight: f64,
    pub cognitive_coeff: f64,
    pub social_coeff: f64,
    /// Per-dimension (low, high) search box.
    pub bounds: Vec<(f64, f64)>,
    pub seed: u64,
}

impl PsoConfig {
    pub fn with_bounds(bounds: Vec<(f64, f64)>, seed: u64) -> Self {
        Self {
            particles: 20,
            iterations: 40,
            inertia_weight: 0.729,
            cognitive_coeff: 1.49445,
            social_coeff: 1.49445,
            bounds,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.particles < 2 {
            return Err(Error::Config(format!(
                "need at least 2 particles, got {}",
                self.particles
            )));
        }
        if self.iterations < 1 {
            return Err(Error::Config("need at least 1 iteration".into()));
        }
        if self.bounds.is_empty() {
            return Err(Error::Config("bounds must be non-empty".into()));
        }
        for &(lo, hi) in &self.bounds {
            if lo >= hi || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Config(format!("invalid bound ({lo}, {hi})")));
            }
        }
        if self.inertia_weight < 0.0 || self.cognitive_coeff < 0.0 || self.social_coeff < 0.0 {
            return Err(Error::Config("coefficients must be non-negative".into()));
        }
        Ok(())
    }
}

/// Outcome of a swarm run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningResult {
    pub best_gains: Vec<f64>,
    pub best_objective: f64,
    /// Global-best objective after initialization and after each iteration;
    /// non-increasing by construction.
    pub history: Vec<f64>,
}

/// Minimize `objective` over the configured box. Non-finite objective values
/// are treated as +inf (the particle is rejected, not an error).
pub fn minimize<F>(config: &PsoConfig, objective: F) -> Result<TuningResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate()?;
    let dims = config.bounds.len();
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);

    let sanitize = |v: f64| if v.is_finite() { v } else { f64::INFINITY };

    let mut positions: Vec<Vec<f64>> = (0..config.particles)
        .map(|_| {
            (0..dims)
                .map(|d| {
                    let (lo, hi) = config.bounds[d];
                    rng.gen_range(lo..hi)
                })
                .collect()
        })
        .collect();
    let mut velocities: Vec<Vec<f64>> = vec![vec![0.0; dims]; config.particles];

    let evaluate =
        |xs: &[Vec<f64>]| -> Vec<f64> { xs.par_iter().map(|x| sanitize(objective(x))).collect() };

    let mut fitness = evaluate(&positions);
    let mut best_positions = positions.clone();
    let mut best_fitness = fitness.clone();

    let (mut gbest, mut gbest_f) = {
        let mut idx = 0;
        for i in 1..config.particles {
            if best_fitness[i] < best_fitness[idx] {
                idx = i;
            }
        }
        (best_positions[idx].clone(), best_fitness[idx])
    };
    let mut history = vec![gbest_f];

    for _ in 0..config.iterations {
        // draw all randomness for this iteration up front
        for i in 0..config.particles {
            for d in 0..dims {
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                let v = config.inertia_weight * velocities[i][d]
                    + config.cognitive_coeff * r1 * (best_positions[i][d] - positions[i][d])
                    + config.social_coeff * r2 * (gbest[d] - positions[i][d]);
                velocities[i][d] = v;
                let (lo, hi) = config.bounds[d];
                positions[i][d] = (positions[i][d] + v).clamp(lo, hi);
            }
        }
        fitness = evaluate(&positions);
        for i in 0..config.particles {
            if fitness[i] < best_fitness[i] {
                best_fitness[i] = fitness[i];
                best_positions[i] = positions[i].clone();
            }
            if fitness[i] < gbest_f {
                gbest_f = fitness[i];
                gbest = positions[i].clone();
            }
        }
        history.push(gbest_f);
    }

    Ok(TuningResult {
        best_gains: gbest,
        best_objective: gbest_f,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn sphere_benchmark_converges() {
        let mut cfg = PsoConfig::with_bounds(vec![(-5.0, 5.0); 3], 42);
        cfg.particles = 30;
        cfg.iterations = 100;
        let r = minimize(&cfg, sphere).unwrap();
        assert!(r.best_objective < 1e-3, "best {}", r.best_objective);
    }

    #[test]
    fn history_is_monotone_non_increasing() {
        let cfg = PsoConfig::with_bounds(vec![(-5.0, 5.0); 3], 7);
        let r = minimize(&cfg, sphere).unwrap();
        assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(r.history.len(), cfg.iterations + 1);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let cfg = PsoConfig::with_bounds(vec![(-5.0, 5.0); 3], 99);
        let a = minimize(&cfg, sphere).unwrap();
        let b = minimize(&cfg, sphere).unwrap();
        assert_eq!(a, b);
        let c = minimize(&PsoConfig { seed: 100, ..cfg }, sphere).unwrap();
        assert_ne!(a.best_gains, c.best_gains);
    }

    #[test]
    fn best_stays_inside_bounds() {
        let cfg = PsoConfig::with_bounds(vec![(-2.0, 2.0), (0.5, 1.5)], 3);
        // optimum outside the box pulls particles against the clamp
        let r = minimize(&cfg, |x| (x[0] - 10.0).powi(2) + (x[1] - 10.0).powi(2)).unwrap();
        assert!(r.best_gains[0] <= 2.0 && r.best_gains[0] >= -2.0);
        assert!(r.best_gains[1] <= 1.5 && r.best_gains[1] >= 0.5);
        assert!((r.best_gains[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn every_evaluated_position_stays_inside_bounds() {
        let cfg = PsoConfig::with_bounds(vec![(-1.0, 3.0), (0.5, 2.0)], 11);
        let r = minimize(&cfg, |x| {
            assert!(
                (-1.0..=3.0).contains(&x[0]) && (0.5..=2.0).contains(&x[1]),
                "evaluated outside bounds: {x:?}"
            );
            (x[0] - 0.3).powi(2) + (x[1] - 0.9).powi(2)
        })
        .unwrap();
        assert!(r.best_objective < 1e-2);
    }

    #[test]
    fn non_finite_objective_is_rejected_not_fatal() {
        let cfg = PsoConfig::with_bounds(vec![(-1.0, 1.0)], 5);
        let r = minimize(&cfg, |x| if x[0] > 0.0 { f64::NAN } else { x[0] + 1.0 }).unwrap();
        assert!(r.best_objective.is_finite());
        assert!(r.best_gains[0] <= 0.0);
    }

    #[test]
    fn invalid_bounds_are_config_errors() {
        let cfg = PsoConfig::with_bounds(vec![(2.0, 2.0)], 5);
        assert!(minimize(&cfg, sphere).is_err());
        let cfg = PsoConfig::with_bounds(vec![], 5);
        assert!(minimize(&cfg, sphere).is_err());
    }
}
