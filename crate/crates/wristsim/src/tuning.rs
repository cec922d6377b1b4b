//! Gain tuning: a tracking-plus-chattering objective minimized by the
//! particle swarm over either controller's three gains.

use serde::{Deserialize, Serialize};

use crate::control::{PidGains, SmcGains};
use crate::error::{Error, Result};
use crate::harness;
use crate::pso::{self, PsoConfig, TuningResult};
use crate::scenario::{ControllerSpec, Scenario};

/// Default chattering weight in J = RMSE + lambda * chattering_index.
pub fn default_lambda() -> f64 {
    crate::scenario::defaults().tuning.lambda
}

/// Which controller a gain vector parameterizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControllerKind {
    Smc,
    Pid,
}

/// The scenario with its controller gains replaced by `gains`.
pub fn with_gains(scenario: &Scenario, kind: ControllerKind, gains: &[f64]) -> Result<Scenario> {
    if gains.len() != 3 {
        return Err(Error::Config(format!(
            "expected 3 gains, got {}",
            gains.len()
        )));
    }
    let mut s = scenario.clone();
    s.controller = match (kind, &scenario.controller) {
        (ControllerKind::Smc, ControllerSpec::Smc(g)) => ControllerSpec::Smc(SmcGains {
            p1: gains[0],
            p2: gains[1],
            p3: gains[2],
            switching: g.switching,
        }),
        (ControllerKind::Smc, _) => ControllerSpec::Smc(SmcGains {
            p1: gains[0],
            p2: gains[1],
            p3: gains[2],
            switching: crate::scenario::defaults().smc.switching,
        }),
        (ControllerKind::Pid, ControllerSpec::Pid(g)) => ControllerSpec::Pid(PidGains {
            kp: gains[0],
            ki: gains[1],
            kd: gains[2],
            windup_limit: g.windup_limit,
        }),
        (ControllerKind::Pid, _) => ControllerSpec::Pid(PidGains {
            kp: gains[0],
            ki: gains[1],
            kd: gains[2],
            windup_limit: crate::scenario::defaults().pid.windup_limit,
        }),
    };
    Ok(s)
}

/// J = RMSE + lambda * chattering_index for one closed-loop run of the
/// scenario under the given gains. Divergence and non-finite metrics map to
/// +inf so the swarm rejects the particle instead of aborting.
pub fn objective(scenario: &Scenario, kind: ControllerKind, gains: &[f64], lambda: f64) -> f64 {
    let s = match with_gains(scenario, kind, gains) {
        Ok(s) => s,
        Err(_) => return f64::INFINITY,
    };
    match harness::run(&s) {
        Ok(record) => {
            let j = record.metrics.rmse + lambda * record.metrics.chattering_index;
            if j.is_finite() {
                j
            } else {
                f64::INFINITY
            }
        }
        Err(Error::Simulation(_)) | Err(Error::Integration(_)) => f64::INFINITY,
        Err(_) => f64::INFINITY,
    }
}

/// Swarm configuration with the default bounds for `kind`.
pub fn default_pso_config(kind: ControllerKind, seed: u64) -> PsoConfig {
    let d = crate::scenario::defaults();
    let bounds = match kind {
        ControllerKind::Smc => d.tuning.smc_bounds.clone(),
        ControllerKind::Pid => d.tuning.pid_bounds.clone(),
    };
    PsoConfig {
        particles: d.tuning.particles,
        iterations: d.tuning.iterations,
        inertia_weight: d.tuning.inertia_weight,
        cognitive_coeff: d.tuning.cognitive_coeff,
        social_coeff: d.tuning.social_coeff,
        bounds,
        seed,
    }
}

/// Full tuning report for file emission.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuningReport {
    pub controller: ControllerKind,
    pub lambda: f64,
    pub pso: PsoConfig,
    pub scenario: Scenario,
    pub result: TuningResult,
    pub provenance: harness::Provenance,
}

/// Tune `kind` on `scenario` with the swarm. Deterministic per config.
pub fn tune(
    scenario: &Scenario,
    kind: ControllerKind,
    config: &PsoConfig,
    lambda: f64,
) -> Result<TuningResult> {
    scenario.validate()?;
    pso::minimize(config, |gains| objective(scenario, kind, gains, lambda))
}
