//! Closed-loop runner and comparison experiments.
//!
//! Each sample resolves the reference angle, evaluates the controller,
//! applies saturation in the plant, advances the state, and logs one row.
//! The lumped loop integrates the feedback system as a continuous one: the
//! controller is re-evaluated at every integrator stage, and the PID error
//! integral is part of the integrated state. The PDE loop holds the command
//! over each sample and substeps the field within its stability bound.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::control::{pid_control, smc_control, PidGains};
use crate::error::{Error, Result};
use crate::metrics::{summarize, MetricsSummary, TrajectoryLog};
use crate::pde::{bending_angle_from_pde, pde_step, stable_dt_bound, PdePlantState};
use crate::plant::{nominal_dynamics, LumpedPlantParams, PlantState};
use crate::scenario::{ControllerSpec, PlantKind, Scenario};

/// Report provenance: tool version, wall-clock stamp, and a hash that
/// changes iff any resolved scenario field changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub timestamp_unix: u64,
    pub config_hash: String,
}

/// One complete run: the resolved scenario, its time series, and metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario: Scenario,
    pub log: TrajectoryLog,
    pub metrics: MetricsSummary,
    /// True when the angle left the +/-50 degree motion range at any sample.
    pub range_exceeded: bool,
    pub provenance: Provenance,
}

/// SHA-256 over the canonical JSON serialization of the resolved scenario.
pub fn config_hash(scenario: &Scenario) -> String {
    let canonical = serde_json::to_string(scenario).expect("scenario serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn provenance_for(scenario: &Scenario) -> Provenance {
    let timestamp_unix = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Provenance {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp_unix,
        config_hash: config_hash(scenario),
    }
}

/// Execute one scenario.
pub fn run(scenario: &Scenario) -> Result<RunRecord> {
    scenario.validate()?;
    let log = match scenario.plant.kind {
        PlantKind::Lumped => run_lumped(scenario)?,
        PlantKind::Pde => run_pde(scenario)?,
    };
    let metrics = summarize(
        &log,
        scenario.metrics.settling_band,
        scenario.metrics.tail_fraction,
    )?;
    let range_exceeded = log
        .theta
        .iter()
        .any(|&th| th.abs() > crate::plant::MOTION_RANGE_RAD);
    Ok(RunRecord {
        scenario: scenario.clone(),
        metrics,
        range_exceeded,
        provenance: provenance_for(scenario),
        log,
    })
}

/// Controller evaluation at one (possibly intra-step) state.
struct ControlEval {
    u_raw: f64,
    sigma: f64,
    u_eq: f64,
    u_sw: f64,
}

fn eval_controller(
    spec: &ControllerSpec,
    nominal: &LumpedPlantParams,
    theta: f64,
    theta_dot: f64,
    integral: f64,
    theta_b: f64,
) -> Result<ControlEval> {
    match spec {
        ControllerSpec::Smc(gains) => {
            let state = PlantState {
                theta1: theta,
                theta2: theta_dot,
                t: 0.0,
            };
            let dynamics = nominal_dynamics(&state, nominal);
            let out = smc_control(gains, &state, theta_b, &dynamics)?;
            Ok(ControlEval {
                u_raw: out.u,
                sigma: out.sigma,
                u_eq: out.u_equivalent,
                u_sw: out.u_switching,
            })
        }
        ControllerSpec::Pid(gains) => {
            // control error is reference minus output; the derivative term
            // acts on the measurement so reference steps do not kick it
            let e_c = theta_b - theta;
            let u = pid_control(gains, e_c, integral, -theta_dot);
            Ok(ControlEval {
                u_raw: u,
                sigma: 0.0,
                u_eq: 0.0,
                u_sw: 0.0,
            })
        }
    }
}

/// Integral rate with conditional anti-windup: stop accumulating once the
/// raw integral sits at the clamp and the error pushes further out.
fn integral_rate(gains: &PidGains, e_c: f64, integral: f64) -> f64 {
    if integral.abs() >= gains.windup_limit && e_c * integral > 0.0 {
        0.0
    } else {
        e_c
    }
}

fn run_lumped(scenario: &Scenario) -> Result<TrajectoryLog> {
    let truth = scenario.perturbed_params();
    truth.validate()?;
    let nominal = scenario.plant.lumped;
    let dt = scenario.dt;
    let n = (scenario.duration / dt).round() as usize;
    let is_smc = matches!(scenario.controller, ControllerSpec::Smc(_));

    let mut theta = scenario.initial.theta;
    let mut theta_dot = scenario.initial.theta_dot;
    let mut integral = 0.0f64;

    let mut log = TrajectoryLog {
        t: Vec::with_capacity(n),
        theta_ref: Vec::with_capacity(n),
        theta: Vec::with_capacity(n),
        theta_dot: Vec::with_capacity(n),
        u: Vec::with_capacity(n),
        sigma: is_smc.then(|| Vec::with_capacity(n)),
        u_eq: is_smc.then(|| Vec::with_capacity(n)),
        u_sw: is_smc.then(|| Vec::with_capacity(n)),
    };

    // derivative of (theta, theta_dot, integral) with the controller inside
    let deriv = |t: f64, th: f64, thd: f64, integ: f64| -> Result<(f64, f64, f64)> {
        let theta_b = scenario.reference.value_at(t);
        let eval = eval_controller(&scenario.controller, &nominal, th, thd, integ, theta_b)?;
        let u_app = truth.saturate(eval.u_raw);
        let accel = truth.acceleration(th, thd, u_app, scenario.disturbance.torque_at(t));
        let di = match &scenario.controller {
            ControllerSpec::Pid(g) => integral_rate(g, theta_b - th, integ),
            ControllerSpec::Smc(_) => 0.0,
        };
        Ok((thd, accel, di))
    };

    for i in 0..n {
        let t = i as f64 * dt;
        let theta_b = scenario.reference.value_at(t);
        let eval = eval_controller(
            &scenario.controller,
            &nominal,
            theta,
            theta_dot,
            integral,
            theta_b,
        )?;
        log.t.push(t);
        log.theta_ref.push(theta_b);
        log.theta.push(theta);
        log.theta_dot.push(theta_dot);
        log.u.push(truth.saturate(eval.u_raw));
        if let Some(col) = log.sigma.as_mut() {
            col.push(eval.sigma);
        }
        if let Some(col) = log.u_eq.as_mut() {
            col.push(eval.u_eq);
        }
        if let Some(col) = log.u_sw.as_mut() {
            col.push(eval.u_sw);
        }

        let (k1a, k1b, k1c) = deriv(t, theta, theta_dot, integral)?;
        let (k2a, k2b, k2c) = deriv(
            t + 0.5 * dt,
            theta + 0.5 * dt * k1a,
            theta_dot + 0.5 * dt * k1b,
            integral + 0.5 * dt * k1c,
        )?;
        let (k3a, k3b, k3c) = deriv(
            t + 0.5 * dt,
            theta + 0.5 * dt * k2a,
            theta_dot + 0.5 * dt * k2b,
            integral + 0.5 * dt * k2c,
        )?;
        let (k4a, k4b, k4c) = deriv(
            t + dt,
            theta + dt * k3a,
            theta_dot + dt * k3b,
            integral + dt * k3c,
        )?;
        theta += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        theta_dot += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        integral += dt / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
        if let ControllerSpec::Pid(g) = &scenario.controller {
            integral = integral.clamp(-g.windup_limit, g.windup_limit);
        }
        if !(theta.is_finite() && theta_dot.is_finite() && integral.is_finite()) {
            return Err(Error::Simulation(format!("state diverged at t = {t}")));
        }
    }
    Ok(log)
}

fn run_pde(scenario: &Scenario) -> Result<TrajectoryLog> {
    let d = crate::scenario::defaults();
    let section = scenario.plant.section;
    let nominal = scenario.plant.lumped;
    let dt = scenario.dt;
    let n = (scenario.duration / dt).round() as usize;
    let is_smc = matches!(scenario.controller, ControllerSpec::Smc(_));

    let mut field =
        PdePlantState::new(&section, scenario.plant.nodes, scenario.plant.damping_alpha)?;
    let bound = stable_dt_bound(&section, field.dx);
    let substeps = (dt / (d.pde.substep_safety * bound)).ceil().max(1.0) as usize;
    let sub_dt = dt / substeps as f64;
    let mut integral = 0.0f64;

    let mut log = TrajectoryLog {
        t: Vec::with_capacity(n),
        theta_ref: Vec::with_capacity(n),
        theta: Vec::with_capacity(n),
        theta_dot: Vec::with_capacity(n),
        u: Vec::with_capacity(n),
        sigma: is_smc.then(|| Vec::with_capacity(n)),
        u_eq: is_smc.then(|| Vec::with_capacity(n)),
        u_sw: is_smc.then(|| Vec::with_capacity(n)),
    };

    for i in 0..n {
        let t = i as f64 * dt;
        let theta_b = scenario.reference.value_at(t);
        let theta = bending_angle_from_pde(&field, &section);
        let theta_dot = field.y_dot[field.nodes - 1] / section.l;
        let eval = eval_controller(
            &scenario.controller,
            &nominal,
            theta,
            theta_dot,
            integral,
            theta_b,
        )?;
        let u_app = nominal.saturate(eval.u_raw);

        log.t.push(t);
        log.theta_ref.push(theta_b);
        log.theta.push(theta);
        log.theta_dot.push(theta_dot);
        log.u.push(u_app);
        if let Some(col) = log.sigma.as_mut() {
            col.push(eval.sigma);
        }
        if let Some(col) = log.u_eq.as_mut() {
            col.push(eval.u_eq);
        }
        if let Some(col) = log.u_sw.as_mut() {
            col.push(eval.u_sw);
        }

        // The field carries vibration modes far above the sample rate, so
        // the feedback is re-evaluated every substep; holding the command
        // over a full sample aliases against those modes and chatters.
        for s in 0..substeps {
            let ts = t + s as f64 * sub_dt;
            let th = bending_angle_from_pde(&field, &section);
            let thd = field.y_dot[field.nodes - 1] / section.l;
            let ev = eval_controller(&scenario.controller, &nominal, th, thd, integral, theta_b)?;
            let u_sub = nominal.saturate(ev.u_raw);
            // disturbance torque enters as its tip-force equivalent
            let tip_force = u_sub + scenario.disturbance.torque_at(ts) / section.l;
            field = pde_step(&field, &section, tip_force, sub_dt)
                .map_err(|e| Error::Simulation(format!("pde step at t = {ts}: {e}")))?;
            if let ControllerSpec::Pid(g) = &scenario.controller {
                integral =
                    (integral + (theta_b - th) * sub_dt).clamp(-g.windup_limit, g.windup_limit);
            }
        }
    }
    Ok(log)
}

/// Published comparison constants rendered alongside every comparison
/// report. These are externally reported reference values; nothing in this
/// tool reproduces them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublishedReference {
    pub note: String,
    /// (rmse rad, settling s, steady-state error rad) per controller.
    pub gvsc: (f64, f64, f64),
    pub pid: (f64, f64, f64),
    pub smc: (f64, f64, f64),
}

impl Default for PublishedReference {
    fn default() -> Self {
        Self {
            note: "Published reference values for comparable controllers; \
                   not computed or reproduced by this tool."
                .to_string(),
            gvsc: (0.029, 3.180, 0.014),
            pid: (0.266, 5.740, 1.210),
            smc: (0.016, 1.900, 0.003),
        }
    }
}

/// Side-by-side comparison of runs sharing a reference and duration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub columns: Vec<CompareColumn>,
    pub published_reference: PublishedReference,
    pub records: Vec<RunRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareColumn {
    pub label: String,
    pub metrics: MetricsSummary,
}

impl CompareReport {
    /// Fixed-width text table, one row per metric, one column per run.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let labels: Vec<&str> = self.columns.iter().map(|c| c.label.as_str()).collect();
        out.push_str(&format!("{:<24}", "metric"));
        for l in &labels {
            out.push_str(&format!("{l:>16}"));
        }
        out.push('\n');
        let fmt_opt = |v: Option<f64>| match v {
            Some(x) => format!("{x:.4}"),
            None => "never".to_string(),
        };
        let rows: Vec<(&str, Vec<String>)> = vec![
            (
                "rmse_rad",
                self.columns
                    .iter()
                    .map(|c| format!("{:.4}", c.metrics.rmse))
                    .collect(),
            ),
            (
                "settling_time_s",
                self.columns
                    .iter()
                    .map(|c| fmt_opt(c.metrics.settling_time))
                    .collect(),
            ),
            (
                "steady_state_error_rad",
                self.columns
                    .iter()
                    .map(|c| format!("{:.4}", c.metrics.steady_state_error))
                    .collect(),
            ),
            (
                "chattering_index_n_s",
                self.columns
                    .iter()
                    .map(|c| format!("{:.4}", c.metrics.chattering_index))
                    .collect(),
            ),
        ];
        for (name, cells) in rows {
            out.push_str(&format!("{name:<24}"));
            for c in cells {
                out.push_str(&format!("{c:>16}"));
            }
            out.push('\n');
        }
        let p = &self.published_reference;
        out.push_str("\nreference values (externally reported, not reproduced):\n");
        out.push_str(&format!(
            "{:<24}{:>10}{:>10}{:>10}\n",
            "metric", "GVSC", "PID", "SMC"
        ));
        out.push_str(&format!(
            "{:<24}{:>10.3}{:>10.3}{:>10.3}\n",
            "rmse_rad", p.gvsc.0, p.pid.0, p.smc.0
        ));
        out.push_str(&format!(
            "{:<24}{:>10.3}{:>10.3}{:>10.3}\n",
            "settling_time_s", p.gvsc.1, p.pid.1, p.smc.1
        ));
        out.push_str(&format!(
            "{:<24}{:>10.3}{:>10.3}{:>10.3}\n",
            "steady_state_error_rad", p.gvsc.2, p.pid.2, p.smc.2
        ));
        out
    }
}

/// Run several scenarios and tabulate their metrics side by side. The
/// scenarios must share the same reference and duration.
pub fn compare(scenarios: &[Scenario]) -> Result<CompareReport> {
    if scenarios.len() < 2 {
        return Err(Error::MismatchedScenarios(format!(
            "need at least 2 scenarios, got {}",
            scenarios.len()
        )));
    }
    let first = &scenarios[0];
    for (i, s) in scenarios.iter().enumerate().skip(1) {
        if s.reference != first.reference {
            return Err(Error::MismatchedScenarios(format!(
                "scenario {i} has a different reference"
            )));
        }
        if s.duration != first.duration {
            return Err(Error::MismatchedScenarios(format!(
                "scenario {i} has a different duration"
            )));
        }
    }
    let records: Vec<RunRecord> = scenarios.par_iter().map(run).collect::<Result<Vec<_>>>()?;
    let columns = records
        .iter()
        .enumerate()
        .map(|(i, r)| CompareColumn {
            label: format!("{}#{i}", r.scenario.controller.kind_name()),
            metrics: r.metrics.clone(),
        })
        .collect();
    Ok(CompareReport {
        columns,
        published_reference: PublishedReference::default(),
        records,
    })
}

/// One run per value of the addressed parameter, keyed by value.
pub fn sweep(base: &Scenario, parameter: &str, values: &[f64]) -> Result<Vec<(f64, RunRecord)>> {
    let scenarios: Vec<(f64, Scenario)> = values
        .iter()
        .map(|&v| {
            let mut s = base.clone();
            s.set_parameter(parameter, v)?;
            Ok((v, s))
        })
        .collect::<Result<Vec<_>>>()?;
    scenarios
        .par_iter()
        .map(|(v, s)| Ok((*v, run(s)?)))
        .collect()
}
