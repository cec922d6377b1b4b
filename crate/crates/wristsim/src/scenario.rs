//! Scenario configuration: file schema, defaults, and resolution.
//!
//! A scenario file is a single JSON document with a versioned
//! `schema_version` field; unknown keys are rejected. Every omitted field
//! falls back to the versioned defaults shipped with the crate, and
//! resolution produces a fully concrete [`Scenario`] that serializes
//! byte-stably for hashing and reports.

use serde::{Deserialize, Serialize};

use crate::beam::BeamSection;
use crate::control::{PidGains, SmcGains, SwitchingKind};
use crate::error::{Error, Result};
use crate::plant::LumpedPlantParams;

pub const SCHEMA_VERSION: u32 = 1;

/// Versioned library defaults. None of these values are measured
/// properties; they are documented tool choices that make the default
/// closed loop reproducible.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    pub config_version: u32,
    pub note: String,
    pub beam: BeamSection,
    /// Curvature radius used by the feedforward force-to-angle map. 2L/3
    /// makes that map coincide with the cantilever tip response.
    pub tmb_radius: f64,
    pub lumped: LumpedDefaults,
    pub pde: PdeDefaults,
    pub scenario: ScenarioDefaults,
    pub metrics: MetricsConfig,
    pub smc: SmcGains,
    pub pid: PidGains,
    pub tuning: TuningDefaults,
    /// Disturbance used by the controller-comparison scenario.
    pub comparison_pulse: PulseDefaults,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LumpedDefaults {
    pub inertia: f64,
    pub stiffness: f64,
    pub damping: f64,
    pub f_max: f64,
    pub coefficient_assignment: CoefficientAssignment,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdeDefaults {
    pub nodes: usize,
    pub damping_alpha: f64,
    /// Fraction of the explicit-stability bound used for internal substeps.
    pub substep_safety: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDefaults {
    pub step_final: f64,
    pub step_at: f64,
    pub duration: f64,
    pub dt: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuningDefaults {
    pub particles: usize,
    pub iterations: usize,
    pub inertia_weight: f64,
    pub cognitive_coeff: f64,
    pub social_coeff: f64,
    /// Chattering weight in the tuning objective J = RMSE + lambda * index.
    pub lambda: f64,
    pub smc_bounds: Vec<(f64, f64)>,
    pub pid_bounds: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseDefaults {
    pub torque: f64,
    pub start: f64,
    pub width: f64,
}

/// Which unit reading of the published stiffness/damping pair to use.
/// `Dimensional` assigns 0.615 N m/rad to stiffness and 0.105 N m s/rad to
/// damping (the dimensionally coherent reading); `Printed` keeps the order
/// the numbers were published in, which swaps them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientAssignment {
    Dimensional,
    Printed,
}

static DEFAULTS_JSON: &str = include_str!("../config/defaults.json");

/// The parsed defaults file.
pub fn defaults() -> &'static Defaults {
    use std::sync::OnceLock;
    static CELL: OnceLock<Defaults> = OnceLock::new();
    CELL.get_or_init(|| {
        let d: Defaults =
            serde_json::from_str(DEFAULTS_JSON).expect("embedded defaults.json must parse");
        assert_eq!(d.config_version, 1, "unexpected defaults version");
        d
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlantKind {
    Lumped,
    Pde,
}

/// Reference trajectory for the bending angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Reference {
    /// 0 until `at`, then `final`.
    Step { r#final: f64, at: f64 },
    /// rate * t from zero, saturating at `hold`.
    Ramp { rate: f64, hold: f64 },
    /// Constant value.
    Hold { value: f64 },
}

impl Reference {
    pub fn value_at(&self, t: f64) -> f64 {
        match *self {
            Reference::Step { r#final, at } => {
                if t < at {
                    0.0
                } else {
                    r#final
                }
            }
            Reference::Ramp { rate, hold } => {
                let v = rate * t;
                if rate >= 0.0 {
                    v.min(hold)
                } else {
                    v.max(hold)
                }
            }
            Reference::Hold { value } => value,
        }
    }
}

/// Disturbance torque injected into the truth plant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Disturbance {
    None,
    Constant { torque: f64 },
    Pulse { torque: f64, start: f64, width: f64 },
}

impl Disturbance {
    pub fn torque_at(&self, t: f64) -> f64 {
        match *self {
            Disturbance::None => 0.0,
            Disturbance::Constant { torque } => torque,
            Disturbance::Pulse {
                torque,
                start,
                width,
            } => {
                if t >= start && t < start + width {
                    torque
                } else {
                    0.0
                }
            }
        }
    }
}

/// Multiplicative robustness factors applied to the truth plant only; the
/// controller keeps the unperturbed nominal model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub inertia_factor: f64,
    pub stiffness_factor: f64,
    pub damping_factor: f64,
}

impl Default for Perturbation {
    fn default() -> Self {
        Self {
            inertia_factor: 1.0,
            stiffness_factor: 1.0,
            damping_factor: 1.0,
        }
    }
}

/// Initial plant state.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InitialState {
    pub theta: f64,
    pub theta_dot: f64,
}

/// Metric window conventions, recorded in every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsConfig {
    pub settling_band: f64,
    pub tail_fraction: f64,
}

/// Controller selection with concrete gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ControllerSpec {
    Smc(SmcGains),
    Pid(PidGains),
}

impl ControllerSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ControllerSpec::Smc(_) => "smc",
            ControllerSpec::Pid(_) => "pid",
        }
    }
}

/// Resolved plant description: geometry plus lumped coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantConfig {
    pub kind: PlantKind,
    pub section: BeamSection,
    pub lumped: LumpedPlantParams,
    /// PDE grid size (unused by the lumped plant).
    pub nodes: usize,
    /// PDE mass-proportional damping rate (unused by the lumped plant).
    pub damping_alpha: f64,
}

/// A fully resolved closed-loop experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema_version: u32,
    pub plant: PlantConfig,
    pub controller: ControllerSpec,
    pub reference: Reference,
    /// Desired tendon force; when set, `reference` was derived from it
    /// through the feedforward force-to-angle map.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_des: Option<f64>,
    /// Curvature radius for the feedforward map.
    pub tmb_radius: f64,
    pub duration: f64,
    pub dt: f64,
    pub disturbance: Disturbance,
    pub perturbation: Perturbation,
    pub initial: InitialState,
    pub metrics: MetricsConfig,
    pub seed: u64,
}

impl Scenario {
    /// The default experiment: a 0.5236 rad step at t = 0 on the lumped
    /// plant under the reference SMC gains.
    pub fn default_scenario() -> Self {
        let d = defaults();
        Self {
            schema_version: SCHEMA_VERSION,
            plant: PlantConfig {
                kind: PlantKind::Lumped,
                section: d.beam,
                lumped: resolve_coefficients(&d.lumped),
                nodes: d.pde.nodes,
                damping_alpha: d.pde.damping_alpha,
            },
            controller: ControllerSpec::Smc(d.smc),
            reference: Reference::Step {
                r#final: d.scenario.step_final,
                at: d.scenario.step_at,
            },
            f_des: None,
            tmb_radius: d.tmb_radius,
            duration: d.scenario.duration,
            dt: d.scenario.dt,
            disturbance: Disturbance::None,
            perturbation: Perturbation::default(),
            initial: InitialState::default(),
            metrics: d.metrics,
            seed: d.scenario.seed,
        }
    }

    /// The documented robustness-comparison scenario: the default step with
    /// an unseen pulse disturbance, used when ranking controllers.
    pub fn comparison_scenario() -> Self {
        let d = defaults();
        Self {
            disturbance: Disturbance::Pulse {
                torque: d.comparison_pulse.torque,
                start: d.comparison_pulse.start,
                width: d.comparison_pulse.width,
            },
            ..Self::default_scenario()
        }
    }

    /// Truth-plant parameters with the robustness factors applied.
    pub fn perturbed_params(&self) -> LumpedPlantParams {
        LumpedPlantParams {
            inertia: self.plant.lumped.inertia * self.perturbation.inertia_factor,
            stiffness: self.plant.lumped.stiffness * self.perturbation.stiffness_factor,
            damping: self.plant.lumped.damping * self.perturbation.damping_factor,
            f_max: self.plant.lumped.f_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {}, expected {}",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        self.plant.section.validate()?;
        self.plant.lumped.validate()?;
        match &self.controller {
            ControllerSpec::Smc(g) => g.validate()?,
            ControllerSpec::Pid(g) => g.validate()?,
        }
        if self.duration <= 0.0 || self.dt <= 0.0 || self.duration.is_nan() || self.dt.is_nan() {
            return Err(Error::Config("duration and dt must be positive".into()));
        }
        if self.duration / self.dt > 1e7 {
            return Err(Error::Config(format!(
                "duration/dt = {} exceeds the 1e7 log guard",
                self.duration / self.dt
            )));
        }
        if self.plant.kind == PlantKind::Lumped && self.dt > 0.01 {
            return Err(Error::Config(format!(
                "lumped-plant dt must lie in (0, 0.01], got {}",
                self.dt
            )));
        }
        if self.plant.nodes < 5 {
            return Err(Error::Config(format!(
                "need at least 5 PDE nodes, got {}",
                self.plant.nodes
            )));
        }
        let p = &self.perturbation;
        for (name, v) in [
            ("inertia_factor", p.inertia_factor),
            ("stiffness_factor", p.stiffness_factor),
            ("damping_factor", p.damping_factor),
        ] {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::Config(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
        }
        if p.inertia_factor <= 0.0 {
            return Err(Error::Config("inertia_factor must be positive".into()));
        }
        let band = self.metrics.settling_band;
        let tail = self.metrics.tail_fraction;
        if band <= 0.0 || band.is_nan() || tail <= 0.0 || tail > 1.0 || tail.is_nan() {
            return Err(Error::Config("invalid metrics window configuration".into()));
        }
        if let Some(f) = self.f_des {
            if !f.is_finite() {
                return Err(Error::Config("f_des must be finite".into()));
            }
            if self.tmb_radius <= 0.0 || self.tmb_radius.is_nan() {
                return Err(Error::Config("tmb_radius must be positive".into()));
            }
        }
        Ok(())
    }

    /// Address a numeric field by name for parameter sweeps.
    pub fn set_parameter(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "inertia_factor" => self.perturbation.inertia_factor = value,
            "stiffness_factor" => self.perturbation.stiffness_factor = value,
            "damping_factor" => self.perturbation.damping_factor = value,
            "f_max" => self.plant.lumped.f_max = value,
            "duration" => self.duration = value,
            "dt" => self.dt = value,
            "step_final" => match &mut self.reference {
                Reference::Step { r#final, .. } => *r#final = value,
                _ => {
                    return Err(Error::UnknownParameter(
                        "step_final requires a step reference".into(),
                    ))
                }
            },
            other => return Err(Error::UnknownParameter(other.into())),
        }
        Ok(())
    }
}

/// Apply the unit-assignment switch to the published coefficient pair.
pub fn resolve_coefficients(l: &LumpedDefaults) -> LumpedPlantParams {
    let (stiffness, damping) = match l.coefficient_assignment {
        CoefficientAssignment::Dimensional => (l.stiffness, l.damping),
        CoefficientAssignment::Printed => (l.damping, l.stiffness),
    };
    LumpedPlantParams {
        inertia: l.inertia,
        stiffness,
        damping,
        f_max: l.f_max,
    }
}

// ---------------------------------------------------------------------------
// raw (file) forms: every field optional, unknown keys rejected
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub schema_version: u32,
    #[serde(default)]
    pub plant: Option<RawPlant>,
    #[serde(default)]
    pub controller: Option<RawController>,
    #[serde(default)]
    pub reference: Option<Reference>,
    #[serde(default)]
    pub f_des: Option<f64>,
    #[serde(default)]
    pub tmb_radius: Option<f64>,
    #[serde(default)]
    pub duration: Option<f64>,
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub disturbance: Option<Disturbance>,
    #[serde(default)]
    pub perturbation: Option<Perturbation>,
    #[serde(default)]
    pub initial: Option<InitialState>,
    #[serde(default)]
    pub metrics: Option<RawMetrics>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPlant {
    #[serde(default)]
    pub kind: Option<PlantKind>,
    #[serde(default)]
    pub inertia: Option<f64>,
    #[serde(default)]
    pub stiffness: Option<f64>,
    #[serde(default)]
    pub damping: Option<f64>,
    #[serde(default)]
    pub f_max: Option<f64>,
    #[serde(default)]
    pub nodes: Option<usize>,
    #[serde(default)]
    pub damping_alpha: Option<f64>,
    #[serde(default)]
    pub coefficient_assignment: Option<CoefficientAssignment>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RawController {
    Smc {
        #[serde(default)]
        p1: Option<f64>,
        #[serde(default)]
        p2: Option<f64>,
        #[serde(default)]
        p3: Option<f64>,
        #[serde(default)]
        switching: Option<SwitchingKind>,
    },
    Pid {
        #[serde(default)]
        kp: Option<f64>,
        #[serde(default)]
        ki: Option<f64>,
        #[serde(default)]
        kd: Option<f64>,
        #[serde(default)]
        windup_limit: Option<f64>,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMetrics {
    #[serde(default)]
    pub settling_band: Option<f64>,
    #[serde(default)]
    pub tail_fraction: Option<f64>,
}

impl RawScenario {
    /// Parse a scenario document, rejecting unknown keys.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("scenario parse: {e}")))
    }

    /// Fill every omitted field from the shipped defaults and validate.
    pub fn resolve(&self) -> Result<Scenario> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {}, expected {}",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        let d = defaults();
        let raw_plant = self.plant.clone().unwrap_or_default();
        let mut lumped_defaults = d.lumped.clone();
        if let Some(a) = raw_plant.coefficient_assignment {
            lumped_defaults.coefficient_assignment = a;
        }
        let mut lumped = resolve_coefficients(&lumped_defaults);
        if let Some(v) = raw_plant.inertia {
            lumped.inertia = v;
        }
        if let Some(v) = raw_plant.stiffness {
            lumped.stiffness = v;
        }
        if let Some(v) = raw_plant.damping {
            lumped.damping = v;
        }
        if let Some(v) = raw_plant.f_max {
            lumped.f_max = v;
        }
        let plant = PlantConfig {
            kind: raw_plant.kind.unwrap_or(PlantKind::Lumped),
            section: d.beam,
            lumped,
            nodes: raw_plant.nodes.unwrap_or(d.pde.nodes),
            damping_alpha: raw_plant.damping_alpha.unwrap_or(d.pde.damping_alpha),
        };

        let controller = match &self.controller {
            None => ControllerSpec::Smc(d.smc),
            Some(RawController::Smc {
                p1,
                p2,
                p3,
                switching,
            }) => ControllerSpec::Smc(SmcGains {
                p1: p1.unwrap_or(d.smc.p1),
                p2: p2.unwrap_or(d.smc.p2),
                p3: p3.unwrap_or(d.smc.p3),
                switching: switching.unwrap_or(d.smc.switching),
            }),
            Some(RawController::Pid {
                kp,
                ki,
                kd,
                windup_limit,
            }) => ControllerSpec::Pid(PidGains {
                kp: kp.unwrap_or(d.pid.kp),
                ki: ki.unwrap_or(d.pid.ki),
                kd: kd.unwrap_or(d.pid.kd),
                windup_limit: windup_limit.unwrap_or(d.pid.windup_limit),
            }),
        };

        let tmb_radius = self.tmb_radius.unwrap_or(d.tmb_radius);
        let reference = match self.f_des {
            Some(f_des) => {
                let theta_b =
                    crate::beam::desired_bending_angle(&plant.section, f_des, tmb_radius)?;
                Reference::Step {
                    r#final: theta_b,
                    at: 0.0,
                }
            }
            None => self.reference.unwrap_or(Reference::Step {
                r#final: d.scenario.step_final,
                at: d.scenario.step_at,
            }),
        };

        let metrics = match &self.metrics {
            None => d.metrics,
            Some(m) => MetricsConfig {
                settling_band: m.settling_band.unwrap_or(d.metrics.settling_band),
                tail_fraction: m.tail_fraction.unwrap_or(d.metrics.tail_fraction),
            },
        };

        let scenario = Scenario {
            schema_version: SCHEMA_VERSION,
            plant,
            controller,
            reference,
            f_des: self.f_des,
            tmb_radius,
            duration: self.duration.unwrap_or(d.scenario.duration),
            dt: self.dt.unwrap_or(d.scenario.dt),
            disturbance: self.disturbance.unwrap_or(Disturbance::None),
            perturbation: self.perturbation.unwrap_or_default(),
            initial: self.initial.unwrap_or_default(),
            metrics,
            seed: self.seed.unwrap_or(d.scenario.seed),
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

#[cfg(test)]
// 0.5236 rad below is the pinned step amplitude, not a rounding of pi/6
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn defaults_parse_and_are_consistent() {
        let d = defaults();
        assert_eq!(d.config_version, 1);
        d.beam.validate().unwrap();
        // lumped inertia matches rho*A*L of the shipped section
        assert_relative_eq!(
            d.lumped.inertia,
            d.beam.lumped_inertia(),
            max_relative = 1e-12
        );
        // feedforward radius is the consistency choice 2L/3
        assert_relative_eq!(d.tmb_radius, 2.0 * d.beam.l / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn default_scenario_resolves_and_validates() {
        let s = Scenario::default_scenario();
        s.validate().unwrap();
        assert_eq!(s.plant.kind, PlantKind::Lumped);
        assert!(matches!(s.reference, Reference::Step { .. }));
        assert_relative_eq!(s.plant.lumped.stiffness, 0.615);
        assert_relative_eq!(s.plant.lumped.damping, 0.105);
    }

    #[test]
    fn printed_assignment_swaps_the_pair() {
        let raw = RawScenario {
            schema_version: 1,
            plant: Some(RawPlant {
                coefficient_assignment: Some(CoefficientAssignment::Printed),
                ..Default::default()
            }),
            ..Default::default()
        };
        let s = raw.resolve().unwrap();
        assert_relative_eq!(s.plant.lumped.stiffness, 0.105);
        assert_relative_eq!(s.plant.lumped.damping, 0.615);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = RawScenario::from_json(r#"{"schema_version":1,"bogus":3}"#);
        assert!(err.is_err());
        let err =
            RawScenario::from_json(r#"{"schema_version":1,"plant":{"kind":"lumped","mass":3}}"#);
        assert!(err.is_err());
    }

    #[test]
    fn wrong_schema_version_is_rejected() {
        let raw = RawScenario::from_json(r#"{"schema_version":2}"#).unwrap();
        assert!(raw.resolve().is_err());
    }

    #[test]
    fn minimal_document_resolves_to_defaults() {
        let raw = RawScenario::from_json(r#"{"schema_version":1}"#).unwrap();
        let s = raw.resolve().unwrap();
        assert_eq!(s, Scenario::default_scenario());
    }

    #[test]
    fn f_des_derives_step_reference_through_feedforward_map() {
        let raw =
            RawScenario::from_json(r#"{"schema_version":1,"f_des":0.5454166666666667}"#).unwrap();
        let s = raw.resolve().unwrap();
        match s.reference {
            Reference::Step { r#final, at } => {
                assert_relative_eq!(r#final, 0.5236, max_relative = 1e-12);
                assert_eq!(at, 0.0);
            }
            _ => panic!("expected a step"),
        }
    }

    #[test]
    fn reference_shapes_evaluate() {
        let step = Reference::Step {
            r#final: 0.5,
            at: 1.0,
        };
        assert_eq!(step.value_at(0.5), 0.0);
        assert_eq!(step.value_at(1.0), 0.5);
        let ramp = Reference::Ramp {
            rate: 0.2,
            hold: 0.5,
        };
        assert_relative_eq!(ramp.value_at(1.0), 0.2);
        assert_eq!(ramp.value_at(10.0), 0.5);
        let hold = Reference::Hold { value: -0.3 };
        assert_eq!(hold.value_at(2.0), -0.3);
    }

    #[test]
    fn disturbances_evaluate() {
        assert_eq!(Disturbance::None.torque_at(1.0), 0.0);
        assert_eq!(Disturbance::Constant { torque: 0.2 }.torque_at(9.0), 0.2);
        let p = Disturbance::Pulse {
            torque: 2.0,
            start: 20.0,
            width: 1.0,
        };
        assert_eq!(p.torque_at(19.999), 0.0);
        assert_eq!(p.torque_at(20.0), 2.0);
        assert_eq!(p.torque_at(20.999), 2.0);
        assert_eq!(p.torque_at(21.0), 0.0);
    }

    #[test]
    fn sweep_addressing_hits_known_fields_only() {
        let mut s = Scenario::default_scenario();
        s.set_parameter("inertia_factor", 1.3).unwrap();
        assert_eq!(s.perturbation.inertia_factor, 1.3);
        s.set_parameter("step_final", 0.3).unwrap();
        assert!(matches!(s.reference, Reference::Step { r#final, .. } if r#final == 0.3));
        assert!(matches!(
            s.set_parameter("nonsense", 1.0),
            Err(Error::UnknownParameter(_))
        ));
    }

    #[test]
    fn log_guard_rejects_runaway_configs() {
        let mut s = Scenario::default_scenario();
        s.duration = 1e6;
        s.dt = 1e-3;
        assert!(s.validate().is_err());
    }
}
