//! Time-domain plants for the wrist tip.
//!
//! The lumped single-DOF model reduces the segment to a bending angle and
//! its rate. The controller-facing nominal model is a pure double integrator
//! scaled by the lumped inertia; the truth plant adds restoring stiffness,
//! viscous damping, input saturation, and an additive disturbance torque.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Motion range of the wrist, +/-50 degrees.
pub const MOTION_RANGE_RAD: f64 = 0.8726646259971648;

/// Bending angle and angular velocity of the wrist tip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantState {
    /// Bending angle theta_1 = theta_o, rad.
    pub theta1: f64,
    /// Angular velocity theta_2 = d(theta_o)/dt, rad/s.
    pub theta2: f64,
    /// Simulation time, s.
    pub t: f64,
}

impl PlantState {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        Self {
            theta1,
            theta2,
            t: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.theta1.is_finite() && self.theta2.is_finite() && self.t.is_finite()
    }

    /// True when the angle left the physical +/-50 degree motion range.
    pub fn range_exceeded(&self) -> bool {
        self.theta1.abs() > MOTION_RANGE_RAD
    }
}

/// Parameters of the lumped tip model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LumpedPlantParams {
    /// Lumped inertia coefficient rho*A*L.
    pub inertia: f64,
    /// Restoring coefficient k, N*m/rad.
    pub stiffness: f64,
    /// Dissipative coefficient c, N*m*s/rad.
    pub damping: f64,
    /// Symmetric saturation bound on the applied control, N.
    pub f_max: f64,
}

impl LumpedPlantParams {
    pub fn validate(&self) -> Result<()> {
        if self.inertia <= 0.0 || !self.inertia.is_finite() {
            return Err(Error::Config(format!(
                "inertia must be positive, got {}",
                self.inertia
            )));
        }
        if self.stiffness < 0.0 || self.damping < 0.0 {
            return Err(Error::Config(
                "stiffness and damping must be non-negative".into(),
            ));
        }
        if self.f_max <= 0.0 || self.f_max.is_nan() {
            return Err(Error::Config(format!(
                "f_max must be positive, got {}",
                self.f_max
            )));
        }
        Ok(())
    }

    /// Acceleration of the truth plant under a (pre-clipped) control force,
    /// a disturbance torque, and the current state.
    pub fn acceleration(
        &self,
        theta: f64,
        theta_dot: f64,
        u_applied: f64,
        disturbance: f64,
    ) -> f64 {
        (u_applied - self.damping * theta_dot - self.stiffness * theta + disturbance) / self.inertia
    }

    /// Clip a control command to the saturation bound.
    pub fn saturate(&self, u: f64) -> f64 {
        u.clamp(-self.f_max, self.f_max)
    }
}

/// Control-affine form d(theta)/dt = f(theta) + g(theta) u of the nominal
/// model, evaluated at one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineDynamics {
    /// Drift field (theta_dot, 0).
    pub f: [f64; 2],
    /// Input field (0, 1/inertia).
    pub g: [f64; 2],
}

/// Nominal controller-facing dynamics. The drift deliberately carries a zero
/// second component: stiffness and damping are model error the controller
/// must absorb, not knowledge it is given.
pub fn nominal_dynamics(state: &PlantState, params: &LumpedPlantParams) -> AffineDynamics {
    AffineDynamics {
        f: [state.theta2, 0.0],
        g: [0.0, 1.0 / params.inertia],
    }
}

/// One classical fourth-order Runge-Kutta step of `state` under `deriv`,
/// which maps a state to (d theta1/dt, d theta2/dt).
pub fn rk4_step<D>(deriv: D, state: &PlantState, dt: f64) -> Result<PlantState>
where
    D: Fn(&PlantState) -> (f64, f64),
{
    if dt <= 0.0 || dt.is_nan() {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    let at = |a: f64, b: f64, tau: f64| PlantState {
        theta1: state.theta1 + a,
        theta2: state.theta2 + b,
        t: state.t + tau,
    };
    let (k1a, k1b) = deriv(state);
    let (k2a, k2b) = deriv(&at(0.5 * dt * k1a, 0.5 * dt * k1b, 0.5 * dt));
    let (k3a, k3b) = deriv(&at(0.5 * dt * k2a, 0.5 * dt * k2b, 0.5 * dt));
    let (k4a, k4b) = deriv(&at(dt * k3a, dt * k3b, dt));
    let out = PlantState {
        theta1: state.theta1 + dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a),
        theta2: state.theta2 + dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b),
        t: state.t + dt,
    };
    if !out.is_finite() {
        return Err(Error::Integration(format!(
            "non-finite state after step at t = {}",
            state.t
        )));
    }
    Ok(out)
}

/// Advance the truth plant one step under a held control command `u` (N) and
/// disturbance torque (N*m). The command is clipped to +/-f_max.
pub fn truth_step(
    state: &PlantState,
    params: &LumpedPlantParams,
    u: f64,
    disturbance: f64,
    dt: f64,
) -> Result<PlantState> {
    params.validate()?;
    if dt <= 0.0 || dt > 0.01 || dt.is_nan() {
        return Err(Error::Domain(format!("dt must lie in (0, 0.01], got {dt}")));
    }
    if !u.is_finite() || !disturbance.is_finite() {
        return Err(Error::Domain(
            "control and disturbance must be finite".into(),
        ));
    }
    let ua = params.saturate(u);
    rk4_step(
        |s| {
            (
                s.theta2,
                params.acceleration(s.theta1, s.theta2, ua, disturbance),
            )
        },
        state,
        dt,
    )
}
