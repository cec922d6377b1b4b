//! Sliding mode controller and PID baseline.
//!
//! The SMC follows the equivalent-control construction: a sliding surface
//! sigma = P1 e + P2 theta_dot, drift cancellation from the Lie derivatives
//! of sigma along the nominal fields, and a tanh- or sgn-shaped switching
//! term. The total command is U = -(U_eq + U_sw). Saturation is applied by
//! the plant, not here, so the decomposition stays exact in logs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plant::{AffineDynamics, PlantState};

/// Band around sigma = 0 counted as "on the surface" by the reaching probe.
/// tanh switching never drives sigma exactly to zero.
pub const BOUNDARY_LAYER: f64 = 0.05;

/// Shape of the switching term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwitchingKind {
    Tanh,
    Sgn,
}

impl SwitchingKind {
    /// The switching shape; sgn(0) is defined as 0.
    pub fn apply(self, sigma: f64) -> f64 {
        match self {
            SwitchingKind::Tanh => sigma.tanh(),
            SwitchingKind::Sgn => {
                if sigma > 0.0 {
                    1.0
                } else if sigma < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// SMC tuning parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmcGains {
    /// Error weight in the sliding surface.
    pub p1: f64,
    /// Velocity weight in the sliding surface.
    pub p2: f64,
    /// Switching strength.
    pub p3: f64,
    pub switching: SwitchingKind,
}

impl SmcGains {
    pub fn validate(&self) -> Result<()> {
        let gains_ok = [self.p1, self.p2, self.p3]
            .iter()
            .all(|g| g.is_finite() && *g > 0.0);
        if !gains_ok {
            return Err(Error::Config(format!(
                "SMC gains must be positive, got ({}, {}, {})",
                self.p1, self.p2, self.p3
            )));
        }
        Ok(())
    }
}

/// Decomposed controller output, pre-saturation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmcOutput {
    /// Sliding-surface value at the evaluated state.
    pub sigma: f64,
    /// Drift-cancelling component, N.
    pub u_equivalent: f64,
    /// Surface-seeking component, N.
    pub u_switching: f64,
    /// Total command U = -(U_eq + U_sw), N.
    pub u: f64,
}

/// sigma = P1 e + P2 theta_dot with e = theta_o - theta_b.
pub fn sliding_surface(gains: &SmcGains, error: f64, theta_dot: f64) -> f64 {
    gains.p1 * error + gains.p2 * theta_dot
}

/// Evaluate the SMC at one state against a constant reference angle.
///
/// With the nominal fields f = (theta_dot, 0), g = (0, 1/(rho A L)):
/// L_f sigma = P1 theta_dot, L_g sigma = P2 / (rho A L),
/// U_eq = L_f sigma / L_g sigma, U_sw = P3 switch(sigma) / L_g sigma.
pub fn smc_control(
    gains: &SmcGains,
    state: &PlantState,
    reference: f64,
    dynamics: &AffineDynamics,
) -> Result<SmcOutput> {
    gains.validate()?;
    let error = state.theta1 - reference;
    let sigma = sliding_surface(gains, error, state.theta2);
    // grad sigma = (P1, P2) against the affine fields
    let l_f = gains.p1 * dynamics.f[0] + gains.p2 * dynamics.f[1];
    let l_g = gains.p1 * dynamics.g[0] + gains.p2 * dynamics.g[1];
    if l_g == 0.0 {
        return Err(Error::SingularDynamics);
    }
    let u_equivalent = l_f / l_g;
    let u_switching = gains.p3 * gains.switching.apply(sigma) / l_g;
    Ok(SmcOutput {
        sigma,
        u_equivalent,
        u_switching,
        u: -(u_equivalent + u_switching),
    })
}

/// Reaching-condition probe: true when sigma moves toward the surface or
/// already sits inside the boundary layer. Test instrumentation, not part
/// of the control path.
pub fn reaching_condition_check(sigma: f64, sigma_dot: f64) -> bool {
    sigma * sigma_dot < 0.0 || sigma.abs() <= BOUNDARY_LAYER
}

/// PID gains with an integral anti-windup clamp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PidGains {
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
    /// Bound on the raw error integral, rad*s.
    pub windup_limit: f64,
}

impl PidGains {
    pub fn validate(&self) -> Result<()> {
        if self.kp < 0.0 || self.ki < 0.0 || self.kd < 0.0 {
            return Err(Error::Config("PID gains must be non-negative".into()));
        }
        if self.windup_limit <= 0.0 || self.windup_limit.is_nan() {
            return Err(Error::Config(format!(
                "windup limit must be positive, got {}",
                self.windup_limit
            )));
        }
        Ok(())
    }
}

/// u = kp e + ki clamp(integral) + kd e_dot.
///
/// The caller supplies the control error (reference minus output) and owns
/// the integrator state; the clamp here bounds whatever integral is passed.
pub fn pid_control(
    gains: &PidGains,
    error: f64,
    error_integral: f64,
    error_derivative: f64,
) -> f64 {
    let integral = error_integral.clamp(-gains.windup_limit, gains.windup_limit);
    gains.kp * error + gains.ki * integral + gains.kd * error_derivative
}
