//! Static beam formulas and constant-curvature kinematics.
//!
//! Maps tip forces and bending moments of a cantilevered soft segment to
//! deflections, bending angles, and tip positions. All operations are pure
//! and linear in their load argument.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Geometry and material description of the wrist segment, shared by the
/// static formulas and both plants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSection {
    /// Young's modulus, Pa.
    pub e: f64,
    /// Second moment of area, m^4.
    pub i: f64,
    /// Shear correction coefficient, dimensionless, in (0, 1].
    pub k: f64,
    /// Cross-sectional area, m^2.
    pub a: f64,
    /// Shear modulus, Pa.
    pub g: f64,
    /// Segment length, m.
    pub l: f64,
    /// Density, kg/m^3.
    pub rho: f64,
}

impl BeamSection {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("E", self.e),
            ("I", self.i),
            ("K", self.k),
            ("A", self.a),
            ("G", self.g),
            ("L", self.l),
            ("rho", self.rho),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!(
                    "beam section field {name} must be finite and positive, got {v}"
                )));
            }
        }
        if self.k > 1.0 {
            return Err(Error::Domain(format!(
                "shear coefficient K must lie in (0, 1], got {}",
                self.k
            )));
        }
        Ok(())
    }

    /// Flexural rigidity E*I.
    pub fn ei(&self) -> f64 {
        self.e * self.i
    }

    /// Shear rigidity K*A*G.
    pub fn kag(&self) -> f64 {
        self.k * self.a * self.g
    }

    /// Lumped angular inertia rho*A*L of the reduced tip model.
    pub fn lumped_inertia(&self) -> f64 {
        self.rho * self.a * self.l
    }
}

/// Tip pose on the constant-curvature circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TipPose {
    /// Tip x-coordinate, m.
    pub x_p: f64,
    /// Tip y-coordinate, m.
    pub y_p: f64,
    /// Radius of curvature, m.
    pub r: f64,
    /// Bending angle, rad.
    pub theta: f64,
}

/// A concentrated tip load and/or applied bending moment.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LoadCase {
    /// Concentrated tip load, N (signed).
    pub f: f64,
    /// Applied bending moment, N*m (signed).
    pub m: f64,
}

impl LoadCase {
    pub fn validate(&self) -> Result<()> {
        if !self.f.is_finite() || !self.m.is_finite() {
            return Err(Error::Domain("load case must be finite".into()));
        }
        Ok(())
    }
}

/// Tip position of a segment bent into a circular arc of radius `r` with
/// bending angle `theta`: x = R sin(theta), y = R (1 - cos(theta)).
pub fn tip_position(r: f64, theta: f64) -> Result<TipPose> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    if !theta.is_finite() || theta.abs() > PI {
        return Err(Error::Domain(format!(
            "bending angle must lie in [-pi, pi], got {theta}"
        )));
    }
    Ok(TipPose {
        x_p: r * theta.sin(),
        y_p: r * (1.0 - theta.cos()),
        r,
        theta,
    })
}

/// Quasi-static deflection y(x) under a concentrated tip load:
/// y = F(L-x)/(KAG) - (Fx/2EI)(L^2 - x^2/3) + FL^3/(3EI).
pub fn static_deflection_point_load(section: &BeamSection, f: f64, x: f64) -> Result<f64> {
    section.validate()?;
    if !f.is_finite() {
        return Err(Error::Domain("load must be finite".into()));
    }
    if !(0.0..=section.l).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, {}]", section.l)));
    }
    let l = section.l;
    let shear = f * (l - x) / section.kag();
    let bending = -(f * x / (2.0 * section.ei())) * (l * l - x * x / 3.0);
    let tip = f * l.powi(3) / (3.0 * section.ei());
    Ok(shear + bending + tip)
}

/// Shear-dominated tip deformation y(L) = 8.8 F L / (7.8 A G).
///
/// Note this does not agree with [`static_deflection_point_load`] at x = L,
/// whose shear term vanishes there; both closed forms are exposed as-is.
pub fn shear_tip_deflection(section: &BeamSection, f: f64) -> Result<f64> {
    section.validate()?;
    if !f.is_finite() {
        return Err(Error::Domain("load must be finite".into()));
    }
    Ok(8.8 * f * section.l / (7.8 * section.a * section.g))
}

/// Vertical tip deflection under a bending moment: y = M L^2 / (2EI), with
/// M = F*R when the load case carries a force acting at curvature radius R.
pub fn moment_tip_deflection(section: &BeamSection, load: &LoadCase, r: f64) -> Result<f64> {
    section.validate()?;
    load.validate()?;
    let m = if load.f != 0.0 {
        if r <= 0.0 || !r.is_finite() {
            return Err(Error::Domain(format!(
                "radius must be positive for the force form, got {r}"
            )));
        }
        load.m + load.f * r
    } else {
        load.m
    };
    Ok(m * section.l * section.l / (2.0 * section.ei()))
}

/// Feedforward map from a desired tendon force to a desired bending angle:
/// theta_b = y_des / L with y_des from the moment-load tip deflection.
pub fn desired_bending_angle(section: &BeamSection, f_des: f64, r: f64) -> Result<f64> {
    let y_des = moment_tip_deflection(section, &LoadCase { f: f_des, m: 0.0 }, r)?;
    Ok(y_des / section.l)
}
