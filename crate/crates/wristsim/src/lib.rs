//! Closed-loop simulation of a tendon-driven soft robotic wrist.
//!
//! The crate models one bending axis of a soft continuum wrist segment:
//! quasi-static beam formulas and constant-curvature kinematics ([`beam`]),
//! a lumped tip plant and an explicit finite-difference beam plant
//! ([`plant`], [`pde`]), a sliding mode controller with a PID baseline
//! ([`control`]), trajectory metrics ([`metrics`]), particle-swarm gain
//! tuning ([`tuning`], [`pso`]), and a scenario-driven closed-loop harness
//! with CSV/JSON reporting ([`scenario`], [`harness`], [`report`]).

pub mod beam;
pub mod control;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod pde;
pub mod plant;
pub mod pso;
pub mod report;
pub mod scenario;
pub mod tuning;

pub use error::{Error, Result};
