//! Finite-difference dynamic beam plant.
//!
//! Discretizes EI y'''' + rho A y_tt = F_t(x) on a uniform grid with a
//! clamped root and a free tip, marched explicitly in time. A
//! mass-proportional damping term alpha * rho A * y_t regularizes the
//! explicit scheme so constant-load runs settle; the static solution it
//! settles to is damping-independent.
//!
//! Spatial scheme: second-order central five-point stencil for y''''.
//! Boundary handling, all second order:
//!   - root: y[0] = 0 with a reflected ghost (zero slope at x = 0);
//!   - tip: zero-moment and zero-shear ghosts;
//!   - the tip point load enters the tip node as a force density over the
//!     half cell it owns, F / (dx/2).
//!
//! Explicit stability bound: dt <= 0.4 dx^2 sqrt(rho A / EI).

use serde::{Deserialize, Serialize};

use crate::beam::BeamSection;
use crate::error::{Error, Result};

/// Deflection field of the discretized beam plant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdePlantState {
    /// Number of spatial grid points (root node included).
    pub nodes: usize,
    /// Deflection per node, m.
    pub y: Vec<f64>,
    /// Deflection velocity per node, m/s.
    pub y_dot: Vec<f64>,
    /// Grid spacing L / (nodes - 1), m.
    pub dx: f64,
    /// Mass-proportional damping rate, 1/s.
    pub alpha: f64,
    /// Simulation time, s.
    pub t: f64,
}

impl PdePlantState {
    /// A beam at rest on `nodes` grid points.
    pub fn new(section: &BeamSection, nodes: usize, alpha: f64) -> Result<Self> {
        section.validate()?;
        if nodes < 5 {
            return Err(Error::Config(format!("need at least 5 nodes, got {nodes}")));
        }
        if alpha < 0.0 || alpha.is_nan() {
            return Err(Error::Config(format!(
                "alpha must be non-negative, got {alpha}"
            )));
        }
        Ok(Self {
            nodes,
            y: vec![0.0; nodes],
            y_dot: vec![0.0; nodes],
            dx: section.l / (nodes - 1) as f64,
            alpha,
            t: 0.0,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.y
            .iter()
            .chain(self.y_dot.iter())
            .all(|v| v.is_finite())
    }

    /// Largest nodal speed, the settle detector for constant-load runs.
    pub fn max_speed(&self) -> f64 {
        self.y_dot.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Explicit-stability time-step bound for the stencil on spacing `dx`.
pub fn stable_dt_bound(section: &BeamSection, dx: f64) -> f64 {
    0.4 * dx * dx * (section.rho * section.a / section.ei()).sqrt()
}

/// Fourth-derivative stencil with ghost boundary conditions applied.
/// `out[0]` is left zero: the root node is pinned.
fn fourth_derivative(y: &[f64], dx: f64, out: &mut [f64]) {
    let n = y.len();
    let dx4 = dx * dx * dx * dx;
    for i in 1..n {
        // ghost y[-1] = y[1] reflects the zero root slope
        let ym2 = if i >= 2 { y[i - 2] } else { y[1] };
        let ym1 = y[i - 1];
        let yc = y[i];
        let (yp1, yp2) = if i + 2 < n {
            (y[i + 1], y[i + 2])
        } else if i + 1 < n {
            // ghost y[n] from zero moment at the tip
            (y[i + 1], 2.0 * y[n - 1] - y[n - 2])
        } else {
            // tip row: zero-moment and zero-shear ghosts
            let g1 = 2.0 * y[n - 1] - y[n - 2];
            let g2 = 2.0 * g1 - 2.0 * y[n - 2] + y[n - 3];
            (g1, g2)
        };
        out[i] = (ym2 - 4.0 * ym1 + 6.0 * yc - 4.0 * yp1 + yp2) / dx4;
    }
}

/// Advance the field one explicit RK4 step under a tip point load (N).
pub fn pde_step(
    state: &PdePlantState,
    section: &BeamSection,
    tip_force: f64,
    dt: f64,
) -> Result<PdePlantState> {
    let bound = stable_dt_bound(section, state.dx);
    if dt > bound {
        return Err(Error::Stability { dt, bound });
    }
    if dt <= 0.0 || dt.is_nan() {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    if !tip_force.is_finite() {
        return Err(Error::Domain("tip force must be finite".into()));
    }

    let n = state.nodes;
    let ra = section.rho * section.a;
    let ei = section.ei();
    // point load over the half cell owned by the tip node
    let tip_density = tip_force / (0.5 * state.dx);

    let mut d4 = vec![0.0; n];
    let mut accel = |y: &[f64], v: &[f64], out: &mut Vec<f64>| {
        fourth_derivative(y, state.dx, &mut d4);
        out.clear();
        out.extend((0..n).map(|i| {
            if i == 0 {
                0.0
            } else {
                let q = if i == n - 1 { tip_density } else { 0.0 };
                (q - ei * d4[i]) / ra - state.alpha * v[i]
            }
        }));
    };

    let axpy = |y: &[f64], k: &[f64], h: f64| -> Vec<f64> {
        y.iter().zip(k).map(|(a, b)| a + h * b).collect()
    };

    let (y0, v0) = (&state.y, &state.y_dot);
    let mut k1v = Vec::with_capacity(n);
    let mut k2v = Vec::with_capacity(n);
    let mut k3v = Vec::with_capacity(n);
    let mut k4v = Vec::with_capacity(n);

    accel(y0, v0, &mut k1v);
    let y2 = axpy(y0, v0, 0.5 * dt);
    let v2 = axpy(v0, &k1v, 0.5 * dt);
    accel(&y2, &v2, &mut k2v);
    let y3 = axpy(y0, &v2, 0.5 * dt);
    let v3 = axpy(v0, &k2v, 0.5 * dt);
    accel(&y3, &v3, &mut k3v);
    let y4 = axpy(y0, &v3, dt);
    let v4 = axpy(v0, &k3v, dt);
    accel(&y4, &v4, &mut k4v);

    let mut y = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        y.push(y0[i] + dt / 6.0 * (v0[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]));
        v.push(v0[i] + dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]));
    }
    y[0] = 0.0;
    v[0] = 0.0;

    let out = PdePlantState {
        nodes: n,
        y,
        y_dot: v,
        dx: state.dx,
        alpha: state.alpha,
        t: state.t + dt,
    };
    if !out.is_finite() {
        return Err(Error::Integration(format!(
            "non-finite PDE state at t = {}",
            state.t
        )));
    }
    Ok(out)
}

/// Tip bending angle from the simulated field, the same tip-deflection map
/// the feedforward model uses: theta = y(L) / L.
pub fn bending_angle_from_pde(state: &PdePlantState, section: &BeamSection) -> f64 {
    state.y[state.nodes - 1] / section.l
}

/// March under a constant tip load until the largest nodal speed drops below
/// `speed_tol` (steady state) or `t_max` elapses. Returns the state and
/// whether it settled.
pub fn march_to_steady_state(
    mut state: PdePlantState,
    section: &BeamSection,
    tip_force: f64,
    dt: f64,
    speed_tol: f64,
    t_max: f64,
) -> Result<(PdePlantState, bool)> {
    let mut steps = 0usize;
    while state.t < t_max {
        state = pde_step(&state, section, tip_force, dt)?;
        steps += 1;
        if steps > 100 && state.max_speed() < speed_tol {
            return Ok((state, true));
        }
    }
    Ok((state, false))
}
