use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value or file is invalid.
    #[error("config error: {0}")]
    Config(String),

    /// A state or derivative became non-finite during integration.
    #[error("integration error: {0}")]
    Integration(String),

    /// The requested time step exceeds the explicit-stability bound.
    #[error("stability error: dt {dt} exceeds bound {bound}")]
    Stability { dt: f64, bound: f64 },

    /// The control-input field cannot be inverted (L_g sigma = 0).
    #[error("singular dynamics: L_g sigma = 0")]
    SingularDynamics,

    /// A closed-loop simulation diverged.
    #[error("simulation error: {0}")]
    Simulation(String),

    /// A metrics operation was given an empty log.
    #[error("empty log")]
    EmptyLog,

    /// The reference in a log is not step-like.
    #[error("not a step reference: {0}")]
    NotAStep(String),

    /// Scenarios passed to `compare` do not share reference and duration.
    #[error("mismatched scenarios: {0}")]
    MismatchedScenarios(String),

    /// A sweep addressed a parameter that does not exist.
    #[error("unknown parameter: {0}")]
    UnknownParameter(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
