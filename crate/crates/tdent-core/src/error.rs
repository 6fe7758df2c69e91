use thiserror::Error;

/// Errors produced by the numerical pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user input failed.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Work or memory estimate exceeds the configured budget.
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    /// Admissible representation phases do not exist; Tr(T) = 2 makes the
    /// phase equation singular.
    #[error("parabolic trace, phase condition denominator vanishes")]
    ParabolicTrace,
    /// Phases passed to a dynamics step do not label a representation in
    /// which that dynamics is unitarily implemented.
    #[error("representation phases (u,v)=({u},{v}) not admissible for the given map")]
    InadmissiblePhases { u: f64, v: f64 },
    /// The frequency shortcut applies to the integer-α subfamily only.
    #[error("frequency shortcut requires the T_α subfamily (integer α), got α={0}")]
    NonIntegerAlpha(f64),
    /// A matrix expected to be Hermitian was not, beyond tolerance.
    #[error("matrix not Hermitian: max |A - A†| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    /// An eigenvalue of a positive semidefinite matrix fell below the
    /// clipping window; the build that produced the matrix is suspect.
    #[error("PSD violation: eigenvalue {value:.3e} below -{window:.1e}")]
    PsdViolation { value: f64, window: f64 },
    /// The eigenvalue iteration failed to converge.
    #[error("eigenvalue iteration failed to converge at index {0}")]
    EigenNoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
