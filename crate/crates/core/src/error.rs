//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("singular generator matrix: |det G| = {det} below tolerance")]
    SingularGenerators { det: f64 },
    #[error("unsupported dimension {dim} for cone kind {kind}")]
    UnsupportedDimension { kind: String, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point is not in the cone interior (depth = {depth})")]
    NotInInterior { depth: f64 },
    #[error("vector lies outside the dual cone")]
    OutsideDualCone,
    #[error("vector lies outside the spectral set (neither dual cone nor its reflection)")]
    OutsideSpectralSet,
    #[error("unsupported cone for this quadrature path")]
    UnsupportedCone,
    #[error("quadrature target unreachable: {detail}")]
    TargetUnreachable { detail: String },
    #[error("non-finite integrand value at a quadrature node")]
    NonFiniteIntegrand,
    #[error("adaptive integrator failed to converge at max refinement depth")]
    NoConvergence,
    #[error("rule mismatch: rule decay scale {rule_scale} exceeds available decay {available}")]
    RuleMismatch { rule_scale: f64, available: f64 },
    #[error("oscillation budget exceeded: frequency {freq} beyond the rule's capacity {capacity}")]
    OscillationBudgetExceeded { freq: f64, capacity: f64 },
    #[error("polynomial degree {degree} exceeds the Sobolev order {order}")]
    DegreeTooHigh { degree: u32, order: u32 },
    #[error("non-finite boundary samples")]
    NonFiniteSamples,
    #[error("spectrum outside the dual cones: residual fraction {fraction} above tolerance {tol}")]
    SpectrumOutsideCones { fraction: f64, tol: f64 },
    #[error("evaluation requested in the wrong tube")]
    WrongTube,
    #[error("point is not in the upper half-plane")]
    NotInHalfPlane,
    #[error("mismatched parameters between function and kernel/operator")]
    ParameterMismatch,
    #[error("Gram matrix ill-conditioned: condition number {cond:.3e}")]
    GramIllConditioned { cond: f64 },
    #[error("modulation symbol frequency lies outside the dual cone")]
    SymbolOutsideDualCone,
    #[error("translation is not a self-map of the tube")]
    NotSelfMap,
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
