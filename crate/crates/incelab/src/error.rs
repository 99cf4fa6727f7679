//! Error types shared across the crate.

use thiserror::Error;

use crate::ince::Parity;

/// Errors produced by mode construction, field operations and the quantum layer.
#[derive(Debug, Error)]
pub enum Error {
    /// The (p, m, parity) triple violates the Ince index constraints.
    #[error("invalid Ince indices p={p}, m={m}, {parity:?}: {reason}")]
    InvalidIndices {
        p: u32,
        m: u32,
        parity: Parity,
        reason: &'static str,
    },

    /// Ellipticity must be non-negative.
    #[error("negative ellipticity {0}")]
    NegativeEllipticity(f64),

    /// Hyperbolic series argument too large for f64 evaluation.
    #[error("radial argument u={0} overflows the hyperbolic series")]
    Overflow(f64),

    /// Elliptic coordinates are undefined for coincident foci (f0 = 0).
    #[error("degenerate foci: semifocal separation is zero")]
    DegenerateFoci,

    /// Mode spec and beam geometry disagree on the ellipticity.
    #[error("ellipticity mismatch: spec has {spec}, geometry has {geometry}")]
    EllipticityMismatch { spec: f64, geometry: f64 },

    /// A parameter fell outside its admissible range.
    #[error("parameter {name}={value} outside range {range}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Two fields do not share the same sampling grid.
    #[error("grid mismatch: fields sampled on different grids")]
    GridMismatch,

    /// Grid-doubling did not converge to the requested tolerance.
    #[error("overlap did not converge: last change {last_change:e} exceeds {tolerance:e}")]
    NonConvergence { last_change: f64, tolerance: f64 },

    /// Gram matrix input specs must share one ellipticity.
    #[error("mode specs with mixed ellipticities ({0} vs {1})")]
    MixedEllipticity(f64, f64),

    /// Operator/state dimensions are incompatible.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// State amplitudes are not normalized.
    #[error("state norm violation: |amplitudes|^2 sums to {0}, expected 1")]
    NormViolation(f64),

    /// A matrix failed the density-matrix invariants.
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    /// A two-level subspace carries (numerically) no population.
    #[error("subspace ({k},{l}) weight {weight:e} below threshold; g undefined")]
    ZeroWeight { k: usize, l: usize, weight: f64 },

    /// A density-matrix file could not be parsed.
    #[error("malformed state file: {0}")]
    StateFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
