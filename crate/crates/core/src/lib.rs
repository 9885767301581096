//! Geometry of the state space of an N-level quantum system.
//!
//! The crate represents density matrices both as complex Hermitian matrices
//! and as real coherence vectors in an orthonormal traceless basis, maps
//! their spectra onto the probability simplex and its Weyl-chamber quotient,
//! classifies degeneracy strata, computes the symmetric-function invariants
//! of the spectrum, and evaluates von Neumann entropy together with
//! isentropic contour lines over the three-level chamber.
//!
//! Modules:
//! - [`su_basis`] — generalized orthonormal traceless Hermitian bases and
//!   their antisymmetric/symmetric structure constants,
//! - [`states`] — density matrices, coherence vectors, unitary conjugation,
//!   random state sampling,
//! - [`chamber`] — spectra, simplex coordinates, chamber reduction, stratum
//!   classification, special points,
//! - [`invariants`] — elementary-symmetric invariants from eigenvalues and
//!   from power traces, characteristic-equation residuals,
//! - [`entropy`] — entropy values, angle parametrizations, entropy surfaces
//!   and contour extraction.
//!
//! All values are immutable once constructed and safe to share across
//! threads; every operation is deterministic given its inputs (and seed,
//! where one applies). Entropies are in nats throughout.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod chamber;
pub mod entropy;
pub mod invariants;
pub mod linalg;
pub mod states;
pub mod su_basis;

pub use chamber::{
    chamber_representative, classify, coherence_distance, count_strata, from_simplex_coords,
    partitions, special_points, spectrum_of, to_simplex_coords, SimplexCoords, Spectrum,
    StratumInfo,
};
pub use entropy::{
    angles_to_spectrum, entropy, entropy_from_angles, entropy_surface, isentropic_contours,
    line_entropy_profile, AngleCoords, ContourSet, SurfaceSample,
};
pub use invariants::{
    boundary_vanishing, casimirs_from_spectrum, casimirs_from_traces, characteristic_residual,
    CasimirSet,
};
pub use linalg::{CMatrix, C64};
pub use states::{
    conjugate, decode, encode, is_pure, random_density_matrix, CoherenceVector, DensityMatrix,
};
pub use su_basis::{build_basis, structure_constants, BasisSet, StructureConstants};

/// Numeric tolerances used across the crate, centralized in one record.
///
/// - `algebraic` guards exact algebraic identities (orthonormality,
///   round-trips, tensor symmetries),
/// - `positivity` guards state validity (Hermiticity, unit trace, positive
///   semidefiniteness, unitarity) and defines when an eigenvalue counts as
///   zero,
/// - `degeneracy` is the default gap threshold when clustering eigenvalues
///   into degeneracy blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub algebraic: f64,
    pub positivity: f64,
    pub degeneracy: f64,
}

impl Tolerances {
    pub const DEFAULT_ALGEBRAIC: f64 = 1e-12;
    pub const DEFAULT_POSITIVITY: f64 = 1e-9;
    pub const DEFAULT_DEGENERACY: f64 = 1e-8;
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: Self::DEFAULT_ALGEBRAIC,
            positivity: Self::DEFAULT_POSITIVITY,
            degeneracy: Self::DEFAULT_DEGENERACY,
        }
    }
}

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("number of levels must be at least 2, got {0}")]
    InvalidLevels(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    TraceNotOne(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.6e})")]
    NotPositive(f64),

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("coordinates decode outside the simplex (offending eigenvalue {0:.6e})")]
    OutOfSimplex(f64),

    #[error("operation supports {supported} levels, got {got}")]
    UnsupportedLevels { got: usize, supported: &'static str },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
