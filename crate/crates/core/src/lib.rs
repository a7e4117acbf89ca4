//! Exact computations for permutation-form F-crystals: minimality, level
//! torsion, Frobenius numbers of the associated numerical semigroups,
//! isomorphism-number bounds, truncated Witt vectors and ξ-adic lattices.

pub mod bounds;
pub mod crystal;
pub mod json;
pub mod level_torsion;
pub mod numsemigroup;
pub mod witt;
pub mod xilattice;

use thiserror::Error;

pub use bounds::{BoundsError, IsosimpleProfile};
pub use crystal::{CrystalError, CyclicFCrystal, ExponentCycle, NewtonPolygon, Slope};
pub use json::JsonError;
pub use level_torsion::LevelTorsionError;
pub use numsemigroup::{SemigroupError, SemigroupGenerators};
pub use witt::{make_ring, PAdicOrder, WittElement, WittError, WittRing};
pub use xilattice::{FValuation, XiElement, XiError, XiLattice, XiModuleSpec, XiOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    LevelTorsion(#[from] LevelTorsionError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Xi(#[from] XiError),
    #[error(transparent)]
    Json(#[from] JsonError),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Crystal(CrystalError::NotMinimal { .. }) => "not-minimal",
            Error::Crystal(_) => "invalid-crystal",
            Error::LevelTorsion(_) => "hypothesis-violation",
            Error::Semigroup(SemigroupError::FormulaMismatch { .. }) => "formula-mismatch",
            Error::Semigroup(SemigroupError::Overflow(_)) => "overflow",
            Error::Semigroup(SemigroupError::Hypothesis(_) | SemigroupError::Precondition(_)) => "hypothesis-violation",
            Error::Semigroup(_) => "invalid-generators",
            Error::Bounds(BoundsError::Semigroup(e)) => Error::Semigroup(e.clone()).code(),
            Error::Bounds(_) => "hypothesis-violation",
            Error::Witt(WittError::NotPrime(_)) => "not-prime",
            Error::Witt(WittError::ReducibleModulus { .. }) => "reducible-modulus",
            Error::Witt(WittError::SpecMismatch) => "spec-mismatch",
            Error::Witt(_) => "invalid-ring",
            Error::Xi(XiError::Witt(e)) => Error::Witt(e.clone()).code(),
            Error::Xi(XiError::PrecisionExhausted(_)) => "precision-exhausted",
            Error::Xi(XiError::RankDeficient { .. }) => "rank-deficient",
            Error::Xi(XiError::NotStable { .. }) => "not-stable",
            Error::Xi(XiError::SearchBoundExceeded { .. }) => "search-bound-exceeded",
            Error::Xi(XiError::Containment(_)) => "containment-violation",
            Error::Xi(XiError::SpecMismatch) => "spec-mismatch",
            Error::Xi(_) => "invalid-lattice",
            Error::Json(_) => "malformed-input",
        }
    }

    /// Module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Crystal(_) => "crystal",
            Error::LevelTorsion(_) => "level_torsion",
            Error::Semigroup(_) => "numsemigroup",
            Error::Bounds(_) => "bounds",
            Error::Witt(_) => "witt",
            Error::Xi(_) => "xilattice",
            Error::Json(_) => "json",
        }
    }
}
