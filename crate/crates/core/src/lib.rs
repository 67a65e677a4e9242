//! Certification of entanglement and Bell nonlocality in infinite
//! translation-invariant (TI) 1D chains from nearest- and
//! next-to-nearest-neighbor data.
//!
//! The crate is organized around four pillars:
//!
//! * [`marginals`] — the classical TI marginal problem: consistency,
//!   recursive extension, and the domino-loop characterization of the
//!   extreme points of the TI marginal polytope.
//! * [`witness`] + [`symmetrize`] — linear entanglement witnesses for TI
//!   qubit chains, the extremal states saturating them, PPT analysis, and
//!   the violation-to-block-size bound.
//! * [`bell`] — the classical TI Bell polytope for two-input/two-output
//!   chains: vertex enumeration, local bounds, facet verification and
//!   enumeration, symmetry reduction, and tripartite-locality LPs.
//! * [`quantum`] — quantum values of TI Bell inequalities via 3-local
//!   ring Hamiltonians, an iterative extremal eigensolver, and a see-saw
//!   optimization with a cyclic classical register.

pub mod bell;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod marginals;
pub mod quantum;
pub mod symmetrize;
pub mod witness;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
