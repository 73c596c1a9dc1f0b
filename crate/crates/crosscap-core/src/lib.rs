//! Symbolic kernel for crosscap-transposition generating sets of mapping
//! class groups of nonorientable surfaces.
//!
//! The kernel has three layers:
//!
//! * a combinatorial surface model (canonical curves on a genus-`g`
//!   nonorientable surface, mod-2 intersection data, a curated disjointness
//!   fixture table),
//! * a Z/2-homology representation in which Dehn twists act as GF(2)
//!   transvections and crosscap slides act trivially, used as a machine
//!   shadow for every word identity and curve-mapping claim,
//! * a free-group word engine with a relation catalog and an LCF-style
//!   certificate format: every derivation is a replayable list of elementary
//!   rewrites, each justified by a catalog relation, a transport instance, a
//!   macro definition, or a free insertion/cancellation, together with the
//!   geometric axioms it consumed.
//!
//! The certificate builders produce the three headline results at desk
//! scale: the expression of the twist `a1` over ten crosscap transpositions,
//! the explicit `g+2`-element transposition generating set, and normal
//! generation by the single transposition `u1`.

pub mod abelian;
pub mod builders;
pub mod catalog;
pub mod certificate;
mod error;
pub mod homology;
pub mod mapping;
pub mod snf;
pub mod surface;
pub mod word;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
