//! Exact checkers for exchange axioms of set functions on small ground
//! sets, with extended-real values, effective-domain family axioms,
//! cardinality lifts, sampled conjugate duality bounds, instance
//! generators, and a cross-check suite tying the axiom variants
//! together.
//!
//! Functions live on ground sets of at most 24 elements as dense value
//! tables indexed by subset bitmask, so every checker is a complete
//! sweep rather than a sampler; each failed check carries a replayable
//! witness. The `dca` binary exposes the checkers, the suite, and the
//! generators on JSON documents.

pub mod axioms;
pub mod duality;
pub mod error;
pub mod family;
pub mod func;
pub mod generators;
pub mod ground;
pub mod io;
pub mod suite;
pub mod value;

pub use axioms::{check_axiom, check_axiom_with_cap, AxiomId, CheckReport, Witness};
pub use error::{DcaError, Result};
pub use family::{check_family, FamilyAxiomId, SetFamily};
pub use func::{PriceVector, SetFunction};
pub use ground::{GroundSet, SubsetMask};
pub use value::ExtValue;
