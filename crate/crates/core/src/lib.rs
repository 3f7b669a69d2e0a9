//! Schur multipliers of finite p-groups.
//!
//! Groups are consistent power-commutator presentations ([`PcPresentation`]).
//! Multipliers come from three independent engines: the Blackburn–Evens
//! formula for class-2 groups, tails of the pc presentation (Hopf's
//! formula), and 2-cocycles with universal coefficients.

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod linalg;
pub mod multiplier;
pub mod oracle;
pub mod pcgroup;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{AbelianInvariants, FpMatrix, IntMatrix, Subspace};
pub use catalog::{CatalogEntry, Params};
pub use multiplier::{Method, MultiplierResult};
pub use pcgroup::{GroupElement, GroupTable, PcPresentation, SubgroupDescriptor};
pub use verify::{VerificationReport, VerifyOptions};
