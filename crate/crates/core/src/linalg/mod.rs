//! Exact linear algebra: GF(p), Z/p^e, and the integers.

pub mod abelian;
pub mod fp;
pub mod int;
pub mod zpe;

pub use abelian::{abelian_quotient_invariants, AbelianInvariants};
pub use fp::{is_prime, FpMatrix, SpanBuilder, Subspace};
pub use int::{smith_normal_form, IntMatrix};
