//! Finite p-groups via power-commutator presentations.

pub mod construct;
pub mod dsl;
pub mod enumerate;
pub mod presentation;
pub mod section;

pub use construct::{
    automorphisms, central_product, direct_product, involution_classes, quotient_by_central, quotient_by_subgroup,
    semidirect_by_cyclic, semidirect_elem_abelian, Automorphism, InvolutionClass,
};
pub use dsl::{parse_presentation, to_dsl};
pub use enumerate::{GroupTable, SubgroupDescriptor, DEFAULT_ENUMERATION_CAP};
pub use presentation::{format_word, GroupElement, OverlapEval, PcBuilder, PcPresentation, RelationKind, Word};
pub use section::ElementarySection;
