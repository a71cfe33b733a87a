//! Lie algebras as structure constants: brackets, Killing form, structural
//! predicates, centralizers and normalizers, derivations, nilradical and
//! simple-ideal decomposition.

mod algebra;
mod json;
mod ops;
mod structure;

pub use algebra::{LieAlgebraData, LinearMapData, StructureInvariants};
pub use json::{BracketEntry, LieAlgebraJson};
pub use ops::{Derivations, SubspaceOperator};
