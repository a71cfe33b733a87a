//! Cartan and Iwasawa machinery for semisimple algebras: validated Cartan
//! involutions, maximal abelian subspaces, restricted roots, Borel and
//! minimal parabolic subalgebras, and the Appendix-style structural checks
//! on Borel nilradicals.

mod appendix_c;
pub mod builtin;
mod cartan;
mod iwasawa;
mod report;
mod roots;

pub use appendix_c::{
    verify_appendix_c, AppendixCReport, BracketCheck, CentralizerCheck, NormalizerCheck, SpanCheck,
    CENTRALIZER_MARGIN,
};
pub use builtin::{builtin_algebra, parse_builtin, Builtin};
pub use cartan::{validate_cartan, CartanData};
pub use iwasawa::{iwasawa, iwasawa_assemble, IwasawaData};
pub use report::{AppendixCFlags, DecompositionDims, DecompositionReport, RootSummary};
pub use roots::{maximal_abelian_subspace, restricted_roots, RestrictedRoot, RootDecomposition};
