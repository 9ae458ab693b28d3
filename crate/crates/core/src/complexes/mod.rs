//! Bounded complexes of projectives and the triangulated structure on them.

mod complex;
mod derived;
mod dsl;
mod elem;
mod hom;

pub use complex::{AlgMatrix, ChainMap, PerfComplex};
pub use derived::{cohomology_dims, cohomology_module, dualize, projective_resolution, serre, serre_inv};
pub use dsl::{ObjExpr, ObjKind};
pub(crate) use dsl::{parse_object, Cursor};
pub use elem::AlgElem;
pub use hom::{cocycles, hom_complex, hom_dims, HomProfile};
