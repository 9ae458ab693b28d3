//! Finite acyclic quivers, their path algebras and representations.

mod module;
mod path;
mod quiver;

pub use module::{ModuleRep, RepComplex};
pub use path::{Path, MAX_PATH_LEN};
pub use quiver::{builtin, load_quiver, Arrow, PathAlgebra, Quiver};

pub use crate::complexes::projective_resolution;
