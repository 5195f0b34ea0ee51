//! Exact computations with Gorenstein algebras over prime fields: modules,
//! Cohen-Macaulay approximations, complexes of projectives, morphism
//! categories, and the comparison between them.

pub mod algebra;
pub mod bridge;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod frobenius;
pub mod krull_schmidt;
pub mod linalg;
pub mod module;
pub mod mor;
pub mod spliced;
pub mod verify;

pub use algebra::{build_algebra, Algebra, Dimension, QuiverPresentation, Side};
pub use error::{Error, Result};
pub use linalg::{Fp, Matrix};
pub use module::{Module, ModuleMap, StableHom};
