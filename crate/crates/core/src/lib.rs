//! Semi-projective DGAs over idempotent rings and F2.
//!
//! Algebraic transformations (morsification, idempotent expansion, ordered
//! quotients, elimination, action truncation), homology and mapping cones,
//! the short resolution of a semi-free DGA, dg-modules with augmentation
//! search and RHom, and the cap-algebra construction used to compare RHom
//! against a Cthulhu-type complex.

pub mod algebra;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod registry;
pub mod resolution;
pub mod surgery;
pub mod transforms;

pub use algebra::{Dga, DgaBuilder, Element, Generator, Grading, IdempotentRing, Word};
pub use error::{Error, Result};
