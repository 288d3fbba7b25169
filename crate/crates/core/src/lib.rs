//! Exact homology of A∞- and L∞-algebras.
//!
//! Structures are stored as cochains on cofree coalgebras and extended to
//! coderivations on demand. On top of that sit the cyclic complex of an
//! A∞-algebra, the Chevalley–Eilenberg complex of an L∞-algebra (optionally
//! reduced by coinvariants), matrix constructions, and a harness comparing
//! the homology of `gl_n(A)` with the exterior algebra on shifted cyclic
//! homology.

pub mod ainfty;
pub mod coalgebra;
pub mod constructions;
pub mod document;
pub mod fixtures;
pub mod graded;
pub mod homology;
pub mod linalg;
pub mod linfty;
pub mod lqt;
pub mod scalar;

pub use scalar::Scalar;
