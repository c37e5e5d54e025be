//! Exact computations with quadratic forms, Witt classes and
//! Witt-correspondences between finite algebras `k[t]/(f)`.

pub mod algebra;
pub mod cli;
pub mod correspondence;
pub mod error;
pub mod euler;
pub mod field;
pub mod json;
pub mod matrix;
pub mod numtheory;
pub mod poly;
pub mod quadratic;
pub mod random;
pub mod rigidity;
pub mod selfcheck;
pub mod ring;
pub mod witt;

pub use algebra::FiniteAlgebra;
pub use correspondence::{Correspondence, Violation};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use matrix::Matrix;
pub use poly::Poly;
pub use quadratic::QuadSpace;
pub use witt::{witt_equal, witt_invariants, Place, WittInvariants};
