//! Exact computer algebra for the genus-two generalization of the A1
//! spherical DAHA: genus-two Macdonald polynomials, the six-generator
//! algebra of knot operators realized as q-difference operators, and
//! mechanical verification of the mapping class group relations.

pub mod error;
pub mod kfield;
pub mod macdonald;
pub mod mcg;
pub mod xring;
pub mod poly;
pub mod psi;
pub mod qdiff;

pub use error::{Error, Result};
pub use kfield::{qt_bracket, IntPoly2, KScalar};
pub use psi::{PsiTable, Triple};
