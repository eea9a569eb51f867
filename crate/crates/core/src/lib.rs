//! Exact computations around Coulomb branches of 3d N=4 gauge theories.
//!
//! * [`lattice`]: integer matrices, Smith/Hermite normal forms, dual tori.
//! * [`difference`]: ħ-difference operators on a torus Lie algebra.
//! * [`abelian`]: monopole-basis Coulomb branch algebras of torus gauge theories.
//! * [`hypertoric`]: Higgs-side Hamiltonian reduction and Coulomb/Higgs comparison.
//! * [`kac_moody`]: symmetrizable Kac-Moody root and weight combinatorics.
//! * [`quiver`]: quiver gauge theories and their slice parameters.

pub mod abelian;
pub mod cancel;
pub mod difference;
pub mod error;
pub mod graded;
pub mod hypertoric;
pub mod kac_moody;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod quiver;

pub use cancel::CancelToken;
pub use error::{Error, Result};
pub use graded::{GradedDims, HalfInt};
pub use lattice::{Character, Coweight, IntMatrix};
pub use poly::{parse_poly, Poly, Rational};
