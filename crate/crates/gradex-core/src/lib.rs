//! gradex: exact symbolic computation for group-graded quantum-commutative
//! extension algebras.
//!
//! The engine constructs extension algebras twisted by a commutation factor
//! b(g, h) = (-1)^{g^T Sigma h} q^{g^T Omega h} on an abelian grading group
//! (Z^N or Z_n^N), computes canonical normal forms under the exchange
//! relations x^a_i x^b_j = b^{ij} x^b_j x^a_i, verifies the Hopf-module and
//! coquasitriangular axioms, decides the Galois / strong-grading condition by
//! exact linear algebra, and classifies configurations as nondegenerate
//! (composite fermion) or degenerate (generalized Pauli exclusion, composite
//! boson).
//!
//! All arithmetic is exact: rationals with arbitrary-precision integers, and
//! `q` either formal or a primitive root of unity in a cyclotomic field.

pub mod algebra;
pub mod bicharacter;
pub mod error;
pub mod galois;
pub mod group;
pub mod hopf;
pub mod realization;
pub mod scalar;
pub mod specfile;

pub use algebra::{AlgebraSpec, BaseAlgebraSpec, Element, Letter, Monomial};
pub use bicharacter::{CommutationFactor, ValidationReport};
pub use error::{Error, Result};
pub use group::GroupElement;
pub use realization::{ClassificationReport, FluxLabel, TensorWord, Verdict};
pub use scalar::{QSpec, Scalar};
pub use specfile::SpecDocument;
