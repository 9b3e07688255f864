//! Exact computation of quantum invariants of closed 3-manifolds.
//!
//! This crate evaluates the Kuperberg invariant of a closed orientable
//! 3-manifold, presented by a Heegaard diagram, over a finite-dimensional
//! semisimple and cosemisimple Hopf algebra given by structure constants.
//! Two independent evaluators are provided:
//!
//! * a state-sum evaluator over the abstract combinatorial "Heegaard code"
//!   ([`kuperberg`]), and
//! * a planar-network evaluator that builds a 2-box network from a planar
//!   Heegaard diagram and evaluates it by the loop rule ([`planar`]).
//!
//! Both produce the same number; the crate ships cross-checks, a
//! homomorphism-counting oracle for group algebras, and a module on
//! vertex/face tensors of directed graphs on the sphere related by a
//! Fourier transform ([`graphdual`]).
//!
//! All arithmetic is exact: arbitrary-precision rationals or prime fields,
//! extended by a formal square root δ of the algebra dimension. No floating
//! point is used anywhere.

pub mod error;
pub mod graphdual;
pub mod groups;
pub mod heegaard;
pub mod hopf;
pub mod kuperberg;
pub mod planar;
pub mod report;
pub mod scalars;
pub mod tensor;

pub use error::{Error, Result};
