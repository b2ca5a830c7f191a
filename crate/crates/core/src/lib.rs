//! Exact finite-dimensional models of the complexes around Hochschild and
//! Gerstenhaber–Schack cohomology of polynomial algebras: cell complexes of
//! simplices and permutahedra, Koszul, bar and cobar complexes,
//! polydifferential and full Hochschild and GS complexes, and the
//! Gerstenhaber and Schouten brackets.
//!
//! Everything is generic over a [`scalar::Scalar`]; [`Rational`] is the
//! default.

pub mod barcobar;
pub mod brackets;
pub mod cells;
pub mod chain;
pub mod error;
pub mod gs;
pub mod hoch;
pub mod polyalg;
pub mod ratlin;
pub mod scalar;
pub mod serial;
pub mod suite;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type Matrix = ratlin::SparseMatrix<Rational>;
pub type Complex = chain::FinChainComplex<Rational>;
pub type BracketCochain = brackets::Cochain<Rational>;
pub type Polyvector = brackets::PolyVector<Rational>;
