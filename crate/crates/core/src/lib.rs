//! Exact computational algebra for the robust hardness of Gröbner basis
//! computation: a from-scratch Buchberger engine, 3SAT ↔ polynomial-system
//! reductions, hardness gadgets, variety-point extraction, derandomized
//! MAX-3SAT rounding and fractional graph colouring.

pub mod coloring;
pub mod extraction;
pub mod polyring;
pub mod reductions;
pub mod satcore;

pub use polyring::{Field, Gf, Rational};

/// Polynomials with rational coefficients.
pub type QPolynomial = polyring::Polynomial<Rational>;
/// Polynomials over a prime field.
pub type GfPolynomial = polyring::Polynomial<Gf>;
pub type QRing = polyring::Ring<Rational>;
pub type GfRing = polyring::Ring<Gf>;
pub type QBasis = polyring::GroebnerBasis<Rational>;
pub type GfBasis = polyring::GroebnerBasis<Gf>;
