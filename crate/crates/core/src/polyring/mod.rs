//! Exact multivariate polynomial arithmetic over Q and GF(p), term orders,
//! multivariate division and Buchberger's algorithm.

mod division;
mod engine;
pub mod field;
mod groebner;
mod monomial;
mod poly;
pub mod text;

pub use division::{divide, reduce, s_polynomial, Division};
pub use field::{Field, FieldError, FieldTag, Gf, PrimeModulus, Rational};
pub use groebner::{
    buchberger, buchberger_with, eliminate, is_trivial_ideal, BuchbergerOptions, Budget, CertificateFailure, Computed,
    EliminationError, GroebnerBasis, GroebnerError, GroebnerStats, PairSelection, PartialState,
};
pub use monomial::{Monomial, OrderError, OrderKind, TermOrder};
pub use poly::{poly_arith, ArithOp, PolyError, Polynomial, Ring};
pub use text::{parse_polynomial, parse_system, parse_system_in, write_system, AnySystem, ParseError, PolySystem};
