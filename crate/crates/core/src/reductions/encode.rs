use std::sync::Arc;

use super::ReductionError;
use crate::polyring::{Field, Polynomial, Ring};
use crate::satcore::{CnfFormula, Literal};

/// Polynomial system obtained from a 3-CNF formula, one polynomial per clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedSystem<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub polynomials: Vec<Polynomial<F>>,
    /// `clause_map[i]` is the (0-based) clause behind polynomial `i`.
    pub clause_map: Vec<usize>,
    /// `var_map[j]` is the SAT variable (1-based) behind ring variable `j`.
    pub var_map: Vec<usize>,
}

impl<F: Field> EncodedSystem<F> {
    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }

    /// Ring variable holding SAT variable `y_var`.
    pub fn ring_variable(&self, var: usize) -> Option<usize> {
        self.var_map.iter().position(|&v| v == var)
    }
}

/// `x_j - 1` for `y_j`, `x_j` for `¬y_j`: zero exactly when the literal holds.
pub fn literal_factor<F: Field>(ring: &Arc<Ring<F>>, lit: Literal) -> Polynomial<F> {
    let x = Polynomial::var(ring, lit.var - 1);
    if lit.positive {
        &x - &Polynomial::one(ring)
    } else {
        x
    }
}

fn encode<F: Field>(phi: &CnfFormula, ctx: F::Ctx) -> EncodedSystem<F> {
    let ring = Ring::numbered("x", phi.num_vars(), ctx);
    let polynomials = phi
        .clauses()
        .iter()
        .map(|c| c.literals().iter().fold(Polynomial::one(&ring), |acc, &l| &acc * &literal_factor(&ring, l)))
        .collect();
    EncodedSystem {
        polynomials,
        clause_map: (0..phi.num_clauses()).collect(),
        var_map: (1..=phi.num_vars()).collect(),
        ring,
    }
}

/// One product of literal factors per clause. Tautological clauses are
/// refused.
pub fn encode_3sat<F: Field>(phi: &CnfFormula, ctx: F::Ctx) -> Result<EncodedSystem<F>, ReductionError> {
    if let Some(i) = phi.clauses().iter().position(|c| c.is_trivial()) {
        return Err(ReductionError::TrivialClause(i + 1));
    }
    Ok(encode(phi, ctx))
}

/// Encoder restricted to non-mixed formulas: `x_i x_j x_k` for negative
/// clauses and `(x_i - 1)(x_j - 1)(x_k - 1)` for positive ones.
pub fn encode_nonmixed<F: Field>(phi: &CnfFormula, ctx: F::Ctx) -> Result<EncodedSystem<F>, ReductionError> {
    if let Some(i) = phi.clauses().iter().position(|c| !c.is_pure()) {
        return Err(ReductionError::MixedClause(i + 1));
    }
    Ok(encode(phi, ctx))
}
