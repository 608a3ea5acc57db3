use std::sync::Arc;

use super::encode::EncodedSystem;
use super::ReductionError;
use crate::polyring::{Field, Polynomial, Ring};

pub const LINK_VARIABLE: &str = "x_link";

/// `c + 1` disjoint copies of an encoded system plus the linking polynomial
/// `x_link + Σ x_i_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPartialSystem<F: Field> {
    pub ring: Arc<Ring<F>>,
    /// Copies in order, each in source order, then the linking polynomial.
    pub polynomials: Vec<Polynomial<F>>,
    pub linking_variable: String,
    /// `(copy, source polynomial)` for each entry; `None` for the linking one.
    pub origin: Vec<Option<(usize, usize)>>,
    pub copies: usize,
    source_vars: usize,
}

impl<F: Field> CPartialSystem<F> {
    /// Ring index of variable `j` (0-based) in copy `i` (0-based).
    pub fn copy_variable(&self, copy: usize, j: usize) -> usize {
        1 + copy * self.source_vars + j
    }

    pub fn copy_variables(&self, copy: usize) -> std::ops::Range<usize> {
        let start = self.copy_variable(copy, 0);
        start..start + self.source_vars
    }

    pub fn linking_index(&self) -> usize {
        0
    }
}

/// Builds `{g} ∪ F_1 ∪ … ∪ F_{c+1}`. Copy `i` renames `x_j` to `x_i_j`; the
/// linking variable comes first in the variable order.
pub fn strong_cpartial_construct<F: Field>(
    sys: &EncodedSystem<F>,
    c: usize,
) -> Result<CPartialSystem<F>, ReductionError> {
    if c == 0 {
        return Err(ReductionError::ZeroCopies);
    }
    let n = sys.ring.num_vars();
    let copies = c + 1;
    let mut names = vec![LINK_VARIABLE.to_string()];
    for i in 1..=copies {
        for j in 1..=n {
            names.push(format!("x_{i}_{j}"));
        }
    }
    let ring = Ring::new(names, sys.ring.ctx().clone()).expect("generated names are distinct");
    let mut polynomials = Vec::with_capacity(copies * sys.len() + 1);
    let mut origin = Vec::with_capacity(copies * sys.len() + 1);
    for i in 0..copies {
        let var_map: Vec<usize> = (0..n).map(|j| 1 + i * n + j).collect();
        for (k, f) in sys.polynomials.iter().enumerate() {
            polynomials.push(f.rename_into(&ring, &var_map).expect("renaming stays in range"));
            origin.push(Some((i, k)));
        }
    }
    let g = (0..ring.num_vars()).fold(Polynomial::zero(&ring), |acc, v| &acc + &Polynomial::var(&ring, v));
    polynomials.push(g);
    origin.push(None);
    Ok(CPartialSystem {
        ring,
        polynomials,
        linking_variable: LINK_VARIABLE.to_string(),
        origin,
        copies,
        source_vars: n,
    })
}
