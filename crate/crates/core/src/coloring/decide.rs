use std::collections::BTreeSet;

use thiserror::Error;

use super::brute::find_k_coloring;
use super::graph::Graph;
use super::result::ColoringResult;
use crate::polyring::{CertificateFailure, Field, GroebnerBasis};
use crate::reductions::{coloring_ideal, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorDecision {
    /// The retained subgraph, hence the whole graph, has no `k`-colouring.
    NotKColorable,
    ProperColoring(ColoringResult),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("removed set {set} is not independent: vertices {u} and {v} share an edge polynomial")]
    NotIndependent { set: usize, u: usize, v: usize },
    #[error("removed set {set} names vertex {vertex}, but the graph has {n}")]
    VertexOutOfRange { set: usize, vertex: usize, n: usize },
    #[error("basis does not certify the retained subsystem: {0}")]
    Certificate(CertificateFailure),
    #[error("basis ring does not match the colouring ideal")]
    RingMismatch,
    #[error("basis is not {{1}} yet the retained subgraph has no {0}-colouring")]
    Inconsistent(usize),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Decides `k`-colourability from a Strong c-Partial answer for the colouring
/// ideal of `g`: removed independent vertex sets `X_1 … X_b` and a Gröbner
/// basis of the generators that avoid them.
///
/// A basis of `{1}` proves the retained subgraph, and therefore `g`, is not
/// `k`-colourable. Otherwise the retained subgraph is coloured by exhaustive
/// search and each `X_i` gets its own extra colour, `k + b` colours in all.
pub fn cpartial_color_decide<F: Field>(
    g: &Graph,
    k: usize,
    removed: &[BTreeSet<usize>],
    basis: &GroebnerBasis<F>,
) -> Result<ColorDecision, DecideError> {
    let n = g.num_vertices();
    for (i, set) in removed.iter().enumerate() {
        if let Some(&v) = set.iter().find(|&&v| v >= n) {
            return Err(DecideError::VertexOutOfRange { set: i + 1, vertex: v + 1, n });
        }
        if let Some((u, v)) = g.edges().find(|(u, v)| set.contains(u) && set.contains(v)) {
            return Err(DecideError::NotIndependent { set: i + 1, u: u + 1, v: v + 1 });
        }
    }
    let spec = coloring_ideal::<F>(g, k, basis.ring().ctx().clone())?;
    if **basis.ring() != *spec.ring {
        return Err(DecideError::RingMismatch);
    }
    let gone: BTreeSet<usize> = removed.iter().flatten().copied().collect();
    let retained: Vec<_> = spec.polynomials.iter().filter(|p| p.variables().is_disjoint(&gone)).cloned().collect();
    let ours = GroebnerBasis::from_elements(&spec.ring, basis.elements().to_vec(), basis.order().clone())
        .map_err(|_| DecideError::RingMismatch)?;
    ours.certify(&retained).map_err(DecideError::Certificate)?;
    if ours.is_trivial() {
        return Ok(ColorDecision::NotKColorable);
    }
    let keep: Vec<usize> = (0..n).filter(|v| !gone.contains(v)).collect();
    let sub = g.induced(&keep);
    let sub_colors = find_k_coloring(&sub, k).ok_or(DecideError::Inconsistent(k))?;
    let mut colors = vec![None; n];
    for (i, &v) in keep.iter().enumerate() {
        colors[v] = Some(sub_colors[i]);
    }
    for (i, set) in removed.iter().enumerate() {
        for &v in set {
            colors[v].get_or_insert(k + i);
        }
    }
    let result = ColoringResult::new(g, colors, k + removed.len());
    debug_assert!(result.is_proper(g) && result.is_total());
    Ok(ColorDecision::ProperColoring(result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{buchberger, Budget, Rational, TermOrder};

    fn basis_for(g: &Graph, k: usize, removed: &[BTreeSet<usize>]) -> GroebnerBasis<Rational> {
        let spec = coloring_ideal::<Rational>(g, k, ()).unwrap();
        let gone: BTreeSet<usize> = removed.iter().flatten().copied().collect();
        let kept: Vec<_> = spec.polynomials.iter().filter(|p| p.variables().is_disjoint(&gone)).cloned().collect();
        let order = TermOrder::grevlex(g.num_vertices());
        if kept.is_empty() {
            GroebnerBasis::from_elements(&spec.ring, vec![], order).unwrap()
        } else {
            buchberger(&kept, &order, Budget::unlimited()).unwrap()
        }
    }

    #[test]
    fn triangle_not_two_colourable() {
        let g = Graph::complete(3);
        let b = basis_for(&g, 2, &[]);
        assert_eq!(cpartial_color_decide(&g, 2, &[], &b).unwrap(), ColorDecision::NotKColorable);
    }

    #[test]
    fn one_removed_vertex() {
        let g = Graph::complete(3);
        let removed = vec![BTreeSet::from([2])];
        let b = basis_for(&g, 2, &removed);
        let ColorDecision::ProperColoring(c) = cpartial_color_decide(&g, 2, &removed, &b).unwrap() else {
            panic!("expected a colouring");
        };
        assert!(c.is_proper(&g) && c.is_total());
        assert!(c.colors_used() <= 3);
    }

    #[test]
    fn dependent_set_refused() {
        let g = Graph::complete(3);
        let removed = vec![BTreeSet::from([0, 1])];
        let b = basis_for(&g, 2, &removed);
        assert!(matches!(
            cpartial_color_decide(&g, 2, &removed, &b),
            Err(DecideError::NotIndependent { set: 1, u: 1, v: 2 })
        ));
    }

    #[test]
    fn uncertified_basis_refused() {
        let g = Graph::path(3);
        let b = basis_for(&g, 2, &[BTreeSet::from([1])]);
        assert!(matches!(cpartial_color_decide(&g, 2, &[], &b), Err(DecideError::Certificate(_))));
    }
}
