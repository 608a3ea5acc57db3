use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use super::brute::partial_three_coloring;
use super::graph::Graph;
use super::result::ColoringResult;
use crate::polyring::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IterateError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    BadEpsilon(Rational),
    #[error("round {round}: oracle answered for {got} vertices, expected {expected}")]
    WrongLength { round: usize, got: usize, expected: usize },
    #[error("round {round}: oracle used colour {color}, only 0, 1, 2 allowed")]
    ColorOutOfRange { round: usize, color: usize },
    #[error("round {round}: oracle coloured {colored} of {remaining} vertices, below the promised fraction")]
    ContractBreach { round: usize, colored: usize, remaining: usize },
    #[error("round {round}: oracle colouring is improper on edge {u}-{v}")]
    Improper { round: usize, u: usize, v: usize },
    #[error("round {round}: {remaining} vertices left, above (1-ε)^t·n")]
    BoundViolated { round: usize, remaining: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationReport {
    pub coloring: ColoringResult,
    pub rounds: usize,
    /// Uncoloured vertices after each round.
    pub remaining: Vec<usize>,
}

/// Colours a graph by repeatedly asking `oracle` for a proper 3-colouring of
/// at least an ε fraction of the still-uncoloured induced subgraph, spending
/// three fresh colours per round.
///
/// The oracle sees the induced subgraph relabelled `0..r` in increasing
/// original vertex order and returns one optional colour in `0..3` per vertex.
pub fn iterate_vertex_oracle<O>(g: &Graph, mut oracle: O, epsilon: &Rational) -> Result<IterationReport, IterateError>
where
    O: FnMut(&Graph) -> Vec<Option<usize>>,
{
    if !epsilon.is_positive() || *epsilon > Rational::one() {
        return Err(IterateError::BadEpsilon(epsilon.clone()));
    }
    let n = g.num_vertices();
    let (num, den) = (epsilon.numer().clone(), epsilon.denom().clone());
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut remaining_log = Vec::new();
    let mut round = 0;
    loop {
        let rest: Vec<usize> = (0..n).filter(|&v| colors[v].is_none()).collect();
        if rest.is_empty() {
            break;
        }
        round += 1;
        let h = g.induced(&rest);
        let answer = oracle(&h);
        if answer.len() != rest.len() {
            return Err(IterateError::WrongLength { round, got: answer.len(), expected: rest.len() });
        }
        if let Some(&c) = answer.iter().flatten().find(|&&c| c >= 3) {
            return Err(IterateError::ColorOutOfRange { round, color: c });
        }
        for (a, b) in h.edges() {
            if answer[a].is_some() && answer[a] == answer[b] {
                return Err(IterateError::Improper { round, u: rest[a] + 1, v: rest[b] + 1 });
            }
        }
        let colored = answer.iter().flatten().count();
        // colored ≥ ε·r  ⇔  colored·den ≥ num·r
        if BigInt::from(colored) * &den < &num * BigInt::from(rest.len()) {
            return Err(IterateError::ContractBreach { round, colored, remaining: rest.len() });
        }
        for (i, c) in answer.iter().enumerate() {
            if let Some(c) = c {
                colors[rest[i]] = Some(3 * (round - 1) + c);
            }
        }
        let left = rest.len() - colored;
        // left ≤ (1-ε)^t·n  ⇔  left·den^t ≤ (den-num)^t·n
        let t = round as u32;
        if BigInt::from(left) * den.pow(t) > (&den - &num).pow(t) * BigInt::from(n) {
            return Err(IterateError::BoundViolated { round, remaining: left });
        }
        remaining_log.push(left);
    }
    let coloring = ColoringResult::new(g, colors, 3 * round);
    Ok(IterationReport { coloring, rounds: round, remaining: remaining_log })
}

/// Oracle by exhaustive search: properly 3-colours `⌊ε·r⌋ + 1` vertices
/// (capped at `r`) of an `r`-vertex input, or all it can if fewer.
pub fn subset_oracle(epsilon: Rational) -> impl FnMut(&Graph) -> Vec<Option<usize>> {
    move |h: &Graph| {
        let r = h.num_vertices();
        let want = (&epsilon * Rational::from_integer(r.into())).floor().to_integer().to_usize().unwrap_or(0) + 1;
        let mut target = want.min(r);
        loop {
            if let Some(c) = partial_three_coloring(h, target) {
                return c;
            }
            target -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::find_k_coloring;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exact_oracle_one_round() {
        let g = Graph::cycle(6);
        let rep = iterate_vertex_oracle(
            &g,
            |h: &Graph| find_k_coloring(h, 3).unwrap().into_iter().map(Some).collect(),
            &q(1, 1),
        )
        .unwrap();
        assert_eq!(rep.rounds, 1);
        assert!(rep.coloring.colors_used() <= 3);
        assert!(rep.coloring.is_proper(&g) && rep.coloring.is_total());
    }

    #[test]
    fn path_of_eight_half_oracle() {
        let g = Graph::path(8);
        let rep = iterate_vertex_oracle(&g, subset_oracle(q(1, 2)), &q(1, 2)).unwrap();
        assert!(rep.rounds <= 3, "{rep:?}");
        assert!(rep.coloring.colors_used() <= 9);
        assert!(rep.coloring.is_proper(&g) && rep.coloring.is_total());
        assert_eq!(rep.remaining, vec![3, 1, 0]);
    }

    #[test]
    fn empty_graph_needs_no_rounds() {
        let rep = iterate_vertex_oracle(&Graph::empty(0), |_: &Graph| Vec::new(), &q(1, 2)).unwrap();
        assert_eq!(rep.rounds, 0);
    }

    #[test]
    fn contract_checks() {
        let g = Graph::path(4);
        let lazy = |h: &Graph| {
            let mut c = vec![None; h.num_vertices()];
            c[0] = Some(0);
            c
        };
        assert!(matches!(iterate_vertex_oracle(&g, lazy, &q(1, 2)), Err(IterateError::ContractBreach { .. })));
        let bad = |h: &Graph| vec![Some(0); h.num_vertices()];
        assert!(matches!(iterate_vertex_oracle(&g, bad, &q(1, 2)), Err(IterateError::Improper { .. })));
    }
}
