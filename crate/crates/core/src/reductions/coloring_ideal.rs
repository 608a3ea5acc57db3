use std::sync::Arc;

use super::ReductionError;
use crate::coloring::Graph;
use crate::polyring::{Field, Monomial, Polynomial, Ring};

/// Node polynomials `x_v^k - 1` followed by edge polynomials
/// `Σ_{d<k} x_u^d x_v^(k-1-d)`, in edge order. Vertex `v` is variable `x{v+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringIdealSpec<F: Field> {
    pub graph: Graph,
    pub k: usize,
    pub ring: Arc<Ring<F>>,
    pub polynomials: Vec<Polynomial<F>>,
}

impl<F: Field> ColoringIdealSpec<F> {
    pub fn node_polynomials(&self) -> &[Polynomial<F>] {
        &self.polynomials[..self.graph.num_vertices()]
    }

    pub fn edge_polynomials(&self) -> &[Polynomial<F>] {
        &self.polynomials[self.graph.num_vertices()..]
    }
}

pub fn coloring_ideal<F: Field>(g: &Graph, k: usize, ctx: F::Ctx) -> Result<ColoringIdealSpec<F>, ReductionError> {
    if k == 0 {
        return Err(ReductionError::ZeroColors);
    }
    let ring: Arc<Ring<F>> = Ring::numbered("x", g.num_vertices(), ctx);
    let k32 = k as u32;
    let one = ring.one_el();
    let mut polynomials = Vec::with_capacity(g.num_vertices() + g.num_edges());
    for v in 0..g.num_vertices() {
        let node: Polynomial<F> =
            &Polynomial::term(&ring, one.clone(), Monomial::var(v, k32)) - &Polynomial::one(&ring);
        polynomials.push(node);
    }
    for (u, v) in g.edges() {
        let terms = (0..k32).map(|d| (Monomial::from_pairs([(u, d), (v, k32 - 1 - d)]), one.clone()));
        polynomials.push(Polynomial::from_terms(&ring, terms).expect("vertices in range"));
    }
    Ok(ColoringIdealSpec { graph: g.clone(), k, ring, polynomials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{buchberger, parse_polynomial, Budget, Rational, TermOrder};

    #[test]
    fn single_vertex() {
        let s = coloring_ideal::<Rational>(&Graph::empty(1), 2, ()).unwrap();
        assert_eq!(s.polynomials, vec![parse_polynomial(&s.ring, "x1^2 - 1").unwrap()]);
    }

    #[test]
    fn single_edge_two_colours() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let s = coloring_ideal::<Rational>(&g, 2, ()).unwrap();
        let p = |t| parse_polynomial(&s.ring, t).unwrap();
        assert_eq!(s.polynomials, vec![p("x1^2 - 1"), p("x2^2 - 1"), p("x1 + x2")]);
        let gb = buchberger(&s.polynomials, &TermOrder::lex(2), Budget::unlimited()).unwrap();
        // Hand run: x1 + x2 and x2^2 - 1.
        assert_eq!(gb.elements(), &[p("x1 + x2"), p("x2^2 - 1")]);
    }

    #[test]
    fn triangle() {
        let g = Graph::complete(3);
        let two = coloring_ideal::<Rational>(&g, 2, ()).unwrap();
        assert_eq!(two.polynomials.len(), 6);
        assert!(two.edge_polynomials().iter().all(|p| p.variables().len() == 2));
        let gb = buchberger(&two.polynomials, &TermOrder::grevlex(3), Budget::unlimited()).unwrap();
        assert!(gb.is_trivial());
        let three = coloring_ideal::<Rational>(&g, 3, ()).unwrap();
        let gb = buchberger(&three.polynomials, &TermOrder::grevlex(3), Budget::unlimited()).unwrap();
        assert!(!gb.is_trivial());
    }
}
