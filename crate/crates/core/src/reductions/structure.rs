use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::polyring::{Field, Polynomial, Ring};

/// One node per ring variable and one clique per polynomial. Cliques may
/// share edges, so the edge list is a multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureGraph {
    pub node_names: Vec<String>,
    /// `cliques[i]`: variables occurring in polynomial `i`, ascending.
    pub cliques: Vec<Vec<usize>>,
}

pub fn build_structure_graph<F: Field>(ring: &Ring<F>, polys: &[Polynomial<F>]) -> StructureGraph {
    StructureGraph {
        node_names: ring.var_names().to_vec(),
        cliques: polys.iter().map(|p| p.variables().into_iter().collect()).collect(),
    }
}

impl StructureGraph {
    pub fn num_nodes(&self) -> usize {
        self.node_names.len()
    }

    /// `(u, v, polynomial)` with `u < v`, one entry per clique edge.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, c) in self.cliques.iter().enumerate() {
            for (a, &u) in c.iter().enumerate() {
                for &v in &c[a + 1..] {
                    out.push((u, v, i));
                }
            }
        }
        out
    }

    /// Nodes that form a single-variable clique.
    pub fn flagged_nodes(&self) -> BTreeSet<usize> {
        self.cliques.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        !self.cliques.iter().any(|c| c.len() > 1 && c.contains(&v))
    }

    /// Number of cliques that are triangles.
    pub fn triangle_count(&self) -> usize {
        self.cliques.iter().filter(|c| c.len() == 3).count()
    }

    /// Graphviz rendering; each edge is labelled with its polynomial.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph structure {\n");
        let flagged = self.flagged_nodes();
        for (v, name) in self.node_names.iter().enumerate() {
            if flagged.contains(&v) {
                writeln!(out, "  \"{name}\" [shape=doublecircle];").unwrap();
            } else {
                writeln!(out, "  \"{name}\";").unwrap();
            }
        }
        for (u, v, i) in self.edges() {
            writeln!(out, "  \"{}\" -- \"{}\" [label=\"f{}\"];", self.node_names[u], self.node_names[v], i + 1)
                .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, Rational};
    use crate::reductions::encode_3sat;
    use crate::satcore::generate::random_3cnf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn encoder_output_is_triangles() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_3cnf(&mut rng, 9, 14);
        let sys = encode_3sat::<Rational>(&f, ()).unwrap();
        let g = build_structure_graph(&sys.ring, &sys.polynomials);
        assert_eq!(g.triangle_count(), 14);
        assert_eq!(g.edges().len(), 3 * 14);
        assert!(g.cliques.iter().all(|c| c.len() <= 3));
    }

    #[test]
    fn univariate_and_parallel() {
        let ring = Ring::<Rational>::numbered("x", 3, ());
        let p = |t| parse_polynomial(&ring, t).unwrap();
        let g = build_structure_graph(&ring, &[p("x1^2 - x1")]);
        assert!(g.edges().is_empty());
        assert_eq!(g.flagged_nodes(), [0].into_iter().collect());
        assert!(g.is_isolated(0));
        let g = build_structure_graph(&ring, &[p("x1*x2"), p("x1 + x2 + 1")]);
        assert_eq!(g.edges(), vec![(0, 1, 0), (0, 1, 1)]);
        assert!(g.to_dot().contains("\"x1\" -- \"x2\" [label=\"f2\"]"));
    }
}
