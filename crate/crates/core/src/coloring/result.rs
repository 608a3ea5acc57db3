use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::graph::Graph;

/// A possibly partial colouring with colours `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringResult {
    pub colors: Vec<Option<usize>>,
    pub num_colors: usize,
    /// Edges whose endpoints are both coloured, with different colours.
    pub cut_edges: usize,
}

impl ColoringResult {
    pub fn new(g: &Graph, colors: Vec<Option<usize>>, num_colors: usize) -> Self {
        let cut_edges = count_cut(g, &colors);
        ColoringResult { colors, num_colors, cut_edges }
    }

    pub fn recount_cut(&self, g: &Graph) -> usize {
        count_cut(g, &self.colors)
    }

    pub fn num_colored(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// No edge joins two vertices of the same colour.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| match (self.colors[u], self.colors[v]) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_colors];
        for c in self.colors.iter().flatten() {
            sizes[*c] += 1;
        }
        sizes
    }

    /// Number of distinct colours actually used.
    pub fn colors_used(&self) -> usize {
        self.class_sizes().iter().filter(|&&s| s > 0).count()
    }

    /// Schema-1 JSON: 1-based vertex → colour map plus cut statistics.
    pub fn to_json(&self, g: &Graph) -> Value {
        let mut colors = Map::new();
        for (v, c) in self.colors.iter().enumerate() {
            colors.insert((v + 1).to_string(), c.map_or(Value::Null, |c| json!(c)));
        }
        let e = g.num_edges();
        let (num, den) = if e == 0 {
            (BigInt::from(1), BigInt::from(1))
        } else {
            let r = num_rational::BigRational::new(self.cut_edges.into(), e.into());
            (r.numer().clone(), r.denom().clone())
        };
        json!({
            "schema": 1,
            "num_colors": self.num_colors,
            "colors_used": self.colors_used(),
            "colored_vertices": self.num_colored(),
            "num_vertices": g.num_vertices(),
            "cut_edges": self.cut_edges,
            "num_edges": e,
            "cut_fraction": format!("{num}/{den}"),
            "colors": Value::Object(colors),
        })
    }
}

fn count_cut(g: &Graph, colors: &[Option<usize>]) -> usize {
    g.edges().filter(|&(u, v)| matches!((colors[u], colors[v]), (Some(a), Some(b)) if a != b)).count()
}
