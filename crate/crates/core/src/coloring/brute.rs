//! Exhaustive colouring searches for desk-scale graphs.

use super::graph::Graph;

fn extend(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>, used: usize) -> bool {
    if v == g.num_vertices() {
        return true;
    }
    // Colours above `used` are interchangeable; try only the first of them.
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
            colors[v] = c;
            if extend(g, k, v + 1, colors, used.max(c + 1)) {
                return true;
            }
        }
    }
    false
}

/// A proper colouring with colours `0..k`, if one exists.
pub fn find_k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut colors = vec![usize::MAX; n];
    extend(g, k, 0, &mut colors, 0).then_some(colors)
}

pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    find_k_coloring(g, k).is_some()
}

pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.num_vertices()).find(|&k| is_k_colorable(g, k)).expect("n colours always suffice")
}

struct Search<'a> {
    g: &'a Graph,
    target: usize,
    colors: Vec<Option<usize>>,
}

impl Search<'_> {
    fn go(&mut self, v: usize, colored: usize) -> bool {
        if colored >= self.target {
            return true;
        }
        let n = self.g.num_vertices();
        if v == n || colored + (n - v) < self.target {
            return false;
        }
        for c in 0..3 {
            let ok = self.g.neighbors(v).iter().all(|&u| u >= v || self.colors[u] != Some(c));
            if ok {
                self.colors[v] = Some(c);
                if self.go(v + 1, colored + 1) {
                    return true;
                }
            }
        }
        self.colors[v] = None;
        self.go(v + 1, colored)
    }
}

/// A proper 3-colouring of some induced subgraph on at least `target`
/// vertices, found by exhaustive search, preferring low-index vertices.
pub fn partial_three_coloring(g: &Graph, target: usize) -> Option<Vec<Option<usize>>> {
    let mut s = Search { g, target, colors: vec![None; g.num_vertices()] };
    if !s.go(0, 0) {
        return None;
    }
    // Anything after the point where the target was met stays uncoloured.
    Some(s.colors)
}
