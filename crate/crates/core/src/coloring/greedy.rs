use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::graph::Graph;
use super::result::ColoringResult;

/// `0..n` shuffled by a seeded generator.
pub fn shuffled_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Places each vertex, in `order` (default `0..n`), into the class with the
/// fewest already-placed neighbours, lowest class index on ties. Also
/// returns, per vertex, that neighbour count at placement time.
pub fn greedy_with_trace(g: &Graph, k: usize, order: Option<&[usize]>) -> (ColoringResult, Vec<usize>) {
    assert!(k >= 1, "need at least one colour");
    let n = g.num_vertices();
    let default: Vec<usize>;
    let order = match order {
        Some(o) => o,
        None => {
            default = (0..n).collect();
            &default
        }
    };
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut within = vec![0; n];
    let mut counts = vec![0usize; k];
    for &v in order {
        for &u in g.neighbors(v) {
            if let Some(c) = colors[u] {
                counts[c] += 1;
            }
        }
        let (best, &cnt) = counts.iter().enumerate().min_by_key(|&(i, c)| (*c, i)).expect("k >= 1");
        colors[v] = Some(best);
        within[v] = cnt;
        for &u in g.neighbors(v) {
            if let Some(c) = colors[u] {
                counts[c] = 0;
            }
        }
    }
    (ColoringResult::new(g, colors, k), within)
}

/// Greedy `k`-colouring cutting at least `(1 - 1/k)|E|` edges.
pub fn greedy_fractional_color(g: &Graph, k: usize, order: Option<&[usize]>) -> ColoringResult {
    greedy_with_trace(g, k, order).0
}

/// Keeps the three largest colour classes (ties to the lower colour),
/// relabelled `0, 1, 2` by decreasing size. Colourings using fewer than
/// three colours come back unchanged.
pub fn project_to_three_colors(g: &Graph, c: &ColoringResult) -> ColoringResult {
    let sizes = c.class_sizes();
    if sizes.iter().filter(|&&s| s > 0).count() < 3 {
        return c.clone();
    }
    let mut ranked: Vec<usize> = (0..sizes.len()).collect();
    ranked.sort_by_key(|&i| (std::cmp::Reverse(sizes[i]), i));
    let mut relabel = vec![None; sizes.len()];
    for (new, &old) in ranked.iter().take(3).enumerate() {
        relabel[old] = Some(new);
    }
    let colors = c.colors.iter().map(|x| x.and_then(|x| relabel[x])).collect();
    ColoringResult::new(g, colors, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn gnp(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn triangle_and_star() {
        let t = greedy_fractional_color(&Graph::complete(3), 3, None);
        assert_eq!(t.cut_edges, 3);
        let star = Graph::new(6, (1..6).map(|v| (0, v))).unwrap();
        assert_eq!(greedy_fractional_color(&star, 2, None).cut_edges, 5);
    }

    #[test]
    fn two_thirds_on_random_graphs() {
        for seed in 0..100 {
            let g = gnp(20, 0.3, seed);
            let order = shuffled_order(20, seed);
            let (c, within) = greedy_with_trace(&g, 3, Some(&order));
            assert_eq!(c.cut_edges, c.recount_cut(&g));
            assert!(3 * c.cut_edges >= 2 * g.num_edges());
            for v in 0..20 {
                assert!(within[v] <= g.degree(v) / 3);
            }
        }
    }

    #[test]
    fn projection_counts() {
        let sizes = [5, 4, 3, 2, 1];
        let mut colors = Vec::new();
        for (c, s) in sizes.iter().enumerate() {
            colors.extend(std::iter::repeat_n(Some(c), *s));
        }
        let g = Graph::empty(15);
        let p = project_to_three_colors(&g, &ColoringResult::new(&g, colors, 5));
        assert_eq!(p.num_colored(), 12);
        let three = ColoringResult::new(&Graph::complete(3), vec![Some(0), Some(1), Some(2)], 3);
        assert_eq!(project_to_three_colors(&Graph::complete(3), &three), three);
    }

    #[test]
    fn projection_keeps_three_fifths() {
        for seed in 0..30 {
            let g = gnp(20, 0.25, seed);
            let Some(colors) = crate::coloring::find_k_coloring(&g, 5) else { continue };
            let c = ColoringResult::new(&g, colors.into_iter().map(Some).collect(), 5);
            let p = project_to_three_colors(&g, &c);
            assert!(p.is_proper(&g));
            assert!(5 * p.num_colored() >= 3 * 20);
        }
    }
}
