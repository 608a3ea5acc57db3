use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use robustgb::coloring::{cpartial_color_decide, is_k_colorable, ColorDecision, Graph};
use robustgb::extraction::{assign_from_solution, select_structurally_constrained};
use robustgb::polyring::{buchberger, Budget, Gf, GroebnerBasis, PrimeModulus, Rational, TermOrder};
use robustgb::reductions::{build_structure_graph, coloring_ideal, encode_3sat, encode_nonmixed};
use robustgb::satcore::generate::{random_3cnf, random_nonmixed};
use robustgb::satcore::{brute_force_sat, DEFAULT_SAT_LIMIT};

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
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
fn nonmixed_encoding_decides_satisfiability() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(1..=14);
        let phi = random_nonmixed(&mut rng, n, m);
        let sys = encode_nonmixed::<Rational>(&phi, ()).unwrap();
        let b = buchberger(&sys.polynomials, &TermOrder::grevlex(n), Budget::unlimited()).unwrap();
        let sat = brute_force_sat(&phi, DEFAULT_SAT_LIMIT).unwrap().is_sat();
        assert_eq!(b.is_trivial(), !sat, "{phi:?}");
    }
}

#[test]
fn prime_field_encoding_matches_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let p = PrimeModulus::new(101).unwrap();
    for _ in 0..40 {
        let n = rng.gen_range(3..=7);
        let m = rng.gen_range(4..=24);
        let phi = random_3cnf(&mut rng, n, m);
        let sys = encode_3sat::<Gf>(&phi, p).unwrap();
        let b = buchberger(&sys.polynomials, &TermOrder::grevlex(n), Budget::unlimited()).unwrap();
        assert!(b.certify(&sys.polynomials).is_ok());
        let sat = brute_force_sat(&phi, DEFAULT_SAT_LIMIT).unwrap().is_sat();
        assert_eq!(b.is_trivial(), !sat);
    }
}

#[test]
fn full_selection_recovers_a_satisfying_assignment() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut solved = 0;
    while solved < 30 {
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(3..=20);
        let phi = random_3cnf(&mut rng, n, m);
        if !brute_force_sat(&phi, DEFAULT_SAT_LIMIT).unwrap().is_sat() {
            continue;
        }
        let sys = encode_3sat::<Rational>(&phi, ()).unwrap();
        let sol = select_structurally_constrained(&sys, &BTreeSet::new())
            .with_computed_basis(&sys.polynomials, &sys.ring, &TermOrder::lex(n), Budget::unlimited())
            .unwrap();
        let out = assign_from_solution(&phi, &sol, false).unwrap();
        assert_eq!(out.satisfied, m);
        solved += 1;
    }
}

#[test]
fn structure_graph_of_encoding_has_one_clique_per_clause() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let phi = random_3cnf(&mut rng, 9, 12);
    let sys = encode_3sat::<Rational>(&phi, ()).unwrap();
    let sg = build_structure_graph(&sys.ring, &sys.polynomials);
    assert_eq!(sg.triangle_count(), 12);
    assert_eq!(sg.edges().len(), 36);
}

#[test]
fn coloring_ideal_over_prime_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let p = PrimeModulus::new(7).unwrap();
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let g = random_graph(&mut rng, n, 0.5);
        let spec = coloring_ideal::<Gf>(&g, 3, p).unwrap();
        let b = buchberger(&spec.polynomials, &TermOrder::grevlex(n), Budget::unlimited()).unwrap();
        assert_eq!(b.is_trivial(), !is_k_colorable(&g, 3));
    }
}

#[test]
fn decide_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..40 {
        let n = rng.gen_range(3..=6);
        let g = random_graph(&mut rng, n, 0.6);
        let k = rng.gen_range(2..=3);
        let v = rng.gen_range(0..n);
        let removed = vec![BTreeSet::from([v])];
        let spec = coloring_ideal::<Rational>(&g, k, ()).unwrap();
        let kept: Vec<_> = spec.polynomials.iter().filter(|p| !p.contains_variable(v)).cloned().collect();
        let order = TermOrder::grevlex(n);
        let b = if kept.is_empty() {
            GroebnerBasis::from_elements(&spec.ring, vec![], order).unwrap()
        } else {
            buchberger(&kept, &order, Budget::unlimited()).unwrap()
        };
        let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        match cpartial_color_decide(&g, k, &removed, &b).unwrap() {
            ColorDecision::NotKColorable => {
                assert!(!is_k_colorable(&g.induced(&keep), k));
                assert!(!is_k_colorable(&g, k));
            }
            ColorDecision::ProperColoring(c) => {
                assert!(c.is_proper(&g) && c.is_total());
                assert!(c.colors_used() <= k + 1);
            }
        }
    }
}
