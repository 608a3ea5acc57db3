use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::assignment::{Assignment, Truth};
use super::cnf::{Clause, CnfFormula};
use crate::polyring::Rational;

fn widened(phi: &CnfFormula, partial: &Assignment) -> Assignment {
    let mut a = partial.clone();
    if a.num_vars() < phi.num_vars() {
        a.set(phi.num_vars(), a.get(phi.num_vars()));
    }
    a
}

/// Sets every undecided variable true with probability 1/2, independently,
/// visiting variables in ascending order. Reproducible from `seed`.
pub fn randomized_completion(phi: &CnfFormula, partial: &Assignment, seed: u64) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = widened(phi, partial);
    let open: Vec<usize> = a.undecided_vars().collect();
    for v in open {
        a.set(v, Truth::from_bool(rng.gen_bool(0.5)));
    }
    a
}

fn clause_probability(c: &Clause, a: &Assignment) -> Rational {
    let mut open: Vec<(usize, bool)> = Vec::with_capacity(3);
    for l in c.literals() {
        match a.get(l.var) {
            Truth::True if l.positive => return Rational::one(),
            Truth::False if !l.positive => return Rational::one(),
            Truth::Undecided => open.push((l.var, l.positive)),
            _ => {}
        }
    }
    open.sort_unstable();
    open.dedup();
    for w in open.windows(2) {
        if w[0].0 == w[1].0 {
            // Both polarities of one open variable: certain.
            return Rational::one();
        }
    }
    if open.is_empty() {
        return Rational::zero();
    }
    let denom = BigInt::one() << open.len();
    Rational::new(&denom - 1, denom)
}

/// Exact expected number of satisfied clauses when every undecided variable
/// is set by a fair coin.
pub fn expected_satisfied(phi: &CnfFormula, partial: &Assignment) -> Rational {
    phi.clauses().iter().map(|c| clause_probability(c, partial)).fold(Rational::zero(), |acc, p| acc + p)
}

/// Method of conditional expectations: fixes undecided variables in ascending
/// order, each to the value with the larger conditional expectation (true on
/// ties). The result satisfies at least [`expected_satisfied`] clauses.
pub fn derandomize_completion(phi: &CnfFormula, partial: &Assignment) -> Assignment {
    let mut a = widened(phi, partial);
    let open: Vec<usize> = a.undecided_vars().collect();
    for v in open {
        // Only clauses mentioning v change; compare their contributions.
        let touching: Vec<&Clause> = phi.clauses().iter().filter(|c| c.literals().iter().any(|l| l.var == v)).collect();
        let score =
            |a: &Assignment| touching.iter().map(|c| clause_probability(c, a)).fold(Rational::zero(), |acc, p| acc + p);
        a.set(v, Truth::True);
        let if_true = score(&a);
        a.set(v, Truth::False);
        let if_false = score(&a);
        a.set(v, Truth::from_bool(if_true >= if_false));
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satcore::cnf::Literal;
    use crate::satcore::generate::random_formula;
    use crate::satcore::oracle::{count_satisfied, UndecidedPolicy};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn single() -> CnfFormula {
        CnfFormula::new(3, vec![Clause::new(Literal::pos(1), Literal::neg(2), Literal::pos(3))]).unwrap()
    }

    /// Averages over all completions of the open variables.
    fn enumerated_expectation(phi: &CnfFormula, partial: &Assignment) -> Rational {
        let a = widened(phi, partial);
        let open: Vec<usize> = a.undecided_vars().collect();
        let mut total = 0usize;
        for bits in 0u32..(1 << open.len()) {
            let mut b = a.clone();
            for (i, v) in open.iter().enumerate() {
                b.set(*v, Truth::from_bool(bits >> i & 1 == 1));
            }
            total += count_satisfied(phi, &b, UndecidedPolicy::CountUnsat);
        }
        q(total as i64, 1 << open.len())
    }

    #[test]
    fn total_partial_is_identity() {
        let phi = single();
        let a = Assignment::from_bools(&[false, true, false]);
        assert_eq!(randomized_completion(&phi, &a, 3), a);
        assert_eq!(derandomize_completion(&phi, &a), a);
    }

    #[test]
    fn seeded_determinism() {
        let phi = single();
        let a = Assignment::undecided(3);
        assert_eq!(randomized_completion(&phi, &a, 42), randomized_completion(&phi, &a, 42));
        assert!(randomized_completion(&phi, &a, 42).is_total());
    }

    #[test]
    fn monte_carlo_seven_eighths() {
        let phi = single();
        let a = Assignment::undecided(3);
        let hits = (0..1000u64)
            .filter(|&s| count_satisfied(&phi, &randomized_completion(&phi, &a, s), UndecidedPolicy::CountUnsat) == 1)
            .count();
        let rate = hits as f64 / 1000.0;
        assert!((rate - 0.875).abs() <= 0.05, "rate {rate}");
        assert_eq!(expected_satisfied(&phi, &a), q(7, 8));
    }

    #[test]
    fn single_open_clause_is_satisfied() {
        let phi = single();
        let a = derandomize_completion(&phi, &Assignment::undecided(3));
        assert_eq!(count_satisfied(&phi, &a, UndecidedPolicy::CountUnsat), 1);
    }

    #[test]
    fn probability_cases() {
        let c = Clause::from_dimacs([1, 1, -2]).unwrap();
        assert_eq!(clause_probability(&c, &Assignment::undecided(2)), q(3, 4));
        let c = Clause::from_dimacs([1, -1, 2]).unwrap();
        assert_eq!(clause_probability(&c, &Assignment::undecided(2)), q(1, 1));
        let c = Clause::from_dimacs([1, 2, 2]).unwrap();
        assert_eq!(clause_probability(&c, &Assignment::from_bools(&[false, false])), q(0, 1));
    }

    proptest! {
        #[test]
        fn expectation_matches_enumeration_and_is_dominated(
            seed in any::<u64>(), n in 1usize..=10, m in 0usize..25, mask in any::<u32>(), vals in any::<u32>(),
        ) {
            use rand::SeedableRng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let phi = random_formula(&mut rng, n, m);
            let truths: Vec<Truth> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { Truth::Undecided } else { Truth::from_bool(vals >> i & 1 == 1) })
                .collect();
            let partial = Assignment::from_truths(truths);
            let e = expected_satisfied(&phi, &partial);
            prop_assert_eq!(&e, &enumerated_expectation(&phi, &partial));
            let done = derandomize_completion(&phi, &partial);
            prop_assert!(done.is_total());
            for v in 1..=n {
                if partial.get(v) != Truth::Undecided {
                    prop_assert_eq!(done.get(v), partial.get(v));
                }
            }
            let got = count_satisfied(&phi, &done, UndecidedPolicy::CountUnsat);
            prop_assert!(Rational::from_integer(got.into()) >= e.ceil());
        }
    }
}
