//! Seeded random formulas for tests, benchmarks and the CLI.

use rand::Rng;

use super::cnf::{Clause, CnfFormula, Literal};

fn random_literal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Literal {
    Literal { var: rng.gen_range(1..=n), positive: rng.gen_bool(0.5) }
}

/// `m` clauses over `n` variables, literals drawn independently. Clauses may
/// repeat a variable and may be trivial.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> CnfFormula {
    assert!(n >= 1);
    let clauses =
        (0..m).map(|_| Clause::new(random_literal(rng, n), random_literal(rng, n), random_literal(rng, n))).collect();
    CnfFormula::new(n, clauses).expect("variables in range")
}

/// `m` clauses over `n ≥ 3` variables, each on three distinct variables.
pub fn random_3cnf<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> CnfFormula {
    assert!(n >= 3);
    let clauses = (0..m)
        .map(|_| {
            let mut vars = [0usize; 3];
            for i in 0..3 {
                loop {
                    let v = rng.gen_range(1..=n);
                    if !vars[..i].contains(&v) {
                        vars[i] = v;
                        break;
                    }
                }
            }
            let lit = |v: usize, p: bool| Literal { var: v, positive: p };
            Clause::new(
                lit(vars[0], rng.gen_bool(0.5)),
                lit(vars[1], rng.gen_bool(0.5)),
                lit(vars[2], rng.gen_bool(0.5)),
            )
        })
        .collect();
    CnfFormula::new(n, clauses).expect("variables in range")
}

/// Like [`random_formula`] but never produces a trivial clause.
pub fn random_nontrivial<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> CnfFormula {
    let clauses = (0..m)
        .map(|_| loop {
            let c = Clause::new(random_literal(rng, n), random_literal(rng, n), random_literal(rng, n));
            if !c.is_trivial() {
                break c;
            }
        })
        .collect();
    CnfFormula::new(n, clauses).expect("variables in range")
}

/// Random non-mixed formula: every clause all-positive or all-negative.
pub fn random_nonmixed<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> CnfFormula {
    let clauses = (0..m)
        .map(|_| {
            let p = rng.gen_bool(0.5);
            let mut lit = || Literal { var: rng.gen_range(1..=n), positive: p };
            Clause::new(lit(), lit(), lit())
        })
        .collect();
    CnfFormula::new(n, clauses).expect("variables in range")
}
