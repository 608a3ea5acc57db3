use std::fmt;

use super::ExtractionError;
use crate::polyring::{eliminate, Field, GroebnerBasis, OrderKind, Polynomial};
use crate::satcore::{Assignment, Truth};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coord<F> {
    Zero,
    One,
    /// Any field element works.
    Free,
    Value(F),
}

impl<F: Field> Coord<F> {
    pub fn truth(&self) -> Truth {
        match self {
            Coord::Zero => Truth::False,
            Coord::One => Truth::True,
            Coord::Free => Truth::Undecided,
            Coord::Value(v) => v.as_bit().map_or(Truth::Undecided, Truth::from_bool),
        }
    }

    fn value(&self, ctx: &F::Ctx) -> Option<F> {
        match self {
            Coord::Zero => Some(F::zero(ctx)),
            Coord::One => Some(F::one(ctx)),
            Coord::Free => None,
            Coord::Value(v) => Some(v.clone()),
        }
    }
}

impl<F: Field> fmt::Display for Coord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Zero => f.write_str("0"),
            Coord::One => f.write_str("1"),
            Coord::Free => f.write_str("free"),
            Coord::Value(v) => write!(f, "{v}"),
        }
    }
}

/// A point of the variety, one coordinate per ring variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyPoint<F: Field> {
    pub coords: Vec<Coord<F>>,
}

impl<F: Field> VarietyPoint<F> {
    /// Substitution list for every non-free coordinate.
    pub fn fixed_values(&self, ctx: &F::Ctx) -> Vec<(usize, F)> {
        self.coords.iter().enumerate().filter_map(|(i, c)| c.value(ctx).map(|v| (i, v))).collect()
    }

    /// Concrete point with every free coordinate set to `fill`.
    pub fn instantiate(&self, ctx: &F::Ctx, fill: &F) -> Vec<F> {
        self.coords.iter().map(|c| c.value(ctx).unwrap_or_else(|| fill.clone())).collect()
    }

    /// Substituting the fixed coordinates leaves the zero polynomial.
    pub fn annihilates(&self, p: &Polynomial<F>) -> bool {
        p.substitute(&self.fixed_values(p.ring().ctx())).is_zero()
    }

    /// Truth assignment over `y_1 … y_num_vars`; `var_map[i]` is the SAT
    /// variable behind ring variable `i`. Free coordinates stay undecided.
    pub fn to_assignment(&self, var_map: &[usize], num_vars: usize) -> Assignment {
        let mut a = Assignment::undecided(num_vars);
        for (i, c) in self.coords.iter().enumerate() {
            a.set(var_map[i], c.truth());
        }
        a
    }
}

/// Walks the elimination ideals from the last-ranked variable to the first,
/// fixing each variable to the first of free, 0, 1 under which every newly
/// visible basis element vanishes identically.
pub fn extract_point<F: Field>(basis: &GroebnerBasis<F>) -> Result<VarietyPoint<F>, ExtractionError> {
    let order = basis.order();
    if order.kind() != OrderKind::Lex {
        return Err(ExtractionError::NotLex(order.kind()));
    }
    if basis.is_trivial() {
        return Err(ExtractionError::EmptyVariety);
    }
    let ring = basis.ring();
    let ctx = ring.ctx();
    let n = ring.num_vars();
    let mut point = VarietyPoint { coords: vec![Coord::Free; n] };
    let mut fixed: Vec<(usize, F)> = Vec::new();
    for r in (0..n).rev() {
        let v = order.priority()[r];
        // Elements of G_r not already in G_{r+1}: those whose top-ranked
        // variable is v. The older ones already vanish.
        let fresh: Vec<Polynomial<F>> = eliminate(basis, r)
            .expect("lex basis and rank in range")
            .into_iter()
            .filter(|p| p.contains_variable(v))
            .map(|p| p.substitute(&fixed))
            .collect();
        let candidates = [(Coord::Free, None), (Coord::Zero, Some(F::zero(ctx))), (Coord::One, Some(F::one(ctx)))];
        let chosen = candidates.into_iter().find(|(_, val)| {
            fresh.iter().all(|p| match val {
                None => p.is_zero(),
                Some(x) => p.substitute(&[(v, x.clone())]).is_zero(),
            })
        });
        match chosen {
            Some((c, val)) => {
                if let Some(x) = val {
                    fixed.push((v, x));
                }
                point.coords[v] = c;
            }
            None => return Err(ExtractionError::NonEncoderIdeal(ring.var_name(v).to_string())),
        }
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{buchberger, parse_polynomial, Budget, Rational, Ring, TermOrder};
    use crate::reductions::encode_3sat;
    use crate::satcore::generate::random_nontrivial;
    use crate::satcore::{
        brute_force_sat, count_satisfied, Clause, CnfFormula, SatResult, UndecidedPolicy, DEFAULT_SAT_LIMIT,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn single_linear_element() {
        let ring = Ring::<Rational>::numbered("x", 1, ());
        let b =
            buchberger(&[parse_polynomial(&ring, "x1 - 1").unwrap()], &TermOrder::lex(1), Budget::unlimited()).unwrap();
        assert_eq!(extract_point(&b).unwrap().coords, vec![Coord::One]);
    }

    #[test]
    fn single_positive_clause() {
        let f = CnfFormula::new(3, vec![Clause::from_dimacs([1, 1, 1]).unwrap()]).unwrap();
        let sys = encode_3sat::<Rational>(&f, ()).unwrap();
        let b = buchberger(&sys.polynomials, &TermOrder::lex(3), Budget::unlimited()).unwrap();
        assert_eq!(extract_point(&b).unwrap().coords, vec![Coord::One, Coord::Free, Coord::Free]);
    }

    #[test]
    fn refusals() {
        let ring = Ring::<Rational>::numbered("x", 2, ());
        let p = |t| parse_polynomial(&ring, t).unwrap();
        let one = buchberger(&[p("x1"), p("x1 - 1")], &TermOrder::lex(2), Budget::unlimited()).unwrap();
        assert_eq!(extract_point(&one), Err(ExtractionError::EmptyVariety));
        let g = buchberger(&[p("x1 - 2")], &TermOrder::grevlex(2), Budget::unlimited()).unwrap();
        assert_eq!(extract_point(&g), Err(ExtractionError::NotLex(OrderKind::GradedRevLex)));
        let g = buchberger(&[p("x1 - 2")], &TermOrder::lex(2), Budget::unlimited()).unwrap();
        assert_eq!(extract_point(&g), Err(ExtractionError::NonEncoderIdeal("x1".into())));
    }

    #[test]
    fn random_satisfiable_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut done = 0;
        while done < 40 {
            let f = random_nontrivial(&mut rng, 8, 14);
            if brute_force_sat(&f, DEFAULT_SAT_LIMIT).unwrap() == SatResult::Unsatisfiable {
                continue;
            }
            let sys = encode_3sat::<Rational>(&f, ()).unwrap();
            let b = buchberger(&sys.polynomials, &TermOrder::lex(8), Budget::unlimited()).unwrap();
            let pt = extract_point(&b).unwrap();
            for fill in [q(0), q(1), q(-3)] {
                let x = pt.instantiate(&(), &fill);
                assert!(b.elements().iter().all(|g| g.eval(&x).is_zero()));
                assert!(sys.polynomials.iter().all(|g| g.eval(&x).is_zero()));
            }
            let a = pt.to_assignment(&sys.var_map, 8).filled(false);
            assert_eq!(count_satisfied(&f, &a, UndecidedPolicy::CountUnsat), f.num_clauses());
            done += 1;
        }
    }
}
