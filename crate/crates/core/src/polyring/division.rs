use super::engine::{self, EPoly, OrderCtx};
use super::field::Field;
use super::monomial::TermOrder;
use super::poly::{same_ring, PolyError, Polynomial};

fn check_order<F: Field>(p: &Polynomial<F>, order: &TermOrder) -> Result<(), PolyError> {
    let n = p.ring().num_vars();
    if order.num_vars() != n {
        return Err(PolyError::OrderArity { order: order.num_vars(), ring: n });
    }
    Ok(())
}

fn check_same_ring<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<(), PolyError> {
    if same_ring(a.ring(), b.ring()) {
        Ok(())
    } else {
        a.try_add(b).map(|_| ())
    }
}

/// Result of [`divide`]: `f = Σ quotients[i]·divisors[i] + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division<F: Field> {
    pub quotients: Vec<Polynomial<F>>,
    pub remainder: Polynomial<F>,
}

/// Multivariate division of `f` by an ordered list of divisors.
///
/// At each step the leading term of what is left is divided by the first
/// divisor whose leading term divides it; otherwise it moves to the
/// remainder.
pub fn divide<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    order: &TermOrder,
) -> Result<Division<F>, PolyError> {
    check_order(f, order)?;
    for (i, d) in divisors.iter().enumerate() {
        check_same_ring(f, d)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor(i));
        }
    }
    let ctx = OrderCtx::of(order);
    let ef = EPoly::from_poly(f, order);
    let eds: Vec<EPoly<F>> = divisors.iter().map(|d| EPoly::from_poly(d, order)).collect();
    let refs: Vec<&EPoly<F>> = eds.iter().collect();
    let mut qs = vec![Vec::new(); divisors.len()];
    let rem = engine::divide(&ef, &refs, &ctx, Some(&mut qs));
    let ring = f.ring();
    let quotients = qs
        .into_iter()
        .map(|terms| {
            // Quotient terms are produced in strictly decreasing order per
            // divisor, so no two coincide.
            EPoly { terms }.to_poly(ring, order)
        })
        .collect();
    Ok(Division { quotients, remainder: rem.to_poly(ring, order) })
}

/// Normal form of `f` modulo `divisors` (the remainder of [`divide`]).
pub fn reduce<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    order: &TermOrder,
) -> Result<Polynomial<F>, PolyError> {
    check_order(f, order)?;
    for (i, d) in divisors.iter().enumerate() {
        check_same_ring(f, d)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor(i));
        }
    }
    let ctx = OrderCtx::of(order);
    let eds: Vec<EPoly<F>> = divisors.iter().map(|d| EPoly::from_poly(d, order)).collect();
    let refs: Vec<&EPoly<F>> = eds.iter().collect();
    Ok(engine::reduce(&EPoly::from_poly(f, order), &refs, &ctx).to_poly(f.ring(), order))
}

/// `S(f, g) = (L/LT(f))·f − (L/LT(g))·g` with `L` the lcm of the leading
/// monomials.
pub fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: &TermOrder,
) -> Result<Polynomial<F>, PolyError> {
    check_order(f, order)?;
    check_same_ring(f, g)?;
    if f.is_zero() {
        return Err(PolyError::ZeroDivisor(0));
    }
    if g.is_zero() {
        return Err(PolyError::ZeroDivisor(1));
    }
    let ctx = OrderCtx::of(order);
    let s = engine::s_poly(&EPoly::from_poly(f, order), &EPoly::from_poly(g, order), &ctx);
    Ok(s.to_poly(f.ring(), order))
}
