//! Buchberger's algorithm producing reduced Gröbner bases.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::engine::{self, EPoly, Mono, OrderCtx};
use super::field::Field;
use super::monomial::{OrderKind, TermOrder};
use super::poly::{same_ring, PolyError, Polynomial, Ring};

/// Limits on a Gröbner computation. A step is one polynomial reduction
/// (an input generator or an S-polynomial).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn steps(n: u64) -> Self {
        Budget { max_steps: Some(n), max_time: None }
    }
}

/// How the next critical pair is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairSelection {
    /// Smallest lcm degree first, ties broken by the term order on the lcm.
    #[default]
    Normal,
    /// Pseudo-random order from a seed. Only useful for checking canonicity.
    Shuffled(u64),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GroebnerStats {
    pub steps: u64,
    pub spolys_reduced: u64,
    pub zero_reductions: u64,
    pub pairs_skipped_coprime: u64,
    pub pairs_skipped_chain: u64,
    pub peak_basis_size: usize,
}

/// Everything known when a computation ran out of budget. `basis` generates
/// the same ideal as the input but is generally not a Gröbner basis.
#[derive(Debug, Clone)]
pub struct PartialState<F: Field> {
    pub basis: Vec<Polynomial<F>>,
    pub pending_pairs: usize,
    pub stats: GroebnerStats,
}

#[derive(Debug, Error)]
pub enum GroebnerError<F: Field> {
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Structure(#[from] PolyError),
    #[error("budget exceeded after {} steps with {} pairs pending", .0.stats.steps, .0.pending_pairs)]
    BudgetExceeded(Box<PartialState<F>>),
}

impl<F: Field> GroebnerError<F> {
    pub fn is_budget(&self) -> bool {
        matches!(self, GroebnerError::BudgetExceeded(_))
    }
}

/// A reduced Gröbner basis: monic elements sorted by decreasing leading
/// monomial, none of whose terms is divisible by another element's leading
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    elements: Vec<Polynomial<F>>,
    order: TermOrder,
    source: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    #[error("S-polynomial of elements {0} and {1} does not reduce to zero")]
    SPolynomial(usize, usize),
    #[error("generator {0} does not reduce to zero modulo the basis")]
    Generator(usize),
    #[error("basis element {0} is zero")]
    ZeroElement(usize),
    #[error("basis element {0} is not monic")]
    NotMonic(usize),
    #[error("a term of element {0} is divisible by the leading monomial of element {1}")]
    NotReduced(usize, usize),
    #[error(transparent)]
    Structure(#[from] PolyError),
}

impl<F: Field> GroebnerBasis<F> {
    /// Wraps elements that are claimed to form a basis (e.g. read from a
    /// file). Nothing is checked; use [`GroebnerBasis::certify`].
    pub fn from_elements(
        ring: &Arc<Ring<F>>,
        elements: Vec<Polynomial<F>>,
        order: TermOrder,
    ) -> Result<Self, PolyError> {
        if order.num_vars() != ring.num_vars() {
            return Err(PolyError::OrderArity { order: order.num_vars(), ring: ring.num_vars() });
        }
        for e in &elements {
            if !same_ring(e.ring(), ring) {
                return Err(PolyError::RingMismatch {
                    left: format!("{:?}", ring.var_names()),
                    right: format!("{:?}", e.ring().var_names()),
                });
            }
        }
        Ok(GroebnerBasis { ring: ring.clone(), elements, order, source: Vec::new() })
    }

    pub fn with_source(mut self, source: Vec<usize>) -> Self {
        self.source = source;
        self
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Indices of the generators this basis was computed from.
    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The ideal is the whole ring.
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, PolyError> {
        super::division::reduce(f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn engine_elements(&self) -> Vec<EPoly<F>> {
        self.elements.iter().map(|e| EPoly::from_poly(e, &self.order)).collect()
    }

    /// Checks that every S-polynomial and every given generator reduces to
    /// zero modulo the basis.
    pub fn certify(&self, generators: &[Polynomial<F>]) -> Result<(), CertificateFailure> {
        let ctx = OrderCtx::of(&self.order);
        let es = self.engine_elements();
        if let Some(i) = es.iter().position(EPoly::is_zero) {
            return Err(CertificateFailure::ZeroElement(i));
        }
        let refs: Vec<&EPoly<F>> = es.iter().collect();
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                if es[i].lm().is_coprime(es[j].lm()) {
                    continue;
                }
                let s = engine::s_poly(&es[i], &es[j], &ctx);
                if !engine::reduce(&s, &refs, &ctx).is_zero() {
                    return Err(CertificateFailure::SPolynomial(i, j));
                }
            }
        }
        for (k, g) in generators.iter().enumerate() {
            if !same_ring(g.ring(), &self.ring) {
                g.try_add(&self.elements.first().cloned().unwrap_or_else(|| Polynomial::zero(&self.ring)))?;
            }
            if !engine::reduce(&EPoly::from_poly(g, &self.order), &refs, &ctx).is_zero() {
                return Err(CertificateFailure::Generator(k));
            }
        }
        Ok(())
    }

    /// Checks the reduced-basis shape: monic, and no term of any element is
    /// divisible by another element's leading monomial.
    pub fn check_reduced(&self) -> Result<(), CertificateFailure> {
        let es = self.engine_elements();
        for (i, e) in es.iter().enumerate() {
            if e.is_zero() {
                return Err(CertificateFailure::ZeroElement(i));
            }
            if !e.lc().is_one() {
                return Err(CertificateFailure::NotMonic(i));
            }
        }
        for (i, e) in es.iter().enumerate() {
            for (j, h) in es.iter().enumerate() {
                if i != j && e.terms.iter().any(|(m, _)| h.lm().divides(m)) {
                    return Err(CertificateFailure::NotReduced(i, j));
                }
            }
        }
        Ok(())
    }
}

pub fn is_trivial_ideal<F: Field>(basis: &GroebnerBasis<F>) -> bool {
    basis.is_trivial()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EliminationError {
    #[error("elimination needs a lex basis, got {0}")]
    NotLex(OrderKind),
    #[error("cut position {k} beyond {n} variables")]
    OutOfRange { k: usize, n: usize },
}

/// Elements of a lex basis that only involve the variables ranked `k` or
/// later (`x_k, …, x_n` under the default priority). The result is a
/// Gröbner basis of the `k`-th elimination ideal.
pub fn eliminate<F: Field>(basis: &GroebnerBasis<F>, k: usize) -> Result<Vec<Polynomial<F>>, EliminationError> {
    let order = basis.order();
    if order.kind() != OrderKind::Lex {
        return Err(EliminationError::NotLex(order.kind()));
    }
    let n = order.num_vars();
    if k > n {
        return Err(EliminationError::OutOfRange { k, n });
    }
    Ok(basis.elements().iter().filter(|p| p.variables().iter().all(|&v| order.rank(v) >= k)).cloned().collect())
}

#[derive(Debug, Clone, Default)]
pub struct BuchbergerOptions {
    pub budget: Budget,
    pub selection: PairSelection,
}

#[derive(Debug, Clone)]
pub struct Computed<F: Field> {
    pub basis: GroebnerBasis<F>,
    pub stats: GroebnerStats,
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger<F: Field>(
    generators: &[Polynomial<F>],
    order: &TermOrder,
    budget: Budget,
) -> Result<GroebnerBasis<F>, GroebnerError<F>> {
    let opts = BuchbergerOptions { budget, ..Default::default() };
    buchberger_with(generators, order, &opts).map(|c| c.basis)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    deg: u32,
    key: Vec<u32>,
    i: usize,
    j: usize,
}

struct State<'a, F: Field> {
    ctx: OrderCtx,
    kind: OrderKind,
    basis: Vec<EPoly<F>>,
    queue: BTreeSet<PairKey>,
    pending: HashSet<(usize, usize)>,
    stats: GroebnerStats,
    budget: Budget,
    started: Instant,
    rng: Option<ChaCha8Rng>,
    ring: &'a Arc<Ring<F>>,
    order: &'a TermOrder,
}

enum Added {
    Unit,
    Zero,
    Element,
}

impl<F: Field> State<'_, F> {
    fn charge(&mut self) -> Result<(), GroebnerError<F>> {
        let over_steps = self.budget.max_steps.is_some_and(|m| self.stats.steps >= m);
        let over_time = self.budget.max_time.is_some_and(|t| self.started.elapsed() >= t);
        if over_steps || over_time {
            return Err(GroebnerError::BudgetExceeded(Box::new(PartialState {
                basis: self.basis.iter().map(|e| e.to_poly(self.ring, self.order)).collect(),
                pending_pairs: self.pending.len(),
                stats: self.stats,
            })));
        }
        self.stats.steps += 1;
        Ok(())
    }

    fn reduce_and_add(&mut self, p: &EPoly<F>) -> Added {
        let refs: Vec<&EPoly<F>> = self.basis.iter().collect();
        let r = engine::reduce(p, &refs, &self.ctx);
        if r.is_zero() {
            return Added::Zero;
        }
        let r = r.monic();
        if r.is_constant() {
            return Added::Unit;
        }
        let k = self.basis.len();
        for i in 0..k {
            let lcm = self.basis[i].lm().lcm(r.lm());
            let key = match self.rng.as_mut() {
                Some(rng) => PairKey { deg: 0, key: vec![rng.gen()], i, j: k },
                None => PairKey { deg: lcm.degree(), key: lcm.sort_key(self.kind), i, j: k },
            };
            self.queue.insert(key);
            self.pending.insert((i, k));
        }
        self.basis.push(r);
        self.stats.peak_basis_size = self.stats.peak_basis_size.max(self.basis.len());
        Added::Element
    }

    /// Buchberger's chain criterion: some other element's leading monomial
    /// divides lcm(i, j) and both connecting pairs are already settled.
    fn chain_criterion(&self, i: usize, j: usize, lcm: &Mono) -> bool {
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && self.basis[k].lm().divides(lcm)
                && !self.pending.contains(&(i.min(k), i.max(k)))
                && !self.pending.contains(&(j.min(k), j.max(k)))
        })
    }
}

pub fn buchberger_with<F: Field>(
    generators: &[Polynomial<F>],
    order: &TermOrder,
    opts: &BuchbergerOptions,
) -> Result<Computed<F>, GroebnerError<F>> {
    let first = generators.first().ok_or(GroebnerError::NoGenerators)?;
    let ring = first.ring();
    if order.num_vars() != ring.num_vars() {
        return Err(PolyError::OrderArity { order: order.num_vars(), ring: ring.num_vars() }.into());
    }
    for g in generators {
        if !same_ring(g.ring(), ring) {
            first.try_add(g)?;
        }
    }
    let mut st = State {
        ctx: OrderCtx::of(order),
        kind: order.kind(),
        basis: Vec::new(),
        queue: BTreeSet::new(),
        pending: HashSet::new(),
        stats: GroebnerStats::default(),
        budget: opts.budget,
        started: Instant::now(),
        rng: match opts.selection {
            PairSelection::Normal => None,
            PairSelection::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        ring,
        order,
    };
    let unit = |st: &State<F>| Computed {
        basis: GroebnerBasis {
            ring: ring.clone(),
            elements: vec![Polynomial::one(ring)],
            order: order.clone(),
            source: (0..generators.len()).collect(),
        },
        stats: st.stats,
    };

    for g in generators {
        st.charge()?;
        let eg = EPoly::from_poly(g, order);
        if let Added::Unit = st.reduce_and_add(&eg) {
            return Ok(unit(&st));
        }
    }

    while let Some(pk) = st.queue.pop_first() {
        let (i, j) = (pk.i, pk.j);
        st.pending.remove(&(i, j));
        let (li, lj) = (st.basis[i].lm(), st.basis[j].lm());
        if li.is_coprime(lj) {
            st.stats.pairs_skipped_coprime += 1;
            continue;
        }
        let lcm = li.lcm(lj);
        if st.chain_criterion(i, j, &lcm) {
            st.stats.pairs_skipped_chain += 1;
            continue;
        }
        st.charge()?;
        let s = engine::s_poly(&st.basis[i], &st.basis[j], &st.ctx);
        st.stats.spolys_reduced += 1;
        match st.reduce_and_add(&s) {
            Added::Unit => return Ok(unit(&st)),
            Added::Zero => st.stats.zero_reductions += 1,
            Added::Element => {}
        }
    }

    let elements = reduce_basis(std::mem::take(&mut st.basis), &st.ctx);
    Ok(Computed {
        basis: GroebnerBasis {
            ring: ring.clone(),
            elements: elements.iter().map(|e| e.to_poly(ring, order)).collect(),
            order: order.clone(),
            source: (0..generators.len()).collect(),
        },
        stats: st.stats,
    })
}

/// Minimalizes and inter-reduces a Gröbner basis; output is sorted by
/// decreasing leading monomial.
fn reduce_basis<F: Field>(mut g: Vec<EPoly<F>>, ctx: &OrderCtx) -> Vec<EPoly<F>> {
    g.sort_by(|a, b| ctx.cmp(a.lm(), b.lm()));
    let mut kept: Vec<EPoly<F>> = Vec::new();
    for f in g {
        if !kept.iter().any(|h| h.lm().divides(f.lm())) {
            kept.push(f);
        }
    }
    for idx in 0..kept.len() {
        let f = kept[idx].clone();
        let others: Vec<&EPoly<F>> = kept.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, e)| e).collect();
        kept[idx] = engine::reduce(&f, &others, ctx).monic();
    }
    kept.reverse();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::{Gf, PrimeModulus, Rational};
    use crate::polyring::text::parse_polynomial;

    fn ring(vars: &[&str]) -> Arc<Ring<Rational>> {
        Ring::new(vars.iter().copied(), ()).unwrap()
    }

    fn polys<F: Field>(r: &Arc<Ring<F>>, s: &[&str]) -> Vec<Polynomial<F>> {
        s.iter().map(|t| parse_polynomial(r, t).unwrap()).collect()
    }

    #[test]
    fn contradiction_gives_unit_ideal() {
        let r = ring(&["x"]);
        let b = buchberger(&polys(&r, &["x - 1", "x"]), &TermOrder::lex(1), Budget::unlimited()).unwrap();
        assert!(is_trivial_ideal(&b));
    }

    #[test]
    fn one_s_polynomial_step() {
        let r = ring(&["x", "y"]);
        let b = buchberger(&polys(&r, &["x + y", "x - y"]), &TermOrder::lex(2), Budget::unlimited()).unwrap();
        assert_eq!(b.elements(), polys(&r, &["x", "y"]).as_slice());
        assert!(!b.is_trivial());
    }

    #[test]
    fn single_generator_over_gf2_is_made_monic() {
        let m = PrimeModulus::new(2).unwrap();
        let r = Ring::<Gf>::new(["x"], m).unwrap();
        let b = buchberger(&polys(&r, &["x^2 - x"]), &TermOrder::lex(1), Budget::unlimited()).unwrap();
        assert_eq!(b.elements(), polys(&r, &["x^2 + x"]).as_slice());
    }

    #[test]
    fn twisted_cubic_lex() {
        // Standard example: ⟨x² − y, x³ − z⟩ under lex y > z > x... use the
        // declared priority x > y > z instead and check the certificate.
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["x^2 - y", "x^3 - z"]);
        let b = buchberger(&gens, &TermOrder::lex(3), Budget::unlimited()).unwrap();
        b.certify(&gens).unwrap();
        b.check_reduced().unwrap();
        assert_eq!(b.elements(), polys(&r, &["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]).as_slice());
    }

    #[test]
    fn zero_budget_reports_partial_state() {
        let r = ring(&["x"]);
        let e = buchberger(&polys(&r, &["x - 1", "x"]), &TermOrder::lex(1), Budget::steps(0)).unwrap_err();
        match e {
            GroebnerError::BudgetExceeded(p) => {
                assert_eq!(p.stats.steps, 0);
                assert!(p.basis.is_empty());
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn criteria_skip_pairs() {
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["x^2", "y^2", "z^2 - x*y"]);
        let c = buchberger_with(&gens, &TermOrder::grevlex(3), &BuchbergerOptions::default()).unwrap();
        assert!(c.stats.pairs_skipped_coprime > 0);
        c.basis.certify(&gens).unwrap();
    }

    #[test]
    fn elimination_filters_by_suffix() {
        let r = ring(&["x", "y"]);
        let b = buchberger(&polys(&r, &["x", "y"]), &TermOrder::lex(2), Budget::unlimited()).unwrap();
        assert_eq!(eliminate(&b, 1).unwrap(), polys(&r, &["y"]));
        let one = buchberger(&polys(&r, &["1"]), &TermOrder::lex(2), Budget::unlimited()).unwrap();
        assert_eq!(eliminate(&one, 1).unwrap(), polys(&r, &["1"]));
        // (x − 1)·y: nothing survives in K[y].
        let b = buchberger(&polys(&r, &["x*y - y"]), &TermOrder::lex(2), Budget::unlimited()).unwrap();
        assert!(eliminate(&b, 1).unwrap().is_empty());
        let g = buchberger(&polys(&r, &["x*y - y"]), &TermOrder::grevlex(2), Budget::unlimited()).unwrap();
        assert_eq!(eliminate(&g, 1), Err(EliminationError::NotLex(OrderKind::GradedRevLex)));
    }

    #[test]
    fn empty_generator_list_rejected() {
        let e = buchberger::<Rational>(&[], &TermOrder::lex(1), Budget::unlimited()).unwrap_err();
        assert!(matches!(e, GroebnerError::NoGenerators));
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let r = ring(&["x"]);
        let b = buchberger(&polys(&r, &["0"]), &TermOrder::lex(1), Budget::unlimited()).unwrap();
        assert!(b.is_empty());
    }
}
