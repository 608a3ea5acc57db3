//! Working representation for division and Buchberger: dense exponent
//! vectors laid out by variable priority, terms kept sorted under a fixed
//! term order.

use std::cmp::Ordering;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{compare_ranked, Monomial, OrderKind, TermOrder};
use super::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    e: Box<[u32]>,
    deg: u32,
    mask: u64,
}

fn mask_of(e: &[u32]) -> u64 {
    e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u64, |m, (i, _)| m | (1 << (i % 64)))
}

impl Mono {
    pub fn from_ranked(e: Vec<u32>) -> Self {
        let deg = e.iter().sum();
        let mask = mask_of(&e);
        Mono { e: e.into_boxed_slice(), deg, mask }
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.e
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.mask & !other.mask == 0 && self.deg <= other.deg && self.e.iter().zip(other.e.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            e: self.e.iter().zip(other.e.iter()).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
            mask: self.mask | other.mask,
        }
    }

    /// Caller guarantees `other | self`.
    pub fn div(&self, other: &Mono) -> Mono {
        Mono::from_ranked(self.e.iter().zip(other.e.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono::from_ranked(self.e.iter().zip(other.e.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        if self.mask & other.mask == 0 {
            return true;
        }
        self.e.iter().zip(other.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support set of variables in ranked positions.
    pub fn ranked_vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i)
    }

    /// A key whose plain lexicographic order agrees with `kind`.
    pub fn sort_key(&self, kind: OrderKind) -> Vec<u32> {
        match kind {
            OrderKind::Lex => self.e.to_vec(),
            OrderKind::GradedLex => std::iter::once(self.deg).chain(self.e.iter().copied()).collect(),
            OrderKind::GradedRevLex => {
                std::iter::once(self.deg).chain(self.e.iter().rev().map(|x| u32::MAX - x)).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct OrderCtx {
    pub kind: OrderKind,
}

impl OrderCtx {
    pub fn of(order: &TermOrder) -> Self {
        OrderCtx { kind: order.kind() }
    }

    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        compare_ranked(self.kind, a.deg, &a.e, b.deg, &b.e)
    }
}

/// Terms sorted from largest to smallest; coefficients never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct EPoly<F> {
    pub terms: Vec<(Mono, F)>,
}

impl<F: Field> EPoly<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F {
        &self.terms[0].1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn from_poly(p: &Polynomial<F>, order: &TermOrder) -> Self {
        let ctx = OrderCtx::of(order);
        let mut terms: Vec<(Mono, F)> =
            p.terms().map(|(m, c)| (Mono::from_ranked(order.ranked_exponents(m)), c.clone())).collect();
        terms.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
        EPoly { terms }
    }

    pub fn to_poly(&self, ring: &Arc<Ring<F>>, order: &TermOrder) -> Polynomial<F> {
        let prio = order.priority();
        let map = self
            .terms
            .iter()
            .map(|(m, c)| {
                let pairs = m.ranked_vars().map(|r| (prio[r], m.exps()[r]));
                (Monomial::from_pairs(pairs), c.clone())
            })
            .collect();
        Polynomial::from_map_unchecked(ring, map)
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                for (_, c) in self.terms.iter_mut() {
                    *c = c.mul_ref(&inv);
                }
            }
        }
        self
    }

    pub fn scale_shift(&self, c: &F, m: &Mono) -> Self {
        EPoly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul_ref(c))).collect() }
    }

    /// `self - other`, both descending.
    pub fn sub(&self, other: &Self, ctx: &OrderCtx) -> Self {
        let neg: Vec<(Mono, F)> = other.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        EPoly { terms: merge_desc(&self.terms, &neg, ctx) }
    }
}

fn merge_desc<F: Field>(a: &[(Mono, F)], b: &[(Mono, F)], ctx: &OrderCtx) -> Vec<(Mono, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ctx.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let s = a[i].1.add_ref(&b[j].1);
                if !s.is_zero() {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Merge two ascending sequences, summing equal monomials.
fn merge_asc<F: Field>(a: Vec<(Mono, F)>, b: Vec<(Mono, F)>, ctx: &OrderCtx) -> Vec<(Mono, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => ctx.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let (m, c1) = ia.next().unwrap();
                let (_, c2) = ib.next().unwrap();
                let s = c1 + c2;
                if !s.is_zero() {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

/// Index of the first divisor whose leading monomial divides `m`.
fn find_reducer<F: Field>(m: &Mono, divisors: &[&EPoly<F>]) -> Option<usize> {
    divisors.iter().position(|g| !g.is_zero() && g.lm().divides(m))
}

/// Multivariate division. Returns per-divisor quotients (as term lists in
/// descending order) and the remainder. Every remainder term is irreducible
/// by every divisor's leading term.
pub(crate) fn divide<F: Field>(
    f: &EPoly<F>,
    divisors: &[&EPoly<F>],
    ctx: &OrderCtx,
    mut quotients: Option<&mut Vec<Vec<(Mono, F)>>>,
) -> EPoly<F> {
    // Working copy ascending so the current leading term is at the end.
    let mut work: Vec<(Mono, F)> = f.terms.iter().rev().cloned().collect();
    let mut rem: Vec<(Mono, F)> = Vec::new();
    while let Some((m, c)) = work.pop() {
        match find_reducer(&m, divisors) {
            None => rem.push((m, c)),
            Some(k) => {
                let g = divisors[k];
                let q_mono = m.div(g.lm());
                let q_coef = c.div_ref(g.lc()).expect("nonzero leading coefficient");
                let neg = -q_coef.clone();
                let tail: Vec<(Mono, F)> =
                    g.terms[1..].iter().rev().map(|(t, a)| (t.mul(&q_mono), a.mul_ref(&neg))).collect();
                if !tail.is_empty() {
                    work = merge_asc(work, tail, ctx);
                }
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[k].push((q_mono, q_coef));
                }
            }
        }
    }
    EPoly { terms: rem }
}

pub(crate) fn reduce<F: Field>(f: &EPoly<F>, divisors: &[&EPoly<F>], ctx: &OrderCtx) -> EPoly<F> {
    divide(f, divisors, ctx, None)
}

pub(crate) fn s_poly<F: Field>(f: &EPoly<F>, g: &EPoly<F>, ctx: &OrderCtx) -> EPoly<F> {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm());
    let mg = l.div(g.lm());
    let cf = f.lc().inv().expect("nonzero leading coefficient");
    let cg = g.lc().inv().expect("nonzero leading coefficient");
    let a = f.scale_shift(&cf, &mf);
    let b = g.scale_shift(&cg, &mg);
    a.sub(&b, ctx)
}
