use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use super::field::{Field, FieldTag};
use super::monomial::{Monomial, TermOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("variable index {index} outside a universe of {size} variables")]
    VariableOutOfRange { index: usize, size: usize },
    #[error("division by the zero polynomial (divisor {0})")]
    ZeroDivisor(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("term order is over {order} variables but the ring has {ring}")]
    OrderArity { order: usize, ring: usize },
}

/// The polynomial ring `K[x_1, …, x_n]`: a named variable universe plus the
/// coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring<F: Field> {
    vars: Vec<String>,
    ctx: F::Ctx,
}

impl<F: Field> Ring<F> {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, ctx: F::Ctx) -> Result<Arc<Self>, PolyError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(Ring { vars, ctx }))
    }

    /// Variables named `prefix1 … prefixN`.
    pub fn numbered(prefix: &str, n: usize, ctx: F::Ctx) -> Arc<Self> {
        Arc::new(Ring { vars: (1..=n).map(|i| format!("{prefix}{i}")).collect(), ctx })
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn field_tag(&self) -> FieldTag {
        F::tag(&self.ctx)
    }

    pub fn zero_el(&self) -> F {
        F::zero(&self.ctx)
    }

    pub fn one_el(&self) -> F {
        F::one(&self.ctx)
    }

    pub fn int(&self, v: i64) -> F {
        F::from_i64(&self.ctx, v)
    }

    fn describe(&self) -> String {
        format!("{}[{}]", self.field_tag(), self.vars.join(","))
    }
}

/// A sparse multivariate polynomial. Stored coefficients are never zero.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

pub(crate) fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.one_el())
    }

    pub fn var(ring: &Arc<Ring<F>>, index: usize) -> Self {
        assert!(index < ring.num_vars(), "variable index out of range");
        Self::term(ring, ring.one_el(), Monomial::var(index, 1))
    }

    pub fn term(ring: &Arc<Ring<F>>, c: F, m: Monomial) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ring: &Arc<Ring<F>>, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, F)>,
    {
        let n = ring.num_vars();
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if let Some(v) = m.max_variable() {
                if v >= n {
                    return Err(PolyError::VariableOutOfRange { index: v, size: n });
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(ring: &Arc<Ring<F>>, terms: BTreeMap<Monomial, F>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// True for the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero_el())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn contains_variable(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch { left: self.ring.describe(), right: other.ring.describe() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul_ref(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self, order: &TermOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Substitutes values for some variables; the rest stay symbolic.
    pub fn substitute(&self, values: &[(usize, F)]) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match values.iter().find(|(i, _)| *i == v) {
                    Some((_, val)) => {
                        for _ in 0..e {
                            coeff = coeff.mul_ref(val);
                        }
                    }
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(rest), coeff);
        }
        out
    }

    /// Full evaluation at a point (one value per ring variable).
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.num_vars(), "point has wrong arity");
        let mut acc = self.ring.zero_el();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                for _ in 0..e {
                    t = t.mul_ref(&point[v]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Moves the polynomial into another ring with the same field, mapping
    /// variable `i` to `var_map[i]`.
    pub fn rename_into(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Result<Self, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (var_map[v], e))), c.clone()));
        Self::from_terms(target, terms)
    }

    /// Renders terms from largest to smallest under `order`.
    pub fn display_with<'a>(&'a self, order: &'a TermOrder) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, order }
    }
}

pub struct PolyDisplay<'a, F: Field> {
    poly: &'a Polynomial<F>,
    order: &'a TermOrder,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.order);
        if terms.is_empty() {
            return write!(f, "0");
        }
        let ring = &self.poly.ring;
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for &(v, e) in m.pairs() {
                if e == 1 {
                    factors.push(ring.var_name(v).to_string());
                } else {
                    factors.push(format!("{}^{}", ring.var_name(v), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = TermOrder::grevlex(self.ring.num_vars());
        write!(f, "{}", self.display_with(&order))
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    /// Panics on ring mismatch; use [`Polynomial::try_add`] for a checked sum.
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

/// Which arithmetic operation [`poly_arith`] applies.
#[derive(Debug, Clone)]
pub enum ArithOp<F> {
    Add,
    Sub,
    Mul,
    /// Multiply the first operand by a scalar; the second is ignored.
    ScalarMul(F),
}

pub fn poly_arith<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, op: ArithOp<F>) -> Result<Polynomial<F>, PolyError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::ScalarMul(c) => {
            a.check_ring(b)?;
            Ok(a.scale(&c))
        }
    }
}
