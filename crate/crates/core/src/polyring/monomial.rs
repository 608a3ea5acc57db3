use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// A power product `∏ x_i^{e_i}`, stored sparsely as `(variable, exponent)`
/// pairs sorted by variable index with every exponent positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(index, exp)])
        }
    }

    /// Builds from arbitrary pairs; repeated variables are merged and zero
    /// exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_unstable_by_key(|&(i, _)| i);
        let mut out: Vec<(usize, u32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some((j, f)) if *j == i => *f += e,
                _ => out.push((i, e)),
            }
        }
        Monomial(out)
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial(exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        match self.0.binary_search_by_key(&var, |&(i, _)| i) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&(i, _)| i)
    }

    pub fn max_variable(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn to_dense(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &(i, e) in &self.0 {
            out[i] = e;
        }
        out
    }

    fn merge_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (var, e) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, f(a[i - 1].1, 0))
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, f(0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
            };
            if e > 0 {
                out.push((var, e));
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, |x, y| x + y)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, u32::max)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(i, e)| other.exponent(i) >= e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.merge_with(other, |x, y| x - y))
    }

    /// No variable in common.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(i, _)| other.exponent(i) == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GradedLex,
    GradedRevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::GradedLex => "grlex",
            OrderKind::GradedRevLex => "grevlex",
        })
    }
}

impl std::str::FromStr for OrderKind {
    type Err = OrderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grlex" | "deglex" => Ok(OrderKind::GradedLex),
            "grevlex" | "degrevlex" => Ok(OrderKind::GradedRevLex),
            other => Err(OrderError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("unknown term order `{0}` (expected lex, grlex or grevlex)")]
    UnknownKind(String),
    #[error("variable priority is not a permutation of 0..{0}")]
    NotPermutation(usize),
}

/// A term order on monomials in `n` variables.
///
/// `priority[0]` is the largest variable, `priority[n-1]` the smallest. The
/// default priority is the declaration order, so `x1 > x2 > … > xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    rank: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, n: usize) -> Self {
        let priority: Vec<usize> = (0..n).collect();
        TermOrder { kind, rank: priority.clone(), priority }
    }

    pub fn lex(n: usize) -> Self {
        Self::new(OrderKind::Lex, n)
    }

    pub fn grevlex(n: usize) -> Self {
        Self::new(OrderKind::GradedRevLex, n)
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self, OrderError> {
        let n = priority.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in priority.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(OrderError::NotPermutation(n));
            }
            rank[v] = r;
        }
        Ok(TermOrder { kind, priority, rank })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn num_vars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Position of `var` in the priority list (0 = largest).
    pub fn rank(&self, var: usize) -> usize {
        self.rank[var]
    }

    /// Lex with the declared variable order is what elimination expects.
    pub fn is_default_lex(&self) -> bool {
        self.kind == OrderKind::Lex && self.priority.iter().enumerate().all(|(r, &v)| r == v)
    }

    /// Exponent vector laid out by priority (largest variable first).
    pub fn ranked_exponents(&self, m: &Monomial) -> Vec<u32> {
        let mut out = vec![0; self.priority.len()];
        for &(i, e) in m.pairs() {
            out[self.rank[i]] = e;
        }
        out
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ea = self.ranked_exponents(a);
        let eb = self.ranked_exponents(b);
        compare_ranked(self.kind, a.degree(), &ea, b.degree(), &eb)
    }
}

pub(crate) fn compare_ranked(kind: OrderKind, da: u32, a: &[u32], db: u32, b: &[u32]) -> Ordering {
    match kind {
        OrderKind::Lex => a.cmp(b),
        OrderKind::GradedLex => da.cmp(&db).then_with(|| a.cmp(b)),
        OrderKind::GradedRevLex => da.cmp(&db).then_with(|| {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_dense(exps)
    }

    #[test]
    fn sparse_canonical_form() {
        let a = Monomial::from_pairs([(2, 1), (0, 0), (2, 2), (1, 3)]);
        assert_eq!(a.pairs(), &[(1, 3), (2, 3)]);
        assert_eq!(a.degree(), 6);
        assert_eq!(a.exponent(0), 0);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 0, 0]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.div(&b), Some(m(&[1, 1, 0])));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[2, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 0])));
    }

    #[test]
    fn textbook_order_examples() {
        // x > y > z
        let lex = TermOrder::lex(3);
        let grlex = TermOrder::new(OrderKind::GradedLex, 3);
        let grevlex = TermOrder::grevlex(3);
        // x y^2 vs y^3 z
        let (a, b) = (m(&[1, 2, 0]), m(&[0, 3, 1]));
        assert_eq!(lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(grlex.cmp(&a, &b), Ordering::Less);
        // x^2 y z^2 vs x y^3 z (both degree 5): grlex says x^2.. bigger,
        // grevlex compares the z exponent: smaller wins.
        let (c, d) = (m(&[2, 1, 2]), m(&[1, 3, 1]));
        assert_eq!(grlex.cmp(&c, &d), Ordering::Greater);
        assert_eq!(grevlex.cmp(&c, &d), Ordering::Less);
    }

    #[test]
    fn priority_permutation() {
        let o = TermOrder::with_priority(OrderKind::Lex, vec![2, 0, 1]).unwrap();
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert!(TermOrder::with_priority(OrderKind::Lex, vec![0, 0, 1]).is_err());
    }

    fn mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, n).prop_map(|v| Monomial::from_dense(&v))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_with_one_minimal(
            a in mono(4), b in mono(4), w in mono(4),
            kind in prop_oneof![Just(OrderKind::Lex), Just(OrderKind::GradedLex), Just(OrderKind::GradedRevLex)],
            perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let o = TermOrder::with_priority(kind, perm).unwrap();
            prop_assert_ne!(o.cmp(&Monomial::one(), &a), Ordering::Greater);
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&a.mul(&w), &b.mul(&w)));
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
        }
    }
}
