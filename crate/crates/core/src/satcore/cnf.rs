use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

/// `y_j` or `¬y_j`; variables are numbered from 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn from_dimacs(v: i64) -> Option<Self> {
        if v == 0 {
            return None;
        }
        Some(Literal { var: v.unsigned_abs() as usize, positive: v > 0 })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "y{}", self.var)
        } else {
            write!(f, "¬y{}", self.var)
        }
    }
}

/// A disjunction of exactly three literals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Clause(pub [Literal; 3]);

impl Clause {
    pub fn new(a: Literal, b: Literal, c: Literal) -> Self {
        Clause([a, b, c])
    }

    pub fn from_dimacs(lits: [i64; 3]) -> Option<Self> {
        Some(Clause([Literal::from_dimacs(lits[0])?, Literal::from_dimacs(lits[1])?, Literal::from_dimacs(lits[2])?]))
    }

    pub fn literals(&self) -> &[Literal; 3] {
        &self.0
    }

    /// Contains some variable in both polarities, so it always holds.
    pub fn is_trivial(&self) -> bool {
        let l = &self.0;
        (0..3).any(|i| (i + 1..3).any(|j| l[i].var == l[j].var && l[i].positive != l[j].positive))
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|l| l.positive)
    }

    pub fn all_negative(&self) -> bool {
        self.0.iter().all(|l| !l.positive)
    }

    pub fn is_pure(&self) -> bool {
        self.all_positive() || self.all_negative()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ∨ {} ∨ {})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("clause {clause} uses variable {var} but the formula has {num_vars}")]
    VariableOutOfRange { clause: usize, var: usize, num_vars: usize },
}

/// A 3-CNF formula over `y_1 … y_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    /// Comment lines carried over from a DIMACS file.
    pub comments: Vec<String>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for (i, c) in clauses.iter().enumerate() {
            for l in c.literals() {
                if l.var == 0 || l.var > num_vars {
                    return Err(CnfError::VariableOutOfRange { clause: i + 1, var: l.var, num_vars });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses, comments: Vec::new() })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Every clause is all-positive or all-negative.
    pub fn is_non_mixed(&self) -> bool {
        self.clauses.iter().all(Clause::is_pure)
    }

    pub fn has_trivial_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_trivial)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: bad literal `{token}`")]
    BadLiteral { line: usize, token: String },
    #[error("clause {clause} has width {width}, expected 3: {literals:?}")]
    Width { clause: usize, width: usize, literals: Vec<i64> },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error("input is not UTF-8")]
    Encoding,
}

/// Parses DIMACS CNF. Comment lines (`c …`) are kept in order; every clause
/// must have exactly three literals.
pub fn parse_dimacs(bytes: &[u8]) -> Result<CnfFormula, DimacsError> {
    let text = std::str::from_utf8(bytes).map_err(|_| DimacsError::Encoding)?;
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                comments.push(rest.trim_start().to_string());
                continue;
            }
        }
        if t.starts_with('%') {
            break;
        }
        if let Some(rest) = t.strip_prefix('p') {
            if header.is_some() {
                return Err(DimacsError::Header { line, msg: "duplicate header".into() });
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(DimacsError::Header { line, msg: format!("expected `p cnf <vars> <clauses>`, got `{t}`") });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| DimacsError::Header { line, msg: format!("`{s}` is not a count") })
            };
            header = Some((parse(parts[1])?, parse(parts[2])?));
            continue;
        }
        if header.is_none() {
            return Err(DimacsError::MissingHeader);
        }
        for tok in t.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| DimacsError::BadLiteral { line, token: tok.to_string() })?;
            if v == 0 {
                if current.len() != 3 {
                    return Err(DimacsError::Width {
                        clause: clauses.len() + 1,
                        width: current.len(),
                        literals: current,
                    });
                }
                clauses.push(Clause::from_dimacs([current[0], current[1], current[2]]).expect("nonzero"));
                current.clear();
            } else {
                current.push(v);
            }
        }
    }
    let (num_vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if declared != clauses.len() {
        return Err(DimacsError::ClauseCount { declared, found: clauses.len() });
    }
    let mut f = CnfFormula::new(num_vars, clauses)?;
    f.comments = comments;
    Ok(f)
}

/// Canonical DIMACS text: comments, header, one clause per line.
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    for c in &f.comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            writeln!(out, "c {c}").unwrap();
        }
    }
    writeln!(out, "p cnf {} {}", f.num_vars, f.clauses.len()).unwrap();
    for c in &f.clauses {
        let l = c.literals();
        writeln!(out, "{} {} {} 0", l[0].to_dimacs(), l[1].to_dimacs(), l[2].to_dimacs()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_clause_file() {
        let f = parse_dimacs(b"c example\np cnf 11 1\n3 -6 11 0\n").unwrap();
        assert_eq!(f.num_vars(), 11);
        assert_eq!(f.clauses(), &[Clause::new(Literal::pos(3), Literal::neg(6), Literal::pos(11))]);
        assert_eq!(f.comments, vec!["example".to_string()]);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_dimacs(b"p cnf 3 2\n1 2\n3 0 -1 -2 -3\n0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
    }

    #[test]
    fn width_two_is_rejected_with_clause_number() {
        let e = parse_dimacs(b"p cnf 3 2\n1 2 3 0\n1 2 0\n").unwrap_err();
        assert_eq!(e, DimacsError::Width { clause: 2, width: 2, literals: vec![1, 2] });
    }

    #[test]
    fn malformed_headers() {
        assert!(matches!(parse_dimacs(b"p dnf 3 1\n1 2 3 0\n"), Err(DimacsError::Header { .. })));
        assert!(matches!(parse_dimacs(b"p cnf x 1\n"), Err(DimacsError::Header { .. })));
        assert_eq!(parse_dimacs(b"1 2 3 0\n"), Err(DimacsError::MissingHeader));
        assert_eq!(parse_dimacs(b"p cnf 3 2\n1 2 3 0\n"), Err(DimacsError::ClauseCount { declared: 2, found: 1 }));
        assert!(matches!(
            parse_dimacs(b"p cnf 2 1\n1 2 3 0\n"),
            Err(DimacsError::Cnf(CnfError::VariableOutOfRange { var: 3, .. }))
        ));
    }

    #[test]
    fn flags() {
        let c = Clause::from_dimacs([1, -1, 2]).unwrap();
        assert!(c.is_trivial());
        assert!(!Clause::from_dimacs([1, 1, 2]).unwrap().is_trivial());
        let f = CnfFormula::new(
            3,
            vec![Clause::from_dimacs([1, 2, 3]).unwrap(), Clause::from_dimacs([-1, -2, -3]).unwrap()],
        )
        .unwrap();
        assert!(f.is_non_mixed());
    }

    #[test]
    fn h_file_round_trip() {
        let text = "c H-file\np cnf 4 4\n1 -2 3 0\n-1 2 4 0\n2 3 -4 0\n-3 -4 1 0\n";
        let f = parse_dimacs(text.as_bytes()).unwrap();
        assert_eq!(emit_dimacs(&f), text);
        assert_eq!(parse_dimacs(emit_dimacs(&f).as_bytes()).unwrap(), f);
    }

    proptest! {
        #[test]
        fn emit_parse_identity(
            n in 1usize..10,
            raw in proptest::collection::vec((1usize..10, any::<bool>(), 1usize..10, any::<bool>(), 1usize..10, any::<bool>()), 0..20),
        ) {
            let clauses: Vec<Clause> = raw.into_iter().map(|(a, pa, b, pb, c, pc)| {
                let lit = |v: usize, p: bool| Literal { var: (v - 1) % n + 1, positive: p };
                Clause::new(lit(a, pa), lit(b, pb), lit(c, pc))
            }).collect();
            let f = CnfFormula::new(n, clauses).unwrap();
            prop_assert_eq!(parse_dimacs(emit_dimacs(&f).as_bytes()).unwrap(), f);
        }
    }
}
