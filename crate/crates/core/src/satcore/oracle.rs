use thiserror::Error;

use super::assignment::{Assignment, Truth};
use super::cnf::{Clause, CnfFormula};

/// How [`count_satisfied`] treats undecided variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UndecidedPolicy {
    /// An undecided literal never makes a clause true.
    #[default]
    CountUnsat,
    /// Undecided variables read as false (the arbitrary fill), so a
    /// negative literal on one is true.
    CountByRule,
}

fn literal_value(a: &Assignment, var: usize, positive: bool, policy: UndecidedPolicy) -> bool {
    match (a.get(var), policy) {
        (Truth::True, _) => positive,
        (Truth::False, _) => !positive,
        (Truth::Undecided, UndecidedPolicy::CountUnsat) => false,
        (Truth::Undecided, UndecidedPolicy::CountByRule) => !positive,
    }
}

pub fn clause_satisfied(c: &Clause, a: &Assignment, policy: UndecidedPolicy) -> bool {
    c.literals().iter().any(|l| literal_value(a, l.var, l.positive, policy))
}

/// Number of clauses with at least one true literal.
pub fn count_satisfied(phi: &CnfFormula, a: &Assignment, policy: UndecidedPolicy) -> usize {
    phi.clauses().iter().filter(|c| clause_satisfied(c, a, policy)).count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable(Assignment),
    Unsatisfiable,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Satisfiable(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{vars} variables exceed the enumeration limit of {limit}")]
    TooManyVariables { vars: usize, limit: usize },
}

pub const DEFAULT_SAT_LIMIT: usize = 24;

struct Masks {
    pos: u64,
    neg: u64,
}

fn clause_masks(phi: &CnfFormula) -> Vec<Masks> {
    phi.clauses()
        .iter()
        .map(|c| {
            let mut m = Masks { pos: 0, neg: 0 };
            for l in c.literals() {
                if l.positive {
                    m.pos |= 1 << (l.var - 1);
                } else {
                    m.neg |= 1 << (l.var - 1);
                }
            }
            m
        })
        .collect()
}

/// Decides satisfiability by enumerating all `2^n` assignments.
pub fn brute_force_sat(phi: &CnfFormula, limit: usize) -> Result<SatResult, OracleError> {
    let n = phi.num_vars();
    if n > limit || n > 62 {
        return Err(OracleError::TooManyVariables { vars: n, limit: limit.min(62) });
    }
    let masks = clause_masks(phi);
    for bits in 0u64..(1u64 << n) {
        if masks.iter().all(|m| bits & m.pos != 0 || !bits & m.neg != 0) {
            let v: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            return Ok(SatResult::Satisfiable(Assignment::from_bools(&v)));
        }
    }
    Ok(SatResult::Unsatisfiable)
}

/// Largest number of simultaneously satisfiable clauses, by enumeration.
pub fn brute_force_max_sat(phi: &CnfFormula, limit: usize) -> Result<usize, OracleError> {
    let n = phi.num_vars();
    if n > limit || n > 62 {
        return Err(OracleError::TooManyVariables { vars: n, limit: limit.min(62) });
    }
    let masks = clause_masks(phi);
    Ok((0u64..(1u64 << n))
        .map(|bits| masks.iter().filter(|m| bits & m.pos != 0 || !bits & m.neg != 0).count())
        .max()
        .unwrap_or(0))
}
