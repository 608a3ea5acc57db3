use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::polyring::{
    buchberger, parse_polynomial, Budget, CertificateFailure, Field, GroebnerBasis, OrderKind, Polynomial, Rational,
    Ring, TermOrder,
};
use crate::reductions::EncodedSystem;

/// A selection `F′ ⊆ F` together with a claimed Gröbner basis of `⟨F′⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolution<F: Field> {
    /// Indices into the generator list, ascending.
    pub selected: Vec<usize>,
    pub basis: Option<GroebnerBasis<F>>,
    pub epsilon: Rational,
    /// Ring variables whose polynomials were discarded, when the selection
    /// is structurally constrained.
    pub ignored_variables: Option<BTreeSet<usize>>,
}

/// Smallest selection size allowed for `m` generators: `⌈ε·m⌉`.
fn required_size(epsilon: &Rational, m: usize) -> BigInt {
    (epsilon * Rational::from_integer(BigInt::from(m))).ceil().to_integer()
}

impl<F: Field> FractionalSolution<F> {
    /// Computes a basis of the selected generators, the zero ideal giving
    /// the empty basis.
    pub fn with_computed_basis(
        mut self,
        generators: &[Polynomial<F>],
        ring: &Arc<Ring<F>>,
        order: &TermOrder,
        budget: Budget,
    ) -> Result<Self, crate::polyring::GroebnerError<F>> {
        let chosen: Vec<Polynomial<F>> = self.selected.iter().map(|&i| generators[i].clone()).collect();
        let basis = if chosen.is_empty() {
            GroebnerBasis::from_elements(ring, Vec::new(), order.clone())?
        } else {
            buchberger(&chosen, order, budget)?
        };
        self.basis = Some(basis.with_source(self.selected.clone()));
        Ok(self)
    }

    /// Schema-1 JSON: selected indices, ignored variable names, ε as `p/q`,
    /// and the basis as polynomial text lines.
    pub fn to_json(&self, ring: &Ring<F>) -> Value {
        let basis = self.basis.as_ref().map(|b| {
            json!({
                "order": b.order().kind().to_string(),
                "variable_order": b.order().priority().iter().map(|&v| ring.var_name(v)).collect::<Vec<_>>(),
                "elements": b.elements().iter().map(|p| p.display_with(b.order()).to_string()).collect::<Vec<_>>(),
            })
        });
        json!({
            "schema": 1,
            "epsilon": format!("{}/{}", self.epsilon.numer(), self.epsilon.denom()),
            "selected": self.selected,
            "ignored_variables": self.ignored_variables.as_ref().map(|s| s.iter().map(|&v| ring.var_name(v)).collect::<Vec<_>>()),
            "basis": basis,
        })
    }

    pub fn from_json(v: &Value, ring: &Arc<Ring<F>>) -> Result<Self, SolutionFormatError> {
        let bad = |m: &str| SolutionFormatError(m.to_string());
        if v.get("schema").and_then(Value::as_u64) != Some(1) {
            return Err(bad("expected \"schema\": 1"));
        }
        let epsilon = v
            .get("epsilon")
            .and_then(Value::as_str)
            .and_then(parse_ratio)
            .ok_or_else(|| bad("\"epsilon\" must be a string p/q"))?;
        let selected = v
            .get("selected")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("\"selected\" must be an array"))?
            .iter()
            .map(|x| x.as_u64().map(|i| i as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("\"selected\" entries must be indices"))?;
        let var = |x: &Value| -> Result<usize, SolutionFormatError> {
            let name = x.as_str().ok_or_else(|| bad("variable names must be strings"))?;
            ring.var_index(name).ok_or_else(|| SolutionFormatError(format!("unknown variable `{name}`")))
        };
        let ignored_variables = match v.get("ignored_variables") {
            None | Some(Value::Null) => None,
            Some(Value::Array(a)) => Some(a.iter().map(var).collect::<Result<BTreeSet<_>, _>>()?),
            Some(_) => return Err(bad("\"ignored_variables\" must be an array or null")),
        };
        let basis = match v.get("basis") {
            None | Some(Value::Null) => None,
            Some(b) => {
                let kind: OrderKind = b
                    .get("order")
                    .and_then(Value::as_str)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("basis \"order\" must be lex, grlex or grevlex"))?;
                let order = match b.get("variable_order") {
                    None | Some(Value::Null) => TermOrder::new(kind, ring.num_vars()),
                    Some(Value::Array(a)) => {
                        let prio = a.iter().map(var).collect::<Result<Vec<_>, _>>()?;
                        TermOrder::with_priority(kind, prio).map_err(|e| SolutionFormatError(e.to_string()))?
                    }
                    Some(_) => return Err(bad("\"variable_order\" must be an array")),
                };
                let elements = b
                    .get("elements")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("basis \"elements\" must be an array"))?
                    .iter()
                    .map(|e| {
                        let s = e.as_str().ok_or_else(|| bad("basis elements must be strings"))?;
                        parse_polynomial(ring, s).map_err(|e| SolutionFormatError(e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(
                    GroebnerBasis::from_elements(ring, elements, order)
                        .map_err(|e| SolutionFormatError(e.to_string()))?
                        .with_source(selected.clone()),
                )
            }
        };
        Ok(FractionalSolution { selected, basis, epsilon, ignored_variables })
    }
}

fn parse_ratio(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    (!d.is_zero()).then(|| Rational::new(n, d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed solution: {0}")]
pub struct SolutionFormatError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// S-polynomial certificate, reduced shape and generator membership.
    #[default]
    Certificate,
    /// Additionally recompute the reduced basis of `⟨F′⟩` and compare. Only
    /// this mode notices a basis that generates a strictly larger ideal.
    Recompute,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange(usize),
    DuplicateIndex(usize),
    Cardinality { selected: usize, required: BigInt },
    BadEpsilon(Rational),
    MissingBasis,
    RingMismatch,
    NotGroebner(CertificateFailure),
    NotReduced(CertificateFailure),
    GeneratorNotReduced(usize),
    BasisDiffers,
    IgnoredInSelected { polynomial: usize, variable: String },
    DiscardedWithoutIgnored(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange(i) => write!(f, "selected index {i} is out of range"),
            Violation::DuplicateIndex(i) => write!(f, "selected index {i} appears twice"),
            Violation::Cardinality { selected, required } => {
                write!(f, "cardinality: {selected} polynomials selected, at least {required} required")
            }
            Violation::BadEpsilon(e) => write!(f, "epsilon {e} is outside [0, 1]"),
            Violation::MissingBasis => write!(f, "no basis supplied"),
            Violation::RingMismatch => write!(f, "basis ring differs from the generators' ring"),
            Violation::NotGroebner(c) => write!(f, "certificate: {c}"),
            Violation::NotReduced(c) => write!(f, "reduced form: {c}"),
            Violation::GeneratorNotReduced(i) => {
                write!(f, "selected generator {i} does not reduce to zero modulo the basis")
            }
            Violation::BasisDiffers => write!(f, "basis differs from the recomputed reduced basis"),
            Violation::IgnoredInSelected { polynomial, variable } => {
                write!(f, "structural: selected polynomial {polynomial} contains ignored variable {variable}")
            }
            Violation::DiscardedWithoutIgnored(i) => {
                write!(f, "structural: discarded polynomial {i} contains no ignored variable")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Valid => &[],
            Verdict::Invalid(v) => v,
        }
    }
}

/// Checks a fractional solution against the full generator list. Every
/// problem found is reported; nothing here fails.
pub fn verify_fractional_solution<F: Field>(
    generators: &[Polynomial<F>],
    sol: &FractionalSolution<F>,
    mode: VerifyMode,
) -> Verdict {
    let mut out = Vec::new();
    let m = generators.len();
    let mut seen = BTreeSet::new();
    for &i in &sol.selected {
        if i >= m {
            out.push(Violation::IndexOutOfRange(i));
        } else if !seen.insert(i) {
            out.push(Violation::DuplicateIndex(i));
        }
    }
    if sol.epsilon < <Rational as Zero>::zero() || sol.epsilon > <Rational as One>::one() {
        out.push(Violation::BadEpsilon(sol.epsilon.clone()));
    }
    let required = required_size(&sol.epsilon, m);
    if BigInt::from(seen.len()) < required {
        out.push(Violation::Cardinality { selected: seen.len(), required });
    }
    let chosen: Vec<Polynomial<F>> = seen.iter().map(|&i| generators[i].clone()).collect();

    match &sol.basis {
        None => out.push(Violation::MissingBasis),
        Some(b) if generators.first().is_some_and(|g| **g.ring() != **b.ring()) => out.push(Violation::RingMismatch),
        Some(b) => {
            if let Err(e) = b.certify(&[]) {
                out.push(Violation::NotGroebner(e));
            }
            if let Err(e) = b.check_reduced() {
                out.push(Violation::NotReduced(e));
            }
            for &i in &seen {
                if !b.contains(&generators[i]).unwrap_or(false) {
                    out.push(Violation::GeneratorNotReduced(i));
                }
            }
            if mode == VerifyMode::Recompute {
                let expected: Vec<Polynomial<F>> = if chosen.is_empty() {
                    Vec::new()
                } else {
                    match buchberger(&chosen, b.order(), Budget::unlimited()) {
                        Ok(g) => g.elements().to_vec(),
                        Err(_) => Vec::new(),
                    }
                };
                if expected != b.elements() {
                    out.push(Violation::BasisDiffers);
                }
            }
        }
    }

    if let Some(ignored) = &sol.ignored_variables {
        for (i, g) in generators.iter().enumerate() {
            let hit = g.variables().into_iter().find(|v| ignored.contains(v));
            match (seen.contains(&i), hit) {
                (true, Some(v)) => {
                    out.push(Violation::IgnoredInSelected { polynomial: i, variable: g.ring().var_name(v).to_string() })
                }
                (false, None) => out.push(Violation::DiscardedWithoutIgnored(i)),
                _ => {}
            }
        }
    }

    if out.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid(out)
    }
}

/// Keeps exactly the polynomials free of ignored variables. The basis is
/// left unset and ε is the achieved fraction (1 for an empty system).
pub fn select_structurally_constrained<F: Field>(
    sys: &EncodedSystem<F>,
    ignored: &BTreeSet<usize>,
) -> FractionalSolution<F> {
    let selected: Vec<usize> = sys
        .polynomials
        .iter()
        .enumerate()
        .filter(|(_, p)| p.variables().is_disjoint(ignored))
        .map(|(i, _)| i)
        .collect();
    let epsilon = if sys.is_empty() {
        <Rational as One>::one()
    } else {
        Rational::new(BigInt::from(selected.len()), BigInt::from(sys.len()))
    };
    FractionalSolution { selected, basis: None, epsilon, ignored_variables: Some(ignored.clone()) }
}
