use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::Args;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use robustgb::extraction::{assign_from_solution, select_structurally_constrained, ExtractionError};
use robustgb::polyring::{write_system, Budget, Field, FieldTag, GroebnerError, PrimeModulus, TermOrder};
use robustgb::reductions::{encode_3sat, encode_nonmixed, EncodedSystem};
use robustgb::satcore::{parse_dimacs, CnfFormula};
use robustgb::{Gf, Rational};

use crate::report::{CliError, RunReport};
use crate::{done, fail, parse_epsilon, parse_index_list, ratio_string, CmdResult, Io, Switch};

#[derive(Args, Debug)]
pub struct EncodeArgs {
    /// DIMACS CNF file with three literals per clause.
    pub input: PathBuf,
    /// Use the single-monomial encoding; every clause must be pure.
    #[arg(long)]
    pub non_mixed: bool,
    /// Coefficient field, `Q` or `GF(p)`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    /// DIMACS CNF file with three literals per clause.
    pub input: PathBuf,
    /// Required fraction of polynomials kept, as `p/q`.
    #[arg(long, default_value = "1")]
    pub epsilon: String,
    /// SAT variables whose clauses are discarded, e.g. `3,7`. Without this
    /// flag a random structural selection meeting ε is drawn from the seed.
    #[arg(long)]
    pub ignored_vars: Option<String>,
    /// Fix undecided variables by conditional expectations instead of
    /// setting them false.
    #[arg(long, value_enum, default_value = "off")]
    pub final_stage: Switch,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of reductions in the Gröbner computation.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Also write the fractional solution (selection and basis) as JSON.
    #[arg(long)]
    pub solution: Option<PathBuf>,
    #[command(flatten)]
    pub io: Io,
}

pub fn parse_field(s: &str) -> Result<FieldTag, CliError> {
    s.parse().map_err(CliError::format)
}

pub fn read_formula(path: &Path, rep: &mut RunReport) -> Result<CnfFormula, CliError> {
    let bytes = rep.read_input(path)?;
    let phi = parse_dimacs(&bytes).map_err(|e| CliError::format(format!("{}: {e}", path.display())))?;
    rep.count("variables", phi.num_vars());
    rep.count("clauses", phi.num_clauses());
    Ok(phi)
}

pub fn encode_with<F: Field>(phi: &CnfFormula, non_mixed: bool, ctx: F::Ctx) -> Result<EncodedSystem<F>, CliError> {
    let sys = if non_mixed { encode_nonmixed::<F>(phi, ctx) } else { encode_3sat::<F>(phi, ctx) };
    sys.map_err(CliError::format)
}

fn encode_text<F: Field>(phi: &CnfFormula, non_mixed: bool, ctx: F::Ctx) -> Result<String, CliError> {
    let sys = encode_with::<F>(phi, non_mixed, ctx)?;
    Ok(write_system(&sys.ring, &sys.polynomials, &TermOrder::lex(sys.ring.num_vars()), false))
}

pub fn encode(a: &EncodeArgs, rep: &mut RunReport) -> CmdResult {
    rep.param("non_mixed", a.non_mixed);
    rep.param("field", a.field.clone());
    let field = parse_field(&a.field).map_err(fail)?;
    let phi = read_formula(&a.input, rep).map_err(fail)?;
    let text = match field {
        FieldTag::Rationals => encode_text::<Rational>(&phi, a.non_mixed, ()),
        FieldTag::PrimeField(p) => encode_text::<Gf>(&phi, a.non_mixed, PrimeModulus::new(p).expect("validated")),
    }
    .map_err(fail)?;
    rep.count("polynomials", phi.num_clauses());
    done(text)
}

/// Draws ignored variables in random order, keeping each only if at least
/// `⌈ε·m⌉` polynomials survive. Variables in no polynomial are always ignored.
pub fn random_ignored(sys: &EncodedSystem<Rational>, eps: &Rational, seed: u64) -> BTreeSet<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sys.ring.num_vars();
    let used: BTreeSet<usize> = sys.polynomials.iter().flat_map(|p| p.variables()).collect();
    let mut ignored: BTreeSet<usize> = (0..n).filter(|v| !used.contains(v)).collect();
    let need = (eps * Rational::from_integer(sys.len().into())).ceil().to_integer();
    let mut vars: Vec<usize> = used.into_iter().collect();
    vars.shuffle(&mut rng);
    for v in vars {
        if rng.gen_bool(0.5) {
            continue;
        }
        ignored.insert(v);
        let kept = sys.polynomials.iter().filter(|p| p.variables().is_disjoint(&ignored)).count();
        if BigInt::from(kept) < need {
            ignored.remove(&v);
        }
    }
    ignored
}

fn ceil_times(r: &Rational, m: usize) -> BigInt {
    (r * Rational::from_integer(m.into())).ceil().to_integer()
}

pub fn pipeline(a: &PipelineArgs, rep: &mut RunReport) -> CmdResult {
    rep.param("epsilon", a.epsilon.clone());
    rep.param("final_stage", matches!(a.final_stage, Switch::On));
    rep.param("seed", a.seed);
    rep.param("budget", a.budget);
    rep.param("order", "lex");
    let eps = parse_epsilon(&a.epsilon).map_err(fail)?;
    let phi = read_formula(&a.input, rep).map_err(fail)?;
    let sys = encode_with::<Rational>(&phi, false, ()).map_err(fail)?;
    let n = sys.ring.num_vars();
    let m = sys.len();
    let ignored: BTreeSet<usize> = match &a.ignored_vars {
        Some(list) => parse_index_list(list, n).map_err(fail)?.into_iter().map(|v| v - 1).collect(),
        None => random_ignored(&sys, &eps, a.seed),
    };
    rep.param("ignored_vars", ignored.iter().map(|v| format!("y{}", v + 1)).collect::<Vec<_>>());
    let mut sol = select_structurally_constrained(&sys, &ignored);
    rep.count("selected", sol.selected.len());
    if sol.epsilon < eps {
        return Err(fail(CliError::semantic(format!(
            "selection keeps {} of {m} polynomials, below ⌈{}·{m}⌉",
            sol.selected.len(),
            ratio_string(&eps)
        ))));
    }
    sol.epsilon = eps.clone();
    let budget = a.budget.map_or(Budget::unlimited(), Budget::steps);
    let sol =
        sol.with_computed_basis(&sys.polynomials, &sys.ring, &TermOrder::lex(n), budget).map_err(|e| match e {
            GroebnerError::BudgetExceeded(_) => fail(CliError::budget(e)),
            e => fail(CliError::semantic(e)),
        })?;
    let basis_len = sol.basis.as_ref().map_or(0, |b| b.len());
    rep.count("basis_size", basis_len);
    if let Some(path) = &a.solution {
        let text = serde_json::to_string_pretty(&sol.to_json(&sys.ring)).expect("serializes") + "\n";
        std::fs::write(path, text).map_err(|e| fail(CliError::format(format!("{}: {e}", path.display()))))?;
    }
    let out = assign_from_solution(&phi, &sol, a.final_stage == Switch::On).map_err(|e| match e {
        ExtractionError::EmptyVariety => fail(CliError::semantic("empty variety")),
        e => fail(CliError::semantic(e)),
    })?;
    let undecided = out.partial.undecided_vars().count();
    let bound_off = ceil_times(&eps, m);
    let bound_on = ceil_times(&((Rational::from_integer(1.into()) + &eps) / Rational::from_integer(2.into())), m);
    rep.count("undecided", undecided);
    rep.count("satisfied", out.satisfied);
    let doc = json!({
        "schema": 1,
        "num_clauses": m,
        "satisfied": out.satisfied,
        "bound": if a.final_stage == Switch::On { bound_on.to_string() } else { bound_off.to_string() },
        "selected": sol.selected.len(),
        "undecided": undecided,
        "partial": out.partial.to_json(),
        "assignment": out.assignment.to_json(),
    });
    done(serde_json::to_string_pretty(&doc).expect("serializes") + "\n")
}
