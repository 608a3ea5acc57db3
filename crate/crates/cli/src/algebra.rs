use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use robustgb::coloring::Graph;
use robustgb::extraction::{verify_fractional_solution, FractionalSolution, VerifyMode};
use robustgb::polyring::{
    buchberger, buchberger_with, parse_system, write_system, AnySystem, BuchbergerOptions, Budget, Field, FieldTag,
    GroebnerError, GroebnerStats, OrderKind, PairSelection, PolySystem, Polynomial, PrimeModulus, TermOrder,
};
use robustgb::reductions::{build_structure_graph, coloring_ideal, strong_cpartial_construct, vandermonde_amplify};
use robustgb::{Gf, Rational};

use crate::report::{CliError, RunReport};
use crate::sat::{encode_with, parse_field, read_formula};
use crate::{done, fail, parse_epsilon, parse_rational, CmdResult, Io, Output};

macro_rules! by_field {
    ($tag:expr, $f:ident($($arg:expr),*)) => {
        match $tag {
            FieldTag::Rationals => $f::<Rational>($($arg,)* ()),
            FieldTag::PrimeField(p) => $f::<Gf>($($arg,)* PrimeModulus::new(p).expect("validated")),
        }
    };
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderArg {
    Lex,
    Grlex,
    Grevlex,
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => OrderKind::Lex,
            OrderArg::Grlex => OrderKind::GradedLex,
            OrderArg::Grevlex => OrderKind::GradedRevLex,
        }
    }
}

#[derive(Args, Debug)]
pub struct GroebnerArgs {
    /// Polynomial file.
    pub input: PathBuf,
    /// Term order; defaults to the file's `order:` header, else lex.
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,
    /// Variable priority, highest first, e.g. `x3,x1,x2`. Defaults to the
    /// declared order.
    #[arg(long)]
    pub priority: Option<String>,
    /// Maximum number of reductions (generators plus S-polynomials).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Pick critical pairs in a seeded random order instead of the normal strategy.
    #[arg(long)]
    pub shuffle_seed: Option<u64>,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Subcommand, Debug)]
pub enum GadgetKind {
    /// Mix an encoded formula through a Vandermonde matrix.
    Vandermonde(VandermondeArgs),
    /// Copies of an encoded formula tied by a linking polynomial.
    Cpartial(CpartialArgs),
    /// Colouring ideal of a graph.
    Colorideal(ColorIdealArgs),
    /// Variable co-occurrence graph of a polynomial file, as DOT.
    Structuregraph(StructureArgs),
}

impl GadgetKind {
    pub fn name(&self) -> &'static str {
        match self {
            GadgetKind::Vandermonde(_) => "gadget vandermonde",
            GadgetKind::Cpartial(_) => "gadget cpartial",
            GadgetKind::Colorideal(_) => "gadget colorideal",
            GadgetKind::Structuregraph(_) => "gadget structuregraph",
        }
    }

    pub fn io(&self) -> &Io {
        match self {
            GadgetKind::Vandermonde(a) => &a.io,
            GadgetKind::Cpartial(a) => &a.io,
            GadgetKind::Colorideal(a) => &a.io,
            GadgetKind::Structuregraph(a) => &a.io,
        }
    }
}

#[derive(Args, Debug)]
pub struct VandermondeArgs {
    /// DIMACS CNF file.
    pub input: PathBuf,
    #[arg(long)]
    pub epsilon: String,
    /// Comma-separated distinct matrix points; defaults to 0, 1, …, M-1.
    #[arg(long)]
    pub points: Option<String>,
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long)]
    pub non_mixed: bool,
    /// Write the JSON sidecar here; otherwise it is embedded in the report.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Check that every subset of at least m mixed polynomials has the same
    /// triviality as the source system (M ≤ 16).
    #[arg(long)]
    pub verify_subsets: bool,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Args, Debug)]
pub struct CpartialArgs {
    /// DIMACS CNF file.
    pub input: PathBuf,
    /// Number of deletable variable sets c.
    #[arg(long)]
    pub copies: usize,
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long)]
    pub non_mixed: bool,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Args, Debug)]
pub struct ColorIdealArgs {
    /// Graph edge-list file.
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Args, Debug)]
pub struct StructureArgs {
    /// Polynomial file.
    pub input: PathBuf,
    #[command(flatten)]
    pub io: Io,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Certificate,
    Recompute,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Solution JSON (as written by `pipeline --solution`).
    pub solution: PathBuf,
    /// Polynomial file holding the full generator list.
    pub generators: PathBuf,
    #[arg(long, value_enum, default_value = "certificate")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub io: Io,
}

pub fn read_system(path: &Path, rep: &mut RunReport) -> Result<AnySystem, CliError> {
    let text = rep.read_text(path)?;
    let sys = parse_system(&text).map_err(|e| CliError::format(format!("{}: {e}", path.display())))?;
    rep.count("generators", sys.len());
    Ok(sys)
}

fn record_stats(rep: &mut RunReport, s: &GroebnerStats) {
    rep.count("steps", s.steps);
    rep.count("spolys_reduced", s.spolys_reduced);
    rep.count("zero_reductions", s.zero_reductions);
    rep.count("pairs_skipped_coprime", s.pairs_skipped_coprime);
    rep.count("pairs_skipped_chain", s.pairs_skipped_chain);
    rep.count("peak_basis_size", s.peak_basis_size);
}

fn groebner_in<F: Field>(a: &GroebnerArgs, sys: PolySystem<F>, rep: &mut RunReport) -> Result<String, CliError> {
    let kind = a.order.map(OrderKind::from).or(sys.order).unwrap_or(OrderKind::Lex);
    let n = sys.ring.num_vars();
    let order = match &a.priority {
        None => TermOrder::new(kind, n),
        Some(list) => {
            let perm = list
                .split(',')
                .map(|name| {
                    sys.ring
                        .var_index(name.trim())
                        .ok_or_else(|| CliError::format(format!("unknown variable `{}` in --priority", name.trim())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            TermOrder::with_priority(kind, perm).map_err(CliError::format)?
        }
    };
    rep.param("order", kind.to_string());
    rep.param("variable_order", order.priority().iter().map(|&v| sys.ring.var_name(v).to_string()).collect::<Vec<_>>());
    let opts = BuchbergerOptions {
        budget: a.budget.map_or(Budget::unlimited(), Budget::steps),
        selection: a.shuffle_seed.map_or(PairSelection::Normal, PairSelection::Shuffled),
    };
    let computed = buchberger_with(&sys.polys, &order, &opts).map_err(|e| match e {
        GroebnerError::BudgetExceeded(ref st) => {
            record_stats(rep, &st.stats);
            CliError::budget(&e)
        }
        e => CliError::semantic(e),
    })?;
    record_stats(rep, &computed.stats);
    rep.count("basis_size", computed.basis.len());
    let mut text = write_system(&sys.ring, computed.basis.elements(), &order, true);
    if !order.priority().iter().enumerate().all(|(r, &v)| r == v) {
        let names: Vec<&str> = order.priority().iter().map(|&v| sys.ring.var_name(v)).collect();
        text = format!("# variable priority: {}\n{text}", names.join(" > "));
    }
    Ok(text)
}

pub fn groebner(a: &GroebnerArgs, rep: &mut RunReport) -> CmdResult {
    rep.param("budget", a.budget);
    rep.param("shuffle_seed", a.shuffle_seed);
    let sys = read_system(&a.input, rep).map_err(fail)?;
    let text = match sys {
        AnySystem::Rational(s) => groebner_in(a, s, rep),
        AnySystem::Prime(s) => groebner_in(a, s, rep),
    }
    .map_err(fail)?;
    done(text)
}

fn parse_points<F: Field>(s: &str, ctx: &F::Ctx) -> Result<Vec<F>, CliError> {
    s.split(',')
        .map(|t| {
            let q = parse_rational(t.trim())?;
            F::from_ratio(ctx, q.numer(), q.denom())
                .ok_or_else(|| CliError::format(format!("point `{t}` is not defined in this field")))
        })
        .collect()
}

fn is_trivial<F: Field>(gens: &[Polynomial<F>], order: &TermOrder) -> bool {
    !gens.is_empty() && buchberger(gens, order, Budget::unlimited()).expect("unlimited budget").is_trivial()
}

fn vandermonde_in<F: Field>(a: &VandermondeArgs, rep: &mut RunReport, ctx: F::Ctx) -> Result<String, CliError> {
    let eps = parse_epsilon(&a.epsilon)?;
    let phi = read_formula(&a.input, rep)?;
    let sys = encode_with::<F>(&phi, a.non_mixed, ctx.clone())?;
    let points = a.points.as_deref().map(|s| parse_points::<F>(s, &ctx)).transpose()?;
    let amp = vandermonde_amplify(&sys, &eps, points).map_err(CliError::format)?;
    let big_m = amp.points.len();
    rep.count("m", amp.m());
    rep.count("M", big_m);
    let order = TermOrder::lex(sys.ring.num_vars());
    if a.verify_subsets {
        if big_m > 16 {
            return Err(CliError::semantic(format!("--verify-subsets needs M ≤ 16, got {big_m}")));
        }
        let expected = is_trivial(&sys.polynomials, &order);
        let m = amp.m();
        let subsets: Vec<u32> = (0u32..1 << big_m).filter(|s| s.count_ones() as usize >= m.max(1)).collect();
        let mismatched: Vec<u32> = subsets
            .par_iter()
            .copied()
            .filter(|&s| {
                let gens: Vec<Polynomial<F>> =
                    (0..big_m).filter(|i| s >> i & 1 == 1).map(|i| amp.polynomials[i].clone()).collect();
                is_trivial(&gens, &order) != expected
            })
            .collect();
        rep.count("subsets_checked", subsets.len());
        rep.count("source_trivial", expected);
        rep.count("subset_mismatches", mismatched.len());
        if let Some(s) = mismatched.first() {
            let rows: Vec<usize> = (0..big_m).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect();
            return Err(CliError::verification(format!(
                "{} subsets disagree with the source system, first rows {rows:?}",
                mismatched.len()
            )));
        }
    }
    let sidecar = amp.sidecar();
    match &a.sidecar {
        Some(p) => {
            let text = serde_json::to_string_pretty(&sidecar).expect("serializes") + "\n";
            std::fs::write(p, text).map_err(|e| CliError::format(format!("{}: {e}", p.display())))?;
        }
        None => rep.artifact("sidecar", sidecar),
    }
    Ok(write_system(&sys.ring, &amp.polynomials, &order, false))
}

fn cpartial_in<F: Field>(a: &CpartialArgs, rep: &mut RunReport, ctx: F::Ctx) -> Result<String, CliError> {
    let phi = read_formula(&a.input, rep)?;
    let sys = encode_with::<F>(&phi, a.non_mixed, ctx)?;
    let cp = strong_cpartial_construct(&sys, a.copies).map_err(CliError::format)?;
    rep.count("polynomials", cp.polynomials.len());
    rep.count("ring_variables", cp.ring.num_vars());
    Ok(write_system(&cp.ring, &cp.polynomials, &TermOrder::lex(cp.ring.num_vars()), false))
}

pub fn read_graph(path: &Path, rep: &mut RunReport) -> Result<Graph, CliError> {
    let text = rep.read_text(path)?;
    let g = Graph::parse(&text).map_err(|e| CliError::format(format!("{}: {e}", path.display())))?;
    rep.count("vertices", g.num_vertices());
    rep.count("edges", g.num_edges());
    Ok(g)
}

fn colorideal_in<F: Field>(a: &ColorIdealArgs, rep: &mut RunReport, ctx: F::Ctx) -> Result<String, CliError> {
    let g = read_graph(&a.input, rep)?;
    let spec = coloring_ideal::<F>(&g, a.k, ctx).map_err(CliError::format)?;
    rep.count("polynomials", spec.polynomials.len());
    Ok(write_system(&spec.ring, &spec.polynomials, &TermOrder::grevlex(g.num_vertices()), false))
}

fn structure_in<F: Field>(sys: &PolySystem<F>, rep: &mut RunReport) -> String {
    let sg = build_structure_graph(&sys.ring, &sys.polys);
    rep.count("nodes", sg.num_nodes());
    rep.count("cliques", sys.polys.len());
    rep.count("triangles", sg.triangle_count());
    rep.count("flagged_nodes", sg.flagged_nodes().len());
    sg.to_dot()
}

pub fn gadget(kind: &GadgetKind, rep: &mut RunReport) -> CmdResult {
    let text = match kind {
        GadgetKind::Vandermonde(a) => {
            rep.param("epsilon", a.epsilon.clone());
            rep.param("field", a.field.clone());
            rep.param("points", a.points.clone());
            let field = parse_field(&a.field).map_err(fail)?;
            by_field!(field, vandermonde_in(a, rep))
        }
        GadgetKind::Cpartial(a) => {
            rep.param("c", a.copies);
            rep.param("field", a.field.clone());
            let field = parse_field(&a.field).map_err(fail)?;
            by_field!(field, cpartial_in(a, rep))
        }
        GadgetKind::Colorideal(a) => {
            rep.param("k", a.k);
            rep.param("field", a.field.clone());
            let field = parse_field(&a.field).map_err(fail)?;
            by_field!(field, colorideal_in(a, rep))
        }
        GadgetKind::Structuregraph(a) => read_system(&a.input, rep).map(|sys| match sys {
            AnySystem::Rational(s) => structure_in(&s, rep),
            AnySystem::Prime(s) => structure_in(&s, rep),
        }),
    }
    .map_err(fail)?;
    done(text)
}

fn verify_in<F: Field>(a: &VerifyArgs, sys: PolySystem<F>, solution: &Value, rep: &mut RunReport) -> CmdResult {
    let sol = FractionalSolution::<F>::from_json(solution, &sys.ring).map_err(|e| fail(CliError::format(e)))?;
    let mode = match a.mode {
        ModeArg::Certificate => VerifyMode::Certificate,
        ModeArg::Recompute => VerifyMode::Recompute,
    };
    let verdict = verify_fractional_solution(&sys.polys, &sol, mode);
    let violations: Vec<String> = verdict.violations().iter().map(|v| v.to_string()).collect();
    rep.count("selected", sol.selected.len());
    rep.count("violations", violations.len());
    let doc = json!({
        "schema": 1,
        "valid": verdict.is_valid(),
        "violations": violations,
    });
    let text = serde_json::to_string_pretty(&doc).expect("serializes") + "\n";
    if verdict.is_valid() {
        done(text)
    } else {
        Err((CliError::verification(format!("{} violations", violations.len())), Some(Output { text })))
    }
}

pub fn verify(a: &VerifyArgs, rep: &mut RunReport) -> CmdResult {
    rep.param(
        "mode",
        match a.mode {
            ModeArg::Certificate => "certificate",
            ModeArg::Recompute => "recompute",
        },
    );
    let sol_text = rep.read_text(&a.solution).map_err(fail)?;
    let solution: Value = serde_json::from_str(&sol_text)
        .map_err(|e| fail(CliError::format(format!("{}: {e}", a.solution.display()))))?;
    match read_system(&a.generators, rep).map_err(fail)? {
        AnySystem::Rational(s) => verify_in(a, s, &solution, rep),
        AnySystem::Prime(s) => verify_in(a, s, &solution, rep),
    }
}
