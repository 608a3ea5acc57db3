use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use robustgb::coloring::{
    cpartial_color_decide, greedy_fractional_color, iterate_vertex_oracle, project_to_three_colors, shuffled_order,
    subset_oracle, ColorDecision, ColoringResult, DecideError, Graph,
};
use robustgb::polyring::{buchberger, AnySystem, Budget, Field, GroebnerBasis, OrderKind, PolySystem, TermOrder};
use robustgb::reductions::coloring_ideal;
use robustgb::Rational;

use crate::algebra::{read_graph, read_system};
use crate::report::{CliError, RunReport};
use crate::{done, fail, parse_epsilon, parse_index_list, CmdResult, Io};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOrder {
    Natural,
    Shuffled,
}

#[derive(Args, Debug)]
pub struct GreedyArgs {
    /// Graph edge-list file.
    pub input: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "natural")]
    pub order: VertexOrder,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Args, Debug)]
pub struct IterateArgs {
    /// Graph edge-list file.
    pub input: PathBuf,
    /// Fraction of the remaining vertices the exhaustive oracle colours per round.
    #[arg(long)]
    pub epsilon: String,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    /// Graph edge-list file.
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Removed independent vertex sets, `;`-separated lists of 1-based
    /// vertices, e.g. `1,4;7`.
    #[arg(long, default_value = "")]
    pub removed: String,
    /// Gröbner basis of the retained colouring polynomials. Computed here
    /// (grevlex, over Q) when omitted.
    #[arg(long)]
    pub basis: Option<PathBuf>,
    #[command(flatten)]
    pub io: Io,
}

#[derive(Subcommand, Debug)]
pub enum ColorKind {
    /// Greedy k-colouring cutting at least (1 - 1/k) of the edges.
    Greedy(GreedyArgs),
    /// Greedy k-colouring, then keep the three largest classes.
    Project(GreedyArgs),
    /// Colour by repeated calls to a partial 3-colouring oracle.
    Iterate(IterateArgs),
    /// Decide k-colourability from a partial Gröbner answer.
    Decide(DecideArgs),
}

impl ColorKind {
    pub fn name(&self) -> &'static str {
        match self {
            ColorKind::Greedy(_) => "color greedy",
            ColorKind::Project(_) => "color project",
            ColorKind::Iterate(_) => "color iterate",
            ColorKind::Decide(_) => "color decide",
        }
    }

    pub fn io(&self) -> &Io {
        match self {
            ColorKind::Greedy(a) | ColorKind::Project(a) => &a.io,
            ColorKind::Iterate(a) => &a.io,
            ColorKind::Decide(a) => &a.io,
        }
    }
}

fn record_cut(rep: &mut RunReport, c: &ColoringResult, g: &Graph) {
    rep.count("cut_edges", c.cut_edges);
    rep.count("colored_vertices", c.num_colored());
    rep.count("colors_used", c.colors_used());
    rep.count("edges", g.num_edges());
}

fn to_text(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("serializes") + "\n"
}

fn greedy_run(a: &GreedyArgs, rep: &mut RunReport) -> Result<(Graph, ColoringResult), CliError> {
    rep.param("k", a.k);
    rep.param("order", if a.order == VertexOrder::Natural { "natural" } else { "shuffled" });
    rep.param("seed", a.seed);
    if a.k == 0 {
        return Err(CliError::format("k must be at least 1"));
    }
    let g = read_graph(&a.input, rep)?;
    let order = (a.order == VertexOrder::Shuffled).then(|| shuffled_order(g.num_vertices(), a.seed));
    let c = greedy_fractional_color(&g, a.k, order.as_deref());
    Ok((g, c))
}

fn decide_in<F: Field>(
    g: &Graph,
    k: usize,
    removed: &[BTreeSet<usize>],
    basis: PolySystem<F>,
) -> Result<ColorDecision, DecideError> {
    let order = TermOrder::new(basis.order.unwrap_or(OrderKind::GradedRevLex), basis.ring.num_vars());
    let b = GroebnerBasis::from_elements(&basis.ring, basis.polys, order).map_err(|_| DecideError::RingMismatch)?;
    cpartial_color_decide(g, k, removed, &b)
}

fn computed_basis(g: &Graph, k: usize, removed: &[BTreeSet<usize>]) -> Result<GroebnerBasis<Rational>, CliError> {
    let spec = coloring_ideal::<Rational>(g, k, ()).map_err(CliError::format)?;
    let gone: BTreeSet<usize> = removed.iter().flatten().copied().collect();
    let kept: Vec<_> = spec.polynomials.iter().filter(|p| p.variables().is_disjoint(&gone)).cloned().collect();
    let order = TermOrder::grevlex(g.num_vertices());
    if kept.is_empty() {
        return GroebnerBasis::from_elements(&spec.ring, Vec::new(), order).map_err(CliError::semantic);
    }
    buchberger(&kept, &order, Budget::unlimited()).map_err(CliError::semantic)
}

fn decide(a: &DecideArgs, rep: &mut RunReport) -> Result<String, CliError> {
    rep.param("k", a.k);
    rep.param("removed", a.removed.clone());
    let g = read_graph(&a.input, rep)?;
    let removed: Vec<BTreeSet<usize>> = a
        .removed
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_index_list(s, g.num_vertices()).map(|v| v.into_iter().map(|i| i - 1).collect()))
        .collect::<Result<_, _>>()?;
    rep.param("c", removed.len());
    let decision = match &a.basis {
        Some(path) => match read_system(path, rep)? {
            AnySystem::Rational(s) => decide_in(&g, a.k, &removed, s),
            AnySystem::Prime(s) => decide_in(&g, a.k, &removed, s),
        },
        None => cpartial_color_decide(&g, a.k, &removed, &computed_basis(&g, a.k, &removed)?),
    };
    let decision = decision.map_err(|e| match e {
        DecideError::Certificate(_) => CliError::verification(e),
        DecideError::RingMismatch => CliError::format(e),
        DecideError::Reduction(_) => CliError::format(e),
        e => CliError::semantic(e),
    })?;
    let doc = match decision {
        ColorDecision::NotKColorable => {
            rep.count("colorable", false);
            json!({ "schema": 1, "decision": "not_k_colorable", "k": a.k })
        }
        ColorDecision::ProperColoring(c) => {
            rep.count("colorable", true);
            record_cut(rep, &c, &g);
            let mut doc = c.to_json(&g);
            doc["decision"] = json!("colored");
            doc
        }
    };
    Ok(to_text(&doc))
}

pub fn color(kind: &ColorKind, rep: &mut RunReport) -> CmdResult {
    let text = match kind {
        ColorKind::Greedy(a) => greedy_run(a, rep).map(|(g, c)| {
            record_cut(rep, &c, &g);
            to_text(&c.to_json(&g))
        }),
        ColorKind::Project(a) => greedy_run(a, rep).and_then(|(g, c)| {
            if a.k < 3 {
                return Err(CliError::format("projection needs k ≥ 3"));
            }
            let p = project_to_three_colors(&g, &c);
            rep.count("greedy_cut_edges", c.cut_edges);
            record_cut(rep, &p, &g);
            Ok(to_text(&p.to_json(&g)))
        }),
        ColorKind::Iterate(a) => {
            rep.param("epsilon", a.epsilon.clone());
            rep.param("oracle", "exhaustive");
            parse_epsilon(&a.epsilon).and_then(|eps| {
                let g = read_graph(&a.input, rep)?;
                let r = iterate_vertex_oracle(&g, subset_oracle(eps.clone()), &eps).map_err(CliError::semantic)?;
                rep.count("rounds", r.rounds);
                record_cut(rep, &r.coloring, &g);
                let mut doc = r.coloring.to_json(&g);
                doc["rounds"] = json!(r.rounds);
                doc["remaining"] = json!(r.remaining);
                Ok(to_text(&doc))
            })
        }
        ColorKind::Decide(a) => decide(a, rep),
    }
    .map_err(fail)?;
    done(text)
}
