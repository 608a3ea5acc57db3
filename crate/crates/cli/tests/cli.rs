use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sha2::{Digest, Sha256};

use robustgb::satcore::generate::random_3cnf;
use robustgb::satcore::{brute_force_sat, emit_dimacs, DEFAULT_SAT_LIMIT};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robustgb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    let start = text.find('{').expect("report on stderr");
    serde_json::from_str(&text[start..]).expect("report parses")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

fn body_lines(poly_file: &str) -> Vec<&str> {
    poly_file
        .lines()
        .filter(|l| {
            !l.starts_with("field:") && !l.starts_with("vars:") && !l.starts_with("order:") && !l.starts_with('#')
        })
        .collect()
}

#[test]
fn encode_matches_golden() {
    let o = run(&["encode", data("four.cnf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(data("four.poly")).unwrap());
    let again = run(&["encode", data("four.cnf").to_str().unwrap()]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn encode_single_clause() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("one.cnf");
    std::fs::write(&f, "p cnf 3 1\n1 -2 3 0\n").unwrap();
    let o = run(&["encode", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines = body_lines(&text);
    assert_eq!(lines.len(), 1);
    // (x1 - 1)·x2·(x3 - 1)
    assert_eq!(lines[0], "x1*x2*x3 - x1*x2 - x2*x3 + x2");
}

#[test]
fn report_records_input_hash() {
    let path = data("four.cnf");
    let o = run(&["encode", path.to_str().unwrap()]);
    let r = report(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "encode");
    assert_eq!(r["outcome"]["status"], "ok");
    let expected = hex::encode(Sha256::digest(std::fs::read(&path).unwrap()));
    assert_eq!(r["inputs"][0]["sha256"], expected.as_str());
    assert_eq!(r["counters"]["clauses"], 4);
}

#[test]
fn non_mixed_refuses_mixed_formula() {
    let o = run(&["encode", "--non-mixed", data("four.cnf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(report(&o)["outcome"]["code"], 2);
}

#[test]
fn malformed_dimacs_is_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.cnf");
    std::fs::write(&f, "p cnf 3 1\n1 2 0\n").unwrap();
    assert_eq!(run(&["encode", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn groebner_of_inconsistent_system_is_one() {
    let o = run(&["groebner", data("trivial.poly").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body_lines(&stdout(&o)), vec!["1"]);
}

#[test]
fn groebner_budget_zero() {
    let o = run(&["groebner", "--budget", "0", data("trivial.poly").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert_eq!(report(&o)["outcome"]["status"], "budget_exceeded");
}

#[test]
fn groebner_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let input = data("four.poly");
    for out in [&a, &b] {
        let o = run(&["groebner", "--order", "grevlex", input.to_str().unwrap(), "-o", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let shuffled = run(&["groebner", "--order", "grevlex", "--shuffle-seed", "9", input.to_str().unwrap()]);
    assert_eq!(shuffled.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn groebner_priority_changes_elimination_order() {
    let o = run(&["groebner", "--priority", "x4,x3,x2,x1", data("four.poly").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# variable priority: x4 > x3 > x2 > x1\n"));
    assert_eq!(report(&o)["parameters"]["variable_order"][0], "x4");
}

#[test]
fn pipeline_satisfiable_full_selection() {
    let o = run(&["pipeline", data("four.cnf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["satisfied"], 4);
    assert_eq!(v["num_clauses"], 4);
}

#[test]
fn pipeline_unsatisfiable_is_empty_variety() {
    let o = run(&["pipeline", data("unsat.cnf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let r = report(&o);
    assert_eq!(r["outcome"]["status"], "error");
    assert_eq!(r["outcome"]["message"], "empty variety");
}

#[test]
fn pipeline_rejects_selection_below_epsilon() {
    let o = run(&["pipeline", "--ignored-vars", "2", data("four.cnf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn pipeline_final_stage_meets_bound() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 12 {
        let n = rng.gen_range(4..=7);
        let m = rng.gen_range(4..=12);
        let phi = random_3cnf(&mut rng, n, m);
        if !brute_force_sat(&phi, DEFAULT_SAT_LIMIT).unwrap().is_sat() {
            continue;
        }
        let f = dir.path().join(format!("{done}.cnf"));
        std::fs::write(&f, emit_dimacs(&phi)).unwrap();
        let seed = done.to_string();
        let o = run(&["pipeline", "--epsilon", "3/4", "--final-stage", "on", "--seed", &seed, f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v = json_out(&o);
        // ⌈(1 + 3/4)/2 · m⌉ = ⌈7m/8⌉
        let bound = (7 * m).div_ceil(8);
        assert!(v["satisfied"].as_u64().unwrap() as usize >= bound);
        assert_eq!(v["bound"], bound.to_string().as_str());
        let rerun = run(&["pipeline", "--epsilon", "3/4", "--final-stage", "on", "--seed", &seed, f.to_str().unwrap()]);
        assert_eq!(o.stdout, rerun.stdout);
        done += 1;
    }
}

#[test]
fn verify_accepts_pipeline_solution_and_flags_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    let o = run(&["pipeline", data("four.cnf").to_str().unwrap(), "--solution", sol.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let ok = run(&["verify", sol.to_str().unwrap(), data("four.poly").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_out(&ok)["valid"], true);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&sol).unwrap()).unwrap();
    v["selected"] = serde_json::json!([0]);
    std::fs::write(&sol, v.to_string()).unwrap();
    let bad = run(&["verify", sol.to_str().unwrap(), data("four.poly").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(5));
    let verdict = json_out(&bad);
    assert_eq!(verdict["valid"], false);
    assert!(!verdict["violations"].as_array().unwrap().is_empty());
}

#[test]
fn vandermonde_gadget_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("two.cnf");
    std::fs::write(&cnf, "p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n").unwrap();
    let side = dir.path().join("side.json");
    let o = run(&[
        "gadget",
        "vandermonde",
        cnf.to_str().unwrap(),
        "--epsilon",
        "1/2",
        "--sidecar",
        side.to_str().unwrap(),
        "--verify-subsets",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body_lines(&stdout(&o)).len(), 4);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(s["schema"], 1);
    assert_eq!(s["M"], 4);
    assert_eq!(s["points"], serde_json::json!(["0", "1", "2", "3"]));
    // Subsets of 4 rows with at least 2 members: 6 + 4 + 1.
    assert_eq!(report(&o)["counters"]["subsets_checked"], 11);
}

#[test]
fn colorideal_triangle() {
    let o = run(&["gadget", "colorideal", data("triangle.graph").to_str().unwrap(), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body_lines(&stdout(&o)).len(), 6);
}

#[test]
fn structuregraph_has_one_triangle_per_clause() {
    let o = run(&["gadget", "structuregraph", data("four.poly").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph structure {"));
    assert_eq!(dot.matches(" -- ").count(), 12);
    assert_eq!(report(&o)["counters"]["triangles"], 4);
}

#[test]
fn cpartial_gadget_size() {
    let o = run(&["gadget", "cpartial", data("four.cnf").to_str().unwrap(), "--copies", "2"]);
    assert_eq!(o.status.code(), Some(0));
    // Three copies of four polynomials plus the linking polynomial.
    assert_eq!(body_lines(&stdout(&o)).len(), 13);
}

#[test]
fn color_greedy_reports_cut() {
    let o = run(&["color", "greedy", data("triangle.graph").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["cut_edges"], 3);
    assert_eq!(v["cut_fraction"], "1/1");
    assert_eq!(report(&o)["counters"]["cut_edges"], 3);
}

#[test]
fn color_project_keeps_three_classes() {
    let o = run(&["color", "project", "--k", "5", data("triangle.graph").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_out(&o)["colors_used"].as_u64().unwrap() <= 3);
}

#[test]
fn color_decide() {
    let g = data("triangle.graph");
    let no = run(&["color", "decide", g.to_str().unwrap(), "--k", "2"]);
    assert_eq!(no.status.code(), Some(0));
    assert_eq!(json_out(&no)["decision"], "not_k_colorable");
    let yes = run(&["color", "decide", g.to_str().unwrap(), "--k", "2", "--removed", "3"]);
    assert_eq!(json_out(&yes)["decision"], "colored");
    let dependent = run(&["color", "decide", g.to_str().unwrap(), "--k", "2", "--removed", "1,2"]);
    assert_eq!(dependent.status.code(), Some(4));
}

#[test]
fn color_decide_rejects_uncertified_basis() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("basis.poly");
    std::fs::write(&b, "vars: x1 x2 x3\norder: grevlex\nx1 - 1\n").unwrap();
    let o =
        run(&["color", "decide", data("triangle.graph").to_str().unwrap(), "--k", "2", "--basis", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn color_iterate() {
    let o = run(&["color", "iterate", data("triangle.graph").to_str().unwrap(), "--epsilon", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["colored_vertices"], 3);
    assert_eq!(v["remaining"].as_array().unwrap().last().unwrap(), 0);
}
