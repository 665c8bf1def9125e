use std::path::PathBuf;

use grz_lab::run;
use grzlab_core::construct::powerset_button_model;
use grzlab_core::control::labeling_from_buttons;
use grzlab_core::formula::parse;
use grzlab_core::frame::Frame;
use grzlab_core::io;
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn grz(args: &[&str]) -> Output {
    grz_stdin(args, "")
}

fn grz_stdin(args: &[&str], input: &str) -> Output {
    let mut stdin = input.as_bytes();
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("grz-lab").chain(args.iter().copied());
    let code = run(argv, &mut stdin, &mut stdout, &mut stderr);
    Output {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

const GRZ: &str = "[]([](p -> []p) -> p) -> p";
const DOT3: &str = "[]([]p -> q) | []([]q -> p)";
const DIAMOND: &str = r#"{"worlds": 4, "edges": [[0,1],[0,2],[1,3],[2,3]], "close": {"reflexive": true, "transitive": true}}"#;

#[test]
fn parse_expands_macros() {
    let out = grz(&["parse", "penultimate(p)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "p & <>~p & [](~p -> []~p)");

    let out = grz(&["--json", "parse", "contingent(q)"]);
    let v = json(&out);
    assert_eq!(v[0]["formula"], "<>q & <>~q");
    assert_eq!(v[0]["vars"][0], "q");
}

#[test]
fn parse_errors_exit_two() {
    let out = grz(&["parse", "p &"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("byte 3"), "{}", out.stderr);
    assert_eq!(grz(&["parse", "nope(p)"]).code, 2);
    assert_eq!(grz(&["parse"]).code, 2);
}

#[test]
fn formulas_from_file_and_stdin() {
    let path = file("formulas.txt", "p\n\n[]q\n");
    let out = grz(&["parse", "--file", &path]);
    assert_eq!(out.stdout, "p\n[]q\n");
    let out = grz_stdin(&["parse", "--file", "-", "r"], "s | t\n");
    assert_eq!(out.stdout, "s | t\nr\n");
    assert_eq!(grz(&["parse", "--file", "/nonexistent/formulas"]).code, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(grz(&["frobnicate"]).code, 2);
    assert_eq!(grz(&["valid", "--class", "blob", "p"]).code, 2);
    assert_eq!(grz(&["search", "--logic", "S5", "p"]).code, 2);
    let help = grz(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("export-dot"));
}

#[test]
fn grz_is_valid_on_small_posets() {
    let out = grz(&["valid", "--class", "poset", "--max", "4", GRZ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("valid (24 frame(s) examined)"));
}

#[test]
fn valid_on_a_single_frame() {
    let cluster = file("cluster.json", r#"{"worlds": 2, "edges": [[0,1],[1,0]], "close": {"reflexive": true}}"#);
    let out = grz(&["--json", "valid", "--frame", &cluster, GRZ, "[]p -> p"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_eq!(v[0]["valid"], false);
    assert_eq!(v[1]["valid"], true);
    let witness = v[0]["witness"].to_string();
    let (m, point) = io::read_model(&witness).unwrap();
    assert!(!m.satisfies(point.unwrap(), &parse(GRZ).unwrap()));
}

#[test]
fn valid_defaults_to_the_logic_suite() {
    let out = grz(&["valid", "--logic", "grz.3", "--max", "4"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert_eq!(out.stdout.lines().count(), 5);
}

#[test]
fn dot3_search_on_boolean_algebras() {
    let out = grz(&["--json", "search", "--logic", "grz.2", "--class", "boolean", DOT3]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_eq!(v[0]["outcome"], "countermodel");
    let (m, point) = io::read_model(&v[0]["witness"].to_string()).unwrap();
    assert_eq!(m.frame, Frame::diamond());
    assert_eq!(point, Some(0));
    assert!(!m.satisfies(0, &parse(DOT3).unwrap()));
}

#[test]
fn exhausted_search_is_inconclusive() {
    let out = grz(&["search", "--logic", "grz", "--max", "3", GRZ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("exhausted (inconclusive)"));
}

#[test]
fn k_search_finds_dead_end() {
    let out = grz(&["--json", "search", "--logic", "K", "--max", "1", "[]p -> p"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)[0]["witness"]["edges"], Value::Array(vec![]));
}

#[test]
fn caps_exit_three() {
    let out = grz(&["valid", "--class", "arbitrary", "--max", "4", "--cap", "100", "p -> p"]);
    assert_eq!(out.code, 3, "{}", out.stderr);
    let six = (0..6).map(|i| format!("b{i}")).collect::<Vec<_>>();
    let m = file("dot.json", r#"{"worlds": 1, "edges": [[0,0]]}"#);
    let mut args = vec!["check", "--model", &m, "--control", "independent_buttons"];
    args.extend(six.iter().map(String::as_str));
    assert_eq!(grz(&args).code, 3);
}

#[test]
fn catalog_search() {
    let out = grz(&["search", "--logic", "grz.2", "--catalog", "--max", "6"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(out.stdout.lines().count(), 20);
    assert!(!out.stdout.contains("exhausted"));
}

#[test]
fn check_at_a_point() {
    let model = r#"{"worlds": 3, "edges": [[0,1],[1,2]], "close": {"reflexive": true, "transitive": true}, "valuation": {"p": [1]}, "point": 0}"#;
    let out = grz_stdin(&["check", "--model", "-", "contingent(p)", "<>[]p"], model);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, "<>p & <>~p: true\n<>[]p: false\n");
    let out = grz_stdin(&["check", "--model", "-", "--point", "1", "p"], model);
    assert_eq!(out.code, 0);
    let bad = r#"{"worlds": 1, "valuation": {"p": [3]}}"#;
    assert_eq!(grz_stdin(&["check", "--model", "-", "p"], bad).code, 2);
}

#[test]
fn switch_check() {
    let dot = file("dot_p.json", r#"{"worlds": 1, "edges": [[0,0]]}"#);
    let out = grz(&["check", "--model", &dot, "--control", "switch", "p"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("failed: switch 0"));
}

#[test]
fn unravel_model_file() {
    let m = file(
        "diamond_p.json",
        r#"{"worlds": 4, "edges": [[0,1],[0,2],[1,3],[2,3]], "close": {"reflexive": true, "transitive": true}, "valuation": {"p": [1, 3]}}"#,
    );
    let out = grz(&["--json", "unravel", "--model", &m]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["worlds"], 6);
    assert_eq!(v["copy_map"].as_array().unwrap().len(), 6);
    let (u, _) = io::read_model(&v.to_string()).unwrap();
    assert_eq!(u.value("p").to_vec(), vec![1, 2, 4, 5]);

    let out = grz(&["--json", "unravel", "--model", &m, "--tree", "--regularize"]);
    assert_eq!(json(&out)["worlds"], 7);

    let anti = file("anti.json", r#"{"worlds": 2, "edges": [[0,0],[1,1]]}"#);
    assert_eq!(grz(&["unravel", "--model", &anti]).code, 2);
}

#[test]
fn unravel_sweep() {
    let out = grz(&["unravel", "--sweep", "--max", "3", "--samples", "3", "--seed", "9"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("0 failure(s)"));
}

#[test]
fn buttons_and_ratchets() {
    let out = grz(&["buttons", "--max", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 3);
    assert_eq!(grz(&["ratchet", "--n", "4"]).code, 0);
    assert_eq!(grz(&["buttons", "--n", "7"]).code, 3);
    assert_eq!(grz(&["ratchet"]).code, 2);
}

#[test]
fn label_frames() {
    let d = file("diamond.json", DIAMOND);
    let out = grz(&["label", "--frame", &d, "--samples", "5"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("model labelings 5/5"));
    let anti = file("anti2.json", r#"{"worlds": 2, "edges": [[0,0],[1,1]]}"#);
    assert_eq!(grz(&["label", "--frame", &anti]).code, 2);
    let chain = file("chain3.json", r#"{"worlds": 3, "edges": [[0,1],[1,2]], "close": {"reflexive": true, "transitive": true}}"#);
    assert_eq!(grz(&["label", "--frame", &chain, "--ratchet"]).code, 0);
    assert_eq!(grz(&["label", "--max", "4", "--samples", "4"]).code, 0);
}

#[test]
fn verify_labeling_files() {
    let (n, b) = powerset_button_model(3).unwrap();
    let mut l = labeling_from_buttons(&Frame::diamond(), 0, &b).unwrap();
    let lf = file("diamond_labeling.json", &io::labeling_json(&l).to_string());
    let nf = file("cube.json", &io::model_json(&n.model, Some(0)).to_string());
    let src = file(
        "diamond_src.json",
        r#"{"worlds": 4, "edges": [[0,1],[0,2],[1,3],[2,3]], "close": {"reflexive": true, "transitive": true}, "valuation": {"p": [1, 3]}}"#,
    );
    let out = grz(&["verify-labeling", "--labeling", &lf, "--model", &nf, "--source", &src]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("model labeling: holds"));

    l.labels.swap(1, 2);
    l.labels.swap(0, 3);
    let bad = file("bad_labeling.json", &io::labeling_json(&l).to_string());
    let out = grz(&["--json", "verify-labeling", "--labeling", &bad, "--model", &nf]);
    assert_eq!(out.code, 1);
    assert!(!json(&out)["violations"].as_array().unwrap().is_empty());
}

#[test]
fn lemmas_pass() {
    let out = grz(&["lemmas", "--max", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().filter(|l| l.contains("pass")).count(), 5);
}

#[test]
fn enumerate_counts() {
    let v = json(&grz(&["--json", "enumerate", "--class", "poset", "--max", "4"]));
    let counts: Vec<u64> = v.as_array().unwrap().iter().map(|l| l["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 2, 5, 16]);
    let v = json(&grz(&["--json", "enumerate", "--class", "poset", "--max", "3", "--labeled"]));
    assert_eq!(v[2]["count"], 19);
    let frame = io::read_frame(&v[2]["frames"][0].to_string()).unwrap();
    assert_eq!(frame.size(), 3);
}

#[test]
fn export_dot() {
    let d = file("diamond_dot.json", DIAMOND);
    let out = grz(&["export-dot", "--frame", &d]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("digraph"));
    assert_eq!(out.stdout.matches(" -> ").count(), 4);
    assert_eq!(out.stdout.matches("label=").count(), 4);

    let c = file("chain_dot.json", r#"{"worlds": 3, "edges": [[0,1],[1,2]], "close": {"reflexive": true, "transitive": true}}"#);
    assert_eq!(grz(&["export-dot", "--frame", &c]).stdout.matches(" -> ").count(), 2);

    let (n, _) = powerset_button_model(2).unwrap();
    let m = file("square.json", &io::model_json(&n.model, None).to_string());
    let out = grz(&["export-dot", "--model", &m]);
    assert!(out.stdout.contains("w3\\nb0, b1"));
    assert_eq!(grz(&["export-dot"]).code, 2);
    assert_eq!(grz(&["export-dot", "--frame", &d, "--model", &m]).code, 2);
}
