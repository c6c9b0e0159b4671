use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn oploc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oploc")).args(args).env_remove("OPLOC_MAX_MEM_MB").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = oploc(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (code(&out), v)
}

#[test]
fn arity_one_height_zero_words_over_z2() {
    // alternating words in F(w), B(w) of length ≤ 3, both starting letters, plus the bare leaf
    let z2 = data("z2.json");
    let (c, v) = json(&["th", "enumerate", "--operad", &z2, "--arity", "1", "--height", "0", "--max-pieces", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["count"], 7);
    for p in 0..=4 {
        let (_, v) = json(&["th", "enumerate", "--operad", &z2, "--height", "0", "--max-pieces", &p.to_string()]);
        assert_eq!(v["result"]["count"], 2 * p + 1);
    }
}

#[test]
fn catalog_and_table_operads_pass_the_axioms() {
    for f in ["comm.json", "ass3.json", "z2.json", "z3.json", "idempotent.json", "weighted_z2.json", "z2_table.json"] {
        let out = oploc(&["check-operad", &data(f)]);
        assert_eq!(code(&out), 0, "{f}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn a_broken_table_exits_one_with_witnesses() {
    let (c, v) = json(&["check-operad", &data("broken_unit.json")]);
    assert_eq!(c, 1);
    assert_eq!(v["status"], "failed");
    let violations = v["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(violations.iter().all(|x| x["axiom"].is_string() && x["witness"].is_string()));
}

#[test]
fn witnesses_come_with_their_faces() {
    let (c, v) = json(&["th", "witnesses", "--operad", &data("z2.json"), "--w", "w"]);
    assert_eq!(c, 0);
    let ws = v["result"]["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 2);
    assert_eq!(ws[0]["faces"][1], "#1");
    assert_eq!(ws[0]["faces"][0], "B(w)[F(w)[#1]]");
    assert_eq!(ws[1]["faces"][0], "#1");
    assert_eq!(ws[1]["faces"][1], "F(w)[B(w)[#1]]");
}

#[test]
fn input_errors_exit_two() {
    let z2 = data("z2.json");
    assert_eq!(code(&oploc(&["check-operad", &data("missing.json")])), 2);
    assert_eq!(code(&oploc(&["th", "witnesses", "--operad", &data("z2_trivial_w.json"), "--w", "w"])), 2);
    assert_eq!(code(&oploc(&["th", "witnesses", "--operad", &z2, "--w", "nope"])), 2);
    assert_eq!(code(&oploc(&["smc", "compose", "--operad", &data("comm.json"), "e2/1,2", "e2/1,2"])), 2);
    // W = {1} is not closed in weighted Comm: w·(w∘*) lands back in O(1)
    let mut args = vec!["check-operad", "--w-only"];
    let wc = data("weighted_z2.json");
    let dir = tempfile::tempdir().unwrap();
    let trivial_w = dir.path().join("wc.json");
    std::fs::write(&trivial_w, r#"{"catalog": "weighted_comm", "max_arity": 2, "monoid": {"cyclic": 2}, "w": ["1"]}"#).unwrap();
    let path = trivial_w.to_string_lossy().into_owned();
    args.push(&path);
    assert_eq!(code(&oploc(&args)), 2);
    assert_eq!(code(&oploc(&["check-operad", "--w-only", &wc])), 0);
}

#[test]
fn truncation_and_resource_limits_exit_three() {
    let out = oploc(&["alg", "free", "--operad", &data("comm.json"), "--carrier", "*,x"]);
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_oploc"))
        .args(["th", "enumerate", "--operad", &data("z2.json"), "--height", "1", "--max-pieces", "4"])
        .env("OPLOC_MAX_MEM_MB", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn non_localizable_actions_exit_one() {
    // e acts by collapsing, so it has no inverse once it is in W
    let dir = tempfile::tempdir().unwrap();
    let op = dir.path().join("idem.json");
    std::fs::write(&op, r#"{"catalog": "monoid_plus", "monoid": {"builtin": "idempotent"}}"#).unwrap();
    let (c, v) = json(&["alg", "localize", "--operad", &op.to_string_lossy(), &data("collapse_idempotent.json")]);
    assert_eq!(c, 1);
    assert_eq!(v["violations"][0]["axiom"], "not-localizable");
    let (c, _) = json(&["alg", "localize", "--operad", &data("idempotent.json"), &data("collapse_idempotent.json")]);
    assert_eq!(c, 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let z2 = data("z2.json");
    let runs = [
        ["th", "enumerate", "--operad", &z2, "--height", "1", "--max-pieces", "3", "--format", "json"],
        ["dk", "enumerate", "--operad", &z2, "--height", "1", "--max-length", "3", "--format", "json"],
        ["th", "pi0", "--operad", &z2, "--height", "0", "--max-pieces", "4", "--format", "json"],
    ];
    for args in &runs {
        let (a, b) = (oploc(args), oploc(args));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn enumerated_hammocks_feed_back_into_the_other_commands() {
    let z2 = data("z2.json");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("all.json");
    let out_s = out.to_string_lossy().into_owned();
    let status = oploc(&["th", "enumerate", "--operad", &z2, "--height", "1", "--max-pieces", "2", "--format", "json", "--out", &out_s]);
    assert_eq!(code(&status), 0);
    assert!(status.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for (i, h) in v["result"]["hammocks"].as_array().unwrap().iter().enumerate() {
        let file = dir.path().join(format!("h{i}.json"));
        std::fs::write(&file, h["hammock"].to_string()).unwrap();
        let file = file.to_string_lossy().into_owned();
        // enumerated hammocks are already reduced
        let (c, r) = json(&["th", "reduce", "--operad", &z2, &file]);
        assert_eq!(c, 0);
        assert_eq!(r["result"]["display"], h["display"]);
        let (c, _) = json(&["th", "face", "--operad", &z2, &file, "--index", "1"]);
        assert_eq!(c, 0);
    }
}

#[test]
fn grafting_a_backward_piece_onto_a_forward_piece() {
    let z2 = data("z2.json");
    let (c, v) = json(&["th", "graft", "--operad", &z2, &data("backward_w.json"), &data("forward_w.json"), "--strategy", "strict"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["display"], "B(w)[F(w)[#1]]");
}

#[test]
fn dk_hammocks_compose_by_concatenation() {
    let z2 = data("z2.json");
    let zz = data("dk_zigzag.json");
    let (c, v) = json(&["dk", "compose", "--operad", &z2, &zz, &zz]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["hammock"]["columns"].as_array().unwrap().len(), 4);
}

#[test]
fn smc_counts_for_comm_are_powers() {
    let (c, v) = json(&["smc", "roundtrip", "--operad", &data("comm.json"), "--max-object", "3"]);
    assert_eq!(c, 0);
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            assert_eq!(v["result"]["hom_sizes"][a as usize][b as usize], a.pow(b) as u64, "C({a},{b})");
        }
    }
    let (c, v) = json(&["smc", "compose", "--operad", &data("comm.json"), "e2/1,2", "e1|e1/2,1"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["morphism"], "e2@2/1,2");
}

#[test]
fn comparisons_pass_on_z2() {
    let z2 = data("z2.json");
    let (c, v) = json(&["compare", "monoid-bijection", "--operad", &z2, "--height", "1", "--max-length", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["hammocks"], serde_json::json!([9, 121]));
    let (c, _) = json(&["compare", "rfunctor", "--operad", &z2, "--height", "1"]);
    assert_eq!(c, 0);
    let (c, _) = json(&["compare", "pad-roundtrip", "--operad", &data("weighted_z2.json"), "--arity", "2", "--height", "1"]);
    assert_eq!(c, 0);
}

#[test]
fn algebra_commands() {
    let (c, _) = json(&["alg", "check", "--operad", &data("comm.json"), &data("join3.json")]);
    assert_eq!(c, 0);
    let (c, v) = json(&["alg", "free", "--operad", &data("z2.json"), "--carrier", "*,x"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["elements"].as_array().unwrap().len(), 3);
    let (c, v) = json(&["alg", "bar", "--operad", &data("comm.json"), "--inner", &data("ass3.json"), &data("join3.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["level_sizes"].as_array().unwrap().len(), 3);
    let (c, v) = json(&["alg", "localize", "--operad", &data("z2.json"), &data("swap_z2.json")]);
    assert_eq!(c, 0);
    let action = v["result"]["action"].as_array().unwrap();
    let backward = action.iter().find(|a| a["hammock"] == "B(w)[#1]").unwrap();
    assert_eq!(backward["values"], serde_json::json!(["(*) ↦ *", "(x) ↦ y", "(y) ↦ x"]));
}
