use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use qsvir_cli::corpus;
use qsvir_core::relations::{check_instance, BuiltinRelations, RelationSource};
use qsvir_core::{parse_algebra_def, DeformationMode, ExtLetter, Family, FamilyId, FileEngine};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qsvir"))
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn corpus_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Run with `--out`, check the exit code and validate against the bundled schema.
fn run_report(args: &[&str], schema: &str, out: &str, code: i32) -> Value {
    let path = tmp(out);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    all.extend(["--out", p]);
    let o = run(&all);
    assert_eq!(
        o.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = compiled.validate(&report) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{schema} report invalid: {msgs:?}");
    }
    report
}

#[test]
fn verify_q_passes() {
    let r = run_report(&["verify", "--mode", "q", "--range", "-1..4"], "verify", "verify_q.json", 0);
    assert!(r["summary"]["pass"].as_u64().unwrap() > 0);
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn verify_single_family_and_ranges() {
    let r = run_report(
        &["verify", "--mode", "pq", "--families", "lg", "--l-range", "0..2", "--k-range", "-1"],
        "verify",
        "verify_lg.json",
        0,
    );
    assert_eq!(r["families"].as_array().unwrap().len(), 1);
    assert_eq!(r["families"][0]["instances"].as_array().unwrap().len(), 3);
}

#[test]
fn negative_control_fails_with_residual() {
    let file = corpus_path("q_sign_flipped.alg");
    let r = run_report(
        &["verify", "--file", file.to_str().unwrap(), "--range", "-1..3"],
        "verify",
        "verify_flipped.json",
        1,
    );
    let ll = &r["families"][0];
    assert_eq!(ll["id"], "LL");
    let failing: Vec<&Value> = ll["instances"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["status"] == "FAIL")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|i| i["residual_text"] != "0"));
    let others_pass = r["families"]
        .as_array()
        .unwrap()
        .iter()
        .skip(1)
        .all(|f| f["instances"].as_array().unwrap().iter().all(|i| i["status"] != "FAIL"));
    assert!(others_pass);
}

#[test]
fn bundled_files_verify_from_disk() {
    for name in ["classical.alg", "q.alg", "pq.alg"] {
        let file = corpus_path(name);
        run_report(
            &["verify", "--file", file.to_str().unwrap(), "--range", "-1..2"],
            "verify",
            &format!("verify_{name}.json"),
            0,
        );
    }
    let file = corpus_path("pq_wrong_exchange.alg");
    run_report(
        &["verify", "--file", file.to_str().unwrap(), "--range", "-1..2"],
        "verify",
        "verify_wrong_exchange.json",
        1,
    );
}

#[test]
fn classical_limit_report() {
    let r = run_report(&["classical-limit", "--range", "-1..3"], "classical-limit", "limit.json", 0);
    assert_eq!(r["mode"], "classical-limit");
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn hopf_axioms_pass() {
    let r = run_report(&["hopf", "--axioms", "--indices", "-3..3"], "hopf", "hopf_axioms.json", 0);
    assert_eq!(r["axiom_results"].as_array().unwrap().len(), 63);
    assert_eq!(r["table_source"], "paper");
}

#[test]
fn hopf_homomorphism_reports_fg_failure() {
    let r = run_report(&["hopf", "--homomorphism"], "hopf", "hopf_all.json", 1);
    let failing: Vec<&str> = r["homomorphism_results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|h| h["holds"] == false)
        .map(|h| h["family"].as_str().unwrap())
        .collect();
    assert!(failing.iter().all(|f| *f == "FG" || *f == "LG"));
    let solver = r["solver"].as_array().unwrap();
    let fg = solver.iter().find(|s| s["family"] == "FG").unwrap();
    assert_eq!(fg["consistent"], false);
    assert_eq!(fg["conflict"][0], "no bilinear solution");
}

#[test]
fn hopf_subset_passes_with_both_tables() {
    for table in ["paper", "solved"] {
        run_report(
            &["hopf", "--homomorphism", "--families", "LL,GG,FF", "--table", table, "--mode", "pq"],
            "hopf",
            &format!("hopf_{table}.json"),
            0,
        );
    }
    let r = run_report(
        &["hopf", "--homomorphism", "--families", "LL,LF,FF,LG,GG", "--table", "solved"],
        "hopf",
        "hopf_solved_q.json",
        0,
    );
    assert_eq!(r["table_source"], "solved");
}

#[test]
fn solve_exponents_reports() {
    for mode in ["q", "pq"] {
        let r = run_report(
            &["solve-exponents", "--mode", mode, "--samples", "2"],
            "solve-exponents",
            &format!("solve_{mode}.json"),
            0,
        );
        assert_eq!(r["summary"]["sample_failures"], 0);
        assert_eq!(r["summary"]["inconsistent"], 1);
        let ll = r["families"].as_array().unwrap().iter().find(|f| f["family"] == "LL").unwrap();
        assert_eq!(ll["paper_member"], true);
    }
}

#[test]
fn fock_reports() {
    let r = run_report(&["fock", "--mode", "pq", "--range", "-1..3"], "fock", "fock_pq.json", 0);
    assert_eq!(r["params"]["p"], "5/7");
    assert_eq!(r["summary"]["disagree"], 0);
    run_report(&["fock", "--mode", "classical", "--range", "0..2"], "fock", "fock_c.json", 0);
    assert_eq!(run(&["fock", "--q", "1", "--range", "0..0"]).status.code(), Some(2));
}

#[test]
fn parse_check_corpus_and_errors() {
    let r = run_report(&["parse-check"], "parse-check", "parse.json", 0);
    let files = r["files"].as_array().unwrap();
    assert_eq!(files.len(), corpus::ALL.len());
    assert!(files.iter().all(|f| f["round_trip"] == true));

    let bad = tmp("bad.alg");
    std::fs::write(&bad, "generator a+ degree 0\nrule: a+ a- -> 1\n").unwrap();
    let r = run_report(&["parse-check", bad.to_str().unwrap()], "parse-check", "parse_bad.json", 2);
    assert_eq!(r["files"][0]["error"]["line"], 2);
    assert_eq!(r["files"][0]["error"]["col"], 10);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--range", "3..1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--families", "XY"]).status.code(), Some(2));
    assert_eq!(run(&["hopf", "--mode", "classical"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--file", "/nonexistent/q.alg"]).status.code(), Some(3));
    let o = run(&["verify", "--range", "0..0", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn file_engine_matches_builtin() {
    let files = [
        (corpus::CLASSICAL, DeformationMode::Classical),
        (corpus::Q, DeformationMode::Q),
        (corpus::PQ, DeformationMode::PQ),
    ];
    for (text, mode) in files {
        let engine = FileEngine::new("t", &parse_algebra_def(text).unwrap()).unwrap();
        let builtin = BuiltinRelations::new(mode);
        for f in [Family::L, Family::G, Family::F] {
            for i in 0..4 {
                let l = ExtLetter::new(f, i);
                assert_eq!(engine.realize_letter(l).unwrap(), builtin.realize_letter(l).unwrap(), "{mode} {l}");
            }
        }
        for id in FamilyId::ALL {
            for (i1, i2) in [(0, 1), (2, 0), (1, 3), (-1, 2)] {
                let a = builtin.instance(id.as_str(), i1, i2);
                let b = engine.instance(id.as_str(), i1, i2);
                match (a, b) {
                    (Ok(a), Ok(b)) => {
                        assert_eq!(a.difference(), b.difference(), "{mode} {id}({i1},{i2})");
                        let ca = check_instance(&builtin, &a).unwrap();
                        let cb = check_instance(&engine, &b).unwrap();
                        assert_eq!(ca.lhs_normal, cb.lhs_normal);
                        assert!(cb.residual.holds);
                    }
                    (Err(a), Err(b)) => assert!(a.is_inadmissible() && b.is_inadmissible()),
                    (a, b) => panic!("{mode} {id}({i1},{i2}): {a:?} vs {b:?}"),
                }
            }
        }
    }
}

#[test]
fn corpus_round_trip_is_a_fixed_point() {
    for (name, text, _) in corpus::ALL {
        let def = parse_algebra_def(text).unwrap();
        let rendered = def.render();
        let again = parse_algebra_def(&rendered).unwrap();
        assert_eq!(again, def, "{name}");
        assert_eq!(again.render(), rendered, "{name}");
    }
}
