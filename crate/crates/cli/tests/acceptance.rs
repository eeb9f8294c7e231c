//! Acceptance target: one PASS/FAIL line per criterion.
//!
//! Pinned tolerances: residuals must be exactly zero (exact rational
//! arithmetic, no epsilon); Fock sample point q = 3/2, p = 5/7, N = 12,
//! d = 8; runtime budgets 10 s, 15 s and 30 s for criteria 1, 2 and 4.

use std::process::{Command, ExitCode};

use qsvir_cli::acceptance::{all_criteria, CriterionResult};

fn exit_code(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_qsvir"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
}

/// The command-line half of criteria 1 and 8: exit codes of the shipped binary.
fn cli_contract() -> Vec<(String, bool)> {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/");
    let flipped = format!("{corpus}q_sign_flipped.alg");
    let q = format!("{corpus}q.alg");
    vec![
        (
            "verify --mode q --range -1..4 exits 0".to_string(),
            exit_code(&["verify", "--mode", "q", "--range", "-1..4"]) == Some(0),
        ),
        (
            "verify --file q.alg exits 0".to_string(),
            exit_code(&["verify", "--file", &q, "--range", "-1..2"]) == Some(0),
        ),
        (
            "verify --file q_sign_flipped.alg exits 1".to_string(),
            exit_code(&["verify", "--file", &flipped, "--range", "-1..2"]) == Some(1),
        ),
        (
            "hopf --axioms --indices -3..3 exits 0".to_string(),
            exit_code(&["hopf", "--axioms", "--indices", "-3..3"]) == Some(0),
        ),
    ]
}

fn main() -> ExitCode {
    let mut results: Vec<CriterionResult> = Vec::new();
    for c in all_criteria() {
        let r = c();
        println!("{}", r.line());
        results.push(r);
    }
    let mut contract_ok = true;
    for (what, ok) in cli_contract() {
        println!("cli {}: {what}", if ok { "PASS" } else { "FAIL" });
        contract_ok &= ok;
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!(
        "acceptance: {} of {} criteria pass{}",
        results.len() - failed,
        results.len(),
        if contract_ok { "" } else { "; exit-code contract broken" }
    );
    if failed == 0 && contract_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
