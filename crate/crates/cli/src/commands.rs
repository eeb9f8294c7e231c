use std::path::Path;

use qsvir_core::fock::{find_disagreement, representation_fidelity, FidelityRow, Ket, SampleParams};
use qsvir_core::hopf::solver::{sample_table, solve_exponents as solve_family, solved_table, Solved, SolverReport, SOLVER_GRID};
use qsvir_core::hopf::{axiom_suite, homomorphism_sweep, AxiomResult, ExponentTable, HomRecord, HopfError};
use qsvir_core::relations::{
    check_instance, classical_limit_check, BuiltinRelations, RelationSource, Report, Status,
};
use qsvir_core::{fock, parse_algebra_def, AlgError, DeformationMode, FamilyId, FileEngine, IndexRange, Rational};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::{
    emit, read_file, CliError, FockArgs, GridArgs, HopfArgs, LimitArgs, Outcome, ParseCheckArgs, SolveArgs,
    TableSource, VerifyArgs, DEFAULT_GRID,
};

fn hopf_err(e: HopfError) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_err(path: &Path, source: AlgError) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        source,
    }
}

fn print_report_failures(report: &Report) {
    for fam in &report.families {
        for r in fam.instances.iter().filter(|r| r.status == Status::Fail) {
            eprintln!("FAIL {}({},{}): residual {}", fam.id, r.l, r.k, r.residual_text);
        }
    }
    let s = &report.summary;
    eprintln!("{}: {} pass, {} fail, {} skipped", report.mode, s.pass, s.fail, s.skipped);
}

/// Relation families of a definition file, filtered by `--families`.
pub fn file_families(engine: &FileEngine, grid: &GridArgs) -> Result<Vec<String>, CliError> {
    let known = engine.family_ids();
    if grid.families.is_empty() {
        return Ok(known);
    }
    grid.families
        .iter()
        .map(|f| {
            known
                .iter()
                .find(|k| k.eq_ignore_ascii_case(f))
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("relation `{f}` is not defined in the file")))
        })
        .collect()
}

pub fn load_engine(path: &Path) -> Result<FileEngine, CliError> {
    let text = read_file(path)?;
    let def = parse_algebra_def(&text).map_err(|e| parse_err(path, e))?;
    let stem = path.file_stem().map_or("file".into(), |s| s.to_string_lossy().into_owned());
    FileEngine::new(&stem, &def).map_err(|e| parse_err(path, e))
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let (lr, kr) = a.grid.ranges(DEFAULT_GRID);
    let report = match &a.file {
        Some(path) => {
            let engine = load_engine(path)?;
            let fams = file_families(&engine, &a.grid)?;
            qsvir_core::sweep(&engine, &fams, lr, kr)
        }
        None => {
            let fams: Vec<String> = a.grid.family_ids()?.iter().map(|f| f.as_str().to_string()).collect();
            qsvir_core::sweep(&BuiltinRelations::new(a.mode), &fams, lr, kr)
        }
    };
    print_report_failures(&report);
    emit(&report, &a.out)?;
    Ok(Outcome::from_pass(report.summary.fail == 0))
}

pub fn classical_limit(a: &LimitArgs) -> Result<Outcome, CliError> {
    let (lr, kr) = a.grid.ranges(DEFAULT_GRID);
    let report = classical_limit_check(&a.grid.family_ids()?, lr, kr);
    for fam in &report.families {
        for r in fam.instances.iter().filter(|r| r.status == Status::Fail) {
            eprintln!("FAIL {}({},{}) from {}: {}", fam.id, r.l, r.k, r.from, r.detail);
        }
    }
    let s = &report.summary;
    eprintln!("classical limit: {} pass, {} fail, {} skipped", s.pass, s.fail, s.skipped);
    emit(&report, &a.out)?;
    Ok(Outcome::from_pass(s.fail == 0))
}

#[derive(Debug, Serialize)]
pub struct HopfSummary {
    pub axioms_pass: usize,
    pub axioms_fail: usize,
    pub homomorphism_pass: usize,
    pub homomorphism_fail: usize,
}

#[derive(Debug, Serialize)]
pub struct HopfReport {
    pub table_source: String,
    pub mode: DeformationMode,
    pub table: ExponentTable,
    pub axiom_results: Vec<AxiomResult>,
    pub homomorphism_results: Vec<HomRecord>,
    pub solver: Vec<SolverReport>,
    pub summary: HopfSummary,
}

pub fn exponent_table(source: TableSource, mode: DeformationMode) -> Result<ExponentTable, CliError> {
    match source {
        TableSource::Paper => Ok(ExponentTable::paper(mode).0),
        TableSource::Solved => solved_table(mode)
            .map_err(hopf_err)?
            .ok_or_else(|| CliError::Usage(format!("the consistent families of {mode} mode have no integral joint solution"))),
    }
}

fn deformed(mode: DeformationMode, command: &str) -> Result<(), CliError> {
    if mode == DeformationMode::Classical {
        return Err(CliError::Usage(format!("{command} needs --mode q or --mode pq")));
    }
    Ok(())
}

pub fn hopf(a: &HopfArgs) -> Result<Outcome, CliError> {
    deformed(a.mode, "hopf")?;
    let (axioms, hom) = if a.axioms || a.homomorphism {
        (a.axioms, a.homomorphism)
    } else {
        (true, true)
    };
    let table = exponent_table(a.table, a.mode)?;
    let axiom_results = if axioms {
        axiom_suite(a.indices, &table, a.mode).map_err(hopf_err)?
    } else {
        Vec::new()
    };
    let (homomorphism_results, solver) = if hom {
        let ids = a.grid.family_ids()?;
        let (lr, kr) = a.grid.ranges(SOLVER_GRID);
        let records = homomorphism_sweep(&ids, a.mode, lr, kr, &table).map_err(hopf_err)?;
        let paper = ExponentTable::paper(a.mode);
        let solver = ids
            .iter()
            .map(|&f| solve_family(f, a.mode, SOLVER_GRID).map(|s| s.report(&paper)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(hopf_err)?;
        (records, solver)
    } else {
        (Vec::new(), Vec::new())
    };
    for r in axiom_results.iter().filter(|r| !r.holds()) {
        eprintln!(
            "FAIL axioms {}: coassoc {}, counit {}, antipode {}",
            r.letter, r.coassoc, r.counit, r.antipode
        );
    }
    for r in homomorphism_results.iter().filter(|r| !r.holds) {
        eprintln!("FAIL homomorphism {}({},{}): {}", r.family, r.l, r.k, r.residual_text);
    }
    let summary = HopfSummary {
        axioms_pass: axiom_results.iter().filter(|r| r.holds()).count(),
        axioms_fail: axiom_results.iter().filter(|r| !r.holds()).count(),
        homomorphism_pass: homomorphism_results.iter().filter(|r| r.holds).count(),
        homomorphism_fail: homomorphism_results.iter().filter(|r| !r.holds).count(),
    };
    eprintln!(
        "hopf {} ({} table): axioms {} pass, {} fail; homomorphism {} pass, {} fail",
        a.mode, table.source, summary.axioms_pass, summary.axioms_fail, summary.homomorphism_pass, summary.homomorphism_fail
    );
    let pass = summary.axioms_fail == 0 && summary.homomorphism_fail == 0;
    let report = HopfReport {
        table_source: table.source.clone(),
        mode: a.mode,
        table,
        axiom_results,
        homomorphism_results,
        solver,
        summary,
    };
    emit(&report, &a.out)?;
    Ok(Outcome::from_pass(pass))
}

#[derive(Debug, Serialize)]
pub struct SampleCheck {
    pub table: Vec<i64>,
    pub instances: usize,
    pub failures: Vec<HomRecord>,
}

#[derive(Debug, Serialize)]
pub struct SolveFamily {
    #[serde(flatten)]
    pub solver: SolverReport,
    pub samples: Vec<SampleCheck>,
}

#[derive(Debug, Serialize)]
pub struct SolveSummary {
    pub consistent: usize,
    pub inconsistent: usize,
    pub paper_members: usize,
    pub samples_checked: usize,
    pub sample_failures: usize,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub mode: DeformationMode,
    pub grid: IndexRange,
    pub holdout: IndexRange,
    pub families: Vec<SolveFamily>,
    pub solved_table: Option<ExponentTable>,
    pub summary: SolveSummary,
}

/// Solver verdicts plus held-out checks of tables sampled from each solution set.
pub fn solve_report(
    mode: DeformationMode,
    ids: &[FamilyId],
    grid: IndexRange,
    holdout: IndexRange,
    samples: usize,
    seed: u64,
) -> Result<SolveReport, CliError> {
    let paper = ExponentTable::paper(mode);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut families = Vec::new();
    for &id in ids {
        let sol = solve_family(id, mode, grid).map_err(hopf_err)?;
        let mut checks = Vec::new();
        if let Solved::Consistent(rref) = &sol.solved {
            for _ in 0..samples {
                let Some(table) = sample_table(rref, mode, &mut rng) else {
                    checks.push(SampleCheck {
                        table: Vec::new(),
                        instances: 0,
                        failures: Vec::new(),
                    });
                    continue;
                };
                let records = homomorphism_sweep(&[id], mode, holdout, holdout, &table).map_err(hopf_err)?;
                checks.push(SampleCheck {
                    table: table.to_vector(),
                    instances: records.len(),
                    failures: records.into_iter().filter(|r| !r.holds).collect(),
                });
            }
        }
        families.push(SolveFamily {
            solver: sol.report(&paper),
            samples: checks,
        });
    }
    let summary = SolveSummary {
        consistent: families.iter().filter(|f| f.solver.consistent).count(),
        inconsistent: families.iter().filter(|f| !f.solver.consistent).count(),
        paper_members: families.iter().filter(|f| f.solver.paper_member).count(),
        samples_checked: families.iter().map(|f| f.samples.len()).sum(),
        sample_failures: families
            .iter()
            .flat_map(|f| &f.samples)
            .filter(|s| s.instances == 0 || !s.failures.is_empty())
            .count(),
    };
    Ok(SolveReport {
        mode,
        grid,
        holdout,
        families,
        solved_table: solved_table(mode).map_err(hopf_err)?,
        summary,
    })
}

pub fn solve_exponents(a: &SolveArgs) -> Result<Outcome, CliError> {
    deformed(a.mode, "solve-exponents")?;
    let ids = GridArgs {
        l_range: None,
        k_range: None,
        range: None,
        families: a.families.clone(),
    }
    .family_ids()?;
    let report = solve_report(a.mode, &ids, a.grid, a.holdout, a.samples, a.seed)?;
    for f in &report.families {
        let s = &f.solver;
        let verdict = if !s.consistent {
            "no bilinear solution".to_string()
        } else if s.paper_member {
            "printed exponents are a member".to_string()
        } else {
            "printed exponents are NOT a member".to_string()
        };
        eprintln!("{} {}: {verdict}", s.mode, s.family);
        for row in &s.constraint_rows {
            eprintln!("    {row}");
        }
        for row in s.conflict.iter().skip(1) {
            eprintln!("    conflict: {row}");
        }
    }
    let s = &report.summary;
    eprintln!(
        "{} samples checked on {}, {} failed",
        s.samples_checked, report.holdout, s.sample_failures
    );
    let pass = s.sample_failures == 0;
    emit(&report, &a.out)?;
    Ok(Outcome::from_pass(pass))
}

#[derive(Debug, Serialize)]
pub struct FockRecord {
    pub family: String,
    pub l: i64,
    pub k: i64,
    pub symbolic: Status,
    /// Whether both sides act identically on the checked kets.
    pub operators_agree: Option<bool>,
    pub agree: bool,
    pub truncation: u32,
    pub margin: u32,
    pub disagreement: Option<Ket>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct FockSummary {
    pub agree: usize,
    pub disagree: usize,
    pub skipped: usize,
    pub fidelity_pass: usize,
    pub fidelity_fail: usize,
}

#[derive(Debug, Serialize)]
pub struct FockParams {
    pub q: String,
    pub p: String,
    pub truncation: u32,
    pub margin: u32,
}

#[derive(Debug, Serialize)]
pub struct FockReport {
    pub mode: DeformationMode,
    pub params: FockParams,
    pub fidelity: Vec<FidelityRow>,
    pub instances: Vec<FockRecord>,
    pub summary: FockSummary,
}

fn fock_instance(src: &BuiltinRelations, params: &SampleParams, family: FamilyId, l: i64, k: i64) -> FockRecord {
    let mut rec = FockRecord {
        family: family.as_str().to_string(),
        l,
        k,
        symbolic: Status::Skipped,
        operators_agree: None,
        agree: true,
        truncation: params.truncation,
        margin: params.margin,
        disagreement: None,
        detail: String::new(),
    };
    let inst = match src.instance(family.as_str(), l, k) {
        Ok(i) => i,
        Err(e) => {
            rec.detail = e.to_string();
            return rec;
        }
    };
    let outcome = check_instance(src, &inst).and_then(|checked| {
        let lhs = src.realize_element(&inst.lhs)?;
        let rhs = src.realize_element(&inst.rhs)?;
        Ok((checked.residual.holds, lhs, rhs))
    });
    let (holds, lhs, rhs) = match outcome {
        Ok(v) => v,
        Err(e) => {
            rec.symbolic = Status::Fail;
            rec.agree = false;
            rec.detail = e.to_string();
            return rec;
        }
    };
    rec.symbolic = if holds { Status::Pass } else { Status::Fail };
    let needed = fock::excursion(&lhs).max(fock::excursion(&rhs));
    let p = if needed > params.margin {
        params.widened(needed)
    } else {
        params.clone()
    };
    rec.truncation = p.truncation;
    rec.margin = p.margin;
    match find_disagreement(&lhs, &rhs, &p, src.mode) {
        Ok(d) => {
            rec.operators_agree = Some(d.is_none());
            rec.disagreement = d;
            rec.agree = d.is_none() == holds;
        }
        Err(e) => {
            rec.agree = false;
            rec.detail = e.to_string();
        }
    }
    rec
}

pub fn fock_report(
    mode: DeformationMode,
    params: &SampleParams,
    ids: &[FamilyId],
    lr: IndexRange,
    kr: IndexRange,
) -> Result<FockReport, CliError> {
    let fidelity = representation_fidelity(params, mode).map_err(|e| CliError::Usage(e.to_string()))?;
    let src = BuiltinRelations::new(mode);
    let instances: Vec<FockRecord> = ids
        .iter()
        .flat_map(|&f| lr.iter().flat_map(move |l| kr.iter().map(move |k| (f, l, k))))
        .map(|(f, l, k)| fock_instance(&src, params, f, l, k))
        .collect();
    let summary = FockSummary {
        agree: instances.iter().filter(|r| r.symbolic != Status::Skipped && r.agree).count(),
        disagree: instances.iter().filter(|r| !r.agree).count(),
        skipped: instances.iter().filter(|r| r.symbolic == Status::Skipped).count(),
        fidelity_pass: fidelity.iter().filter(|r| r.holds).count(),
        fidelity_fail: fidelity.iter().filter(|r| !r.holds).count(),
    };
    Ok(FockReport {
        mode,
        params: FockParams {
            q: params.q_val.to_string(),
            p: params.p_val.to_string(),
            truncation: params.truncation,
            margin: params.margin,
        },
        fidelity,
        instances,
        summary,
    })
}

/// Default sample point for `mode`: `q = 3/2`, and `p = 5/7` only when p is live.
pub fn default_p(mode: DeformationMode) -> Rational {
    match mode {
        DeformationMode::PQ => qsvir_core::rat(5, 7),
        _ => qsvir_core::rat(1, 1),
    }
}

pub fn fock(a: &FockArgs) -> Result<Outcome, CliError> {
    let p = a.p.clone().unwrap_or_else(|| default_p(a.mode));
    let params =
        SampleParams::new(a.q.clone(), p, a.truncation, a.margin).map_err(|e| CliError::Usage(e.to_string()))?;
    let (lr, kr) = a.grid.ranges(DEFAULT_GRID);
    let report = fock_report(a.mode, &params, &a.grid.family_ids()?, lr, kr)?;
    for r in report.fidelity.iter().filter(|r| !r.holds) {
        eprintln!("FAIL fidelity {}", r.rule);
    }
    for r in report.instances.iter().filter(|r| !r.agree) {
        eprintln!(
            "DISAGREE {}({},{}): symbolic {:?}, operators agree {:?} {}",
            r.family, r.l, r.k, r.symbolic, r.operators_agree, r.detail
        );
    }
    let s = &report.summary;
    eprintln!(
        "fock {}: {} agree, {} disagree, {} skipped; fidelity {} pass, {} fail",
        a.mode, s.agree, s.disagree, s.skipped, s.fidelity_pass, s.fidelity_fail
    );
    let pass = s.disagree == 0 && s.fidelity_fail == 0;
    emit(&report, &a.out)?;
    Ok(Outcome::from_pass(pass))
}

#[derive(Debug, Serialize)]
pub struct ParseErrorRecord {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ParseRecord {
    pub file: String,
    pub ok: bool,
    pub round_trip: bool,
    pub statements: usize,
    pub rules: usize,
    pub relations: Vec<String>,
    pub mode: Option<String>,
    pub error: Option<ParseErrorRecord>,
}

#[derive(Debug, Serialize)]
pub struct ParseReport {
    pub files: Vec<ParseRecord>,
}

/// Parse, render, re-parse; the engine must also build.
pub fn parse_record(name: &str, text: &str) -> ParseRecord {
    let mut rec = ParseRecord {
        file: name.to_string(),
        ok: false,
        round_trip: false,
        statements: 0,
        rules: 0,
        relations: Vec::new(),
        mode: None,
        error: None,
    };
    let result = parse_algebra_def(text).and_then(|def| FileEngine::new(name, &def).map(|_| def));
    match result {
        Ok(def) => {
            rec.ok = true;
            rec.round_trip = parse_algebra_def(&def.render()).is_ok_and(|again| again == def);
            rec.statements = def.statements.len();
            rec.rules = def.rule_count();
            rec.relations = def.relation_ids();
            rec.mode = def.mode().map(str::to_string);
        }
        Err(e) => {
            rec.error = Some(ParseErrorRecord {
                line: e.line,
                col: e.col,
                message: e.kind.to_string(),
            })
        }
    }
    rec
}

pub fn parse_check(a: &ParseCheckArgs) -> Result<Outcome, CliError> {
    let paths: Vec<&Path> = a.files.iter().chain(&a.file_flags).map(|p| p.as_path()).collect();
    let mut files = Vec::new();
    if paths.is_empty() {
        for (name, text, _) in crate::corpus::ALL {
            files.push(parse_record(name, text));
        }
    }
    for path in &paths {
        let text = read_file(path)?;
        files.push(parse_record(&path.display().to_string(), &text));
    }
    for r in &files {
        match &r.error {
            Some(e) => eprintln!("{}:{}:{}: {}", r.file, e.line, e.col, e.message),
            None => eprintln!(
                "{}: {} statements, {} rules, relations [{}], round trip {}",
                r.file,
                r.statements,
                r.rules,
                r.relations.join(", "),
                if r.round_trip { "ok" } else { "BROKEN" }
            ),
        }
    }
    let report = ParseReport { files };
    emit(&report, &a.out)?;
    let broken = report.files.iter().filter(|r| !r.ok).count();
    if broken > 0 {
        return Err(CliError::Usage(format!("{broken} file(s) failed to parse")));
    }
    Ok(Outcome::from_pass(report.files.iter().all(|r| r.round_trip)))
}
