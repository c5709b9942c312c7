//! Command-line front end: compute the coupled addition and its gyrations,
//! factor pseudo-orthogonal matrices, run the sampled axiom battery, check
//! and search finite-group decompositions, and verify spin lifts.
//!
//! Machine-readable JSON goes to stdout (or `--out`); human-readable law
//! tables and witnesses go to stderr. Exit codes: 0 all checks pass, 1 a
//! verified mathematical property failed, 2 input or usage error. Reports
//! are byte-identical for identical flags and seed.

use bigyro_core::bigyro::{bg_add, bg_group_add, check_axioms, left_gyr, right_gyr, BgParams};
use bigyro_core::clifford::verify_spin_decomposition;
use bigyro_core::finite::{
    build_tables, check_all_theorems, load_group, search_decompositions, verify_bigyrotransversal,
    verify_bitransversal, verify_symmetry, verify_twisted_subgroup, FinError, FoundDecomposition,
};
use bigyro_core::pseudo_orth::{factor, PsError, PseudoOrthElem};
use bigyro_core::report::{
    all_hold, all_pass, render_exact_table, render_law_table, ExactCheck, LawCheck,
};
use bigyro_core::{Mat, DEFAULT_TOL};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bigyro", version, about = "Bi-gyrogroup computations over SO(m, n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coupled addition, group addition, and both gyrations of two matrices
    Add(AddArgs),
    /// Split a special pseudo-orthogonal matrix into rotation, boost, rotation
    Factor(FactorArgs),
    /// Sample every law of the parameter-space structure and report residuals
    Axioms(AxiomsArgs),
    /// Exhaustive decomposition tools for finite groups given by Cayley tables
    Finite {
        #[command(subcommand)]
        cmd: FiniteCmd,
    },
    /// Spin lifts of sampled bi-boosts over small signatures
    Spin {
        #[command(subcommand)]
        cmd: SpinCmd,
    },
}

#[derive(Args)]
struct AddArgs {
    /// First parameter matrix (JSON file)
    p1: PathBuf,
    /// Second parameter matrix (JSON file)
    p2: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FactorArgs {
    /// Square (m+n) x (m+n) matrix (JSON file)
    matrix: PathBuf,
    /// Rows and columns with metric sign +1
    #[arg(long)]
    m: usize,
    /// Rows and columns with metric sign -1
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AxiomsArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FiniteCmd {
    /// Verify a decomposition (or the trivial one) and the full law battery
    Check(FiniteArgs),
    /// Enumerate every decomposition of the group
    Search(FiniteArgs),
}

#[derive(Args)]
struct FiniteArgs {
    /// Group file: order, table, optional names and H_L/B/H_R subsets
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SpinCmd {
    /// Lift sampled bi-boosts and verify the projected factorization laws
    Verify(SpinArgs),
}

#[derive(Args)]
struct SpinArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let outcome = match Cli::parse().cmd {
        Cmd::Add(args) => cmd_add(args),
        Cmd::Factor(args) => cmd_factor(args),
        Cmd::Axioms(args) => cmd_axioms(args),
        Cmd::Finite { cmd: FiniteCmd::Check(args) } => cmd_finite_check(args),
        Cmd::Finite { cmd: FiniteCmd::Search(args) } => cmd_finite_search(args),
        Cmd::Spin { cmd: SpinCmd::Verify(args) } => cmd_spin_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// The numeric kernel (eigensolvers, orthogonality guards) cannot run below
/// the f64 roundoff floor; sampled laws are still judged at the requested
/// tolerance, so a tolerance under the floor fails with a full report
/// instead of aborting.
const KERNEL_TOL_FLOOR: f64 = 1e-12;

fn judge(report: Vec<LawCheck>, tol: f64) -> Vec<LawCheck> {
    report
        .into_iter()
        .map(|mut check| {
            check.pass = check.max_residual <= tol;
            check
        })
        .collect()
}

/// Tolerance precedence: flag, then BIGYRO_TOL, then the library default.
fn resolve_tol(flag: Option<f64>) -> Result<f64, String> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("BIGYRO_TOL") {
            Ok(raw) => raw
                .parse::<f64>()
                .map_err(|_| format!("BIGYRO_TOL {raw:?} is not a number"))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(format!("tolerance {tol} must be finite and positive"));
    }
    Ok(tol)
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_matrix(path: &PathBuf) -> Result<Mat<f64>, String> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| format!("{} is not a matrix file: {e}", path.display()))
}

fn emit<T: Serialize>(out: &Option<PathBuf>, report: &T) -> Result<(), String> {
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| format!("cannot serialize the report: {e}"))?;
    match out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AddReport {
    bg_add: Mat<f64>,
    bg_group_add: Mat<f64>,
    lgyr: Mat<f64>,
    rgyr: Mat<f64>,
}

fn cmd_add(args: AddArgs) -> Result<bool, String> {
    let tol = resolve_tol(args.tol)?;
    let p1 = read_matrix(&args.p1)?;
    let p2 = read_matrix(&args.p2)?;
    let params = BgParams::new(p1.cols(), p1.rows(), tol).map_err(|e| e.to_string())?;
    let report = AddReport {
        bg_add: bg_add(&p1, &p2, &params).map_err(|e| e.to_string())?,
        bg_group_add: bg_group_add(&p1, &p2, &params).map_err(|e| e.to_string())?,
        lgyr: left_gyr(&p1, &p2, &params).map_err(|e| e.to_string())?.matrix().clone(),
        rgyr: right_gyr(&p1, &p2, &params).map_err(|e| e.to_string())?.matrix().clone(),
    };
    emit(&args.out, &report)?;
    Ok(true)
}

fn cmd_factor(args: FactorArgs) -> Result<bool, String> {
    let tol = resolve_tol(args.tol)?;
    let matrix = read_matrix(&args.matrix)?;
    let elem = match PseudoOrthElem::try_new(matrix, args.m, args.n, tol) {
        Ok(elem) => elem,
        Err(PsError::NotMember(reason)) => {
            eprintln!("FAIL not a special pseudo-orthogonal matrix: {reason}");
            return Ok(false);
        }
        Err(e) => return Err(e.to_string()),
    };
    match factor(&elem, tol) {
        Ok(f) => {
            emit(&args.out, &f)?;
            Ok(true)
        }
        Err(PsError::Inconsistent(reason)) => {
            eprintln!("FAIL factorization is inconsistent: {reason}");
            Ok(false)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_axioms(args: AxiomsArgs) -> Result<bool, String> {
    let tol = resolve_tol(args.tol)?;
    let params =
        BgParams::new(args.m, args.n, tol.max(KERNEL_TOL_FLOOR)).map_err(|e| e.to_string())?;
    let report = check_axioms(&params, args.trials, args.seed).map_err(|e| e.to_string())?;
    let report = judge(report, tol);
    emit(&args.out, &report)?;
    eprint!("{}", render_law_table(&report));
    for check in report.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {}: max residual {:.3e} exceeds tol {:.3e}; replay with --seed {} --trials {}",
            check.law, check.max_residual, tol, args.seed, args.trials
        );
    }
    Ok(all_pass(&report))
}

#[derive(Serialize)]
struct CheckReport {
    group_order: usize,
    #[serde(rename = "H_L")]
    hl: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
    #[serde(rename = "H_R")]
    hr: Vec<usize>,
    structure: Vec<ExactCheck>,
    required: Vec<ExactCheck>,
    reported: Vec<ExactCheck>,
    pass: bool,
}

#[derive(Serialize)]
struct FailReport {
    pass: bool,
    reason: String,
}

fn fail(out: &Option<PathBuf>, reason: String) -> Result<bool, String> {
    eprintln!("FAIL {reason}");
    emit(out, &FailReport { pass: false, reason })?;
    Ok(false)
}

fn cmd_finite_check(args: FiniteArgs) -> Result<bool, String> {
    let file = load_group(&read_file(&args.input)?).map_err(|e| e.to_string())?;
    let group = &file.group;
    let (hl, b, hr) = match (file.hl, file.b, file.hr) {
        (Some(hl), Some(b), Some(hr)) => (hl, b, hr),
        (None, None, None) => {
            let e = group.identity();
            (vec![e], (0..group.order()).collect(), vec![e])
        }
        _ => return Err("the file must carry all of H_L, B, H_R, or none".to_string()),
    };

    let d = match verify_bitransversal(group, &hl, &b, &hr) {
        Ok(d) => d,
        Err(e @ (FinError::NotSubgroup { .. } | FinError::Factorization { .. })) => {
            return fail(&args.out, e.to_string());
        }
        Err(e) => return Err(e.to_string()),
    };
    let mut structure = verify_bigyrotransversal(&d);
    structure.extend(verify_twisted_subgroup(group, d.b()).map_err(|e| e.to_string())?);
    let tables = match build_tables(&d) {
        Ok(t) => t,
        Err(e @ FinError::Structural(_)) => return fail(&args.out, e.to_string()),
        Err(e) => return Err(e.to_string()),
    };
    structure.extend(verify_symmetry(&d, &tables));
    let theorems = check_all_theorems(&tables);

    let pass = all_hold(&structure) && theorems.all_required_hold();
    let report = CheckReport {
        group_order: group.order(),
        hl: d.hl().to_vec(),
        b: d.b().to_vec(),
        hr: d.hr().to_vec(),
        structure,
        required: theorems.required,
        reported: theorems.reported,
        pass,
    };
    emit(&args.out, &report)?;
    eprint!("{}", render_exact_table(&report.structure));
    eprint!("{}", render_exact_table(&report.required));
    eprint!("{}", render_exact_table(&report.reported));
    for check in report
        .structure
        .iter()
        .chain(&report.required)
        .filter(|c| !c.pass)
    {
        match &check.witness {
            Some(w) => eprintln!("FAIL {}: {w}", check.law),
            None => eprintln!("FAIL {}", check.law),
        }
    }
    Ok(pass)
}

#[derive(Serialize)]
struct SearchReport {
    group_order: usize,
    count: usize,
    decompositions: Vec<FoundDecomposition>,
}

fn cmd_finite_search(args: FiniteArgs) -> Result<bool, String> {
    let file = load_group(&read_file(&args.input)?).map_err(|e| e.to_string())?;
    let hits =
        search_decompositions(&file.group, &Default::default()).map_err(|e| e.to_string())?;
    for hit in &hits {
        eprintln!("{}", hit.summary());
    }
    let report = SearchReport {
        group_order: file.group.order(),
        count: hits.len(),
        decompositions: hits.iter().map(|h| h.found()).collect(),
    };
    emit(&args.out, &report)?;
    Ok(true)
}

fn cmd_spin_verify(args: SpinArgs) -> Result<bool, String> {
    let tol = resolve_tol(args.tol)?;
    let params =
        BgParams::new(args.m, args.n, tol.max(KERNEL_TOL_FLOOR)).map_err(|e| e.to_string())?;
    let report = verify_spin_decomposition(&params, args.trials, args.seed)
        .map_err(|e| e.to_string())?;
    let report = judge(report, tol);
    emit(&args.out, &report)?;
    eprint!("{}", render_law_table(&report));
    for check in report.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {}: max residual {:.3e} exceeds tol {:.3e}; replay with --seed {} --trials {}",
            check.law, check.max_residual, tol, args.seed, args.trials
        );
    }
    Ok(all_pass(&report))
}
