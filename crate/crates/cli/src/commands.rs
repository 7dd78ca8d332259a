//! The four subcommands. Each returns a JSON report and an exit code; the
//! binary only handles argument parsing and output.

use std::path::Path;

use labelcut::verifier::{
    verify_exhaustive, verify_sampled, VerifyReport, MAX_EXHAUSTIVE_K,
};
use labelcut::{
    classify_case, decompose_truncated, dominant_label, join_meet, minimize_bruteforce,
    minimize_cut, submodular_margin, Dominant, Instance, LabelVector, Penalty, RawTable, Solution,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::{parse_instance, FormatError};
use crate::gspec::{FunctionSpecRecord, Kind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Largest energy gap tolerated between brute force and min-cut.
pub const SELF_CHECK_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] labelcut::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { pairs: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizeMethod {
    Brute,
    Cut,
    Both,
}

impl std::str::FromStr for MinimizeMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brute" => Ok(MinimizeMethod::Brute),
            "cut" => Ok(MinimizeMethod::Cut),
            "both" => Ok(MinimizeMethod::Both),
            other => Err(format!("unknown method {other:?}, expected brute, cut or both")),
        }
    }
}

fn parse_g(g: &str) -> Result<FunctionSpecRecord, CliError> {
    FunctionSpecRecord::parse_cli(g).map_err(CliError::Usage)
}

/// Validated unless the caller opted out and the spec is a table.
fn load_penalty(
    rec: &FunctionSpecRecord,
    k: usize,
    allow_unvalidated: bool,
) -> Result<RawTable, CliError> {
    if allow_unvalidated && rec.kind == Kind::Table {
        Ok(rec.to_raw(k)?)
    } else {
        Ok(rec.to_spec(k)?.into())
    }
}

fn dominant_json(d: Dominant) -> Value {
    json!({ "label": d.majority.as_str(), "n0": d.n0, "n1": d.n1 })
}

fn verify_json(r: &VerifyReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "a": v.a.to_string(),
                "b": v.b.to_string(),
                "margin": v.margin,
                "kappa": v.kappa.as_array(),
                "case": v.case.as_str(),
            })
        })
        .collect();
    json!({
        "pairs_checked": r.pairs_checked,
        "violation_count": r.violation_count,
        "violations_listed": violations.len(),
        "min_margin": r.min_margin,
        "violations": violations,
    })
}

/// Checks the lattice inequality for `d` built from `g` at size `k`.
/// Exit 0 when no pair violates it, 2 otherwise.
pub fn cmd_verify(
    g: &str,
    k: usize,
    mode: VerifyMode,
    allow_unvalidated: bool,
) -> Result<Outcome, CliError> {
    if k < 1 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let rec = parse_g(g)?;
    let table = load_penalty(&rec, k, allow_unvalidated)?;
    let (report, mode_json) = match mode {
        VerifyMode::Exhaustive => {
            if k > MAX_EXHAUSTIVE_K {
                return Err(CliError::Usage(format!(
                    "--exhaustive supports k <= {MAX_EXHAUSTIVE_K}; use --sampled"
                )));
            }
            (verify_exhaustive(&table, k)?, json!({ "kind": "exhaustive" }))
        }
        VerifyMode::Sampled { pairs, seed } => {
            if pairs < 1 {
                return Err(CliError::Usage("--sampled needs at least one pair".into()));
            }
            (
                verify_sampled(&table, k, pairs, seed)?,
                json!({ "kind": "sampled", "pairs": pairs, "seed": seed }),
            )
        }
    };
    let mut body = verify_json(&report);
    let obj = body.as_object_mut().expect("object");
    obj.insert("command".into(), json!("verify"));
    obj.insert("g".into(), json!(rec.to_string()));
    obj.insert("k".into(), json!(k));
    obj.insert("mode".into(), mode_json);
    obj.insert("elapsed_seconds".into(), json!(report.elapsed.as_secs_f64()));
    let exit_code = if report.has_violations() { EXIT_VIOLATIONS } else { EXIT_OK };
    Ok(Outcome { report: body, exit_code })
}

/// Pattern counts, join/meet, dominant labels, case tag and margin of a pair.
pub fn cmd_classify(
    a: &str,
    b: &str,
    g: &str,
    allow_unvalidated: bool,
) -> Result<Outcome, CliError> {
    let parse = |s: &str, name: &str| {
        s.parse::<LabelVector>().map_err(|e| CliError::Usage(format!("--{name}: {e}")))
    };
    let (a, b) = (parse(a, "a")?, parse(b, "b")?);
    if a.len() != b.len() {
        return Err(CliError::Usage(format!(
            "--a has length {} but --b has length {}",
            a.len(),
            b.len()
        )));
    }
    let rec = parse_g(g)?;
    let table = load_penalty(&rec, a.len(), allow_unvalidated)?;
    let (join, meet) = join_meet(&a, &b)?;
    let (case, kappa) = classify_case(&a, &b)?;
    let margin = submodular_margin(&table, &a, &b)?;
    let report = json!({
        "command": "classify",
        "a": a.to_string(),
        "b": b.to_string(),
        "kappa": kappa.as_array(),
        "join": join.to_string(),
        "meet": meet.to_string(),
        "dominant": {
            "a": dominant_json(dominant_label(&a)),
            "b": dominant_json(dominant_label(&b)),
            "join": dominant_json(dominant_label(&join)),
            "meet": dominant_json(dominant_label(&meet)),
        },
        "case": case.as_str(),
        "g": rec.to_string(),
        "margin": margin,
    });
    Ok(Outcome { report, exit_code: EXIT_OK })
}

/// Truncated-linear weights of `g` for hyperedges of size `k`.
pub fn cmd_decompose(g: &str, k: usize) -> Result<Outcome, CliError> {
    if k < 2 {
        return Err(CliError::Usage("--k must be at least 2".into()));
    }
    let rec = parse_g(g)?;
    let spec = rec.to_spec(k)?;
    let t_eff = k / 2;
    let dec = decompose_truncated(&spec, t_eff)?;
    let pieces: Vec<Value> =
        dec.pieces.iter().map(|p| json!({ "cap": p.cap, "lambda": p.lambda })).collect();
    let report = json!({
        "command": "decompose",
        "g": rec.to_string(),
        "k": k,
        "t_eff": t_eff,
        "constant": dec.constant,
        "lambda": dec.pieces.iter().map(|p| p.lambda).collect::<Vec<_>>(),
        "pieces": pieces,
        "active_pieces": dec.active().count(),
        "samples": &spec.samples()[..=t_eff],
        "residual": dec.residual(&spec),
    });
    Ok(Outcome { report, exit_code: EXIT_OK })
}

fn solution_json(s: &Solution) -> Value {
    json!({
        "method": s.method.as_str(),
        "assignment": s.assignment.to_string(),
        "energy": s.energy,
        "stats": {
            "flow_value": s.stats.flow_value,
            "augmentations": s.stats.augmentations,
            "phases": s.stats.phases,
            "aux_vars": s.stats.aux_vars,
            "arcs": s.stats.arcs,
            "evaluated": s.stats.evaluated,
        },
    })
}

/// Minimizes an already parsed instance. With `Both`, exits 3 when the two
/// energies differ by more than [`SELF_CHECK_TOLERANCE`].
pub fn minimize_instance(inst: &Instance, method: MinimizeMethod) -> Result<Outcome, CliError> {
    let mut solutions = Vec::new();
    if matches!(method, MinimizeMethod::Brute | MinimizeMethod::Both) {
        solutions.push(minimize_bruteforce(inst)?);
    }
    if matches!(method, MinimizeMethod::Cut | MinimizeMethod::Both) {
        solutions.push(minimize_cut(inst)?);
    }
    let mut report = json!({
        "command": "minimize",
        "nodes": inst.num_nodes(),
        "hyperedges": inst.hyperedges().len(),
        "results": solutions.iter().map(solution_json).collect::<Vec<_>>(),
    });
    let mut exit_code = EXIT_OK;
    if let [brute, cut] = solutions.as_slice() {
        let gap = (brute.energy - cut.energy).abs();
        let agree = gap <= SELF_CHECK_TOLERANCE;
        report["energy_gap"] = json!(gap);
        report["agree"] = json!(agree);
        if !agree {
            exit_code = EXIT_MISMATCH;
        }
    }
    Ok(Outcome { report, exit_code })
}

pub fn cmd_minimize(path: &Path, method: MinimizeMethod) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let inst = parse_instance(&text)?;
    let mut out = minimize_instance(&inst, method)?;
    out.report["input"] = json!(path.display().to_string());
    Ok(out)
}
