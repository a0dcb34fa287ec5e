//! The four analysis commands. Each returns a finished report whose
//! `exit_code` encodes the verdict: 0 affirmative, 2 negative.

use std::path::Path;
use std::time::Instant;

use transversal_core::code_model::merge_parts;
use transversal_core::defaults;
use transversal_core::detection::local_detection_report;
use transversal_core::gate_group::{
    approximation_gap, close_group, logical_action_of_spec, GateName,
};
use transversal_core::tangent_space::logical_tangent_space;
use transversal_core::Error as CoreError;

use crate::codefile::load_code;
use crate::error::{CliError, CliResult};
use crate::gatespec::{parse_gate_grammar, GateFileSpec, GeneratorsFile};
use crate::report::{
    matrix_rows, AnalysisReport, CodeSummary, DetectionPayload, EnumerationPayload, GapPayload,
    LogicalActionPayload, Payload, TangentPayload, Tolerances,
};

pub fn cmd_check_detection(
    code_file: &Path,
    tol: Option<f64>,
    started: Instant,
) -> CliResult<AnalysisReport> {
    let code = load_code(code_file)?;
    let tol = tol.unwrap_or(defaults::DETECTION_TOL);
    let report = local_detection_report(&code.code_space, &code.layout, tol)?;
    let exit_code = if report.local_error_detecting { 0 } else { 2 };
    let verdict = if report.local_error_detecting {
        "local-error-detecting"
    } else {
        "not-local-error-detecting"
    };
    Ok(AnalysisReport {
        command: format!("check-detection {}", code_file.display()),
        code: CodeSummary::from_loaded(&code),
        tolerances: Tolerances {
            detection_tol: Some(tol),
            ..Tolerances::default()
        },
        payload: Payload::Detection(DetectionPayload::from_report(&report)),
        verdict: verdict.to_string(),
        exit_code,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn cmd_tangent(
    code_file: &Path,
    tol: Option<f64>,
    started: Instant,
) -> CliResult<AnalysisReport> {
    let code = load_code(code_file)?;
    let tol = tol.unwrap_or(defaults::NULLSPACE_TOL);
    let report = logical_tangent_space(&code.code_space, &code.layout, tol)?;
    let exit_code = if report.all_trivial { 0 } else { 2 };
    let verdict = if report.all_trivial {
        "all-tangent-directions-trivial"
    } else {
        "nontrivial-tangent-directions-found"
    };
    Ok(AnalysisReport {
        command: format!("tangent {}", code_file.display()),
        code: CodeSummary::from_loaded(&code),
        tolerances: Tolerances {
            nullspace_tol: Some(tol),
            classification_tol: Some(report.classification_tol),
            ..Tolerances::default()
        },
        payload: Payload::Tangent(TangentPayload::from_report(&report)),
        verdict: verdict.to_string(),
        exit_code,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn cmd_logical_action(
    code_file: &Path,
    gate: Option<&str>,
    gate_file: Option<&Path>,
    tol: Option<f64>,
    started: Instant,
) -> CliResult<AnalysisReport> {
    let code = load_code(code_file)?;
    let merged = merge_parts(&code.layout)?;
    let spec = match (gate, gate_file) {
        (Some(grammar), None) => parse_gate_grammar(grammar, &merged)?,
        (None, Some(path)) => GateFileSpec::load(path)?.realize(&merged)?,
        _ => {
            return Err(CliError::Gate(
                "exactly one of --gate or --gate-file is required".into(),
            ))
        }
    };
    let tol = tol.unwrap_or(defaults::LOGICAL_TOL);
    let label = spec.label.clone();

    let (payload, verdict, exit_code) =
        match logical_action_of_spec(&code.code_space, &code.layout, &spec, tol) {
            Ok(action) => (
                LogicalActionPayload {
                    gate: label.clone(),
                    logical: true,
                    matrix: Some(matrix_rows(&action.matrix)),
                    residual: None,
                },
                "logical",
                0,
            ),
            Err(CoreError::NotLogical { residual, .. }) => (
                LogicalActionPayload {
                    gate: label.clone(),
                    logical: false,
                    matrix: None,
                    residual: Some(residual),
                },
                "not-logical",
                2,
            ),
            Err(other) => return Err(other.into()),
        };

    Ok(AnalysisReport {
        command: format!("logical-action {} {}", code_file.display(), label),
        code: CodeSummary::from_loaded(&code),
        tolerances: Tolerances {
            logical_tol: Some(tol),
            ..Tolerances::default()
        },
        payload: Payload::LogicalAction(payload),
        verdict: verdict.to_string(),
        exit_code,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_enumerate(
    code_file: &Path,
    generators_file: &Path,
    max: Option<usize>,
    dedup_tol: Option<f64>,
    gap_target: Option<&str>,
    started: Instant,
) -> CliResult<AnalysisReport> {
    let code = load_code(code_file)?;
    let merged = merge_parts(&code.layout)?;
    let generators = GeneratorsFile::load(generators_file)?.realize(&merged)?;
    let max = max.unwrap_or(defaults::MAX_GROUP_SIZE);
    let dedup = dedup_tol.unwrap_or(defaults::DEDUP_TOL);

    // a non-logical generator surfaces here as a hard error (exit 1)
    let group = close_group(&code.code_space, &code.layout, &generators, max, dedup)?;

    let gap = match gap_target {
        Some(name_str) => {
            let name = GateName::parse(name_str)
                .ok_or_else(|| CliError::Gate(format!("unknown gap target gate '{name_str}'")))?;
            if code.code_space.code_dim() != 2 {
                return Err(CliError::Gate(format!(
                    "gap target '{name_str}' is a single-qubit gate but code_dim is {}",
                    code.code_space.code_dim()
                )));
            }
            let value = approximation_gap(&group, &name.matrix::<f64>())?;
            Some(GapPayload {
                target: name_str.to_string(),
                value,
            })
        }
        None => None,
    };

    let exit_code = if group.closed { 0 } else { 2 };
    let verdict = if group.closed {
        "closed"
    } else {
        "max-size-exceeded"
    };
    let generator_labels = generators.iter().map(|g| g.label.clone()).collect();
    Ok(AnalysisReport {
        command: format!(
            "enumerate {} --generators {}",
            code_file.display(),
            generators_file.display()
        ),
        code: CodeSummary::from_loaded(&code),
        tolerances: Tolerances {
            logical_tol: Some(defaults::LOGICAL_TOL),
            dedup_tol: Some(dedup),
            ..Tolerances::default()
        },
        payload: Payload::Enumeration(EnumerationPayload::from_group(
            &group,
            generator_labels,
            max,
            gap,
        )),
        verdict: verdict.to_string(),
        exit_code,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}
