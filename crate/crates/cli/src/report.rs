//! The machine-readable analysis report and its human rendering.
//!
//! Reports are plain serde structs with a fixed field order, so parsing a
//! report and re-serializing it is byte-identical. Complex numbers appear as
//! `[re, im]` pairs and matrices are row-major, matching the code-definition
//! conventions.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use transversal_core::detection::LocalDetectionReport;
use transversal_core::gate_group::EnumeratedGroup;
use transversal_core::operator_core::DenseOperator;
use transversal_core::tangent_space::{TangentClass, TangentReport};

use crate::codefile::LoadedCode;

pub type ComplexPair = [f64; 2];
pub type ComplexMatrix = Vec<Vec<ComplexPair>>;

pub fn complex_pair(z: C64) -> ComplexPair {
    [z.re, z.im]
}

pub fn matrix_rows(op: &DenseOperator<f64>) -> ComplexMatrix {
    let d = op.dim();
    (0..d)
        .map(|i| (0..d).map(|j| complex_pair(op.entry(i, j))).collect())
        .collect()
}

fn dmatrix_rows(m: &transversal_core::nalgebra::DMatrix<C64>) -> ComplexMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| complex_pair(m[(i, j)])).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    pub code: CodeSummary,
    pub tolerances: Tolerances,
    pub payload: Payload,
    pub verdict: String,
    pub exit_code: i32,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub name: String,
    pub n_subsystems: usize,
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub code_dim: usize,
    pub n_blocks: usize,
    pub n_parts: usize,
}

impl CodeSummary {
    pub fn from_loaded(code: &LoadedCode) -> Self {
        Self {
            name: code.name.clone(),
            n_subsystems: code.layout.n_subsystems(),
            dims: code.layout.dims().to_vec(),
            total_dim: code.layout.total_dim(),
            code_dim: code.code_space.code_dim(),
            n_blocks: code.layout.n_blocks(),
            n_parts: code.layout.n_parts(),
        }
    }
}

/// Every tolerance a verdict in the payload was judged against.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nullspace_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dedup_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Detection(DetectionPayload),
    Tangent(TangentPayload),
    LogicalAction(LogicalActionPayload),
    Enumeration(EnumerationPayload),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionPayload {
    pub local_error_detecting: bool,
    pub parts: Vec<PartPayload>,
    pub basis_reduction_note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartPayload {
    pub part_index: usize,
    pub members: Vec<usize>,
    pub part_dim: usize,
    pub passed: bool,
    pub elements: Vec<ElementPayload>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementPayload {
    pub label: String,
    pub is_identity: bool,
    pub detectable: bool,
    pub lambda: ComplexPair,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<[usize; 2]>,
}

impl DetectionPayload {
    pub fn from_report(report: &LocalDetectionReport<f64>) -> Self {
        Self {
            local_error_detecting: report.local_error_detecting,
            parts: report
                .parts
                .iter()
                .map(|p| PartPayload {
                    part_index: p.part_index,
                    members: p.members.clone(),
                    part_dim: p.part_dim,
                    passed: p.passed,
                    elements: p
                        .elements
                        .iter()
                        .map(|e| ElementPayload {
                            label: e.label.clone(),
                            is_identity: e.is_identity,
                            detectable: e.result.detectable,
                            lambda: complex_pair(e.result.lambda),
                            residual: e.result.residual,
                            witness: e.result.witness.map(|(a, b)| [a, b]),
                        })
                        .collect(),
                })
                .collect(),
            basis_reduction_note: report.basis_reduction_note.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentPayload {
    pub nullspace_dim: usize,
    pub all_trivial: bool,
    pub constraint_sigma_max: f64,
    pub element_labels: Vec<String>,
    pub basis: Vec<Vec<f64>>,
    pub classifications: Vec<ClassificationPayload>,
    pub containment_note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClassificationPayload {
    Trivial { lambda: f64 },
    Nontrivial { logical_hermitian: ComplexMatrix },
}

impl TangentPayload {
    pub fn from_report(report: &TangentReport<f64>) -> Self {
        Self {
            nullspace_dim: report.nullspace_dim,
            all_trivial: report.all_trivial,
            constraint_sigma_max: report.constraint_sigma_max,
            element_labels: report.element_labels.clone(),
            basis: report
                .basis
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
            classifications: report
                .classifications
                .iter()
                .map(|c| match c {
                    TangentClass::Trivial { lambda } => {
                        ClassificationPayload::Trivial { lambda: *lambda }
                    }
                    TangentClass::Nontrivial { logical_hermitian } => {
                        ClassificationPayload::Nontrivial {
                            logical_hermitian: dmatrix_rows(logical_hermitian),
                        }
                    }
                })
                .collect(),
            containment_note: report.containment_note.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogicalActionPayload {
    pub gate: String,
    pub logical: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationPayload {
    pub generators: Vec<String>,
    pub element_count: usize,
    pub closed: bool,
    pub max_size: usize,
    pub elements: Vec<GroupElementPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapPayload>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupElementPayload {
    pub source: String,
    pub matrix: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapPayload {
    pub target: String,
    pub value: f64,
}

impl EnumerationPayload {
    pub fn from_group(
        group: &EnumeratedGroup<f64>,
        generators: Vec<String>,
        max_size: usize,
        gap: Option<GapPayload>,
    ) -> Self {
        Self {
            generators,
            element_count: group.elements.len(),
            closed: group.closed,
            max_size,
            elements: group
                .elements
                .iter()
                .map(|e| GroupElementPayload {
                    source: e.source.clone(),
                    matrix: matrix_rows(&e.matrix),
                })
                .collect(),
            gap,
        }
    }
}

fn fmt_complex(z: &ComplexPair) -> String {
    format!("{:+.6}{:+.6}i", z[0], z[1])
}

/// Short description of a coefficient vector by its dominant entries.
fn dominant_support(coeffs: &[f64], labels: &[String]) -> String {
    let mut terms: Vec<String> = coeffs
        .iter()
        .zip(labels)
        .filter(|(c, _)| c.abs() > 0.25)
        .map(|(c, l)| format!("{c:+.3}*{l}"))
        .collect();
    if terms.is_empty() {
        terms.push("mixed".to_string());
    }
    terms.join(" ")
}

fn fmt_matrix(m: &ComplexMatrix, indent: &str) -> String {
    m.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(fmt_complex).collect();
            format!("{indent}[ {} ]", cells.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

impl AnalysisReport {
    /// Human-readable rendering for standard output.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let code = &self.code;
        out.push_str(&format!(
            "code '{}': {} subsystems (dims {:?}), total dim {}, code dim {}, {} blocks, {} parts\n",
            code.name,
            code.n_subsystems,
            code.dims,
            code.total_dim,
            code.code_dim,
            code.n_blocks,
            code.n_parts
        ));
        match &self.payload {
            Payload::Detection(p) => {
                for part in &p.parts {
                    let failures: Vec<&ElementPayload> = part
                        .elements
                        .iter()
                        .filter(|e| !e.is_identity && !e.detectable)
                        .collect();
                    if failures.is_empty() {
                        out.push_str(&format!(
                            "  part {} (subsystems {:?}, dim {}): PASS ({} basis elements detectable)\n",
                            part.part_index,
                            part.members,
                            part.part_dim,
                            part.elements.len() - 1
                        ));
                    } else {
                        out.push_str(&format!(
                            "  part {} (subsystems {:?}, dim {}): FAIL\n",
                            part.part_index, part.members, part.part_dim
                        ));
                        for e in failures {
                            let witness = e
                                .witness
                                .map(|[a, b]| format!(", witness codewords ({a},{b})"))
                                .unwrap_or_default();
                            out.push_str(&format!(
                                "    element {}: residual {:.3e}{}\n",
                                e.label, e.residual, witness
                            ));
                        }
                    }
                }
                out.push_str(&format!("  note: {}\n", p.basis_reduction_note));
            }
            Payload::Tangent(p) => {
                out.push_str(&format!(
                    "  tangent nullspace dimension: {} (constraint sigma_max {:.3e})\n",
                    p.nullspace_dim, p.constraint_sigma_max
                ));
                for (i, c) in p.classifications.iter().enumerate() {
                    let support = dominant_support(&p.basis[i], &p.element_labels);
                    match c {
                        ClassificationPayload::Trivial { lambda } => {
                            out.push_str(&format!(
                                "  direction {i} ({support}): trivial (lambda = {lambda:+.6})\n"
                            ));
                        }
                        ClassificationPayload::Nontrivial { logical_hermitian } => {
                            out.push_str(&format!(
                                "  direction {i} ({support}): NONTRIVIAL logical Hamiltonian\n{}\n",
                                fmt_matrix(logical_hermitian, "    ")
                            ));
                        }
                    }
                }
                out.push_str(&format!("  note: {}\n", p.containment_note));
            }
            Payload::LogicalAction(p) => {
                if let Some(matrix) = &p.matrix {
                    out.push_str(&format!(
                        "  gate {} is logical; induced action (canonical phase):\n{}\n",
                        p.gate,
                        fmt_matrix(matrix, "    ")
                    ));
                } else {
                    out.push_str(&format!(
                        "  gate {} is NOT logical: residual {:.6e}\n",
                        p.gate,
                        p.residual.unwrap_or(f64::NAN)
                    ));
                }
            }
            Payload::Enumeration(p) => {
                out.push_str(&format!(
                    "  generators: {:?}\n  enumerated {} projectively distinct logical actions; closed = {} (max {})\n",
                    p.generators, p.element_count, p.closed, p.max_size
                ));
                for e in p.elements.iter().take(32) {
                    out.push_str(&format!("    {}\n", e.source));
                }
                if p.elements.len() > 32 {
                    out.push_str(&format!("    ... {} more\n", p.elements.len() - 32));
                }
                if let Some(gap) = &p.gap {
                    out.push_str(&format!(
                        "  approximation gap to {}: {:.12}\n",
                        gap.target, gap.value
                    ));
                }
            }
        }
        out.push_str(&format!("tolerances: {}\n", self.render_tolerances()));
        out.push_str(&format!(
            "verdict: {} (exit {}), wall time {:.1} ms\n",
            self.verdict, self.exit_code, self.wall_time_ms
        ));
        out
    }

    fn render_tolerances(&self) -> String {
        let t = &self.tolerances;
        let mut parts = Vec::new();
        if let Some(v) = t.detection_tol {
            parts.push(format!("detection {v:.1e}"));
        }
        if let Some(v) = t.nullspace_tol {
            parts.push(format!("nullspace {v:.1e}"));
        }
        if let Some(v) = t.classification_tol {
            parts.push(format!("classification {v:.1e}"));
        }
        if let Some(v) = t.logical_tol {
            parts.push(format!("logical {v:.1e}"));
        }
        if let Some(v) = t.dedup_tol {
            parts.push(format!("dedup {v:.1e}"));
        }
        parts.join(", ")
    }
}
