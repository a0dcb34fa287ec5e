//! Gate-specification parsing: the `NAME@all` / `NAME@i,j,k` mini-grammar,
//! explicit-matrix gate files, and generator lists.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::Deserialize;

use transversal_core::code_model::MergedLayout;
use transversal_core::gate_group::{GateFactor, GateName, TransversalGateSpec};
use transversal_core::operator_core::DenseOperator;

use crate::error::{CliError, CliResult};

/// Parse `NAME@all` or `NAME@i,j,k` against a merged layout.
///
/// Named gates are single-qubit; every targeted part must have dimension 2.
/// Parts not named get the identity.
pub fn parse_gate_grammar(
    spec: &str,
    merged: &MergedLayout,
) -> CliResult<TransversalGateSpec<f64>> {
    let (name_str, target_str) = spec.split_once('@').ok_or_else(|| {
        CliError::Gate(format!(
            "'{spec}' is not of the form NAME@all or NAME@i,j,k"
        ))
    })?;
    let name = GateName::parse(name_str)
        .ok_or_else(|| CliError::Gate(format!("unknown gate name '{name_str}' in '{spec}'")))?;
    let n_parts = merged.part_dims.len();

    let targets: Vec<usize> = if target_str == "all" {
        (0..n_parts).collect()
    } else {
        target_str
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Gate(format!("bad part index '{tok}' in '{spec}'")))
            })
            .collect::<CliResult<_>>()?
    };

    let mut factors: Vec<GateFactor<f64>> = merged
        .part_dims
        .iter()
        .map(|&d| identity_factor(d))
        .collect();
    for &p in &targets {
        if p >= n_parts {
            return Err(CliError::Gate(format!(
                "part index {p} out of range in '{spec}' ({n_parts} parts)"
            )));
        }
        if merged.part_dims[p] != 2 {
            return Err(CliError::Gate(format!(
                "named gate '{name_str}' targets part {p} of dimension {}; explicit matrices \
                 are required for non-qubit parts",
                merged.part_dims[p]
            )));
        }
        factors[p] = GateFactor::Named(name);
    }
    Ok(TransversalGateSpec::new(spec.to_string(), factors))
}

fn identity_factor(dim: usize) -> GateFactor<f64> {
    if dim == 2 {
        GateFactor::Named(GateName::I)
    } else {
        GateFactor::Matrix(DenseOperator::identity(dim))
    }
}

/// Explicit gate file: per-part factors as named gates or row-major
/// complex matrices (`[re, im]` entries, same convention as basis vectors).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateFileSpec {
    pub label: String,
    pub factors: Vec<GateFileFactor>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateFileFactor {
    pub part: usize,
    #[serde(default)]
    pub gate: Option<String>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

impl GateFileSpec {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn realize(&self, merged: &MergedLayout) -> CliResult<TransversalGateSpec<f64>> {
        let n_parts = merged.part_dims.len();
        let mut factors: Vec<GateFactor<f64>> = merged
            .part_dims
            .iter()
            .map(|&d| identity_factor(d))
            .collect();
        for f in &self.factors {
            if f.part >= n_parts {
                return Err(CliError::Gate(format!(
                    "gate '{}': part {} out of range ({n_parts} parts)",
                    self.label, f.part
                )));
            }
            factors[f.part] = match (&f.gate, &f.matrix) {
                (Some(name_str), None) => {
                    let name = GateName::parse(name_str).ok_or_else(|| {
                        CliError::Gate(format!(
                            "gate '{}': unknown gate name '{name_str}'",
                            self.label
                        ))
                    })?;
                    if merged.part_dims[f.part] != 2 {
                        return Err(CliError::Gate(format!(
                            "gate '{}': named gate on non-qubit part {}",
                            self.label, f.part
                        )));
                    }
                    GateFactor::Named(name)
                }
                (None, Some(rows)) => GateFactor::Matrix(parse_matrix(&self.label, rows)?),
                _ => {
                    return Err(CliError::Gate(format!(
                        "gate '{}': factor for part {} needs exactly one of gate/matrix",
                        self.label, f.part
                    )))
                }
            };
        }
        Ok(TransversalGateSpec::new(self.label.clone(), factors))
    }
}

fn parse_matrix(label: &str, rows: &[Vec<[f64; 2]>]) -> CliResult<DenseOperator<f64>> {
    let dim = rows.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for row in rows {
        if row.len() != dim {
            return Err(CliError::Gate(format!(
                "gate '{label}': matrix is not square"
            )));
        }
        entries.extend(row.iter().map(|[re, im]| C64::new(*re, *im)));
    }
    DenseOperator::from_rows(dim, &entries).map_err(CliError::from)
}

/// Generators file: a list of grammar strings and/or inline gate objects.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsFile {
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GeneratorEntry {
    Grammar(String),
    Explicit(GateFileSpec),
}

impl GeneratorsFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: GeneratorsFile =
            serde_json::from_str(&text).map_err(|source| CliError::Json {
                path: path.to_path_buf(),
                source,
            })?;
        if file.generators.is_empty() {
            return Err(CliError::Gate("generators file lists no generators".into()));
        }
        Ok(file)
    }

    pub fn realize(&self, merged: &MergedLayout) -> CliResult<Vec<TransversalGateSpec<f64>>> {
        self.generators
            .iter()
            .map(|entry| match entry {
                GeneratorEntry::Grammar(s) => parse_gate_grammar(s, merged),
                GeneratorEntry::Explicit(file) => file.realize(merged),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use transversal_core::code_model::{merge_parts, SubsystemLayout};

    fn merged(n: usize) -> MergedLayout {
        merge_parts(&SubsystemLayout::qubits(n).unwrap()).unwrap()
    }

    #[test]
    fn grammar_all_targets_every_part() {
        let spec = parse_gate_grammar("H@all", &merged(3)).unwrap();
        assert_eq!(spec.n_parts(), 3);
        assert_eq!(spec.label, "H@all");
    }

    #[test]
    fn grammar_with_indices_leaves_identity_elsewhere() {
        let spec = parse_gate_grammar("S@0,2", &merged(3)).unwrap();
        let m0 = spec.factors()[0].matrix();
        let m1 = spec.factors()[1].matrix();
        assert_eq!(m0.entry(1, 1), C64::new(0.0, 1.0));
        assert_eq!(m1.entry(1, 1), C64::new(1.0, 0.0));
    }

    #[test]
    fn unknown_gate_is_rejected() {
        assert!(matches!(
            parse_gate_grammar("Q@all", &merged(2)),
            Err(CliError::Gate(_))
        ));
    }

    #[test]
    fn out_of_range_part_is_rejected() {
        assert!(parse_gate_grammar("X@5", &merged(2)).is_err());
        assert!(parse_gate_grammar("X@0,x", &merged(2)).is_err());
        assert!(parse_gate_grammar("X", &merged(2)).is_err());
    }
}
