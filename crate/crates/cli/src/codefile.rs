//! The JSON code-definition format and its conversion into core types.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::Deserialize;

use transversal_core::code_model::{
    build_code_space, code_space_from_basis, CodeSpace, PauliString, StabilizerCodeDef,
    SubsystemLayout,
};
use transversal_core::nalgebra::DVector;

use crate::error::{CliError, CliResult};

/// A code definition file.
///
/// `dims` lists the subsystem dimensions. `blocks` and `parts` (optional)
/// group subsystem indices; they default to one block containing everything
/// and singleton parts. Exactly one of `stabilizers` (signed Pauli strings,
/// qubits only) or `basis_vectors` (complex amplitudes as `[re, im]` pairs)
/// must be present.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDefinitionFile {
    pub name: String,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub blocks: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub parts: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub stabilizers: Option<Vec<String>>,
    #[serde(default)]
    pub basis_vectors: Option<Vec<Vec<[f64; 2]>>>,
}

/// A parsed and validated code, ready for analysis.
pub struct LoadedCode {
    pub name: String,
    pub layout: SubsystemLayout,
    pub code_space: CodeSpace<f64>,
}

impl CodeDefinitionFile {
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

    pub fn build(&self) -> CliResult<LoadedCode> {
        let layout = SubsystemLayout::from_groupings(
            self.dims.clone(),
            self.blocks.as_deref(),
            self.parts.as_deref(),
        )?;
        let code_space = match (&self.stabilizers, &self.basis_vectors) {
            (Some(stabs), None) => {
                let generators = stabs
                    .iter()
                    .map(|s| PauliString::parse(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let def = StabilizerCodeDef::new(layout.clone(), generators)?;
                build_code_space::<f64>(&def)?
            }
            (None, Some(vectors)) => {
                let dim = layout.total_dim();
                let parsed: Vec<DVector<C64>> = vectors
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        if v.len() != dim {
                            return Err(CliError::Definition(format!(
                                "basis vector {i} has {} amplitudes, expected {dim}",
                                v.len()
                            )));
                        }
                        Ok(DVector::from_iterator(
                            dim,
                            v.iter().map(|[re, im]| C64::new(*re, *im)),
                        ))
                    })
                    .collect::<CliResult<_>>()?;
                code_space_from_basis(&parsed, &layout)?
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Definition(
                    "specify either stabilizers or basis_vectors, not both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Definition(
                    "one of stabilizers or basis_vectors is required".into(),
                ))
            }
        };
        Ok(LoadedCode {
            name: self.name.clone(),
            layout,
            code_space,
        })
    }
}

pub fn load_code(path: &Path) -> CliResult<LoadedCode> {
    CodeDefinitionFile::load(path)?.build()
}
