//! Error detectability: `P E P ∝ P` per operator, and the part-by-part
//! local-error-detecting verdict.

use num_complex::Complex;

use crate::code_model::{merge_parts, CodeSpace, SubsystemLayout};
use crate::operator_core::{embed_on_subsystems, hermitian_basis, DenseOperator};
use crate::{real, Error, Result, Scalar};

/// Outcome of a single detectability check.
///
/// `lambda` is the proportionality constant `tr(PEP)/code_dim`; `residual`
/// is `‖PEP − λP‖_F`; `detectable` holds iff the residual is within the
/// tolerance the check ran at. When not detectable, `witness` names the
/// codeword pair `(a, b)` where `B^dag E B` deviates most from `λ δ_ab`.
#[derive(Clone, Debug)]
pub struct DetectabilityResult<T: Scalar> {
    pub detectable: bool,
    pub lambda: Complex<T>,
    pub residual: T,
    pub witness: Option<(usize, usize)>,
}

/// Decide whether `error_op` is detectable by the code.
///
/// `λ` is computed by trace projection (never by entry ratios), and the
/// residual is evaluated on the compressed matrix `L = B^dag E B`:
/// `PEP − λP = B (L − λI) B^dag`, and conjugation by an isometry preserves
/// the Frobenius norm, so `‖L − λI‖_F` equals the full-space residual.
pub fn detectability<T: Scalar>(
    cs: &CodeSpace<T>,
    error_op: &DenseOperator<T>,
    tol: T,
) -> Result<DetectabilityResult<T>> {
    if error_op.dim() != cs.dim() {
        return Err(Error::DimensionMismatch {
            expected: cs.dim(),
            got: error_op.dim(),
        });
    }
    let logical = cs.logical_matrix(error_op);
    let k = cs.code_dim();
    let lambda = logical.trace() / Complex::new(real::<T>(k as f64), T::zero());

    let mut deviation = logical;
    for a in 0..k {
        deviation[(a, a)] -= lambda;
    }
    let residual = deviation.norm();
    let detectable = residual <= tol;

    let witness = if detectable {
        None
    } else {
        let mut best = (0usize, 0usize);
        let mut best_mag = T::zero();
        for a in 0..k {
            for b in 0..k {
                let mag = deviation[(a, b)].norm();
                if mag > best_mag {
                    best = (a, b);
                    best_mag = mag;
                }
            }
        }
        Some(best)
    };

    Ok(DetectabilityResult {
        detectable,
        lambda,
        residual,
        witness,
    })
}

/// One operator-basis element checked on one part.
#[derive(Clone, Debug)]
pub struct ElementDetection<T: Scalar> {
    pub label: String,
    pub is_identity: bool,
    pub result: DetectabilityResult<T>,
}

/// All basis elements of a single transversal part.
#[derive(Clone, Debug)]
pub struct PartDetectionReport<T: Scalar> {
    pub part_index: usize,
    pub members: Vec<usize>,
    pub part_dim: usize,
    pub elements: Vec<ElementDetection<T>>,
    /// Every non-identity basis element detectable.
    pub passed: bool,
}

/// Part-by-part detection verdict for a laid-out code.
#[derive(Clone, Debug)]
pub struct LocalDetectionReport<T: Scalar> {
    pub parts: Vec<PartDetectionReport<T>>,
    /// True iff every part passed.
    pub local_error_detecting: bool,
    pub tol: T,
    /// Why checking a finite basis suffices for "arbitrary errors".
    pub basis_reduction_note: &'static str,
}

pub const BASIS_REDUCTION_NOTE: &str = "an arbitrary operator on a part is a complex-linear \
combination of the part's Hermitian basis elements plus the identity, and both the condition \
PEP = lambda*P and lambda itself are linear in E, so detectability of the finite basis implies \
detectability of every operator supported on the part";

/// Check detectability of an operator basis of every transversal part.
///
/// Each part is checked against the embedded generalized Gell-Mann basis of
/// its merged dimension plus the identity; the overall verdict is
/// "local-error-detecting" iff every non-identity element of every part is
/// detectable at `tol`.
pub fn local_detection_report<T: Scalar>(
    cs: &CodeSpace<T>,
    layout: &SubsystemLayout,
    tol: T,
) -> Result<LocalDetectionReport<T>> {
    if layout.total_dim() != cs.dim() {
        return Err(Error::DimensionMismatch {
            expected: cs.dim(),
            got: layout.total_dim(),
        });
    }
    let merged = merge_parts(layout)?;
    let mut parts = Vec::with_capacity(merged.part_dims.len());
    for (p, (&part_dim, members)) in merged
        .part_dims
        .iter()
        .zip(&merged.part_members)
        .enumerate()
    {
        let mut elements = Vec::with_capacity(part_dim * part_dim);
        let identity_result = detectability(cs, &DenseOperator::identity(cs.dim()), tol)?;
        elements.push(ElementDetection {
            label: "I".to_string(),
            is_identity: true,
            result: identity_result,
        });
        if part_dim >= 2 {
            let basis = hermitian_basis::<T>(part_dim)?;
            for (i, h) in basis.elements.iter().enumerate() {
                let label = if part_dim == 2 {
                    ["X", "Y", "Z"][i].to_string()
                } else {
                    format!("h{i}")
                };
                let embedded = embed_on_subsystems(h, members, layout.dims())?;
                let result = detectability(cs, &embedded, tol)?;
                elements.push(ElementDetection {
                    label,
                    is_identity: false,
                    result,
                });
            }
        }
        let passed = elements
            .iter()
            .filter(|e| !e.is_identity)
            .all(|e| e.result.detectable);
        parts.push(PartDetectionReport {
            part_index: p,
            members: members.clone(),
            part_dim,
            elements,
            passed,
        });
    }
    let local_error_detecting = parts.iter().all(|p| p.passed);
    Ok(LocalDetectionReport {
        parts,
        local_error_detecting,
        tol,
        basis_reduction_note: BASIS_REDUCTION_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_model::{build_code_space, PauliString, StabilizerCodeDef};
    use crate::operator_core::embed_local;

    fn bitflip() -> (CodeSpace<f64>, SubsystemLayout) {
        let layout = SubsystemLayout::qubits(3).unwrap();
        let def = StabilizerCodeDef::new(
            layout.clone(),
            vec![
                PauliString::parse("ZZI").unwrap(),
                PauliString::parse("IZZ").unwrap(),
            ],
        )
        .unwrap();
        (build_code_space(&def).unwrap(), layout)
    }

    fn code422() -> (CodeSpace<f64>, SubsystemLayout) {
        let layout = SubsystemLayout::qubits(4).unwrap();
        let def = StabilizerCodeDef::new(
            layout.clone(),
            vec![
                PauliString::parse("XXXX").unwrap(),
                PauliString::parse("ZZZZ").unwrap(),
            ],
        )
        .unwrap();
        (build_code_space(&def).unwrap(), layout)
    }

    #[test]
    fn identity_is_detectable_with_unit_lambda() {
        let (cs, _) = bitflip();
        let r = detectability(&cs, &DenseOperator::identity(8), 1e-8).unwrap();
        assert!(r.detectable);
        assert!((r.lambda.re - 1.0).abs() < 1e-12);
        assert!(r.lambda.im.abs() < 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn bitflip_detects_x_on_first_qubit() {
        let (cs, layout) = bitflip();
        let x = PauliString::parse("X").unwrap().to_matrix::<f64>();
        let x0 = embed_local(&x, 0, layout.dims()).unwrap();
        let r = detectability(&cs, &x0, 1e-8).unwrap();
        assert!(r.detectable);
        assert!(r.lambda.norm() < 1e-12, "X0 maps code space out of itself");
    }

    #[test]
    fn bitflip_misses_z_on_first_qubit() {
        let (cs, layout) = bitflip();
        let z = PauliString::parse("Z").unwrap().to_matrix::<f64>();
        let z0 = embed_local(&z, 0, layout.dims()).unwrap();
        let r = detectability(&cs, &z0, 1e-8).unwrap();
        assert!(!r.detectable);
        // B^dag Z0 B = diag(1, -1): lambda = 0, deviation maximal on a diagonal pair
        assert!(r.lambda.norm() < 1e-12);
        assert!((r.residual - 2.0f64.sqrt()).abs() < 1e-10);
        let (a, b) = r.witness.unwrap();
        assert_eq!(a, b, "witness should sit on the diagonal");
    }

    #[test]
    fn code422_detects_every_single_qubit_pauli() {
        let (cs, layout) = code422();
        for q in 0..4 {
            for p in ["X", "Y", "Z"] {
                let op = PauliString::parse(p).unwrap().to_matrix::<f64>();
                let e = embed_local(&op, q, layout.dims()).unwrap();
                let r = detectability(&cs, &e, 1e-8).unwrap();
                assert!(r.detectable, "{p} on qubit {q} must be detectable");
                assert!(r.lambda.norm() < 1e-10, "{p}{q} lambda should vanish");
            }
        }
    }

    #[test]
    fn local_report_passes_for_422_and_fails_for_bitflip() {
        let (cs, layout) = code422();
        let report = local_detection_report(&cs, &layout, 1e-8).unwrap();
        assert!(report.local_error_detecting);
        assert_eq!(report.parts.len(), 4);

        let (cs, layout) = bitflip();
        let report = local_detection_report(&cs, &layout, 1e-8).unwrap();
        assert!(!report.local_error_detecting);
        for part in &report.parts {
            assert!(!part.passed);
            let z_failure = part
                .elements
                .iter()
                .find(|e| e.label == "Z")
                .expect("Z element present");
            assert!(!z_failure.result.detectable);
        }
    }

    #[test]
    fn stabilizer_elements_are_detectable_with_unit_lambda() {
        let (cs, _) = code422();
        let g = PauliString::parse("XXXX").unwrap().to_matrix::<f64>();
        let r = detectability(&cs, &g, 1e-8).unwrap();
        assert!(r.detectable);
        assert!((r.lambda.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn adjoint_has_conjugate_lambda() {
        let (cs, layout) = bitflip();
        // a non-Hermitian single-qubit operator
        let m = DenseOperator::from_rows(
            2,
            &[
                Complex::new(0.3, 0.1),
                Complex::new(0.2, -0.7),
                Complex::new(0.9, 0.4),
                Complex::new(-0.5, 0.2),
            ],
        )
        .unwrap();
        let e = embed_local(&m, 1, layout.dims()).unwrap();
        let r = detectability(&cs, &e, 1e-8).unwrap();
        let r_dag = detectability(&cs, &e.adjoint(), 1e-8).unwrap();
        assert_eq!(r.detectable, r_dag.detectable);
        assert!((r.lambda - r_dag.lambda.conj()).norm() < 1e-10);
    }

    #[test]
    fn residual_matches_uncompressed_definition() {
        let (cs, layout) = bitflip();
        let z = PauliString::parse("Z").unwrap().to_matrix::<f64>();
        let z0 = embed_local(&z, 0, layout.dims()).unwrap();
        let r = detectability(&cs, &z0, 1e-8).unwrap();
        // direct ‖PEP − λP‖_F on the full 8x8 matrices
        let p = cs.projector().matrix();
        let pep = p * z0.matrix() * p;
        let direct = (&pep - &p.map(|e| e * r.lambda)).norm();
        assert!((direct - r.residual).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let (cs, _) = bitflip();
        let small = DenseOperator::<f64>::identity(4);
        assert!(detectability(&cs, &small, 1e-8).is_err());
    }
}
