use nalgebra::{DMatrix, DVector};
use num_traits::Float;

use crate::{Error, Result, Scalar};

/// Orthonormal basis of the (near-)nullspace of a real matrix.
///
/// Computed from a singular value decomposition: right singular vectors whose
/// singular values satisfy `sigma <= tol * sigma_max` span the returned
/// space. When `sigma_max = 0` the full variable space comes back. `rows` are
/// constraints, `cols` are variables.
///
/// The raw SVD basis of a degenerate singular block is only determined up to
/// rotation, so the basis is re-extracted deterministically: the candidate
/// vectors are collapsed into the (basis-independent) nullspace projector and
/// re-orthonormalized by pivoted Gram-Schmidt with a fixed sign convention.
/// Coordinate-aligned kernels therefore come back as coordinate vectors.
pub fn real_nullspace<T: Scalar>(m: &DMatrix<T>, tol: T) -> Result<Vec<DVector<T>>> {
    real_nullspace_with_sigma_max(m, tol).map(|(vectors, _)| vectors)
}

/// [`real_nullspace`] plus the largest singular value of the input, which
/// residual bounds are stated against.
pub fn real_nullspace_with_sigma_max<T: Scalar>(
    m: &DMatrix<T>,
    tol: T,
) -> Result<(Vec<DVector<T>>, T)> {
    if m.iter().any(|e| !e.is_finite()) {
        return Err(Error::argument("nullspace input must be finite"));
    }
    if !tol.is_finite() || tol < T::zero() {
        return Err(Error::argument(
            "nullspace tolerance must be finite and >= 0",
        ));
    }
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok((Vec::new(), T::zero()));
    }

    // A thin SVD of a wide matrix only yields `rows` right singular vectors;
    // padding with zero rows (which changes nothing about M^T M) exposes the
    // full set of `cols` right singular directions.
    let work = if rows < cols {
        let mut padded = DMatrix::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(m);
        padded
    } else {
        m.clone()
    };

    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("svd requested right singular vectors");
    let sigma_max = svd
        .singular_values
        .iter()
        .copied()
        .fold(T::zero(), Float::max);
    let threshold = tol * sigma_max;

    let mut candidates: Vec<DVector<T>> = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= threshold {
            candidates.push(v_t.row(i).transpose());
        }
    }
    if candidates.is_empty() {
        return Ok((Vec::new(), sigma_max));
    }

    // Basis-independent projector onto the candidate span.
    let mut projector = DMatrix::<T>::zeros(cols, cols);
    for v in &candidates {
        projector += v * v.transpose();
    }
    let drop_tol = Float::sqrt(T::epsilon());
    let basis = super::pivoted_orthonormal_columns(&projector, candidates.len(), drop_tol)?;
    Ok((basis, sigma_max))
}

/// `‖M v‖_2` for a coefficient vector, the residual the nullspace bound is
/// stated against.
pub fn constraint_residual<T: Scalar>(m: &DMatrix<T>, v: &DVector<T>) -> T {
    (m * v).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_empty_nullspace() {
        let m = DMatrix::<f64>::identity(3, 3);
        assert!(real_nullspace(&m, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_returns_full_space() {
        let m = DMatrix::<f64>::zeros(2, 3);
        let ns = real_nullspace(&m, 1e-10).unwrap();
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            assert!((v.norm() - 1.0).abs() < 1e-12);
            for (j, w) in ns.iter().enumerate() {
                let ip = v.dot(w);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn row_sum_constraint_gives_antisymmetric_direction() {
        let m = DMatrix::<f64>::from_row_slice(1, 2, &[1.0, 1.0]);
        let ns = real_nullspace(&m, 1e-10).unwrap();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        // deterministic sign: leading entry positive
        assert!((v[0] - inv_sqrt2).abs() < 1e-12);
        assert!((v[1] + inv_sqrt2).abs() < 1e-12);
    }

    #[test]
    fn coordinate_kernel_comes_back_as_coordinate_vectors() {
        // Zero columns 0 and 2; the kernel is span{e0, e2} exactly.
        let m = DMatrix::<f64>::from_row_slice(2, 4, &[0.0, 1.0, 0.0, 0.5, 0.0, -0.3, 0.0, 1.2]);
        let ns = real_nullspace(&m, 1e-10).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let support: Vec<usize> = (0..4).filter(|&i| v[i].abs() > 1e-9).collect();
            assert_eq!(support.len(), 1, "vector not coordinate-aligned: {v:?}");
            assert!(v[support[0]] > 0.0);
        }
    }

    #[test]
    fn residual_bound_holds() {
        let m = DMatrix::<f64>::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0]);
        let tol = 1e-9;
        let ns = real_nullspace(&m, tol).unwrap();
        assert_eq!(ns.len(), 2); // rank-1 matrix
        let sigma_max = m.clone().svd(false, false).singular_values[0];
        for v in &ns {
            assert!(constraint_residual(&m, v) <= tol * sigma_max * (1.0 + 1e-6));
        }
    }

    #[test]
    fn rejects_non_finite_input() {
        let m = DMatrix::<f64>::from_row_slice(1, 2, &[f64::NAN, 1.0]);
        assert!(real_nullspace(&m, 1e-10).is_err());
    }
}
