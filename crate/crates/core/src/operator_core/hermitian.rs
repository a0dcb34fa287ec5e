use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Float;

use super::DenseOperator;
use crate::{real, Error, Result, Scalar};

/// A traceless, trace-orthogonal Hermitian operator basis of a given
/// dimension: `dim^2 - 1` elements spanning all traceless Hermitians.
///
/// The identity is deliberately excluded; callers that need the full
/// Hermitian space add a single global identity direction themselves.
#[derive(Clone, Debug)]
pub struct HermitianBasisSet<T: Scalar> {
    pub dim: usize,
    pub elements: Vec<DenseOperator<T>>,
}

impl<T: Scalar> HermitianBasisSet<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Check the structural invariants: Hermiticity, tracelessness, pairwise
    /// trace-orthogonality, and the element count.
    pub fn validate(&self) -> Result<()> {
        if self.elements.len() != self.dim * self.dim - 1 {
            return Err(Error::validation(format!(
                "expected {} basis elements, found {}",
                self.dim * self.dim - 1,
                self.elements.len()
            )));
        }
        let herm_tol = super::tol_floor::<T>(1e-12, 10.0);
        let orth_tol = super::tol_floor::<T>(1e-10, 100.0);
        for (i, a) in self.elements.iter().enumerate() {
            if a.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: a.dim(),
                });
            }
            if !a.is_hermitian(herm_tol) {
                return Err(Error::validation(format!("element {i} is not Hermitian")));
            }
            if a.trace().norm() > orth_tol {
                return Err(Error::validation(format!("element {i} is not traceless")));
            }
            for (j, b) in self.elements.iter().enumerate().skip(i + 1) {
                let overlap = (a * b).trace().norm();
                if overlap > orth_tol {
                    return Err(Error::validation(format!(
                        "elements {i} and {j} are not trace-orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Generalized Gell-Mann basis of traceless Hermitians in dimension `dim`.
///
/// Listed as the symmetric and antisymmetric pair operators for each index
/// pair `(a, b)` with `a < b` in lexicographic order, followed by the
/// `dim - 1` diagonal ladder operators. For `dim = 2` this is exactly
/// `{X, Y, Z}`; every element `A` satisfies `tr(A^2) = 2`.
pub fn hermitian_basis<T: Scalar>(dim: usize) -> Result<HermitianBasisSet<T>> {
    if dim < 2 {
        return Err(Error::argument(format!(
            "hermitian basis needs dim >= 2, got {dim}"
        )));
    }
    let zero = Complex::<T>::new(T::zero(), T::zero());
    let one = T::one();
    let mut elements = Vec::with_capacity(dim * dim - 1);

    for a in 0..dim {
        for b in (a + 1)..dim {
            let mut sym = DMatrix::from_element(dim, dim, zero);
            sym[(a, b)] = Complex::new(one, T::zero());
            sym[(b, a)] = Complex::new(one, T::zero());
            elements.push(DenseOperator::new(sym)?);

            let mut asym = DMatrix::from_element(dim, dim, zero);
            asym[(a, b)] = Complex::new(T::zero(), -one);
            asym[(b, a)] = Complex::new(T::zero(), one);
            elements.push(DenseOperator::new(asym)?);
        }
    }

    for k in 1..dim {
        // sqrt(2 / (k (k+1))) * diag(1, ..., 1, -k, 0, ..., 0)
        let scale = Float::sqrt(real::<T>(2.0) / (real::<T>(k as f64) * real::<T>((k + 1) as f64)));
        let mut diag = DMatrix::from_element(dim, dim, zero);
        for j in 0..k {
            diag[(j, j)] = Complex::new(scale, T::zero());
        }
        diag[(k, k)] = Complex::new(-scale * real::<T>(k as f64), T::zero());
        elements.push(DenseOperator::new(diag)?);
    }

    Ok(HermitianBasisSet { dim, elements })
}
