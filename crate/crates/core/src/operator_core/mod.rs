//! Dense complex-matrix algebra over a generic real scalar.
//!
//! Everything downstream (code spaces, detection, tangent spaces, group
//! enumeration) is built from the pieces here: [`DenseOperator`] with
//! tensor-product and subsystem-embedding helpers, traceless Hermitian
//! operator bases, the phase-invariant [`projective_distance`] metric, and
//! SVD-backed [`real_nullspace`] extraction.

mod hermitian;
mod metric;
mod nullspace;

pub use hermitian::{hermitian_basis, HermitianBasisSet};
pub use metric::{canonical_phase, projective_distance};
pub use nullspace::{constraint_residual, real_nullspace, real_nullspace_with_sigma_max};

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::{real, Error, Result, Scalar};

/// A square complex matrix of fixed dimension.
///
/// Entries are kept finite by construction; `dim >= 1`. Row-major semantics
/// apply to any slice-based constructor or serialization.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T: Scalar> {
    matrix: DMatrix<Complex<T>>,
}

impl<T: Scalar> DenseOperator<T> {
    /// Wrap a square matrix, rejecting empty or non-finite input.
    pub fn new(matrix: DMatrix<Complex<T>>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::validation("operator dimension must be at least 1"));
        }
        if matrix
            .iter()
            .any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::validation("operator entries must be finite"));
        }
        Ok(Self { matrix })
    }

    /// Build from a row-major slice of `dim * dim` entries.
    pub fn from_rows(dim: usize, entries: &[Complex<T>]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::argument(format!(
                "expected {} entries for a {dim}x{dim} operator, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        Self {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex<T>> {
        self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix[(row, col)]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        self.matrix.trace()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.matrix.norm()
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            matrix: self.matrix.map(|e| e * factor),
        }
    }

    /// `‖self − other‖_F <= tol`, requiring equal dimensions.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dim() == other.dim() && (&self.matrix - &other.matrix).norm() <= tol
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        (&self.matrix - self.matrix.adjoint()).norm() <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        let d = self.dim();
        (self.matrix.adjoint() * &self.matrix - DMatrix::<Complex<T>>::identity(d, d)).norm() <= tol
    }

    /// `i [self, other]`, Hermitian whenever both operands are.
    pub fn commutator_i(&self, other: &Self) -> Self {
        let ab = &self.matrix * &other.matrix;
        let ba = &other.matrix * &self.matrix;
        Self {
            matrix: (ab - ba).map(|e| e * Complex::new(T::zero(), T::one())),
        }
    }
}

impl<T: Scalar> std::ops::Mul for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    fn mul(self, rhs: &DenseOperator<T>) -> DenseOperator<T> {
        DenseOperator {
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl<T: Scalar> std::ops::Add for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    fn add(self, rhs: &DenseOperator<T>) -> DenseOperator<T> {
        DenseOperator {
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl<T: Scalar> std::ops::Sub for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    fn sub(self, rhs: &DenseOperator<T>) -> DenseOperator<T> {
        DenseOperator {
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

/// Kronecker product of the factors in listed order.
///
/// The result dimension is the product of the factor dimensions.
pub fn tensor<T: Scalar>(factors: &[DenseOperator<T>]) -> Result<DenseOperator<T>> {
    if factors.is_empty() {
        return Err(Error::argument("tensor requires at least one factor"));
    }
    let mut dim = 1usize;
    for f in factors {
        dim = dim
            .checked_mul(f.dim())
            .ok_or_else(|| Error::argument("tensor dimension overflows usize"))?;
    }
    let mut out = DMatrix::<Complex<T>>::identity(1, 1);
    for f in factors {
        out = out.kronecker(&f.matrix);
    }
    Ok(DenseOperator { matrix: out })
}

/// Tensor `op` on the subsystem at `part_index` with identities elsewhere.
pub fn embed_local<T: Scalar>(
    op: &DenseOperator<T>,
    part_index: usize,
    layout: &[usize],
) -> Result<DenseOperator<T>> {
    if part_index >= layout.len() {
        return Err(Error::argument(format!(
            "subsystem index {part_index} out of range for {}-subsystem layout",
            layout.len()
        )));
    }
    if op.dim() != layout[part_index] {
        return Err(Error::DimensionMismatch {
            expected: layout[part_index],
            got: op.dim(),
        });
    }
    embed_on_subsystems(op, &[part_index], layout)
}

/// Embed `op` on an ordered set of subsystems, identity elsewhere.
///
/// `members` must be strictly increasing subsystem indices into `dims`;
/// `op.dim()` must equal the product of the member dimensions. The operator
/// acts on the members' composite index in member order, so non-contiguous
/// parts need no explicit reordering permutation.
pub fn embed_on_subsystems<T: Scalar>(
    op: &DenseOperator<T>,
    members: &[usize],
    dims: &[usize],
) -> Result<DenseOperator<T>> {
    if members.is_empty() {
        return Err(Error::argument("embedding requires at least one subsystem"));
    }
    if members.windows(2).any(|w| w[0] >= w[1]) || *members.last().unwrap() >= dims.len() {
        return Err(Error::argument(
            "subsystem indices must be strictly increasing and in range",
        ));
    }
    let local_dim: usize = members.iter().map(|&m| dims[m]).product();
    if op.dim() != local_dim {
        return Err(Error::DimensionMismatch {
            expected: local_dim,
            got: op.dim(),
        });
    }
    let total: usize = dims.iter().product();

    // Group global basis indices by their configuration on the non-member
    // subsystems; within a group, indices differ only on the members and are
    // ordered by the members' composite index.
    let is_member: Vec<bool> = (0..dims.len()).map(|j| members.contains(&j)).collect();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); total / local_dim];
    for g in 0..total {
        let mut rest = 0usize;
        let mut idx = g;
        for j in (0..dims.len()).rev() {
            let digit = idx % dims[j];
            idx /= dims[j];
            if !is_member[j] {
                rest = rest * dims[j] + digit;
            }
        }
        // `rest` was accumulated from the least significant digit up; it is a
        // consistent (if reversed) mixed-radix key, which is all we need.
        groups[rest].push(g);
    }

    let mut out = DMatrix::<Complex<T>>::zeros(total, total);
    for group in &groups {
        debug_assert_eq!(group.len(), local_dim);
        for (a, &ga) in group.iter().enumerate() {
            for (b, &gb) in group.iter().enumerate() {
                out[(ga, gb)] = op.matrix[(a, b)];
            }
        }
    }
    Ok(DenseOperator { matrix: out })
}

/// Deterministic pivoted Gram-Schmidt over the columns of `m`.
///
/// Picks the largest-residual column at each step (lowest index on ties),
/// orthonormalizes, and rotates each vector's largest-magnitude entry to the
/// positive real axis so the result is reproducible run to run. Fails with a
/// degenerate-input error if fewer than `count` independent columns exist
/// above `drop_tol`.
pub(crate) fn pivoted_orthonormal_columns<S>(
    m: &DMatrix<S>,
    count: usize,
    drop_tol: S::RealField,
) -> Result<Vec<DVector<S>>>
where
    S: ComplexField,
    S::RealField: Scalar,
{
    let mut work: Vec<DVector<S>> = (0..m.ncols()).map(|j| m.column(j).into_owned()).collect();
    let mut basis: Vec<DVector<S>> = Vec::with_capacity(count);
    // Ties in the pivot norm are broken toward the lowest column index, with
    // a small relative window so rounding noise cannot reorder the pivots.
    let tie = Float::sqrt(<S::RealField as Float>::epsilon());
    while basis.len() < count {
        let norms: Vec<S::RealField> = work.iter().map(|col| col.norm()).collect();
        let max_norm = norms
            .iter()
            .copied()
            .fold(<S::RealField as Zero>::zero(), Float::max);
        let cutoff = max_norm * (<S::RealField as num_traits::One>::one() - tie);
        let best = norms.iter().position(|&n| n >= cutoff).unwrap_or(0);
        let best_norm = max_norm;
        if best_norm <= drop_tol {
            return Err(Error::Degenerate(format!(
                "only {} independent columns above tolerance, needed {count}",
                basis.len()
            )));
        }
        // One re-orthogonalization pass keeps the basis orthonormal to
        // machine precision even for ill-conditioned column sets.
        let mut v = work[best].clone();
        for _ in 0..2 {
            for b in &basis {
                let overlap = b.dotc(&v);
                v -= b * overlap;
            }
        }
        let norm = v.norm();
        v /= S::from_real(norm);
        phase_normalize(&mut v);
        for col in work.iter_mut() {
            let overlap = v.dotc(col);
            *col -= &v * overlap;
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Rotate the largest-magnitude entry (first on ties) to be real positive.
fn phase_normalize<S>(v: &mut DVector<S>)
where
    S: ComplexField,
    S::RealField: Scalar,
{
    let mut lead = 0usize;
    let mut lead_mag = <S::RealField as Zero>::zero();
    for (i, e) in v.iter().enumerate() {
        let mag = e.clone().modulus();
        if mag > lead_mag {
            lead = i;
            lead_mag = mag;
        }
    }
    if lead_mag > <S::RealField as Zero>::zero() {
        let phase = v[lead].clone().conjugate() / S::from_real(lead_mag);
        *v *= phase;
    }
}

/// Convenience: tolerance floor that respects the scalar's precision.
///
/// Returns `max(tol, scale * epsilon)`; keeps `f64`-calibrated defaults
/// usable when the same code runs in `f32`.
pub fn tol_floor<T: Scalar>(tol: f64, scale: f64) -> T {
    Float::max(real::<T>(tol), T::epsilon() * real::<T>(scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub(crate) fn pauli_x() -> DenseOperator<f64> {
        DenseOperator::from_rows(2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
    }

    pub(crate) fn pauli_z() -> DenseOperator<f64> {
        DenseOperator::from_rows(2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]).unwrap()
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = DenseOperator::<f64>::identity(2);
        let t = tensor(&[i2.clone(), i2]).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.approx_eq(&DenseOperator::identity(4), 0.0));
    }

    #[test]
    fn tensor_xx_is_antidiagonal() {
        let t = tensor(&[pauli_x(), pauli_x()]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(t.entry(i, j), c(expected, 0.0));
            }
        }
    }

    #[test]
    fn tensor_dim_is_product_of_factor_dims() {
        let a = DenseOperator::<f64>::identity(2);
        let b = DenseOperator::<f64>::identity(3);
        assert_eq!(tensor(&[a, b]).unwrap().dim(), 6);
    }

    #[test]
    fn tensor_rejects_empty_list() {
        assert!(matches!(tensor::<f64>(&[]), Err(Error::Argument(_))));
    }

    #[test]
    fn tensor_is_associative() {
        let a = pauli_x();
        let b = pauli_z();
        let s = DenseOperator::from_rows(2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)]).unwrap();
        let left = tensor(&[tensor(&[a.clone(), b.clone()]).unwrap(), s.clone()]).unwrap();
        let right = tensor(&[a, tensor(&[b, s]).unwrap()]).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn embed_local_places_factor_correctly() {
        let x = pauli_x();
        let xi = embed_local(&x, 0, &[2, 2]).unwrap();
        assert!(xi.approx_eq(
            &tensor(&[pauli_x(), DenseOperator::identity(2)]).unwrap(),
            0.0
        ));

        let z = pauli_z();
        let iiz = embed_local(&z, 2, &[2, 2, 2]).unwrap();
        let expected = tensor(&[
            DenseOperator::identity(2),
            DenseOperator::identity(2),
            pauli_z(),
        ])
        .unwrap();
        assert!(iiz.approx_eq(&expected, 0.0));
    }

    #[test]
    fn embed_local_identity_gives_global_identity() {
        let i2 = DenseOperator::<f64>::identity(2);
        for j in 0..3 {
            let e = embed_local(&i2, j, &[2, 2, 2]).unwrap();
            assert!(e.approx_eq(&DenseOperator::identity(8), 0.0));
        }
    }

    #[test]
    fn embed_local_rejects_dim_mismatch() {
        let x = pauli_x();
        assert!(matches!(
            embed_local(&x, 0, &[3, 2]),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn embed_on_subsystems_matches_tensor_for_contiguous_pair() {
        let zz = tensor(&[pauli_z(), pauli_z()]).unwrap();
        let direct = embed_on_subsystems(&zz, &[0, 1], &[2, 2, 2]).unwrap();
        let expected = tensor(&[pauli_z(), pauli_z(), DenseOperator::identity(2)]).unwrap();
        assert!(direct.approx_eq(&expected, 0.0));
    }

    #[test]
    fn embed_on_subsystems_handles_noncontiguous_members() {
        // X on subsystems {0, 2} of three qubits equals X (x) I (x) X.
        let xx = tensor(&[pauli_x(), pauli_x()]).unwrap();
        let embedded = embed_on_subsystems(&xx, &[0, 2], &[2, 2, 2]).unwrap();
        let expected = tensor(&[pauli_x(), DenseOperator::identity(2), pauli_x()]).unwrap();
        assert!(embedded.approx_eq(&expected, 0.0));
    }

    #[test]
    fn embed_on_subsystems_qudit_layout() {
        let a = DenseOperator::<f64>::from_rows(
            3,
            &[
                c(0., 0.),
                c(1., 0.),
                c(0., 0.),
                c(1., 0.),
                c(0., 0.),
                c(0., 0.),
                c(0., 0.),
                c(0., 0.),
                c(2., 0.),
            ],
        )
        .unwrap();
        let e = embed_on_subsystems(&a, &[1], &[2, 3]).unwrap();
        let expected = tensor(&[DenseOperator::identity(2), a]).unwrap();
        assert!(e.approx_eq(&expected, 0.0));
    }

    #[test]
    fn operator_rejects_non_finite_entries() {
        let bad = DMatrix::from_row_slice(1, 1, &[c(f64::NAN, 0.0)]);
        assert!(DenseOperator::new(bad).is_err());
    }

    #[test]
    fn commutator_i_is_hermitian_for_hermitian_inputs() {
        let x = pauli_x();
        let z = pauli_z();
        let comm = x.commutator_i(&z);
        assert!(comm.is_hermitian(1e-14));
        // i[X, Z] = 2Y
        let y =
            DenseOperator::from_rows(2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        assert!(comm.approx_eq(&y.scale(c(2.0, 0.0)), 1e-14));
    }

    #[test]
    fn pivoted_gram_schmidt_is_deterministic_and_orthonormal() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.5, 0.0),
                c(-0.5, 0.0),
                c(0.0, 0.0),
                c(-0.5, 0.0),
                c(0.5, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
            ],
        );
        let basis = pivoted_orthonormal_columns(&m, 1, 1e-12).unwrap();
        let v = &basis[0];
        assert!((v.norm() - 1.0).abs() < 1e-12);
        // Leading entry rotated positive: (1, -1)/sqrt(2).
        assert!((v[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((v[1].re + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}
