//! The real-linear space of product Hamiltonians generating continuous
//! logical families, and its action on the code space.
//!
//! A direction is a real combination `D = Σ α_a H_a` of one global identity
//! and per-part traceless Hermitians, constrained by `(I−P) D P = 0`. The
//! solver assembles that constraint as a real matrix over `α` and extracts
//! its nullspace; each solution is then classified by whether `B^dag D B` is
//! a multiple of the identity (trivial on the code space) or not.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use num_traits::Float;

use crate::code_model::{merge_parts, CodeSpace, SubsystemLayout};
use crate::gate_group::{logical_action, LogicalAction};
use crate::operator_core::{
    embed_on_subsystems, hermitian_basis, real_nullspace_with_sigma_max, tol_floor, DenseOperator,
};
use crate::{defaults, real, Error, Result, Scalar, MAX_DIM};

/// One direction of the product-Hamiltonian expansion.
#[derive(Clone, Debug)]
pub enum ProductBasisElement<T: Scalar> {
    /// The single distinguished identity direction on the whole system.
    GlobalIdentity,
    /// A traceless Hermitian supported on one transversal part.
    Local { part: usize, op: DenseOperator<T> },
}

/// Expansion basis for product Hamiltonians over the merged parts:
/// one global identity plus `dim_p^2 - 1` traceless Hermitians per part.
#[derive(Clone, Debug)]
pub struct ProductHamiltonianBasis<T: Scalar> {
    part_dims: Vec<usize>,
    elements: Vec<ProductBasisElement<T>>,
    globals: Vec<DenseOperator<T>>,
}

impl<T: Scalar> ProductHamiltonianBasis<T> {
    /// Assemble the basis for a layout, merging parts first.
    pub fn build(layout: &SubsystemLayout) -> Result<Self> {
        let merged = merge_parts(layout)?;
        let total = layout.total_dim();
        let mut elements = vec![ProductBasisElement::GlobalIdentity];
        let mut globals = vec![DenseOperator::<T>::identity(total)];
        for (p, (&dim_p, members)) in merged
            .part_dims
            .iter()
            .zip(&merged.part_members)
            .enumerate()
        {
            if dim_p < 2 {
                continue;
            }
            for h in hermitian_basis::<T>(dim_p)?.elements {
                globals.push(embed_on_subsystems(&h, members, layout.dims())?);
                elements.push(ProductBasisElement::Local { part: p, op: h });
            }
        }
        Ok(Self {
            part_dims: merged.part_dims,
            elements,
            globals,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `1 + Σ_parts (dim_p^2 − 1)`.
    pub fn expected_len(&self) -> usize {
        1 + self.part_dims.iter().map(|&d| d * d - 1).sum::<usize>()
    }

    pub fn part_dims(&self) -> &[usize] {
        &self.part_dims
    }

    pub fn elements(&self) -> &[ProductBasisElement<T>] {
        &self.elements
    }

    /// Embedded full-dimension realization of each element.
    pub fn globals(&self) -> &[DenseOperator<T>] {
        &self.globals
    }

    /// A short label per element: `"I"` for the global identity and
    /// `"<op>@part<p>"` for local Hermitians (`X`/`Y`/`Z` on qubit parts,
    /// `h<i>` otherwise).
    pub fn labels(&self) -> Vec<String> {
        let mut per_part_counter = vec![0usize; self.part_dims.len()];
        self.elements
            .iter()
            .map(|e| match e {
                ProductBasisElement::GlobalIdentity => "I".to_string(),
                ProductBasisElement::Local { part, .. } => {
                    let i = per_part_counter[*part];
                    per_part_counter[*part] += 1;
                    let sym = if self.part_dims[*part] == 2 {
                        ["X", "Y", "Z"][i].to_string()
                    } else {
                        format!("h{i}")
                    };
                    format!("{sym}@part{part}")
                }
            })
            .collect()
    }

    /// Realize a coefficient vector as the operator `Σ α_a H_a`.
    pub fn combine(&self, alpha: &DVector<T>) -> Result<DenseOperator<T>> {
        if alpha.len() != self.globals.len() {
            return Err(Error::DimensionMismatch {
                expected: self.globals.len(),
                got: alpha.len(),
            });
        }
        let dim = self.globals[0].dim();
        let mut acc = DMatrix::<Complex<T>>::zeros(dim, dim);
        for (a, g) in alpha.iter().zip(&self.globals) {
            let factor = Complex::new(*a, T::zero());
            acc += g.matrix().map(|e| e * factor);
        }
        DenseOperator::new(acc)
    }
}

/// How a tangent direction acts on the code space.
#[derive(Clone, Debug)]
pub enum TangentClass<T: Scalar> {
    /// `B^dag D B = λ I`: the flow `e^{iθD}` fixes every codeword up to
    /// phase.
    Trivial { lambda: T },
    /// `B^dag D B` is a genuine logical Hamiltonian.
    Nontrivial {
        logical_hermitian: DMatrix<Complex<T>>,
    },
}

impl<T: Scalar> TangentClass<T> {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TangentClass::Trivial { .. })
    }
}

/// Solution of the tangent-space constraint with per-direction
/// classifications.
#[derive(Clone, Debug)]
pub struct TangentReport<T: Scalar> {
    pub nullspace_dim: usize,
    /// Orthonormal coefficient vectors, indexed against the
    /// [`ProductHamiltonianBasis`] element order.
    pub basis: Vec<DVector<T>>,
    /// Label of each basis element the coefficients index into.
    pub element_labels: Vec<String>,
    pub classifications: Vec<TangentClass<T>>,
    pub all_trivial: bool,
    pub nullspace_tol: T,
    pub classification_tol: T,
    /// Largest singular value of the constraint map; residual bounds are
    /// relative to it.
    pub constraint_sigma_max: T,
    /// Containment caveat attached to every report.
    pub containment_note: &'static str,
}

pub const CONTAINMENT_NOTE: &str = "this solver returns the full real-linear space of product \
Hamiltonians D with (I-P)DP = 0; the Lie algebra generating continuous families of logical \
product unitaries is contained in (and may be smaller than) this space, so all-trivial here \
implies the identity component of the logical product group acts trivially on the code space";

/// Build the constraint columns `(I−P) H_a B`, stacked re/im as real rows.
///
/// `(I−P) H P = ((I−P) H B) B^dag` and right multiplication by `B^dag`
/// (orthonormal rows) preserves both the Frobenius norm of every image and
/// therefore every singular value of the map `α ↦ (I−P)(Σ α_a H_a)P`, so the
/// `dim x code_dim` block is an exact, much smaller stand-in for the
/// `dim x dim` constraint.
fn constraint_matrix<T: Scalar>(
    cs: &CodeSpace<T>,
    basis: &ProductHamiltonianBasis<T>,
) -> DMatrix<T> {
    let dim = cs.dim();
    let k = cs.code_dim();
    let rows = 2 * dim * k;
    let mut m = DMatrix::<T>::zeros(rows, basis.len());
    for (col, g) in basis.globals().iter().enumerate() {
        let mapped = g.matrix() * cs.basis();
        let inside = cs.basis() * (cs.basis().adjoint() * &mapped);
        let off_code = mapped - inside;
        for (entry_idx, e) in off_code.iter().enumerate() {
            m[(2 * entry_idx, col)] = e.re;
            m[(2 * entry_idx + 1, col)] = e.im;
        }
    }
    m
}

/// Solve `(I−P) (Σ α_a H_a) P = 0` over real `α` and classify each
/// nullspace direction.
///
/// `tol` is the relative singular-value cutoff for the nullspace; the
/// classification runs at the default classification tolerance.
pub fn logical_tangent_space<T: Scalar>(
    cs: &CodeSpace<T>,
    layout: &SubsystemLayout,
    tol: T,
) -> Result<TangentReport<T>> {
    if layout.total_dim() != cs.dim() {
        return Err(Error::DimensionMismatch {
            expected: cs.dim(),
            got: layout.total_dim(),
        });
    }
    if cs.dim() > MAX_DIM {
        return Err(Error::ResourceLimit {
            requested: cs.dim(),
            max: MAX_DIM,
        });
    }
    let basis = ProductHamiltonianBasis::build(layout)?;
    debug_assert_eq!(basis.len(), basis.expected_len());

    let constraint = constraint_matrix(cs, &basis);
    let (vectors, sigma_max) = real_nullspace_with_sigma_max(&constraint, tol)?;

    let classification_tol = tol_floor::<T>(defaults::CLASSIFICATION_TOL, 100.0);
    let mut classifications = Vec::with_capacity(vectors.len());
    for alpha in &vectors {
        let d = basis.combine(alpha)?;
        classifications.push(classify_tangent(cs, &d, classification_tol)?);
    }
    let all_trivial = classifications.iter().all(TangentClass::is_trivial);
    Ok(TangentReport {
        nullspace_dim: vectors.len(),
        basis: vectors,
        element_labels: basis.labels(),
        classifications,
        all_trivial,
        nullspace_tol: tol,
        classification_tol,
        constraint_sigma_max: sigma_max,
        containment_note: CONTAINMENT_NOTE,
    })
}

/// Classify a single logical Hamiltonian.
///
/// Precondition: `D` preserves the code space, `‖(I−P)DP‖_F <= tol ‖D‖_F`;
/// violating it is an argument error, not a nontrivial classification.
pub fn classify_tangent<T: Scalar>(
    cs: &CodeSpace<T>,
    d: &DenseOperator<T>,
    tol: T,
) -> Result<TangentClass<T>> {
    if d.dim() != cs.dim() {
        return Err(Error::DimensionMismatch {
            expected: cs.dim(),
            got: d.dim(),
        });
    }
    let residual = cs.off_code_residual(d);
    if residual > tol * d.norm() {
        return Err(Error::argument(format!(
            "operator is not a logical Hamiltonian: off-code residual {residual:.3e} \
             exceeds {tol:.1e} * ||D||"
        )));
    }
    let logical = cs.logical_matrix(d);
    let k = cs.code_dim();
    let lambda = logical.trace().re / real::<T>(k as f64);
    let mut deviation = logical.clone();
    for a in 0..k {
        deviation[(a, a)] -= Complex::new(lambda, T::zero());
    }
    if deviation.norm() <= tol {
        Ok(TangentClass::Trivial { lambda })
    } else {
        Ok(TangentClass::Nontrivial {
            logical_hermitian: logical,
        })
    }
}

/// `exp(i θ H)` for Hermitian `H`, via eigendecomposition.
pub fn exp_i_hermitian<T: Scalar>(h: &DenseOperator<T>, theta: T) -> Result<DenseOperator<T>> {
    if !h.is_hermitian(tol_floor::<T>(1e-8, 1000.0) * Float::max(h.norm(), T::one())) {
        return Err(Error::argument(
            "matrix exponential flow requires a Hermitian generator",
        ));
    }
    let eig = h.matrix().clone().symmetric_eigen();
    let phases = eig
        .eigenvalues
        .map(|l| Complex::new(T::zero(), l * theta).exp());
    let u = &eig.eigenvectors * DMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint();
    DenseOperator::new(u)
}

/// Logical action of the flow `exp(i θ D)` for a tangent direction `D`.
///
/// For trivial directions the result is the logical identity once the
/// canonical phase is applied.
pub fn flow_logical_action<T: Scalar>(
    cs: &CodeSpace<T>,
    d: &DenseOperator<T>,
    theta: T,
) -> Result<LogicalAction<T>> {
    let u = exp_i_hermitian(d, theta)?;
    let action = logical_action(cs, &u, tol_floor::<T>(defaults::LOGICAL_TOL, 1000.0))?;
    Ok(action.with_source(format!("exp(i*{theta}*D)")))
}

/// Orthogonal projection of an operator onto the span of a product basis.
///
/// The basis elements are pairwise Frobenius-orthogonal by construction, so
/// the projection is a per-element inner product. Returns the coefficients
/// and the out-of-span residual norm; used by the Lie-closure sanity checks.
pub fn project_onto_product_basis<T: Scalar>(
    basis: &ProductHamiltonianBasis<T>,
    op: &DenseOperator<T>,
) -> Result<(DVector<T>, T)> {
    let dim = basis.globals()[0].dim();
    if op.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: op.dim(),
        });
    }
    let mut coeffs = DVector::<T>::zeros(basis.len());
    let mut remainder = op.matrix().clone();
    for (a, g) in basis.globals().iter().enumerate() {
        let overlap = g.matrix().dotc(op.matrix()).re;
        let norm_sq = g.matrix().dotc(g.matrix()).re;
        let c = overlap / norm_sq;
        coeffs[a] = c;
        remainder -= g.matrix().map(|e| e * Complex::new(c, T::zero()));
    }
    Ok((coeffs, remainder.norm()))
}
