use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use num_traits::Float;

use super::{PauliString, SubsystemLayout};
use crate::operator_core::{pivoted_orthonormal_columns, tol_floor, DenseOperator};
use crate::{real, Error, Result, Scalar};

/// A stabilizer code: a qubit layout plus commuting independent generators.
#[derive(Clone, Debug)]
pub struct StabilizerCodeDef {
    pub layout: SubsystemLayout,
    pub generators: Vec<PauliString>,
}

impl StabilizerCodeDef {
    pub fn new(layout: SubsystemLayout, generators: Vec<PauliString>) -> Result<Self> {
        let def = Self { layout, generators };
        def.validate()?;
        Ok(def)
    }

    pub fn validate(&self) -> Result<()> {
        self.layout.validate()?;
        if !self.layout.is_qubit_layout() {
            return Err(Error::validation(
                "stabilizer construction requires qubit subsystems; use an explicit basis for qudits",
            ));
        }
        let n = self.layout.n_subsystems();
        if self.generators.is_empty() {
            return Err(Error::validation(
                "at least one stabilizer generator required",
            ));
        }
        if self.generators.len() > n {
            return Err(Error::validation(format!(
                "{} generators exceed {} qubits",
                self.generators.len(),
                n
            )));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.n() != n {
                return Err(Error::validation(format!(
                    "generator {i} acts on {} qubits, layout has {n}",
                    g.n()
                )));
            }
            for (j, h) in self.generators.iter().enumerate().skip(i + 1) {
                if !g.commutes_with(h) {
                    return Err(Error::validation(format!(
                        "generators {i} ({g}) and {j} ({h}) anticommute"
                    )));
                }
            }
        }
        if !PauliString::independent(&self.generators)? {
            return Err(Error::validation(
                "stabilizer generators are dependent over GF(2)",
            ));
        }
        Ok(())
    }
}

/// The code space of a quantum code: projector `P` onto the logical subspace
/// together with an orthonormal codeword basis `B` (`dim x code_dim`,
/// `B B^dag = P`).
#[derive(Clone, Debug)]
pub struct CodeSpace<T: Scalar> {
    dim: usize,
    code_dim: usize,
    projector: DenseOperator<T>,
    basis: DMatrix<Complex<T>>,
}

impl<T: Scalar> CodeSpace<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn code_dim(&self) -> usize {
        self.code_dim
    }

    pub fn projector(&self) -> &DenseOperator<T> {
        &self.projector
    }

    /// Orthonormal codeword basis, one column per codeword.
    pub fn basis(&self) -> &DMatrix<Complex<T>> {
        &self.basis
    }

    /// Compress a global operator to the code space: `B^dag M B`.
    pub fn logical_matrix(&self, op: &DenseOperator<T>) -> DMatrix<Complex<T>> {
        self.basis.adjoint() * op.matrix() * &self.basis
    }

    /// `‖(I−P) M B‖_F`, which equals `‖(I−P) M P‖_F`.
    ///
    /// The two agree because `(I−P)MP = ((I−P)MB) B^dag` and right
    /// multiplication by `B^dag` (orthonormal rows) preserves the Frobenius
    /// norm; working with the `dim x code_dim` block is much cheaper.
    pub fn off_code_residual(&self, op: &DenseOperator<T>) -> T {
        let mapped = op.matrix() * &self.basis;
        let inside = &self.basis * (self.basis.adjoint() * &mapped);
        (mapped - inside).norm()
    }

    /// Structural invariants: `P` idempotent Hermitian with trace
    /// `code_dim`, `B` orthonormal, and `B B^dag = P`.
    pub fn check_invariants(&self) -> Result<()> {
        let p = self.projector.matrix();
        let proj_tol = tol_floor::<T>(1e-10, 100.0);
        if (p * p - p).norm() > proj_tol {
            return Err(Error::validation("projector is not idempotent"));
        }
        if (p - p.adjoint()).norm() > proj_tol {
            return Err(Error::validation("projector is not Hermitian"));
        }
        let trace_err = Float::abs(p.trace().re - real::<T>(self.code_dim as f64));
        if trace_err > tol_floor::<T>(1e-8, 1000.0) {
            return Err(Error::validation(format!(
                "projector trace deviates from code dimension {}",
                self.code_dim
            )));
        }
        let gram = self.basis.adjoint() * &self.basis;
        if (gram - DMatrix::<Complex<T>>::identity(self.code_dim, self.code_dim)).norm() > proj_tol
        {
            return Err(Error::validation("codeword basis is not orthonormal"));
        }
        if (&self.basis * self.basis.adjoint() - p).norm() > tol_floor::<T>(1e-9, 1000.0) {
            return Err(Error::validation("basis does not span the projector range"));
        }
        Ok(())
    }
}

/// Build the code space of a stabilizer code: `P` is the product of
/// `(I + g)/2` over the generators, the basis comes from deterministic
/// pivoted orthogonalization of `P`'s columns.
pub fn build_code_space<T: Scalar>(def: &StabilizerCodeDef) -> Result<CodeSpace<T>> {
    def.validate()?;
    let n = def.layout.n_subsystems();
    let dim = def.layout.total_dim();
    let code_dim = 1usize << (n - def.generators.len());

    let half = Complex::new(real::<T>(0.5), T::zero());
    let identity = DenseOperator::<T>::identity(dim);
    let mut projector = identity.clone();
    for g in &def.generators {
        let factor = (&identity + &g.to_matrix()).scale(half);
        projector = &projector * &factor;
    }

    let columns =
        pivoted_orthonormal_columns(projector.matrix(), code_dim, Float::sqrt(T::epsilon()))?;
    let basis = DMatrix::from_columns(&columns);

    let cs = CodeSpace {
        dim,
        code_dim,
        projector,
        basis,
    };
    cs.check_invariants()?;
    Ok(cs)
}

/// Build a code space from explicit codeword vectors (any subsystem
/// dimensions, stabilizer structure not required).
///
/// The basis is the sequential orthonormalization of the inputs in the given
/// order; the projector is `B B^dag`. Vectors that are dependent beyond the
/// rank tolerance are rejected.
pub fn code_space_from_basis<T: Scalar>(
    vectors: &[DVector<Complex<T>>],
    layout: &SubsystemLayout,
) -> Result<CodeSpace<T>> {
    layout.validate()?;
    let dim = layout.total_dim();
    if vectors.is_empty() {
        return Err(Error::validation("at least one codeword vector required"));
    }
    if vectors.len() > dim {
        return Err(Error::validation("more codewords than Hilbert dimensions"));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        if v.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::validation(format!(
                "vector {i} has non-finite entries"
            )));
        }
    }

    let rank_tol = tol_floor::<T>(1e-9, 100.0);
    let mut basis_cols: Vec<DVector<Complex<T>>> = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        let original = v.norm();
        if original <= tol_floor::<T>(1e-300, 10.0) {
            return Err(Error::validation(format!("vector {i} is zero")));
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis_cols {
                let overlap = b.dotc(&w);
                w -= b * overlap;
            }
        }
        let remaining = w.norm();
        if remaining < rank_tol * original {
            return Err(Error::validation(format!(
                "vector {i} is linearly dependent on its predecessors"
            )));
        }
        w /= Complex::new(remaining, T::zero());
        basis_cols.push(w);
    }
    let basis = DMatrix::from_columns(&basis_cols);
    let projector = DenseOperator::new(&basis * basis.adjoint())?;

    let cs = CodeSpace {
        dim,
        code_dim: basis_cols.len(),
        projector,
        basis,
    };
    cs.check_invariants()?;
    Ok(cs)
}
