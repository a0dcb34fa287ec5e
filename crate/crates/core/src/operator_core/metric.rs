use num_complex::Complex;

use super::DenseOperator;
use crate::{Error, Result, Scalar};

/// Minimum Frobenius distance between two unitaries over a global phase:
/// `sqrt(max(0, 2 dim - 2 |tr(U^dag V)|))`.
///
/// Vanishes exactly when `U` and `V` differ by a phase, and satisfies the
/// pseudometric laws (symmetry, triangle inequality) on unitary inputs.
///
/// Evaluated as `‖U − wV‖_F` with the optimal alignment phase
/// `w = conj(tr(U^dag V))/|tr(U^dag V)|`. On unitary inputs this equals the
/// closed form above, but it stays accurate for nearly equal operators,
/// where the cancellation in `2d − 2|tr|` would otherwise bury distances
/// below ~sqrt(dim * epsilon) in rounding noise.
pub fn projective_distance<T: Scalar>(u: &DenseOperator<T>, v: &DenseOperator<T>) -> Result<T> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: v.dim(),
        });
    }
    // tr(U^dag V) as an entrywise conjugated dot product; no product matrix.
    let overlap = u.matrix().dotc(v.matrix());
    let mag = overlap.norm();
    let alignment = if mag > T::zero() {
        overlap.conj() / Complex::new(mag, T::zero())
    } else {
        // |tr| = 0: every phase gives the same distance
        Complex::new(T::one(), T::zero())
    };
    let diff = u.matrix() - v.matrix().map(|e| e * alignment);
    Ok(diff.norm())
}

/// Fix the global phase of `u`: multiply by the unit phase that makes the
/// first row-major entry of magnitude above `tol` real and positive.
///
/// Errors with a degenerate-input report when every entry is at or below
/// `tol`.
pub fn canonical_phase<T: Scalar>(u: &DenseOperator<T>, tol: T) -> Result<DenseOperator<T>> {
    let dim = u.dim();
    for row in 0..dim {
        for col in 0..dim {
            let e = u.entry(row, col);
            let mag = e.norm();
            if mag > tol {
                let phase = e.conj() / Complex::new(mag, T::zero());
                return Ok(u.scale(phase));
            }
        }
    }
    Err(Error::Degenerate(format!(
        "no entry of magnitude above {tol:e} to anchor the phase"
    )))
}
