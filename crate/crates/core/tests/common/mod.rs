//! Shared fixtures for the integration suites: the bundled example codes and
//! seeded random matrix generators.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use transversal_core::code_model::{
    build_code_space, CodeSpace, PauliString, StabilizerCodeDef, SubsystemLayout,
};
use transversal_core::operator_core::DenseOperator;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn stabilizer_code(n: usize, generators: &[&str]) -> (CodeSpace<f64>, SubsystemLayout) {
    let layout = SubsystemLayout::qubits(n).unwrap();
    let def = StabilizerCodeDef::new(
        layout.clone(),
        generators
            .iter()
            .map(|s| PauliString::parse(s).unwrap())
            .collect(),
    )
    .unwrap();
    (build_code_space(&def).unwrap(), layout)
}

pub fn bitflip() -> (CodeSpace<f64>, SubsystemLayout) {
    stabilizer_code(3, &["ZZI", "IZZ"])
}

pub fn code422() -> (CodeSpace<f64>, SubsystemLayout) {
    stabilizer_code(4, &["XXXX", "ZZZZ"])
}

pub fn fivequbit() -> (CodeSpace<f64>, SubsystemLayout) {
    stabilizer_code(5, &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])
}

pub const STEANE_GENERATORS: [&str; 6] = [
    "IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ",
];

pub fn steane() -> (CodeSpace<f64>, SubsystemLayout) {
    stabilizer_code(7, &STEANE_GENERATORS)
}

/// Two independent [[4,2,2]] blocks with pairwise-merged transversal parts
/// of dimension four.
pub fn two_blocks_422() -> (CodeSpace<f64>, SubsystemLayout) {
    let layout = SubsystemLayout::from_groupings(
        vec![2; 8],
        Some(&[vec![0, 1, 2, 3], vec![4, 5, 6, 7]]),
        Some(&[vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]]),
    )
    .unwrap();
    let def = StabilizerCodeDef::new(
        layout.clone(),
        ["XXXXIIII", "ZZZZIIII", "IIIIXXXX", "IIIIZZZZ"]
            .iter()
            .map(|s| PauliString::parse(s).unwrap())
            .collect(),
    )
    .unwrap();
    (build_code_space(&def).unwrap(), layout)
}

/// Haar-ish random unitary: QR of a complex Gaussian matrix with the R
/// diagonal phases absorbed.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> DenseOperator<f64> {
    let gaussian = DMatrix::from_fn(dim, dim, |_, _| C64::new(gauss(rng), gauss(rng)));
    let qr = gaussian.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    DenseOperator::new(q).unwrap()
}

/// Random Hermitian with entries of unit scale.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> DenseOperator<f64> {
    let a = DMatrix::from_fn(dim, dim, |_, _| C64::new(gauss(rng), gauss(rng)));
    let h = (&a + a.adjoint()).map(|e| e * C64::new(0.5, 0.0));
    DenseOperator::new(h).unwrap()
}

pub fn random_complex_vector(dim: usize, rng: &mut ChaCha8Rng) -> DVector<C64> {
    DVector::from_fn(dim, |_, _| C64::new(gauss(rng), gauss(rng)))
}

/// Box-Muller normal deviate; avoids pulling in rand_distr.
fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    (-2.0 * u1.ln()).sqrt() * u2.cos()
}
