//! Cross-checks between the two code-space constructions and the structural
//! invariants of every bundled code.

mod common;

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use transversal_core::code_model::{code_space_from_basis, SubsystemLayout};

#[test]
fn all_bundled_codes_satisfy_code_space_invariants() {
    let cases = [
        ("bitflip", common::bitflip().0),
        ("code422", common::code422().0),
        ("fivequbit", common::fivequbit().0),
        ("steane", common::steane().0),
        ("two_blocks_422", common::two_blocks_422().0),
    ];
    for (name, cs) in cases {
        cs.check_invariants()
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        let p = cs.projector().matrix();
        assert!((p * p - p).norm() < 1e-9, "{name}: P^2 != P");
        assert!((p - p.adjoint()).norm() < 1e-9, "{name}: P not Hermitian");
        assert!(
            (cs.basis() * cs.basis().adjoint() - p).norm() < 1e-9,
            "{name}: BB* != P"
        );
        let gram = cs.basis().adjoint() * cs.basis();
        let k = cs.code_dim();
        assert!(
            (gram - nalgebra::DMatrix::<C64>::identity(k, k)).norm() < 1e-9,
            "{name}: basis not orthonormal"
        );
        assert!((p.trace().re - k as f64).abs() < 1e-8, "{name}: tr P != k");
    }
}

#[test]
fn expected_code_dimensions() {
    assert_eq!(common::bitflip().0.code_dim(), 2);
    assert_eq!(common::code422().0.code_dim(), 4);
    assert_eq!(common::fivequbit().0.code_dim(), 2);
    assert_eq!(common::steane().0.code_dim(), 2);
    assert_eq!(common::two_blocks_422().0.code_dim(), 16);
}

/// The code_dim bookkeeping must agree with the numerical rank of P,
/// measured independently through singular values.
#[test]
fn code_dim_matches_numerical_rank_of_projector() {
    for (name, cs) in [
        ("code422", common::code422().0),
        ("fivequbit", common::fivequbit().0),
        ("steane", common::steane().0),
    ] {
        let svd = cs.projector().matrix().clone().svd(false, false);
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > 0.5) // projector singular values are 0 or 1
            .count();
        assert_eq!(rank, cs.code_dim(), "{name}: rank(P) != code_dim");
    }
}

#[test]
fn stabilizer_build_agrees_with_explicit_basis_build() {
    for (name, (cs, layout)) in [
        ("bitflip", common::bitflip()),
        ("code422", common::code422()),
        ("steane", common::steane()),
    ] {
        let vectors: Vec<DVector<C64>> = (0..cs.code_dim())
            .map(|j| cs.basis().column(j).into_owned())
            .collect();
        let rebuilt = code_space_from_basis(&vectors, &layout).unwrap();
        let delta = (cs.projector().matrix() - rebuilt.projector().matrix()).norm();
        assert!(delta < 1e-8, "{name}: projector mismatch {delta}");
    }
}

#[test]
fn generators_fix_every_bundled_code_space() {
    use transversal_core::code_model::PauliString;
    let cases: [(&str, Vec<&str>, _); 4] = [
        ("bitflip", vec!["ZZI", "IZZ"], common::bitflip().0),
        ("code422", vec!["XXXX", "ZZZZ"], common::code422().0),
        (
            "fivequbit",
            vec!["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            common::fivequbit().0,
        ),
        (
            "steane",
            common::STEANE_GENERATORS.to_vec(),
            common::steane().0,
        ),
    ];
    for (name, gens, cs) in cases {
        for g in gens {
            let gm = PauliString::parse(g).unwrap().to_matrix::<f64>();
            let gp = gm.matrix() * cs.projector().matrix();
            assert!(
                (gp - cs.projector().matrix()).norm() < 1e-9,
                "{name}: generator {g} does not fix the code space"
            );
        }
    }
}

#[test]
fn qudit_basis_codes_are_supported() {
    // a qutrit pair: code spanned by (|00> + |11> + |22>)/sqrt(3)
    let layout = SubsystemLayout::from_groupings(vec![3, 3], None, None).unwrap();
    let s = 1.0 / 3.0f64.sqrt();
    let mut v = DVector::from_element(9, C64::new(0.0, 0.0));
    v[0] = C64::new(s, 0.0);
    v[4] = C64::new(s, 0.0);
    v[8] = C64::new(s, 0.0);
    let cs = code_space_from_basis(&[v], &layout).unwrap();
    assert_eq!(cs.code_dim(), 1);
    assert_eq!(cs.dim(), 9);
    cs.check_invariants().unwrap();
}
