use super::*;
use crate::algebras::{catalog, trunc_poly};

fn alg(name: &str, p: u32) -> AugmentedAlgebra {
    catalog(name, p).unwrap().algebra(p).unwrap()
}

#[test]
fn dual_numbers() {
    let r = verify_reconstruction(&trunc_poly(2, 2).unwrap(), 0);
    assert!(r.isomorphism, "{r:?}");
    assert_eq!(r.hull_weight_dims, vec![1, 1, 0]);
    assert_eq!(r.rho, vec!["1", "x1"]);
}

#[test]
fn cyclic_two_sends_generator_to_one_plus_x() {
    let r = verify_reconstruction(&alg("cyclic:2", 2), 0);
    assert!(r.isomorphism);
    assert_eq!(r.rho, vec!["1", "1 + x1"]);
}

#[test]
fn small_catalog_is_reconstructed() {
    for (name, p) in [("trunc_poly:3", 2), ("trunc_poly:4", 3), ("cyclic:4", 2), ("elem_abelian:2", 2), ("cyclic:3", 3)] {
        let r = verify_reconstruction(&alg(name, p), 0);
        assert!(r.gates.passed(), "{name}: {:?}", r.gates.failures());
        assert!(r.isomorphism, "{name}: {r:?}");
        assert_eq!(r.hull_weight_dims.iter().sum::<usize>(), r.dim);
        assert_eq!(r.algebra_commutative, r.hull_commutative);
    }
}

#[test]
fn seeds_agree() {
    let rep = retract_independence(&alg("cyclic:4", 2), &[0, 5]);
    assert!(rep.all_isomorphic && rep.models_isomorphic);
    assert_ne!(rep.fingerprints[0], rep.fingerprints[1]);
}

#[test]
fn constant_term_is_augmentation() {
    let a = alg("elem_abelian:2", 2);
    let r = reconstruct(&a, &ReconstructionOptions::default());
    for i in 0..a.dim() {
        let t = rho_tensor(&a, &r.model, 3, &a.basis_vec(i));
        assert_eq!(t.get(&vec![]).copied().unwrap_or(0), a.augment(&a.basis_vec(i)));
    }
}
