use std::sync::Arc;

use super::*;
use crate::algebras::{catalog, trunc_poly};
use crate::hochschild::hochschild_dga;

#[test]
fn pattern_enumeration() {
    let all = patterns(&[1, 2, 3], 2, 4, |_| true);
    assert_eq!(all, vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![2, 2], vec![3, 1]]);
    let mixed = patterns(&[-1, 0, 2], 3, 0, |pat| pat.iter().sum::<i32>() == 0);
    assert!(mixed.contains(&vec![-1, -1, 2]) && mixed.contains(&vec![0, 0, 0]));
}

#[test]
fn cochain_dga_is_a_infinity() {
    for (name, p, d) in [("trunc_poly:3", 2, 3), ("cyclic:4", 2, 3), ("elem_abelian:2", 3, 2)] {
        let a = catalog(name, p).unwrap().algebra(p).unwrap();
        let big = from_dga(&hochschild_dga(&a, d), 4);
        assert!(big.check_structure(3).passed(), "{name}");
        assert!(!big.is_minimal());
    }
}

#[test]
fn broken_sign_is_detected() {
    let a = trunc_poly(3, 3).unwrap();
    let mut big = from_dga(&hochschild_dga(&a, 3), 4);
    let m11 = big.op(&[1, 1]).unwrap().scaled(2);
    big.set_op(vec![1, 1], m11);
    assert!(!big.check_structure(3).passed());
}

#[test]
fn opposite_is_an_involution() {
    let a = catalog("cyclic:4", 2).unwrap().algebra(2).unwrap();
    let big = from_dga(&hochschild_dga(&a, 3), 4);
    let op = big.opposite();
    assert!(op.check_structure(3).passed());
    let back = op.opposite();
    for (pat, b) in big.ops() {
        assert_eq!(back.op(pat).unwrap().to_dense(), b.to_dense(), "{pat:?}");
    }
}

#[test]
fn identity_morphisms() {
    let a = trunc_poly(3, 5).unwrap();
    let big = Arc::new(from_dga(&hochschild_dga(&a, 3), 4));
    let id = AInfMorphism::identity(big.clone(), 4);
    assert!(id.check(3).passed());
    let twice = compose(&id, &id);
    assert!(twice.is_identity_through(3));
    assert!(twice.is_strict());
}

#[test]
fn non_chain_map_is_rejected() {
    let a = trunc_poly(3, 3).unwrap();
    let big = Arc::new(from_dga(&hochschild_dga(&a, 2), 4));
    let mut lin = BTreeMap::new();
    for n in 1..=2 {
        lin.insert(n, Matrix::identity(3, big.dim(n)));
    }
    lin.insert(1, Matrix::zeros(3, big.dim(1), big.dim(1)));
    let f = AInfMorphism::strict(big.clone(), big, &lin, 4);
    assert!(!f.check(2).passed());
}
