use super::*;
use crate::algebras::{catalog, exterior_algebra, trunc_poly};
use crate::hochschild::hochschild_dga;
use crate::transfer::minimal_model_seeded;

fn model(name: &str, p: u32, d: usize, n: usize) -> AInfAlgebra {
    let a = catalog(name, p).unwrap().algebra(p).unwrap();
    (*minimal_model_seeded(&hochschild_dga(&a, d), 0, n).model).clone()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn dual_numbers() {
    let m = model("trunc_poly:2", 2, 3, 4);
    let b = dual_bar(&m, 4);
    assert!(b.check().passed());
    // generator dual to y² (index 1) maps to ξ ⊗ ξ
    assert_eq!(b.images[1], TensorSum::from([(vec![0, 0], 1)]));
    let hull = classical_hull(&b);
    assert_eq!(hull.weight_dims(), vec![1, 1, 0, 0, 0]);
}

#[test]
fn cube_truncation_relation_is_cubic() {
    let m = model("trunc_poly:3", 2, 3, 4);
    let b = dual_bar(&m, 3);
    assert_eq!(b.hull_relations(), vec![TensorElement::from([(vec![0, 0, 0], 1)])]);
    assert_eq!(classical_hull(&b).weight_dims(), vec![1, 1, 1, 0]);
}

#[test]
fn exterior_hulls_are_power_series() {
    for p in [2, 3, 5] {
        for d in 1..=3 {
            let e = exterior_algebra(d, p, 3);
            let b = dual_bar(&e, 4);
            assert!(b.check().passed());
            let dims = classical_hull(&b).weight_dims();
            for (w, &dim) in dims.iter().enumerate() {
                assert_eq!(dim, binom(d + w - 1, w), "d={d} w={w} p={p}");
            }
            assert!(quadratic_part_is_alternating(&e, &b).unwrap());
            assert!(classical_hull(&b).is_commutative());
        }
    }
}

#[test]
fn polynomial_ext_is_not_exterior() {
    let m = model("trunc_poly:2", 2, 3, 4);
    let b = dual_bar(&m, 4);
    assert_eq!(quadratic_part_is_alternating(&m, &b), Err(HullError::NotExterior));
}

#[test]
fn dual_bar_detects_invalid_structure() {
    let m = model("cyclic:4", 2, 3, 5);
    assert!(dual_bar(&m, 5).check().passed());
    let mut bad = m.clone();
    bad.remove_op(&[1, 2]);
    assert!(!dual_bar(&bad, 5).check().passed());
}

#[test]
fn hull_ignores_operations_off_degree_one() {
    let m = model("cyclic:4", 2, 3, 4);
    let mut stripped = m.clone();
    let keys: Vec<_> = m.ops().keys().filter(|k| k.iter().any(|&d| d != 1)).cloned().collect();
    for k in keys {
        stripped.remove_op(&k);
    }
    let h1 = classical_hull(&dual_bar(&m, 4));
    let h2 = classical_hull(&dual_bar(&stripped, 4));
    assert_eq!(h1.weight_dims(), h2.weight_dims());
    assert_eq!(h1.relations(), h2.relations());
}

#[test]
fn trivial_field_has_no_generators() {
    let a = trunc_poly(1, 3).unwrap();
    let m = minimal_model_seeded(&hochschild_dga(&a, 2), 0, 4).model;
    let b = dual_bar(&m, 3);
    assert!(b.algebra.generators.is_empty());
    assert_eq!(classical_hull(&b).weight_dims(), vec![1, 0, 0, 0]);
}
