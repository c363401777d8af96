use super::*;
use crate::algebras::catalog_group;
use crate::hochschild::hochschild_dga;

fn pair(group: &str, p: u32, sub: &str) -> SubgroupInclusion {
    SubgroupInclusion::catalog(group, p, sub).unwrap()
}

#[test]
fn identity_embedding_restricts_to_identity() {
    let inc = pair("cyclic:4", 2, "gen:1");
    assert_eq!(inc.subgroup.order(), 4);
    let r = restrict_cochains(&ideal_inclusion(&inc.algebra_map(2).unwrap()), 3);
    assert!(r.values().all(|m| m.is_identity()));
}

#[test]
fn c2_in_c4_restriction_has_rank_one_in_degree_one() {
    let inc = pair("cyclic:4", 2, "gen:2");
    let incl = inc.algebra_map(2).unwrap();
    let r = restrict_cochains(&ideal_inclusion(&incl), 3);
    assert_eq!((r[&1].rows(), r[&1].cols(), r[&1].rank()), (1, 3, 1));
    assert!(r[&2].mul_vec(&[0; 9]).iter().all(|&x| x == 0));
    let rep = check_restriction(&r, &hochschild_dga(&incl.target, 2), &hochschild_dga(&incl.source, 2));
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn bad_embeddings_are_rejected() {
    let g = catalog_group("cyclic:4").unwrap();
    let k = catalog_group("cyclic:2").unwrap();
    assert!(SubgroupInclusion::new(g.clone(), k.clone(), vec![0, 1]).is_err());
    assert!(SubgroupInclusion::new(g.clone(), k, vec![0, 0]).is_err());
    assert!(SubgroupInclusion::parse(g.clone(), "gen:9").is_err());
    assert!(SubgroupInclusion::parse(g, "half").is_err());
}

#[test]
fn same_group_same_seed_gives_identity() {
    let inc = pair("cyclic:2", 2, "gen:1");
    let opts = FunctorialityOptions { seed_group: 3, seed_subgroup: 3, ..Default::default() };
    let out = diagram_check(&inc, 2, &opts).unwrap();
    assert!(out.report.passed, "{:?}", out.report.gates.failures());
    assert!(out.eta.is_identity_through(4));
    assert_eq!(out.report.conjugator.as_deref(), Some(&[1, 0][..]));
}

#[test]
fn c2_in_c4() {
    let out = diagram_check(&pair("cyclic:4", 2, "gen:2"), 2, &FunctorialityOptions::default()).unwrap();
    assert!(out.report.passed, "{:?}", out.report.gates.failures());
    assert!(out.report.exact);
}

#[test]
fn first_factor_of_klein_four() {
    // (1,0) has index 2 in the lexicographic product
    let inc = pair("elem_abelian:2", 2, "gen:2");
    assert_eq!(inc.subgroup.order(), 2);
    let out = diagram_check(&inc, 2, &FunctorialityOptions::default()).unwrap();
    assert!(out.report.passed, "{:?}", out.report.gates.failures());
    assert_eq!(out.report.eta_h1.len(), 1);
    assert_eq!(out.report.eta_h1[0].iter().filter(|&&x| x != 0).count(), 1);
}

#[test]
fn conjugator_search_finds_inner_twists() {
    // k[C_2] over F_2 is commutative, so only u with ε(u) ≠ 0 matter and
    // cw = ccw admits u = 1
    let a = group_algebra(&catalog_group("cyclic:2").unwrap(), 2).unwrap();
    let id = Matrix::identity(2, 2);
    assert_eq!(find_conjugator(&a, &a, &id, &id), Some(vec![1, 0]));
    let zero = Matrix::zeros(2, 2, 2);
    assert_eq!(find_conjugator(&a, &a, &id, &zero), None);
}
