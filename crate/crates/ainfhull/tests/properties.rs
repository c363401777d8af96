use std::collections::BTreeMap;
use std::sync::Arc;

use ainfhull::ainfty::{compose, AInfMorphism};
use ainfhull::algebras::{catalog, exterior_algebra, truncated_quotient, TensorElement};
use ainfhull::fuzz::{fuzz_case, random_dga};
use ainfhull::graded::{check_retract, cohomology_with_retract};
use ainfhull::hochschild::hochschild_dga;
use ainfhull::linffp::{self, Matrix};
use ainfhull::reconstruct::{reconstruct, ReconstructionOptions};
use proptest::prelude::*;

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (0..PRIMES.len(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(k, r, c)| {
        let p = PRIMES[k];
        proptest::collection::vec(0..p, r * c).prop_map(move |data| Matrix::from_data(p, r, c, data))
    })
}

fn kron(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| linffp::mul(x, y, p))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(8, 8)) {
        let r = m.rref();
        let again = r.r.rref();
        prop_assert_eq!(&again.r, &r.r);
        prop_assert_eq!(again.pivots, r.pivots);
    }

    #[test]
    fn rank_nullity(m in matrix(9, 9)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(m in matrix(7, 7), seed in any::<u64>()) {
        let p = m.p();
        let x0: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 60)) as u32) % p).collect();
        let b = m.mul_vec(&x0);
        let x = m.solve(&b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn axpy_matches_schoolbook(
        k in 0..6usize,
        c in any::<u32>(),
        v in proptest::collection::vec(any::<u32>(), 0..40),
        w in proptest::collection::vec(any::<u32>(), 0..40),
    ) {
        let p = [2, 3, 5, 251, 65521, 65519][k];
        let n = v.len().min(w.len());
        let c = c % p;
        let mut v: Vec<u32> = v[..n].iter().map(|x| x % p).collect();
        let w: Vec<u32> = w[..n].iter().map(|x| x % p).collect();
        let want: Vec<u32> = v.iter().zip(&w).map(|(&x, &y)| ((x as u64 + c as u64 * y as u64) % p as u64) as u32).collect();
        linffp::axpy(&mut v, c, &w, p);
        prop_assert_eq!(v, want);
    }

    #[test]
    fn retracts_of_random_complexes(dga_seed in any::<u64>(), seed in any::<u64>()) {
        let dga = random_dga(dga_seed, 6);
        let c = dga.complex();
        let r = cohomology_with_retract(c, seed);
        let rep = check_retract(&r);
        prop_assert!(rep.passed(), "{:?}", rep.failures());
        for n in c.degrees() {
            let z = c.dim(n) - c.d(n).rank();
            let b = if n > c.lo() { c.d(n - 1).rank() } else { 0 };
            prop_assert_eq!(r.h_dim(n), z - b);
        }
    }

    #[test]
    fn leibniz_on_random_cochains(k in 0..4usize, a_deg in 1..=2i32, xs in any::<u64>()) {
        let (name, p) = [("trunc_poly:3", 3), ("cyclic:4", 2), ("elem_abelian:2", 2), ("cyclic:3", 3)][k];
        let alg = catalog(name, p).unwrap().algebra(p).unwrap();
        let dga = hochschild_dga(&alg, 3);
        let c = dga.complex();
        let mut state = xs;
        let mut next = |n: usize| -> Vec<u32> {
            (0..n).map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % p as u64) as u32
            }).collect()
        };
        let (a, b) = (next(c.dim(a_deg)), next(c.dim(1)));
        let lhs = c.d(a_deg + 1).mul_vec(&kron(&a, &b, p));
        let mut rhs = kron(&c.d(a_deg).mul_vec(&a), &b, p);
        let second = kron(&a, &c.d(1).mul_vec(&b), p);
        linffp::axpy(&mut rhs, linffp::sign(a_deg % 2 == 1, p), &second, p);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strict_composition_is_matrix_product(d in 1..=3usize, k in 0..3usize, s in any::<u64>()) {
        let p = PRIMES[k];
        let e = Arc::new(exterior_algebra(d, p, 3));
        let mut state = s;
        let mut random = |n: usize| -> Matrix {
            let data = (0..n * n).map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % p as u64) as u32
            }).collect();
            Matrix::from_data(p, n, n, data)
        };
        let degrees: Vec<i32> = e.dims().iter().filter(|(_, &n)| n > 0).map(|(&g, _)| g).collect();
        let first: BTreeMap<i32, Matrix> = degrees.iter().map(|&g| (g, random(e.dim(g)))).collect();
        let second: BTreeMap<i32, Matrix> = degrees.iter().map(|&g| (g, random(e.dim(g)))).collect();
        let f = AInfMorphism::strict(e.clone(), e.clone(), &first, 3);
        let g = AInfMorphism::strict(e.clone(), e.clone(), &second, 3);
        let gf = compose(&g, &f);
        for &deg in &degrees {
            prop_assert_eq!(gf.linear(deg), second[&deg].mul(&first[&deg]));
        }
    }

    #[test]
    fn adding_relations_never_grows_the_quotient(
        gens in 1..=3usize,
        k in 0..3usize,
        raw in proptest::collection::vec((proptest::collection::vec(0..3usize, 1..=3), 1..7u32), 1..6),
    ) {
        let p = PRIMES[k];
        let relations: Vec<TensorElement> = raw
            .iter()
            .map(|(w, c)| BTreeMap::from([(w.iter().map(|x| x % gens).collect::<Vec<_>>(), c % p)]))
            .filter(|t: &TensorElement| t.values().any(|&c| c != 0))
            .collect();
        let names: Vec<String> = (1..=gens).map(|i| format!("x{i}")).collect();
        let mut prev = truncated_quotient(p, names.clone(), Vec::new(), 3).weight_dims();
        for n in 1..=relations.len() {
            let dims = truncated_quotient(p, names.clone(), relations[..n].to_vec(), 3).weight_dims();
            prop_assert!(dims.iter().zip(&prev).all(|(a, b)| a <= b), "{:?} then {:?}", prev, dims);
            prev = dims;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_dgas_pass_every_gate(seed in any::<u64>()) {
        let case = fuzz_case(seed, 4);
        prop_assert!(case.failures.is_empty(), "{:?}", case.failures);
    }

    #[test]
    fn any_seed_reconstructs(k in 0..5usize, seed in any::<u64>()) {
        let (name, p) = [("cyclic:4", 2), ("elem_abelian:2", 2), ("trunc_poly:3", 3), ("cyclic:3", 3), ("trunc_poly:4", 2)][k];
        let a = catalog(name, p).unwrap().algebra(p).unwrap();
        let r = reconstruct(&a, &ReconstructionOptions { seed, ..Default::default() }).report;
        prop_assert!(r.isomorphism && r.gates.passed(), "{} seed {}: {:?}", name, seed, r.gates.failures());
        prop_assert_eq!(r.hull_weight_dims.iter().sum::<usize>(), a.dim());
        prop_assert_eq!(r.hull_commutative, a.is_commutative());
    }
}
