//! Seeded random dg-algebras concentrated in degrees 1..=3 and the gates
//! every one of them must pass.
//!
//! Only `d_1`, `d_2`, `m(1,1)`, `m(1,2)` and `m(2,1)` can be nonzero. Once
//! `d_2 d_1 = 0` and `m(1,1)` are fixed, associativity on three degree-one
//! elements and the Leibniz rule on two are linear in `m(1,2)` and `m(2,1)`,
//! so a random solution of that system is an exact dga.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ainfty::{compose, Block};
use crate::barcobar::dual_bar;
use crate::graded::{check_retract, CochainComplex};
use crate::hochschild::DgAlgebra;
use crate::linffp::{self, Matrix};
use crate::par;
use crate::report::Report;
use crate::transfer::{check_minimal_model, left_inverse, minimal_model_seeded};

const PRIMES: [u32; 3] = [2, 3, 5];

fn random_matrix(rng: &mut ChaCha8Rng, p: u32, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
    Matrix::from_data(p, rows, cols, data)
}

fn random_combination(rng: &mut ChaCha8Rng, p: u32, base: Vec<u32>, kernel: &[Vec<u32>]) -> Vec<u32> {
    let mut v = base;
    for k in kernel {
        let c = rng.gen_range(0..p);
        linffp::axpy(&mut v, c, k, p);
    }
    v
}

/// A random dga with total dimension between 1 and `max_dim`.
pub fn random_dga(seed: u64, max_dim: usize) -> DgAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    // at least one class in degrees one and two when the budget allows
    let n1 = rng.gen_range(1..=max_dim.min(3));
    let n2 = rng.gen_range(0..=(max_dim - n1).min(3));
    let n3 = rng.gen_range(0..=max_dim - n1 - n2);
    // low rank keeps cohomology in degrees one and two
    let rank = rng.gen_range(0..=n1.min(n2)).min(rng.gen_range(0..=1));
    let d1 = random_matrix(&mut rng, p, n2, rank).mul(&random_matrix(&mut rng, p, rank, n1));
    // d_2 kills the image of d_1
    let left = d1.transpose().kernel_basis().vectors();
    let d2_rows: Vec<Vec<u32>> =
        (0..n3).map(|_| random_combination(&mut rng, p, vec![0; n2], &left)).collect();
    let d2 = Matrix::from_row_vecs(p, n2, &d2_rows);
    loop {
        let m11 = random_matrix(&mut rng, p, n2, n1 * n1);
        if let Some((m21, m12)) = solve_products(&mut rng, p, [n1, n2, n3], &d1, &d2, &m11) {
            return assemble(p, [n1, n2, n3], d1, d2, m11, m21, m12);
        }
        // d_2 m(1,1) = 0 makes the system homogeneous, so zero is a solution
        if rng.gen_bool(0.5) && n3 > 0 {
            let m11 = Matrix::zeros(p, n2, n1 * n1);
            let (m21, m12) = solve_products(&mut rng, p, [n1, n2, n3], &d1, &d2, &m11).expect("homogeneous system");
            return assemble(p, [n1, n2, n3], d1, d2, m11, m21, m12);
        }
    }
}

/// Unknowns: `m(2,1)[r, k·n1 + z]` then `m(1,2)[r, x·n2 + k]`.
fn solve_products(
    rng: &mut ChaCha8Rng,
    p: u32,
    [n1, n2, n3]: [usize; 3],
    d1: &Matrix,
    d2: &Matrix,
    m11: &Matrix,
) -> Option<(Matrix, Matrix)> {
    let block = n2 * n1;
    let unknowns = 2 * n3 * block;
    let u21 = |r: usize, k: usize, z: usize| r * block + k * n1 + z;
    let u12 = |r: usize, x: usize, k: usize| n3 * block + r * block + x * n2 + k;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    for r in 0..n3 {
        // (xy)z = x(yz)
        for x in 0..n1 {
            for y in 0..n1 {
                for z in 0..n1 {
                    let mut row = vec![0; unknowns];
                    for k in 0..n2 {
                        let a = m11.get(k, x * n1 + y);
                        row[u21(r, k, z)] = linffp::add(row[u21(r, k, z)], a, p);
                        let b = m11.get(k, y * n1 + z);
                        row[u12(r, x, k)] = linffp::sub(row[u12(r, x, k)], b, p);
                    }
                    rows.push(row);
                    rhs.push(0);
                }
            }
        }
        // d(xy) = dx·y - x·dy
        for x in 0..n1 {
            for y in 0..n1 {
                let mut row = vec![0; unknowns];
                let mut target = 0;
                for k in 0..n2 {
                    row[u21(r, k, y)] = linffp::add(row[u21(r, k, y)], d1.get(k, x), p);
                    row[u12(r, x, k)] = linffp::sub(row[u12(r, x, k)], d1.get(k, y), p);
                    target = linffp::add(target, linffp::mul(d2.get(r, k), m11.get(k, x * n1 + y), p), p);
                }
                rows.push(row);
                rhs.push(target);
            }
        }
    }
    let (base, kernel) = if unknowns == 0 {
        if rhs.iter().any(|&t| t != 0) {
            return None;
        }
        (Vec::new(), Vec::new())
    } else if rows.is_empty() {
        (vec![0; unknowns], Matrix::zeros(p, 0, unknowns).kernel_basis().vectors())
    } else {
        let a = Matrix::from_row_vecs(p, unknowns, &rows);
        let base = a.solve(&rhs).expect("shapes agree")?;
        (base, a.kernel_basis().vectors())
    };
    let sol = random_combination(rng, p, base, &kernel);
    let m21 = Matrix::from_data(p, n3, block, sol[..n3 * block].to_vec());
    let m12 = Matrix::from_data(p, n3, block, sol[n3 * block..].to_vec());
    Some((m21, m12))
}

fn assemble(p: u32, [n1, n2, n3]: [usize; 3], d1: Matrix, d2: Matrix, m11: Matrix, m21: Matrix, m12: Matrix) -> DgAlgebra {
    let dims = BTreeMap::from([(1, n1), (2, n2), (3, n3), (4, 0)]);
    let d = BTreeMap::from([(1, d1), (2, d2), (3, Matrix::zeros(p, 0, n3))]);
    let complex = CochainComplex::new(p, 1, 3, dims, d).expect("d_2 d_1 = 0 by construction");
    let mut mult = BTreeMap::from([
        ((1, 1), Block::Dense(m11)),
        ((2, 1), Block::Dense(m21)),
        ((1, 2), Block::Dense(m12)),
    ]);
    for (a, b) in [(1, 3), (2, 2), (3, 1)] {
        mult.insert((a, b), Block::Dense(Matrix::zeros(p, 0, [n1, n2, n3][a - 1] * [n1, n2, n3][b - 1])));
    }
    let mult = mult.into_iter().map(|((a, b), m)| ((a as i32, b as i32), m)).collect();
    DgAlgebra::new(complex, mult).expect("product shapes match")
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzCase {
    pub seed: u64,
    pub p: u32,
    pub dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    /// Largest arity with a nonzero transferred operation.
    pub top_arity: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: usize,
    pub arity_cap: usize,
    pub violations: usize,
    /// Instances whose minimal model has an operation of arity at least 3.
    pub higher_operations: usize,
    pub cases: Vec<FuzzCase>,
}

/// Gates on one instance: dga axioms, retract identities, the transfer
/// checks, the left inverse, `g ∘ f = id` and validity of the dual bar.
pub fn fuzz_case(seed: u64, arity_cap: usize) -> FuzzCase {
    let dga = random_dga(seed, 6);
    let mut rep = Report::new();
    rep.extend("dga", dga.check());
    let mm = minimal_model_seeded(&dga, seed, arity_cap);
    rep.extend("retract", check_retract(&mm.retract));
    rep.extend("model", check_minimal_model(&mm, arity_cap));
    let g = left_inverse(&mm, arity_cap);
    rep.extend("g", g.check(arity_cap));
    rep.push("g∘f=id", compose(&g, &mm.f).is_identity_through(arity_cap));
    rep.extend("dual bar", dual_bar(&mm.model, 3).check());
    let c = dga.complex();
    FuzzCase {
        seed,
        p: c.p(),
        dims: c.degrees().map(|n| c.dim(n)).collect(),
        cohomology_dims: c.degrees().map(|n| mm.retract.h_dim(n)).collect(),
        top_arity: mm.model.top_nonzero_arity(),
        failures: rep.failures().into_iter().map(String::from).collect(),
    }
}

/// `count` instances with seeds derived from `seed`.
pub fn fuzz(seed: u64, count: usize, arity_cap: usize) -> FuzzReport {
    let seeds: Vec<u64> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| rng.gen()).collect()
    };
    let cases = par::map_range(count, 1 << 16, |i| fuzz_case(seeds[i], arity_cap));
    FuzzReport {
        seed,
        count,
        arity_cap,
        violations: cases.iter().filter(|c| !c.failures.is_empty()).count(),
        higher_operations: cases.iter().filter(|c| c.top_arity >= 3).count(),
        cases,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_dgas_are_dgas() {
        for seed in 0..40 {
            let d = random_dga(seed, 6);
            let c = d.complex();
            assert!((1..=6).contains(&c.degrees().map(|n| c.dim(n)).sum::<usize>()));
            assert!(d.check().passed(), "seed {seed}: {:?}", d.check().failures());
        }
    }

    #[test]
    fn same_seed_same_dga() {
        let (a, b) = (random_dga(11, 6), random_dga(11, 6));
        assert_eq!(a.complex(), b.complex());
        assert_eq!(a.mult_blocks(), b.mult_blocks());
    }

    #[test]
    fn small_batch_has_no_violations() {
        let r = fuzz(7, 20, 4);
        assert_eq!(r.violations, 0, "{:?}", r.cases.iter().filter(|c| !c.failures.is_empty()).collect::<Vec<_>>());
    }
}
