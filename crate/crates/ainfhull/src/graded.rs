//! Graded vector spaces, cochain complexes and homotopy retracts onto cohomology.
//!
//! A complex is stored on a finite window of degrees `lo..=hi`. The
//! differential out of the top degree is kept as well (its target is the
//! first degree outside the window), so cocycles in degree `hi` are exact
//! and the retract identities hold on the whole window.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linffp::{self, complement, Echelon, Matrix, Subspace};
use crate::report::Report;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedVectorSpace {
    pub dims: BTreeMap<i32, usize>,
}

impl GradedVectorSpace {
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// A degree-`shift` linear map between graded spaces: block `n` maps degree
/// `n` to degree `n + shift` and has shape `target(n+shift) × source(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i32,
    pub blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn new(shift: i32) -> Self {
        GradedMap { shift, blocks: BTreeMap::new() }
    }

    pub fn block(&self, n: i32) -> Option<&Matrix> {
        self.blocks.get(&n)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("block shape mismatch in degree {0}")]
    Shape(i32),
    #[error("d∘d is nonzero out of degree {0}")]
    NotDifferential(i32),
}

/// Cochain complex on the window `lo..=hi`; `d[n]` maps `C^n → C^{n+1}` for
/// every `n` in the window, and `dims` includes degree `hi + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    p: u32,
    lo: i32,
    hi: i32,
    dims: BTreeMap<i32, usize>,
    d: BTreeMap<i32, Matrix>,
}

impl CochainComplex {
    /// `dims` must cover `lo..=hi+1`; `d` must contain a block for each `n` in `lo..=hi`.
    pub fn new(
        p: u32,
        lo: i32,
        hi: i32,
        dims: BTreeMap<i32, usize>,
        d: BTreeMap<i32, Matrix>,
    ) -> Result<Self, ComplexError> {
        let dim = |n: i32| dims.get(&n).copied().unwrap_or(0);
        for n in lo..=hi {
            let m = d.get(&n).ok_or(ComplexError::Shape(n))?;
            if m.rows() != dim(n + 1) || m.cols() != dim(n) {
                return Err(ComplexError::Shape(n));
            }
        }
        let c = CochainComplex { p, lo, hi, dims, d };
        for n in lo..hi {
            if !c.d[&(n + 1)].mul(&c.d[&n]).is_zero() {
                return Err(ComplexError::NotDifferential(n));
            }
        }
        Ok(c)
    }

    /// Complex with zero differential on `lo..=hi` (the degree above is empty).
    pub fn zero_differential(p: u32, dims: BTreeMap<i32, usize>) -> Self {
        let lo = *dims.keys().next().unwrap_or(&0);
        let hi = *dims.keys().next_back().unwrap_or(&0);
        let dim = |n: i32| dims.get(&n).copied().unwrap_or(0);
        let d = (lo..=hi).map(|n| (n, Matrix::zeros(p, dim(n + 1), dim(n)))).collect();
        let mut dims = dims;
        dims.entry(hi + 1).or_insert(0);
        CochainComplex { p, lo, hi, dims, d }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn lo(&self) -> i32 {
        self.lo
    }
    pub fn hi(&self) -> i32 {
        self.hi
    }
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }
    pub fn d(&self, n: i32) -> &Matrix {
        &self.d[&n]
    }
    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }

    pub fn space(&self) -> GradedVectorSpace {
        GradedVectorSpace { dims: self.degrees().map(|n| (n, self.dim(n))).collect() }
    }

    fn identity(&self, n: i32) -> Matrix {
        Matrix::identity(self.p, self.dim(n))
    }
}

/// Deformation retract of a complex onto its cohomology.
#[derive(Clone, Debug)]
pub struct HomotopyRetract {
    pub complex: CochainComplex,
    pub cohomology: GradedVectorSpace,
    /// `i[n]`: `H^n → C^n`.
    pub i: GradedMap,
    /// `p[n]`: `C^n → H^n`.
    pub p: GradedMap,
    /// `h[n]`: `C^n → C^{n-1}`, for `n` in `lo+1..=hi+1`.
    pub h: GradedMap,
}

impl HomotopyRetract {
    pub fn i(&self, n: i32) -> &Matrix {
        &self.i.blocks[&n]
    }
    pub fn p(&self, n: i32) -> &Matrix {
        &self.p.blocks[&n]
    }
    /// `h` out of degree `n`; zero outside the stored range.
    pub fn h(&self, n: i32) -> Matrix {
        self.h.blocks.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.complex.p, self.complex.dim(n - 1), self.complex.dim(n))
        })
    }
    pub fn h_dim(&self, n: i32) -> usize {
        self.cohomology.dim(n)
    }

    /// Short digest of the chosen splitting, for reports.
    pub fn fingerprint(&self) -> String {
        let mut acc: u64 = 0xcbf29ce484222325;
        for m in self.i.blocks.values().chain(self.p.blocks.values()).chain(self.h.blocks.values()) {
            for &x in m.data() {
                acc = (acc ^ x as u64).wrapping_mul(0x100000001b3);
            }
            acc = (acc ^ m.rows() as u64).wrapping_mul(0x100000001b3);
        }
        format!("{acc:016x}")
    }
}

fn random_combination(rng: &mut ChaCha8Rng, p: u32, basis: &Subspace) -> Vec<u32> {
    let mut v = vec![0; basis.ambient_dim()];
    for b in basis.vectors() {
        let c = rng.gen_range(0..p);
        linffp::axpy(&mut v, c, &b, p);
    }
    v
}

/// `d v` for each `v`, using the sparsity of `d`.
fn image_of(d: &Matrix, vecs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let cols = Matrix::from_col_vecs(d.p(), d.cols(), vecs);
    d.mul(&cols).transpose().row_vecs()
}

/// Computes `C^n = B^n ⊕ H̃^n ⊕ L^n` in every degree of the window and the
/// induced retract. Seed 0 uses the canonical complements; any other seed
/// shifts the complement vectors by random coboundaries resp. cocycles.
pub fn cohomology_with_retract(c: &CochainComplex, seed: u64) -> HomotopyRetract {
    let p = c.p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cohom = GradedVectorSpace::default();
    let (mut i_map, mut p_map, mut h_map) = (GradedMap::new(0), GradedMap::new(0), GradedMap::new(-1));

    // L^{n-1} basis (rows) from the previous degree; empty below the window.
    let mut prev_l: Vec<Vec<u32>> = Vec::new();
    // rows of d_hi that raised the rank, in order
    let mut top_rows = Vec::new();
    for n in c.degrees() {
        let dim = c.dim(n);
        let b_vecs: Vec<Vec<u32>> = if n > c.lo {
            let dprev = c.d(n - 1);
            image_of(dprev, &prev_l)
        } else {
            Vec::new()
        };
        let b_space = Subspace::span(p, dim, &b_vecs);
        debug_assert_eq!(b_space.dim(), b_vecs.len());
        let dn = c.d(n);
        let mut ech = Echelon::new(p, dim);
        for row in 0..dn.rows() {
            if ech.insert(dn.row(row).to_vec()).is_some() && n == c.hi {
                top_rows.push(row);
            }
        }
        let z = ech.kernel();
        let full = Subspace::full(p, dim);
        let mut ht = complement(&b_space, &z).expect("coboundaries are cocycles").vectors();
        let mut l = complement(&z, &full).expect("subspace of full space").vectors();
        if seed != 0 {
            for v in ht.iter_mut() {
                let w = random_combination(&mut rng, p, &b_space);
                linffp::axpy(v, 1, &w, p);
            }
            for v in l.iter_mut() {
                let w = random_combination(&mut rng, p, &z);
                linffp::axpy(v, 1, &w, p);
            }
        }
        let (nb, nh) = (b_vecs.len(), ht.len());
        let mut cols = b_vecs.clone();
        cols.extend(ht.iter().cloned());
        cols.extend(l.iter().cloned());
        let m = Matrix::from_col_vecs(p, dim, &cols);
        let minv = m.inverse().expect("B ⊕ H̃ ⊕ L spans C");
        cohom.dims.insert(n, nh);
        i_map.blocks.insert(n, Matrix::from_col_vecs(p, dim, &ht));
        p_map.blocks.insert(n, minv.select_rows(&(nb..nb + nh).collect::<Vec<_>>()));
        if n > c.lo {
            let lprev = Matrix::from_col_vecs(p, c.dim(n - 1), &prev_l);
            h_map.blocks.insert(n, lprev.mul(&minv.select_rows(&(0..nb).collect::<Vec<_>>())));
        }
        prev_l = l;
    }
    // h out of the first degree above the window: B^{hi+1} = d(L^hi) is split
    // off by the first independent coordinates, and h vanishes on the
    // remaining standard basis vectors. Rows of d L^hi are dependent exactly
    // when the same rows of d_hi are, since d_hi kills the cocycles.
    let top = c.hi + 1;
    let rows = top_rows;
    let lprev = Matrix::from_col_vecs(p, c.dim(c.hi), &prev_l);
    assert_eq!(rows.len(), prev_l.len());
    let bp_inv = c.d(c.hi).select_rows(&rows).mul(&lprev).inverse().expect("independent rows");
    let compact = lprev.mul(&bp_inv);
    let mut h_top = Matrix::zeros(p, c.dim(c.hi), c.dim(top));
    for (k, &j) in rows.iter().enumerate() {
        for i in 0..h_top.rows() {
            h_top.set(i, j, compact.get(i, k));
        }
    }
    h_map.blocks.insert(top, h_top);

    let r = HomotopyRetract { complex: c.clone(), cohomology: cohom, i: i_map, p: p_map, h: h_map };
    // large retracts are checked by callers through check_retract
    if cfg!(debug_assertions) && (c.lo()..=c.hi() + 1).map(|n| c.dim(n)).sum::<usize>() <= 4096 {
        assert!(check_retract(&r).passed(), "{:?}", check_retract(&r).failures());
    }
    r
}

/// Verifies every retract identity as an exact matrix equation.
pub fn check_retract(r: &HomotopyRetract) -> Report {
    let c = &r.complex;
    let mut rep = Report::new();
    for n in c.degrees() {
        let i = r.i(n);
        let pm = r.p(n);
        let hn = r.h(n);
        let hn1 = r.h(n + 1);
        let dn = c.d(n);
        rep.push(format!("d∘i=0[{n}]"), dn.mul(i).is_zero());
        if n > c.lo {
            rep.push(format!("p∘d=0[{n}]"), pm.mul(c.d(n - 1)).is_zero());
        }
        rep.push(format!("p∘i=id[{n}]"), pm.mul(i).is_identity());
        let lhs = c.identity(n).sub(&i.mul(pm));
        let mut rhs = hn1.mul(dn);
        if n > c.lo {
            rhs.add_assign(&c.d(n - 1).mul(&hn));
        }
        rep.push(format!("id-ip=dh+hd[{n}]"), lhs == rhs);
        rep.push(format!("h∘i=0[{n}]"), hn.mul(i).is_zero());
        rep.push(format!("p∘h=0[{n}]"), pm.mul(&hn1).is_zero());
        if n > c.lo {
            rep.push(format!("h∘h=0[{n}]"), r.h(n).mul(&hn1).is_zero());
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term() -> CochainComplex {
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 0)]);
        let d = BTreeMap::from([(0, Matrix::identity(2, 1)), (1, Matrix::zeros(2, 0, 1))]);
        CochainComplex::new(2, 0, 1, dims, d).unwrap()
    }

    #[test]
    fn zero_differential_gives_identity_retract() {
        let c = CochainComplex::zero_differential(3, BTreeMap::from([(0, 2), (1, 3)]));
        let r = cohomology_with_retract(&c, 0);
        assert!(check_retract(&r).passed());
        for n in 0..=1 {
            assert!(r.i(n).is_identity() && r.p(n).is_identity());
            assert!(r.h(n).is_zero());
        }
    }

    #[test]
    fn acyclic_two_term() {
        let r = cohomology_with_retract(&two_term(), 0);
        assert_eq!(r.cohomology.total_dim(), 0);
        assert!(r.h(1).is_identity());
        assert!(check_retract(&r).passed());
    }

    #[test]
    fn zeroed_homotopy_is_detected() {
        let mut r = cohomology_with_retract(&two_term(), 0);
        r.h.blocks.clear();
        let rep = check_retract(&r);
        assert!(!rep.passed());
        assert!(rep.failures().iter().any(|f| f.starts_with("id-ip=dh+hd")));
    }

    #[test]
    fn rescaled_inclusion_still_passes() {
        let c = CochainComplex::zero_differential(5, BTreeMap::from([(0, 2)]));
        let mut r = cohomology_with_retract(&c, 0);
        let i = r.i(0).scale(2);
        let pm = r.p(0).scale(3);
        r.i.blocks.insert(0, i);
        r.p.blocks.insert(0, pm);
        assert!(check_retract(&r).passed());
    }

    #[test]
    fn non_differential_rejected() {
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let d = BTreeMap::from([(0, Matrix::identity(2, 1)), (1, Matrix::identity(2, 1))]);
        assert_eq!(CochainComplex::new(2, 0, 1, dims, d), Err(ComplexError::NotDifferential(0)));
    }
}
