//! Normalized Hochschild cochains `C^*(A, k) = Hom(Ā^{⊗*}, k)` with the cup
//! product, and Ext computed from them.
//!
//! Cochains live in degrees `1..=D` (with codomain degree `D + 1`); the
//! ground field in degree 0 carries no differential and is reported
//! separately. A basis cochain is the indicator of a word in the ideal
//! basis, so the cup product is concatenation of words.

use std::collections::BTreeMap;

use crate::ainfty::{Block, SlotOp};
use crate::algebras::AugmentedAlgebra;
use crate::graded::{cohomology_with_retract, CochainComplex, ComplexError, HomotopyRetract};
use crate::linffp::{self, Matrix};
use crate::par;
use crate::report::Report;

/// Words in `Ā^{⊗D+1}` above which the default degree cap stops growing.
pub const DEFAULT_WORD_BUDGET: usize = 5000;

/// A cochain complex with an associative product satisfying Leibniz.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    complex: CochainComplex,
    /// `mult[(a, b)]: C^a ⊗ C^b → C^{a+b}`, for `a + b ≤ hi + 1`.
    mult: BTreeMap<(i32, i32), Block>,
}

impl DgAlgebra {
    pub fn new(complex: CochainComplex, mult: BTreeMap<(i32, i32), Block>) -> Result<Self, ComplexError> {
        for (&(a, b), m) in &mult {
            let cols = complex.dim(a) * complex.dim(b);
            if m.rows() != complex.dim(a + b) || (matches!(m, Block::Dense(_)) && m.to_dense().cols() != cols) {
                return Err(ComplexError::Shape(a + b));
            }
        }
        Ok(DgAlgebra { complex, mult })
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }
    pub fn p(&self) -> u32 {
        self.complex.p()
    }
    pub fn mult(&self, a: i32, b: i32) -> Option<&Block> {
        self.mult.get(&(a, b))
    }
    pub fn mult_blocks(&self) -> &BTreeMap<(i32, i32), Block> {
        &self.mult
    }

    /// Dense product block, zero when absent.
    pub fn mult_dense(&self, a: i32, b: i32) -> Matrix {
        let c = &self.complex;
        self.mult
            .get(&(a, b))
            .map(|m| m.to_dense())
            .unwrap_or_else(|| Matrix::zeros(c.p(), c.dim(a + b), c.dim(a) * c.dim(b)))
    }

    /// Leibniz and associativity wherever every term is stored.
    pub fn check(&self) -> Report {
        let c = &self.complex;
        let p = c.p();
        let (lo, hi) = (c.lo(), c.hi());
        let mut rep = Report::new();
        let id = |n: i32| Matrix::identity(p, c.dim(n));
        for a in lo..=hi {
            for b in lo..=hi {
                if a + b > hi {
                    continue;
                }
                let lhs = c.d(a + b).mul(&self.mult_dense(a, b));
                let mut rhs = self.mult_dense(a + 1, b).mul(&c.d(a).kron(&id(b)));
                let second = self.mult_dense(a, b + 1).mul(&id(a).kron(c.d(b)));
                rhs.add_scaled(linffp::sign(a.rem_euclid(2) == 1, p), &second);
                rep.push(format!("leibniz({a},{b})"), lhs == rhs);
            }
        }
        for a in lo..=hi {
            for b in lo..=hi {
                for e in lo..=hi {
                    if a + b + e > hi + 1 {
                        continue;
                    }
                    let left = self.mult_dense(a + b, e).mul(&self.mult_dense(a, b).kron(&id(e)));
                    let right = self.mult_dense(a, b + e).mul(&id(a).kron(&self.mult_dense(b, e)));
                    rep.push(format!("assoc({a},{b},{e})"), left == right);
                }
            }
        }
        rep
    }
}

/// Number of words `m^n` in `Ā^{⊗n}`, saturating.
fn words(m: usize, n: i32) -> usize {
    (0..n).fold(1usize, |acc, _| acc.saturating_mul(m))
}

/// Largest `D ≤ ν + 1` with at most [`DEFAULT_WORD_BUDGET`] words of length
/// `D + 1`, but never below 2.
pub fn default_degree_cap(a: &AugmentedAlgebra) -> usize {
    let m = a.ideal_dim();
    let top = a.nilpotency_index() + 1;
    let mut d = 2;
    while d < top && words(m, d as i32 + 2) <= DEFAULT_WORD_BUDGET {
        d += 1;
    }
    d
}

/// Differential `C^n → C^{n+1}`:
/// `(dφ)(a_1, ..., a_{n+1}) = Σ_{i=1}^{n} (-1)^i φ(a_1, ..., a_i a_{i+1}, ..., a_{n+1})`.
fn hochschild_d(a: &AugmentedAlgebra, n: i32) -> Matrix {
    let p = a.p();
    let m = a.ideal_dim();
    let (rows, cols) = (words(m, n + 1), words(m, n));
    let mut d = Matrix::zeros(p, rows, cols);
    // nonzero structure constants of Ā, per pair
    let prods: Vec<Vec<(usize, u32)>> = (0..m * m)
        .map(|ij| {
            a.ideal_product(ij / m, ij % m).iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect()
        })
        .collect();
    let n = n as usize;
    par::rows_mut(d.data_mut(), cols, n * m, |row, out| {
        let mut u = vec![0usize; n + 1];
        let mut r = row;
        for slot in (0..=n).rev() {
            u[slot] = r % m;
            r /= m;
        }
        for i in 0..n {
            let s = if i % 2 == 0 { p - 1 } else { 1 % p };
            // prefix u[..i], merged letter, suffix u[i+2..]
            let pre = u[..i].iter().fold(0, |acc, &x| acc * m + x);
            let suf_len = n - 1 - i;
            let suf = u[i + 2..].iter().fold(0, |acc, &x| acc * m + x);
            for &(k, c) in &prods[u[i] * m + u[i + 1]] {
                let col = ((pre * m + k) * words(m, suf_len as i32)) + suf;
                out[col] = linffp::add(out[col], linffp::mul(s, c, p), p);
            }
        }
    });
    d
}

/// The cochain dga on the window `1..=max_degree`.
pub fn hochschild_dga(a: &AugmentedAlgebra, max_degree: usize) -> DgAlgebra {
    let p = a.p();
    let m = a.ideal_dim();
    let hi = max_degree as i32;
    let dims: BTreeMap<i32, usize> = (1..=hi + 1).map(|n| (n, words(m, n))).collect();
    let d = (1..=hi).map(|n| (n, hochschild_d(a, n))).collect();
    let complex = CochainComplex::new(p, 1, hi, dims, d).expect("Hochschild differential squares to zero");
    let mut mult = BTreeMap::new();
    for x in 1..=hi {
        for y in 1..=hi + 1 - x {
            mult.insert((x, y), Block::Identity { p, scale: 1 % p, dims: vec![words(m, x), words(m, y)] });
        }
    }
    DgAlgebra { complex, mult }
}

/// Ext over `k` with the chosen retract and the induced product.
#[derive(Clone, Debug)]
pub struct ExtAlgebra {
    pub dga: DgAlgebra,
    pub retract: HomotopyRetract,
    /// `dims[n] = dim Ext^n` for `n` in `0..=D` (`dims[0] = 1`).
    pub dims: Vec<usize>,
    /// `products[(a, b)]: H^a ⊗ H^b → H^{a+b}` for positive `a`, `b` with `a + b ≤ D`.
    pub products: BTreeMap<(i32, i32), Matrix>,
}

pub fn ext_algebra(a: &AugmentedAlgebra, max_degree: usize, seed: u64) -> ExtAlgebra {
    let dga = hochschild_dga(a, max_degree);
    let retract = cohomology_with_retract(dga.complex(), seed);
    let hi = max_degree as i32;
    let mut dims = vec![1];
    dims.extend((1..=hi).map(|n| retract.h_dim(n)));
    let mut products = BTreeMap::new();
    for x in 1..=hi {
        for y in 1..=hi - x {
            let m = dga.mult(x, y).expect("cup product stored");
            let dims_xy = [dga.complex().dim(x), dga.complex().dim(y)];
            let ops = [Some(SlotOp::single(retract.i(x).clone())), Some(SlotOp::single(retract.i(y).clone()))];
            let prod = retract.p(x + y).mul(&m.compose(&dims_xy, &ops).to_dense());
            products.insert((x, y), prod);
        }
    }
    ExtAlgebra { dga, retract, dims, products }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{catalog, trunc_poly};

    #[test]
    fn dual_numbers_have_zero_differential() {
        let a = trunc_poly(2, 2).unwrap();
        let e = ext_algebra(&a, 4, 0);
        assert_eq!(e.dims, vec![1, 1, 1, 1, 1]);
        for n in 1..=4 {
            assert!(e.dga.complex().d(n).is_zero());
        }
        // polynomial on a degree-one class
        assert_eq!(e.products[&(1, 1)].get(0, 0), 1);
    }

    #[test]
    fn cube_truncation() {
        let a = trunc_poly(3, 2).unwrap();
        let e = ext_algebra(&a, 3, 0);
        assert_eq!(e.dims, vec![1, 1, 1, 1]);
        // α² is a coboundary: (dφ)(x, x) = φ(x²)
        assert!(e.products[&(1, 1)].is_zero());
        assert!(e.dga.check().passed());
    }

    #[test]
    fn first_ext_counts_generators() {
        for (name, p, gens) in [("elem_abelian:2", 2, 2), ("cyclic:4", 2, 1), ("elem_abelian:2", 3, 2)] {
            let a = catalog(name, p).unwrap().algebra(p).unwrap();
            let e = ext_algebra(&a, 2, 0);
            assert_eq!(e.dims[1], gens, "{name} over F_{p}");
        }
    }

    #[test]
    fn default_caps() {
        let cap = |name: &str, p: u32| default_degree_cap(&catalog(name, p).unwrap().algebra(p).unwrap());
        assert_eq!(cap("heisenberg", 3), 2);
        assert_eq!(cap("cyclic:9", 3), 3);
        assert_eq!(cap("elem_abelian:2", 3), 3);
        assert_eq!(cap("cyclic:4", 2), 5);
        assert_eq!(cap("elem_abelian:2", 2), 4);
        assert_eq!(cap("trunc_poly:2", 2), 3);
    }
}
