//! The dual bar construction of an A-infinity algebra, truncated by tensor
//! weight, and the classical hull read off from its degree-zero part.
//!
//! The generator dual to a basis vector of `A^n` sits in degree `1 - n`.
//! Generator images are the transposes of the bar-form operations, paired
//! with tensors slot by slot, and `m*` extends to words by the Leibniz rule
//! with sign `(-1)^{|ξ_1| + ... + |ξ_{r}|}` in front of the `(r+1)`-th letter.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::ainfty::signs::op_degree;
use crate::ainfty::{patterns, AInfAlgebra};
use crate::algebras::{truncated_quotient, PresentedAlgebra, TensorElement};
use crate::linffp::{self, Subspace};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HullError {
    #[error("m_2 on degree-one classes is not graded-commutative with vanishing squares")]
    NotExterior,
}

/// Dual of basis vector `index` of `A^{source_degree}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub source_degree: i32,
    pub index: usize,
}

impl Generator {
    pub fn degree(&self) -> i32 {
        1 - self.source_degree
    }
}

/// Words in generator indices, mapped to coefficients.
pub type TensorSum = BTreeMap<Vec<usize>, u32>;

/// The free tensor algebra on graded generators, truncated above a weight.
#[derive(Clone, Debug)]
pub struct TruncatedTensorAlgebra {
    pub p: u32,
    pub generators: Vec<Generator>,
    pub weight_cap: usize,
}

impl TruncatedTensorAlgebra {
    /// Number of words of weight `w`.
    pub fn weight_dim(&self, w: usize) -> usize {
        self.generators.len().pow(w as u32)
    }

    /// Total degree of a word.
    pub fn word_degree(&self, word: &[usize]) -> i32 {
        word.iter().map(|&g| self.generators[g].degree()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct DualBarDga {
    pub algebra: TruncatedTensorAlgebra,
    /// `m*` on each generator, up to the weight cap.
    pub images: Vec<TensorSum>,
}

fn add_term(t: &mut TensorSum, w: Vec<usize>, c: u32, p: u32) {
    if c == 0 {
        return;
    }
    match t.entry(w) {
        Entry::Occupied(mut e) => {
            let v = linffp::add(*e.get(), c, p);
            if v == 0 {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Builds the dual bar construction of `a`, keeping weights up to `weight_cap`
/// (and arities up to the arity cap of `a`).
pub fn dual_bar(a: &AInfAlgebra, weight_cap: usize) -> DualBarDga {
    let p = a.p();
    let degrees = a.input_degrees();
    let mut generators = Vec::new();
    let mut first: BTreeMap<i32, usize> = BTreeMap::new();
    for &n in &degrees {
        first.insert(n, generators.len());
        generators.extend((0..a.dim(n)).map(|index| Generator { source_degree: n, index }));
    }
    let max_n = weight_cap.min(a.arity_cap());
    let mut images = vec![TensorSum::new(); generators.len()];
    for n in 1..=max_n {
        for &target in &degrees {
            for pat in patterns(&degrees, n, target - 2 + n as i32, |pat| op_degree(pat) == target) {
                let Some(b) = a.bar(&pat) else { continue };
                let m = b.to_dense();
                let dims = a.slot_dims(&pat);
                for col in 0..m.cols() {
                    let mut word = vec![0; n];
                    let mut r = col;
                    for s in (0..n).rev() {
                        word[s] = first[&pat[s]] + r % dims[s];
                        r /= dims[s];
                    }
                    for k in 0..m.rows() {
                        let c = m.get(k, col);
                        if c != 0 {
                            add_term(&mut images[first[&target] + k], word.clone(), c, p);
                        }
                    }
                }
            }
        }
    }
    DualBarDga { algebra: TruncatedTensorAlgebra { p, generators, weight_cap }, images }
}

impl DualBarDga {
    pub fn p(&self) -> u32 {
        self.algebra.p
    }

    /// The derivation applied to a tensor, dropping weights above the cap.
    pub fn apply(&self, t: &TensorSum) -> TensorSum {
        let p = self.p();
        let gens = &self.algebra.generators;
        let mut out = TensorSum::new();
        for (word, &c) in t {
            let mut parity = 0i32;
            for r in 0..word.len() {
                for (img, &e) in &self.images[word[r]] {
                    if word.len() - 1 + img.len() > self.algebra.weight_cap {
                        continue;
                    }
                    let mut w = word[..r].to_vec();
                    w.extend_from_slice(img);
                    w.extend_from_slice(&word[r + 1..]);
                    let coeff = linffp::mul(linffp::mul(c, e, p), linffp::sign(parity.rem_euclid(2) == 1, p), p);
                    add_term(&mut out, w, coeff, p);
                }
                parity += gens[word[r]].degree();
            }
        }
        out
    }

    /// `(m*)² = 0` on every generator, weight by weight.
    pub fn check(&self) -> Report {
        let mut rep = Report::new();
        let squares: Vec<TensorSum> = self.images.iter().map(|t| self.apply(t)).collect();
        for w in 1..=self.algebra.weight_cap {
            let ok = squares.iter().all(|s| s.keys().all(|k| k.len() != w));
            rep.push(format!("weight {w}"), ok);
        }
        rep
    }

    /// Indices of the degree-zero generators (duals of degree-one classes).
    pub fn hull_generators(&self) -> Vec<usize> {
        (0..self.algebra.generators.len()).filter(|&g| self.algebra.generators[g].degree() == 0).collect()
    }

    /// Relations `m*(ξ)` for the degree `-1` generators, as tensors in the
    /// degree-zero generators.
    pub fn hull_relations(&self) -> Vec<TensorElement> {
        let gens = self.hull_generators();
        let pos: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        (0..self.algebra.generators.len())
            .filter(|&g| self.algebra.generators[g].degree() == -1)
            .map(|g| {
                self.images[g]
                    .iter()
                    .map(|(w, &c)| (w.iter().map(|x| pos[x]).collect::<Vec<usize>>(), c))
                    .collect()
            })
            .collect()
    }
}

/// `T̂((ΣA¹)*) / (m*((ΣA²)*))`, truncated above the weight cap of `b`.
pub fn classical_hull(b: &DualBarDga) -> PresentedAlgebra {
    let names = (1..=b.hull_generators().len()).map(|i| format!("x{i}")).collect();
    truncated_quotient(b.p(), names, b.hull_relations(), b.algebra.weight_cap)
}

/// Whether the weight-two parts of the hull relations span the alternating
/// tensors `ξ_i ⊗ ξ_j - ξ_j ⊗ ξ_i`, i.e. the image of the dual of
/// `V ⊗ V → Λ²V`. Requires `m_2` on degree-one classes to factor through `Λ²`.
pub fn quadratic_part_is_alternating(a: &AInfAlgebra, b: &DualBarDga) -> Result<bool, HullError> {
    let p = a.p();
    let d = a.dim(1);
    if let Some(m) = a.op(&[1, 1]) {
        let m = m.to_dense();
        for i in 0..d {
            if m.col(i * d + i).iter().any(|&x| x != 0) {
                return Err(HullError::NotExterior);
            }
            for j in 0..d {
                let (u, v) = (m.col(i * d + j), m.col(j * d + i));
                if u.iter().zip(&v).any(|(&x, &y)| linffp::add(x, y, p) != 0) {
                    return Err(HullError::NotExterior);
                }
            }
        }
    }
    let quad: Vec<Vec<u32>> = b
        .hull_relations()
        .iter()
        .map(|r| {
            let mut v = vec![0; d * d];
            for (w, &c) in r {
                if w.len() == 2 {
                    v[w[0] * d + w[1]] = c;
                }
            }
            v
        })
        .collect();
    let mut alt = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![0; d * d];
            v[i * d + j] = 1 % p;
            v[j * d + i] = p - 1;
            alt.push(v);
        }
    }
    Ok(Subspace::span(p, d * d, &quad) == Subspace::span(p, d * d, &alt))
}

#[cfg(test)]
mod tests;
