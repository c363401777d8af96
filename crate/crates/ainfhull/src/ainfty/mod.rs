//! A-infinity algebras and morphisms, validity through the dual bar
//! criterion, composition and opposites.
//!
//! An operation family `m` determines a derivation `m*` of the completed
//! tensor algebra on the suspended dual `ΣA*`; its weight-`n` part on a
//! generator is the transpose of the bar-form component `b_n`, and the
//! Leibniz extension places the Koszul sign `(-1)^{|ξ_1| + ... + |ξ_r|}`
//! in front of `1^r ⊗ m* ⊗ 1^t`. Hence `(m*)²` on a degree-`k` generator,
//! weight `n`, is the transpose of
//! `Σ_{r+j+t=n} ± b_{r+1+t} ∘ (1^r ⊗ b_j ⊗ 1^t)` landing in degree `k`, and
//! that sum (one block per input degree pattern) is what the checks evaluate.

pub mod block;
pub mod signs;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graded::GradedVectorSpace;
use crate::hochschild::DgAlgebra;
use crate::linffp::{self, Matrix};
use crate::report::Report;
pub use block::{Block, SlotOp};
use signs::{bar_sign, koszul_prefix, map_degree, op_degree, reversal_sign};

pub type Pattern = Vec<i32>;

/// Graded space with operations `m_n` of degree `2 - n`.
///
/// Identities are checked for outputs in `lo..=hi`. `dims` may also hold a
/// degree above `hi` that only serves as a codomain (for a big model whose
/// products are needed one degree past the window).
#[derive(Clone, Debug)]
pub struct AInfAlgebra {
    p: u32,
    lo: i32,
    hi: i32,
    dims: BTreeMap<i32, usize>,
    /// m-form blocks keyed by input degree pattern; absent means zero.
    ops: BTreeMap<Pattern, Block>,
    arity_cap: usize,
}

/// Enumerates degree patterns of length `n` from `degrees` (ascending) whose
/// sum is at most `max_sum`, keeping those accepted by `keep`.
pub fn patterns(degrees: &[i32], n: usize, max_sum: i32, keep: impl Fn(&[i32]) -> bool) -> Vec<Pattern> {
    fn rec(degrees: &[i32], n: usize, max_sum: i32, cur: &mut Vec<i32>, sum: i32, out: &mut Vec<Pattern>, keep: &dyn Fn(&[i32]) -> bool) {
        if cur.len() == n {
            if keep(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let Some(&min) = degrees.first() else { return };
        let remaining = (n - cur.len() - 1) as i32;
        for &d in degrees {
            if sum + d + remaining * min > max_sum {
                break;
            }
            cur.push(d);
            rec(degrees, n, max_sum, cur, sum + d, out, keep);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degrees, n, max_sum, &mut Vec::new(), 0, &mut out, &keep);
    out
}

/// `outer ∘ (1^r ⊗ inner ⊗ 1^t)`, where `outer` reads `outer_dims` and
/// `inner` reads `inner_dims` and feeds slot `r`.
pub fn precompose_block(outer: &Block, outer_dims: &[usize], r: usize, inner: &Block, inner_dims: &[usize]) -> Block {
    match inner {
        Block::Identity { scale, .. } => match outer {
            Block::Dense(_) => outer.scaled(*scale),
            Block::Identity { p, scale: s2, dims } => {
                let mut d = dims.clone();
                d.splice(r..r + 1, inner_dims.iter().copied());
                Block::Identity { p: *p, scale: linffp::mul(*scale, *s2, *p), dims: d }
            }
            Block::Lazy(_) => {
                let mut ops: Vec<Option<SlotOp>> = vec![None; outer_dims.len()];
                ops[r] = Some(SlotOp::new(Matrix::identity(outer.p(), outer_dims[r]).scale(*scale), inner_dims.to_vec()));
                outer.compose(outer_dims, &ops)
            }
        },
        _ => {
            let mut ops: Vec<Option<SlotOp>> = vec![None; outer_dims.len()];
            ops[r] = Some(SlotOp::new(inner.to_dense(), inner_dims.to_vec()));
            outer.compose(outer_dims, &ops)
        }
    }
}

fn sum_blocks(acc: &mut Option<Block>, b: Block) {
    *acc = Some(match acc.take() {
        None => b,
        Some(a) => a.add(&b),
    });
}

impl AInfAlgebra {
    pub fn new(p: u32, lo: i32, hi: i32, dims: BTreeMap<i32, usize>, ops: BTreeMap<Pattern, Block>, arity_cap: usize) -> Self {
        let a = AInfAlgebra { p, lo, hi, dims, ops, arity_cap };
        for (pat, b) in &a.ops {
            let out = op_degree(pat);
            debug_assert_eq!(b.rows(), a.dim(out), "block {pat:?} has wrong row count");
        }
        a
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
    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }
    pub fn dim(&self, d: i32) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }
    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }
    pub fn space(&self) -> GradedVectorSpace {
        GradedVectorSpace { dims: (self.lo..=self.hi).map(|d| (d, self.dim(d))).collect() }
    }
    pub fn ops(&self) -> &BTreeMap<Pattern, Block> {
        &self.ops
    }
    pub fn op(&self, pattern: &[i32]) -> Option<&Block> {
        self.ops.get(pattern)
    }
    pub fn set_op(&mut self, pattern: Pattern, b: Block) {
        self.ops.insert(pattern, b);
    }
    pub fn remove_op(&mut self, pattern: &[i32]) {
        self.ops.remove(pattern);
    }

    /// Degrees with nonzero dimension that can carry inputs (`lo..=hi`).
    pub fn input_degrees(&self) -> Vec<i32> {
        (self.lo..=self.hi).filter(|&d| self.dim(d) > 0).collect()
    }

    /// Degrees that may be the output of an inner operation.
    fn has_degree(&self, d: i32) -> bool {
        self.dim(d) > 0
    }

    pub fn slot_dims(&self, pattern: &[i32]) -> Vec<usize> {
        pattern.iter().map(|&d| self.dim(d)).collect()
    }

    /// Bar-form block `b_n` on the given pattern.
    pub fn bar(&self, pattern: &[i32]) -> Option<Block> {
        let b = self.ops.get(pattern)?;
        Some(if bar_sign(pattern) { b.scaled(self.p - 1) } else { b.clone() })
    }

    /// Evaluates `m_n` on basis vectors given as (degree, vector) pairs.
    pub fn apply(&self, inputs: &[(i32, Vec<u32>)]) -> Option<(i32, Vec<u32>)> {
        let pat: Pattern = inputs.iter().map(|x| x.0).collect();
        let b = self.ops.get(&pat)?;
        let mut t = vec![1 % self.p];
        for (_, v) in inputs {
            t = Matrix::from_col_vecs(self.p, t.len(), &[t]).kron(&Matrix::from_col_vecs(self.p, v.len(), &[v.clone()])).col(0);
        }
        Some((op_degree(&pat), b.apply(&t)))
    }

    pub fn is_minimal(&self) -> bool {
        self.ops.iter().all(|(pat, b)| pat.len() != 1 || b.is_zero())
    }

    /// Minimal with every `m_n`, `n ≥ 3`, zero.
    pub fn is_trivial(&self) -> bool {
        self.is_minimal() && self.ops.iter().all(|(pat, b)| pat.len() < 3 || b.is_zero())
    }

    /// Largest arity with a nonzero operation.
    pub fn top_nonzero_arity(&self) -> usize {
        self.ops.iter().filter(|(_, b)| !b.is_zero()).map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    /// Input patterns of arity `n` whose `shifted` output lands in `lo..=hi`.
    fn patterns_with_output(&self, n: usize, offset: i32) -> Vec<Pattern> {
        let (lo, hi) = (self.lo, self.hi);
        let max_sum = hi - offset + n as i32;
        patterns(&self.input_degrees(), n, max_sum, |pat| {
            let out = pat.iter().sum::<i32>() + offset - n as i32;
            out >= lo && out <= hi && self.dim(out) > 0
        })
    }

    /// `Σ_{r+j+t=n} ± b_{r+1+t} ∘ (1^r ⊗ b_j ⊗ 1^t)` on one input pattern.
    fn stasheff_sum(&self, pat: &[i32]) -> Option<Block> {
        let n = pat.len();
        let mut acc: Option<Block> = None;
        for j in 1..=n {
            for r in 0..=n - j {
                let inner_pat = &pat[r..r + j];
                let Some(inner) = self.bar(inner_pat) else { continue };
                let mid = op_degree(inner_pat);
                if !self.has_degree(mid) {
                    continue;
                }
                let mut outer_pat = pat[..r].to_vec();
                outer_pat.push(mid);
                outer_pat.extend_from_slice(&pat[r + j..]);
                let Some(outer) = self.bar(&outer_pat) else { continue };
                let mut term = precompose_block(&outer, &self.slot_dims(&outer_pat), r, &inner, &self.slot_dims(inner_pat));
                if koszul_prefix(pat, r) {
                    term = term.scaled(self.p - 1);
                }
                sum_blocks(&mut acc, term);
            }
        }
        acc
    }

    /// Per-weight check that the dual bar derivation squares to zero.
    pub fn check_structure(&self, max_weight: usize) -> Report {
        let mut rep = Report::new();
        for n in 1..=max_weight {
            let pats = self.patterns_with_output(n, 3);
            let ok = pats.iter().all(|pat| self.stasheff_sum(pat).is_none_or(|b| b.is_zero()));
            rep.push(format!("weight {n}"), ok);
        }
        rep
    }

    /// Opposite structure: `b^op_n = (-1)^{n+1} · (reversal sign) · b_n ∘ reverse`.
    pub fn opposite(&self) -> AInfAlgebra {
        let p = self.p;
        let mut ops = BTreeMap::new();
        for (pat, b) in &self.ops {
            let n = pat.len();
            let rev: Pattern = pat.iter().rev().copied().collect();
            let m = b.to_dense();
            let dims = self.slot_dims(pat);
            let rev_dims: Vec<usize> = dims.iter().rev().copied().collect();
            let mut out = Matrix::zeros(p, m.rows(), m.cols());
            let mut idx = vec![0usize; n];
            for c in 0..m.cols() {
                // idx enumerates the reversed layout; slot j of the original holds idx[n-1-j]
                let rc = (0..n).fold(0, |acc, j| acc * dims[j] + idx[n - 1 - j]);
                for row in 0..m.rows() {
                    out.set(row, c, m.get(row, rc));
                }
                for k in (0..n).rev() {
                    idx[k] += 1;
                    if idx[k] < rev_dims[k] {
                        break;
                    }
                    idx[k] = 0;
                }
            }
            // convert: m^op = bar_sign(rev) · b^op, b^op = ε · b(reversed), b = bar_sign(pat) · m
            let odd = (n % 2 == 0) ^ reversal_sign(&rev) ^ bar_sign(&rev) ^ bar_sign(pat);
            ops.insert(rev, Block::Dense(if odd { out.neg() } else { out }));
        }
        AInfAlgebra { ops, ..self.clone() }
    }

    /// The same structure with every operation of arity above `n` removed.
    pub fn truncated(&self, n: usize) -> AInfAlgebra {
        let ops = self.ops.iter().filter(|(p, _)| p.len() <= n).map(|(k, v)| (k.clone(), v.clone())).collect();
        AInfAlgebra { ops, arity_cap: n.min(self.arity_cap), ..self.clone() }
    }
}

/// `m_1 = d`, `m_2 = mult`, all higher operations zero.
pub fn from_dga(d: &DgAlgebra, arity_cap: usize) -> AInfAlgebra {
    let c = d.complex();
    let mut dims = BTreeMap::new();
    for n in c.lo()..=c.hi() + 1 {
        dims.insert(n, c.dim(n));
    }
    let mut ops = BTreeMap::new();
    for n in c.degrees() {
        ops.insert(vec![n], Block::Dense(c.d(n).clone()));
    }
    for ((a, b), m) in d.mult_blocks() {
        ops.insert(vec![*a, *b], m.clone());
    }
    AInfAlgebra { p: c.p(), lo: c.lo(), hi: c.hi() + 1, dims, ops, arity_cap }.with_window(c.lo(), c.hi())
}

impl AInfAlgebra {
    /// Restricts the checked window to `lo..=hi`, keeping the stored degrees.
    pub fn with_window(mut self, lo: i32, hi: i32) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }
}

/// A family `f_n` of degree `1 - n` from `source` to `target`.
#[derive(Clone, Debug)]
pub struct AInfMorphism {
    pub source: Arc<AInfAlgebra>,
    pub target: Arc<AInfAlgebra>,
    /// m-form blocks keyed by input pattern; absent means zero.
    pub maps: BTreeMap<Pattern, Block>,
    pub arity_cap: usize,
}

impl AInfMorphism {
    /// Strict morphism with the given degree-wise linear part.
    pub fn strict(source: Arc<AInfAlgebra>, target: Arc<AInfAlgebra>, linear: &BTreeMap<i32, Matrix>, arity_cap: usize) -> Self {
        let maps = linear.iter().map(|(&d, m)| (vec![d], Block::Dense(m.clone()))).collect();
        AInfMorphism { source, target, maps, arity_cap }
    }

    pub fn identity(a: Arc<AInfAlgebra>, arity_cap: usize) -> Self {
        let lin = (a.lo..=a.hi).map(|d| (d, Matrix::identity(a.p, a.dim(d)))).collect();
        Self::strict(a.clone(), a, &lin, arity_cap)
    }

    pub fn map(&self, pattern: &[i32]) -> Option<&Block> {
        self.maps.get(pattern)
    }

    /// Bar-form component `F_n` on the given pattern.
    pub fn bar(&self, pattern: &[i32]) -> Option<Block> {
        let b = self.maps.get(pattern)?;
        Some(if bar_sign(pattern) { b.scaled(self.source.p - 1) } else { b.clone() })
    }

    pub fn linear(&self, d: i32) -> Matrix {
        self.maps
            .get(&vec![d])
            .map(|b| b.to_dense())
            .unwrap_or_else(|| Matrix::zeros(self.source.p, self.target.dim(d), self.source.dim(d)))
    }

    /// Whether every component of arity at least 2 vanishes.
    pub fn is_strict(&self) -> bool {
        self.maps.iter().all(|(p, b)| p.len() < 2 || b.is_zero())
    }

    fn source_patterns(&self, n: usize, offset: i32) -> Vec<Pattern> {
        let t = &self.target;
        let max_sum = t.hi - offset + n as i32;
        patterns(&self.source.input_degrees(), n, max_sum, |pat| {
            let out = pat.iter().sum::<i32>() + offset - n as i32;
            out >= t.lo && out <= t.hi && t.dim(out) > 0
        })
    }

    /// `Σ b_k ∘ (F_{i_1} ⊗ ... ⊗ F_{i_k})` over compositions of the pattern;
    /// `outer` gives the bar-form block of the outer operation.
    fn composite_sum<F>(&self, pat: &[i32], k_min: usize, outer_dims: &dyn Fn(&[i32]) -> Vec<usize>, outer: F) -> Option<Block>
    where
        F: Fn(&[i32]) -> Option<Block>,
    {
        let n = pat.len();
        let mut acc: Option<Block> = None;
        // compositions of n encoded by cut sets
        for mask in 0u64..(1u64 << (n - 1)) {
            let mut parts = Vec::new();
            let mut start = 0;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    parts.push((start, i + 1));
                    start = i + 1;
                }
            }
            parts.push((start, n));
            if parts.len() < k_min {
                continue;
            }
            let outs: Pattern = parts.iter().map(|&(a, b)| map_degree(&pat[a..b])).collect();
            let Some(ob) = outer(&outs) else { continue };
            let mut ops = Vec::with_capacity(parts.len());
            let mut ok = true;
            for &(a, b) in &parts {
                match self.bar(&pat[a..b]) {
                    Some(f) => ops.push(Some(SlotOp::new(f.to_dense(), self.source.slot_dims(&pat[a..b])))),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            sum_blocks(&mut acc, ob.compose(&outer_dims(&outs), &ops));
        }
        acc
    }

    /// Per-weight check that `f` commutes with the dual bar differentials.
    pub fn check(&self, max_weight: usize) -> Report {
        let (s, t) = (&self.source, &self.target);
        let p = s.p;
        let mut rep = Report::new();
        for n in 1..=max_weight {
            let mut ok = true;
            for pat in self.source_patterns(n, 2) {
                // f ∘ (1^r ⊗ b_j ⊗ 1^t)
                let mut lhs: Option<Block> = None;
                for j in 1..=n {
                    for r in 0..=n - j {
                        let inner_pat = &pat[r..r + j];
                        let Some(inner) = s.bar(inner_pat) else { continue };
                        let mid = op_degree(inner_pat);
                        if !s.has_degree(mid) || mid > s.hi {
                            continue;
                        }
                        let mut outer_pat = pat[..r].to_vec();
                        outer_pat.push(mid);
                        outer_pat.extend_from_slice(&pat[r + j..]);
                        let Some(outer) = self.bar(&outer_pat) else { continue };
                        let mut term = precompose_block(&outer, &s.slot_dims(&outer_pat), r, &inner, &s.slot_dims(inner_pat));
                        if koszul_prefix(&pat, r) {
                            term = term.scaled(p - 1);
                        }
                        sum_blocks(&mut lhs, term);
                    }
                }
                let rhs = self.composite_sum(&pat, 1, &|o| t.slot_dims(o), |outs| t.bar(outs));
                let zero = || Matrix::zeros(p, t.dim(map_degree(&pat) + 1), s.slot_dims(&pat).iter().product());
                let l = lhs.map_or_else(zero, |b| b.to_dense());
                let r = rhs.map_or_else(zero, |b| b.to_dense());
                if l != r {
                    ok = false;
                    break;
                }
            }
            rep.push(format!("weight {n}"), ok);
        }
        rep
    }
}

/// `(g ∘ f)_n = Σ g_k ∘ (f_{i_1} ⊗ ... ⊗ f_{i_k})` in bar form (no signs, since
/// bar-form components have degree 0), converted back to m-form.
pub fn compose(g: &AInfMorphism, f: &AInfMorphism) -> AInfMorphism {
    let p = f.source.p;
    let cap = f.arity_cap.min(g.arity_cap);
    let mut maps = BTreeMap::new();
    for n in 1..=cap {
        for pat in f.source_patterns_into(n, &g.target) {
            let sum = f.composite_sum(&pat, 1, &|o| f.target.slot_dims(o), |outs| g.bar(outs));
            if let Some(b) = sum {
                let b = if bar_sign(&pat) { b.scaled(p - 1) } else { b };
                maps.insert(pat, Block::Dense(b.to_dense()));
            }
        }
    }
    AInfMorphism { source: f.source.clone(), target: g.target.clone(), maps, arity_cap: cap }
}

impl AInfMorphism {
    fn source_patterns_into(&self, n: usize, target: &AInfAlgebra) -> Vec<Pattern> {
        let max_sum = target.hi - 1 + n as i32;
        patterns(&self.source.input_degrees(), n, max_sum, |pat| {
            let out = map_degree(pat);
            out >= target.lo && out <= target.hi && target.dim(out) > 0
        })
    }

    /// Whether this is the identity morphism through arity `n`.
    pub fn is_identity_through(&self, n: usize) -> bool {
        let s = &self.source;
        for k in 1..=n {
            for pat in self.source_patterns_into(k, &self.target) {
                let m = self.maps.get(&pat).map(|b| b.to_dense());
                let ok = if k == 1 {
                    m.is_some_and(|m| m.is_identity())
                } else {
                    m.is_none_or(|m| m.is_zero())
                };
                if !ok {
                    return false;
                }
            }
        }
        s.input_degrees().iter().all(|&d| self.maps.contains_key(&vec![d]))
    }
}

#[cfg(test)]
mod tests;
