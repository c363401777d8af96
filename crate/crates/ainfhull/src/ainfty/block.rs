//! Multilinear maps `V_1 ⊗ ... ⊗ V_n → W` stored as matrices whose columns
//! are indexed row-major over the input slots (first slot most significant).

use crate::linffp::{self, Matrix};
use crate::par;

/// A linear map out of a group of tensor slots into one slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotOp {
    pub matrix: Matrix,
    /// Dimensions of the slots the map reads.
    pub source: Vec<usize>,
}

impl SlotOp {
    pub fn new(matrix: Matrix, source: Vec<usize>) -> Self {
        debug_assert_eq!(matrix.cols(), source.iter().product::<usize>());
        SlotOp { matrix, source }
    }

    pub fn single(matrix: Matrix) -> Self {
        let c = matrix.cols();
        SlotOp { matrix, source: vec![c] }
    }

    /// `self ∘ (incoming ops on its source slots)`.
    fn then(&self, incoming: &[Option<SlotOp>]) -> SlotOp {
        if incoming.iter().all(|o| o.is_none()) {
            return self.clone();
        }
        let source = self
            .source
            .iter()
            .zip(incoming)
            .flat_map(|(&d, o)| o.as_ref().map_or_else(|| vec![d], |o| o.source.clone()))
            .collect();
        SlotOp { matrix: apply_ops_dense(&self.matrix, &self.source, incoming), source }
    }
}

/// A multilinear map in one of three representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Dense(Matrix),
    /// `c` times the identity of `V_1 ⊗ ... ⊗ V_n` onto a single space of the
    /// same dimension (concatenation products).
    Identity { p: u32, scale: u32, dims: Vec<usize> },
    /// `Σ c · base ∘ (op_1 ⊗ ... ⊗ op_k)`, evaluated on demand.
    Lazy(Vec<LazyTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazyTerm {
    pub scale: u32,
    pub base: Matrix,
    pub ops: Vec<SlotOp>,
}

/// Column count above which composites are kept lazy.
pub const LAZY_COLUMNS: usize = 1 << 22;

/// `m ∘ (1 ⊗ ... ⊗ op ⊗ ... ⊗ 1)` with `op` feeding slot `slot` of `dims`.
pub fn precompose_dense(m: &Matrix, dims: &[usize], slot: usize, op: &SlotOp) -> Matrix {
    let p = m.p();
    let a: usize = dims[..slot].iter().product();
    let s = dims[slot];
    let b: usize = dims[slot + 1..].iter().product();
    let k: usize = op.source.iter().product();
    assert_eq!(m.cols(), a * s * b, "precompose: column count does not match slots");
    assert_eq!(op.matrix.rows(), s, "precompose: op target does not match slot");
    let rows = m.rows();
    let mut out = Matrix::zeros(p, rows, a * k * b);
    // entries of op, grouped by target coordinate
    let nz: Vec<Vec<(usize, u32)>> = (0..s)
        .map(|si| op.matrix.row(si).iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect())
        .collect();
    let src = m.data();
    par::rows_mut(out.data_mut(), k * b, s * b, |ra, chunk| {
        let (r, ai) = (ra / a, ra % a);
        let base = r * a * s * b + ai * s * b;
        for si in 0..s {
            let mrow = &src[base + si * b..base + (si + 1) * b];
            if mrow.iter().all(|&x| x == 0) {
                continue;
            }
            for &(kj, x) in &nz[si] {
                linffp::axpy(&mut chunk[kj * b..(kj + 1) * b], x, mrow, p);
            }
        }
    });
    out
}

impl Block {
    pub fn dense(m: Matrix) -> Self {
        Block::Dense(m)
    }

    pub fn rows(&self) -> usize {
        match self {
            Block::Dense(m) => m.rows(),
            Block::Identity { dims, .. } => dims.iter().product(),
            Block::Lazy(t) => t.first().map_or(0, |t| t.base.rows()),
        }
    }

    pub fn p(&self) -> u32 {
        match self {
            Block::Dense(m) => m.p(),
            Block::Identity { p, .. } => *p,
            Block::Lazy(t) => t[0].base.p(),
        }
    }

    pub fn scaled(&self, c: u32) -> Block {
        let p = self.p();
        match self {
            Block::Dense(m) => Block::Dense(m.scale(c)),
            Block::Identity { p, scale, dims } => {
                Block::Identity { p: *p, scale: linffp::mul(*scale, c, *p), dims: dims.clone() }
            }
            Block::Lazy(ts) => Block::Lazy(
                ts.iter().map(|t| LazyTerm { scale: linffp::mul(t.scale, c, p), ..t.clone() }).collect(),
            ),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Block::Dense(m) => m.is_zero(),
            Block::Identity { scale, dims, .. } => *scale == 0 || dims.iter().product::<usize>() == 0,
            Block::Lazy(_) => self.to_dense().is_zero(),
        }
    }

    pub fn to_dense(&self) -> Matrix {
        match self {
            Block::Dense(m) => m.clone(),
            Block::Identity { p, scale, dims } => Matrix::identity(*p, dims.iter().product()).scale(*scale),
            Block::Lazy(ts) => {
                let mut acc: Option<Matrix> = None;
                for t in ts {
                    let base_dims: Vec<usize> = t.ops.iter().map(|o| o.matrix.rows()).collect();
                    let all: Vec<Option<SlotOp>> = t.ops.iter().cloned().map(Some).collect();
                    let m = apply_ops_dense(&t.base, &base_dims, &all).scale(t.scale);
                    match acc.as_mut() {
                        Some(a) => a.add_assign(&m),
                        None => acc = Some(m),
                    }
                }
                acc.expect("lazy block has at least one term")
            }
        }
    }

    /// `self ∘ (op_1 ⊗ ... ⊗ op_n)` where `self` reads slots of sizes `dims`
    /// and `None` means the identity on that slot.
    pub fn compose(&self, dims: &[usize], ops: &[Option<SlotOp>]) -> Block {
        assert_eq!(dims.len(), ops.len());
        let new_cols: usize = dims
            .iter()
            .zip(ops)
            .map(|(&d, o)| o.as_ref().map_or(d, |o| o.source.iter().product()))
            .product();
        match self {
            Block::Dense(m) => {
                if new_cols > LAZY_COLUMNS && ops.iter().any(|o| o.is_some()) {
                    let full: Vec<SlotOp> = dims
                        .iter()
                        .zip(ops)
                        .map(|(&d, o)| o.clone().unwrap_or_else(|| SlotOp::single(Matrix::identity(m.p(), d))))
                        .collect();
                    return Block::Lazy(vec![LazyTerm { scale: 1 % m.p(), base: m.clone(), ops: full }]);
                }
                Block::Dense(apply_ops_dense(m, dims, ops))
            }
            Block::Identity { p, scale, dims: idims } => {
                let p = *p;
                if ops.iter().all(|o| o.is_none()) {
                    return self.clone();
                }
                // identity ∘ (⊗ ops) is the Kronecker product of the ops
                let mut acc = Matrix::identity(p, 1);
                for (&d, o) in idims.iter().zip(ops) {
                    let f = o.as_ref().map_or_else(|| Matrix::identity(p, d), |o| o.matrix.clone());
                    acc = acc.kron(&f);
                }
                Block::Dense(acc.scale(*scale))
            }
            Block::Lazy(ts) => Block::Lazy(
                ts.iter()
                    .map(|t| {
                        let mut idx = 0;
                        let ops2 = t
                            .ops
                            .iter()
                            .map(|o| {
                                let incoming = &ops[idx..idx + o.source.len()];
                                idx += o.source.len();
                                o.then(incoming)
                            })
                            .collect();
                        LazyTerm { scale: t.scale, base: t.base.clone(), ops: ops2 }
                    })
                    .collect(),
            ),
        }
    }

    /// Sum of two blocks of the same shape.
    pub fn add(&self, other: &Block) -> Block {
        match (self, other) {
            (Block::Lazy(a), Block::Lazy(b)) => Block::Lazy(a.iter().chain(b).cloned().collect()),
            (Block::Identity { p, scale: s1, dims }, Block::Identity { scale: s2, dims: d2, .. }) if dims == d2 => {
                Block::Identity { p: *p, scale: linffp::add(*s1, *s2, *p), dims: dims.clone() }
            }
            _ => Block::Dense(self.to_dense().add(&other.to_dense())),
        }
    }

    /// Apply to a vector in the (row-major) tensor product of the input slots.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        match self {
            Block::Dense(m) => m.mul_vec(v),
            Block::Identity { p, scale, .. } => v.iter().map(|&x| linffp::mul(x, *scale, *p)).collect(),
            Block::Lazy(_) => self.to_dense().mul_vec(v),
        }
    }
}

/// Applies slot ops one at a time, last slot first so indices stay valid.
pub fn apply_ops_dense(m: &Matrix, dims: &[usize], ops: &[Option<SlotOp>]) -> Matrix {
    let mut cur = m.clone();
    let mut cur_dims: Vec<usize> = dims.to_vec();
    for (slot, o) in ops.iter().enumerate().rev() {
        if let Some(o) = o {
            if o.matrix.cols() == 0 || cur.rows() == 0 {
                let new_cols: usize = cur_dims[..slot].iter().product::<usize>()
                    * o.source.iter().product::<usize>()
                    * cur_dims[slot + 1..].iter().product::<usize>();
                cur = Matrix::zeros(m.p(), cur.rows(), new_cols);
            } else {
                cur = precompose_dense(&cur, &cur_dims, slot, o);
            }
            cur_dims.splice(slot..slot + 1, [o.source.iter().product::<usize>()]);
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precompose_matches_kron() {
        let p = 5;
        let m = Matrix::from_rows(p, &[vec![1, 2, 3, 4, 0, 1], vec![0, 1, 1, 2, 3, 4]]);
        let op = Matrix::from_rows(p, &[vec![1, 2, 0], vec![3, 0, 4], vec![1, 1, 1]]);
        let got = precompose_dense(&m, &[2, 3], 1, &SlotOp::single(op.clone()));
        let want = m.mul(&Matrix::identity(p, 2).kron(&op));
        assert_eq!(got, want);
        let op0 = Matrix::from_rows(p, &[vec![1, 2], vec![0, 3]]);
        let got = precompose_dense(&m, &[2, 3], 0, &SlotOp::single(op0.clone()));
        assert_eq!(got, m.mul(&op0.kron(&Matrix::identity(p, 3))));
    }

    #[test]
    fn lazy_equals_dense() {
        let p = 3;
        let base = Matrix::from_rows(p, &[vec![1, 2, 0, 1]]);
        let a = Matrix::from_rows(p, &[vec![1, 1, 0], vec![0, 2, 1]]);
        let b = Matrix::from_rows(p, &[vec![2, 0], vec![1, 1]]);
        let ops = vec![Some(SlotOp::single(a.clone())), Some(SlotOp::single(b.clone()))];
        let dense = Block::Dense(base.clone()).compose(&[2, 2], &ops);
        let lazy = Block::Lazy(vec![LazyTerm {
            scale: 1,
            base: base.clone(),
            ops: vec![SlotOp::single(Matrix::identity(p, 2)), SlotOp::single(Matrix::identity(p, 2))],
        }])
        .compose(&[2, 2], &ops);
        assert_eq!(dense.to_dense(), lazy.to_dense());
        assert_eq!(dense.to_dense(), base.mul(&a.kron(&b)));
    }

    #[test]
    fn identity_block_composes_to_kron() {
        let p = 7;
        let id = Block::Identity { p, scale: 6, dims: vec![2, 2] };
        let a = Matrix::from_rows(p, &[vec![1, 2, 3], vec![4, 5, 6]]);
        let b = Matrix::from_rows(p, &[vec![1], vec![2]]);
        let got = id.compose(&[2, 2], &[Some(SlotOp::single(a.clone())), Some(SlotOp::single(b.clone()))]);
        assert_eq!(got.to_dense(), a.kron(&b).scale(6));
    }
}
