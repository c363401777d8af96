//! Operations on `m_n(α, ..., α)` recomputed by summing over planar binary
//! trees, independently of the transfer code. Only the retract and the cup
//! product (concatenation of cochains) are taken from the library.

use ainfhull::graded::HomotopyRetract;
use ainfhull::linffp::Matrix;

#[derive(Clone, Debug)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

/// Every planar binary tree with `n` leaves.
pub fn trees(n: usize) -> Vec<Tree> {
    if n == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for s in 1..n {
        for l in trees(s) {
            for r in trees(n - s) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

fn neg(v: &[u32], p: u32) -> Vec<u32> {
    v.iter().map(|&x| (p - x) % p).collect()
}

fn kron(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let a = Matrix::from_data(p, a.len(), 1, a.to_vec());
    let b = Matrix::from_data(p, b.len(), 1, b.to_vec());
    a.kron(&b).col(0)
}

/// The degree-two cochain of a tree whose leaves all carry the degree-one
/// cochain `x`. A node with `s` leaves on the left and `t` on the right
/// contributes `(-1)^(s+1) (h t_L) ∪ (h t_R)`, times the Koszul sign
/// `(-1)^(s(t+1))` of moving `h t_R` (degree `1 - t`) past the `s` left
/// inputs. `h` applied to a leaf means `-x`.
pub fn eval(t: &Tree, x: &[u32], r: &HomotopyRetract, p: u32) -> Vec<u32> {
    let Tree::Node(l, rt) = t else { panic!("a leaf has no value in degree two") };
    let arm = |u: &Tree| match u {
        Tree::Leaf => neg(x, p),
        node => r.h(2).mul_vec(&eval(node, x, r, p)),
    };
    let v = kron(&arm(l), &arm(rt), p);
    let (s, t) = (l.leaves(), rt.leaves());
    if (s + 1 + s * (t + 1)) % 2 == 1 {
        neg(&v, p)
    } else {
        v
    }
}

/// `p(Σ_T λ_T)` over all trees with `n` leaves, in coordinates of `H²`.
pub fn iterated_by_trees(n: usize, alpha: &[u32], r: &HomotopyRetract, p: u32) -> Vec<u32> {
    let x = r.i(1).mul_vec(alpha);
    let mut sum = vec![0; r.complex.dim(2)];
    for t in trees(n) {
        for (s, v) in sum.iter_mut().zip(eval(&t, &x, r, p)) {
            *s = (*s + v) % p;
        }
    }
    r.p(2).mul_vec(&sum)
}
