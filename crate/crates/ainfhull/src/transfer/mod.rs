//! Homotopy transfer of a dga structure to its cohomology, with the
//! transferred quasi-isomorphism `f` and a left inverse `g`.
//!
//! In bar form, with `b_1 = d` and `b_2` the product:
//! `λ_n = Σ_{i+j=n} b_2 ∘ (F_i ⊗ F_j)`, `F_1 = i`, `F_n = -h λ_n`,
//! `b'_n = p λ_n`. The left inverse is the weight-one part of the perturbed
//! projection on bar constructions, `G_n = -G_{n-1} ∘ δ ∘ H` on weight `n`,
//! where `δ` applies `b_2` to adjacent slots and `H = Σ_j 1^{j-1} ⊗ h ⊗ (ip)^{n-j}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ainfty::signs::{bar_sign, koszul_prefix, map_degree, op_degree};
use crate::ainfty::{from_dga, patterns, precompose_block, AInfAlgebra, AInfMorphism, Block, Pattern, SlotOp};
use crate::graded::{cohomology_with_retract, HomotopyRetract};
use crate::hochschild::DgAlgebra;
use crate::linffp::Matrix;
use crate::report::Report;

/// A minimal model `H` of a dga `C` with the transferred morphism `f: H → C`.
#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub big: Arc<AInfAlgebra>,
    pub retract: HomotopyRetract,
    pub model: Arc<AInfAlgebra>,
    pub f: AInfMorphism,
}

fn to_m_form(pat: &[i32], b: Block) -> Block {
    if bar_sign(pat) {
        let p = b.p();
        b.scaled(p - 1)
    } else {
        b
    }
}

fn cohomology_degrees(r: &HomotopyRetract) -> Vec<i32> {
    let c = &r.complex;
    c.degrees().filter(|&n| r.h_dim(n) > 0).collect()
}

/// Transfers the structure of `dga` along `retract` through arity `arity_cap`.
pub fn minimal_model(dga: &DgAlgebra, retract: HomotopyRetract, arity_cap: usize) -> MinimalModel {
    let c = dga.complex();
    let p = c.p();
    let (lo, hi) = (c.lo(), c.hi());
    let big = Arc::new(from_dga(dga, arity_cap));
    let hdeg = cohomology_degrees(&retract);
    let hdim = |n: i32| retract.h_dim(n);

    let mut fbar: BTreeMap<Pattern, Matrix> = BTreeMap::new();
    let mut ops: BTreeMap<Pattern, Block> = BTreeMap::new();
    for &k in &hdeg {
        fbar.insert(vec![k], retract.i(k).clone());
    }
    for n in 2..=arity_cap {
        // λ_n lands in degree Σ + 2 - n, which must be at most hi + 1
        let pats = patterns(&hdeg, n, hi + 1 - 2 + n as i32, |pat| op_degree(pat) >= lo);
        for pat in pats {
            let out = op_degree(&pat);
            let mut lambda: Option<Matrix> = None;
            for k in 1..n {
                let (l, r) = (&pat[..k], &pat[k..]);
                let (Some(fl), Some(fr)) = (fbar.get(l), fbar.get(r)) else { continue };
                let (dl, dr) = (map_degree(l), map_degree(r));
                let Some(b2) = big.bar(&[dl, dr]) else { continue };
                let term = b2
                    .compose(&[c.dim(dl), c.dim(dr)], &[Some(SlotOp::single(fl.clone())), Some(SlotOp::single(fr.clone()))])
                    .to_dense();
                match lambda.as_mut() {
                    Some(acc) => acc.add_assign(&term),
                    None => lambda = Some(term),
                }
            }
            let Some(lambda) = lambda else { continue };
            if lambda.is_zero() {
                continue;
            }
            let f_n = retract.h(out).mul(&lambda).neg();
            if !f_n.is_zero() {
                fbar.insert(pat.clone(), f_n);
            }
            if out <= hi && hdim(out) > 0 {
                let b = retract.p(out).mul(&lambda);
                if !b.is_zero() {
                    ops.insert(pat.clone(), to_m_form(&pat, Block::Dense(b)));
                }
            }
        }
    }
    let mut dims: BTreeMap<i32, usize> = (lo..=hi).map(|n| (n, hdim(n))).collect();
    dims.insert(hi + 1, 0);
    let model = Arc::new(AInfAlgebra::new(p, lo, hi, dims, ops, arity_cap));
    let maps = fbar.into_iter().map(|(pat, m)| (pat.clone(), to_m_form(&pat, Block::Dense(m)))).collect();
    let f = AInfMorphism { source: model.clone(), target: big.clone(), maps, arity_cap };
    MinimalModel { big, retract, model, f }
}

/// Computes the retract with `seed` and transfers.
pub fn minimal_model_seeded(dga: &DgAlgebra, seed: u64, arity_cap: usize) -> MinimalModel {
    let retract = cohomology_with_retract(dga.complex(), seed);
    minimal_model(dga, retract, arity_cap)
}

/// Left inverse `g: C → H` of the transferred `f`, through arity `arity_cap`.
pub fn left_inverse(mm: &MinimalModel, arity_cap: usize) -> AInfMorphism {
    let big = &mm.big;
    let r = &mm.retract;
    let c = &r.complex;
    let p = c.p();
    let (lo, hi) = (c.lo(), c.hi());
    let cdeg: Vec<i32> = (lo..=hi).filter(|&n| c.dim(n) > 0).collect();
    let hdim = |n: i32| if n >= lo && n <= hi { r.h_dim(n) } else { 0 };
    let ip: BTreeMap<i32, Matrix> = (lo..=hi).map(|n| (n, r.i(n).mul(r.p(n)))).collect();

    let mut gbar: BTreeMap<Pattern, Block> = BTreeMap::new();
    for &k in &cdeg {
        if hdim(k) > 0 {
            gbar.insert(vec![k], Block::Dense(r.p(k).clone()));
        }
    }
    for n in 2..=arity_cap {
        let pats = patterns(&cdeg, n, hi - 1 + n as i32, |pat| hdim(map_degree(pat)) > 0);
        for x in pats {
            let mut acc: Option<Block> = None;
            for j in 0..n {
                if x[j] - 1 < lo || x[j + 1..].iter().any(|&d| hdim(d) == 0) {
                    continue;
                }
                let mut y = x.clone();
                y[j] -= 1;
                let h_sign = koszul_prefix(&x, j);
                let y_dims = big.slot_dims(&y);
                let slot_ops: Vec<Option<SlotOp>> = (0..n)
                    .map(|k| {
                        if k == j {
                            Some(SlotOp::single(r.h(x[j])))
                        } else if k > j {
                            Some(SlotOp::single(ip[&x[k]].clone()))
                        } else {
                            None
                        }
                    })
                    .collect();
                for rr in 0..n - 1 {
                    let pair = [y[rr], y[rr + 1]];
                    let Some(b2) = big.bar(&pair) else { continue };
                    let mut z = y[..rr].to_vec();
                    z.push(pair[0] + pair[1]);
                    z.extend_from_slice(&y[rr + 2..]);
                    let Some(outer) = gbar.get(&z) else { continue };
                    let inner = precompose_block(outer, &big.slot_dims(&z), rr, &b2, &y_dims[rr..rr + 2]);
                    let mut term = inner.compose(&y_dims, &slot_ops);
                    // overall minus, Koszul signs of h and of b_2
                    if !(h_sign ^ koszul_prefix(&y, rr)) {
                        term = term.scaled(p - 1);
                    }
                    acc = Some(match acc.take() {
                        None => term,
                        Some(a) => a.add(&term),
                    });
                }
            }
            if let Some(b) = acc {
                gbar.insert(x, b);
            }
        }
    }
    let maps = gbar.into_iter().map(|(pat, b)| (pat.clone(), to_m_form(&pat, b))).collect();
    AInfMorphism { source: big.clone(), target: mm.model.clone(), maps, arity_cap }
}

/// Validity of the model and of `f` through weight `n`.
pub fn check_minimal_model(mm: &MinimalModel, n: usize) -> Report {
    let mut rep = Report::new();
    rep.push("minimal", mm.model.is_minimal());
    rep.extend("model", mm.model.check_structure(n));
    rep.extend("f", mm.f.check(n));
    rep
}

/// `m_n(α, ..., α)` for a degree-one class `α` given by coordinates, `n ≤ cap`.
pub fn iterated_operation(model: &AInfAlgebra, alpha: &[u32], n: usize) -> Vec<u32> {
    let pat = vec![1; n];
    let Some(b) = model.op(&pat) else {
        return vec![0; model.dim(2)];
    };
    let mut t = vec![1 % model.p()];
    for _ in 0..n {
        t = kron_vec(&t, alpha, model.p());
    }
    b.apply(&t)
}

/// `m_2(x, y)` in the big algebra of a model, given degrees and coordinates.
pub type ProductFn<'a> = dyn Fn(i32, &[u32], i32, &[u32]) -> Option<Vec<u32>> + Sync + 'a;

/// The product stored in the big algebra of `mm`.
pub fn stored_product(mm: &MinimalModel) -> impl Fn(i32, &[u32], i32, &[u32]) -> Option<Vec<u32>> + Sync + '_ {
    move |a, x, b, y| {
        let blk = mm.big.op(&[a, b])?;
        Some(blk.apply(&kron_vec(x, y, mm.big.p())))
    }
}

/// Bar-form `G_n` of the left inverse evaluated on a pure tensor
/// `x_1 ⊗ ... ⊗ x_n` of elements of the big algebra, without building `G_n`.
/// Same recursion and signs as [`left_inverse`].
pub fn left_inverse_on(mm: &MinimalModel, slots: &[(i32, Vec<u32>)], product: &ProductFn) -> Vec<u32> {
    let r = &mm.retract;
    let c = &r.complex;
    let p = c.p();
    let (lo, hi) = (c.lo(), c.hi());
    let hdim = |n: i32| if n >= lo && n <= hi { r.h_dim(n) } else { 0 };
    let x: Vec<i32> = slots.iter().map(|s| s.0).collect();
    let out = map_degree(&x);
    let mut acc = vec![0; hdim(out)];
    if acc.is_empty() || x.iter().any(|&d| d < lo || d > hi) {
        return acc;
    }
    let n = slots.len();
    if n == 1 {
        return r.p(x[0]).mul_vec(&slots[0].1);
    }
    for j in 0..n {
        if x[j] - 1 < lo || x[j + 1..].iter().any(|&d| hdim(d) == 0) {
            continue;
        }
        let hx = r.h(x[j]).mul_vec(&slots[j].1);
        if hx.iter().all(|&v| v == 0) {
            continue;
        }
        let mut y: Vec<(i32, Vec<u32>)> = slots[..j].to_vec();
        y.push((x[j] - 1, hx));
        for s in &slots[j + 1..] {
            y.push((s.0, r.i(s.0).mul_vec(&r.p(s.0).mul_vec(&s.1))));
        }
        let ydeg: Vec<i32> = y.iter().map(|s| s.0).collect();
        let h_sign = koszul_prefix(&x, j);
        for rr in 0..n - 1 {
            let (a, b) = (ydeg[rr], ydeg[rr + 1]);
            let Some(mut prod) = product(a, &y[rr].1, b, &y[rr + 1].1) else { continue };
            if bar_sign(&[a, b]) {
                prod.iter_mut().for_each(|v| *v = crate::linffp::neg(*v, p));
            }
            let mut z = y[..rr].to_vec();
            z.push((a + b, prod));
            z.extend_from_slice(&y[rr + 2..]);
            let sub = left_inverse_on(mm, &z, product);
            let s = if h_sign ^ koszul_prefix(&ydeg, rr) { 1 % p } else { p - 1 };
            crate::linffp::axpy(&mut acc, s, &sub, p);
        }
    }
    acc
}

/// `g ∘ φ` for the left inverse `g` of `mm` and a morphism `φ` into `mm.big`,
/// evaluated on basis tensors of the source of `φ`. Agrees with
/// `compose(&left_inverse(mm, n), φ)` but never materializes `g`.
pub fn compose_with_left_inverse(mm: &MinimalModel, phi: &AInfMorphism, arity_cap: usize, product: &ProductFn) -> AInfMorphism {
    let src = &phi.source;
    let tgt = &mm.model;
    let p = src.p();
    let cap = arity_cap.min(phi.arity_cap);
    let mut maps = BTreeMap::new();
    for n in 1..=cap {
        let pats = patterns(&src.input_degrees(), n, tgt.hi() - 1 + n as i32, |pat| {
            let out = map_degree(pat);
            out >= tgt.lo() && out <= tgt.hi() && tgt.dim(out) > 0
        });
        for pat in pats {
            let dims = src.slot_dims(&pat);
            let cols: usize = dims.iter().product();
            let rows = tgt.dim(map_degree(&pat));
            let mut dense: BTreeMap<(usize, usize), Option<Matrix>> = BTreeMap::new();
            let mut m = Matrix::zeros(p, rows, cols);
            for col in 0..cols {
                let mut idx = vec![0; n];
                let mut rest = col;
                for s in (0..n).rev() {
                    idx[s] = rest % dims[s];
                    rest /= dims[s];
                }
                let mut v = vec![0; rows];
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
                    let mut slots = Vec::with_capacity(parts.len());
                    for &(a, b) in &parts {
                        let f = dense.entry((a, b)).or_insert_with(|| phi.bar(&pat[a..b]).map(|blk| blk.to_dense()));
                        let Some(f) = f else { break };
                        let k = (a..b).fold(0, |acc, s| acc * dims[s] + idx[s]);
                        slots.push((map_degree(&pat[a..b]), f.col(k)));
                    }
                    if slots.len() == parts.len() {
                        crate::linffp::axpy(&mut v, 1 % p, &left_inverse_on(mm, &slots, product), p);
                    }
                }
                for (row, &x) in v.iter().enumerate() {
                    m.set(row, col, x);
                }
            }
            if !m.is_zero() {
                maps.insert(pat.clone(), to_m_form(&pat, Block::Dense(m)));
            }
        }
    }
    AInfMorphism { source: src.clone(), target: tgt.clone(), maps, arity_cap: cap }
}

pub(crate) fn kron_vec(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(crate::linffp::mul(x, y, p));
        }
    }
    out
}
