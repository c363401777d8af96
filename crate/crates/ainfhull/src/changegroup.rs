//! Change of group: restriction of cochains along a subgroup inclusion
//! `K ⊂ G`, the induced A-infinity morphism `η = g_K ∘ restr ∘ f_G` between
//! the minimal models, and the square
//!
//! ```text
//! k[K] ──ρ_K──▶ hull_K
//!   │              │ Θ
//!   ▼              ▼
//! k[G] ──ρ_G──▶ hull_G
//! ```
//!
//! where `Θ` is dual to `η`: the generator dual to `y ∈ H¹(K)` goes to
//! `Σ_w ⟨y*, η(w)⟩ w` over words `w` in the basis of `H¹(G)`. With this
//! choice `Θ ∘ ρ_K` is the reconstruction map of `f_K ∘ η` and no signs enter.
//! The square commutes up to conjugation by a unit of `k[K]`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::ainfty::{compose, AInfMorphism, Block};
use crate::algebras::{
    catalog_group, group_algebra, group_algebra_basis, verify_algebra_map, AlgebraError, AlgebraMap, AugmentedAlgebra,
    FiniteGroupData, PresentedAlgebra, TensorElement,
};
use crate::hochschild::DgAlgebra;
use crate::linffp::{self, Matrix};
use crate::reconstruct::{reconstruct, Reconstruction, ReconstructionOptions};
use crate::report::Report;
use crate::transfer::MinimalModel;

#[derive(Debug, Error)]
pub enum ChangeGroupError {
    #[error("embedding is not an injective homomorphism: {0}")]
    NotAnEmbedding(String),
    #[error("unknown subgroup description {0:?}")]
    UnknownSubgroup(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `K ↪ G`; `embedding[k]` is the image in `G` of element `k` of `K`.
#[derive(Clone, Debug)]
pub struct SubgroupInclusion {
    pub group: FiniteGroupData,
    pub subgroup: FiniteGroupData,
    pub embedding: Vec<usize>,
}

impl SubgroupInclusion {
    pub fn new(group: FiniteGroupData, subgroup: FiniteGroupData, embedding: Vec<usize>) -> Result<Self, ChangeGroupError> {
        let bad = |s: &str| Err(ChangeGroupError::NotAnEmbedding(s.to_string()));
        let n = subgroup.order();
        if embedding.len() != n || embedding.iter().any(|&x| x >= group.order()) {
            return bad("shape");
        }
        let mut seen = vec![false; group.order()];
        for &x in &embedding {
            if std::mem::replace(&mut seen[x], true) {
                return bad("not injective");
            }
        }
        for a in 0..n {
            for b in 0..n {
                if embedding[subgroup.mul(a, b)] != group.mul(embedding[a], embedding[b]) {
                    return bad("not multiplicative");
                }
            }
        }
        Ok(SubgroupInclusion { group, subgroup, embedding })
    }

    /// The subgroup on a closed set of elements of `group`.
    pub fn from_elements(group: FiniteGroupData, elements: &[usize]) -> Result<Self, ChangeGroupError> {
        let subgroup = group.subgroup(elements)?;
        Self::new(group, subgroup, elements.to_vec())
    }

    /// `center` or `gen:i,j,…` (subgroup generated by elements with those indices).
    pub fn parse(group: FiniteGroupData, spec: &str) -> Result<Self, ChangeGroupError> {
        let unknown = || ChangeGroupError::UnknownSubgroup(spec.to_string());
        let elements = match spec.trim() {
            "center" => group.center(),
            s => {
                let list = s.strip_prefix("gen:").ok_or_else(unknown)?;
                let gens: Vec<usize> = list
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().ok().filter(|&i| i < group.order()))
                    .collect::<Option<_>>()
                    .ok_or_else(unknown)?;
                group.generated_subgroup(&gens)
            }
        };
        Self::from_elements(group, &elements)
    }

    /// Catalog group with a subgroup description, as in [`SubgroupInclusion::parse`].
    pub fn catalog(group: &str, p: u32, subgroup: &str) -> Result<Self, ChangeGroupError> {
        let g = match crate::algebras::catalog(group, p)? {
            crate::algebras::CatalogItem::Group(g) => g,
            crate::algebras::CatalogItem::Algebra(_) => catalog_group(group)?,
        };
        Self::parse(g, subgroup)
    }

    /// `k[K] → k[G]` in the group-algebra bases.
    pub fn algebra_map(&self, p: u32) -> Result<AlgebraMap, ChangeGroupError> {
        let source = group_algebra(&self.subgroup, p)?;
        let target = group_algebra(&self.group, p)?;
        let pos_g = position(&group_algebra_basis(&self.group), self.group.order());
        let mut matrix = Matrix::zeros(p, target.dim(), source.dim());
        for (i, &k) in group_algebra_basis(&self.subgroup).iter().enumerate() {
            matrix.set(pos_g[self.embedding[k]], i, 1 % p);
        }
        Ok(AlgebraMap { source, target, matrix })
    }
}

fn position(order: &[usize], n: usize) -> Vec<usize> {
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

/// The inclusion `Ā_K → Ā_G` in ideal coordinates.
pub fn ideal_inclusion(inc: &AlgebraMap) -> Matrix {
    let (s, t) = (&inc.source, &inc.target);
    let cols: Vec<Vec<u32>> = (0..s.ideal_dim())
        .map(|j| {
            let mut e = vec![0; s.ideal_dim()];
            e[j] = 1 % s.p();
            t.ideal_part(&inc.apply(&s.from_ideal_coords(&e)))
        })
        .collect();
    Matrix::from_col_vecs(s.p(), t.ideal_dim(), &cols)
}

/// `C^n(G) → C^n(K)` for `1 ≤ n ≤ top`: precomposition with `Ā_K^{⊗n} ↪ Ā_G^{⊗n}`,
/// which in dual coordinates is `(Jᵀ)^{⊗n}`.
pub fn restrict_cochains(j: &Matrix, top: usize) -> BTreeMap<i32, Matrix> {
    let jt = j.transpose();
    let mut out = BTreeMap::new();
    let mut acc = jt.clone();
    for n in 1..=top {
        if n > 1 {
            acc = acc.kron(&jt);
        }
        out.insert(n as i32, acc.clone());
    }
    out
}

/// Chain-map identities and multiplicativity of the restriction. The cup
/// product of both cochain dgas is concatenation, so multiplicativity is
/// `R^{a+b} = R^a ⊗ R^b` together with unit-scale concatenation blocks.
pub fn check_restriction(r: &BTreeMap<i32, Matrix>, dga_g: &DgAlgebra, dga_k: &DgAlgebra) -> Report {
    let (cg, ck) = (dga_g.complex(), dga_k.complex());
    let mut rep = Report::new();
    for n in cg.degrees() {
        rep.push(format!("chain map[{n}]"), r[&(n + 1)].mul(cg.d(n)) == ck.d(n).mul(&r[&n]));
    }
    let concat = |d: &DgAlgebra, a: i32, b: i32| matches!(d.mult(a, b), Some(Block::Identity { scale: 1, .. }));
    for (&(a, b), _) in dga_g.mult_blocks() {
        let ok = concat(dga_g, a, b) && concat(dga_k, a, b) && r[&(a + b)] == r[&a].kron(&r[&b]);
        rep.push(format!("multiplicative({a},{b})"), ok);
    }
    rep
}

/// `η = g_K ∘ restr ∘ f_G`.
pub fn eta(r: &BTreeMap<i32, Matrix>, mm_g: &MinimalModel, g_k: &AInfMorphism, arity_cap: usize) -> AInfMorphism {
    let strict = AInfMorphism::strict(mm_g.big.clone(), g_k.source.clone(), r, arity_cap);
    compose(g_k, &compose(&strict, &mm_g.f))
}

/// `η_1` on `H¹` computed from cocycles alone: restrict the cocycles
/// representing the basis of `H¹(G)` and express them in the basis of
/// `H¹(K)`. In degree one there are no coboundaries, so this needs no `p_K`.
pub fn h1_restriction(r: &BTreeMap<i32, Matrix>, mm_g: &MinimalModel, mm_k: &MinimalModel) -> Option<Matrix> {
    let restricted = r[&1].mul(mm_g.retract.i(1));
    let ik = mm_k.retract.i(1);
    let cols: Option<Vec<Vec<u32>>> =
        (0..restricted.cols()).map(|c| ik.solve(&restricted.col(c)).ok().flatten()).collect();
    Some(Matrix::from_col_vecs(ik.p(), ik.cols(), &cols?))
}

/// `Θ: hull_K → hull_G` from the degree-one components of `η`.
pub fn hull_map(eta: &AInfMorphism, hull_k: &PresentedAlgebra, hull_g: &PresentedAlgebra) -> AlgebraMap {
    let p = hull_g.p();
    let d_g = eta.source.dim(1);
    let d_k = hull_k.generators().len();
    let mut images = vec![TensorElement::new(); d_k];
    for n in 1..=hull_g.weight_cap() {
        let Some(b) = eta.bar(&vec![1; n]) else { continue };
        let b = b.to_dense();
        for col in 0..b.cols() {
            let mut word = vec![0; n];
            let mut rest = col;
            for s in (0..n).rev() {
                word[s] = rest % d_g;
                rest /= d_g;
            }
            for (j, img) in images.iter_mut().enumerate() {
                let c = b.get(j, col);
                if c != 0 {
                    img.insert(word.clone(), c);
                }
            }
        }
    }
    let cols: Vec<Vec<u32>> = hull_k
        .normal_words()
        .iter()
        .map(|w| {
            let t = w.iter().fold(TensorElement::from([(vec![], 1 % p)]), |acc, &g| hull_g.mul_tensors(&acc, &images[g]));
            hull_g.reduce(&t)
        })
        .collect();
    AlgebraMap {
        source: hull_k.to_augmented(),
        target: hull_g.to_augmented(),
        matrix: Matrix::from_col_vecs(p, hull_g.dim(), &cols),
    }
}

/// A unit `u` of `source` with `cw(u) cw(x) = ccw(x) cw(u)` for every basis
/// element `x`, where `cw` and `ccw` map `source` into the algebra `target`.
/// Normalized to `ε(u) = 1`; `None` when the solution space has no unit.
pub fn find_conjugator(source: &AugmentedAlgebra, target: &AugmentedAlgebra, cw: &Matrix, ccw: &Matrix) -> Option<Vec<u32>> {
    let p = source.p();
    let n = source.dim();
    let mut system: Vec<Vec<u32>> = Vec::new();
    for x in 0..n {
        let (a, b) = (cw.col(x), ccw.col(x));
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let ci = cw.col(i);
                let mut v = target.mul(&ci, &a);
                linffp::axpy(&mut v, p - 1, &target.mul(&b, &ci), p);
                v
            })
            .collect();
        let block = Matrix::from_col_vecs(p, target.dim(), &cols);
        system.extend(block.row_vecs());
    }
    let kernel = Matrix::from_row_vecs(p, n, &system).kernel_basis();
    let u = kernel.vectors().into_iter().find(|v| source.augment(v) != 0)?;
    let inv = linffp::inv(source.augment(&u), p);
    Some(u.iter().map(|&x| linffp::mul(x, inv, p)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorialityReport {
    pub p: u32,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub subgroup_elements: Vec<String>,
    pub seeds: [u64; 2],
    pub arity_cap: usize,
    pub check_weight: usize,
    /// `η_1` on `H¹`, row-major.
    pub eta_h1: Vec<Vec<u32>>,
    pub eta_components: usize,
    /// `Θ` of each hull generator of `K`, in normal form in the hull of `G`.
    pub hull_map: Vec<String>,
    /// Both composites `k[K] → hull_G` on the basis of `k[K]`.
    pub clockwise: Vec<String>,
    pub counterclockwise: Vec<String>,
    pub exact: bool,
    /// Coordinates of the conjugating unit in `k[K]`.
    pub conjugator: Option<Vec<u32>>,
    pub subgroup_commutative: bool,
    pub gates: Report,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Functoriality {
    pub group: Reconstruction,
    pub subgroup: Reconstruction,
    pub restriction: BTreeMap<i32, Matrix>,
    pub eta: AInfMorphism,
    pub hull_map: AlgebraMap,
    pub report: FunctorialityReport,
}

/// Options for [`diagram_check`]; arity defaults to `max(ν_G, 4)`.
#[derive(Clone, Copy, Debug)]
pub struct FunctorialityOptions {
    pub seed_group: u64,
    pub seed_subgroup: u64,
    pub arity_cap: Option<usize>,
    pub check_weight: usize,
}

impl Default for FunctorialityOptions {
    fn default() -> Self {
        FunctorialityOptions { seed_group: 0, seed_subgroup: 1, arity_cap: None, check_weight: 4 }
    }
}

/// Reconstructs both group algebras with independent retracts, builds `η`
/// and `Θ`, and checks the square.
pub fn diagram_check(inc: &SubgroupInclusion, p: u32, opts: &FunctorialityOptions) -> Result<Functoriality, ChangeGroupError> {
    let incl = inc.algebra_map(p)?;
    let (a_g, a_k) = (&incl.target, &incl.source);
    let cap = opts.arity_cap.unwrap_or(a_g.nilpotency_index().max(4));
    let check_weight = opts.check_weight.min(cap);
    let rec_g = reconstruct(a_g, &ReconstructionOptions { arity_cap: Some(cap), seed: opts.seed_group, ..Default::default() });
    let rec_k = reconstruct(
        a_k,
        &ReconstructionOptions { arity_cap: Some(cap), inverse_arity: cap, seed: opts.seed_subgroup, ..Default::default() },
    );
    let mut gates = Report::new();
    gates.push("k[K] → k[G]", verify_algebra_map(&incl).passed());
    gates.push("G reconstructs", rec_g.report.isomorphism && rec_g.report.gates.passed());
    gates.push("K reconstructs", rec_k.report.isomorphism && rec_k.report.gates.passed());

    let (mm_g, mm_k) = (&rec_g.model, &rec_k.model);
    let top = mm_g.big.hi() as usize + 1;
    let r = restrict_cochains(&ideal_inclusion(&incl), top);
    let dga_g = crate::hochschild::hochschild_dga(a_g, top - 1);
    let dga_k = crate::hochschild::hochschild_dga(a_k, top - 1);
    gates.extend("restriction", check_restriction(&r, &dga_g, &dga_k));

    let eta = eta(&r, mm_g, &rec_k.g, cap);
    gates.extend("η", eta.check(check_weight));
    let independent = h1_restriction(&r, mm_g, mm_k);
    gates.push("η_1 = restriction on H¹", independent.as_ref() == Some(&eta.linear(1)));

    let theta = hull_map(&eta, &rec_k.hull, &rec_g.hull);
    let th = verify_algebra_map(&theta);
    gates.extend("Θ", th);

    let cw = theta.matrix.mul(&rec_k.rho.matrix);
    let ccw = rec_g.rho.matrix.mul(&incl.matrix);
    let exact = cw == ccw;
    let target = &theta.target;
    let conjugator = if exact {
        Some(a_k.unit().to_vec())
    } else {
        find_conjugator(a_k, target, &cw, &ccw)
    };
    let commutative = inc.subgroup.is_abelian();
    gates.push("square commutes up to conjugation", conjugator.is_some());
    if commutative {
        gates.push("square commutes exactly", exact);
    }

    let render = |m: &Matrix| -> Vec<String> {
        (0..m.cols()).map(|c| rec_g.hull.render(&rec_g.hull.lift(&m.col(c)))).collect()
    };
    let gens_k = rec_k.hull.normal_words();
    let hull_images = (0..rec_k.hull.generators().len())
        .map(|g| {
            let idx = gens_k.iter().position(|w| w == &[g]).expect("generators are normal words");
            rec_g.hull.render(&rec_g.hull.lift(&theta.matrix.col(idx)))
        })
        .collect();
    let passed = gates.passed();
    let report = FunctorialityReport {
        p,
        group_order: inc.group.order(),
        subgroup_order: inc.subgroup.order(),
        subgroup_elements: inc.embedding.iter().map(|&x| inc.group.names()[x].clone()).collect(),
        seeds: [opts.seed_group, opts.seed_subgroup],
        arity_cap: cap,
        check_weight,
        eta_h1: eta.linear(1).row_vecs(),
        eta_components: eta.maps.len(),
        hull_map: hull_images,
        clockwise: render(&cw),
        counterclockwise: render(&ccw),
        exact,
        conjugator,
        subgroup_commutative: commutative,
        gates,
        passed,
    };
    Ok(Functoriality { group: rec_g, subgroup: rec_k, restriction: r, eta, hull_map: theta, report })
}

#[cfg(test)]
mod tests;
