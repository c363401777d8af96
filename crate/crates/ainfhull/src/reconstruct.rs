//! Reconstruction of an augmented algebra from the A-infinity structure on
//! its Ext algebra: the map `ρ^u` into the classical hull and its verification.

use serde::Serialize;

use crate::ainfty::{compose, AInfMorphism};
use crate::algebras::{verify_algebra_map, AlgebraMap, AugmentedAlgebra, PresentedAlgebra, TensorElement};
use crate::barcobar::{classical_hull, dual_bar, DualBarDga};
use crate::hochschild::hochschild_dga;
use crate::linffp;
use crate::report::Report;
use crate::transfer::{check_minimal_model, left_inverse, minimal_model_seeded, MinimalModel};

/// Caps for the reconstruction pipeline. Only `H¹`, `H²` and operations
/// landing in `H²` enter the hull, so the degree cap defaults to 2.
#[derive(Clone, Copy, Debug)]
pub struct ReconstructionOptions {
    pub degree_cap: usize,
    /// Defaults to `max(ν, 4)`.
    pub arity_cap: Option<usize>,
    /// Defaults to `ν`.
    pub weight_cap: Option<usize>,
    /// Arity through which `g` is built and checked.
    pub inverse_arity: usize,
    pub seed: u64,
}

impl Default for ReconstructionOptions {
    fn default() -> Self {
        ReconstructionOptions { degree_cap: 2, arity_cap: None, weight_cap: None, inverse_arity: 4, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub p: u32,
    pub dim: usize,
    pub nilpotency_index: usize,
    pub seed: u64,
    pub degree_cap: usize,
    pub arity_cap: usize,
    pub weight_cap: usize,
    pub retract_fingerprint: String,
    /// `dim Ext^n` for `n = 0..=degree_cap`.
    pub ext_dims: Vec<usize>,
    pub hull_weight_dims: Vec<usize>,
    pub hull_generators: Vec<String>,
    pub hull_relations: Vec<String>,
    /// `ρ^u` of each basis element of the algebra, in hull normal form.
    pub rho: Vec<String>,
    pub unit: bool,
    pub multiplicative: bool,
    pub bijective: bool,
    pub isomorphism: bool,
    pub algebra_commutative: bool,
    pub hull_commutative: bool,
    pub gates: Report,
}

/// Everything the pipeline produced, for callers that continue from it.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub model: MinimalModel,
    pub g: AInfMorphism,
    pub dual_bar: DualBarDga,
    pub hull: PresentedAlgebra,
    pub rho: AlgebraMap,
    pub report: ReconstructionReport,
}

/// `ρ^u(x) = ε(x) - Σ_{i ≤ W} (e ↦ F_i(e)(x̄))` as a tensor in the hull generators.
///
/// `F_i` is the bar form of `f_i`. The relation in the dual bar of the cochains
/// coming from the generator dual to `x ⊗ y` reads `ev_{xy} + ev_x ev_y = 0`,
/// so `x ↦ -ev_x` is the multiplicative choice.
pub fn rho_tensor(a: &AugmentedAlgebra, mm: &MinimalModel, weight_cap: usize, x: &[u32]) -> TensorElement {
    let p = a.p();
    let d = mm.model.dim(1);
    let xbar = a.ideal_part(x);
    let mut t = TensorElement::new();
    let e = a.augment(x);
    if e != 0 {
        t.insert(vec![], e);
    }
    for i in 1..=weight_cap {
        let Some(f) = mm.f.bar(&vec![1; i]) else { continue };
        let f = f.to_dense();
        for col in 0..f.cols() {
            let c = (0..f.rows()).fold(0, |acc, k| linffp::sub(acc, linffp::mul(f.get(k, col), xbar[k], p), p));
            if c == 0 {
                continue;
            }
            let mut word = vec![0; i];
            let mut r = col;
            for s in (0..i).rev() {
                word[s] = r % d;
                r /= d;
            }
            t.insert(word, c);
        }
    }
    t
}

/// The algebra map `A → hull` given by `ρ^u` on each basis element.
pub fn rho_u(a: &AugmentedAlgebra, mm: &MinimalModel, hull: &PresentedAlgebra) -> AlgebraMap {
    let target = hull.to_augmented();
    let cols: Vec<Vec<u32>> =
        (0..a.dim()).map(|i| hull.reduce(&rho_tensor(a, mm, hull.weight_cap(), &a.basis_vec(i)))).collect();
    let matrix = linffp::Matrix::from_col_vecs(a.p(), target.dim(), &cols);
    AlgebraMap { source: a.clone(), target, matrix }
}

/// Runs the full pipeline and checks that `ρ^u` is an isomorphism.
pub fn reconstruct(a: &AugmentedAlgebra, opts: &ReconstructionOptions) -> Reconstruction {
    let nu = a.nilpotency_index();
    let n_cap = opts.arity_cap.unwrap_or(nu.max(4));
    let w_cap = opts.weight_cap.unwrap_or(nu);
    let dga = hochschild_dga(a, opts.degree_cap);
    let mm = minimal_model_seeded(&dga, opts.seed, n_cap);
    let mut gates = Report::new();
    gates.extend("model", check_minimal_model(&mm, n_cap));
    let g = left_inverse(&mm, opts.inverse_arity.min(n_cap));
    gates.extend("g", g.check(opts.inverse_arity.min(n_cap)));
    gates.push("g∘f=id", compose(&g, &mm.f).is_identity_through(opts.inverse_arity.min(n_cap)));
    let bar = dual_bar(&mm.model, w_cap);
    gates.extend("dual bar", bar.check());
    let hull = classical_hull(&bar);
    let rho = rho_u(a, &mm, &hull);
    let verdicts = verify_algebra_map(&rho);
    let get = |name: &str| verdicts.checks.iter().any(|c| c.name == name && c.passed);
    let (unit, multiplicative, bijective) = (get("unit"), get("multiplicative"), get("bijective"));
    let mut ext_dims = vec![1];
    ext_dims.extend((1..=opts.degree_cap as i32).map(|n| mm.retract.h_dim(n)));
    let report = ReconstructionReport {
        p: a.p(),
        dim: a.dim(),
        nilpotency_index: nu,
        seed: opts.seed,
        degree_cap: opts.degree_cap,
        arity_cap: n_cap,
        weight_cap: w_cap,
        retract_fingerprint: mm.retract.fingerprint(),
        ext_dims,
        hull_weight_dims: hull.weight_dims(),
        hull_generators: hull.generators().to_vec(),
        hull_relations: hull.relations().iter().map(|r| hull.render(r)).collect(),
        rho: (0..a.dim()).map(|i| hull.render(&hull.lift(&rho.matrix.col(i)))).collect(),
        unit,
        multiplicative,
        bijective,
        isomorphism: unit && multiplicative && bijective,
        algebra_commutative: a.is_commutative(),
        hull_commutative: hull.is_commutative(),
        gates,
    };
    Reconstruction { model: mm, g, dual_bar: bar, hull, rho, report }
}

/// [`reconstruct`] with default caps and the given seed.
pub fn verify_reconstruction(a: &AugmentedAlgebra, seed: u64) -> ReconstructionReport {
    reconstruct(a, &ReconstructionOptions { seed, ..Default::default() }).report
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub seeds: Vec<u64>,
    pub fingerprints: Vec<String>,
    pub all_isomorphic: bool,
    /// The composite `g_j ∘ f_i` between the models of the first seed and
    /// each later one passes the morphism checks and is bijective on `H`.
    pub models_isomorphic: bool,
}

/// Reconstructs with each seed; all hulls must be isomorphic to `a`.
pub fn retract_independence(a: &AugmentedAlgebra, seeds: &[u64]) -> IndependenceReport {
    let runs: Vec<Reconstruction> =
        seeds.iter().map(|&seed| reconstruct(a, &ReconstructionOptions { seed, ..Default::default() })).collect();
    let mut models_isomorphic = true;
    if let Some(first) = runs.first() {
        for other in &runs[1..] {
            let eta = compose(&other.g, &first.model.f);
            let n = other.g.arity_cap;
            let bijective = (1..=other.model.model.hi()).all(|d| {
                let m = eta.linear(d);
                m.rows() == m.cols() && m.rank() == m.rows()
            });
            models_isomorphic &= bijective && eta.check(n).passed();
        }
    }
    IndependenceReport {
        seeds: seeds.to_vec(),
        fingerprints: runs.iter().map(|r| r.report.retract_fingerprint.clone()).collect(),
        all_isomorphic: runs.iter().all(|r| r.report.isomorphism),
        models_isomorphic,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityProbe {
    pub algebra_commutative: bool,
    pub hull_commutative: bool,
    /// Largest arity with a nonzero operation on `H¹`, up to the arity cap.
    pub top_arity: usize,
    pub trivial: bool,
    pub agree: bool,
}

pub fn commutativity_triviality_probe(a: &AugmentedAlgebra) -> CommutativityProbe {
    let r = reconstruct(a, &ReconstructionOptions::default());
    let model = &r.model.model;
    CommutativityProbe {
        algebra_commutative: r.report.algebra_commutative,
        hull_commutative: r.report.hull_commutative,
        top_arity: model.top_nonzero_arity(),
        trivial: model.is_trivial(),
        agree: r.report.algebra_commutative == r.report.hull_commutative,
    }
}

#[cfg(test)]
mod tests;
