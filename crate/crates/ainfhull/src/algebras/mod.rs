//! Finite-dimensional augmented local algebras over F_p.

mod catalog;
mod exterior;
mod group;
mod presented;

pub use catalog::{catalog, catalog_group, CatalogItem};
pub use exterior::exterior_algebra;
pub use group::{group_algebra, group_algebra_basis, FiniteGroupData, GroupJson};
pub use presented::{render_tensor, truncated_quotient, PresentedAlgebra, TensorElement};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linffp::{self, Matrix, Subspace};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] linffp::LinAlgError),
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    Unit(usize),
    #[error("augmentation is not an algebra map")]
    Augmentation,
    #[error("augmentation ideal is not nilpotent; the algebra is not local")]
    NotLocal,
    #[error("group axioms fail: {0}")]
    NotAGroup(String),
    #[error("group order {0} is not a power of {1}")]
    NotPGroup(usize, u32),
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
}

/// Associative unital algebra given by structure constants, with augmentation.
///
/// The augmentation ideal is given the canonical basis of `ker ε`; for group
/// algebras with the identity listed first this is `{g - 1 : g ≠ e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedAlgebra {
    p: u32,
    names: Vec<String>,
    /// `table[(i * n + j) * n + k]` is the coefficient of `b_k` in `b_i b_j`.
    table: Vec<u32>,
    unit: Vec<u32>,
    aug: Vec<u32>,
    nilpotency: usize,
    ideal: Vec<Vec<u32>>,
    /// Same layout as `table`, on the ideal basis.
    ideal_table: Vec<u32>,
}

impl AugmentedAlgebra {
    /// Validates associativity, unit, augmentation and locality.
    pub fn new(
        p: u32,
        names: Vec<String>,
        table: Vec<u32>,
        unit: Vec<u32>,
        aug: Vec<u32>,
    ) -> Result<Self, AlgebraError> {
        linffp::check_prime(p)?;
        let n = names.len();
        if table.len() != n * n * n || unit.len() != n || aug.len() != n {
            return Err(AlgebraError::Malformed("table, unit or aug has wrong length".into()));
        }
        if table.iter().chain(&unit).chain(&aug).any(|&x| x >= p) {
            return Err(AlgebraError::Malformed("coefficient out of range".into()));
        }
        let mut a = AugmentedAlgebra {
            p,
            names,
            table,
            unit,
            aug,
            nilpotency: 0,
            ideal: Vec::new(),
            ideal_table: Vec::new(),
        };
        a.validate()?;
        a.build_ideal()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            let e = self.basis_vec(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::Unit(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis_vec(k));
                    let jk = self.basis_product(j, k).to_vec();
                    if left != self.mul(&self.basis_vec(i), &jk) {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
                let e_ij = self.augment(self.basis_product(i, j));
                if e_ij != linffp::mul(self.aug[i], self.aug[j], self.p) {
                    return Err(AlgebraError::Augmentation);
                }
            }
        }
        if self.augment(&self.unit) != 1 % self.p {
            return Err(AlgebraError::Augmentation);
        }
        Ok(())
    }

    fn build_ideal(&mut self) -> Result<(), AlgebraError> {
        let p = self.p;
        let n = self.dim();
        let kernel = Matrix::from_row_vecs(p, n, &[self.aug.clone()]).kernel_basis();
        self.ideal = kernel.vectors();
        let m = self.ideal.len();
        let mut t = vec![0; m * m * m];
        for i in 0..m {
            for j in 0..m {
                let prod = self.mul(&self.ideal[i], &self.ideal[j]);
                let c = kernel.coordinates(&prod).ok_or(AlgebraError::Augmentation)?;
                t[(i * m + j) * m..(i * m + j + 1) * m].copy_from_slice(&c);
            }
        }
        self.ideal_table = t;
        // nilpotency index: least k with (ideal)^k = 0
        let mut power = kernel.clone();
        let mut k = 1;
        while power.dim() > 0 {
            if k > n {
                return Err(AlgebraError::NotLocal);
            }
            let mut prods = Vec::new();
            for x in power.vectors() {
                for y in &self.ideal {
                    prods.push(self.mul(&x, y));
                }
            }
            let next = Subspace::span(p, n, &prods);
            if next.dim() == power.dim() {
                return Err(AlgebraError::NotLocal);
            }
            power = next;
            k += 1;
        }
        self.nilpotency = k;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn aug(&self) -> &[u32] {
        &self.aug
    }
    /// Least `ν` with `Ā^ν = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }
    /// Basis of the augmentation ideal, in coordinates of `A`.
    pub fn ideal_basis(&self) -> &[Vec<u32>] {
        &self.ideal
    }
    pub fn ideal_dim(&self) -> usize {
        self.ideal.len()
    }
    /// Coordinates (in the ideal basis) of the product of ideal basis elements `i` and `j`.
    pub fn ideal_product(&self, i: usize, j: usize) -> &[u32] {
        let m = self.ideal.len();
        &self.ideal_table[(i * m + j) * m..(i * m + j + 1) * m]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1 % self.p;
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        let n = self.dim();
        &self.table[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    linffp::axpy(&mut out, linffp::mul(a, b, p), self.basis_product(i, j), p);
                }
            }
        }
        out
    }

    pub fn augment(&self, x: &[u32]) -> u32 {
        let s: u64 = x.iter().zip(&self.aug).map(|(&a, &b)| (a * b) as u64).sum();
        (s % self.p as u64) as u32
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// First pair of basis elements that do not commute.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.basis_product(i, j) != self.basis_product(j, i))
    }

    /// The algebra with multiplication reversed.
    pub fn opposite(&self) -> AugmentedAlgebra {
        let n = self.dim();
        let mut table = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                table[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(self.basis_product(j, i));
            }
        }
        AugmentedAlgebra::new(self.p, self.names.clone(), table, self.unit.clone(), self.aug.clone())
            .expect("opposite of a valid algebra is valid")
    }

    /// Element of `A` given by ideal coordinates.
    pub fn from_ideal_coords(&self, c: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for (k, &x) in c.iter().enumerate() {
            linffp::axpy(&mut v, x, &self.ideal[k], self.p);
        }
        v
    }

    /// Splits `x = ε(x)·1 + x̄` and returns the ideal coordinates of `x̄`.
    pub fn ideal_part(&self, x: &[u32]) -> Vec<u32> {
        let p = self.p;
        let e = self.augment(x);
        let mut bar = x.to_vec();
        linffp::axpy(&mut bar, p - e, &self.unit, p);
        let kernel = Subspace::span(p, self.dim(), &self.ideal);
        let coords = kernel.coordinates(&bar).expect("x - ε(x)1 lies in the ideal");
        // canonical basis of the span equals the stored ideal basis
        debug_assert_eq!(kernel.vectors(), self.ideal);
        coords
    }

    pub fn to_json(&self) -> AlgebraJson {
        let n = self.dim();
        let mut table = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<(usize, i64)> = self
                    .basis_product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k, c as i64))
                    .collect();
                if !terms.is_empty() {
                    table.push((i, j, terms));
                }
            }
        }
        AlgebraJson {
            p: self.p,
            basis: self.names.clone(),
            unit: self.unit.iter().map(|&x| x as i64).collect(),
            aug: self.aug.iter().map(|&x| x as i64).collect(),
            table,
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self, AlgebraError> {
        linffp::check_prime(j.p)?;
        let p = j.p;
        let n = j.basis.len();
        let mut table = vec![0; n * n * n];
        for (i, jj, terms) in &j.table {
            for &(k, c) in terms {
                if *i >= n || *jj >= n || k >= n {
                    return Err(AlgebraError::Malformed(format!("index out of range in entry ({i}, {jj})")));
                }
                let at = (i * n + jj) * n + k;
                table[at] = linffp::add(table[at], linffp::reduce(c, p), p);
            }
        }
        let red = |v: &[i64]| v.iter().map(|&x| linffp::reduce(x, p)).collect::<Vec<_>>();
        AugmentedAlgebra::new(p, j.basis.clone(), table, red(&j.unit), red(&j.aug))
    }
}

/// Serialized algebra: `{"p", "basis", "unit", "aug", "table": [[i, j, [[k, c], ...]], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub p: u32,
    pub basis: Vec<String>,
    pub unit: Vec<i64>,
    pub aug: Vec<i64>,
    pub table: Vec<(usize, usize, Vec<(usize, i64)>)>,
}

/// A linear map between algebras, given on the underlying spaces
/// (`matrix` has shape `target.dim() × source.dim()`).
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: AugmentedAlgebra,
    pub target: AugmentedAlgebra,
    pub matrix: Matrix,
}

impl AlgebraMap {
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }
}

/// Checks unit, multiplicativity on every pair of basis elements and, when
/// the dimensions agree, bijectivity.
pub fn verify_algebra_map(f: &AlgebraMap) -> Report {
    let mut rep = Report::new();
    let (s, t) = (&f.source, &f.target);
    rep.push("unit", f.apply(s.unit()) == t.unit());
    let n = s.dim();
    let images: Vec<Vec<u32>> = (0..n).map(|i| f.matrix.col(i)).collect();
    let mut mult = true;
    'outer: for i in 0..n {
        for j in 0..n {
            if f.apply(s.basis_product(i, j)) != t.mul(&images[i], &images[j]) {
                mult = false;
                break 'outer;
            }
        }
    }
    rep.push("multiplicative", mult);
    if s.dim() == t.dim() {
        rep.push("bijective", f.matrix.rank() == n);
    }
    rep
}

/// The trivial algebra `F_p`.
pub fn ground_field(p: u32) -> AugmentedAlgebra {
    AugmentedAlgebra::new(p, vec!["1".into()], vec![1 % p], vec![1 % p], vec![1 % p])
        .expect("field is an augmented algebra")
}

/// `F_p[x]/(x^n)` with basis `1, x, ..., x^{n-1}`.
pub fn trunc_poly(n: usize, p: u32) -> Result<AugmentedAlgebra, AlgebraError> {
    linffp::check_prime(p)?;
    if n == 0 {
        return Err(AlgebraError::Malformed("trunc_poly needs n >= 1".into()));
    }
    let mut table = vec![0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                table[(i * n + j) * n + i + j] = 1;
            }
        }
    }
    let names = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("x^{i}") }).collect();
    let mut unit = vec![0; n];
    unit[0] = 1;
    AugmentedAlgebra::new(p, names, table, unit.clone(), unit)
}
