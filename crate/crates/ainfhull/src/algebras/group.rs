use serde::{Deserialize, Serialize};

use super::{AlgebraError, AugmentedAlgebra};
use crate::linffp;

/// A finite group by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupData {
    names: Vec<String>,
    mult: Vec<Vec<usize>>,
    identity: usize,
}

/// Serialized group: `{"p", "elements", "mult"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub p: u32,
    pub elements: Vec<String>,
    pub mult: Vec<Vec<usize>>,
}

impl FiniteGroupData {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(names: Vec<String>, mult: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = names.len();
        let bad = |s: &str| Err(AlgebraError::NotAGroup(s.to_string()));
        if n == 0 || mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table shape");
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return bad("associativity");
                    }
                }
            }
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a)) else {
            return bad("no identity");
        };
        for a in 0..n {
            if !(0..n).any(|b| mult[a][b] == e && mult[b][a] == e) {
                return bad("missing inverse");
            }
        }
        Ok(FiniteGroupData { names, mult, identity: e })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }
    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mult[a][b] == self.identity).expect("group has inverses")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.mult[a][b] == self.mult[b][a])).collect()
    }

    /// Direct product, elements ordered lexicographically (first factor major).
    pub fn product(&self, other: &FiniteGroupData) -> FiniteGroupData {
        let (n, m) = (self.order(), other.order());
        let mut names = Vec::with_capacity(n * m);
        let mut mult = vec![vec![0; n * m]; n * m];
        for a in 0..n {
            for b in 0..m {
                names.push(format!("({},{})", self.names[a], other.names[b]));
                for c in 0..n {
                    for d in 0..m {
                        mult[a * m + b][c * m + d] = self.mul(a, c) * m + other.mul(b, d);
                    }
                }
            }
        }
        FiniteGroupData::new(names, mult).expect("product of groups is a group")
    }

    /// Subgroup generated by the given elements, listed in increasing index order.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| members[i]).collect()
    }

    /// The subgroup on `elements` (which must be closed), re-indexed in the given order.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroupData, AlgebraError> {
        let pos = |x: usize| elements.iter().position(|&e| e == x);
        let mut mult = Vec::with_capacity(elements.len());
        for &a in elements {
            let row: Option<Vec<usize>> = elements.iter().map(|&b| pos(self.mul(a, b))).collect();
            mult.push(row.ok_or_else(|| AlgebraError::NotAGroup("subset not closed".into()))?);
        }
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        FiniteGroupData::new(names, mult)
    }

    pub fn to_json(&self, p: u32) -> GroupJson {
        GroupJson { p, elements: self.names.clone(), mult: self.mult.clone() }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self, AlgebraError> {
        FiniteGroupData::new(j.elements.clone(), j.mult.clone())
    }
}

/// Group elements in the order of the basis of [`group_algebra`]: the
/// identity first, then the rest by index.
pub fn group_algebra_basis(g: &FiniteGroupData) -> Vec<usize> {
    let mut order = vec![g.identity()];
    order.extend((0..g.order()).filter(|&x| x != g.identity()));
    order
}

/// Group algebra `F_p[G]` with `ε(g) = 1`. The identity element is moved to
/// the front of the basis so that the ideal basis is `{g - 1 : g ≠ e}`.
pub fn group_algebra(g: &FiniteGroupData, p: u32) -> Result<AugmentedAlgebra, AlgebraError> {
    linffp::check_prime(p)?;
    let n = g.order();
    let mut k = n;
    while k % p as usize == 0 {
        k /= p as usize;
    }
    if k != 1 {
        return Err(AlgebraError::NotPGroup(n, p));
    }
    let order = group_algebra_basis(g);
    let mut index = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        index[x] = i;
    }
    let mut table = vec![0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let k = index[g.mul(order[i], order[j])];
            table[(i * n + j) * n + k] = 1;
        }
    }
    let names = order.iter().map(|&x| g.names()[x].clone()).collect();
    let mut unit = vec![0; n];
    unit[0] = 1;
    AugmentedAlgebra::new(p, names, table, unit, vec![1; n])
}

#[cfg(test)]
mod tests {
    use super::super::{catalog_group, trunc_poly, verify_algebra_map, AlgebraMap};
    use super::*;
    use crate::linffp::Matrix;

    #[test]
    fn trivial_group_gives_field() {
        let g = FiniteGroupData::new(vec!["e".into()], vec![vec![0]]).unwrap();
        let a = group_algebra(&g, 5).unwrap();
        assert_eq!((a.dim(), a.nilpotency_index()), (1, 1));
    }

    #[test]
    fn c2_group_algebra_is_dual_numbers() {
        let g = catalog_group("cyclic:2").unwrap();
        let a = group_algebra(&g, 2).unwrap();
        assert_eq!(a.nilpotency_index(), 2);
        // (g - 1)^2 = g^2 - 2g + 1 = 0
        let x = a.ideal_basis()[0].clone();
        assert_eq!(x, vec![1, 1]);
        assert_eq!(a.mul(&x, &x), vec![0, 0]);
        // g ↦ 1 + x
        let target = trunc_poly(2, 2).unwrap();
        let f = AlgebraMap { source: a, target, matrix: Matrix::from_rows(2, &[vec![1, 1], vec![0, 1]]) };
        assert!(verify_algebra_map(&f).passed());
    }

    #[test]
    fn order_must_be_prime_power() {
        let g = catalog_group("cyclic:3").unwrap();
        assert_eq!(group_algebra(&g, 2), Err(AlgebraError::NotPGroup(3, 2)));
    }

    #[test]
    fn heisenberg_is_noncommutative() {
        let g = catalog_group("heisenberg").unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
        assert_eq!(g.center().len(), 3);
        let a = group_algebra(&g, 3).unwrap();
        assert!(a.noncommuting_pair().is_some());
    }

    #[test]
    fn commutative_iff_abelian() {
        for name in ["cyclic:4", "elem_abelian:2", "heisenberg", "product(cyclic:2,cyclic:4)"] {
            let g = catalog_group(name).unwrap();
            let p = if name == "heisenberg" { 3 } else { 2 };
            assert_eq!(group_algebra(&g, p).unwrap().is_commutative(), g.is_abelian(), "{name}");
        }
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroupData::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]).is_err());
    }
}
