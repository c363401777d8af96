use super::{group_algebra, trunc_poly, AlgebraError, AugmentedAlgebra, FiniteGroupData};

/// A named test instance: a group (to be turned into a group algebra) or an algebra.
#[derive(Clone, Debug)]
pub enum CatalogItem {
    Group(FiniteGroupData),
    Algebra(AugmentedAlgebra),
}

impl CatalogItem {
    pub fn algebra(&self, p: u32) -> Result<AugmentedAlgebra, AlgebraError> {
        match self {
            CatalogItem::Group(g) => group_algebra(g, p),
            CatalogItem::Algebra(a) => Ok(a.clone()),
        }
    }
}

fn cyclic(n: usize) -> FiniteGroupData {
    let names = (0..n).map(|i| format!("g^{i}")).collect();
    let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroupData::new(names, mult).expect("cyclic group")
}

/// Upper unitriangular 3×3 matrices over `Z/q`, element `(a, b, c)` standing
/// for `[[1, a, c], [0, 1, b], [0, 0, 1]]`, indexed `(a * q + b) * q + c`.
fn heisenberg(q: usize) -> FiniteGroupData {
    let idx = |a: usize, b: usize, c: usize| (a * q + b) * q + c;
    let mut names = vec![String::new(); q * q * q];
    let mut mult = vec![vec![0; q * q * q]; q * q * q];
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                names[idx(a, b, c)] = format!("[{a},{b},{c}]");
                for a2 in 0..q {
                    for b2 in 0..q {
                        for c2 in 0..q {
                            mult[idx(a, b, c)][idx(a2, b2, c2)] =
                                idx((a + a2) % q, (b + b2) % q, (c + c2 + a * b2) % q);
                        }
                    }
                }
            }
        }
    }
    FiniteGroupData::new(names, mult).expect("Heisenberg group")
}

fn parse_count(arg: &str, name: &str) -> Result<usize, AlgebraError> {
    arg.parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| AlgebraError::UnknownName(name.to_string()))
}

/// Splits `a,b` at the top-level comma.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Groups by name: `cyclic:n`, `elem_abelian:d` (uses order p = 2 unless
/// `elem_abelian:d:q`), `heisenberg` (order 27), `heisenberg:q`, `product(a,b)`.
pub fn catalog_group(name: &str) -> Result<FiniteGroupData, AlgebraError> {
    catalog_group_p(name, None)
}

fn catalog_group_p(name: &str, p: Option<u32>) -> Result<FiniteGroupData, AlgebraError> {
    let name = name.trim();
    let unknown = || AlgebraError::UnknownName(name.to_string());
    if let Some(inner) = name.strip_prefix("product(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_pair(inner).ok_or_else(unknown)?;
        return Ok(catalog_group_p(a, p)?.product(&catalog_group_p(b, p)?));
    }
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["cyclic", n] => Ok(cyclic(parse_count(n, name)?)),
        ["elem_abelian", d] | ["elem_abelian", d, _] => {
            let q = match parts.get(2) {
                Some(q) => parse_count(q, name)?,
                None => p.unwrap_or(2) as usize,
            };
            let d = parse_count(d, name)?;
            let c = cyclic(q);
            Ok((1..d).fold(c.clone(), |acc, _| acc.product(&c)))
        }
        ["heisenberg"] => Ok(heisenberg(p.unwrap_or(3) as usize)),
        ["heisenberg", q] => Ok(heisenberg(parse_count(q, name)?)),
        _ => Err(unknown()),
    }
}

/// Catalog instance over F_p: group names as in [`catalog_group`] (with
/// `elem_abelian:d` and `heisenberg` taken over `p`) and `trunc_poly:n`.
pub fn catalog(name: &str, p: u32) -> Result<CatalogItem, AlgebraError> {
    let name = name.trim();
    if let Some(n) = name.strip_prefix("trunc_poly:") {
        return Ok(CatalogItem::Algebra(trunc_poly(parse_count(n, name)?, p)?));
    }
    Ok(CatalogItem::Group(catalog_group_p(name, Some(p))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        let a = catalog("trunc_poly:2", 2).unwrap().algebra(2).unwrap();
        assert_eq!((a.dim(), a.nilpotency_index()), (2, 2));
        let k = catalog("elem_abelian:2", 2).unwrap().algebra(2).unwrap();
        assert_eq!(k.dim(), 4);
        assert_eq!(catalog("elem_abelian:2", 3).unwrap().algebra(3).unwrap().dim(), 9);
        assert!(catalog("nonsense", 2).is_err());
        assert!(catalog("cyclic:x", 2).is_err());
        let g = catalog_group("product(cyclic:2,product(cyclic:2,cyclic:2))").unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn heisenberg_axioms_by_exhaustion() {
        // FiniteGroupData::new re-verifies all 27^3 associativity triples
        let g = catalog_group("heisenberg").unwrap();
        assert_eq!(g.order(), 27);
        // every non-identity element has order 3
        for x in 0..27 {
            let x3 = g.mul(g.mul(x, x), x);
            assert_eq!(x3, g.identity());
        }
    }

    #[test]
    fn nilpotency_indices() {
        let nu = |name: &str, p: u32| catalog(name, p).unwrap().algebra(p).unwrap().nilpotency_index();
        assert_eq!(nu("cyclic:9", 3), 9);
        assert_eq!(nu("elem_abelian:2", 3), 5);
        assert_eq!(nu("cyclic:4", 2), 4);
        assert_eq!(nu("elem_abelian:2", 2), 3);
        assert_eq!(nu("heisenberg", 3), 9);
    }
}
