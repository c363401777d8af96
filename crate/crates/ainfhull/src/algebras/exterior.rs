use std::collections::BTreeMap;

use crate::ainfty::{AInfAlgebra, Block};
use crate::linffp::{self, Matrix};

fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// `Λ(x_1, ..., x_d)` with generators in degree 1, as a minimal A-infinity
/// algebra with only `m_2`, on the positive degrees `1..=degree_cap`.
pub fn exterior_algebra(d: usize, p: u32, degree_cap: usize) -> AInfAlgebra {
    let cap = degree_cap.min(d).max(1) as i32;
    let bases: Vec<Vec<Vec<usize>>> = (0..=cap as usize).map(|k| subsets(d, k)).collect();
    let index: Vec<BTreeMap<Vec<usize>, usize>> =
        bases.iter().map(|b| b.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let mut dims: BTreeMap<i32, usize> = (1..=cap).map(|k| (k, bases[k as usize].len())).collect();
    dims.insert(cap + 1, 0);
    let mut ops = BTreeMap::new();
    for a in 1..=cap {
        for b in 1..=cap - a {
            let (sa, sb, sc) = (&bases[a as usize], &bases[b as usize], &index[(a + b) as usize]);
            let mut m = Matrix::zeros(p, sc.len(), sa.len() * sb.len());
            for (i, s) in sa.iter().enumerate() {
                for (j, t) in sb.iter().enumerate() {
                    if s.iter().any(|x| t.contains(x)) {
                        continue;
                    }
                    let inversions = s.iter().map(|&x| t.iter().filter(|&&y| y < x).count()).sum::<usize>();
                    let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
                    u.sort();
                    m.set(sc[&u], i * sb.len() + j, linffp::sign(inversions % 2 == 1, p));
                }
            }
            ops.insert(vec![a, b], Block::Dense(m));
        }
    }
    AInfAlgebra::new(p, 1, cap, dims, ops, 2)
}
