use std::collections::BTreeMap;

use super::AugmentedAlgebra;
use crate::linffp::{self, Echelon};

/// An element of the free tensor algebra: word (generator indices) to coefficient.
pub type TensorElement = BTreeMap<Vec<usize>, u32>;

/// Quotient of the weight-truncated free algebra on weight-1 generators by
/// the two-sided ideal generated by (possibly inhomogeneous) relations.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    p: u32,
    generators: Vec<String>,
    weight_cap: usize,
    /// All words of length ≤ W, ordered by length then lexicographically.
    words: Vec<Vec<usize>>,
    word_index: BTreeMap<Vec<usize>, usize>,
    /// Ideal in reversed word order, so pivots are the largest words.
    ideal: Echelon,
    /// Indices (into `words`) of the normal words, in word order.
    normal: Vec<usize>,
    relations: Vec<TensorElement>,
}

fn all_words(ngens: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..ngens {
                let mut v: Vec<usize> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl PresentedAlgebra {
    fn column(&self, word_idx: usize) -> usize {
        self.words.len() - 1 - word_idx
    }

    fn dense(&self, t: &TensorElement) -> Vec<u32> {
        let mut v = vec![0; self.words.len()];
        for (w, &c) in t {
            if w.len() <= self.weight_cap {
                let col = self.column(self.word_index[w]);
                v[col] = linffp::add(v[col], c % self.p, self.p);
            }
        }
        v
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn generators(&self) -> &[String] {
        &self.generators
    }
    pub fn weight_cap(&self) -> usize {
        self.weight_cap
    }
    pub fn relations(&self) -> &[TensorElement] {
        &self.relations
    }
    pub fn dim(&self) -> usize {
        self.normal.len()
    }
    pub fn normal_words(&self) -> Vec<&[usize]> {
        self.normal.iter().map(|&i| self.words[i].as_slice()).collect()
    }

    /// Number of normal words of each length `0..=W`.
    pub fn weight_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.weight_cap + 1];
        for &i in &self.normal {
            dims[self.words[i].len()] += 1;
        }
        dims
    }

    /// Normal-form coordinates of a tensor (terms above the weight cap are dropped).
    pub fn reduce(&self, t: &TensorElement) -> Vec<u32> {
        let mut v = self.dense(t);
        self.ideal.reduce(&mut v);
        let out: Vec<u32> = self.normal.iter().map(|&i| v[self.column(i)]).collect();
        debug_assert_eq!(
            v.iter().filter(|&&x| x != 0).count(),
            out.iter().filter(|&&x| x != 0).count()
        );
        out
    }

    /// The tensor with the given normal-form coordinates.
    pub fn lift(&self, coords: &[u32]) -> TensorElement {
        self.normal
            .iter()
            .zip(coords)
            .filter(|(_, &c)| c != 0)
            .map(|(&i, &c)| (self.words[i].clone(), c))
            .collect()
    }

    /// Concatenation product, truncated and reduced.
    pub fn mul_tensors(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let p = self.p;
        let mut out = TensorElement::new();
        for (u, &x) in a {
            for (v, &y) in b {
                if u.len() + v.len() > self.weight_cap {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                let e = out.entry(w).or_insert(0);
                *e = linffp::add(*e, linffp::mul(x, y, p), p);
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.reduce(&self.mul_tensors(&self.lift(a), &self.lift(b)))
    }

    /// Whether all pairs of generators commute in the quotient.
    pub fn is_commutative(&self) -> bool {
        let n = self.generators.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let t = TensorElement::from([(vec![i, j], 1), (vec![j, i], self.p - 1)]);
                self.reduce(&t).iter().all(|&x| x == 0)
            })
        })
    }

    /// The quotient as a structure-constant algebra on the normal words.
    pub fn to_augmented(&self) -> AugmentedAlgebra {
        let n = self.dim();
        let p = self.p;
        let mut table = vec![0; n * n * n];
        let basis = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        for i in 0..n {
            for j in 0..n {
                table[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&self.mul(&basis(i), &basis(j)));
            }
        }
        let names = self.normal_words().iter().map(|w| self.render_word(w)).collect();
        let unit = self.reduce(&TensorElement::from([(vec![], 1)]));
        let aug: Vec<u32> = self.normal.iter().map(|&i| u32::from(self.words[i].is_empty())).collect();
        AugmentedAlgebra::new(p, names, table, unit, aug).expect("quotient of a truncated free algebra is local")
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&g| self.generators[g].as_str()).collect::<Vec<_>>().join("*")
    }

    /// Human-readable rendering such as `x1*x2 - x2*x1 + x3`.
    pub fn render(&self, t: &TensorElement) -> String {
        render_tensor(t, self.p, |w| self.render_word(w))
    }
}

pub fn render_tensor(t: &TensorElement, p: u32, word: impl Fn(&[usize]) -> String) -> String {
    let mut terms: Vec<(&Vec<usize>, u32)> = t.iter().filter(|(_, &c)| c != 0).map(|(w, &c)| (w, c)).collect();
    terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
    let mut s = String::new();
    for (k, (w, c)) in terms.iter().enumerate() {
        let (negative, mag) = if *c > p / 2 && p > 2 { (true, p - c) } else { (false, *c) };
        if k == 0 {
            if negative {
                s.push('-');
            }
        } else {
            s.push_str(if negative { " - " } else { " + " });
        }
        if mag != 1 {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&word(w));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Quotient of the free algebra on `generators`, truncated above weight `w`,
/// by the ideal generated by `relations`.
pub fn truncated_quotient(p: u32, generators: Vec<String>, relations: Vec<TensorElement>, w: usize) -> PresentedAlgebra {
    let words = all_words(generators.len(), w);
    let word_index: BTreeMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut a = PresentedAlgebra {
        p,
        generators,
        weight_cap: w,
        ideal: Echelon::new(p, words.len()),
        words,
        word_index,
        normal: Vec::new(),
        relations: Vec::new(),
    };
    let short: Vec<Vec<usize>> = a.words.clone();
    for r in &relations {
        let low = r.iter().filter(|(_, &c)| c % p != 0).map(|(w, _)| w.len()).min();
        let Some(low) = low else { continue };
        for u in short.iter().filter(|u| u.len() + low <= w) {
            for v in short.iter().filter(|v| u.len() + v.len() + low <= w) {
                let mut t = TensorElement::new();
                for (m, &c) in r {
                    if u.len() + m.len() + v.len() <= w {
                        let mut word = u.clone();
                        word.extend_from_slice(m);
                        word.extend_from_slice(v);
                        t.insert(word, c % p);
                    }
                }
                let dense = a.dense(&t);
                a.ideal.insert(dense);
            }
        }
    }
    a.normal = (0..a.words.len()).filter(|&i| a.ideal.pivot_row(a.column(i)).is_none()).collect();
    a.relations = relations;
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(terms: &[(&[usize], u32)]) -> TensorElement {
        terms.iter().map(|(w, c)| (w.to_vec(), *c)).collect()
    }

    #[test]
    fn dual_numbers() {
        let a = truncated_quotient(2, vec!["x".into()], vec![t(&[(&[0, 0], 1)])], 4);
        assert_eq!(a.weight_dims(), vec![1, 1, 0, 0, 0]);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn commutative_polynomials() {
        let rel = t(&[(&[0, 1], 1), (&[1, 0], 2)]);
        let a = truncated_quotient(3, vec!["x".into(), "y".into()], vec![rel], 3);
        assert_eq!(a.weight_dims(), vec![1, 2, 3, 4]);
        assert!(a.is_commutative());
    }

    #[test]
    fn free_algebra() {
        let a = truncated_quotient(5, vec!["x".into(), "y".into(), "z".into()], vec![], 3);
        assert_eq!(a.weight_dims(), vec![1, 3, 9, 27]);
        assert!(!a.is_commutative());
    }

    #[test]
    fn inhomogeneous_relation() {
        // x^2 = x^3 with W = 4 forces x^2 = x^3 = x^4 = 0 ... modulo truncation:
        // x^2 - x^3 ⇒ x^3 - x^4 ⇒ x^4 ∈ ideal, so x^3 and x^2 follow.
        let a = truncated_quotient(2, vec!["x".into()], vec![t(&[(&[0, 0], 1), (&[0, 0, 0], 1)])], 4);
        assert_eq!(a.weight_dims(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn quotient_to_algebra() {
        let a = truncated_quotient(3, vec!["x".into()], vec![t(&[(&[0, 0, 0], 1)])], 3);
        let alg = a.to_augmented();
        assert_eq!((alg.dim(), alg.nilpotency_index()), (3, 3));
        assert_eq!(a.render(&t(&[(&[0, 0], 2), (&[0], 1)])), "x - x*x");
    }
}
