use std::collections::BTreeMap;

use ainfhull::algebras::{render_tensor, TensorElement};

const LETTERS: [&str; 10] = ["α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ"];

/// Names for a basis of `H^degree`: a greek letter per degree, indexed when
/// the degree has more than one class.
pub fn class_names(degree: i32, dim: usize) -> Vec<String> {
    let letter = match LETTERS.get(degree as usize - 1) {
        Some(l) => l.to_string(),
        None => format!("c{degree}_"),
    };
    if dim == 1 {
        vec![letter]
    } else {
        (1..=dim).map(|i| format!("{letter}{i}")).collect()
    }
}

/// Linear combination of named basis vectors, e.g. `α1 - 2*α2`.
pub fn render_vector(v: &[u32], names: &[String], p: u32) -> String {
    let t: TensorElement = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (vec![i], c)).collect();
    render_tensor(&t, p, |w| names[w[0]].clone())
}

pub type Names = BTreeMap<i32, Vec<String>>;

pub fn names_for(dims: impl Iterator<Item = (i32, usize)>) -> Names {
    dims.filter(|&(_, n)| n > 0).map(|(d, n)| (d, class_names(d, n))).collect()
}
