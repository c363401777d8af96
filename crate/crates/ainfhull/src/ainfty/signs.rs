//! Sign rules shared by every A-infinity computation.
//!
//! Operations are stored in the unsuspended form `m_n` (degree `2 - n`) and
//! evaluated in the bar form `b_n` (degree `+1` on the suspension `sA`, where
//! `|sa| = |a| - 1`). The two forms differ by
//! `b_n(sa_1, ..., sa_n) = (-1)^{Σ_j (n - j)|a_j|} s m_n(a_1, ..., a_n)`,
//! and the same rule converts morphism components `f_n` to `F_n`.
//! Everything else follows from the Koszul rule on `sA`.

/// Parity of the m-form/bar-form conversion for an input degree pattern.
pub fn bar_sign(pattern: &[i32]) -> bool {
    let n = pattern.len() as i64;
    pattern
        .iter()
        .enumerate()
        .map(|(j, &a)| (n - 1 - j as i64) * a as i64)
        .sum::<i64>()
        .rem_euclid(2)
        == 1
}

/// Parity picked up by an odd map applied after the first `r` slots.
pub fn koszul_prefix(pattern: &[i32], r: usize) -> bool {
    pattern[..r].iter().map(|&a| (a - 1) as i64).sum::<i64>().rem_euclid(2) == 1
}

/// Parity of reversing the suspended elements `sa_1 ⊗ ... ⊗ sa_n`.
pub fn reversal_sign(pattern: &[i32]) -> bool {
    let s: Vec<i64> = pattern.iter().map(|&a| (a - 1) as i64).collect();
    let mut acc = 0i64;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            acc += s[i] * s[j];
        }
    }
    acc.rem_euclid(2) == 1
}

/// Output degree of an operation `m_n` on the given inputs.
pub fn op_degree(pattern: &[i32]) -> i32 {
    pattern.iter().sum::<i32>() + 2 - pattern.len() as i32
}

/// Output degree of a morphism component `f_n` on the given inputs.
pub fn map_degree(pattern: &[i32]) -> i32 {
    pattern.iter().sum::<i32>() + 1 - pattern.len() as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(!bar_sign(&[3]));
        assert!(bar_sign(&[1, 0]));
        assert!(!bar_sign(&[0, 1]));
        assert!(!koszul_prefix(&[1, 1, 1], 3));
        assert!(koszul_prefix(&[2, 5], 1));
        assert!(!reversal_sign(&[1, 1, 1]));
        assert!(reversal_sign(&[2, 2]));
        assert_eq!(op_degree(&[1, 1, 1]), 2);
        assert_eq!(map_degree(&[1, 1, 2]), 2);
    }
}
