mod support;

use ainfhull::algebras::trunc_poly;
use ainfhull::hochschild::hochschild_dga;
use ainfhull::transfer::{iterated_operation, minimal_model_seeded};
use support::trees::{iterated_by_trees, trees};

#[test]
fn catalan_counts() {
    let counts: Vec<usize> = (1..=6).map(|n| trees(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 5, 14, 42]);
}

#[test]
fn trees_agree_with_transfer_on_truncated_polynomials() {
    for p in [2, 3, 5] {
        for n in 2..=5 {
            let a = trunc_poly(n, p).unwrap();
            let mm = minimal_model_seeded(&hochschild_dga(&a, 2), 3, 6);
            for k in 2..=6 {
                let tree = iterated_by_trees(k, &[1], &mm.retract, p);
                assert_eq!(iterated_operation(&mm.model, &[1], k), tree, "p={p} n={n} k={k}");
                if k < n {
                    assert_eq!(tree, [0], "p={p} n={n} k={k}");
                }
            }
            assert_ne!(iterated_by_trees(n, &[1], &mm.retract, p), [0], "p={p} n={n}");
        }
    }
}
