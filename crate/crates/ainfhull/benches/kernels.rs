//! Hot kernels under the compiled backend. Run once with the default
//! features and once with `--no-default-features`; benchmark ids carry the
//! backend name, so both sets sit side by side in the criterion report.
//! With `parallel` each kernel also runs inside a one-thread pool.

use std::hint::black_box;

use ainfhull::algebras::catalog;
use ainfhull::fuzz::fuzz;
use ainfhull::hochschild::hochschild_dga;
use ainfhull::linffp::Matrix;
use ainfhull::par;
use ainfhull::transfer::minimal_model_seeded;
use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(seed: u64, p: u32, rows: usize, cols: usize) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_data(p, rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..p)).collect())
}

type Kernel = (&'static str, Box<dyn Fn() + Send + Sync>);

fn kernels() -> Vec<Kernel> {
    let a = random_matrix(1, 3, 320, 320);
    let b = random_matrix(2, 3, 320, 320);
    let tall = random_matrix(3, 5, 600, 400);
    let klein = catalog("elem_abelian:2", 3).unwrap().algebra(3).unwrap();
    let poly = catalog("trunc_poly:4", 3).unwrap().algebra(3).unwrap();
    let poly_dga = hochschild_dga(&poly, 5);
    vec![
        ("matrix product 320", Box::new(move || drop(black_box(a.mul(&b))))),
        ("rank 600x400", Box::new(move || {
            black_box(tall.rank());
        })),
        ("cochains F_3[C_3×C_3] D=3", Box::new(move || drop(black_box(hochschild_dga(&klein, 3))))),
        ("transfer trunc_poly:4 D=5 N=4", Box::new(move || drop(black_box(minimal_model_seeded(&poly_dga, 0, 4))))),
        ("fuzz 20", Box::new(|| drop(black_box(fuzz(7, 20, 4))))),
    ]
}

fn bench(c: &mut Criterion) {
    let backend = if par::enabled() { "parallel" } else { "sequential" };
    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for (name, k) in kernels() {
        group.bench_function(format!("{backend}/{name}"), |bencher| bencher.iter(&k));
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            group.bench_function(format!("parallel-1-thread/{name}"), |bencher| bencher.iter(|| pool.install(&k)));
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
