//! One PASS/FAIL line per acceptance criterion. Pass criterion numbers as
//! arguments to run a subset: `cargo test --release --test acceptance -- 3 8`.

mod support;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ainfhull::ainfty::compose;
use ainfhull::algebras::{catalog, exterior_algebra, trunc_poly, AugmentedAlgebra};
use ainfhull::barcobar::{classical_hull, dual_bar, quadratic_part_is_alternating};
use ainfhull::changegroup::{diagram_check, FunctorialityOptions, SubgroupInclusion};
use ainfhull::fuzz::fuzz;
use ainfhull::graded::{check_retract, cohomology_with_retract};
use ainfhull::hochschild::{default_degree_cap, hochschild_dga};
use ainfhull::reconstruct::{retract_independence, verify_reconstruction, ReconstructionReport};
use ainfhull::transfer::{check_minimal_model, iterated_operation, left_inverse, minimal_model, minimal_model_seeded};
use ainfhull::twomodels::{upsilon, SizeGuard};
use support::trees::iterated_by_trees;

const CATALOG: [(&str, u32); 13] = [
    ("trunc_poly:2", 2),
    ("trunc_poly:3", 2),
    ("trunc_poly:4", 2),
    ("trunc_poly:2", 3),
    ("trunc_poly:3", 3),
    ("trunc_poly:4", 3),
    ("cyclic:2", 2),
    ("cyclic:4", 2),
    ("elem_abelian:2", 2),
    ("cyclic:3", 3),
    ("cyclic:9", 3),
    ("elem_abelian:2", 3),
    ("heisenberg", 3),
];

const ARITY: usize = 4;

fn algebra(name: &str, p: u32) -> AugmentedAlgebra {
    catalog(name, p).unwrap().algebra(p).unwrap()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn fail_or(failures: Vec<String>, ok: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Outcome { passed: true, detail: ok.into() }
    } else {
        Outcome { passed: false, detail: failures.join("; ") }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn retract_laws() -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, p) in CATALOG {
        let a = algebra(name, p);
        let dga = hochschild_dga(&a, default_degree_cap(&a));
        let t = Instant::now();
        let rep = check_retract(&cohomology_with_retract(dga.complex(), 0));
        let el = t.elapsed();
        slowest = slowest.max(el);
        if !rep.passed() {
            failures.push(format!("{name}/{p}: {:?}", rep.failures()));
        }
        if el >= Duration::from_secs(1) {
            failures.push(format!("{name}/{p} took {}", secs(el)));
        }
    }
    fail_or(failures, format!("{} algebras, slowest {}", CATALOG.len(), secs(slowest)))
}

fn transfer_checks() -> Outcome {
    let mut failures = Vec::new();
    let mut times = Vec::new();
    for (name, p) in CATALOG {
        let a = algebra(name, p);
        let dga = hochschild_dga(&a, default_degree_cap(&a));
        let t = Instant::now();
        let mm = minimal_model(&dga, cohomology_with_retract(dga.complex(), 0), ARITY);
        let mut rep = check_minimal_model(&mm, ARITY);
        rep.extend("dual bar", dual_bar(&mm.model, ARITY).check());
        let g = left_inverse(&mm, ARITY);
        rep.extend("g", g.check(ARITY));
        rep.push("g∘f=id", compose(&g, &mm.f).is_identity_through(ARITY));
        let el = t.elapsed();
        times.push(format!("{name}/{p} {}", secs(el)));
        let limit = Duration::from_secs(if name == "heisenberg" { 600 } else { 10 });
        if !rep.passed() {
            failures.push(format!("{name}/{p}: {:?}", rep.failures()));
        }
        if el >= limit {
            failures.push(format!("{name}/{p} took {}", secs(el)));
        }
    }
    fail_or(failures, times.join(", "))
}

fn iterated_operations() -> Outcome {
    let mut failures = Vec::new();
    let mut found = Vec::new();
    for p in [2, 3] {
        for n in 2..=4 {
            let a = trunc_poly(n, p).unwrap();
            let mm = minimal_model_seeded(&hochschild_dga(&a, 2), 0, ARITY);
            for k in 2..=n {
                let lib = iterated_operation(&mm.model, &[1], k);
                let oracle = iterated_by_trees(k, &[1], &mm.retract, p);
                if lib != oracle {
                    failures.push(format!("trunc_poly:{n}/{p} m_{k}: {lib:?} vs trees {oracle:?}"));
                }
                let zero = lib.iter().all(|&c| c == 0);
                if k >= 3 && k < n && !zero {
                    failures.push(format!("trunc_poly:{n}/{p}: m_{k}(α..α) ≠ 0"));
                }
                if k == n {
                    if zero {
                        failures.push(format!("trunc_poly:{n}/{p}: m_{n}(α..α) = 0"));
                    } else {
                        found.push(format!("n={n} p={p} c={}", lib[0]));
                    }
                }
            }
        }
    }
    fail_or(failures, found.join(", "))
}

fn reconstruction(reports: &[(&str, u32, ReconstructionReport)], times: &[Duration]) -> Outcome {
    let failures = reports
        .iter()
        .filter(|(_, _, r)| !(r.isomorphism && r.gates.passed()))
        .map(|(name, p, r)| format!("{name}/{p}: iso {} {:?}", r.isomorphism, r.gates.failures()))
        .collect();
    let slowest = times.iter().zip(reports).max_by_key(|(t, _)| **t);
    let slowest = slowest.map(|(t, (name, p, _))| format!(", slowest {name}/{p} {}", secs(*t))).unwrap_or_default();
    fail_or(failures, format!("{} algebras isomorphic to their hulls{slowest}", reports.len()))
}

fn independence(reports: &[(&str, u32, ReconstructionReport)]) -> Outcome {
    let mut failures = Vec::new();
    for (name, p) in CATALOG {
        let r = retract_independence(&algebra(name, p), &[1, 2]);
        if !(r.all_isomorphic && r.models_isomorphic) {
            failures.push(format!("{name}/{p}: hulls {} models {}", r.all_isomorphic, r.models_isomorphic));
        }
    }
    let h1 = |n: &str| reports.iter().find(|(name, p, _)| *name == n && *p == 2).map(|(_, _, r)| r.ext_dims[1]);
    let (c4, v4) = (h1("cyclic:4"), h1("elem_abelian:2"));
    if (c4, v4) != (Some(1), Some(2)) {
        failures.push(format!("dim H¹: C_4 {c4:?}, C_2×C_2 {v4:?}"));
    }
    fail_or(failures, "seeds 1, 2 on every algebra; dim H¹ C_4 = 1, C_2×C_2 = 2")
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn commutativity_and_exterior(reports: &[(&str, u32, ReconstructionReport)]) -> Outcome {
    let mut failures: Vec<String> = reports
        .iter()
        .filter(|(_, _, r)| r.algebra_commutative != r.hull_commutative)
        .map(|(name, p, _)| format!("{name}/{p}: commutativity differs"))
        .collect();
    for p in [2, 3, 5] {
        for d in 1..=3 {
            let e = exterior_algebra(d, p, 3);
            let b = dual_bar(&e, 4);
            let dims = classical_hull(&b).weight_dims();
            let want: Vec<usize> = (0..=4).map(|w| binom(d + w - 1, w)).collect();
            if dims != want {
                failures.push(format!("Λ({d})/{p}: {dims:?} vs {want:?}"));
            }
            if quadratic_part_is_alternating(&e, &b) != Ok(true) {
                failures.push(format!("Λ({d})/{p}: weight-2 relations not alternating"));
            }
        }
    }
    fail_or(failures, "hull commutative iff algebra commutative; Λ(d) hulls are power series for d ≤ 3, w ≤ 4")
}

fn two_models() -> Outcome {
    let instances = [
        ("trunc_poly:2", 2, 4),
        ("trunc_poly:2", 3, 4),
        ("trunc_poly:3", 2, 4),
        ("trunc_poly:3", 3, 4),
        ("cyclic:2", 2, 4),
        ("cyclic:3", 3, 4),
        ("trunc_poly:4", 2, 3),
        ("trunc_poly:4", 3, 3),
        ("cyclic:4", 2, 3),
        ("elem_abelian:2", 2, 3),
    ];
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, p, depth) in instances {
        let t = Instant::now();
        match upsilon(&algebra(name, p), depth, 0, ARITY, &SizeGuard::default()) {
            Ok(out) if out.report.passed => {}
            Ok(out) => failures.push(format!("{name}/{p}: {:?}", out.report.gates.failures())),
            Err(e) => failures.push(format!("{name}/{p}: {e}")),
        }
        let el = t.elapsed();
        slowest = slowest.max(el);
        if el >= Duration::from_secs(300) {
            failures.push(format!("{name}/{p} took {}", secs(el)));
        }
    }
    fail_or(failures, format!("{} algebras, slowest {}", instances.len(), secs(slowest)))
}

fn change_of_group() -> Outcome {
    let mut failures = Vec::new();
    for (group, sub, p) in [("cyclic:4", "gen:2", 2), ("elem_abelian:2", "gen:2", 2), ("heisenberg", "center", 3)] {
        let inc = SubgroupInclusion::catalog(group, p, sub).unwrap();
        match diagram_check(&inc, p, &FunctorialityOptions::default()) {
            Ok(out) if out.report.passed && out.report.exact => {}
            Ok(out) => failures.push(format!("{group} ⊃ {sub}: exact {} {:?}", out.report.exact, out.report.gates.failures())),
            Err(e) => failures.push(format!("{group} ⊃ {sub}: {e}")),
        }
    }
    fail_or(failures, "C_2 ⊂ C_4, C_2 ⊂ C_2×C_2, Z(Heis) ⊂ Heis commute exactly")
}

fn fuzzing() -> Outcome {
    let t = Instant::now();
    let r = fuzz(7, 100, ARITY);
    let el = t.elapsed();
    let mut failures: Vec<String> =
        r.cases.iter().filter(|c| !c.failures.is_empty()).map(|c| format!("seed {}: {:?}", c.seed, c.failures)).collect();
    if el >= Duration::from_secs(300) {
        failures.push(format!("took {}", secs(el)));
    }
    fail_or(failures, format!("100 dgas, 0 violations, {} with m_≥3, {}", r.higher_operations, secs(el)))
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 7] = [
        &["ext", "--catalog", "trunc_poly:3", "--p", "3", "--max-degree", "4"],
        &["minimal-model", "--catalog", "cyclic:4", "--p", "2"],
        &["hull", "--catalog", "elem_abelian:2", "--p", "3"],
        &["verify", "--catalog", "cyclic:9", "--p", "3", "--seed", "5"],
        &["compare-models", "--catalog", "trunc_poly:3", "--p", "2"],
        &["restrict", "--catalog", "cyclic:4", "--p", "2", "--subgroup", "gen:2"],
        &["fuzz", "--seed", "7", "--count", "20"],
    ];
    let mut failures = Vec::new();
    for args in runs {
        let out: Vec<Vec<u8>> = ["1", "2"]
            .iter()
            .map(|threads| {
                let o = Command::new(env!("CARGO_BIN_EXE_ainfhull")).args(args).args(["--threads", threads]).output().unwrap();
                if !o.status.success() {
                    failures.push(format!("{} exited {:?}", args[0], o.status.code()));
                }
                o.stdout
            })
            .collect();
        if out[0] != out[1] || out[0].is_empty() {
            failures.push(format!("{} output differs", args[0]));
        }
    }
    fail_or(failures, format!("{} commands byte-identical across runs and thread counts", runs.len()))
}

fn main() -> ExitCode {
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let want = |n: usize| selected.is_empty() || selected.contains(&n);
    let mut all = true;
    let mut report = |n: usize, name: &str, run: &dyn Fn() -> Outcome| {
        if !want(n) {
            return;
        }
        let t = Instant::now();
        let o = run();
        all &= o.passed;
        println!("criterion {n:>2} {}: {name} [{}] ({})", if o.passed { "PASS" } else { "FAIL" }, o.detail, secs(t.elapsed()));
    };
    report(1, "retract laws", &retract_laws);
    report(2, "transferred structure, morphisms and left inverse", &transfer_checks);
    report(3, "m_n(α, ..., α) on truncated polynomials", &iterated_operations);
    let mut times = Vec::new();
    let mut reports: Vec<(&str, u32, ReconstructionReport)> = Vec::new();
    if [4, 5, 6].iter().any(|&n| want(n)) {
        for (name, p) in CATALOG {
            let t = Instant::now();
            reports.push((name, p, verify_reconstruction(&algebra(name, p), 0)));
            times.push(t.elapsed());
        }
    }
    report(4, "reconstruction", &|| reconstruction(&reports, &times));
    report(5, "independence of the retract", &|| independence(&reports));
    report(6, "commutativity and exterior hulls", &|| commutativity_and_exterior(&reports));
    report(7, "two models", &two_models);
    report(8, "change of group", &change_of_group);
    report(9, "fuzz", &fuzzing);
    report(10, "determinism", &determinism);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
