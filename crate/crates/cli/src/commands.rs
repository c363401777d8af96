use ainfhull::algebras::AugmentedAlgebra;
use ainfhull::changegroup::{diagram_check, FunctorialityOptions, SubgroupInclusion};
use ainfhull::graded::check_retract;
use ainfhull::hochschild::{default_degree_cap, ext_algebra, hochschild_dga};
use ainfhull::reconstruct::{reconstruct, ReconstructionOptions};
use ainfhull::transfer::{check_minimal_model, iterated_operation, minimal_model_seeded};
use ainfhull::twomodels::{upsilon, SizeGuard, TwoModelError};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{load_algebra, load_group};
use crate::names::{names_for, render_vector, Names};
use crate::{CliError, Run, Source};

/// Rendered operation lines are cut off here.
const MAX_LINES: usize = 500;

/// Widest dense block rendered term by term.
const MAX_RENDER_COLS: usize = 1 << 16;

fn with_fields(report: impl Serialize, fields: Value) -> Value {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    if let (Value::Object(map), Value::Object(extra)) = (&mut v, fields) {
        map.extend(extra);
    }
    v
}

fn header(label: &str, a: &AugmentedAlgebra) -> Value {
    json!({ "algebra": label, "p": a.p(), "dim": a.dim(), "nilpotency_index": a.nilpotency_index() })
}

/// Evaluations of an operation on basis tensors with nonzero value, as
/// `name(x,y,...) = value`. Returns false when lines were dropped.
fn render_evaluations(
    name: &str,
    pattern: &[i32],
    out_degree: i32,
    block: &ainfhull::linffp::Matrix,
    names: &Names,
    p: u32,
    lines: &mut Vec<String>,
) -> bool {
    let (Some(out_names), Some(slot_names)) =
        (names.get(&out_degree), pattern.iter().map(|d| names.get(d)).collect::<Option<Vec<_>>>())
    else {
        return true;
    };
    for col in 0..block.cols() {
        let value = block.col(col);
        if value.iter().all(|&c| c == 0) {
            continue;
        }
        if lines.len() >= MAX_LINES {
            return false;
        }
        let mut rest = col;
        let mut args = vec![String::new(); pattern.len()];
        for (slot, slot_names) in slot_names.iter().enumerate().rev() {
            args[slot] = slot_names[rest % slot_names.len()].clone();
            rest /= slot_names.len();
        }
        lines.push(format!("{name}({}) = {}", args.join(","), render_vector(&value, out_names, p)));
    }
    true
}

pub fn ext(source: &Source, run: &Run, max_degree: Option<usize>) -> Result<Value, CliError> {
    let (label, a) = load_algebra(source)?;
    let d = max_degree.unwrap_or_else(|| default_degree_cap(&a));
    if d == 0 {
        return Err(CliError::Input("--max-degree must be positive".into()));
    }
    let e = ext_algebra(&a, d, run.seed);
    let p = a.p();
    let names = names_for(e.dims.iter().enumerate().skip(1).map(|(n, &k)| (n as i32, k)));
    let mut lines = Vec::new();
    let mut complete = true;
    let mut products = Vec::new();
    for (&(x, y), m) in &e.products {
        products.push(json!({ "degrees": [x, y], "matrix": m.row_vecs() }));
        complete &= render_evaluations("·", &[x, y], x + y, m, &names, p, &mut lines);
    }
    // `·(α,β) = γ` reads better infix
    let lines: Vec<String> = lines
        .into_iter()
        .map(|l| match l.strip_prefix("·(").and_then(|s| s.split_once(") = ")) {
            Some((args, value)) => format!("{} = {value}", args.replace(',', "·")),
            None => l,
        })
        .collect();
    let gates = check_retract(&e.retract);
    let passed = gates.passed();
    let mut out = header(&label, &a);
    let extra = json!({
        "seed": run.seed,
        "max_degree": d,
        "dims": e.dims,
        "classes": names,
        "products": products,
        "cup_products": lines,
        "cup_products_complete": complete,
        "retract_fingerprint": e.retract.fingerprint(),
        "gates": gates,
        "passed": passed,
    });
    if let (Value::Object(m), Value::Object(x)) = (&mut out, extra) {
        m.extend(x);
    }
    Ok(out)
}

pub fn minimal_model(
    source: &Source,
    run: &Run,
    max_degree: Option<usize>,
    arity: Option<usize>,
) -> Result<Value, CliError> {
    let (label, a) = load_algebra(source)?;
    let d = max_degree.unwrap_or_else(|| default_degree_cap(&a));
    let n_cap = arity.unwrap_or(a.nilpotency_index().max(4));
    if d == 0 || n_cap < 2 {
        return Err(CliError::Input("--max-degree must be positive and --arity at least 2".into()));
    }
    let dga = hochschild_dga(&a, d);
    let mm = minimal_model_seeded(&dga, run.seed, n_cap);
    let model = &mm.model;
    let p = a.p();
    let names = names_for(model.dims().iter().map(|(&n, &k)| (n, k)));

    let mut lines = Vec::new();
    let mut complete = true;
    let mut arities = std::collections::BTreeSet::new();
    for (pattern, block) in model.ops() {
        if block.is_zero() {
            continue;
        }
        arities.insert(pattern.len());
        let out_degree = pattern.iter().sum::<i32>() + 2 - pattern.len() as i32;
        if model.slot_dims(pattern).iter().product::<usize>() > MAX_RENDER_COLS {
            complete = false;
            continue;
        }
        let name = format!("m_{}", pattern.len());
        complete &= render_evaluations(&name, pattern, out_degree, &block.to_dense(), &names, p, &mut lines);
    }

    // m_n(α, ..., α) on each degree-one class
    let mut iterated = Vec::new();
    if let (Some(ones), Some(twos)) = (names.get(&1), names.get(&2)) {
        for (j, alpha) in ones.iter().enumerate() {
            let mut e = vec![0; ones.len()];
            e[j] = 1;
            for n in 3..=n_cap {
                let v = iterated_operation(model, &e, n);
                if v.iter().any(|&c| c != 0) {
                    let args = vec![alpha.as_str(); n].join(",");
                    iterated.push(format!("m_{n}({args}) = {}", render_vector(&v, twos, p)));
                }
            }
        }
    }

    let trivial = model.is_trivial();
    let summary = if trivial {
        format!("trivial through arity {n_cap}")
    } else if let Some(first) = iterated.first() {
        first.clone()
    } else {
        format!("m_{} is the highest nonzero operation through arity {n_cap}", model.top_nonzero_arity())
    };
    let gates = check_minimal_model(&mm, n_cap);
    let passed = gates.passed();
    let mut out = header(&label, &a);
    let extra = json!({
        "seed": run.seed,
        "max_degree": d,
        "arity_cap": n_cap,
        "retract_fingerprint": mm.retract.fingerprint(),
        "ext_dims": std::iter::once(1).chain((1..=d as i32).map(|n| model.dim(n))).collect::<Vec<_>>(),
        "classes": names,
        "nonzero_arities": arities,
        "operations": lines,
        "operations_complete": complete,
        "iterated": iterated,
        "top_arity": model.top_nonzero_arity(),
        "trivial": trivial,
        "summary": summary,
        "gates": gates,
        "passed": passed,
    });
    if let (Value::Object(m), Value::Object(x)) = (&mut out, extra) {
        m.extend(x);
    }
    Ok(out)
}

fn reconstruction_options(a: &AugmentedAlgebra, run: &Run, weight: Option<usize>, arity: Option<usize>) -> ReconstructionOptions {
    let nu = a.nilpotency_index();
    let w = weight.unwrap_or(nu);
    ReconstructionOptions {
        arity_cap: Some(arity.unwrap_or(nu.max(4).max(w))),
        weight_cap: Some(w),
        seed: run.seed,
        ..Default::default()
    }
}

pub fn hull(source: &Source, run: &Run, weight: Option<usize>, arity: Option<usize>) -> Result<Value, CliError> {
    let (label, a) = load_algebra(source)?;
    let opts = reconstruction_options(&a, run, weight, arity);
    if opts.weight_cap == Some(0) {
        return Err(CliError::Input("--weight must be positive".into()));
    }
    let rec = reconstruct(&a, &opts);
    let r = &rec.report;
    let mut out = header(&label, &a);
    let extra = json!({
        "seed": run.seed,
        "weight_cap": r.weight_cap,
        "arity_cap": r.arity_cap,
        "ext_dims": r.ext_dims,
        "generators": r.hull_generators,
        "relations": r.hull_relations,
        "weight_dims": r.hull_weight_dims,
        "hull_dim": rec.hull.dim(),
        "hull_commutative": r.hull_commutative,
        "gates": r.gates,
        "passed": r.gates.passed(),
    });
    if let (Value::Object(m), Value::Object(x)) = (&mut out, extra) {
        m.extend(x);
    }
    Ok(out)
}

pub fn verify(source: &Source, run: &Run, weight: Option<usize>, arity: Option<usize>) -> Result<Value, CliError> {
    let (label, a) = load_algebra(source)?;
    let rec = reconstruct(&a, &reconstruction_options(&a, run, weight, arity));
    let passed = rec.report.isomorphism && rec.report.gates.passed();
    Ok(with_fields(&rec.report, json!({ "algebra": label, "passed": passed })))
}

pub fn compare_models(source: &Source, run: &Run, depth: Option<usize>, arity: usize) -> Result<Value, CliError> {
    let (label, a) = load_algebra(source)?;
    let guard = SizeGuard::default();
    let result = match depth {
        Some(d) => upsilon(&a, d, run.seed, arity, &guard),
        None => match upsilon(&a, 4, run.seed, arity, &guard) {
            Err(TwoModelError::TooLarge { .. }) => upsilon(&a, 3, run.seed, arity, &guard),
            other => other,
        },
    };
    let models = result.map_err(|e| CliError::Input(e.to_string()))?;
    let passed = models.report.passed;
    Ok(with_fields(&models.report, json!({ "algebra": label, "passed": passed })))
}

pub fn restrict(
    source: &Source,
    run: &Run,
    subgroup: &str,
    arity: Option<usize>,
    weight: usize,
) -> Result<Value, CliError> {
    let (label, g, p) = load_group(source)?;
    let inc = SubgroupInclusion::parse(g, subgroup).map_err(|e| CliError::Input(e.to_string()))?;
    let opts = FunctorialityOptions {
        seed_group: run.seed,
        seed_subgroup: run.seed.wrapping_add(1),
        arity_cap: arity,
        check_weight: weight,
    };
    let out = diagram_check(&inc, p, &opts).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(with_fields(&out.report, json!({ "group": label, "subgroup": subgroup })))
}

pub fn fuzz(run: &Run, count: usize, arity: usize) -> Result<Value, CliError> {
    if arity < 2 {
        return Err(CliError::Input("--arity must be at least 2".into()));
    }
    let report = ainfhull::fuzz::fuzz(run.seed, count, arity);
    let passed = report.violations == 0;
    Ok(with_fields(&report, json!({ "passed": passed })))
}
