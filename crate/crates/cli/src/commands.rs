use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use homstab::chains::{boundary_from_sss, connectivity_of, floor_div, reduced_homology, HomologyGroup};
use homstab::coeffsys::AnySystem;
use homstab::destab::build_wrw;
use homstab::foxhom::{
    braid_presentation, pure_braid_presentation, pure_generator_braid, symmetric_presentation, twisted_homology,
    Representation,
};
use homstab::linalg::{rat, Matrix, Rational};
use homstab::ranges::{evaluate, sweep, Axis, Coefficients, RangeQuery, Selector};
use homstab::reptheory::{
    multiplicity_h, multiplicity_oracle, observed_onset, pad, seminormal_matrices, stabilization_onset,
    Partition,
};
use homstab::stabgroupoid::{
    check_injectivity, check_local_cancellation, genus as genus_of, parse_descriptor, stable_genus, AnyFamily,
    ModuleDescriptor,
};
use homstab::Error;

use crate::output::{CliError, Outcome, Table};
use crate::{CheckArgs, DegreeArgs, FoxArgs, GenusArgs, MultiplicityArgs, RangesArgs, WrwArgs};

macro_rules! with_family {
    ($family:expr, $f:ident => $body:expr) => {
        match $family {
            AnyFamily::Symmetric($f) => $body,
            AnyFamily::Braid($f) => $body,
            AnyFamily::Wreath($f) => $body,
            AnyFamily::Table($f) => $body,
        }
    };
}

/// `4`, `2..6` (inclusive) or `1,3,5`.
pub fn parse_list(flag: &str, text: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Usage(format!("--{}: expected a number, a range a..b or a list, got {:?}", flag, text));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                if b < a {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn parse_degrees(flag: &str, text: &str) -> Result<Vec<usize>, CliError> {
    parse_list(flag, text)?
        .into_iter()
        .map(|v| usize::try_from(v).map_err(|_| CliError::Usage(format!("--{}: degrees must be nonnegative, got {}", flag, v))))
        .collect()
}

fn pool_map<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Result<Vec<R>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {}", e)))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

fn load_module(source: &str, window: usize) -> Result<ModuleDescriptor, CliError> {
    if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source).map_err(|e| CliError::Usage(format!("cannot read {}: {}", source, e)))?;
        return Ok(parse_descriptor(&text, window)?);
    }
    Ok(ModuleDescriptor::preset(source, window)?)
}

fn homology_cell(h: &[HomologyGroup]) -> String {
    h.iter()
        .map(|g| {
            let mut parts = Vec::new();
            if g.free_rank > 0 {
                parts.push(if g.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", g.free_rank) });
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{}", t)));
            let group = if parts.is_empty() { "0".to_string() } else { parts.join("+") };
            format!("{}:{}", g.degree, group)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

pub fn wrw_homology(a: &WrwArgs) -> Result<Outcome, CliError> {
    if a.k == 0 {
        return Err(CliError::Usage("--k must be positive".into()));
    }
    let degrees = parse_degrees("n", &a.n)?;
    let top = degrees.iter().copied().max().unwrap_or(0);
    let module = load_module(&a.module, top)?;
    let results = with_family!(&module.family, f => pool_map(a.jobs, &degrees, |&n| {
        let s = build_wrw(f, n, None)?;
        let h = reduced_homology(&boundary_from_sss(&s, true))?;
        Ok::<_, Error>((n, s.counts(), h))
    }))?;
    let mut rows = Vec::new();
    let mut table = Table::new(&["n", "simplices", "homology", "connectivity", "required", "pass"]);
    let mut all_pass = true;
    for r in results {
        let (n, counts, h) = r?;
        let conn = connectivity_of(&h);
        let required = floor_div(n as i64 - a.a, a.k as i64) - 1;
        let pass = conn.at_least(required);
        all_pass &= pass;
        let conn_cell = match conn {
            homstab::chains::Connectivity::Finite(c) => c.to_string(),
            homstab::chains::Connectivity::AllVanishing => "inf".to_string(),
        };
        table.push(vec![n.to_string(), joined(&counts), homology_cell(&h), conn_cell, required.to_string(), pass.to_string()]);
        rows.push(json!({
            "n": n,
            "simplices": counts,
            "homology": h,
            "connectivity": conn,
            "required": required,
            "pass": pass,
        }));
    }
    let payload = json!({ "module": module.family.name(), "k": a.k, "a": a.a, "rows": rows, "pass": all_pass });
    Ok(Outcome { payload, table })
}

pub fn coeff_degree(a: &DegreeArgs) -> Result<Outcome, CliError> {
    let system = AnySystem::preset(&a.system, a.window)?;
    let report = system.degree_report(a.r_max, a.window)?;
    let full = system.to_json();
    let summary: serde_json::Map<String, Value> = ["name", "kind", "field", "window", "dims", "metadata"]
        .iter()
        .filter_map(|k| full.get(*k).map(|v| (k.to_string(), v.clone())))
        .collect();
    let mut table = Table::new(&["depth", "r", "window", "dims", "kernel_vanishes_from", "cokernel_at", "n"]);
    for s in &report.trace {
        table.push(vec![
            s.depth.to_string(),
            s.r.to_string(),
            s.window.to_string(),
            joined(&s.dims),
            opt(s.kernel_vanishes_from),
            opt(s.cokernel_at),
            opt(s.n),
        ]);
    }
    let payload = json!({ "system": summary, "report": report, "replays": report.replays() });
    Ok(Outcome { payload, table })
}

pub fn multiplicity(a: &MultiplicityArgs) -> Result<Outcome, CliError> {
    let lambda: Partition = a.lambda.parse()?;
    if a.i > 1 {
        return Err(Error::InvalidQuery(format!("only H_0 and H_1 are computed, got i = {}", a.i)).into());
    }
    let degrees = parse_degrees("n", &a.n)?;
    let cells = pool_map(a.jobs, &degrees, |&n| {
        let value = multiplicity_h(&lambda, n, a.i);
        let oracle = (a.i == 1).then(|| multiplicity_oracle(&lambda, n).ok()).flatten();
        (n, value, oracle)
    })?;
    let onset = stabilization_onset(&lambda, a.i);
    let mut rows = Vec::new();
    let mut table = Table::new(&["n", "value", "oracle", "error"]);
    let mut values = Vec::new();
    for (n, value, oracle) in cells {
        let (v, err) = match value {
            Ok(v) => {
                values.push((n, v));
                (Some(v), None)
            }
            Err(e) if e.is_internal() => return Err(e.into()),
            Err(e) => (None, Some(e.to_string())),
        };
        table.push(vec![n.to_string(), opt(v), opt(oracle), err.clone().unwrap_or_default()]);
        rows.push(json!({ "n": n, "value": v, "oracle": oracle, "error": err }));
    }
    let stable: Vec<usize> = values.iter().filter(|(n, _)| *n >= onset).map(|&(_, v)| v).collect();
    let constant_from_onset = stable.windows(2).all(|w| w[0] == w[1]);
    let payload = json!({
        "lambda": lambda.to_string(),
        "i": a.i,
        "onset": onset,
        "observed_onset": observed_onset(&values),
        "constant_from_onset": constant_from_onset,
        "rows": rows,
    });
    Ok(Outcome { payload, table })
}

fn range_row(q: &RangeQuery, answer: Option<(i64, i64, String)>, error: Option<String>) -> Vec<String> {
    let (iso, epi, note) = answer.map_or((String::new(), String::new(), String::new()), |(i, e, n)| (i.to_string(), e.to_string(), n));
    vec![
        q.selector.to_string(),
        opt(q.n),
        opt(q.k),
        opt(q.r),
        opt(q.big_n),
        opt(q.u),
        opt(q.m),
        q.coefficients.map_or(String::new(), |c| serde_json::to_value(c).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()),
        q.improved.to_string(),
        iso,
        epi,
        note,
        error.unwrap_or_default(),
    ]
}

pub fn ranges(a: &RangesArgs) -> Result<Outcome, CliError> {
    let selector: Selector = a.selector.parse()?;
    let mut base = RangeQuery::new(selector).improved(a.improved);
    if let Some(c) = &a.coefficients {
        base = base.coefficients(c.parse::<Coefficients>()?);
    }
    let mut axes = Vec::new();
    let params: [(&str, Axis, &Option<String>); 6] = [
        ("n", Axis::N, &a.n),
        ("k", Axis::K, &a.k),
        ("r", Axis::R, &a.r),
        ("N", Axis::BigN, &a.big_n),
        ("u", Axis::U, &a.u),
        ("m", Axis::M, &a.m),
    ];
    for (flag, axis, value) in params {
        let Some(text) = value else { continue };
        let values = parse_list(flag, text)?;
        if values.len() == 1 {
            base = match axis {
                Axis::N => base.n(values[0]),
                Axis::K => base.k(values[0]),
                Axis::R => base.r(values[0]),
                Axis::BigN => base.big_n(values[0]),
                Axis::U => base.u(values[0]),
                Axis::M => base.m(values[0]),
            };
        } else {
            axes.push((axis, values));
        }
    }
    let headers = ["selector", "n", "k", "r", "N", "u", "m", "coefficients", "improved", "iso_max", "epi_max", "note", "error"];
    let mut table = Table::new(&headers);
    if axes.is_empty() {
        let answer = evaluate(&base)?;
        table.push(range_row(&base, Some((answer.iso_max, answer.epi_max, answer.note.clone())), None));
        return Ok(Outcome { payload: json!({ "query": base, "answer": answer }), table });
    }
    let rows = sweep(&base, &axes);
    for r in &rows {
        let answer = r.answer.as_ref().map(|x| (x.iso_max, x.epi_max, x.note.clone()));
        table.push(range_row(&r.query, answer, r.error.clone()));
    }
    Ok(Outcome { payload: json!({ "base": base, "rows": rows }), table })
}

fn braid_generator_matrices(n: usize, coefficients: &str) -> Result<Vec<Matrix<Rational>>, CliError> {
    let g = n - 1;
    let (name, arg) = coefficients.split_once(':').map_or((coefficients, None), |(a, b)| (a, Some(b)));
    match (name, arg) {
        ("trivial", None) => Ok(vec![Matrix::identity(1); g]),
        ("sign", None) => Ok(vec![Matrix::scalar(1, rat(-1, 1)); g]),
        ("burau", Some(t)) => {
            let t: Rational = t.parse().map_err(|_| Error::InvalidQuery(format!("bad Burau parameter {:?}", t)))?;
            Ok((1..n)
                .map(|i| {
                    let mut m = Matrix::identity(n);
                    m.set(i - 1, i - 1, rat(1, 1) - t.clone());
                    m.set(i - 1, i, t.clone());
                    m.set(i, i - 1, rat(1, 1));
                    m.set(i, i, rat(0, 1));
                    m
                })
                .collect())
        }
        ("specht", Some(p)) => {
            let lambda: Partition = p.parse()?;
            let shape = if lambda.size() == n { lambda } else { pad(&lambda, n)? };
            Ok(seminormal_matrices(&shape))
        }
        _ => Err(Error::InvalidQuery(format!(
            "unknown coefficients {:?}; known: trivial, sign, burau:<t>, specht:<partition>",
            coefficients
        ))
        .into()),
    }
}

pub fn fox_h(a: &FoxArgs) -> Result<Outcome, CliError> {
    if a.n < 2 {
        return Err(Error::InvalidQuery(format!("presentations need n >= 2, got {}", a.n)).into());
    }
    let mats = braid_generator_matrices(a.n, &a.coefficients)?;
    let dim = mats.first().map_or(1, Matrix::rows);
    let braid_rep = Representation::new(dim, mats)?;
    let (presentation, rho) = match a.presentation.as_str() {
        "braid" => (braid_presentation(a.n), braid_rep),
        "sym" | "symmetric" => (symmetric_presentation(a.n), braid_rep),
        "pure-braid" | "pure" => {
            let mut mats = Vec::new();
            for i in 1..=a.n {
                for j in i + 1..=a.n {
                    mats.push(braid_rep.eval(pure_generator_braid(a.n, i, j).letters()));
                }
            }
            (pure_braid_presentation(a.n), Representation::new(dim, mats)?)
        }
        other => {
            return Err(Error::InvalidQuery(format!("unknown presentation {:?}; known: braid, sym, pure-braid", other)).into())
        }
    };
    let d = twisted_homology(&presentation, &rho, a.i)?;
    let mut table = Table::new(&["presentation", "n", "coefficients", "i", "dimension"]);
    table.push(vec![a.presentation.clone(), a.n.to_string(), a.coefficients.clone(), a.i.to_string(), d.to_string()]);
    let payload = json!({
        "dimension": d,
        "generators": presentation.generators(),
        "relators": presentation.relators().len(),
        "representation_dim": rho.dim(),
    });
    Ok(Outcome { payload, table })
}

pub fn genus(a: &GenusArgs) -> Result<Outcome, CliError> {
    let module = load_module(&a.module, a.window)?;
    let mut rows = Vec::new();
    let mut table = Table::new(&["object", "grade", "genus", "stable_genus"]);
    let cell = |v: &Value| match (v["kind"].as_str(), &v["value"]) {
        (Some("finite"), x) => x.to_string(),
        (Some("at-least"), x) => format!(">={}", x),
        _ => "inf".to_string(),
    };
    for (k, obj) in module.objects.objects().iter().enumerate() {
        let g = serde_json::to_value(genus_of(&module.objects, k, a.bound)?).expect("serializable");
        let s = serde_json::to_value(stable_genus(&module.objects, k, a.bound)?).expect("serializable");
        let grade = match obj.grade {
            homstab::stabgroupoid::Grade::Finite(x) => x.to_string(),
            homstab::stabgroupoid::Grade::Infinite => "inf".to_string(),
        };
        table.push(vec![obj.name.clone(), grade, cell(&g), cell(&s)]);
        rows.push(json!({ "object": obj.name, "grade": obj.grade, "genus": g, "stable_genus": s }));
    }
    Ok(Outcome { payload: json!({ "module": module.family.name(), "bound": a.bound, "rows": rows }), table })
}

pub fn check_module(a: &CheckArgs) -> Result<Outcome, CliError> {
    let module = load_module(&a.module, a.n)?;
    let inj = with_family!(&module.family, f => check_injectivity(f, a.n, a.budget, a.seed));
    let mut table = Table::new(&["check", "subject", "mode", "checked", "holds", "witness"]);
    for r in &inj.rows {
        let mode = serde_json::to_value(r.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        table.push(vec![
            "injectivity".into(),
            format!("{}->{}", r.degree, r.degree + 1),
            mode,
            r.checked.to_string(),
            r.injective.to_string(),
            r.witness.clone().unwrap_or_default(),
        ]);
    }
    let mut cancellation = Vec::new();
    let mut cancellative = true;
    for k in 0..module.objects.len() {
        let c = check_local_cancellation(&module.objects, k, a.n)?;
        cancellative &= c.holds;
        let witness = c.failure.as_ref().map(|f| format!("{} + X^{} vs {} + X^{}", f.y, f.m, c.object, f.n)).unwrap_or_default();
        table.push(vec!["cancellation".into(), c.object.clone(), "exact".into(), c.checked.to_string(), c.holds.to_string(), witness]);
        cancellation.push(c);
    }
    let payload = json!({
        "module": module.family.name(),
        "injective": inj.injective,
        "injectivity_exact": inj.exact,
        "injectivity": inj,
        "cancellative": cancellative,
        "cancellation": cancellation,
    });
    Ok(Outcome { payload, table })
}
