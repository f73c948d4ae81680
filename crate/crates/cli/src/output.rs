use etabridge::cosets::{
    coset_enumerate, compose, curve_data, cycle_string, millington_perms, standard_labeling, CurveData, SubgroupId,
};
use etabridge::modforms::{build_form, verify_identity, FormId, IdentityId, IdentityReport};
use etabridge::ode::{rect_grid, trace_scan, ScanConfig};
use etabridge::q8lattice::{class_of_point, e8_count, realization, verify_decomposition, Style};
use etabridge::qseries::GRID;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{CliError, GridSpec, NumericCheck, Outcome, RunConfig};

/// `"num/den"`, always with an explicit denominator.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn exponent_string(grid_exp: i64) -> String {
    ratio_string(&BigRational::new(BigInt::from(grid_exp), BigInt::from(GRID)))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map_err(|e| CliError::Failed(e.to_string()))
}

pub fn series_json(form: FormId, order: i64) -> Result<String, CliError> {
    let p = build_form(form, order).map_err(|e| CliError::Usage(e.to_string()))?;
    let (pi, sqrt3, cbrt2, zeta12) = p.scalar.exponents();
    let terms: Vec<Value> = p
        .series
        .terms()
        .map(|(e, c)| json!({ "exponent": exponent_string(e), "coefficient": ratio_string(c) }))
        .collect();
    to_json(&json!({
        "form": form.to_string(),
        "order": order,
        "prefactor": {
            "rational": ratio_string(p.scalar.magnitude_rational()),
            "pi": pi,
            "sqrt3": sqrt3,
            "cbrt2": cbrt2,
            "zeta12": zeta12,
            "display": p.scalar.to_string(),
        },
        "terms": terms,
    }))
}

pub fn exact_suite_json(order: i64) -> Result<(String, Outcome), CliError> {
    let reports: Vec<(IdentityId, Result<IdentityReport, String>)> = IdentityId::EXACT_SUITE
        .par_iter()
        .map(|&id| (id, verify_identity(id, order).map_err(|e| e.to_string())))
        .collect();
    let mut all = true;
    let mut results = Vec::new();
    for (id, r) in reports {
        let v = match r {
            Ok(IdentityReport::Pass { checked_order }) => {
                json!({ "name": id.name(), "status": "pass", "checked_through": exponent_string(checked_order) })
            }
            Ok(IdentityReport::Mismatch { exponent, lhs, rhs }) => {
                all = false;
                json!({
                    "name": id.name(),
                    "status": "fail",
                    "first_failure": { "exponent": exponent_string(exponent), "lhs": ratio_string(&lhs), "rhs": ratio_string(&rhs) },
                })
            }
            Err(e) => {
                all = false;
                json!({ "name": id.name(), "status": "error", "error": e })
            }
        };
        results.push(v);
    }
    let doc = json!({ "suite": "exact", "order": order, "passed": all, "results": results });
    Ok((to_json(&doc)?, Outcome::from_bool(all)))
}

pub fn numeric_suite_json(cfg: &RunConfig, checks: &[NumericCheck]) -> Result<String, CliError> {
    let all = checks.iter().all(|c| c.passed);
    to_json(&json!({
        "suite": "numeric",
        "order": cfg.order,
        "seed": cfg.seed,
        "passed": all,
        "results": checks,
    }))
}

pub fn decompose_json(box_size: i64, style: Style) -> Result<(String, Outcome), CliError> {
    let report = verify_decomposition(box_size);
    let mut class_map = Vec::new();
    for n in 0..4 {
        for m in 0..4 {
            let c = class_of_point(m, n);
            class_map.push(json!({ "m": m, "n": n, "k": c.k, "label": [c.label.0, c.label.1] }));
        }
    }
    let mut realizations = Vec::new();
    for k in 1..=8u8 {
        let r = realization(style, k).map_err(|e| CliError::Failed(e.to_string()))?;
        realizations.push(json!({ "k": k, "translate": r.translate, "basis": r.basis, "halfpoint": r.halfpoint }));
    }
    let ok = report.passed();
    let doc = json!({
        "box": box_size,
        "style": style.to_string(),
        "passed": ok,
        "checks": {
            "partition": report.partition_failures.is_empty(),
            "table": report.table_reproduced(),
            "pairing": report.pairing_failures.is_empty(),
            "styles_agree": report.style_failures.is_empty(),
            "equal_density": report.equal_density(),
        },
        "class_counts": report.class_counts,
        "class_map": class_map,
        "realizations": realizations,
    });
    Ok((to_json(&doc)?, Outcome::from_bool(ok)))
}

pub fn cosets_json(group: SubgroupId) -> Result<String, CliError> {
    let table = coset_enumerate(group);
    let CurveData { index, genus, e2, e3, cusp_widths } = curve_data(&table).map_err(|e| CliError::Failed(e.to_string()))?;
    let reps: Vec<String> = table.reps.iter().map(|m| m.to_string()).collect();
    let millington = if index == 6 {
        let (mu, sigma) = millington_perms(group, &standard_labeling()).map_err(|e| CliError::Failed(e.to_string()))?;
        json!({
            "labeling": standard_labeling().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "mu": cycle_string(&mu),
            "sigma": cycle_string(&sigma),
            "mu_sigma": cycle_string(&compose(&mu, &sigma)),
        })
    } else {
        Value::Null
    };
    to_json(&json!({
        "group": group.name(),
        "index": index,
        "genus": genus,
        "e2": e2,
        "e3": e3,
        "cusp_widths": cusp_widths,
        "representatives": reps,
        "perm_s": cycle_string(&table.perm_s),
        "perm_g": cycle_string(&table.perm_g),
        "perm_t": cycle_string(&table.perm_t),
        "millington": millington,
    }))
}

pub fn e8_json(max_m: i64) -> Result<String, CliError> {
    if max_m < 0 {
        return Err(CliError::Usage(format!("--max-m must be nonnegative, got {max_m}")));
    }
    let r = e8_count(max_m).map_err(|e| CliError::Usage(e.to_string()))?;
    serde_json::to_string(&r).map_err(|e| CliError::Failed(e.to_string()))
}

pub const SCAN_HEADER: [&str; 14] = [
    "b_re",
    "b_im",
    "trace_a_re",
    "trace_a_im",
    "trace_b_re",
    "trace_b_im",
    "trace_comm_re",
    "trace_comm_im",
    "wronskian_drift",
    "basepoint_re",
    "basepoint_im",
    "valid",
    "parabolic",
    "error",
];

pub fn scan_csv(grid: &GridSpec, cfg: &ScanConfig) -> Result<(String, Outcome), CliError> {
    let points = rect_grid(grid.re, grid.im, grid.n);
    let records = trace_scan(&points, cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SCAN_HEADER).map_err(|e| CliError::Failed(e.to_string()))?;
    for r in &records {
        let f = |x: f64| x.to_string();
        w.write_record([
            f(r.b.re),
            f(r.b.im),
            f(r.trace_a.re),
            f(r.trace_a.im),
            f(r.trace_b.re),
            f(r.trace_b.im),
            f(r.trace_comm.re),
            f(r.trace_comm.im),
            f(r.wronskian_drift),
            f(r.basepoint.re),
            f(r.basepoint.im),
            r.valid.to_string(),
            r.parabolic.to_string(),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(|e| CliError::Failed(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    let ok = records.iter().all(|r| r.valid);
    Ok((String::from_utf8(bytes).expect("csv output is utf-8"), Outcome::from_bool(ok)))
}
