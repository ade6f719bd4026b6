use std::fmt::Write as _;

use casimir_core::catalog::{catalog_entries, catalog_lookup};
use casimir_core::format::{emit_algebra_doc, emit_polynomial, emit_rep_label, parse_polynomial};
use casimir_core::invariants::{
    apply_field, coadjoint_fields, full_report_with, generic_rank_sampled, independent_subset,
    radical_subsystem_with,
};
use casimir_core::rational;
use casimir_core::semidirect::validate_levi;
use casimir_core::Error;
use serde_json::{json, Value};

use crate::input::{self, load, Loaded};
use crate::{Config, Failure, Report};

type Outcome = (Option<Report>, Option<Failure>);

fn fail(f: Failure) -> Outcome {
    (None, Some(f))
}

fn warnings_text(loaded: &Loaded) -> String {
    loaded.warnings.iter().map(|w| format!("warning: {w}\n")).collect()
}

pub fn check(file: &str, cfg: &Config) -> Outcome {
    let loaded = match load(file, cfg) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let alg = &loaded.algebra;
    let failures = alg.jacobi_check();
    let mut text = warnings_text(&loaded);
    let _ = writeln!(text, "name: {} (dim {})", loaded.name, alg.dim());
    if failures.is_empty() {
        text.push_str("jacobi: ok\n");
    } else {
        let _ = writeln!(text, "jacobi: {} failing triple(s)", failures.len());
        for f in failures.iter().take(10) {
            let residual: Vec<String> = f.residual.iter().map(rational::format).collect();
            let (i, j, k) = f.triple;
            let _ = writeln!(text, "  ({i}, {j}, {k}): residual ({})", residual.join(", "));
        }
    }
    let jacobi_json: Vec<Value> = failures
        .iter()
        .map(|f| {
            let (i, j, k) = f.triple;
            json!({"triple": [i, j, k], "residual": f.residual.iter().map(rational::format).collect::<Vec<_>>()})
        })
        .collect();
    let mut ok = failures.is_empty();
    let mut levi_json = Value::Null;
    if let Some(meta) = &loaded.levi {
        let rep = meta.rep.as_ref().map(emit_rep_label);
        match loaded.levi_pair().expect("metadata present") {
            Ok(pair) => {
                let report = validate_levi(&pair);
                ok &= report.is_clean();
                let status = if report.is_clean() { "ok" } else { "FAILED" };
                let _ = writeln!(
                    text,
                    "levi: {status} (levi_dim {}, rep {})",
                    meta.levi_dim,
                    rep.as_deref().unwrap_or("unlabelled")
                );
                for note in &report.notes {
                    let _ = writeln!(text, "  {note}");
                }
                let mut v = serde_json::to_value(&report).expect("serializable");
                v["levi_dim"] = json!(meta.levi_dim);
                v["rep"] = json!(rep);
                v["clean"] = json!(report.is_clean());
                levi_json = v;
            }
            Err(Failure::Input(msg)) => {
                ok = false;
                let _ = writeln!(text, "levi: FAILED ({msg})");
                levi_json = json!({"levi_dim": meta.levi_dim, "rep": rep, "clean": false, "notes": [msg]});
            }
            Err(other) => return fail(other),
        }
    }
    let json = json!({
        "name": loaded.name,
        "dim": alg.dim(),
        "jacobi": {"ok": failures.is_empty(), "failures": jacobi_json},
        "levi": levi_json,
        "ok": ok,
        "warnings": loaded.warnings,
    });
    let failure = (!ok).then(|| Failure::Input(String::new()));
    (Some(Report { text, json }), failure)
}

pub fn count(file: &str, cfg: &Config) -> Outcome {
    let loaded = match load(file, cfg) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let alg = &loaded.algebra;
    let rank = generic_rank_sampled(alg, &cfg.sampling());
    let n = alg.dim() - rank.rank;
    let mut text = warnings_text(&loaded);
    let ranks: Vec<String> = rank.trial_ranks.iter().map(|r| r.to_string()).collect();
    let _ = writeln!(text, "N = {n}");
    let _ = writeln!(text, "generic rank = {} of dim {}", rank.rank, alg.dim());
    let _ = writeln!(text, "trial ranks = {}", ranks.join(" "));
    let json = json!({
        "name": loaded.name,
        "N": n,
        "dim": alg.dim(),
        "generic_rank": rank.rank,
        "trial_ranks": rank.trial_ranks,
        "warnings": loaded.warnings,
    });
    (Some(Report { text, json }), None)
}

pub fn invariants(file: &str, radical_only: bool, cfg: &Config) -> Outcome {
    let loaded = match load(file, cfg) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let alg = &loaded.algebra;
    let basis = alg.basis();
    let sampling = cfg.sampling();
    let mut text = warnings_text(&loaded);
    let mut radical_json = Value::Null;
    if radical_only {
        let pair = match loaded.levi_pair() {
            Some(Ok(p)) => p,
            Some(Err(e)) => return fail(e),
            None => {
                return fail(Failure::Input(
                    "--radical-only needs Levi metadata (a \"levi\" object in the file)".into(),
                ))
            }
        };
        let sub = match radical_subsystem_with(&pair, &sampling) {
            Ok(s) => s,
            Err(Error::NonAbelianRadical) => {
                return fail(Failure::Input("--radical-only needs an abelian radical".into()))
            }
            Err(e) => return fail(Failure::Input(e.to_string())),
        };
        let solutions = sub.solutions(cfg.max_degree);
        let independent = independent_subset(&solutions, cfg.seed);
        let strings: Vec<String> = solutions.iter().map(|p| emit_polynomial(p, basis)).collect();
        let _ = writeln!(
            text,
            "radical subsystem: {} fields on {} radical variables, rank {}, {} independent solution(s)",
            sub.fields.len(),
            sub.radical_vars.len(),
            sub.rank.rank,
            sub.solution_count
        );
        let _ = writeln!(text, "radical solutions (degree <= {}):", cfg.max_degree);
        for &i in &independent {
            let _ = writeln!(text, "  {}", strings[i]);
        }
        radical_json = json!({
            "fields": sub.fields.len(),
            "radical_vars": sub.radical_vars.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "rank": sub.rank.rank,
            "solution_count": sub.solution_count,
            "solutions": strings,
            "independent_solutions": independent.iter().map(|&i| &strings[i]).collect::<Vec<_>>(),
        });
    }
    let report = full_report_with(alg, cfg.max_degree, &sampling);
    let _ = writeln!(text, "N = {}", report.n_invariants);
    let _ = writeln!(text, "generic rank = {} of dim {}", report.generic_rank, report.dim);
    let polys: Vec<String> = report
        .polynomial_invariants
        .iter()
        .map(|p| emit_polynomial(p, basis))
        .collect();
    let _ = writeln!(text, "polynomial invariants (degree <= {}): {}", report.degree_bound_used, polys.len());
    for p in &polys {
        let _ = writeln!(text, "  {p}");
    }
    let _ = writeln!(
        text,
        "functionally independent: {} of {}",
        report.independent_count, report.n_invariants
    );
    for &i in &report.independent {
        let _ = writeln!(text, "  {}", polys[i]);
    }
    if let Some(note) = &report.note {
        let _ = writeln!(text, "note: {note}");
    }
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["name"] = json!(loaded.name);
    json["warnings"] = json!(loaded.warnings);
    if radical_only {
        json["radical"] = radical_json;
    }
    (Some(Report { text, json }), None)
}

pub fn verify(file: &str, poly: &str, cfg: &Config) -> Outcome {
    let loaded = match load(file, cfg) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let alg = &loaded.algebra;
    let basis = alg.basis();
    let p = match parse_polynomial(poly, basis) {
        Ok(p) => p,
        Err(e) => return fail(Failure::Input(format!("--poly: {e}"))),
    };
    let mut residuals = Vec::new();
    for (i, field) in coadjoint_fields(alg).iter().enumerate() {
        let r = match apply_field(field, &p) {
            Ok(r) => r,
            Err(e) => return fail(Failure::Internal(e.to_string())),
        };
        if !r.is_zero() {
            residuals.push((i, emit_polynomial(&r, basis)));
        }
    }
    let invariant = residuals.is_empty();
    let canonical = emit_polynomial(&p, basis);
    let mut text = warnings_text(&loaded);
    if invariant {
        let _ = writeln!(text, "invariant: {canonical}");
    } else {
        let _ = writeln!(text, "not invariant: {canonical}");
        for (i, r) in &residuals {
            let _ = writeln!(text, "  {} applied gives {r}", basis[*i]);
        }
    }
    let json = json!({
        "name": loaded.name,
        "polynomial": canonical,
        "invariant": invariant,
        "residuals": residuals.iter().map(|(i, r)| json!({"generator": basis[*i], "value": r})).collect::<Vec<_>>(),
        "warnings": loaded.warnings,
    });
    let failure = (!invariant).then(|| Failure::Negative(String::new()));
    (Some(Report { text, json }), failure)
}

pub fn catalog_list() -> Outcome {
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for e in catalog_entries() {
        let dim = e.algebra().dim();
        let n = e.expected_n.map_or("derived".to_string(), |n| n.to_string());
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        rows.push([e.name.to_string(), dim.to_string(), n.clone(), params.join(","), e.summary.to_string()]);
        json_rows.push(json!({
            "name": e.name,
            "dim": dim,
            "expected_N": e.expected_n,
            "params": e.params.iter().map(|(k, v)| json!({"name": k, "default": v})).collect::<Vec<_>>(),
            "summary": e.summary,
        }));
    }
    let header = ["name", "dim", "N", "params", "summary"];
    let widths: Vec<usize> = (0..4)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0).max(header[c].len()))
        .collect();
    let mut text = String::new();
    let line = |cells: [&str; 5]| {
        let mut s = String::new();
        for c in 0..4 {
            let _ = write!(s, "{:<w$}  ", cells[c], w = widths[c]);
        }
        s.push_str(cells[4]);
        s.push('\n');
        s
    };
    text.push_str(&line(header));
    for r in &rows {
        text.push_str(&line([&r[0], &r[1], &r[2], &r[3], &r[4]]));
    }
    (Some(Report { text, json: Value::Array(json_rows) }), None)
}

pub fn catalog_show(name: &str, emit: bool, cfg: &Config) -> Outcome {
    let entry = match catalog_lookup(name) {
        Ok(e) => e,
        Err(e) => return fail(Failure::Input(e.to_string())),
    };
    let params = match input::params(cfg) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let inst = match entry.instantiate(&params) {
        Ok(i) => i,
        Err(e) => return fail(Failure::Input(e.to_string())),
    };
    for w in &inst.warnings {
        eprintln!("warning: {w}");
    }
    if emit {
        let doc = emit_algebra_doc(&inst.doc());
        let json: Value = serde_json::from_str(&doc).expect("emitted document is JSON");
        return (Some(Report { text: format!("{doc}\n"), json }), None);
    }
    let alg = &inst.algebra;
    let basis = alg.basis();
    let mut text = String::new();
    let _ = writeln!(text, "name: {}", inst.name);
    let _ = writeln!(text, "summary: {}", entry.summary);
    let _ = writeln!(text, "dim: {}", alg.dim());
    let _ = writeln!(text, "basis: {}", basis.join(" "));
    if let Some(m) = &inst.levi {
        let rep = m.rep.as_ref().map_or("unlabelled".to_string(), emit_rep_label);
        let _ = writeln!(text, "levi factor: first {} basis elements, representation {rep}", m.levi_dim);
    }
    let _ = writeln!(
        text,
        "expected N: {}",
        entry.expected_n_at(&inst.params).map_or("derived".into(), |n| n.to_string())
    );
    let mut brackets = Vec::new();
    for (&(i, j), terms) in alg.brackets() {
        let rhs: Vec<String> = terms
            .iter()
            .map(|(k, c)| format!("{} {}", rational::format(c), basis[*k]))
            .collect();
        brackets.push(format!("[{}, {}] = {}", basis[i], basis[j], rhs.join(" + ")));
    }
    text.push_str("brackets:\n");
    for b in &brackets {
        let _ = writeln!(text, "  {b}");
    }
    if !entry.known_invariants.is_empty() {
        text.push_str("known invariants:\n");
        for k in entry.known_invariants {
            let _ = writeln!(text, "  {k}");
        }
    }
    for n in entry.notes {
        let _ = writeln!(text, "note: {n}");
    }
    for w in &inst.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let json = json!({
        "name": inst.name,
        "summary": entry.summary,
        "dim": alg.dim(),
        "basis": basis,
        "levi_dim": inst.levi.as_ref().map(|m| m.levi_dim),
        "rep": inst.levi.as_ref().and_then(|m| m.rep.as_ref()).map(emit_rep_label),
        "expected_N": entry.expected_n_at(&inst.params),
        "params": inst.params.iter().map(|(k, v)| (k.clone(), json!(rational::format(v)))).collect::<serde_json::Map<_, _>>(),
        "brackets": brackets,
        "known_invariants": entry.known_invariants,
        "notes": entry.notes,
        "warnings": inst.warnings,
    });
    (Some(Report { text, json }), None)
}
