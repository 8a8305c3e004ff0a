//! Command pipelines and artifact writing.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use coxeter_hecke::centralizer::{
    build_z, check_commutation, check_membership_coeffs, enumerate_basis, finite_classes, BasisReport,
};
use coxeter_hecke::class_poly::{class_poly_max, MinClassPolys};
use coxeter_hecke::conjugacy::{
    cyclic_shift_class, decide_finite, partial_decomposition, reduce_to_max, reduce_to_min, shift_graph_dot,
    shift_neighbors, twisted_class_size_check, u_plus,
};
use coxeter_hecke::hecke::{hecke_to_json, poly_to_json, Specialization};
use coxeter_hecke::{Element, HeckeElement, ParamPoly};
use log::info;
use serde_json::{json, Value};

use crate::config::{Command, Job, Variant};
use crate::error::CliError;

pub const SCHEMA: &str = "coxeter-hecke/v1";

/// What a command produced: a JSON result, an optional DOT graph, and
/// whether a verification it ran failed.
pub struct Outcome {
    pub result: Value,
    pub completeness: String,
    pub dot: Option<String>,
    pub verification_failure: Option<String>,
}

impl Outcome {
    fn json(result: Value, completeness: impl Into<String>) -> Self {
        Outcome { result, completeness: completeness.into(), dot: None, verification_failure: None }
    }
}

pub fn execute(job: &Job) -> Result<Outcome, CliError> {
    match job.command {
        Command::Classify => classify(job),
        Command::Orbit => orbit(job),
        Command::ShiftGraph => shift_graph(job),
        Command::ClassPoly => match job.variant {
            Variant::Max => class_poly_max_cmd(job),
            Variant::Min => class_poly_min_cmd(job),
        },
        Command::Centralizer => centralizer(job),
        Command::Verify => verify(job),
        Command::Decompose => decompose(job),
    }
}

fn budget(job: &Job) -> usize {
    job.caps.node_budget
}

fn classify(job: &Job) -> Result<Outcome, CliError> {
    let subset: Vec<Value> = job
        .sys
        .classify_subset(&job.j)
        .into_iter()
        .map(|(c, k)| json!({"component": c, "kind": k}))
        .collect();
    let reports = job
        .seeds
        .iter()
        .map(|w| Ok(serde_json::to_value(decide_finite(&job.sys, &job.j, w, budget(job))?).expect("report serializes")))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Outcome::json(
        json!({"subset": subset, "reports": reports}),
        "verdicts are exact; every finite orbit is listed in full",
    ))
}

fn orbit(job: &Job) -> Result<Outcome, CliError> {
    let (sys, j, b) = (&job.sys, &job.j, budget(job));
    let cap = job.caps.length_cap;
    let mut results = Vec::new();
    let mut nodes: BTreeSet<Element> = BTreeSet::new();
    for w in &job.seeds {
        let report = decide_finite(sys, j, w, b)?;
        let shift_class = cyclic_shift_class(sys, j, w, job.twist.as_ref(), b)?;
        let min_chain = reduce_to_min(sys, j, w, job.twist.as_ref(), b)?;
        let max_chain = reduce_to_max(sys, j, w, b)?;
        let up = u_plus(sys, j, w, cap.max(w.len()), b)?;
        match &report.orbit {
            Some(o) => nodes.extend(o.iter().cloned()),
            None => nodes.extend(up.elements.iter().cloned()),
        }
        results.push(json!({
            "seed": w,
            "verdict": report.verdict,
            "certificate": report.certificate,
            "orbit": report.orbit,
            "shift_class": shift_class,
            "min_chain": min_chain,
            "max_chain": max_chain,
            "u_plus": up,
        }));
    }
    let nodes: Vec<Element> = nodes.into_iter().collect();
    let mut out = Outcome::json(
        json!({"seeds": results}),
        format!("finite orbits are complete; u_plus is listed up to length {cap} and flagged when saturated"),
    );
    out.dot = Some(shift_graph_dot(sys, j, &nodes, job.names.as_deref()));
    Ok(out)
}

fn shift_graph(job: &Job) -> Result<Outcome, CliError> {
    let (sys, j) = (&job.sys, &job.j);
    let nodes = sys.ball(job.caps.length_cap, budget(job))?;
    let arrows: Vec<Value> = nodes
        .iter()
        .flat_map(|w| shift_neighbors(sys, j, w, None))
        .map(|a| serde_json::to_value(a).expect("arrow serializes"))
        .collect();
    let mut out = Outcome::json(
        json!({"nodes": nodes, "arrows": arrows}),
        format!("all elements of length at most {} are nodes", job.caps.length_cap),
    );
    out.dot = Some(shift_graph_dot(sys, j, &nodes, job.names.as_deref()));
    Ok(out)
}

fn specialized_poly(sp: &Specialization, p: &ParamPoly) -> Result<String, CliError> {
    Ok(sp.eval(p)?.to_string())
}

fn class_poly_max_cmd(job: &Job) -> Result<Outcome, CliError> {
    let (sys, j, b) = (&job.sys, &job.j, budget(job));
    let n = sys.n_classes();
    let (classes, completeness) = if job.seeds.is_empty() {
        let cap = job.caps.length_cap;
        (finite_classes(sys, j, cap, b)?, format!("classes complete up to length {cap}; each table is exact on its support"))
    } else {
        let reports = job.seeds.iter().map(|w| decide_finite(sys, j, w, b)).collect::<Result<Vec<_>, _>>()?;
        (reports, "one table per seed; each table is exact on its support".to_string())
    };
    let mut tables = Vec::new();
    for c in &classes {
        let t = class_poly_max(sys, j, c, b)?;
        let mut v = t.to_json(n);
        if let Some(sp) = &job.specialization {
            let vals = t
                .entries
                .iter()
                .map(|(w, p)| Ok(json!({"word": w, "value": specialized_poly(sp, p)?})))
                .collect::<Result<Vec<_>, CliError>>()?;
            v["specialized"] = Value::Array(vals);
        }
        v["orbit"] = json!(t.orbit);
        tables.push(v);
    }
    Ok(Outcome::json(json!({"variant": "max", "tables": tables}), completeness))
}

fn class_poly_min_cmd(job: &Job) -> Result<Outcome, CliError> {
    let sys = &job.sys;
    let mut mp = MinClassPolys::new(sys, budget(job))?;
    let classes: Vec<Value> = (0..mp.classes().len())
        .map(|i| json!({"id": i, "representative": mp.representative(i), "size": mp.classes()[i].orbit.as_ref().map_or(0, Vec::len)}))
        .collect();
    let elements = if job.seeds.is_empty() {
        let w0 = sys.longest_element(&sys.all_generators())?;
        sys.ball(w0.len(), budget(job))?
    } else {
        job.seeds.clone()
    };
    let mut rows = Vec::new();
    for w in &elements {
        let polys = mp.polys(w)?;
        let entries = polys
            .iter()
            .map(|(c, p)| {
                let mut e = json!({"class": c, "poly": poly_to_json(p, sys.n_classes()), "display": p.to_string()});
                if let Some(sp) = &job.specialization {
                    e["specialized"] = json!(specialized_poly(sp, p)?);
                }
                Ok(e)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        rows.push(json!({"word": w, "classes": entries}));
    }
    Ok(Outcome::json(
        json!({"variant": "min", "classes": classes, "rows": rows}),
        "the group is finite: every conjugacy class is listed",
    ))
}

fn specialized_z(sp: &Specialization, job: &Job, z: &HeckeElement) -> Result<Value, CliError> {
    let f = sp.apply(&job.sys, z)?;
    Ok(Value::Array(f.terms().map(|(w, c)| json!({"word": w, "coeff": c.to_string()})).collect()))
}

fn basis_json(job: &Job, report: &BasisReport) -> Result<Value, CliError> {
    let mut basis = report.to_json(job.sys.n_classes());
    if let Some(sp) = &job.specialization {
        for (v, e) in basis.as_array_mut().expect("basis is a list").iter_mut().zip(&report.elements) {
            v["specialized"] = specialized_z(sp, job, &e.basis.element)?;
        }
    }
    Ok(json!({
        "basis": basis,
        "count": report.elements.len(),
        "independent": report.independent,
        "complete": report.complete,
        "note": report.note,
    }))
}

fn centralizer(job: &Job) -> Result<Outcome, CliError> {
    let report = enumerate_basis(&job.sys, &job.j, job.caps.length_cap, budget(job))?;
    info!("{} basis elements", report.elements.len());
    Ok(Outcome::json(basis_json(job, &report)?, report.note.clone()))
}

fn verify(job: &Job) -> Result<Outcome, CliError> {
    let (sys, j) = (&job.sys, &job.j);
    if let Some(h) = &job.element {
        let violations = check_membership_coeffs(sys, j, h);
        let failing = check_commutation(sys, j, h);
        let ok = violations.is_empty() && failing.is_none();
        let result = json!({
            "element": hecke_to_json(h, sys.n_classes()),
            "coeffs": {"ok": violations.is_empty(), "violations": violations},
            "commutation": {"ok": failing.is_none(), "failing_generator": failing},
            "checks_agree": violations.is_empty() == failing.is_none(),
        });
        let mut out = Outcome::json(result, "both checks are exact over the whole support");
        if !ok {
            out.verification_failure = Some("element does not centralize H_J".into());
        }
        return Ok(out);
    }
    let report = if job.seeds.is_empty() {
        enumerate_basis(sys, j, job.caps.length_cap, budget(job))?
    } else {
        seeded_basis(job)?
    };
    let mut out = Outcome::json(basis_json(job, &report)?, report.note.clone());
    if !report.all_verified() {
        out.verification_failure = Some("a basis element failed verification".into());
    }
    Ok(out)
}

fn seeded_basis(job: &Job) -> Result<BasisReport, CliError> {
    let (sys, j, b) = (&job.sys, &job.j, budget(job));
    let mut elements = Vec::new();
    for w in &job.seeds {
        let r = decide_finite(sys, j, w, b)?;
        let basis = build_z(sys, j, &r, b)?;
        let coeffs_ok = check_membership_coeffs(sys, j, &basis.element).is_empty();
        let commutation_ok = check_commutation(sys, j, &basis.element).is_none();
        elements.push(coxeter_hecke::centralizer::VerifiedBasisElement { basis, coeffs_ok, commutation_ok });
    }
    let mut tops = BTreeSet::new();
    let independent = elements.iter().flat_map(|e| e.basis.leading_support(sys)).all(|w| tops.insert(w));
    Ok(BasisReport {
        j: j.clone(),
        length_cap: job.caps.length_cap,
        elements,
        independent,
        complete: false,
        note: "only the classes of the given seeds are listed".into(),
    })
}

fn decompose(job: &Job) -> Result<Outcome, CliError> {
    let (sys, j, b) = (&job.sys, &job.j, budget(job));
    let radius = job.caps.length_cap;
    let d = partial_decomposition(sys, j, radius, b)?;
    let mut checks = Vec::new();
    if sys.is_spherical(j) {
        for p in &d.pieces {
            for c in p.twisted_classes.iter().flatten() {
                checks.push(json!({"v": p.v, "class_rep": c[0], "ok": twisted_class_size_check(sys, j, p, c, b)?}));
            }
        }
    }
    let exactness = if d.coverage.exact { "exact" } else { "found by bounded search" };
    Ok(Outcome::json(
        json!({"decomposition": d, "cardinality_checks": checks}),
        format!("decomposition of the ball of radius {radius}; pieces {exactness}"),
    ))
}

/// The JSON artifact: schema tag, config echo, caps, completeness, result.
pub fn artifact(job: &Job, out: &Outcome) -> Value {
    json!({
        "schema": SCHEMA,
        "command": job.command.name(),
        "config": job.echo,
        "caps": job.caps,
        "completeness": out.completeness,
        "result": out.result,
    })
}

fn dot_artifact(job: &Job, out: &Outcome, dot: &str) -> String {
    let mut text = String::new();
    text.push_str(&format!("// schema: {SCHEMA}\n"));
    text.push_str(&format!("// config: {}\n", job.echo));
    text.push_str(&format!("// caps: {}\n", json!(job.caps)));
    text.push_str(&format!("// completeness: {}\n", out.completeness));
    text.push_str(dot);
    text
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

/// Writes the requested artifacts and returns their paths.
pub fn write_artifacts(job: &Job, out: &Outcome) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(&job.out_dir).map_err(|e| CliError::Io(format!("{}: {e}", job.out_dir.display())))?;
    let mut written = Vec::new();
    let stem = job.command.name();
    if job.format.json() {
        let path = job.out_dir.join(format!("{stem}.json"));
        let mut text = serde_json::to_string_pretty(&artifact(job, out)).expect("artifact serializes");
        text.push('\n');
        write_atomic(&path, text.as_bytes())?;
        written.push(path);
    }
    if let (true, Some(dot)) = (job.format.dot(), &out.dot) {
        let path = job.out_dir.join(format!("{stem}.dot"));
        write_atomic(&path, dot_artifact(job, out, dot).as_bytes())?;
        written.push(path);
    }
    Ok(written)
}
