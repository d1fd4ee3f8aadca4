use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use orbifusion::catalog::{self, NO_GRAPH_CHANGE};
use orbifusion::graph::{fold_graph, induced_graph_symmetry, recognize};
use orbifusion::io;
use orbifusion::orbifold::{
    check_assumptions, conjugacy_assignment, global_dim_check, invertible_output_group,
    obstruction_bound, orbifold_sectors, resolve_obstruction, AssumptionReport, PieceConjugacy,
};
use orbifusion::su3::{self, Weight};
use orbifusion::{
    Assumption, BipartiteGraph, Error, FusionRing, GraphSymmetry, ObstructionValue, OrbifoldInput,
    Result, SymmetryAction,
};

use crate::{OrbifoldArgs, Outcome};

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

/// Reads a ring and rejects it unless every axiom holds.
fn load_valid_ring(path: &Path) -> Result<FusionRing> {
    let ring = io::read_ring(path)?;
    require_valid(&ring)?;
    Ok(ring)
}

fn require_valid(ring: &FusionRing) -> Result<()> {
    let report = ring.validate();
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Precondition(format!(
            "ring axiom violated: {} ({} failing tuple(s), first: {})",
            v.axiom,
            v.count,
            v.witnesses.first().map(|w| w.detail.as_str()).unwrap_or("-")
        ))),
    }
}

pub fn validate(path: &Path) -> Result<Outcome> {
    let ring = io::read_ring(path)?;
    let report = ring.validate();
    let mut text = String::new();
    if report.passed() {
        let _ = writeln!(text, "ring with {} labels: all axioms hold", ring.rank());
    } else {
        for v in &report.violations {
            let _ = writeln!(text, "FAIL {} ({} failing tuple(s))", v.axiom, v.count);
            for w in &v.witnesses {
                let _ = writeln!(text, "  [{}] {}", w.labels.join(", "), w.detail);
            }
        }
    }
    Ok(Outcome {
        text,
        json: json!({ "rank": ring.rank(), "passed": report.passed(), "report": to_value(&report) }),
        ok: report.passed(),
    })
}

pub fn dims(path: &Path) -> Result<Outcome> {
    let ring = load_valid_ring(path)?;
    let dims = ring.fp_dimensions()?;
    let mut text = String::new();
    let width = ring.labels().iter().map(String::len).max().unwrap_or(0);
    for (i, label) in ring.labels().iter().enumerate() {
        let _ = writeln!(text, "{label:<width$}  {:.12}", dims.get(i));
    }
    let _ = writeln!(text, "global dimension  {:.12}", dims.global_dimension());
    let table: serde_json::Map<String, Value> = ring
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), json!(dims.get(i))))
        .collect();
    Ok(Outcome {
        text,
        json: json!({ "dims": table, "global_dimension": dims.global_dimension() }),
        ok: true,
    })
}

fn assumption_error(report: &AssumptionReport) -> Option<Error> {
    if !report.a1.passed {
        return Some(Error::Assumption { item: Assumption::A1, detail: report.a1.detail.clone() });
    }
    if !report.a3.passed {
        return Some(Error::Assumption { item: Assumption::A3, detail: report.a3.detail.clone() });
    }
    None
}

fn write_assumptions(text: &mut String, report: &AssumptionReport) {
    for (name, status) in [("A1", &report.a1), ("A2", &report.a2), ("A3", &report.a3)] {
        let mark = if status.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(text, "{mark} ({name}) {}", status.detail);
    }
}

pub fn obstruction(path: &Path, alpha: &str, rho: &str) -> Result<Outcome> {
    let ring = load_valid_ring(path)?;
    let action = SymmetryAction::cyclic(&ring, alpha)?;
    // The gcd criterion does not involve A2; report it as not attested.
    let input = OrbifoldInput::new(action, rho, false)?;
    let report = check_assumptions(&input);
    if let Some(err) = assumption_error(&report) {
        return Err(err);
    }
    let verdict = obstruction_bound(&input)?;
    let text = format!(
        "m = dim(rho, rho^2) = {}\nn = {}\ngcd(m, n) = {}\nverdict: {}\n",
        verdict.m,
        verdict.n,
        gcd(verdict.m, verdict.n),
        verdict.verdict
    );
    Ok(Outcome {
        text,
        json: json!({ "m": verdict.m, "n": verdict.n, "gcd": gcd(verdict.m, verdict.n), "verdict": verdict.verdict }),
        ok: true,
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct OrbifoldJob {
    ring: FusionRing,
    alpha: String,
    rho: String,
    obstruction: Option<ObstructionValue>,
}

/// Checks every flag and reads every input before any computation.
fn prepare_orbifold(args: &OrbifoldArgs) -> Result<OrbifoldJob> {
    let a2 = || Error::Assumption {
        item: Assumption::A2,
        detail: "the Loi invariant of alpha cannot be computed from fusion data; \
                 attest that it is trivial with --assume-loi-trivial"
            .into(),
    };
    if let Some(req) = &args.request {
        let req = io::read_request(req)?;
        if !(req.loi_trivial || args.assume_loi_trivial) {
            return Err(a2());
        }
        return Ok(OrbifoldJob {
            ring: req.ring,
            alpha: req.alpha,
            rho: req.rho,
            obstruction: req.obstruction,
        });
    }
    if !args.assume_loi_trivial {
        return Err(a2());
    }
    let missing = |what: &str| Error::Schema(format!("missing {what}"));
    let ring_path = args.ring.as_ref().ok_or_else(|| missing("ring file (or --request)"))?;
    let alpha = args.alpha.clone().ok_or_else(|| missing("--alpha"))?;
    let rho = args.rho.clone().ok_or_else(|| missing("--rho"))?;
    let obstruction = args
        .obstruction
        .as_deref()
        .map(io::parse_obstruction_arg)
        .transpose()?;
    Ok(OrbifoldJob {
        ring: io::read_ring(ring_path)?,
        alpha,
        rho,
        obstruction,
    })
}

pub fn orbifold(args: &OrbifoldArgs) -> Result<Outcome> {
    let job = prepare_orbifold(args)?;
    let graph = args.graph.as_deref().map(io::read_graph).transpose()?;
    let perm = args.perm.as_deref().map(io::read_permutation).transpose()?;
    require_valid(&job.ring)?;
    let ring = &job.ring;

    let action = SymmetryAction::cyclic(ring, &job.alpha)?;
    let input = OrbifoldInput::new(action, &job.rho, true)?;
    let assumptions = check_assumptions(&input);
    if let Some(err) = assumption_error(&assumptions) {
        return Err(err);
    }
    let verdict = obstruction_bound(&input)?;
    let value = resolve_obstruction(&verdict, job.obstruction).map_err(|e| match e {
        Error::ExplicitInputRequired(msg) => Error::ExplicitInputRequired(format!(
            "{msg}; pass --obstruction j/n"
        )),
        other => other,
    })?;
    let sectors = orbifold_sectors(&input, value)?;

    let mut text = String::new();
    write_assumptions(&mut text, &assumptions);
    let _ = writeln!(
        text,
        "m = {}, n = {}, verdict: {}, obstruction: {}",
        verdict.m, verdict.n, verdict.verdict, value
    );
    let _ = writeln!(text, "sectors ({}):", sectors.sectors.len());
    for s in &sectors.sectors {
        let detail = match sectors.merged.iter().find(|c| c.name == s.name) {
            Some(c) => format!("merged {{{}}}", c.members.join(", ")),
            None => format!("piece of {}", s.origin),
        };
        let _ = writeln!(text, "  {:<12} dim {:.9}  {detail}", s.name, s.dimension);
    }
    let _ = writeln!(text, "dual action:");
    for (from, to) in &sectors.dual_perm {
        let _ = writeln!(text, "  {from} -> {to}");
    }

    let mut report = json!({
        "assumptions": to_value(&assumptions),
        "verdict": to_value(&verdict),
        "obstruction": to_value(&value),
        "sectors": to_value(&sectors),
    });
    let mut ok = true;

    if value.is_trivial() {
        let conj = conjugacy_assignment(&sectors)?;
        let _ = writeln!(text, "conjugacy:");
        for family in &conj.split {
            let desc = match &family.outcome {
                PieceConjugacy::Determined(p) => format!("{p:?}"),
                PieceConjugacy::Undetermined(ps) => {
                    let names: Vec<String> = ps.iter().map(|p| format!("{p:?}")).collect();
                    format!("undetermined: {}", names.join(" or "))
                }
                PieceConjugacy::PairedWith { family } => format!("paired with pieces of {family}"),
            };
            let _ = writeln!(text, "  pieces of {}: {desc}", family.fixed);
        }
        for (m, c) in &conj.merged {
            if m != c {
                let _ = writeln!(text, "  {m} <-> {c}");
            }
        }
        match invertible_output_group(&sectors, &conj) {
            Ok(g) => {
                let _ = writeln!(text, "dimension-1 sectors form {g}");
                report["output_group"] = to_value(&g);
            }
            Err(e) => {
                let _ = writeln!(text, "dimension-1 sectors: group not determined ({e})");
            }
        }
        let check = global_dim_check(ring, &sectors)?;
        let _ = writeln!(
            text,
            "global dimension: {:.9} -> {:.9} (expected {:.9}, rel. error {:.2e}) {}",
            check.input_sum,
            check.output_sum,
            check.input_sum / f64::from(check.n),
            check.relative_error,
            if check.passed { "ok" } else { "FAIL" }
        );
        ok &= check.passed;
        report["conjugacy"] = to_value(&conj);
        report["global_dim"] = to_value(&check);
    }

    if let Some(graph) = &graph {
        if !value.is_trivial() {
            let _ = writeln!(text, "graph: {NO_GRAPH_CHANGE}");
            report["graph"] = json!({ "note": NO_GRAPH_CHANGE });
        } else {
            let sym = match &perm {
                Some(map) => GraphSymmetry::from_names(graph, map, input.n())?,
                None => induced_graph_symmetry(ring, &input.action, graph, None)?,
            };
            let (value, folded) = fold_report(&mut text, graph, &sym)?;
            ok &= value["norm_preserved"].as_bool().unwrap_or(false);
            report["graph"] = value;
            if let Some(dot) = &args.dot {
                io::write_text(dot, &folded.to_dot("orbifold"))?;
            }
        }
    }

    Ok(Outcome { text, json: report, ok })
}

fn fold_report(
    text: &mut String,
    graph: &BipartiteGraph,
    sym: &GraphSymmetry<'_>,
) -> Result<(Value, BipartiteGraph)> {
    let folded = fold_graph(sym)?;
    let before = graph.pf_norm()?;
    let after = folded.pf_norm()?;
    let class = recognize(&folded);
    let preserved = (before - after).abs() < catalog::NORM_PRESERVATION_TOLERANCE;
    let _ = writeln!(text, "graph: {} -> {class}", recognize(graph));
    let _ = writeln!(
        text,
        "graph norm: {before:.12} -> {after:.12} {}",
        if preserved { "ok" } else { "FAIL" }
    );
    let value = json!({
        "original": recognize(graph).to_string(),
        "folded": class.to_string(),
        "original_norm": before,
        "folded_norm": after,
        "norm_preserved": preserved,
        "folded_graph": to_value(&io::GraphFile::from_graph(&folded)),
    });
    Ok((value, folded))
}

pub fn graph_identify(path: &Path, dot: Option<&Path>) -> Result<Outcome> {
    let graph = io::read_graph(path)?;
    let class = recognize(&graph);
    let norm = graph.pf_norm()?;
    if let Some(dot) = dot {
        io::write_text(dot, &graph.to_dot("graph"))?;
    }
    Ok(Outcome {
        text: format!("{class}\nnorm {norm:.12}\nindex {:.12}\n", norm * norm),
        json: json!({ "class": class.to_string(), "dynkin": to_value(&class), "norm": norm, "index": norm * norm }),
        ok: true,
    })
}

pub fn graph_fold(
    path: &Path,
    perm: &Path,
    order: u32,
    out: Option<&Path>,
    dot: Option<&Path>,
) -> Result<Outcome> {
    let graph = io::read_graph(path)?;
    let map = io::read_permutation(perm)?;
    let sym = GraphSymmetry::from_names(&graph, &map, order)?;
    let mut text = String::new();
    let (value, folded) = fold_report(&mut text, &graph, &sym)?;
    if let Some(out) = out {
        io::write_graph(out, &folded)?;
    }
    if let Some(dot) = dot {
        io::write_text(dot, &folded.to_dot("folded"))?;
    }
    let ok = value["norm_preserved"].as_bool().unwrap_or(false);
    Ok(Outcome { text, json: value, ok })
}

fn parse_weight(s: &str, level: u32) -> Result<Weight> {
    let w: Weight = s.parse()?;
    if !w.is_admissible(level) {
        return Err(Error::Precondition(format!(
            "weight ({w}) is not admissible at level {level} (a + b > {level})"
        )));
    }
    Ok(w)
}

pub fn su3_fuse(level: u32, lambda: &str, mu: &str) -> Result<Outcome> {
    let (l, m) = (parse_weight(lambda, level)?, parse_weight(mu, level)?);
    let product = su3::kac_walton(l, m, level)?;
    let terms: Vec<String> = product
        .iter()
        .map(|(w, &c)| if c == 1 { format!("({w})") } else { format!("{c}({w})") })
        .collect();
    let text = format!("({l}) x ({m}) = {}\n", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    let map: serde_json::Map<String, Value> =
        product.iter().map(|(w, &c)| (w.label(), json!(c))).collect();
    Ok(Outcome { text, json: Value::Object(map), ok: true })
}

pub fn su3_m(k: u32) -> Result<Outcome> {
    let count = su3::obstruction_m(k)?;
    let text = format!(
        "level {}: rho = ({}), m = {}, gcd(m, 3) = {}, verdict: {}\n",
        count.level, count.rho, count.m, count.gcd_with_3, count.verdict.verdict
    );
    Ok(Outcome { text, json: to_value(&count), ok: true })
}

pub fn su3_ring(level: u32, triality_zero: bool, out: Option<&Path>) -> Result<Outcome> {
    let ring = if triality_zero {
        su3::triality_zero_ring(level)?
    } else {
        su3::su3_ring(level)?
    };
    let doc = io::ring_to_json(&ring);
    let text = match out {
        Some(path) => {
            io::write_text(path, &doc)?;
            format!("wrote {} labels to {}\n", ring.rank(), path.display())
        }
        None => doc.clone(),
    };
    let json: Value = serde_json::from_str(&doc).expect("valid ring document");
    Ok(Outcome { text, json, ok: true })
}

pub fn catalog_list() -> Result<Outcome> {
    let names = catalog::names();
    let mut text = String::new();
    for name in &names {
        let entry = catalog::build(name)?;
        let _ = writeln!(
            text,
            "{name:<16} rank {:>3}  alpha {:<6} rho {:<6} n = {}",
            entry.ring.rank(),
            entry.alpha,
            entry.rho,
            entry.n
        );
    }
    Ok(Outcome { text, json: json!(names), ok: true })
}

pub fn catalog_run(name: Option<&str>) -> Result<Outcome> {
    let reports = match name {
        Some(n) => vec![catalog::run(n)?],
        None => catalog::run_all()?,
    };
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.name);
        for line in &r.lines {
            let _ = writeln!(
                text,
                "  {} {}: expected {}, got {}",
                if line.passed { "ok  " } else { "FAIL" },
                line.check,
                line.expected,
                line.actual
            );
        }
        if let Some(note) = &r.graph_note {
            let _ = writeln!(text, "  {note}");
        }
    }
    let ok = reports.iter().all(|r| r.passed());
    let json = if name.is_some() { to_value(&reports[0]) } else { to_value(&reports) };
    Ok(Outcome { text, json, ok })
}

pub fn catalog_export(name: &str, dir: &Path) -> Result<Outcome> {
    let entry = catalog::build(name)?;
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Schema(format!("cannot create {}: {e}", dir.display())))?;
    let ring_path = dir.join(format!("{}.ring.json", entry.name));
    io::write_ring(&ring_path, &entry.ring)?;
    let mut written = vec![ring_path.display().to_string()];
    if let Some(graph) = &entry.graph {
        let path = dir.join(format!("{}.graph.json", entry.name));
        io::write_graph(&path, graph)?;
        written.push(path.display().to_string());
    }
    let mut text = String::new();
    for w in &written {
        let _ = writeln!(text, "wrote {w}");
    }
    Ok(Outcome { text, json: json!({ "written": written, "alpha": entry.alpha, "rho": entry.rho }), ok: true })
}
