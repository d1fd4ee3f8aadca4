//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line; exits nonzero if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use orbifusion::catalog::{self, ObstructionRegistry, OutcomeReport, NO_GRAPH_CHANGE};
use orbifusion::fusion::SmallGroup;
use orbifusion::graph::{recognize, template, DynkinFamily, MAX_TEMPLATE_RANK};
use orbifusion::orbifold::{
    conjugacy_assignment, obstruction_bound, orbifold_sectors, resolve_obstruction,
    ConjugacyPattern, PieceConjugacy,
};
use orbifusion::su3::{self, SMatrix, Weight, INTEGRALITY_TOLERANCE};
use orbifusion::{DynkinClass, OrbifoldInput, SymmetryAction, Verdict};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:?}, limit {limit:?}"))
}

fn failing_lines(r: &OutcomeReport) -> String {
    r.lines
        .iter()
        .filter(|l| !l.passed)
        .map(|l| format!("{}: expected {}, got {}", l.check, l.expected, l.actual))
        .collect::<Vec<_>>()
        .join("; ")
}

fn odd_chains_fold_to_d() -> Check {
    let start = Instant::now();
    let mut classes = Vec::new();
    for n in 2..=12u32 {
        let name = format!("A{}", 4 * n - 3);
        let r = catalog::run(&name).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{name}: {}", failing_lines(&r)))?;
        let m = r.verdict.map(|v| v.m);
        ensure(m == Some(1), format!("{name}: m = {m:?}"))?;
        let class = r.fold.as_ref().map(|f| f.class);
        let want = DynkinClass::new(DynkinFamily::D, 2 * n);
        ensure(class == Some(want), format!("{name}: folded to {class:?}, want {want}"))?;
        classes.push(format!("{name}->{want}"));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{} ({elapsed:.2?})", classes.join(", ")))
}

fn e6_affine_to_d4_affine() -> Check {
    let start = Instant::now();
    let r = catalog::run("E6affine").map_err(|e| e.to_string())?;
    ensure(r.passed(), failing_lines(&r))?;
    let fold = r.fold.as_ref().ok_or("no fold")?;
    ensure(fold.class == DynkinClass::new(DynkinFamily::DAffine, 4), format!("fold {}", fold.class))?;

    let entry = catalog::build("E6affine").map_err(|e| e.to_string())?;
    let dims = entry.ring.fp_dimensions().map_err(|e| e.to_string())?;
    let d_rho = dims.get(entry.ring.require("rho").map_err(|e| e.to_string())?);
    ensure((d_rho - 3.0).abs() < 1e-9, format!("d(rho) = {d_rho}"))?;

    let sectors = r.sectors.as_ref().ok_or("no sectors")?;
    ensure(sectors.merged.len() == 1, "expected one merged class")?;
    let family = &sectors.split[0];
    ensure(family.pieces == ["rho#0", "rho#1", "rho#2"], format!("pieces {:?}", family.pieces))?;
    ensure(
        (family.piece_dimension - 1.0).abs() < 1e-9 && (family.piece_dimension - d_rho / 3.0).abs() < 1e-12,
        format!("piece dimension {}", family.piece_dimension),
    )?;
    let conj = r.conjugacy.as_ref().ok_or("no conjugacy")?;
    ensure(
        conj.split[0].outcome == PieceConjugacy::Determined(ConjugacyPattern::AllSelfConjugate),
        "pieces not all self-conjugate",
    )?;
    ensure(
        r.output_group == Some(SmallGroup::Product(vec![2, 2])),
        format!("group {:?}", r.output_group),
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("D_4^(1), pieces of dim 1, Z/2×Z/2 ({elapsed:.2?})"))
}

fn e6_no_graph_change() -> Check {
    let start = Instant::now();
    let entry = catalog::build("E6").map_err(|e| e.to_string())?;
    let action = SymmetryAction::cyclic(&entry.ring, "alpha").map_err(|e| e.to_string())?;
    let input = OrbifoldInput::new(action, "rho", true).map_err(|e| e.to_string())?;
    let verdict = obstruction_bound(&input).map_err(|e| e.to_string())?;
    ensure(
        (verdict.m, verdict.n, verdict.verdict) == (2, 2, Verdict::Inconclusive),
        format!("verdict {verdict:?}"),
    )?;
    let value = resolve_obstruction(&verdict, entry.known_obstruction).map_err(|e| e.to_string())?;
    ensure(value.order() == 2, format!("registry value {value}"))?;
    let sectors = orbifold_sectors(&input, value).map_err(|e| e.to_string())?;
    ensure(sectors.split.len() == 1 && sectors.split[0].pieces.len() == 1, "rho was split")?;
    ensure(conjugacy_assignment(&sectors).is_err(), "conjugacy should need a trivial obstruction")?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_orbifusion");
    let export = Command::new(bin)
        .args(["catalog", "export", "E6", "--dir"])
        .arg(dir.path())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(export.status.success(), "export failed")?;
    let out = Command::new(bin)
        .arg("orbifold")
        .arg(dir.path().join("E6.ring.json"))
        .args(["--alpha", "alpha", "--rho", "rho", "--assume-loi-trivial", "--obstruction", "1/2", "--graph"])
        .arg(dir.path().join("E6.graph.json"))
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), format!("CLI exit {:?}", out.status.code()))?;
    ensure(stdout.contains(NO_GRAPH_CHANGE), "CLI did not report the absence of a graph change")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("m = 2, n = 2, Inconclusive; obstruction -1 keeps rho whole ({elapsed:.2?})"))
}

fn su3_counts() -> Check {
    let start = Instant::now();
    let mut ms = Vec::new();
    for k in 1..=8u32 {
        let count = su3::obstruction_m(k).map_err(|e| e.to_string())?;
        ensure(count.m == k + 1, format!("k = {k}: m = {}", count.m))?;
        let trivial = count.verdict.verdict == Verdict::Trivial;
        ensure(trivial == ((k + 1) % 3 != 0), format!("k = {k}: verdict {}", count.verdict.verdict))?;
        ms.push(count.m.to_string());
    }
    for level in 0..=6u32 {
        let s = SMatrix::new(level);
        let weights = su3::admissible_weights(level);
        for &l in &weights {
            for &m in &weights {
                let kw = su3::kac_walton(l, m, level).map_err(|e| e.to_string())?;
                for &n in &weights {
                    let v = s.fusion(l, m, n).map_err(|e| e.to_string())?;
                    let res = s.integrality_residue(l, m, n).map_err(|e| e.to_string())?;
                    ensure(res < INTEGRALITY_TOLERANCE, format!("residue {res} at level {level}"))?;
                    ensure(
                        v == kw.get(&n).copied().unwrap_or(0),
                        format!("level {level}: ({l}) x ({m}) at ({n})"),
                    )?;
                }
            }
        }
    }
    let rho6 = Weight::new(2, 2);
    ensure(su3::verlinde(rho6, rho6, rho6, 6).map_err(|e| e.to_string())? == 3, "Verlinde m at level 6")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("m(k) = {} for k = 1..8; Verlinde agrees at levels <= 6 ({elapsed:.2?})", ms.join(",")))
}

fn norms_preserved(reports: &[OutcomeReport]) -> Check {
    let mut count = 0;
    let mut worst = 0.0f64;
    for r in reports {
        if let Some(f) = &r.fold {
            let diff = (f.original_norm - f.folded_norm).abs();
            ensure(diff < 1e-9, format!("{}: norms {} vs {}", r.name, f.original_norm, f.folded_norm))?;
            worst = worst.max(diff);
            count += 1;
        }
    }
    ensure(count == 12, format!("expected 12 foldable entries, found {count}"))?;
    Ok(format!("{count} folds, max |Δnorm| = {worst:.1e}"))
}

fn global_dimension_law(reports: &[OutcomeReport]) -> Check {
    let mut count = 0;
    for r in reports {
        let trivial = r.obstruction.map(|o| o.is_trivial()).unwrap_or(false);
        if !trivial {
            continue;
        }
        let check = r.global_dim.as_ref().ok_or(format!("{}: no global dimension check", r.name))?;
        ensure(
            check.relative_error < 1e-6,
            format!("{}: rel. error {}", r.name, check.relative_error),
        )?;
        count += 1;
    }
    let get = |name: &str| {
        reports
            .iter()
            .find(|r| r.name == name)
            .and_then(|r| r.global_dim.clone())
            .ok_or(format!("{name}: missing"))
    };
    let e6a = get("E6affine")?;
    ensure((e6a.input_sum - 12.0).abs() < 1e-9 && (e6a.output_sum - 4.0).abs() < 1e-9, "E6affine 12 -> 4")?;
    let a5 = get("A5")?;
    ensure((a5.input_sum - 6.0).abs() < 1e-9 && (a5.output_sum - 3.0).abs() < 1e-9, "A5 6 -> 3")?;
    Ok(format!("{count} trivial-obstruction orbifolds; E6affine 12 -> 4, A5 6 -> 3"))
}

fn property_suites(reports: &[OutcomeReport]) -> Check {
    let start = Instant::now();
    // Ring axioms (exhaustive associativity, Frobenius reciprocity) are the
    // first line of every catalog report.
    for r in reports {
        let line = r.lines.first().ok_or(format!("{}: empty report", r.name))?;
        ensure(line.check == "ring axioms" && line.passed, format!("{}: ring axioms", r.name))?;
    }
    for level in 1..=12u32 {
        let j = su3::simple_current(level);
        let weights = su3::admissible_weights(level);
        for &l in &weights {
            for &m in &weights {
                let plain = su3::kac_walton(l, m, level).map_err(|e| e.to_string())?;
                let shifted = su3::kac_walton(j.apply(l), m, level).map_err(|e| e.to_string())?;
                let moved: su3::WeightMultiset = plain.iter().map(|(&n, &c)| (j.apply(n), c)).collect();
                ensure(shifted == moved, format!("equivariance at level {level}, ({l}) x ({m})"))?;
            }
        }
    }
    let mut templates = 0;
    for family in [DynkinFamily::A, DynkinFamily::D, DynkinFamily::AAffine, DynkinFamily::DAffine] {
        for rank in 1..=MAX_TEMPLATE_RANK {
            if let Some(t) = template(family, rank) {
                ensure(recognize(&t) == DynkinClass::new(family, rank), format!("{family:?} {rank}"))?;
                templates += 1;
            }
        }
    }
    for family in [
        DynkinFamily::E6,
        DynkinFamily::E7,
        DynkinFamily::E8,
        DynkinFamily::E6Affine,
        DynkinFamily::E7Affine,
        DynkinFamily::E8Affine,
    ] {
        let t = template(family, 0).ok_or("missing exceptional template")?;
        ensure(recognize(&t).family == family, format!("{family:?}"))?;
        templates += 1;
    }
    let registry = ObstructionRegistry::builtin();
    let bad = registry.counterexamples().map_err(|e| e.to_string())?;
    ensure(bad.is_empty(), format!("registry counterexamples: {bad:?}"))?;
    Ok(format!(
        "{} rings valid, equivariance to level 12, {templates} templates recognized, registry consistent ({:.2?})",
        reports.len(),
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let all = catalog::run_all();
    let reports = match &all {
        Ok(r) => r.as_slice(),
        Err(e) => {
            println!("FAIL catalog could not be run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<(&str, Check)> = vec![
        ("1 A_{4n-3} folds to D_{2n}, n = 2..12", odd_chains_fold_to_d()),
        ("2 E6^(1) folds to D_4^(1)", e6_affine_to_d4_affine()),
        ("3 E6 obstruction -1, no graph change", e6_no_graph_change()),
        ("4 SU(3)_{3k}: m = k + 1", su3_counts()),
        ("5 graph norm preserved by folding", norms_preserved(reports)),
        ("6 global dimension divides by n", global_dimension_law(reports)),
        ("7 property suites", property_suites(reports)),
    ];
    let mut failed = 0;
    for (name, result) in &criteria {
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failed += 1;
        println!("FAIL acceptance run took {elapsed:.2?} (limit 60 s)");
    } else {
        println!("acceptance run: {elapsed:.2?}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
