use orbifusion::catalog::{self, ObstructionRegistry, NO_GRAPH_CHANGE};
use orbifusion::fusion::SmallGroup;
use orbifusion::catalog::OutcomeReport;
use orbifusion::{su3, Assumption, DynkinClass, DynkinFamily, Error, Verdict};
use std::sync::OnceLock;

fn all_reports() -> &'static [OutcomeReport] {
    static REPORTS: OnceLock<Vec<OutcomeReport>> = OnceLock::new();
    REPORTS.get_or_init(|| catalog::run_all().unwrap())
}

fn report(name: &str) -> &'static OutcomeReport {
    all_reports().iter().find(|r| r.name == name).unwrap()
}

#[test]
fn every_entry_passes() {
    let reports = all_reports();
    assert_eq!(reports.len(), catalog::names().len());
    for report in reports {
        for line in &report.lines {
            assert!(line.passed, "{}: {} expected {} got {}", report.name, line.check, line.expected, line.actual);
        }
    }
}

#[test]
fn names_and_aliases() {
    let names = catalog::names();
    assert_eq!(names.first().map(String::as_str), Some("A5"));
    assert!(names.iter().any(|n| n == "A45"));
    assert!(names.iter().any(|n| n == "SU3_level_24"));
    assert_eq!(catalog::build("A7").unwrap().name, "A7_failure");
    assert!(matches!(catalog::build("B3"), Err(Error::UnknownEntry(_))));
}

#[test]
fn a5_entry() {
    let entry = catalog::build("A5").unwrap();
    assert_eq!(entry.ring.labels(), ["rho0", "rho2", "rho4"]);
    assert_eq!((entry.alpha.as_str(), entry.rho.as_str(), entry.n), ("rho4", "rho2", 2));
    assert_eq!(entry.expected.m, Some(1));
    assert_eq!(entry.expected.fold, Some(DynkinClass::new(DynkinFamily::D, 4)));
}

#[test]
fn a9_folds_to_d6() {
    let report = report("A9");
    assert!(report.passed());
    let fold = report.fold.as_ref().unwrap();
    assert_eq!(fold.class, DynkinClass::new(DynkinFamily::D, 6));
    assert!((fold.original_norm - fold.folded_norm).abs() < 1e-9);
}

#[test]
fn e6_affine_entry() {
    let entry = catalog::build("E6affine").unwrap();
    let su3 = su3::triality_zero_ring(3).unwrap();
    assert!(entry.ring.find_isomorphism(&su3).is_some());
    let report = catalog::run_entry(&entry);
    assert!(report.passed());
    assert_eq!(report.fold.unwrap().class, DynkinClass::new(DynkinFamily::DAffine, 4));
    assert_eq!(report.output_group, Some(SmallGroup::Product(vec![2, 2])));
    let check = report.near_group.unwrap();
    assert_eq!((check.group_order, check.m), (3, 2));
}

#[test]
fn e6_entry_predicts_no_graph_change() {
    let entry = catalog::build("E6").unwrap();
    assert_eq!(entry.known_obstruction.map(|v| (v.j, v.n)), Some((1, 2)));
    let report = catalog::run_entry(&entry);
    assert!(report.passed());
    assert_eq!(report.verdict.unwrap().verdict, Verdict::Inconclusive);
    assert_eq!(report.graph_note.as_deref(), Some(NO_GRAPH_CHANGE));
    assert!(report.fold.is_none());
    let sectors = report.sectors.unwrap();
    assert_eq!(sectors.pieces_per_fixed, 1);
}

#[test]
fn failure_entries_stop_at_a3() {
    for name in ["A7_failure", "A11_failure", "A15_failure", "A19_failure", "A23_failure"] {
        let report = report(name);
        assert!(report.passed(), "{name}");
        let a = report.assumptions.as_ref().unwrap();
        assert!(!a.a3.passed);
        assert!(report.verdict.is_none());
        assert!(report.sectors.is_none());
        assert_eq!(catalog::build(name).unwrap().expected.failing_assumption, Some(Assumption::A3));
    }
}

#[test]
fn su3_entries_follow_k_plus_one() {
    for k in 1..=8u32 {
        let report = report(&format!("SU3_level_{}", 3 * k));
        assert!(report.passed(), "k = {k}");
        let verdict = report.verdict.unwrap();
        assert_eq!(verdict.m, k + 1);
        assert_eq!(verdict.verdict == Verdict::Trivial, (k + 1) % 3 != 0);
    }
}

#[test]
fn registry_has_no_counterexample() {
    let registry = ObstructionRegistry::builtin();
    assert!(registry.get("E6").is_some());
    assert!(registry.counterexamples().unwrap().is_empty());
    for (name, reg) in &registry.entries {
        let entry = catalog::build(name).unwrap();
        assert_eq!(reg.value.n, entry.n);
    }
}

#[test]
fn reports_serialize() {
    let report = catalog::run("E6affine").unwrap();
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.contains("\"name\":\"E6affine\""));
}

