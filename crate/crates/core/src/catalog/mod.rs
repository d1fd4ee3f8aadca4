//! Worked examples with expected outcomes, and an end-to-end harness.
//!
//! Entries:
//!
//! * `A{4n-3}`, `n = 2..=12`: integer-spin part of `SU(2)_{4n-4}` with the
//!   chain principal graph; `alpha = rho{4n-4}`, `rho = rho{2n-2}`. The fold
//!   is `D_{2n}`.
//! * `A{4n-1}_failure`, `n = 2..=6`: integer-spin part of `SU(2)_{4n-2}`;
//!   `alpha` fixes no even label, so A3 fails.
//! * `E6`: obstruction `-1`, no graph change.
//! * `E6affine`: `Z/3` orbifold with fold `D_4^(1)`.
//! * `SU3_level_{3k}`, `k = 1..=8`: triality-zero part of `SU(3)_{3k}` with
//!   the simple current and `rho = (k, k)`.

pub mod rings;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Assumption, Error, Result};
use crate::fusion::{FusionRing, SmallGroup};
use crate::graph::{
    fold_graph, induced_graph_symmetry, recognize, BipartiteGraph, DynkinClass, DynkinFamily,
};
use crate::orbifold::{
    check_assumptions, conjugacy_assignment, global_dim_check, invertible_output_group,
    obstruction_bound, orbifold_sectors, resolve_obstruction, AssumptionReport, ConjugacyReport,
    GlobalDimCheck, ObstructionValue, ObstructionVerdict, OrbifoldInput, OrbifoldSectors,
    SymmetryAction, Verdict,
};
use crate::{su2, su3};

/// Tolerance for comparing graph norms before and after folding.
pub const NORM_PRESERVATION_TOLERANCE: f64 = 1e-9;

/// Message emitted when a nontrivial obstruction rules out a graph change.
pub const NO_GRAPH_CHANGE: &str = "no graph change predicted; folded graph not computed";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected {
    /// Assumption expected to fail; `None` when all of A1–A3 should hold.
    pub failing_assumption: Option<Assumption>,
    pub m: Option<u32>,
    pub verdict: Option<Verdict>,
    pub fold: Option<DynkinClass>,
    pub no_graph_change: bool,
    pub output_group: Option<SmallGroup>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub ring: FusionRing,
    pub graph: Option<BipartiteGraph>,
    pub alpha: String,
    pub rho: String,
    pub n: u32,
    pub expected: Expected,
    pub known_obstruction: Option<ObstructionValue>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegisteredObstruction {
    pub value: ObstructionValue,
    pub provenance: String,
}

/// Obstruction values known from outside the gcd criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionRegistry {
    pub entries: BTreeMap<String, RegisteredObstruction>,
}

impl ObstructionRegistry {
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(
            "E6".to_string(),
            RegisteredObstruction {
                value: ObstructionValue { j: 1, n: 2 },
                provenance: "supplied value -1; gcd(2, 2) = 2 leaves the criterion silent"
                    .into(),
            },
        );
        for k in (1..=8).filter(|k| (k + 1) % 3 == 0) {
            entries.insert(
                su3_entry_name(k),
                RegisteredObstruction {
                    value: ObstructionValue::trivial(3),
                    provenance: format!(
                        "supplied trivial value for SU(3)_{}; gcd(m, 3) = 3 leaves the \
                         criterion silent",
                        3 * k
                    ),
                },
            );
        }
        ObstructionRegistry { entries }
    }

    pub fn get(&self, name: &str) -> Option<&RegisteredObstruction> {
        self.entries.get(name)
    }

    /// Registered nontrivial values whose entry has `gcd(m, n) = 1`, which
    /// would contradict the criterion. Empty for a consistent registry.
    pub fn counterexamples(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for (name, reg) in &self.entries {
            if reg.value.is_trivial() {
                continue;
            }
            let entry = build(name)?;
            let m = entry.ring.n(
                entry.ring.require(&entry.rho)?,
                entry.ring.require(&entry.rho)?,
                entry.ring.require(&entry.rho)?,
            );
            if num_integer::gcd(m, reg.value.n) == 1 {
                bad.push(name.clone());
            }
        }
        Ok(bad)
    }
}

fn a_odd_name(n: u32) -> String {
    format!("A{}", 4 * n - 3)
}

fn a_failure_name(n: u32) -> String {
    format!("A{}_failure", 4 * n - 1)
}

fn su3_entry_name(k: u32) -> String {
    format!("SU3_level_{}", 3 * k)
}

/// All entry names, in catalog order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = (2..=12).map(a_odd_name).collect();
    out.extend((2..=6).map(a_failure_name));
    out.push("E6".into());
    out.push("E6affine".into());
    out.extend((1..=8).map(su3_entry_name));
    out
}

fn canonical(name: &str) -> Option<String> {
    let all = names();
    if all.iter().any(|n| n == name) {
        return Some(name.to_string());
    }
    // `A7` is accepted for `A7_failure`.
    let with_suffix = format!("{name}_failure");
    all.into_iter().find(|n| *n == with_suffix)
}

pub fn build(name: &str) -> Result<CatalogEntry> {
    let name = canonical(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    let registry = ObstructionRegistry::builtin();
    let known_obstruction = registry.get(&name).map(|r| r.value);

    if let Some(n) = (2..=12).find(|&n| a_odd_name(n) == name) {
        let level = 4 * n - 4;
        return Ok(CatalogEntry {
            ring: su2::su2_even_ring(level)?,
            graph: Some(rings::chain_graph(level)),
            alpha: su2::label(level),
            rho: su2::label(2 * n - 2),
            n: 2,
            expected: Expected {
                failing_assumption: None,
                m: Some(1),
                verdict: Some(Verdict::Trivial),
                fold: Some(DynkinClass::new(DynkinFamily::D, 2 * n)),
                no_graph_change: false,
                output_group: None,
            },
            known_obstruction,
            notes: vec![
                format!("integer-spin part of SU(2)_{level}; alpha * rho_j = rho_({level}-j)"),
                format!("rho_{} is the unique fixed label and rho^2 contains rho once", 2 * n - 2),
                format!("folding A_{} by the reflection gives D_{}", 4 * n - 3, 2 * n),
            ],
            name,
        });
    }

    if let Some(n) = (2..=6).find(|&n| a_failure_name(n) == name) {
        let level = 4 * n - 2;
        return Ok(CatalogEntry {
            ring: su2::su2_even_ring(level)?,
            graph: Some(rings::chain_graph(level)),
            alpha: su2::label(level),
            rho: su2::label(2 * n - 2),
            n: 2,
            expected: Expected {
                failing_assumption: Some(Assumption::A3),
                m: None,
                verdict: None,
                fold: None,
                no_graph_change: false,
                output_group: None,
            },
            known_obstruction,
            notes: vec![
                format!(
                    "the reflection j -> {level}-j fixes only rho_{}, an odd label outside the even ring",
                    2 * n - 1
                ),
                "no self-conjugate alpha-fixed rho exists, so A3 fails and no orbifold is attempted"
                    .into(),
            ],
            name,
        });
    }

    match name.as_str() {
        "E6" => Ok(CatalogEntry {
            ring: rings::e6_ring(),
            graph: Some(rings::e6_graph()),
            alpha: "alpha".into(),
            rho: "rho".into(),
            n: 2,
            expected: Expected {
                failing_assumption: None,
                m: Some(2),
                verdict: Some(Verdict::Inconclusive),
                fold: None,
                no_graph_change: true,
                output_group: None,
            },
            known_obstruction,
            notes: vec![
                "fusion rule rho^2 = id + alpha + 2 rho, alpha^2 = id, alpha rho = rho".into(),
                "gcd(2, 2) = 2: the criterion does not apply".into(),
                "registered obstruction -1 (l = 2): rho stays a single piece".into(),
            ],
            name,
        }),
        "E6affine" => Ok(CatalogEntry {
            ring: rings::e6_affine_ring(),
            graph: Some(rings::e6_affine_graph()),
            alpha: "alpha".into(),
            rho: "rho".into(),
            n: 3,
            expected: Expected {
                failing_assumption: None,
                m: Some(2),
                verdict: Some(Verdict::Trivial),
                fold: Some(DynkinClass::new(DynkinFamily::DAffine, 4)),
                no_graph_change: false,
                output_group: Some(SmallGroup::Product(vec![2, 2])),
            },
            known_obstruction,
            notes: vec![
                "fusion rule rho^2 = id + alpha + alpha2 + 2 rho, alpha^3 = id, d(rho) = 3".into(),
                "gcd(2, 3) = 1: trivial obstruction; rho splits into three dimension-1 pieces"
                    .into(),
                "n = 3 is odd, so all pieces are self-conjugate and the four invertible outputs \
                 form Z/2 x Z/2"
                    .into(),
                "same ring as the triality-zero part of SU(3)_3".into(),
            ],
            name,
        }),
        _ => {
            let k = (1..=8)
                .find(|&k| su3_entry_name(k) == name)
                .ok_or_else(|| Error::UnknownEntry(name.clone()))?;
            let level = 3 * k;
            let current = su3::simple_current(level);
            let verdict = ObstructionVerdict::from_counts(k + 1, 3).verdict;
            Ok(CatalogEntry {
                ring: su3::triality_zero_ring(level)?,
                graph: None,
                alpha: current.generator().label(),
                rho: su3::Weight::new(k, k).label(),
                n: 3,
                expected: Expected {
                    failing_assumption: None,
                    m: Some(k + 1),
                    verdict: Some(verdict),
                    fold: None,
                    no_graph_change: false,
                    output_group: None,
                },
                known_obstruction,
                notes: vec![
                    format!("triality-zero weights of SU(3)_{level}, fusion by Kac-Walton"),
                    format!("rho = ({k},{k}) (Young diagram ({},{k},0)) is the unique J-fixed weight", 2 * k),
                    format!("m = k + 1 = {}", k + 1),
                ],
                name,
            })
        }
    }
}

/// One compared quantity of a catalog run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutcomeLine {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoldSummary {
    pub class: DynkinClass,
    pub original_norm: f64,
    pub folded_norm: f64,
    pub vertex_count: usize,
    pub folded: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearGroupCheck {
    pub group_order: usize,
    pub m: u32,
    /// `"|G|-1"` or `"multiple of |G|"`.
    pub case: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeReport {
    pub name: String,
    pub lines: Vec<OutcomeLine>,
    pub assumptions: Option<AssumptionReport>,
    pub verdict: Option<ObstructionVerdict>,
    pub obstruction: Option<ObstructionValue>,
    pub sectors: Option<OrbifoldSectors>,
    pub conjugacy: Option<ConjugacyReport>,
    pub global_dim: Option<GlobalDimCheck>,
    pub output_group: Option<SmallGroup>,
    pub fold: Option<FoldSummary>,
    pub near_group: Option<NearGroupCheck>,
    pub graph_note: Option<String>,
}

impl OutcomeReport {
    fn new(name: &str) -> Self {
        OutcomeReport {
            name: name.to_string(),
            lines: Vec::new(),
            assumptions: None,
            verdict: None,
            obstruction: None,
            sectors: None,
            conjugacy: None,
            global_dim: None,
            output_group: None,
            fold: None,
            near_group: None,
            graph_note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    fn line(&mut self, check: &str, expected: impl fmt::Display, actual: impl fmt::Display, passed: bool) {
        self.lines.push(OutcomeLine {
            check: check.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed,
        });
    }

    fn compare<T: PartialEq + fmt::Display>(&mut self, check: &str, expected: T, actual: T) {
        let passed = expected == actual;
        self.line(check, expected, actual, passed);
    }

    fn error(&mut self, check: &str, expected: impl fmt::Display, err: &Error) {
        self.line(check, expected, format!("error: {err}"), false);
    }
}

/// Builds and runs one entry.
pub fn run(name: &str) -> Result<OutcomeReport> {
    let entry = build(name)?;
    Ok(run_entry(&entry))
}

/// Runs every entry, one thread per entry; reports come back in catalog
/// order.
pub fn run_all() -> Result<Vec<OutcomeReport>> {
    let names = names();
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| scope.spawn(move || run(n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("catalog entry thread panicked"))
            .collect()
    })
}

/// validate → assumptions → obstruction → orbifold → fold → recognize,
/// comparing each stage with the entry's expectations.
pub fn run_entry(entry: &CatalogEntry) -> OutcomeReport {
    let mut report = OutcomeReport::new(&entry.name);
    let ring = &entry.ring;
    let expected = &entry.expected;

    let validation = ring.validate();
    report.line(
        "ring axioms",
        "pass",
        if validation.passed() {
            "pass".to_string()
        } else {
            format!("{} violated axiom(s)", validation.violations.len())
        },
        validation.passed(),
    );
    if !validation.passed() {
        return report;
    }

    let action = match SymmetryAction::cyclic(ring, &entry.alpha) {
        Ok(a) => a,
        Err(e) => {
            report.error("symmetry action", format!("order {}", entry.n), &e);
            return report;
        }
    };
    report.compare("order of alpha", entry.n, action.order());

    let input = match OrbifoldInput::new(action, &entry.rho, true) {
        Ok(i) => i,
        Err(e) => {
            report.error("orbifold input", "valid labels", &e);
            return report;
        }
    };
    let assumptions = check_assumptions(&input);
    let failing = [
        (Assumption::A1, assumptions.a1.passed),
        (Assumption::A2, assumptions.a2.passed),
        (Assumption::A3, assumptions.a3.passed),
    ]
    .into_iter()
    .find(|(_, ok)| !ok)
    .map(|(a, _)| a);
    report.compare(
        "first failing assumption",
        describe_assumption(expected.failing_assumption),
        describe_assumption(failing),
    );
    report.assumptions = Some(assumptions.clone());
    if failing.is_some() {
        return report;
    }

    let verdict = match obstruction_bound(&input) {
        Ok(v) => v,
        Err(e) => {
            report.error("obstruction criterion", "verdict", &e);
            return report;
        }
    };
    if let Some(m) = expected.m {
        report.compare("m = dim(rho, rho^2)", m, verdict.m);
    }
    if let Some(v) = expected.verdict {
        report.compare("gcd verdict", v, verdict.verdict);
    }
    report.verdict = Some(verdict);

    let obstruction = match resolve_obstruction(&verdict, entry.known_obstruction) {
        Ok(o) => o,
        Err(e) => {
            report.error("obstruction value", "determined", &e);
            return report;
        }
    };
    report.obstruction = Some(obstruction);

    let sectors = match orbifold_sectors(&input, obstruction) {
        Ok(s) => s,
        Err(e) => {
            report.error("orbifold sectors", "decomposition", &e);
            return report;
        }
    };
    let dims = ring.fp_dimensions();
    if let Ok(dims) = &dims {
        let d_rho = dims.get(input.rho);
        if let Some(family) = sectors.split.iter().find(|f| f.fixed == entry.rho) {
            let p = f64::from(sectors.pieces_per_fixed);
            let err = (p * family.piece_dimension - d_rho).abs();
            report.line(
                "rho splits into p = n / l pieces with p * d(piece) = d(rho)",
                format!("{} pieces, total {d_rho:.9}", sectors.pieces_per_fixed),
                format!("{} pieces, total {:.9}", family.pieces.len(), p * family.piece_dimension),
                family.pieces.len() as u32 == sectors.pieces_per_fixed && err < 1e-9,
            );
        }
    }
    let expected_count = sectors.merged.len() + sectors.split.len() * sectors.pieces_per_fixed as usize;
    report.compare("output sector count", expected_count, sectors.sectors.len());

    if obstruction.is_trivial() {
        match global_dim_check(ring, &sectors) {
            Ok(check) => {
                report.line(
                    "global dimension divides by n",
                    format!("{:.9}", check.input_sum / f64::from(check.n)),
                    format!("{:.9}", check.output_sum),
                    check.passed,
                );
                report.global_dim = Some(check);
            }
            Err(e) => report.error("global dimension divides by n", "pass", &e),
        }
        match conjugacy_assignment(&sectors) {
            Ok(conj) => {
                if sectors.n % 2 == 1 {
                    let all_self = sectors
                        .sectors
                        .iter()
                        .filter(|s| s.origin == entry.rho)
                        .all(|s| conj.is_self_conjugate(&sectors, &s.name) == Some(true));
                    report.compare("pieces of rho self-conjugate (n odd)", true, all_self);
                }
                if let Some(group) = &expected.output_group {
                    match invertible_output_group(&sectors, &conj) {
                        Ok(g) => {
                            report.compare("group of dimension-1 outputs", group.clone(), g.clone());
                            report.output_group = Some(g);
                        }
                        Err(e) => report.error("group of dimension-1 outputs", group, &e),
                    }
                }
                report.conjugacy = Some(conj);
            }
            Err(e) => report.error("conjugacy", "assignment", &e),
        }
    }

    if let Some(graph) = &entry.graph {
        if !obstruction.is_trivial() {
            report.graph_note = Some(NO_GRAPH_CHANGE.to_string());
            report.compare("graph change", !expected.no_graph_change, false);
        } else {
            fold_stage(&mut report, entry, &input, graph);
        }
    } else if expected.no_graph_change {
        report.compare("graph change", false, !obstruction.is_trivial());
    }

    if let Some(check) = near_group_check(ring, input.rho) {
        report.line(
            "near-group multiplicity (|G|-1 or multiple of |G|)",
            "pass",
            format!("|G| = {}, m = {}: {}", check.group_order, check.m, check.case),
            check.passed,
        );
        report.near_group = Some(check);
    }

    report.sectors = Some(sectors);
    report
}

fn fold_stage(
    report: &mut OutcomeReport,
    entry: &CatalogEntry,
    input: &OrbifoldInput<'_>,
    graph: &BipartiteGraph,
) {
    let sym = match induced_graph_symmetry(&entry.ring, &input.action, graph, None) {
        Ok(s) => s,
        Err(e) => {
            report.error("graph symmetry", "induced", &e);
            return;
        }
    };
    let folded = match fold_graph(&sym) {
        Ok(f) => f,
        Err(e) => {
            report.error("folded graph", "computed", &e);
            return;
        }
    };
    let class = recognize(&folded);
    if let Some(want) = entry.expected.fold {
        report.compare("folded graph", want, class);
    }
    let free = (0..graph.vertex_count())
        .filter(|&v| sym.orbit(v).len() as u32 == sym.order())
        .count()
        / sym.order() as usize;
    let fixed = (0..graph.vertex_count())
        .filter(|&v| sym.vperm()[v] == v)
        .count();
    report.compare(
        "folded vertex count = free orbits + n * fixed",
        free + sym.order() as usize * fixed,
        folded.vertex_count(),
    );
    match (graph.pf_norm(), folded.pf_norm()) {
        (Ok(before), Ok(after)) => {
            report.line(
                "graph norm preserved",
                format!("{before:.12}"),
                format!("{after:.12}"),
                (before - after).abs() < NORM_PRESERVATION_TOLERANCE,
            );
            report.fold = Some(FoldSummary {
                class,
                original_norm: before,
                folded_norm: after,
                vertex_count: folded.vertex_count(),
                folded: folded.to_dot(&format!("{}_folded", entry.name)),
            });
        }
        (Err(e), _) | (_, Err(e)) => report.error("graph norm preserved", "equal norms", &e),
    }
}

fn describe_assumption(a: Option<Assumption>) -> String {
    match a {
        Some(a) => a.to_string(),
        None => "none".into(),
    }
}

/// For a ring whose labels are all invertible except `rho`, compares
/// `m = N_{ρρ}^ρ` with the near-group dichotomy: `m = |G| - 1` (then `|G|`
/// is prime) or `|G|` divides `m`.
pub fn near_group_check(ring: &FusionRing, rho: usize) -> Option<NearGroupCheck> {
    let invertibles = ring.invertibles();
    if invertibles.len() + 1 != ring.rank() || invertibles.contains(&rho) {
        return None;
    }
    let g = invertibles.len();
    let m = ring.n(rho, rho, rho);
    let (case, passed) = if m as usize + 1 == g {
        ("|G|-1", (2..g).all(|d| !g.is_multiple_of(d)) && g >= 2)
    } else if (m as usize).is_multiple_of(g) {
        ("multiple of |G|", true)
    } else {
        ("neither", false)
    };
    Some(NearGroupCheck {
        group_order: g,
        m,
        case: case.to_string(),
        passed,
    })
}
