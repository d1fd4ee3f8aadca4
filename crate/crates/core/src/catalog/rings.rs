//! Hand-written fusion rings and principal graphs of the catalog.

use std::collections::BTreeMap;

use crate::fusion::FusionRing;
use crate::graph::{path_graph_named, BipartiteGraph};
use crate::su2;

fn self_dual(labels: &[&str]) -> BTreeMap<String, String> {
    labels
        .iter()
        .map(|l| (l.to_string(), l.to_string()))
        .collect()
}

fn strings(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|l| l.to_string()).collect()
}

/// Even part of the `E6` subfactor: `{id, alpha, rho}` with
/// `alpha² = id`, `alpha rho = rho alpha = rho`, `rho² = id + alpha + 2 rho`.
pub fn e6_ring() -> FusionRing {
    let labels = ["id", "alpha", "rho"];
    let mut constants = Vec::new();
    for x in labels {
        constants.push(("id", x, x, 1));
        if x != "id" {
            constants.push((x, "id", x, 1));
        }
    }
    constants.extend([
        ("alpha", "alpha", "id", 1),
        ("alpha", "rho", "rho", 1),
        ("rho", "alpha", "rho", 1),
        ("rho", "rho", "id", 1),
        ("rho", "rho", "alpha", 1),
        ("rho", "rho", "rho", 2),
    ]);
    FusionRing::new(strings(&labels), "id", &self_dual(&labels), constants)
        .expect("static ring is well formed")
}

/// Even part of the `E6^(1)` subfactor: `{id, alpha, alpha2, rho}` with
/// `alpha³ = id`, `alpha rho = rho alpha = rho`,
/// `rho² = id + alpha + alpha2 + 2 rho`.
pub fn e6_affine_ring() -> FusionRing {
    let labels = ["id", "alpha", "alpha2", "rho"];
    let group = ["id", "alpha", "alpha2"];
    let mut constants = Vec::new();
    for (i, g) in group.iter().enumerate() {
        for (j, h) in group.iter().enumerate() {
            constants.push((*g, *h, group[(i + j) % 3], 1));
        }
        constants.push((*g, "rho", "rho", 1));
        constants.push(("rho", *g, "rho", 1));
    }
    constants.extend([
        ("rho", "rho", "id", 1),
        ("rho", "rho", "alpha", 1),
        ("rho", "rho", "alpha2", 1),
        ("rho", "rho", "rho", 2),
    ]);
    let dual: BTreeMap<String, String> = [
        ("id", "id"),
        ("alpha", "alpha2"),
        ("alpha2", "alpha"),
        ("rho", "rho"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    FusionRing::new(strings(&labels), "id", &dual, constants).expect("static ring is well formed")
}

/// The chain `rho0 - rho1 - ... - rho{K}` (principal graph `A_{K+1}`).
pub fn chain_graph(level: u32) -> BipartiteGraph {
    let names: Vec<String> = (0..=level).map(su2::label).collect();
    path_graph_named(&names).expect("level >= 1 gives at least two vertices")
}

/// `E6`: `id - m0 - rho - m1 - alpha` with the short arm `rho - m2`.
pub fn e6_graph() -> BipartiteGraph {
    BipartiteGraph::new(
        strings(&["id", "alpha", "rho"]),
        strings(&["m0", "m1", "m2"]),
        [
            ("id", "m0", 1),
            ("rho", "m0", 1),
            ("rho", "m1", 1),
            ("alpha", "m1", 1),
            ("rho", "m2", 1),
        ],
    )
    .expect("static graph is well formed")
}

/// `E6^(1)`: centre `rho` with three arms `rho - m_i - alpha^i`.
pub fn e6_affine_graph() -> BipartiteGraph {
    BipartiteGraph::new(
        strings(&["id", "alpha", "alpha2", "rho"]),
        strings(&["m0", "m1", "m2"]),
        [
            ("id", "m0", 1),
            ("alpha", "m1", 1),
            ("alpha2", "m2", 1),
            ("rho", "m0", 1),
            ("rho", "m1", 1),
            ("rho", "m2", 1),
        ],
    )
    .expect("static graph is well formed")
}
