use std::collections::BTreeMap;

use super::{BipartiteGraph, GraphSymmetry};
use crate::error::{Error, Result};
use crate::orbifold::sectors_piece_name as piece_name;

enum Class {
    /// Free orbit, identified by its representative's global index.
    Merged(usize),
    /// A copy of a fixed vertex.
    Copy(usize),
}

/// Quotient of the graph by a symmetry of order `n`.
///
/// Free orbits merge into one vertex named after their lexicographically
/// least member. Fixed vertices split into `n` copies `<name>#k`. Between
/// merged classes the multiplicity is `Σ_{b ∈ O₂} mult(rep(O₁), b)`;
/// between a merged class and any copy of a fixed vertex it is the
/// multiplicity between the representative and the fixed vertex.
pub fn fold_graph(sym: &GraphSymmetry<'_>) -> Result<BipartiteGraph> {
    let graph = sym.graph();
    let n = sym.order();
    let total = graph.vertex_count();

    let mut class_of: Vec<Option<usize>> = vec![None; total];
    let mut even_classes: Vec<(String, Class)> = Vec::new();
    let mut odd_classes: Vec<(String, Class)> = Vec::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for v in 0..total {
        if class_of[v].is_some() {
            continue;
        }
        let orbit = sym.orbit(v);
        let size = orbit.len() as u32;
        let id = orbits.len();
        orbit.iter().for_each(|&w| class_of[w] = Some(id));
        let target = if graph.is_even(v) {
            &mut even_classes
        } else {
            &mut odd_classes
        };
        if size == n {
            let rep = *orbit
                .iter()
                .min_by(|&&a, &&b| graph.vertex_name(a).cmp(graph.vertex_name(b)))
                .expect("orbit is nonempty");
            target.push((graph.vertex_name(rep).to_string(), Class::Merged(rep)));
        } else if size == 1 {
            for k in 0..n {
                target.push((piece_name(graph.vertex_name(v), k), Class::Copy(v)));
            }
        } else {
            return Err(Error::Unsupported(format!(
                "orbit of vertex `{}` has size {size}, strictly between 1 and n = {n}",
                graph.vertex_name(v)
            )));
        }
        orbits.push(orbit);
    }

    let mut mult = BTreeMap::new();
    for (ei, (_, ec)) in even_classes.iter().enumerate() {
        for (oi, (_, oc)) in odd_classes.iter().enumerate() {
            let m = match (ec, oc) {
                (Class::Merged(a), Class::Merged(b)) => {
                    let orbit = &orbits[class_of[*b].expect("classified")];
                    orbit.iter().map(|&w| graph.weight(*a, w)).sum()
                }
                (Class::Merged(a), Class::Copy(f)) | (Class::Copy(f), Class::Merged(a)) => {
                    graph.weight(*a, *f)
                }
                (Class::Copy(f), Class::Copy(g)) => {
                    if graph.weight(*f, *g) > 0 {
                        return Err(Error::Unsupported(format!(
                            "fixed vertices `{}` and `{}` are adjacent; the edge rule between split families is not determined",
                            graph.vertex_name(*f),
                            graph.vertex_name(*g)
                        )));
                    }
                    0
                }
            };
            if m > 0 {
                mult.insert((ei, oi), m);
            }
        }
    }

    let even = even_classes.into_iter().map(|(name, _)| name).collect();
    let odd = odd_classes.into_iter().map(|(name, _)| name).collect();
    let folded = BipartiteGraph::from_indices(even, odd, mult)?;
    if !folded.is_connected() {
        return Err(Error::Numeric("folded graph is disconnected".into()));
    }
    Ok(folded)
}
