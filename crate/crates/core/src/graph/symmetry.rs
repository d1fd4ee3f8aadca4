use std::collections::BTreeMap;

use super::BipartiteGraph;
use crate::error::{Error, Result, SymmetryError};
use crate::fusion::FusionRing;
use crate::orbifold::SymmetryAction;

/// A validated, part-preserving graph automorphism with `vperm^order = id`.
#[derive(Debug, Clone)]
pub struct GraphSymmetry<'g> {
    graph: &'g BipartiteGraph,
    order: u32,
    vperm: Vec<usize>,
}

impl<'g> GraphSymmetry<'g> {
    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn vperm(&self) -> &[usize] {
        &self.vperm
    }

    pub fn orbit(&self, v: usize) -> Vec<usize> {
        let mut orbit = vec![v];
        let mut w = self.vperm[v];
        while w != v {
            orbit.push(w);
            w = self.vperm[w];
        }
        orbit
    }

    /// Builds the symmetry from a name map; unlisted vertices are fixed.
    pub fn from_names(
        graph: &'g BipartiteGraph,
        map: &BTreeMap<String, String>,
        order: u32,
    ) -> Result<Self> {
        let mut vperm: Vec<usize> = (0..graph.vertex_count()).collect();
        for (from, to) in map {
            let f = graph
                .vertex(from)
                .ok_or_else(|| Error::Schema(format!("unknown vertex `{from}` in permutation")))?;
            let t = graph
                .vertex(to)
                .ok_or_else(|| Error::Schema(format!("unknown vertex `{to}` in permutation")))?;
            vperm[f] = t;
        }
        Ok(validate_symmetry(graph, vperm, order)?)
    }

    /// `vertex -> image` by name, in global vertex order.
    pub fn to_names(&self) -> BTreeMap<String, String> {
        self.vperm
            .iter()
            .enumerate()
            .map(|(v, &w)| {
                (
                    self.graph.vertex_name(v).to_string(),
                    self.graph.vertex_name(w).to_string(),
                )
            })
            .collect()
    }
}

/// Checks that `vperm` is a bijection preserving parts and multiplicities
/// whose `order`-th power is the identity.
pub fn validate_symmetry(
    graph: &BipartiteGraph,
    vperm: Vec<usize>,
    order: u32,
) -> Result<GraphSymmetry<'_>, SymmetryError> {
    let total = graph.vertex_count();
    if order == 0 {
        return Err(SymmetryError::ZeroOrder);
    }
    if vperm.len() != total {
        return Err(SymmetryError::WrongLength {
            expected: total,
            found: vperm.len(),
        });
    }
    let mut hit = vec![false; total];
    for &w in &vperm {
        if w >= total || hit[w] {
            let name = if w < total {
                graph.vertex_name(w).to_string()
            } else {
                format!("#{w}")
            };
            return Err(SymmetryError::NotBijective(name));
        }
        hit[w] = true;
    }
    for (v, &w) in vperm.iter().enumerate() {
        if graph.is_even(v) != graph.is_even(w) {
            return Err(SymmetryError::ParityViolation {
                vertex: graph.vertex_name(v).to_string(),
                image: graph.vertex_name(w).to_string(),
            });
        }
    }
    let n_even = graph.even().len();
    for e in 0..n_even {
        for o in 0..graph.odd().len() {
            let before = graph.mult(e, o);
            let after = graph.mult(vperm[e], vperm[n_even + o] - n_even);
            if before != after {
                return Err(SymmetryError::NonEquivariantEdge {
                    even: graph.even()[e].clone(),
                    odd: graph.odd()[o].clone(),
                    before,
                    after,
                });
            }
        }
    }
    for v in 0..total {
        let mut w = v;
        for _ in 0..order {
            w = vperm[w];
        }
        if w != v {
            return Err(SymmetryError::WrongOrder {
                order,
                vertex: graph.vertex_name(v).to_string(),
            });
        }
    }
    Ok(GraphSymmetry {
        graph,
        order,
        vperm,
    })
}

/// Transports the left-fusion action of `alpha` to the principal graph.
///
/// `even_map` sends even vertex names to ring labels; `None` means the
/// names coincide. Odd vertices are matched by their multiplicity profile:
/// `o ↦ o'` where `mult(α·e, o') = mult(e, o)` for every even `e`. A
/// profile matched by several odd vertices is reported as ambiguous.
pub fn induced_graph_symmetry<'g>(
    ring: &FusionRing,
    action: &SymmetryAction<'_>,
    graph: &'g BipartiteGraph,
    even_map: Option<&BTreeMap<String, String>>,
) -> Result<GraphSymmetry<'g>> {
    let n_even = graph.even().len();
    let n_odd = graph.odd().len();

    let mut to_ring = Vec::with_capacity(n_even);
    let mut from_ring = vec![usize::MAX; ring.rank()];
    for (e, name) in graph.even().iter().enumerate() {
        let label = match even_map {
            Some(map) => map.get(name).ok_or_else(|| {
                Error::Schema(format!("even vertex `{name}` has no ring label"))
            })?,
            None => name,
        };
        let idx = ring.require(label)?;
        if from_ring[idx] != usize::MAX {
            return Err(Error::Schema(format!(
                "ring label `{label}` is assigned to two even vertices"
            )));
        }
        from_ring[idx] = e;
        to_ring.push(idx);
    }

    let mut vperm = vec![usize::MAX; n_even + n_odd];
    for e in 0..n_even {
        let image = action.apply(to_ring[e]);
        let target = from_ring[image];
        if target == usize::MAX {
            return Err(Error::Precondition(format!(
                "{} * {} = {} is not an even vertex of the graph",
                ring.label(action.alpha()),
                ring.label(to_ring[e]),
                ring.label(image)
            )));
        }
        vperm[e] = target;
    }

    for o in 0..n_odd {
        let matches: Vec<usize> = (0..n_odd)
            .filter(|&cand| {
                (0..n_even).all(|e| graph.mult(vperm[e], cand) == graph.mult(e, o))
            })
            .collect();
        match matches.as_slice() {
            [single] => vperm[n_even + o] = n_even + single,
            [] => {
                return Err(Error::Precondition(format!(
                    "no odd vertex matches the image of `{}`; the fusion action does not preserve the graph",
                    graph.odd()[o]
                )))
            }
            _ => {
                return Err(Error::ExplicitInputRequired(format!(
                    "the image of odd vertex `{}` is ambiguous ({} candidates); supply an explicit permutation",
                    graph.odd()[o],
                    matches.len()
                )))
            }
        }
    }
    Ok(validate_symmetry(graph, vperm, action.order())?)
}
