//! Recognition of finite and affine simply-laced Dynkin diagrams.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::BipartiteGraph;

/// Largest rank for which templates are generated.
pub const MAX_TEMPLATE_RANK: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DynkinFamily {
    A,
    D,
    E6,
    E7,
    E8,
    AAffine,
    DAffine,
    E6Affine,
    E7Affine,
    E8Affine,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DynkinClass {
    pub family: DynkinFamily,
    /// Rank for the `A`/`D` series (vertex count for finite diagrams,
    /// vertex count minus one for affine ones).
    pub rank: Option<u32>,
}

impl DynkinClass {
    pub const UNKNOWN: DynkinClass = DynkinClass {
        family: DynkinFamily::Unknown,
        rank: None,
    };

    pub fn new(family: DynkinFamily, rank: u32) -> Self {
        let rank = match family {
            DynkinFamily::A | DynkinFamily::D | DynkinFamily::AAffine | DynkinFamily::DAffine => {
                Some(rank)
            }
            _ => None,
        };
        DynkinClass { family, rank }
    }
}

impl fmt::Display for DynkinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rank.unwrap_or(0);
        match self.family {
            DynkinFamily::A => write!(f, "A_{r}"),
            DynkinFamily::D => write!(f, "D_{r}"),
            DynkinFamily::E6 => f.write_str("E_6"),
            DynkinFamily::E7 => f.write_str("E_7"),
            DynkinFamily::E8 => f.write_str("E_8"),
            DynkinFamily::AAffine => write!(f, "A_{r}^(1)"),
            DynkinFamily::DAffine => write!(f, "D_{r}^(1)"),
            DynkinFamily::E6Affine => f.write_str("E_6^(1)"),
            DynkinFamily::E7Affine => f.write_str("E_7^(1)"),
            DynkinFamily::E8Affine => f.write_str("E_8^(1)"),
            DynkinFamily::Unknown => f.write_str("Unknown"),
        }
    }
}

/// Path `0 - 1 - ... - (len-1)` as an edge list.
fn path_edges(len: usize) -> Vec<(usize, usize, u32)> {
    (1..len).map(|k| (k - 1, k, 1)).collect()
}

/// Undirected edge list of a template, or `None` when the family/rank
/// combination does not exist.
fn template_edges(family: DynkinFamily, rank: u32) -> Option<(usize, Vec<(usize, usize, u32)>)> {
    let r = rank as usize;
    if rank > MAX_TEMPLATE_RANK {
        return None;
    }
    // Tree with a trivalent vertex at position `branch` of a path.
    let branched = |path_len: usize, branch: usize| {
        let mut edges = path_edges(path_len);
        edges.push((branch, path_len, 1));
        (path_len + 1, edges)
    };
    Some(match family {
        DynkinFamily::A if r >= 2 => (r, path_edges(r)),
        DynkinFamily::D if r >= 4 => branched(r - 1, r - 3),
        DynkinFamily::E6 => branched(5, 2),
        DynkinFamily::E7 => branched(6, 2),
        DynkinFamily::E8 => branched(7, 2),
        DynkinFamily::AAffine if r == 1 => (2, vec![(0, 1, 2)]),
        DynkinFamily::AAffine if r >= 2 => {
            let mut edges = path_edges(r + 1);
            edges.push((r, 0, 1));
            (r + 1, edges)
        }
        DynkinFamily::DAffine if r >= 4 => {
            let mut edges = path_edges(r - 1);
            edges.push((1, r - 1, 1));
            edges.push((r - 3, r, 1));
            (r + 1, edges)
        }
        DynkinFamily::E6Affine => {
            let edges = vec![(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 4, 1), (0, 5, 1), (5, 6, 1)];
            (7, edges)
        }
        DynkinFamily::E7Affine => branched(7, 3),
        DynkinFamily::E8Affine => branched(8, 2),
        _ => return None,
    })
}

/// Template graph for a family and rank, 2-coloured with vertex `0` even.
/// `None` when the diagram does not exist or is not bipartite (odd cycles
/// `A_{2k}^(1)`).
pub fn template(family: DynkinFamily, rank: u32) -> Option<BipartiteGraph> {
    let (count, edges) = template_edges(family, rank)?;
    let mut adj = vec![Vec::new(); count];
    for &(u, v, _) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut colour: Vec<Option<bool>> = vec![None; count];
    colour[0] = Some(true);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let cu = colour[u].expect("coloured before enqueue");
        for &v in &adj[u] {
            match colour[v] {
                None => {
                    colour[v] = Some(!cu);
                    queue.push_back(v);
                }
                Some(cv) if cv == cu => return None,
                Some(_) => {}
            }
        }
    }
    let name = |v: usize| format!("x{v}");
    let even: Vec<String> = (0..count).filter(|&v| colour[v] == Some(true)).map(name).collect();
    let odd: Vec<String> = (0..count).filter(|&v| colour[v] == Some(false)).map(name).collect();
    let oriented = edges.into_iter().map(|(u, v, m)| {
        if colour[u] == Some(true) {
            (name(u), name(v), m)
        } else {
            (name(v), name(u), m)
        }
    });
    BipartiteGraph::new(even, odd, oriented).ok()
}

/// Exact graph isomorphism of the underlying weighted undirected graphs
/// (the even/odd split is ignored). Backtracking along a breadth-first
/// order, so every vertex after the first is placed next to an already
/// mapped neighbour; suited to trees and near-trees.
pub fn isomorphic(g: &BipartiteGraph, h: &BipartiteGraph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let ga = Dense::new(g);
    let ha = Dense::new(h);
    let mut gd: Vec<_> = (0..n).map(|v| ga.signature(v)).collect();
    let mut hd: Vec<_> = (0..n).map(|v| ha.signature(v)).collect();
    let (gsig, hsig) = (gd.clone(), hd.clone());
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return false;
    }

    // Start from the vertex whose signature is rarest.
    let start = (0..n)
        .min_by_key(|&v| hsig.iter().filter(|&&s| s == gsig[v]).count())
        .expect("nonempty");
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &(v, _) in &ga.adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    if order.len() != n {
        // Disconnected inputs: fall back to unconstrained candidates.
        for v in 0..n {
            if !seen[v] {
                order.push(v);
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(&ga, &ha, &gsig, &hsig, &order, &parent, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn search(
    ga: &Dense,
    ha: &Dense,
    gsig: &[(u32, u32)],
    hsig: &[(u32, u32)],
    order: &[usize],
    parent: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let candidates: Vec<usize> = if parent[v] != usize::MAX {
        ha.adj[map[parent[v]]].iter().map(|&(w, _)| w).collect()
    } else {
        (0..ha.n).collect()
    };
    for c in candidates {
        if used[c] || hsig[c] != gsig[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| ga.at(u, v) == ha.at(map[u], c));
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if search(ga, ha, gsig, hsig, order, parent, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[c] = false;
    }
    false
}

struct Dense {
    n: usize,
    weights: Vec<u32>,
    adj: Vec<Vec<(usize, u32)>>,
}

impl Dense {
    fn new(g: &BipartiteGraph) -> Self {
        let n = g.vertex_count();
        let adj = g.adjacency_lists();
        let mut weights = vec![0; n * n];
        for (u, row) in adj.iter().enumerate() {
            for &(v, m) in row {
                weights[u * n + v] = m;
            }
        }
        Dense { n, weights, adj }
    }

    fn at(&self, u: usize, v: usize) -> u32 {
        self.weights[u * self.n + v]
    }

    /// (number of neighbours, weighted degree)
    fn signature(&self, v: usize) -> (u32, u32) {
        let row = &self.adj[v];
        (row.len() as u32, row.iter().map(|&(_, m)| m).sum())
    }
}

/// Identifies a finite or affine simply-laced Dynkin diagram up to
/// isomorphism, ignoring the even/odd labelling.
pub fn recognize(graph: &BipartiteGraph) -> DynkinClass {
    let v = graph.vertex_count() as u32;
    if v < 2 {
        return DynkinClass::UNKNOWN;
    }
    let mut candidates = vec![(DynkinFamily::A, v), (DynkinFamily::D, v)];
    match v {
        6 => candidates.push((DynkinFamily::E6, 6)),
        7 => candidates.push((DynkinFamily::E7, 7)),
        8 => candidates.push((DynkinFamily::E8, 8)),
        _ => {}
    }
    candidates.extend([(DynkinFamily::AAffine, v - 1), (DynkinFamily::DAffine, v - 1)]);
    match v - 1 {
        6 => candidates.push((DynkinFamily::E6Affine, 6)),
        7 => candidates.push((DynkinFamily::E7Affine, 7)),
        8 => candidates.push((DynkinFamily::E8Affine, 8)),
        _ => {}
    }
    candidates
        .into_iter()
        .find(|&(family, rank)| {
            template(family, rank).is_some_and(|t| isomorphic(graph, &t))
        })
        .map(|(family, rank)| DynkinClass::new(family, rank))
        .unwrap_or(DynkinClass::UNKNOWN)
}
