//! Bipartite principal graphs.
//!
//! Vertices are split into an even part and an odd part; edges only join
//! the two parts and carry positive integer multiplicities. Vertices have a
//! global index: even vertices first (`0..E`), then odd ones (`E..E+O`).

mod dynkin;
mod fold;
mod symmetry;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{schema, Error, Result};

pub use dynkin::{isomorphic, recognize, template, DynkinClass, DynkinFamily, MAX_TEMPLATE_RANK};
pub use fold::fold_graph;
pub use symmetry::{induced_graph_symmetry, validate_symmetry, GraphSymmetry};

/// Tolerance of the Perron–Frobenius norm iteration (eigen-residual).
pub const NORM_TOLERANCE: f64 = 1e-12;
const NORM_MAX_ITERATIONS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    even: Vec<String>,
    odd: Vec<String>,
    /// `(even index, odd index) -> multiplicity`, positive entries only.
    mult: BTreeMap<(usize, usize), u32>,
    index: HashMap<String, usize>,
}

impl BipartiteGraph {
    /// Builds a graph from vertex names and `(even, odd, multiplicity)`
    /// edges. Zero multiplicities are dropped.
    pub fn new<S: AsRef<str>>(
        even: Vec<String>,
        odd: Vec<String>,
        edges: impl IntoIterator<Item = (S, S, u32)>,
    ) -> Result<Self> {
        let index = vertex_index(&even, &odd)?;
        let n_even = even.len();
        let mut mult = BTreeMap::new();
        for (e, o, m) in edges {
            let (e, o) = (e.as_ref(), o.as_ref());
            let ei = match index.get(e) {
                Some(&i) if i < n_even => i,
                Some(_) => return Err(schema(format!("edge endpoint `{e}` is not an even vertex"))),
                None => return Err(schema(format!("unknown vertex `{e}`"))),
            };
            let oi = match index.get(o) {
                Some(&i) if i >= n_even => i - n_even,
                Some(_) => return Err(schema(format!("edge endpoint `{o}` is not an odd vertex"))),
                None => return Err(schema(format!("unknown vertex `{o}`"))),
            };
            if mult.contains_key(&(ei, oi)) {
                return Err(schema(format!("edge ({e}, {o}) listed twice")));
            }
            if m > 0 {
                mult.insert((ei, oi), m);
            }
        }
        Ok(BipartiteGraph {
            even,
            odd,
            mult,
            index,
        })
    }

    pub fn from_indices(
        even: Vec<String>,
        odd: Vec<String>,
        mult: BTreeMap<(usize, usize), u32>,
    ) -> Result<Self> {
        let index = vertex_index(&even, &odd)?;
        if let Some(&(e, o)) = mult.keys().find(|&&(e, o)| e >= even.len() || o >= odd.len()) {
            return Err(schema(format!("edge index ({e}, {o}) out of range")));
        }
        let mult = mult.into_iter().filter(|&(_, m)| m > 0).collect();
        Ok(BipartiteGraph {
            even,
            odd,
            mult,
            index,
        })
    }

    pub fn even(&self) -> &[String] {
        &self.even
    }

    pub fn odd(&self) -> &[String] {
        &self.odd
    }

    pub fn vertex_count(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn is_even(&self, v: usize) -> bool {
        v < self.even.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        if self.is_even(v) {
            &self.even[v]
        } else {
            &self.odd[v - self.even.len()]
        }
    }

    /// Global index of a vertex name.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Multiplicity between an even and an odd vertex (part-local indices).
    pub fn mult(&self, even: usize, odd: usize) -> u32 {
        self.mult.get(&(even, odd)).copied().unwrap_or(0)
    }

    /// Multiplicity between two vertices given by global index; zero
    /// within a part.
    pub fn weight(&self, u: usize, v: usize) -> u32 {
        let n_even = self.even.len();
        match (self.is_even(u), self.is_even(v)) {
            (true, false) => self.mult(u, v - n_even),
            (false, true) => self.mult(v, u - n_even),
            _ => 0,
        }
    }

    /// `((even, odd), multiplicity)` in index order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.mult.iter().map(|(&k, &m)| (k, m))
    }

    pub fn edge_count(&self) -> usize {
        self.mult.len()
    }

    /// Neighbours of a vertex (global indices) with multiplicities.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, u32)> {
        let n_even = self.even.len();
        if self.is_even(v) {
            self.mult
                .range((v, 0)..(v + 1, 0))
                .map(|(&(_, o), &m)| (n_even + o, m))
                .collect()
        } else {
            let o = v - n_even;
            self.mult
                .iter()
                .filter(|(&(_, oo), _)| oo == o)
                .map(|(&(e, _), &m)| (e, m))
                .collect()
        }
    }

    pub(crate) fn adjacency_lists(&self) -> Vec<Vec<(usize, u32)>> {
        let n_even = self.even.len();
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (&(e, o), &m) in &self.mult {
            adj[e].push((n_even + o, m));
            adj[n_even + o].push((e, m));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let total = self.vertex_count();
        if total == 0 {
            return false;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; total];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Largest eigenvalue of the symmetric adjacency matrix.
    ///
    /// Power iteration on `A + I` (bipartite spectra are symmetric, so the
    /// shift separates `‖A‖` from `-‖A‖`), started from the all-ones vector
    /// and stopped once the eigen-residual drops below [`NORM_TOLERANCE`].
    pub fn pf_norm(&self) -> Result<f64> {
        if self.mult.is_empty() || !self.is_connected() {
            return Err(Error::Precondition(
                "Perron-Frobenius norm needs a connected graph with at least one edge".into(),
            ));
        }
        let adj = self.adjacency_lists();
        let apply = |x: &[f64], out: &mut [f64]| {
            for (v, row) in adj.iter().enumerate() {
                out[v] = row.iter().map(|&(w, m)| f64::from(m) * x[w]).sum();
            }
        };
        let total = self.vertex_count();
        let mut v = vec![1.0 / (total as f64).sqrt(); total];
        let mut av = vec![0.0; total];
        for _ in 0..NORM_MAX_ITERATIONS {
            apply(&v, &mut av);
            let lambda: f64 = av.iter().zip(&v).map(|(a, b)| a * b).sum();
            let residual = av
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();
            if residual < NORM_TOLERANCE {
                return Ok(lambda);
            }
            // v <- (A + I) v / ‖(A + I) v‖
            for (a, b) in av.iter_mut().zip(&v) {
                *a += b;
            }
            let norm = av.iter().map(|x| x * x).sum::<f64>().sqrt();
            for (x, a) in v.iter_mut().zip(&av) {
                *x = a / norm;
            }
        }
        Err(Error::Numeric(format!(
            "norm iteration did not reach residual {NORM_TOLERANCE:e} in {NORM_MAX_ITERATIONS} steps"
        )))
    }

    /// Graphviz rendering. Even vertices are boxes, odd vertices ellipses;
    /// edges with multiplicity above one carry it as a label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", escape(name));
        for v in &self.even {
            let _ = writeln!(out, "  \"{}\" [shape=box];", escape(v));
        }
        for v in &self.odd {
            let _ = writeln!(out, "  \"{}\" [shape=ellipse];", escape(v));
        }
        for (&(e, o), &m) in &self.mult {
            let _ = write!(
                out,
                "  \"{}\" -- \"{}\"",
                escape(&self.even[e]),
                escape(&self.odd[o])
            );
            if m > 1 {
                let _ = write!(out, " [label=\"{m}\"]");
            }
            out.push_str(";\n");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn vertex_index(even: &[String], odd: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(even.len() + odd.len());
    for (i, name) in even.iter().chain(odd).enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(schema(format!("duplicate vertex `{name}`")));
        }
    }
    Ok(index)
}

/// Path on the given vertex names, alternating parts starting with even.
pub fn path_graph_named(names: &[String]) -> Result<BipartiteGraph> {
    if names.len() < 2 {
        return Err(Error::Precondition(format!(
            "a path needs at least 2 vertices, got {}",
            names.len()
        )));
    }
    let even: Vec<String> = names.iter().step_by(2).cloned().collect();
    let odd: Vec<String> = names.iter().skip(1).step_by(2).cloned().collect();
    let edges = names.windows(2).enumerate().map(|(k, w)| {
        if k % 2 == 0 {
            (w[0].clone(), w[1].clone(), 1)
        } else {
            (w[1].clone(), w[0].clone(), 1)
        }
    });
    BipartiteGraph::new(even, odd, edges)
}

/// The path `A_m` on vertices `v0 - v1 - ... - v{m-1}`.
pub fn path_graph(m: usize) -> Result<BipartiteGraph> {
    let names: Vec<String> = (0..m).map(|k| format!("v{k}")).collect();
    path_graph_named(&names)
}
