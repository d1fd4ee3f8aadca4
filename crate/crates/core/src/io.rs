//! JSON file formats (`"format": "orbifusion/1"`).
//!
//! Every reader validates the document completely before building any
//! structure, so a malformed file never yields a partially constructed ring
//! or graph.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{schema, Error, Result};
use crate::fusion::FusionRing;
use crate::graph::BipartiteGraph;
use crate::orbifold::ObstructionValue;

pub const FORMAT: &str = "orbifusion/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub format: String,
    pub labels: Vec<String>,
    pub unit: String,
    pub dual: BTreeMap<String, String>,
    #[serde(rename = "N")]
    pub n: Vec<(String, String, String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub format: String,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub edges: Vec<(String, String, i64)>,
}

/// Either a path to a ring file (relative to the request file) or an
/// inline ring document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Path(String),
    Inline(RingFile),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionSpec {
    pub j: i64,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbifoldRequest {
    pub format: String,
    pub ring: RingRef,
    pub alpha: String,
    pub rho: String,
    pub loi_trivial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionSpec>,
}

/// A request with its ring loaded and the obstruction checked.
#[derive(Debug, Clone)]
pub struct ResolvedRequest {
    pub ring: FusionRing,
    pub alpha: String,
    pub rho: String,
    pub loi_trivial: bool,
    pub obstruction: Option<ObstructionValue>,
}

fn check_format(found: &str) -> Result<()> {
    if found != FORMAT {
        return Err(schema(format!(
            "unsupported format {found:?}, expected {FORMAT:?}"
        )));
    }
    Ok(())
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| schema(format!("invalid {what} document: {e}")))
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| schema(format!("cannot read {}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| schema(format!("cannot write {}: {e}", path.display())))
}

impl RingFile {
    pub fn from_ring(ring: &FusionRing) -> Self {
        let labels = ring.labels().to_vec();
        let dual = (0..ring.rank())
            .map(|i| (labels[i].clone(), labels[ring.dual(i)].clone()))
            .collect();
        let n = ring
            .constants()
            .map(|((i, j, k), v)| {
                (labels[i].clone(), labels[j].clone(), labels[k].clone(), i64::from(v))
            })
            .collect();
        RingFile {
            format: FORMAT.to_string(),
            unit: labels[ring.unit()].clone(),
            labels,
            dual,
            n,
        }
    }

    pub fn to_ring(&self) -> Result<FusionRing> {
        check_format(&self.format)?;
        let mut constants = Vec::with_capacity(self.n.len());
        for (i, j, k, v) in &self.n {
            let v = u32::try_from(*v)
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| {
                    schema(format!("N[{i}, {j}, {k}] = {v}: entries must be integers >= 1"))
                })?;
            constants.push((i.as_str(), j.as_str(), k.as_str(), v));
        }
        FusionRing::new(self.labels.clone(), &self.unit, &self.dual, constants)
    }
}

impl GraphFile {
    pub fn from_graph(graph: &BipartiteGraph) -> Self {
        let edges = graph
            .edges()
            .map(|((e, o), m)| {
                (
                    graph.even()[e].clone(),
                    graph.odd()[o].clone(),
                    i64::from(m),
                )
            })
            .collect();
        GraphFile {
            format: FORMAT.to_string(),
            even: graph.even().to_vec(),
            odd: graph.odd().to_vec(),
            edges,
        }
    }

    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        check_format(&self.format)?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (e, o, m) in &self.edges {
            let m = u32::try_from(*m)
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| schema(format!("edge ({e}, {o}) has multiplicity {m}; must be >= 1")))?;
            edges.push((e.as_str(), o.as_str(), m));
        }
        BipartiteGraph::new(self.even.clone(), self.odd.clone(), edges)
    }
}

pub fn parse_ring(text: &str) -> Result<FusionRing> {
    parse::<RingFile>(text, "ring")?.to_ring()
}

pub fn read_ring(path: &Path) -> Result<FusionRing> {
    parse_ring(&read_text(path)?)
}

pub fn ring_to_json(ring: &FusionRing) -> String {
    to_pretty(&RingFile::from_ring(ring))
}

pub fn write_ring(path: &Path, ring: &FusionRing) -> Result<()> {
    write_text(path, &ring_to_json(ring))
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    parse::<GraphFile>(text, "graph")?.to_graph()
}

pub fn read_graph(path: &Path) -> Result<BipartiteGraph> {
    parse_graph(&read_text(path)?)
}

pub fn graph_to_json(graph: &BipartiteGraph) -> String {
    to_pretty(&GraphFile::from_graph(graph))
}

pub fn write_graph(path: &Path, graph: &BipartiteGraph) -> Result<()> {
    write_text(path, &graph_to_json(graph))
}

/// Permutation file: a JSON object mapping labels to labels.
pub fn parse_permutation(text: &str) -> Result<BTreeMap<String, String>> {
    parse(text, "permutation")
}

pub fn read_permutation(path: &Path) -> Result<BTreeMap<String, String>> {
    parse_permutation(&read_text(path)?)
}

impl ObstructionSpec {
    pub fn to_value(self) -> Result<ObstructionValue> {
        let (Ok(j), Ok(n)) = (u32::try_from(self.j), u32::try_from(self.n)) else {
            return Err(schema(format!(
                "obstruction {{j: {}, n: {}}} must have nonnegative entries",
                self.j, self.n
            )));
        };
        ObstructionValue::new(j, n)
    }
}

/// Parses an orbifold request; ring paths are resolved against `base`.
pub fn parse_request(text: &str, base: Option<&Path>) -> Result<ResolvedRequest> {
    let req: OrbifoldRequest = parse(text, "orbifold request")?;
    check_format(&req.format)?;
    let ring = match &req.ring {
        RingRef::Inline(file) => file.to_ring()?,
        RingRef::Path(p) => {
            let path: PathBuf = match base {
                Some(dir) => dir.join(p),
                None => PathBuf::from(p),
            };
            read_ring(&path)?
        }
    };
    let obstruction = req.obstruction.map(ObstructionSpec::to_value).transpose()?;
    for label in [&req.alpha, &req.rho] {
        if ring.index_of(label).is_none() {
            return Err(schema(format!("request names unknown label {label:?}")));
        }
    }
    Ok(ResolvedRequest {
        ring,
        alpha: req.alpha,
        rho: req.rho,
        loi_trivial: req.loi_trivial,
        obstruction,
    })
}

pub fn read_request(path: &Path) -> Result<ResolvedRequest> {
    parse_request(&read_text(path)?, path.parent())
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Parses `j/n` as an exact obstruction value; decimals are rejected.
pub fn parse_obstruction_arg(text: &str) -> Result<ObstructionValue> {
    let (j, n) = text
        .split_once('/')
        .ok_or_else(|| schema(format!("obstruction {text:?} must be written j/n")))?;
    let parse_int = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| schema(format!("obstruction {text:?}: {s:?} is not a nonnegative integer")))
    };
    ObstructionValue::new(parse_int(j)?, parse_int(n)?).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(m),
        other => schema(other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::rings;

    #[test]
    fn ring_round_trip() {
        let ring = rings::e6_affine_ring();
        let text = ring_to_json(&ring);
        assert_eq!(parse_ring(&text).unwrap(), ring);
        assert_eq!(ring_to_json(&parse_ring(&text).unwrap()), text);
    }

    #[test]
    fn graph_round_trip() {
        let g = rings::e6_graph();
        assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_format = r#"{"format":"other","labels":["1"],"unit":"1","dual":{"1":"1"},"N":[["1","1","1",1]]}"#;
        assert!(matches!(parse_ring(bad_format), Err(Error::Schema(_))));
        let zero = r#"{"format":"orbifusion/1","labels":["1"],"unit":"1","dual":{"1":"1"},"N":[["1","1","1",0]]}"#;
        assert!(matches!(parse_ring(zero), Err(Error::Schema(_))));
        let unknown = r#"{"format":"orbifusion/1","labels":["1"],"unit":"1","dual":{"1":"1"},"N":[["1","x","1",1]]}"#;
        assert!(matches!(parse_ring(unknown), Err(Error::Schema(_))));
        let extra = r#"{"format":"orbifusion/1","labels":["1"],"unit":"1","dual":{"1":"1"},"N":[],"x":1}"#;
        assert!(matches!(parse_ring(extra), Err(Error::Schema(_))));
        assert!(matches!(parse_ring("{"), Err(Error::Schema(_))));
    }

    #[test]
    fn inline_request() {
        let ring = RingFile::from_ring(&rings::e6_ring());
        let req = OrbifoldRequest {
            format: FORMAT.into(),
            ring: RingRef::Inline(ring),
            alpha: "alpha".into(),
            rho: "rho".into(),
            loi_trivial: true,
            obstruction: Some(ObstructionSpec { j: 1, n: 2 }),
        };
        let resolved = parse_request(&to_pretty(&req), None).unwrap();
        assert_eq!(resolved.obstruction, Some(ObstructionValue { j: 1, n: 2 }));
        assert_eq!(resolved.ring.rank(), 3);
    }

    #[test]
    fn obstruction_argument() {
        assert_eq!(parse_obstruction_arg("1/2").unwrap(), ObstructionValue { j: 1, n: 2 });
        assert!(parse_obstruction_arg("0.5").is_err());
        assert!(parse_obstruction_arg("-1/2").is_err());
    }
}
