//! Exact fusion rings.
//!
//! A [`FusionRing`] is a based ring with nonnegative integer structure
//! constants `N_{ij}^k`, a unit and a duality involution. Constants are
//! stored sparsely per ordered pair `(i, j)`; all multiplicity arithmetic is
//! exact integer arithmetic.

mod dims;
mod group;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{schema, Error, Result};

pub use dims::{DimensionTable, DEFAULT_TOLERANCE};
pub use group::{classify_order_profile, SmallGroup};

/// Maximum number of witnesses stored per violated axiom.
pub const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    unit: usize,
    dual: Vec<usize>,
    /// `products[i * rank + j]` lists `(k, N_{ij}^k)` with `N > 0`, sorted by `k`.
    products: Vec<Vec<(usize, u32)>>,
}

impl FusionRing {
    /// Builds a ring from label names. Schema problems (unknown or duplicate
    /// labels, zero constants, repeated triples) are reported as
    /// [`Error::Schema`]; the ring axioms themselves are checked by
    /// [`FusionRing::validate`].
    pub fn new<S: AsRef<str>>(
        labels: Vec<String>,
        unit: &str,
        dual: &BTreeMap<String, String>,
        constants: impl IntoIterator<Item = (S, S, S, u32)>,
    ) -> Result<Self> {
        let index = label_index(&labels)?;
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| schema(format!("unknown label `{name}`")))
        };
        let unit = lookup(unit)?;
        let mut dual_idx = vec![usize::MAX; labels.len()];
        for (from, to) in dual {
            dual_idx[lookup(from)?] = lookup(to)?;
        }
        if let Some(missing) = dual_idx.iter().position(|&d| d == usize::MAX) {
            return Err(schema(format!(
                "dual of label `{}` is not given",
                labels[missing]
            )));
        }
        let mut triples = Vec::new();
        for (i, j, k, v) in constants {
            triples.push(((lookup(i.as_ref())?, lookup(j.as_ref())?, lookup(k.as_ref())?), v));
        }
        Self::from_indices(labels, unit, dual_idx, triples)
    }

    /// Builds a ring from index triples `((i, j, k), N_{ij}^k)`.
    pub fn from_indices(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        constants: impl IntoIterator<Item = ((usize, usize, usize), u32)>,
    ) -> Result<Self> {
        let index = label_index(&labels)?;
        let rank = labels.len();
        if unit >= rank {
            return Err(schema(format!("unit index {unit} out of range")));
        }
        if dual.len() != rank {
            return Err(schema(format!(
                "dual map has {} entries for {rank} labels",
                dual.len()
            )));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(schema(format!("dual index {bad} out of range")));
        }
        let mut products: Vec<Vec<(usize, u32)>> = vec![Vec::new(); rank * rank];
        for ((i, j, k), v) in constants {
            if i >= rank || j >= rank || k >= rank {
                return Err(schema(format!("constant index ({i}, {j}, {k}) out of range")));
            }
            if v == 0 {
                return Err(schema(format!(
                    "structure constant N[{}, {}, {}] must be >= 1 when listed",
                    labels[i], labels[j], labels[k]
                )));
            }
            let slot = &mut products[i * rank + j];
            if slot.iter().any(|&(kk, _)| kk == k) {
                return Err(schema(format!(
                    "structure constant N[{}, {}, {}] listed twice",
                    labels[i], labels[j], labels[k]
                )));
            }
            slot.push((k, v));
        }
        for slot in &mut products {
            slot.sort_unstable();
        }
        Ok(FusionRing {
            labels,
            index,
            unit,
            dual,
            products,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Like [`FusionRing::index_of`] but with a schema error for unknown labels.
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| schema(format!("unknown label `{label}`")))
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// `N_{ij}^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let slot = self.product(i, j);
        match slot.binary_search_by_key(&k, |&(kk, _)| kk) {
            Ok(pos) => slot[pos].1,
            Err(_) => 0,
        }
    }

    /// Nonzero terms of the basis product `i * j`, sorted by label index.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.rank() + j]
    }

    /// All nonzero constants as `((i, j, k), N_{ij}^k)` in index order.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize, usize), u32)> + '_ {
        let rank = self.rank();
        self.products.iter().enumerate().flat_map(move |(ij, slot)| {
            slot.iter()
                .map(move |&(k, v)| ((ij / rank, ij % rank, k), v))
        })
    }

    /// Bilinear extension of the structure constants to formal sums.
    pub fn fuse(&self, x: &FormalSum, y: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                for &(k, v) in self.product(i, j) {
                    out.add_term(k, a * b * u64::from(v));
                }
            }
        }
        out
    }

    /// Dimension of the intertwiner space between two sums of irreducibles.
    pub fn hom_dim(&self, x: &FormalSum, y: &FormalSum) -> u64 {
        x.iter().map(|(i, a)| a * y.coeff(i)).sum()
    }

    /// Checks every ring axiom and collects violations with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let rank = self.rank();
        let name = |i: usize| self.labels[i].clone();

        for i in 0..rank {
            if self.dual[self.dual[i]] != i {
                report.record(Axiom::DualInvolution, vec![name(i)], format!(
                    "dual(dual({})) = {}",
                    self.labels[i],
                    self.labels[self.dual[self.dual[i]]]
                ));
            }
        }
        if self.dual[self.unit] != self.unit {
            report.record(
                Axiom::DualUnit,
                vec![name(self.unit)],
                format!("dual(unit) = {}", self.labels[self.dual[self.unit]]),
            );
        }

        for j in 0..rank {
            let expect = [(j, 1u32)];
            if self.product(self.unit, j) != expect {
                report.record(Axiom::LeftUnit, vec![name(j)], format!(
                    "unit * {} = {}",
                    self.labels[j],
                    self.describe(self.product(self.unit, j))
                ));
            }
            if self.product(j, self.unit) != expect {
                report.record(Axiom::RightUnit, vec![name(j)], format!(
                    "{} * unit = {}",
                    self.labels[j],
                    self.describe(self.product(j, self.unit))
                ));
            }
        }

        for i in 0..rank {
            for j in 0..rank {
                let got = self.n(i, j, self.unit);
                let want = u32::from(j == self.dual[i]);
                if got != want {
                    report.record(
                        Axiom::DualPairing,
                        vec![name(i), name(j)],
                        format!("N[{}, {}, unit] = {got}, expected {want}", self.labels[i], self.labels[j]),
                    );
                }
            }
        }

        // Both reciprocity maps are involutions on triples once `dual` is, so
        // it suffices to visit the nonzero constants.
        if report.is_clean(Axiom::DualInvolution) {
            for ((i, j, k), v) in self.constants() {
                let first = self.n(self.dual[i], k, j);
                let second = self.n(k, self.dual[j], i);
                if first != v || second != v {
                    report.record(
                        Axiom::FrobeniusReciprocity,
                        vec![name(i), name(j), name(k)],
                        format!(
                            "N[i,j,k] = {v}, N[dual i,k,j] = {first}, N[k,dual j,i] = {second}"
                        ),
                    );
                }
            }
        }

        self.check_associativity(&mut report);
        report
    }

    fn check_associativity(&self, report: &mut ValidationReport) {
        let rank = self.rank();
        let mut left = vec![0u64; rank];
        let mut right = vec![0u64; rank];
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    // (i j) k
                    for &(m, a) in self.product(i, j) {
                        for &(l, b) in self.product(m, k) {
                            left[l] += u64::from(a) * u64::from(b);
                        }
                    }
                    // i (j k)
                    for &(m, a) in self.product(j, k) {
                        for &(l, b) in self.product(i, m) {
                            right[l] += u64::from(a) * u64::from(b);
                        }
                    }
                    for l in 0..rank {
                        if left[l] != right[l] {
                            report.record(
                                Axiom::Associativity,
                                vec![
                                    self.labels[i].clone(),
                                    self.labels[j].clone(),
                                    self.labels[k].clone(),
                                    self.labels[l].clone(),
                                ],
                                format!(
                                    "coefficient of {} in ({}*{})*{} is {}, in {}*({}*{}) is {}",
                                    self.labels[l],
                                    self.labels[i],
                                    self.labels[j],
                                    self.labels[k],
                                    left[l],
                                    self.labels[i],
                                    self.labels[j],
                                    self.labels[k],
                                    right[l]
                                ),
                            );
                        }
                        left[l] = 0;
                        right[l] = 0;
                    }
                }
            }
        }
    }

    fn describe(&self, terms: &[(usize, u32)]) -> String {
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|&(k, v)| {
                if v == 1 {
                    self.labels[k].clone()
                } else {
                    format!("{v}{}", self.labels[k])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Human-readable rendering of a formal sum.
    pub fn format_sum(&self, x: &FormalSum) -> String {
        let terms: Vec<(usize, u32)> = x
            .iter()
            .map(|(k, v)| (k, u32::try_from(v).unwrap_or(u32::MAX)))
            .collect();
        self.describe(&terms)
    }

    /// Labels `i` whose fusion matrix is a permutation matrix and for which
    /// `N_{i, dual(i)}^{unit} = 1`.
    pub fn invertibles(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_invertible(i)).collect()
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        if self.n(i, self.dual[i], self.unit) != 1 {
            return false;
        }
        let rank = self.rank();
        let mut hit = vec![false; rank];
        for j in 0..rank {
            match self.product(i, j) {
                [(k, 1)] if !hit[*k] => hit[*k] = true,
                _ => return false,
            }
        }
        true
    }

    /// For invertible `i`, the single label `i * j`.
    pub(crate) fn simple_product(&self, i: usize, j: usize) -> Option<usize> {
        match self.product(i, j) {
            [(k, 1)] => Some(*k),
            _ => None,
        }
    }

    /// Identifies the group formed by `elems` under fusion.
    pub fn classify_group(&self, elems: &[usize]) -> Result<SmallGroup> {
        group::classify(self, elems)
    }

    /// Subring on `subset` (in the given order). The subset must contain the
    /// unit and be closed under fusion and duality.
    pub fn restrict(&self, subset: &[usize]) -> Result<FusionRing> {
        let mut position = vec![usize::MAX; self.rank()];
        for (new, &old) in subset.iter().enumerate() {
            if old >= self.rank() {
                return Err(schema(format!("subset index {old} out of range")));
            }
            position[old] = new;
        }
        let inside = |i: usize| position[i] != usize::MAX;
        if !inside(self.unit) {
            return Err(Error::Precondition("subset does not contain the unit".into()));
        }
        let mut constants = Vec::new();
        for &i in subset {
            if !inside(self.dual[i]) {
                return Err(Error::Precondition(format!(
                    "subset not closed under duality at `{}`",
                    self.labels[i]
                )));
            }
            for &j in subset {
                for &(k, v) in self.product(i, j) {
                    if !inside(k) {
                        return Err(Error::Precondition(format!(
                            "subset not closed under fusion: {} * {} contains {}",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                    constants.push(((position[i], position[j], position[k]), v));
                }
            }
        }
        let labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let dual = subset.iter().map(|&i| position[self.dual[i]]).collect();
        FusionRing::from_indices(labels, position[self.unit], dual, constants)
    }

    /// Same ring with new label names (index order unchanged).
    pub fn relabel(&self, names: Vec<String>) -> Result<FusionRing> {
        if names.len() != self.rank() {
            return Err(schema(format!(
                "relabeling has {} names for {} labels",
                names.len(),
                self.rank()
            )));
        }
        FusionRing::from_indices(names, self.unit, self.dual.clone(), self.constants())
    }

    /// Searches for a label bijection `self -> other` preserving unit,
    /// duality and every structure constant. Backtracking; meant for
    /// small rings.
    pub fn find_isomorphism(&self, other: &FusionRing) -> Option<Vec<usize>> {
        if self.rank() != other.rank() {
            return None;
        }
        let rank = self.rank();
        let signature = |r: &FusionRing, i: usize| {
            let row_total: u64 = (0..r.rank())
                .map(|j| r.product(i, j).iter().map(|&(_, v)| u64::from(v)).sum::<u64>())
                .sum();
            (r.dual(i) == i, r.n(i, i, i), row_total)
        };
        let mut map = vec![usize::MAX; rank];
        let mut used = vec![false; rank];
        map[self.unit] = other.unit;
        used[other.unit] = true;
        let order: Vec<usize> = (0..rank).filter(|&i| i != self.unit).collect();

        fn consistent(a: &FusionRing, b: &FusionRing, map: &[usize], i: usize) -> bool {
            if map[a.dual(i)] != usize::MAX && map[a.dual(i)] != b.dual(map[i]) {
                return false;
            }
            for j in 0..a.rank() {
                if map[j] == usize::MAX {
                    continue;
                }
                for k in 0..a.rank() {
                    if map[k] == usize::MAX {
                        continue;
                    }
                    let (x, y, z) = (map[i], map[j], map[k]);
                    if a.n(i, j, k) != b.n(x, y, z)
                        || a.n(j, i, k) != b.n(y, x, z)
                        || a.n(j, k, i) != b.n(y, z, x)
                    {
                        return false;
                    }
                }
            }
            true
        }

        fn search(
            a: &FusionRing,
            b: &FusionRing,
            order: &[usize],
            depth: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            signature: &dyn Fn(&FusionRing, usize) -> (bool, u32, u64),
        ) -> bool {
            let Some(&i) = order.get(depth) else {
                return true;
            };
            let want = signature(a, i);
            for candidate in 0..b.rank() {
                if used[candidate] || signature(b, candidate) != want {
                    continue;
                }
                map[i] = candidate;
                used[candidate] = true;
                if consistent(a, b, map, i) && search(a, b, order, depth + 1, map, used, signature)
                {
                    return true;
                }
                map[i] = usize::MAX;
                used[candidate] = false;
            }
            false
        }

        if !consistent(self, other, &map, self.unit) {
            return None;
        }
        search(self, other, &order, 0, &mut map, &mut used, &signature).then_some(map)
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    if labels.is_empty() {
        return Err(schema("a fusion ring needs at least one label"));
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(schema(format!("duplicate label `{l}`")));
        }
    }
    Ok(index)
}

/// Nonnegative integer combination of basis labels. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalSum {
    coeffs: BTreeMap<usize, u64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut s = Self::zero();
        s.add_term(i, 1);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut s = Self::zero();
        for (i, c) in terms {
            s.add_term(i, c);
        }
        s
    }

    pub fn add_term(&mut self, i: usize, c: u64) {
        if c > 0 {
            *self.coeffs.entry(i).or_insert(0) += c;
        }
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    LeftUnit,
    RightUnit,
    DualPairing,
    DualInvolution,
    DualUnit,
    Associativity,
    FrobeniusReciprocity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::LeftUnit => "left unit (N[unit,j,k] = delta_jk)",
            Axiom::RightUnit => "right unit (N[i,unit,k] = delta_ik)",
            Axiom::DualPairing => "dual pairing (N[i,j,unit] = delta_{j,dual i})",
            Axiom::DualInvolution => "dual is an involution",
            Axiom::DualUnit => "dual(unit) = unit",
            Axiom::Associativity => "associativity",
            Axiom::FrobeniusReciprocity => "Frobenius reciprocity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub labels: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Total number of failing index tuples; at most [`MAX_WITNESSES`] are kept.
    pub count: usize,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    fn is_clean(&self, axiom: Axiom) -> bool {
        self.violation(axiom).is_none()
    }

    fn record(&mut self, axiom: Axiom, labels: Vec<String>, detail: String) {
        let entry = match self.violations.iter().position(|v| v.axiom == axiom) {
            Some(p) => &mut self.violations[p],
            None => {
                self.violations.push(AxiomViolation {
                    axiom,
                    count: 0,
                    witnesses: Vec::new(),
                });
                self.violations.last_mut().unwrap()
            }
        };
        entry.count += 1;
        if entry.witnesses.len() < MAX_WITNESSES {
            entry.witnesses.push(Witness { labels, detail });
        }
    }
}
