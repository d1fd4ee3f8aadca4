//! Level-truncated `SU(3)` fusion.
//!
//! Weights are Dynkin labels `(a, b)`; at level `k` the admissible weights
//! are those with `a + b <= k`. Fusion coefficients come from the classical
//! Littlewood–Richardson product, folded into the level-`k` alcove by the
//! shifted affine Weyl group at height `k + 3` (Kac–Walton). The Verlinde
//! formula in [`verlinde`] is an independent numeric check.

mod verlinde;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::orbifold::ObstructionVerdict;

pub use verlinde::{verlinde, SMatrix, INTEGRALITY_TOLERANCE};

/// Largest level for which [`su3_ring`] builds the full ring.
pub const MAX_RING_LEVEL: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub a: u32,
    pub b: u32,
}

impl Weight {
    pub const ZERO: Weight = Weight { a: 0, b: 0 };

    pub const fn new(a: u32, b: u32) -> Self {
        Weight { a, b }
    }

    /// Dimension of the classical irreducible representation.
    pub fn dimension(&self) -> u64 {
        let (a, b) = (u64::from(self.a), u64::from(self.b));
        (a + 1) * (b + 1) * (a + b + 2) / 2
    }

    pub fn conjugate(&self) -> Weight {
        Weight::new(self.b, self.a)
    }

    pub fn is_admissible(&self, level: u32) -> bool {
        self.a + self.b <= level
    }

    /// `(a - b) mod 3`.
    pub fn triality(&self) -> u32 {
        (self.a + 2 * self.b) % 3
    }

    /// Partition `(a + b, b, 0)` of the Young diagram.
    pub fn partition(&self) -> [u32; 3] {
        [self.a + self.b, self.b, 0]
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Schema(format!("weight `{s}` is not of the form `a,b`"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        Ok(Weight::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// Weights with nonnegative multiplicities.
pub type WeightMultiset = BTreeMap<Weight, u32>;

/// Weights with signed multiplicities; zero entries are removed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignedWeightMultiset {
    entries: BTreeMap<Weight, i64>,
}

impl SignedWeightMultiset {
    pub fn add(&mut self, w: Weight, c: i64) {
        let slot = self.entries.entry(w).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.entries.remove(&w);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Weight, i64)> + '_ {
        self.entries.iter().map(|(&w, &c)| (w, c))
    }

    /// The multiset, provided every entry is nonnegative.
    pub fn into_nonnegative(self) -> Option<WeightMultiset> {
        self.entries
            .into_iter()
            .map(|(w, c)| u32::try_from(c).ok().map(|c| (w, c)))
            .collect()
    }
}

/// Classical `sl(3)` tensor product decomposition by the
/// Littlewood–Richardson rule.
///
/// Counts LR tableaux of shape `ν/λ` and content `μ`. Since `μ` has two
/// rows, a filling is determined by how many 1s (`x_r`) and 2s (`y_r`) sit
/// in each row `r` of the skew shape.
pub fn classical_lr(lambda: Weight, mu: Weight) -> WeightMultiset {
    let l = lambda.partition();
    let [m1, m2, _] = mu.partition();
    let total = l[0] + l[1] + m1 + m2;
    let mut out = WeightMultiset::new();
    for n1 in l[0]..=l[0] + m1 + m2 {
        for n2 in l[1]..=n1.min(l[1] + m1 + m2) {
            let Some(n3) = total.checked_sub(n1 + n2) else {
                continue;
            };
            if n3 > n2 || n3 < l[2] {
                continue;
            }
            let nu = [n1, n2, n3];
            let count = count_lr_fillings(&l, &nu, m1, m2);
            if count > 0 {
                // Drop full columns: (n1, n2, n3) -> Dynkin labels.
                *out.entry(Weight::new(n1 - n2, n2 - n3)).or_insert(0) += count;
            }
        }
    }
    out
}

fn count_lr_fillings(lambda: &[u32; 3], nu: &[u32; 3], ones: u32, twos: u32) -> u32 {
    let len = [nu[0] - lambda[0], nu[1] - lambda[1], nu[2] - lambda[2]];
    let mut count = 0;
    // The reading word starts with row 1 read right to left, so row 1 holds
    // no 2s.
    let y1 = 0;
    let x1 = len[0];
    for y2 in 0..=len[1].min(twos) {
        let x2 = len[1] - y2;
        let Some(y3) = twos.checked_sub(y2) else {
            continue;
        };
        if y3 > len[2] {
            continue;
        }
        let x3 = len[2] - y3;
        if x1 + x2 + x3 != ones {
            continue;
        }
        let x = [x1, x2, x3];
        let y = [y1, y2, y3];
        // Lattice condition on the reading word.
        if y[1] > x[0] || y[1] + y[2] > x[0] + x[1] {
            continue;
        }
        // Column strictness between consecutive rows: 1s must sit under
        // cells of λ, 2s under cells of λ or 1s.
        let strict = (0..2).all(|r| {
            lambda[r + 1] + x[r + 1] <= lambda[r] && nu[r + 1] <= lambda[r] + x[r]
        });
        if strict {
            count += 1;
        }
    }
    count
}

/// Shifted affine Dynkin labels `(p0, p1, p2)` of `w + ρ` at height `h`.
/// Reflects into the fundamental alcove; returns the alcove weight and the
/// sign of the Weyl element, or `None` when the point lies on a wall.
pub fn reflect_to_alcove(w: Weight, level: u32) -> Option<(Weight, i64)> {
    let h = i64::from(level) + 3;
    let p1 = i64::from(w.a) + 1;
    let p2 = i64::from(w.b) + 1;
    let mut p = [h - p1 - p2, p1, p2];
    let mut sign = 1i64;
    loop {
        if p.contains(&0) {
            return None;
        }
        let Some(i) = p.iter().position(|&x| x < 0) else {
            break;
        };
        let x = p[i];
        p[i] = -x;
        for (j, q) in p.iter_mut().enumerate() {
            if j != i {
                *q += x;
            }
        }
        sign = -sign;
    }
    Some((Weight::new((p[1] - 1) as u32, (p[2] - 1) as u32), sign))
}

/// Level-`k` fusion `λ ⊗ μ` by the Kac–Walton algorithm.
pub fn kac_walton(lambda: Weight, mu: Weight, level: u32) -> Result<WeightMultiset> {
    for w in [lambda, mu] {
        if !w.is_admissible(level) {
            return Err(Error::Precondition(format!(
                "weight ({w}) is not admissible at level {level}"
            )));
        }
    }
    let mut signed = SignedWeightMultiset::default();
    for (nu, c) in classical_lr(lambda, mu) {
        if let Some((image, sign)) = reflect_to_alcove(nu, level) {
            signed.add(image, sign * i64::from(c));
        }
    }
    signed.into_nonnegative().ok_or_else(|| {
        Error::Numeric(format!(
            "negative multiplicity left after reflecting ({lambda}) x ({mu}) at level {level}"
        ))
    })
}

/// Admissible weights at `level`, ordered by `a + b`, then by decreasing `a`.
pub fn admissible_weights(level: u32) -> Vec<Weight> {
    (0..=level)
        .flat_map(|s| (0..=s).rev().map(move |a| Weight::new(a, s - a)))
        .collect()
}

/// The order-3 simple current `J(a, b) = (k - a - b, a)` at level `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimpleCurrent {
    pub level: u32,
}

impl SimpleCurrent {
    pub fn new(level: u32) -> Self {
        SimpleCurrent { level }
    }

    pub fn apply(&self, w: Weight) -> Weight {
        Weight::new(self.level - w.a - w.b, w.a)
    }

    /// `J(0,0) = (k, 0)`, the invertible weight generating the action.
    pub fn generator(&self) -> Weight {
        self.apply(Weight::ZERO)
    }

    pub fn fixed_points(&self) -> Vec<Weight> {
        admissible_weights(self.level)
            .into_iter()
            .filter(|&w| self.apply(w) == w)
            .collect()
    }

    /// `(w, J(w))` over all admissible weights.
    pub fn permutation(&self) -> Vec<(Weight, Weight)> {
        admissible_weights(self.level)
            .into_iter()
            .map(|w| (w, self.apply(w)))
            .collect()
    }
}

pub fn simple_current(level: u32) -> SimpleCurrent {
    SimpleCurrent::new(level)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObstructionCount {
    pub k: u32,
    pub level: u32,
    pub rho: Weight,
    /// `N_{ρρ}^ρ` at level `3k`.
    pub m: u32,
    pub gcd_with_3: u32,
    pub verdict: ObstructionVerdict,
}

/// `m = N_{ρρ}^ρ` for `ρ = (k, k)` at level `3k`, with the gcd verdict
/// against the order-3 simple current.
pub fn obstruction_m(k: u32) -> Result<ObstructionCount> {
    use num_integer::Integer;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let level = 3 * k;
    let rho = Weight::new(k, k);
    let m = kac_walton(rho, rho, level)?
        .get(&rho)
        .copied()
        .unwrap_or(0);
    Ok(ObstructionCount {
        k,
        level,
        rho,
        m,
        gcd_with_3: m.gcd(&3),
        verdict: ObstructionVerdict::from_counts(m, 3),
    })
}

fn ring_on(weights: &[Weight], level: u32) -> Result<FusionRing> {
    let position: BTreeMap<Weight, usize> =
        weights.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut constants = Vec::new();
    for (i, &x) in weights.iter().enumerate() {
        for (j, &y) in weights.iter().enumerate() {
            if j < i {
                // Fusion is commutative; copy the transposed pair.
                continue;
            }
            for (z, c) in kac_walton(x, y, level)? {
                let k = *position.get(&z).ok_or_else(|| {
                    Error::Precondition(format!("({x}) x ({y}) leaves the weight set via ({z})"))
                })?;
                constants.push(((i, j, k), c));
                if i != j {
                    constants.push(((j, i, k), c));
                }
            }
        }
    }
    let labels = weights.iter().map(Weight::label).collect();
    let dual = weights
        .iter()
        .map(|w| {
            position.get(&w.conjugate()).copied().ok_or_else(|| {
                Error::Precondition(format!("conjugate of ({w}) is not in the weight set"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FusionRing::from_indices(labels, position[&Weight::ZERO], dual, constants)
}

/// The full level-`k` fusion ring, labels `"a,b"`, unit `"0,0"`.
pub fn su3_ring(level: u32) -> Result<FusionRing> {
    if level > MAX_RING_LEVEL {
        return Err(Error::Precondition(format!(
            "level {level} exceeds the cap {MAX_RING_LEVEL}"
        )));
    }
    ring_on(&admissible_weights(level), level)
}

/// The subring of triality-zero weights (`a ≡ b mod 3`).
pub fn triality_zero_ring(level: u32) -> Result<FusionRing> {
    if level > MAX_RING_LEVEL {
        return Err(Error::Precondition(format!(
            "level {level} exceeds the cap {MAX_RING_LEVEL}"
        )));
    }
    let weights: Vec<Weight> = admissible_weights(level)
        .into_iter()
        .filter(|w| w.triality() == 0)
        .collect();
    ring_on(&weights, level)
}

#[cfg(test)]
mod tests;
