//! Numeric fusion coefficients from the `SU(3)_k` modular S-matrix.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{admissible_weights, Weight};
use crate::error::{Error, Result};

/// Maximum distance from an integer accepted before rounding.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// Unitary S-matrix at a fixed level, indexed by [`admissible_weights`].
#[derive(Debug, Clone)]
pub struct SMatrix {
    level: u32,
    weights: Vec<Weight>,
    position: BTreeMap<Weight, usize>,
    entries: Vec<Complex64>,
}

/// Images `w(x)` over the Weyl group of `sl(3)` with signs `ε(w)`, for a
/// regular `x` in Dynkin-label coordinates.
fn signed_weyl_orbit(x: (i64, i64)) -> Vec<((i64, i64), f64)> {
    let mut seen = BTreeMap::new();
    seen.insert(x, 1.0);
    let mut queue = VecDeque::from([(x, 1.0)]);
    while let Some(((p, q), sign)) = queue.pop_front() {
        for image in [(-p, p + q), (p + q, -q)] {
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(image) {
                e.insert(-sign);
                queue.push_back((image, -sign));
            }
        }
    }
    seen.into_iter().collect()
}

/// `(x, y)` with the inverse Cartan matrix `(1/3)[[2, 1], [1, 2]]`.
fn inner(x: (i64, i64), y: (i64, i64)) -> f64 {
    (2 * x.0 * y.0 + x.0 * y.1 + x.1 * y.0 + 2 * x.1 * y.1) as f64 / 3.0
}

impl SMatrix {
    /// `S_{λμ} ∝ Σ_w ε(w) exp(-2πi (w(λ+ρ), μ+ρ) / (k+3))`, normalized to be
    /// unitary.
    pub fn new(level: u32) -> Self {
        let weights = admissible_weights(level);
        let h = f64::from(level + 3);
        let shifted = |w: &Weight| (i64::from(w.a) + 1, i64::from(w.b) + 1);
        let size = weights.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); size * size];
        for (i, l) in weights.iter().enumerate() {
            let orbit = signed_weyl_orbit(shifted(l));
            for (j, m) in weights.iter().enumerate() {
                let target = shifted(m);
                entries[i * size + j] = orbit
                    .iter()
                    .map(|&(image, sign)| {
                        Complex64::from_polar(sign, -2.0 * PI * inner(image, target) / h)
                    })
                    .sum();
            }
        }
        let norm = entries[..size].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        entries.iter_mut().for_each(|z| *z /= norm);
        let position = weights.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        SMatrix {
            level,
            weights,
            position,
            entries,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn entry(&self, l: Weight, m: Weight) -> Option<Complex64> {
        let size = self.weights.len();
        Some(self.entries[self.position.get(&l)? * size + self.position.get(&m)?])
    }

    /// The unrounded Verlinde sum `Σ_σ S_{λσ} S_{μσ} conj(S_{νσ}) / S_{0σ}`.
    pub fn raw_fusion(&self, l: Weight, m: Weight, n: Weight) -> Result<Complex64> {
        let size = self.weights.len();
        let row = |w: Weight| {
            self.position.get(&w).map(|&i| &self.entries[i * size..(i + 1) * size]).ok_or_else(
                || {
                    Error::Precondition(format!(
                        "weight ({w}) is not admissible at level {}",
                        self.level
                    ))
                },
            )
        };
        let (sl, sm, sn, s0) = (row(l)?, row(m)?, row(n)?, row(Weight::ZERO)?);
        Ok((0..size)
            .map(|s| sl[s] * sm[s] * sn[s].conj() / s0[s])
            .sum())
    }

    /// `N_{λμ}^ν` rounded to an integer; fails if the sum is not within
    /// [`INTEGRALITY_TOLERANCE`] of a nonnegative integer.
    pub fn fusion(&self, l: Weight, m: Weight, n: Weight) -> Result<u32> {
        let raw = self.raw_fusion(l, m, n)?;
        let rounded = raw.re.round();
        let residue = (raw - Complex64::new(rounded, 0.0)).norm();
        if residue > INTEGRALITY_TOLERANCE || rounded < 0.0 {
            return Err(Error::Numeric(format!(
                "Verlinde sum for ({l}) x ({m}) -> ({n}) at level {} is {raw}, not a nonnegative integer",
                self.level
            )));
        }
        Ok(rounded as u32)
    }

    /// Distance of the unrounded sum from the nearest integer.
    pub fn integrality_residue(&self, l: Weight, m: Weight, n: Weight) -> Result<f64> {
        let raw = self.raw_fusion(l, m, n)?;
        Ok((raw - Complex64::new(raw.re.round(), 0.0)).norm())
    }
}

/// One-shot Verlinde coefficient; builds the S-matrix for `level`.
pub fn verlinde(l: Weight, m: Weight, n: Weight, level: u32) -> Result<u32> {
    SMatrix::new(level).fusion(l, m, n)
}
