//! Frobenius–Perron dimensions by power iteration.

use serde::Serialize;

use super::FusionRing;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
const MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionTable {
    pub dims: Vec<f64>,
    pub tolerance: f64,
}

impl DimensionTable {
    pub fn get(&self, i: usize) -> f64 {
        self.dims[i]
    }

    /// `Σ_i d_i²`.
    pub fn global_dimension(&self) -> f64 {
        self.dims.iter().map(|d| d * d).sum()
    }

    /// Largest violation of `d_i d_j = Σ_k N_{ij}^k d_k` over all pairs.
    pub fn character_error(&self, ring: &FusionRing) -> f64 {
        let rank = ring.rank();
        let mut worst = 0.0f64;
        for i in 0..rank {
            for j in 0..rank {
                let rhs: f64 = ring
                    .product(i, j)
                    .iter()
                    .map(|&(k, v)| f64::from(v) * self.dims[k])
                    .sum();
                worst = worst.max((self.dims[i] * self.dims[j] - rhs).abs());
            }
        }
        worst
    }
}

impl FusionRing {
    /// Frobenius–Perron dimensions: the positive common eigenvector of the
    /// fusion matrices `(N_i)_{jk} = N_{ij}^k`, normalized at the unit.
    ///
    /// Iterates with `M = Σ_i N_i`, whose entries are all positive for a
    /// valid ring, starting from the all-ones vector.
    pub fn fp_dimensions(&self) -> Result<DimensionTable> {
        let rank = self.rank();
        let mut summed = vec![0.0f64; rank * rank];
        for ((_, j, k), v) in self.constants() {
            summed[j * rank + k] += f64::from(v);
        }

        let mut v = vec![1.0f64; rank];
        normalize(&mut v);
        let mut next = vec![0.0f64; rank];
        let mut previous_rq = f64::NAN;
        let mut converged = false;
        for _ in 0..MAX_ITERATIONS {
            for (j, out) in next.iter_mut().enumerate() {
                *out = summed[j * rank..(j + 1) * rank]
                    .iter()
                    .zip(&v)
                    .map(|(m, x)| m * x)
                    .sum();
            }
            let rq: f64 = next.iter().zip(&v).map(|(a, b)| a * b).sum();
            normalize(&mut next);
            let step = next
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            std::mem::swap(&mut v, &mut next);
            if step < 1e-15 || (rq - previous_rq).abs() <= 1e-15 * rq.abs() && step < 1e-13 {
                converged = true;
                break;
            }
            previous_rq = rq;
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "Frobenius-Perron iteration did not converge after {MAX_ITERATIONS} steps"
            )));
        }

        let scale = v[self.unit()];
        if !(scale > 0.0) {
            return Err(Error::Numeric("Perron vector vanishes at the unit".into()));
        }
        let table = DimensionTable {
            dims: v.iter().map(|x| x / scale).collect(),
            tolerance: DEFAULT_TOLERANCE,
        };
        self.check_dimensions(&table)?;
        Ok(table)
    }

    fn check_dimensions(&self, table: &DimensionTable) -> Result<()> {
        let tol = table.tolerance;
        for (i, &d) in table.dims.iter().enumerate() {
            if d < 1.0 - tol {
                return Err(Error::Numeric(format!(
                    "d({}) = {d} is below 1",
                    self.label(i)
                )));
            }
            let dd = table.dims[self.dual(i)];
            if (d - dd).abs() > tol * d.max(1.0) {
                return Err(Error::Numeric(format!(
                    "d({}) = {d} differs from its dual's dimension {dd}",
                    self.label(i)
                )));
            }
        }
        let scale = table.dims.iter().fold(1.0f64, |a, &b| a.max(b));
        let err = table.character_error(self);
        if err > tol * scale * scale {
            return Err(Error::Numeric(format!(
                "dimensions are not a character: max error {err:e}"
            )));
        }
        Ok(())
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}
