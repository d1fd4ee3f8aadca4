//! `SU(2)_K` fusion: truncated Clebsch–Gordan rule.
//!
//! Labels are `rho{j}` with `j = 2 × spin`, `0 <= j <= K`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::fusion::FusionRing;

pub fn label(j: u32) -> String {
    format!("rho{j}")
}

/// Multiplicity of `rho_c` in `rho_a ⊗ rho_b` at level `level`.
pub fn fusion_coefficient(level: u32, a: u32, b: u32, c: u32) -> u32 {
    let lo = a.abs_diff(b);
    let hi = (a + b).min(2 * level - a - b);
    u32::from(c >= lo && c <= hi && (c - lo).is_multiple_of(2))
}

fn ring_on(level: u32, js: Vec<u32>) -> Result<FusionRing> {
    let labels: Vec<String> = js.iter().map(|&j| label(j)).collect();
    let dual: BTreeMap<String, String> = labels.iter().map(|l| (l.clone(), l.clone())).collect();
    let mut constants = Vec::new();
    for &a in &js {
        for &b in &js {
            for &c in &js {
                let v = fusion_coefficient(level, a, b, c);
                if v > 0 {
                    constants.push((label(a), label(b), label(c), v));
                }
            }
        }
    }
    FusionRing::new(labels, &label(0), &dual, constants)
}

/// The full `SU(2)_K` ring (`K + 1` labels).
pub fn su2_ring(level: u32) -> Result<FusionRing> {
    ring_on(level, (0..=level).collect())
}

/// The integer-spin subring `{rho0, rho2, ..., }`.
pub fn su2_even_ring(level: u32) -> Result<FusionRing> {
    ring_on(level, (0..=level).step_by(2).collect())
}

/// Quantum dimension `sin((j+1)π/(K+2)) / sin(π/(K+2))`.
pub fn quantum_dimension(level: u32, j: u32) -> f64 {
    let h = f64::from(level + 2);
    (f64::from(j + 1) * std::f64::consts::PI / h).sin() / (std::f64::consts::PI / h).sin()
}
