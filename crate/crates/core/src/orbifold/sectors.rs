use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_assumptions, ObstructionValue, OrbifoldInput};
use crate::error::{Assumption, Error, Result};
use crate::fusion::{classify_order_profile, FusionRing, SmallGroup, DEFAULT_TOLERANCE};

/// A free `alpha`-orbit, which becomes a single orbifold sector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergedClass {
    /// Output name; equal to the representative.
    pub name: String,
    pub members: Vec<String>,
    /// Lexicographically least member.
    pub representative: String,
    pub dimension: f64,
    /// Dual of the representative in the input ring.
    pub dual_representative: String,
}

/// An `alpha`-fixed label, which splits into `p = n / l` pieces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitFamily {
    pub fixed: String,
    pub fixed_dimension: f64,
    /// `<fixed>#k` for `k = 0..p`.
    pub pieces: Vec<String>,
    /// `l · d(fixed) / n`.
    pub piece_dimension: f64,
    pub fixed_dual: String,
    /// Set for fixed labels other than `rho`: the split is the natural
    /// extension of the `rho` decomposition, not a proven statement.
    pub extrapolated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OutputKind {
    Merged,
    Piece { index: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputSector {
    pub name: String,
    pub dimension: f64,
    pub kind: OutputKind,
    /// Input label this sector comes from (the representative for merged
    /// classes, the fixed label for pieces).
    pub origin: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbifoldSectors {
    pub n: u32,
    pub obstruction: ObstructionValue,
    /// Pieces per fixed label, `p = n / l`.
    pub pieces_per_fixed: u32,
    pub rho: String,
    /// Name of the merged class containing the unit.
    pub unit_class: String,
    /// All output sectors, in order of first appearance in the input ring.
    pub sectors: Vec<OutputSector>,
    pub merged: Vec<MergedClass>,
    pub split: Vec<SplitFamily>,
    /// Dual action on output sectors, `(sector, image)` in output order.
    pub dual_perm: Vec<(String, String)>,
}

impl OrbifoldSectors {
    pub fn sector(&self, name: &str) -> Option<&OutputSector> {
        self.sectors.iter().find(|s| s.name == name)
    }

    pub fn dual_image(&self, name: &str) -> Option<&str> {
        self.dual_perm
            .iter()
            .find(|(from, _)| from == name)
            .map(|(_, to)| to.as_str())
    }

    fn merged_containing(&self, label: &str) -> Option<&MergedClass> {
        self.merged
            .iter()
            .find(|c| c.members.iter().any(|m| m == label))
    }
}

pub fn piece_name(fixed: &str, k: u32) -> String {
    format!("{fixed}#{k}")
}

/// Sector decomposition of the orbifold.
///
/// Free orbits (size `n`) merge into one sector of the same dimension. Each
/// fixed label splits into `p = n / l` pieces of dimension `l·d/n`, where
/// `l` is the order of the obstruction. Orbits of any other size are
/// rejected.
pub fn orbifold_sectors(
    input: &OrbifoldInput<'_>,
    obstruction: ObstructionValue,
) -> Result<OrbifoldSectors> {
    let report = check_assumptions(input);
    if !report.a1.passed {
        return Err(Error::Assumption {
            item: Assumption::A1,
            detail: report.a1.detail,
        });
    }
    if !report.a3.passed {
        return Err(Error::Assumption {
            item: Assumption::A3,
            detail: report.a3.detail,
        });
    }
    decompose(input, obstruction)
}

pub(crate) fn decompose(
    input: &OrbifoldInput<'_>,
    obstruction: ObstructionValue,
) -> Result<OrbifoldSectors> {
    let action = &input.action;
    let ring = action.ring();
    let n = action.order();
    if obstruction.n != n {
        return Err(Error::Precondition(format!(
            "obstruction modulus {} does not match the action order {n}",
            obstruction.n
        )));
    }
    let dims = ring.fp_dimensions()?;
    let l = obstruction.order();
    let p = n / l;

    let mut visited = vec![false; ring.rank()];
    let mut out = OrbifoldSectors {
        n,
        obstruction,
        pieces_per_fixed: p,
        rho: ring.label(input.rho).to_string(),
        unit_class: String::new(),
        sectors: Vec::new(),
        merged: Vec::new(),
        split: Vec::new(),
        dual_perm: Vec::new(),
    };

    for i in 0..ring.rank() {
        if visited[i] {
            continue;
        }
        let orbit = action.orbit(i);
        orbit.iter().for_each(|&j| visited[j] = true);
        let size = orbit.len() as u32;
        if size == n {
            let mut members: Vec<String> =
                orbit.iter().map(|&j| ring.label(j).to_string()).collect();
            members.sort();
            let representative = members[0].clone();
            let rep = ring.require(&representative)?;
            if orbit.contains(&ring.unit()) {
                out.unit_class = representative.clone();
            }
            out.sectors.push(OutputSector {
                name: representative.clone(),
                dimension: dims.get(rep),
                kind: OutputKind::Merged,
                origin: representative.clone(),
            });
            out.dual_perm
                .push((representative.clone(), representative.clone()));
            out.merged.push(MergedClass {
                name: representative.clone(),
                members,
                representative,
                dimension: dims.get(rep),
                dual_representative: ring.label(ring.dual(rep)).to_string(),
            });
        } else if size == 1 {
            let fixed = ring.label(i).to_string();
            let d = dims.get(i);
            let piece_dimension = f64::from(l) * d / f64::from(n);
            let pieces: Vec<String> = (0..p).map(|k| piece_name(&fixed, k)).collect();
            if i == ring.unit() {
                out.unit_class = pieces[0].clone();
            }
            for (k, name) in pieces.iter().enumerate() {
                out.sectors.push(OutputSector {
                    name: name.clone(),
                    dimension: piece_dimension,
                    kind: OutputKind::Piece { index: k as u32 },
                    origin: fixed.clone(),
                });
                out.dual_perm
                    .push((name.clone(), pieces[(k + 1) % p as usize].clone()));
            }
            out.split.push(SplitFamily {
                fixed,
                fixed_dimension: d,
                pieces,
                piece_dimension,
                fixed_dual: ring.label(ring.dual(i)).to_string(),
                extrapolated: i != input.rho,
            });
        } else {
            return Err(Error::Unsupported(format!(
                "orbit of `{}` has size {size}, strictly between 1 and n = {n}",
                ring.label(i)
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConjugacyPattern {
    /// `conj(π_k) = π_k` for every `k`.
    AllSelfConjugate,
    /// `conj(π_k) = π_{k + n/2}`.
    ShiftByHalf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PieceConjugacy {
    Determined(ConjugacyPattern),
    /// One of the listed patterns holds; fusion data does not decide which.
    Undetermined(Vec<ConjugacyPattern>),
    /// The fixed label is not self-dual: pieces are conjugate to pieces of
    /// `family`, with an undetermined index shift.
    PairedWith { family: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitConjugacy {
    pub fixed: String,
    pub outcome: PieceConjugacy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyReport {
    /// `(merged class, conjugate class)`.
    pub merged: Vec<(String, String)>,
    pub split: Vec<SplitConjugacy>,
}

impl ConjugacyReport {
    /// `Some(true/false)` when the conjugate of `sector` is known.
    pub fn is_self_conjugate(&self, sectors: &OrbifoldSectors, sector: &str) -> Option<bool> {
        if let Some((_, conj)) = self.merged.iter().find(|(m, _)| m == sector) {
            return Some(conj == sector);
        }
        let out = sectors.sector(sector)?;
        let family = self.split.iter().find(|s| s.fixed == out.origin)?;
        match &family.outcome {
            PieceConjugacy::Determined(ConjugacyPattern::AllSelfConjugate) => Some(true),
            PieceConjugacy::Determined(ConjugacyPattern::ShiftByHalf) => Some(false),
            PieceConjugacy::PairedWith { .. } => Some(false),
            PieceConjugacy::Undetermined(_) => None,
        }
    }
}

/// Conjugates of the orbifold sectors under a trivial obstruction.
///
/// A merged class is conjugate to the class of its representative's dual.
/// The pieces `π_k` of a self-dual fixed label are all self-conjugate when
/// `n` is odd; for even `n` either all are self-conjugate or
/// `conj(π_k) = π_{k+n/2}`, and this is reported as undetermined.
pub fn conjugacy_assignment(sectors: &OrbifoldSectors) -> Result<ConjugacyReport> {
    if sectors.pieces_per_fixed != sectors.n {
        return Err(Error::Unsupported(format!(
            "conjugacy is only determined for a trivial obstruction (p = n); here p = {}, n = {}",
            sectors.pieces_per_fixed, sectors.n
        )));
    }
    let mut merged = Vec::with_capacity(sectors.merged.len());
    for class in &sectors.merged {
        let conj = sectors
            .merged_containing(&class.dual_representative)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "dual `{}` of merged class `{}` is not in a free orbit",
                    class.dual_representative, class.name
                ))
            })?;
        merged.push((class.name.clone(), conj.name.clone()));
    }
    let split = sectors
        .split
        .iter()
        .map(|family| {
            let outcome = if family.fixed_dual != family.fixed {
                PieceConjugacy::PairedWith {
                    family: family.fixed_dual.clone(),
                }
            } else if sectors.n % 2 == 1 {
                PieceConjugacy::Determined(ConjugacyPattern::AllSelfConjugate)
            } else {
                PieceConjugacy::Undetermined(vec![
                    ConjugacyPattern::AllSelfConjugate,
                    ConjugacyPattern::ShiftByHalf,
                ])
            };
            SplitConjugacy {
                fixed: family.fixed.clone(),
                outcome,
            }
        })
        .collect();
    Ok(ConjugacyReport { merged, split })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalDimCheck {
    pub input_sum: f64,
    pub output_sum: f64,
    pub n: u32,
    pub relative_error: f64,
    pub passed: bool,
}

pub const GLOBAL_DIM_TOLERANCE: f64 = 1e-6;

/// `Σ_out d² = (Σ_in d²) / n` for a trivial-obstruction decomposition.
pub fn global_dim_check(ring: &FusionRing, sectors: &OrbifoldSectors) -> Result<GlobalDimCheck> {
    if sectors.pieces_per_fixed != sectors.n {
        return Err(Error::Precondition(
            "global dimension law needs a trivial obstruction (p = n)".into(),
        ));
    }
    let input_sum = ring.fp_dimensions()?.global_dimension();
    let output_sum: f64 = sectors.sectors.iter().map(|s| s.dimension.powi(2)).sum();
    let expected = input_sum / f64::from(sectors.n);
    let relative_error = (output_sum - expected).abs() / expected;
    Ok(GlobalDimCheck {
        input_sum,
        output_sum,
        n: sectors.n,
        relative_error,
        passed: relative_error < GLOBAL_DIM_TOLERANCE,
    })
}

/// Group formed by the dimension-one orbifold sectors, as far as conjugacy
/// decides it: a sector of dimension one is self-conjugate exactly when its
/// order divides 2.
pub fn invertible_output_group(
    sectors: &OrbifoldSectors,
    conjugacy: &ConjugacyReport,
) -> Result<SmallGroup> {
    let invertible: Vec<&OutputSector> = sectors
        .sectors
        .iter()
        .filter(|s| (s.dimension - 1.0).abs() < DEFAULT_TOLERANCE)
        .collect();
    let mut profile: BTreeMap<u32, usize> = BTreeMap::new();
    let mut higher = 0usize;
    for s in &invertible {
        if s.name == sectors.unit_class {
            *profile.entry(1).or_insert(0) += 1;
            continue;
        }
        match conjugacy.is_self_conjugate(sectors, &s.name) {
            Some(true) => *profile.entry(2).or_insert(0) += 1,
            Some(false) => higher += 1,
            None => {
                return Err(Error::Precondition(format!(
                    "conjugate of `{}` is undetermined, so the group is not determined",
                    s.name
                )))
            }
        }
    }
    let order = invertible.len();
    if higher == 0 {
        return Ok(classify_order_profile(&profile));
    }
    // Element orders above 2 are only known to exceed 2; orders 3 and 4 are
    // still decided.
    Ok(match order {
        3 => SmallGroup::Cyclic(3),
        4 => SmallGroup::Cyclic(4),
        _ => SmallGroup::Unclassified { order },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::SymmetryAction;

    #[test]
    fn trivial_action_keeps_global_dimension() {
        let ring = crate::catalog::rings::e6_affine_ring();
        let action = SymmetryAction::cyclic(&ring, "id").unwrap();
        assert_eq!(action.order(), 1);
        let input = OrbifoldInput::new(action, "rho", true).unwrap();
        let sectors = decompose(&input, ObstructionValue::trivial(1)).unwrap();
        assert_eq!(sectors.sectors.len(), ring.rank());
        let check = global_dim_check(&ring, &sectors).unwrap();
        assert!(check.passed);
        assert!((check.input_sum - check.output_sum).abs() < 1e-9);
    }
}
