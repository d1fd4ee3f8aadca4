use serde::Serialize;

use super::SymmetryAction;
use crate::error::Result;

/// The data of one orbifold run: the action, the distinguished `rho`, and
/// the user's attestation that the Loi invariant of `alpha` is trivial.
#[derive(Debug, Clone)]
pub struct OrbifoldInput<'r> {
    pub action: SymmetryAction<'r>,
    pub rho: usize,
    pub loi_trivial_attested: bool,
}

impl<'r> OrbifoldInput<'r> {
    pub fn new(action: SymmetryAction<'r>, rho: &str, loi_trivial_attested: bool) -> Result<Self> {
        let rho = action.ring().require(rho)?;
        Ok(OrbifoldInput {
            action,
            rho,
            loi_trivial_attested,
        })
    }

    /// `m = dim(rho, rho²) = N_{ρρ}^ρ`.
    pub fn m(&self) -> u32 {
        self.action.ring().n(self.rho, self.rho, self.rho)
    }

    pub fn n(&self) -> u32 {
        self.action.order()
    }

    /// Whether label `i` could play the role of `rho`.
    fn a3_holds(&self, i: usize) -> bool {
        let ring = self.action.ring();
        ring.dual(i) == i && self.action.is_fixed(i) && ring.n(i, i, i) >= 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionStatus {
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub a1: AssumptionStatus,
    pub a2: AssumptionStatus,
    pub a3: AssumptionStatus,
    pub n: u32,
    /// `N_{ρρ}^ρ` for the chosen `rho`.
    pub m: u32,
    /// Every label satisfying the A3 conditions.
    pub rho_candidates: Vec<String>,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        self.a1.passed && self.a2.passed && self.a3.passed
    }
}

pub fn check_assumptions(input: &OrbifoldInput<'_>) -> AssumptionReport {
    let action = &input.action;
    let ring = action.ring();
    let n = action.order();
    let alpha = ring.label(action.alpha());

    let a1 = AssumptionStatus {
        passed: n >= 2,
        detail: if n >= 2 {
            format!("`{alpha}` is invertible of order {n}")
        } else {
            format!("`{alpha}` has order {n}; an action of order at least 2 is required")
        },
    };

    let a2 = AssumptionStatus {
        passed: input.loi_trivial_attested,
        detail: if input.loi_trivial_attested {
            "trivial Loi invariant attested by the user (not computable from fusion data)".into()
        } else {
            "trivial Loi invariant not attested; it cannot be computed from fusion data".into()
        },
    };

    let rho = input.rho;
    let rho_name = ring.label(rho);
    let mut problems = Vec::new();
    if ring.dual(rho) != rho {
        problems.push(format!(
            "`{rho_name}` is not self-conjugate (dual is `{}`)",
            ring.label(ring.dual(rho))
        ));
    }
    if !action.is_fixed(rho) {
        problems.push(format!(
            "`{rho_name}` is not fixed: {alpha} * {rho_name} = {}",
            ring.label(action.apply(rho))
        ));
    }
    if input.m() == 0 {
        problems.push(format!("`{rho_name}` does not occur in `{rho_name}`^2"));
    }
    let rho_candidates: Vec<String> = (0..ring.rank())
        .filter(|&i| input.a3_holds(i))
        .map(|i| ring.label(i).to_string())
        .collect();
    let a3 = if problems.is_empty() {
        AssumptionStatus {
            passed: true,
            detail: format!(
                "`{rho_name}` is self-conjugate, fixed by `{alpha}`, and occurs {} time(s) in its square",
                input.m()
            ),
        }
    } else {
        let mut detail = problems.join("; ");
        if rho_candidates.is_empty() {
            detail.push_str("; no label of the ring is self-conjugate, fixed and contained in its own square");
        } else {
            detail.push_str(&format!("; candidates: {}", rho_candidates.join(", ")));
        }
        AssumptionStatus {
            passed: false,
            detail,
        }
    };

    AssumptionReport {
        a1,
        a2,
        a3,
        n,
        m: input.m(),
        rho_candidates,
    }
}
