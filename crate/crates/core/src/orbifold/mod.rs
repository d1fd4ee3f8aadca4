//! Cyclic orbifold construction at the level of sector labels.
//!
//! Given a fusion ring, an invertible `alpha` of order `n` acting by left
//! fusion and an `alpha`-fixed self-conjugate `rho` with `rho ≺ rho²`, this
//! module
//!
//! 1. reports the hypotheses A1–A3 ([`check_assumptions`]),
//! 2. decides the obstruction by the `gcd(m, n) = 1` criterion with
//!    `m = N_{ρρ}^ρ` ([`obstruction_bound`]),
//! 3. lists the orbifold sectors: free orbits merge, fixed labels split into
//!    `n / l` pieces when the obstruction is a primitive `l`-th root of unity
//!    ([`orbifold_sectors`]),
//! 4. assigns conjugates to the output sectors ([`conjugacy_assignment`]).
//!
//! The Loi invariant (A2) is analytic data and is only ever echoed from a user
//! attestation.

mod action;
mod assumptions;
mod obstruction;
mod sectors;

pub use action::SymmetryAction;
pub use assumptions::{check_assumptions, AssumptionReport, AssumptionStatus, OrbifoldInput};
pub use obstruction::{
    obstruction_bound, resolve_obstruction, ObstructionValue, ObstructionVerdict, Verdict,
};
pub use sectors::{
    conjugacy_assignment, global_dim_check, invertible_output_group, orbifold_sectors,
    ConjugacyPattern, ConjugacyReport, GlobalDimCheck, MergedClass, OrbifoldSectors,
    OutputKind, OutputSector, PieceConjugacy, SplitConjugacy, SplitFamily,
    GLOBAL_DIM_TOLERANCE,
};
pub(crate) use sectors::piece_name as sectors_piece_name;
