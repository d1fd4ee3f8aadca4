//! Fusion-ring and cyclic orbifold toolkit.
//!
//! The crate works entirely at the level of Grothendieck rings and principal
//! graphs:
//!
//! * [`fusion`] holds exact fusion rings, Frobenius–Perron dimensions and the
//!   group of invertible objects.
//! * [`orbifold`] checks the hypotheses of the `Z/n` orbifold construction,
//!   applies the `gcd(m, n) = 1` criterion for a trivial obstruction and
//!   computes the orbifold sector list (merged orbits, split fixed points,
//!   dual action, conjugacy).
//! * [`graph`] folds a bipartite principal graph along the induced symmetry
//!   and recognizes (affine) Dynkin diagrams.
//! * [`su3`] provides level-truncated `SU(3)` fusion via the Kac–Walton
//!   algorithm with a Verlinde cross-check.
//! * [`catalog`] bundles worked examples with their expected outcomes.
//! * [`io`] reads and writes the `orbifusion/1` JSON formats.

pub mod catalog;
pub mod error;
pub mod fusion;
pub mod graph;
pub mod io;
pub mod orbifold;
pub mod su2;
pub mod su3;

pub use error::{Assumption, Error, Result, SymmetryError};
pub use fusion::{DimensionTable, FormalSum, FusionRing, ValidationReport};
pub use graph::{BipartiteGraph, DynkinClass, DynkinFamily, GraphSymmetry};
pub use orbifold::{
    ObstructionValue, ObstructionVerdict, OrbifoldInput, OrbifoldSectors, SymmetryAction, Verdict,
};
