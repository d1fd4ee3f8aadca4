use std::fmt;

use thiserror::Error;

/// The three combinatorial hypotheses of the cyclic orbifold construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Assumption {
    /// `alpha` is invertible and generates an action of exact order `n >= 2`.
    A1,
    /// The Loi invariant of `alpha` is trivial (user attestation only).
    A2,
    /// There is a self-conjugate, `alpha`-fixed `rho` with `rho` contained in `rho^2`.
    A3,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Assumption::A1 => "A1",
            Assumption::A2 => "A2",
            Assumption::A3 => "A3",
        };
        f.write_str(s)
    }
}

/// Named failures of a candidate graph symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("vertex permutation has length {found}, graph has {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("vertex permutation is not a bijection (vertex `{0}` is hit twice)")]
    NotBijective(String),
    #[error("parity violation: `{vertex}` and its image `{image}` lie in different parts")]
    ParityViolation { vertex: String, image: String },
    #[error("non-equivariant edge: mult({even}, {odd}) = {before} but the image edge has {after}")]
    NonEquivariantEdge {
        even: String,
        odd: String,
        before: u32,
        after: u32,
    },
    #[error("wrong order: permutation^{order} is not the identity (orbit of `{vertex}`)")]
    WrongOrder { order: u32, vertex: String },
    #[error("order must be positive")]
    ZeroOrder,
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: unknown labels, duplicates, out-of-range indices.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("assumption ({item}) failed: {detail}")]
    Assumption { item: Assumption, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Structures outside the free-orbit / fixed-point dichotomy.
    #[error("unsupported structure: {0}")]
    Unsupported(String),

    #[error("explicit input required: {0}")]
    ExplicitInputRequired(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invalid graph symmetry: {0}")]
    Symmetry(#[from] SymmetryError),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}
