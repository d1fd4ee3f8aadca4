use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::{check_assumptions, OrbifoldInput};
use crate::error::{Assumption, Error, Result};

/// The root of unity `exp(2πi j / n)`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ObstructionValue {
    pub j: u32,
    pub n: u32,
}

impl ObstructionValue {
    pub fn new(j: u32, n: u32) -> Result<Self> {
        if n == 0 || j >= n {
            return Err(Error::Schema(format!(
                "obstruction exponent must satisfy 0 <= j < n, got j = {j}, n = {n}"
            )));
        }
        Ok(ObstructionValue { j, n })
    }

    pub fn trivial(n: u32) -> Self {
        ObstructionValue { j: 0, n }
    }

    /// `exp(2πi num/den)` re-expressed over modulus `n`; the phase must be an
    /// `n`-th root of unity.
    pub fn from_phase(num: u32, den: u32, n: u32) -> Result<Self> {
        if den == 0 || n == 0 {
            return Err(Error::Schema("obstruction phase needs a positive denominator".into()));
        }
        let scaled = u64::from(num) * u64::from(n);
        if scaled % u64::from(den) != 0 {
            return Err(Error::Precondition(format!(
                "exp(2πi·{num}/{den}) is not an {n}-th root of unity"
            )));
        }
        let j = (scaled / u64::from(den)) % u64::from(n);
        Self::new(j as u32, n)
    }

    /// Order `l = n / gcd(j, n)` of the root of unity.
    pub fn order(&self) -> u32 {
        self.n / self.j.gcd(&self.n)
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }
}

impl fmt::Display for ObstructionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.j, self.order()) {
            (0, _) => f.write_str("1"),
            (_, 2) => f.write_str("-1"),
            (j, l) => write!(f, "exp(2πi·{j}/{}) (primitive {l}-th root)", self.n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// `gcd(m, n) = 1`: the obstruction is trivial.
    Trivial,
    /// The criterion does not apply; nothing is asserted about the value.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Trivial => "Trivial",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    pub m: u32,
    pub n: u32,
    pub verdict: Verdict,
}

impl ObstructionVerdict {
    pub fn from_counts(m: u32, n: u32) -> Self {
        let verdict = if m.gcd(&n) == 1 {
            Verdict::Trivial
        } else {
            Verdict::Inconclusive
        };
        ObstructionVerdict { m, n, verdict }
    }
}

/// The sufficient criterion: the obstruction is trivial when
/// `m = N_{ρρ}^ρ` is coprime to `n`. Requires A1 and A3.
pub fn obstruction_bound(input: &OrbifoldInput<'_>) -> Result<ObstructionVerdict> {
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
    Ok(ObstructionVerdict::from_counts(input.m(), input.n()))
}

/// Obstruction value to use for the sector decomposition. A `Trivial`
/// verdict yields `1`; an `Inconclusive` one requires an explicit value.
pub fn resolve_obstruction(
    verdict: &ObstructionVerdict,
    explicit: Option<ObstructionValue>,
) -> Result<ObstructionValue> {
    if let Some(value) = explicit {
        if value.n != verdict.n {
            return Err(Error::Precondition(format!(
                "obstruction modulus {} does not match the action order {}",
                value.n, verdict.n
            )));
        }
        if verdict.verdict == Verdict::Trivial && !value.is_trivial() {
            return Err(Error::Precondition(format!(
                "obstruction {value} contradicts gcd(m, n) = gcd({}, {}) = 1, which forces 1",
                verdict.m, verdict.n
            )));
        }
        return Ok(value);
    }
    match verdict.verdict {
        Verdict::Trivial => Ok(ObstructionValue::trivial(verdict.n)),
        Verdict::Inconclusive => Err(Error::ExplicitInputRequired(format!(
            "gcd(m, n) = gcd({}, {}) > 1, so the obstruction is not determined; supply it explicitly",
            verdict.m, verdict.n
        ))),
    }
}
