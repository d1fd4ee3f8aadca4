use crate::error::{Assumption, Error, Result};
use crate::fusion::FusionRing;

/// Left-fusion action of an invertible label on the ring's basis.
#[derive(Debug, Clone)]
pub struct SymmetryAction<'r> {
    ring: &'r FusionRing,
    alpha: usize,
    order: u32,
    perm: Vec<usize>,
}

impl<'r> SymmetryAction<'r> {
    /// Action of `alpha` by left fusion. `alpha` must be invertible.
    pub fn cyclic(ring: &'r FusionRing, alpha: &str) -> Result<Self> {
        let alpha = ring.require(alpha)?;
        Self::from_index(ring, alpha)
    }

    pub fn from_index(ring: &'r FusionRing, alpha: usize) -> Result<Self> {
        if !ring.is_invertible(alpha) {
            return Err(Error::Assumption {
                item: Assumption::A1,
                detail: format!("`{}` is not an invertible sector", ring.label(alpha)),
            });
        }
        let perm: Vec<usize> = (0..ring.rank())
            .map(|i| {
                ring.simple_product(alpha, i)
                    .expect("invertible label fuses to a single label")
            })
            .collect();
        let mut order = 1u32;
        let mut power = alpha;
        while power != ring.unit() {
            power = perm[power];
            order += 1;
        }
        Ok(SymmetryAction {
            ring,
            alpha,
            order,
            perm,
        })
    }

    pub fn ring(&self) -> &'r FusionRing {
        self.ring
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Multiplicative order `n` of `alpha`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `i ↦ alpha · i`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// `i, alpha·i, alpha²·i, ...` until it closes up.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut orbit = vec![i];
        let mut j = self.perm[i];
        while j != i {
            orbit.push(j);
            j = self.perm[j];
        }
        orbit
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.perm[i] == i
    }

    /// `N_{α·i, j}^{α·k} = N_{ij}^k` for all triples. Holds for every valid
    /// ring; a failure signals a non-associative input.
    pub fn is_equivariant(&self) -> bool {
        let rank = self.ring.rank();
        (0..rank).all(|i| {
            (0..rank).all(|j| {
                let before = self.ring.product(i, j);
                let after = self.ring.product(self.perm[i], j);
                before.len() == after.len()
                    && before
                        .iter()
                        .all(|&(k, v)| self.ring.n(self.perm[i], j, self.perm[k]) == v)
            })
        })
    }
}
