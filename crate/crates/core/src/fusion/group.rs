//! Small groups of invertible objects, identified by their element orders.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::FusionRing;
use crate::error::{Error, Result};

/// Isomorphism classes of groups of order at most 12.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum SmallGroup {
    Trivial,
    Cyclic(u32),
    /// Abelian, non-cyclic; invariant factors `n_1 | n_2 | ...`.
    Product(Vec<u32>),
    /// Dihedral group of order `2m`.
    Dihedral(u32),
    Quaternion,
    Alternating4,
    /// `Z/3 ⋊ Z/4`.
    Dicyclic12,
    /// Order above 12, or an order profile matching no group.
    Unclassified { order: usize },
}

impl fmt::Display for SmallGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmallGroup::Trivial => f.write_str("trivial group"),
            SmallGroup::Cyclic(n) => write!(f, "Z/{n}"),
            SmallGroup::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(|n| format!("Z/{n}")).collect();
                f.write_str(&parts.join("×"))
            }
            SmallGroup::Dihedral(m) => write!(f, "D_{m} (order {})", 2 * m),
            SmallGroup::Quaternion => f.write_str("Q_8"),
            SmallGroup::Alternating4 => f.write_str("A_4"),
            SmallGroup::Dicyclic12 => f.write_str("Dic_3"),
            SmallGroup::Unclassified { order } => write!(f, "unclassified group of order {order}"),
        }
    }
}

impl SmallGroup {
    pub fn order(&self) -> usize {
        match self {
            SmallGroup::Trivial => 1,
            SmallGroup::Cyclic(n) => *n as usize,
            SmallGroup::Product(f) => f.iter().map(|&n| n as usize).product(),
            SmallGroup::Dihedral(m) => 2 * *m as usize,
            SmallGroup::Quaternion => 8,
            SmallGroup::Alternating4 | SmallGroup::Dicyclic12 => 12,
            SmallGroup::Unclassified { order } => *order,
        }
    }

    /// Multiset of element orders, as `order -> count`.
    pub fn order_profile(&self) -> BTreeMap<u32, usize> {
        let mut profile = BTreeMap::new();
        let mut add = |o: u32, c: usize| *profile.entry(o).or_insert(0) += c;
        match self {
            SmallGroup::Trivial => add(1, 1),
            SmallGroup::Cyclic(n) => abelian_profile(&[*n], &mut add),
            SmallGroup::Product(f) => abelian_profile(f, &mut add),
            SmallGroup::Dihedral(m) => {
                for r in 0..*m {
                    add(*m / r.gcd(m), 1);
                }
                add(2, *m as usize);
            }
            SmallGroup::Quaternion => {
                add(1, 1);
                add(2, 1);
                add(4, 6);
            }
            SmallGroup::Alternating4 => {
                add(1, 1);
                add(2, 3);
                add(3, 8);
            }
            SmallGroup::Dicyclic12 => {
                add(1, 1);
                add(2, 1);
                add(3, 2);
                add(4, 6);
                add(6, 2);
            }
            SmallGroup::Unclassified { .. } => {}
        }
        profile
    }
}

fn abelian_profile(factors: &[u32], add: &mut impl FnMut(u32, usize)) {
    let total: u32 = factors.iter().product();
    for mut code in 0..total {
        let mut order = 1u32;
        for &n in factors {
            let x = code % n;
            code /= n;
            order = order.lcm(&(n / x.gcd(&n)));
        }
        add(order, 1);
    }
}

/// Every group of order `<= 12`, up to isomorphism.
fn candidates() -> Vec<SmallGroup> {
    let mut out = vec![SmallGroup::Trivial];
    for n in 2..=12 {
        out.push(SmallGroup::Cyclic(n));
    }
    out.extend([
        SmallGroup::Product(vec![2, 2]),
        SmallGroup::Product(vec![2, 4]),
        SmallGroup::Product(vec![2, 2, 2]),
        SmallGroup::Product(vec![3, 3]),
        SmallGroup::Product(vec![2, 6]),
        SmallGroup::Quaternion,
        SmallGroup::Alternating4,
        SmallGroup::Dicyclic12,
    ]);
    for m in 3..=6 {
        out.push(SmallGroup::Dihedral(m));
    }
    out
}

/// Identifies a group of order `<= 12` from its multiset of element orders
/// (`order -> count`). Up to order 12 this multiset determines the group.
pub fn classify_order_profile(profile: &BTreeMap<u32, usize>) -> SmallGroup {
    let order: usize = profile.values().sum();
    candidates()
        .into_iter()
        .find(|g| g.order() == order && &g.order_profile() == profile)
        .unwrap_or(SmallGroup::Unclassified { order })
}

pub(super) fn classify(ring: &FusionRing, elems: &[usize]) -> Result<SmallGroup> {
    let mut members = vec![false; ring.rank()];
    for &e in elems {
        if e >= ring.rank() {
            return Err(Error::Schema(format!("label index {e} out of range")));
        }
        if !ring.is_invertible(e) {
            return Err(Error::Precondition(format!(
                "`{}` is not invertible",
                ring.label(e)
            )));
        }
        members[e] = true;
    }
    for &a in elems {
        if !members[ring.dual(a)] {
            return Err(Error::Precondition(format!(
                "elements not closed under duality: dual of `{}` missing",
                ring.label(a)
            )));
        }
        for &b in elems {
            let c = ring.simple_product(a, b).expect("invertible product is simple");
            if !members[c] {
                return Err(Error::Precondition(format!(
                    "elements not closed under fusion: {} * {} = {}",
                    ring.label(a),
                    ring.label(b),
                    ring.label(c)
                )));
            }
        }
    }

    let mut profile = BTreeMap::new();
    let distinct: std::collections::BTreeSet<usize> = elems.iter().copied().collect();
    for &a in &distinct {
        let mut power = a;
        let mut order = 1u32;
        while power != ring.unit() {
            power = ring.simple_product(a, power).expect("invertible product is simple");
            order += 1;
        }
        *profile.entry(order).or_insert(0) += 1;
    }
    Ok(classify_order_profile(&profile))
}
