use super::*;
use crate::catalog::rings;
use proptest::prelude::*;

/// Weights of `V(μ)` with multiplicity, from semistandard tableaux of shape
/// `(a + b, b)` with entries 1..=3.
fn weight_multiplicities(mu: Weight) -> BTreeMap<(i64, i64), u32> {
    let [r1, r2, _] = mu.partition();
    let (r1, r2) = (r1 as usize, r2 as usize);
    let mut out = BTreeMap::new();
    // Rows are weakly increasing; enumerate each row by its counts of
    // 1s, 2s, 3s, then check strict column increase.
    let rows = |len: usize| {
        let mut v = Vec::new();
        for ones in 0..=len {
            for twos in 0..=len - ones {
                let threes = len - ones - twos;
                let mut row = vec![1u8; ones];
                row.extend(std::iter::repeat_n(2, twos));
                row.extend(std::iter::repeat_n(3, threes));
                v.push(row);
            }
        }
        v
    };
    for top in rows(r1) {
        for bottom in rows(r2) {
            if (0..r2).any(|c| bottom[c] <= top[c]) {
                continue;
            }
            let mut content = [0i64; 3];
            for &e in top.iter().chain(&bottom) {
                content[e as usize - 1] += 1;
            }
            *out.entry((content[0] - content[1], content[1] - content[2])).or_insert(0) += 1;
        }
    }
    out
}

/// Tensor product by the Brauer–Klimyk formula: shift `λ + ρ` by every
/// weight of `V(μ)` and reflect into the dominant chamber with signs.
fn brauer_klimyk(lambda: Weight, mu: Weight) -> WeightMultiset {
    let mut signed: BTreeMap<Weight, i64> = BTreeMap::new();
    for ((ga, gb), mult) in weight_multiplicities(mu) {
        let mut p = (i64::from(lambda.a) + ga + 1, i64::from(lambda.b) + gb + 1);
        let mut sign = 1i64;
        loop {
            if p.0 == 0 || p.1 == 0 {
                sign = 0;
                break;
            }
            if p.0 < 0 {
                p = (-p.0, p.0 + p.1);
            } else if p.1 < 0 {
                p = (p.0 + p.1, -p.1);
            } else {
                break;
            }
            sign = -sign;
        }
        if sign != 0 {
            let w = Weight::new((p.0 - 1) as u32, (p.1 - 1) as u32);
            *signed.entry(w).or_insert(0) += sign * i64::from(mult);
        }
    }
    signed
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(w, c)| (w, u32::try_from(c).expect("nonnegative multiplicity")))
        .collect()
}

fn ms(entries: &[((u32, u32), u32)]) -> WeightMultiset {
    entries.iter().map(|&((a, b), c)| (Weight::new(a, b), c)).collect()
}

fn weights_up_to(total: u32) -> Vec<Weight> {
    admissible_weights(total)
}

#[test]
fn weight_oracle_has_correct_dimension() {
    for w in weights_up_to(6) {
        let total: u32 = weight_multiplicities(w).values().sum();
        assert_eq!(u64::from(total), w.dimension(), "({w})");
    }
}

#[test]
fn classical_examples() {
    let lr = |a, b, c, d| classical_lr(Weight::new(a, b), Weight::new(c, d));
    assert_eq!(lr(1, 0, 0, 1), ms(&[((0, 0), 1), ((1, 1), 1)]));
    assert_eq!(lr(1, 0, 1, 0), ms(&[((2, 0), 1), ((0, 1), 1)]));
    assert_eq!(
        lr(1, 1, 1, 1),
        ms(&[((0, 0), 1), ((1, 1), 2), ((3, 0), 1), ((0, 3), 1), ((2, 2), 1)])
    );
}

#[test]
fn classical_lr_matches_character_oracle() {
    for l in weights_up_to(6) {
        for m in weights_up_to(6) {
            assert_eq!(classical_lr(l, m), brauer_klimyk(l, m), "({l}) x ({m})");
        }
    }
}

#[test]
fn dimension_identity() {
    for l in weights_up_to(6) {
        for m in weights_up_to(6) {
            let total: u64 = classical_lr(l, m)
                .iter()
                .map(|(n, &c)| u64::from(c) * n.dimension())
                .sum();
            assert_eq!(total, l.dimension() * m.dimension());
        }
    }
}

#[test]
fn kac_walton_examples() {
    let rho = Weight::new(1, 1);
    assert_eq!(
        kac_walton(rho, rho, 3).unwrap(),
        ms(&[((0, 0), 1), ((1, 1), 2), ((3, 0), 1), ((0, 3), 1)])
    );
    assert_eq!(
        kac_walton(Weight::new(1, 0), Weight::new(1, 0), 1).unwrap(),
        ms(&[((0, 1), 1)])
    );
    let r2 = Weight::new(2, 2);
    assert_eq!(kac_walton(r2, r2, 6).unwrap()[&r2], 3);
    assert!(matches!(
        kac_walton(Weight::new(2, 2), rho, 3),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn kac_walton_equals_verlinde_up_to_level_6() {
    for level in 0..=6 {
        let s = SMatrix::new(level);
        let weights = admissible_weights(level);
        for &l in &weights {
            for &m in &weights {
                let kw = kac_walton(l, m, level).unwrap();
                for &n in &weights {
                    let expected = kw.get(&n).copied().unwrap_or(0);
                    assert_eq!(s.fusion(l, m, n).unwrap(), expected, "level {level}: {l} {m} {n}");
                    assert!(s.integrality_residue(l, m, n).unwrap() < INTEGRALITY_TOLERANCE);
                }
            }
        }
    }
}

#[test]
fn verlinde_examples() {
    let w = Weight::new;
    assert_eq!(verlinde(w(2, 2), w(2, 2), w(2, 2), 6).unwrap(), 3);
    for m in admissible_weights(4) {
        for n in admissible_weights(4) {
            assert_eq!(verlinde(Weight::ZERO, m, n, 4).unwrap(), u32::from(m == n));
        }
    }
}

#[test]
fn simple_current_examples() {
    let j = simple_current(3);
    assert_eq!(j.apply(Weight::new(0, 0)), Weight::new(3, 0));
    assert_eq!(j.apply(Weight::new(3, 0)), Weight::new(0, 3));
    assert_eq!(j.apply(Weight::new(0, 3)), Weight::new(0, 0));
    assert_eq!(j.fixed_points(), vec![Weight::new(1, 1)]);
    assert_eq!(simple_current(6).fixed_points(), vec![Weight::new(2, 2)]);
    assert_eq!(admissible_weights(6).len(), 28);
    for level in 0..=24 {
        let j = simple_current(level);
        for w in admissible_weights(level) {
            assert_eq!(j.apply(j.apply(j.apply(w))), w);
        }
        let fixed = j.fixed_points();
        if level % 3 == 0 {
            assert_eq!(fixed, vec![Weight::new(level / 3, level / 3)]);
        } else {
            assert!(fixed.is_empty());
        }
    }
}

#[test]
fn simple_current_equivariance_up_to_level_12() {
    for level in 1..=12 {
        let j = simple_current(level);
        let weights = admissible_weights(level);
        for &l in &weights {
            for &m in &weights {
                let plain = kac_walton(l, m, level).unwrap();
                let shifted = kac_walton(j.apply(l), m, level).unwrap();
                let moved: WeightMultiset = plain.iter().map(|(&n, &c)| (j.apply(n), c)).collect();
                assert_eq!(shifted, moved, "level {level}: J({l}) x ({m})");
            }
        }
    }
}

#[test]
fn obstruction_counts() {
    for k in 1..=8 {
        let count = obstruction_m(k).unwrap();
        assert_eq!(count.m, k + 1);
        assert_eq!(count.level, 3 * k);
        let trivial = (k + 1) % 3 != 0;
        assert_eq!(count.verdict.verdict == crate::orbifold::Verdict::Trivial, trivial);
        if k <= 2 {
            assert_eq!(verlinde(count.rho, count.rho, count.rho, 3 * k).unwrap(), k + 1);
        }
    }
    assert!(obstruction_m(0).is_err());
}

#[test]
fn level_one_is_z3() {
    let ring = su3_ring(1).unwrap();
    assert!(ring.validate().passed());
    let inv = ring.invertibles();
    assert_eq!(inv.len(), 3);
    assert_eq!(ring.classify_group(&inv).unwrap(), crate::fusion::SmallGroup::Cyclic(3));
}

#[test]
fn level_three_matches_e6_affine() {
    let full = su3_ring(3).unwrap();
    assert_eq!(full.rank(), 10);
    let sub = triality_zero_ring(3).unwrap();
    assert_eq!(sub.rank(), 4);
    assert!(sub.validate().passed());
    let e6a = rings::e6_affine_ring();
    let iso = e6a.find_isomorphism(&sub).expect("isomorphic rings");
    assert_eq!(sub.label(iso[e6a.require("rho").unwrap()]), "1,1");
    assert!(full.find_isomorphism(&e6a).is_none());
}

#[test]
fn level_six_validates() {
    let ring = su3_ring(6).unwrap();
    assert_eq!(ring.rank(), 28);
    assert!(ring.validate().passed());
    assert!(su3_ring(MAX_RING_LEVEL + 1).is_err());
}

#[test]
fn weight_parsing() {
    assert_eq!("2,1".parse::<Weight>().unwrap(), Weight::new(2, 1));
    assert_eq!(" 3 , 0 ".parse::<Weight>().unwrap(), Weight::new(3, 0));
    assert!("2".parse::<Weight>().is_err());
    assert!("a,1".parse::<Weight>().is_err());
    assert_eq!(Weight::new(2, 1).partition(), [3, 1, 0]);
    assert_eq!(Weight::new(3, 0).triality(), 0);
}

proptest! {
    #[test]
    fn fusion_symmetries(level in 1u32..10, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let weights = admissible_weights(level);
        let l = weights[i.index(weights.len())];
        let m = weights[j.index(weights.len())];
        let lm = kac_walton(l, m, level).unwrap();
        prop_assert_eq!(&lm, &kac_walton(m, l, level).unwrap());
        let conj: WeightMultiset = lm.iter().map(|(n, &c)| (n.conjugate(), c)).collect();
        prop_assert_eq!(conj, kac_walton(l.conjugate(), m.conjugate(), level).unwrap());
        prop_assert!(lm.keys().all(|n| n.is_admissible(level)));
    }

    #[test]
    fn large_weights_keep_dimension_identity(a in 0u32..12, b in 0u32..12, c in 0u32..12, d in 0u32..12) {
        let (l, m) = (Weight::new(a, b), Weight::new(c, d));
        let total: u64 = classical_lr(l, m).iter().map(|(n, &k)| u64::from(k) * n.dimension()).sum();
        prop_assert_eq!(total, l.dimension() * m.dimension());
    }
}
