//! Invariance and scaling of Aronhold S and T, discriminants of binary
//! cubics from their roots, Riemann-Roch and grouping laws.

use std::collections::BTreeSet;

use cy_smoother_core::forms::binary_discriminant;
use cy_smoother_core::{
    aronhold_st, deformation_group, forms_distinguishable, rr_dimension, CubicTensor, CyInvariantTriple, IntMatrix,
    Verdict,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn tensor3() -> impl Strategy<Value = CubicTensor> {
    proptest::collection::vec(-4i64..=4, 10).prop_map(|v| {
        let idx = [
            (0, 0, 0),
            (0, 0, 1),
            (0, 0, 2),
            (0, 1, 1),
            (0, 1, 2),
            (0, 2, 2),
            (1, 1, 1),
            (1, 1, 2),
            (1, 2, 2),
            (2, 2, 2),
        ];
        let vals: Vec<((usize, usize, usize), i64)> = idx.iter().copied().zip(v).collect();
        CubicTensor::from_sorted(3, &vals)
    })
}

/// Product of elementary matrices, a permutation and a sign flip.
fn unimodular3() -> impl Strategy<Value = IntMatrix> {
    (proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..5), Just([0usize, 1, 2]).prop_shuffle(), 0usize..4)
        .prop_map(|(ops, perm, flip)| {
            let mut m = IntMatrix::identity(3);
            for (i, j, k) in ops {
                if i == j {
                    continue;
                }
                // row_i += k row_j
                for c in 0..3 {
                    let add = &m[(j, c)] * BigInt::from(k);
                    m[(i, c)] += add;
                }
            }
            let mut p = IntMatrix::zeros(3, 3);
            for (r, &c) in perm.iter().enumerate() {
                p[(r, c)] = BigInt::from(1);
            }
            if flip < 3 {
                for c in 0..3 {
                    p[(flip, c)] = -&p[(flip, c)];
                }
            }
            p.mul(&m)
        })
}

fn hesse(m: i64) -> CubicTensor {
    CubicTensor::from_sorted(3, &[((0, 0, 0), 1), ((1, 1, 1), 1), ((2, 2, 2), 1), ((0, 1, 2), m)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn aronhold_gl3z_invariant(t in tensor3(), g in unimodular3()) {
        prop_assert_eq!(g.determinant().unwrap().magnitude().clone(), num_bigint::BigUint::from(1u8));
        let moved = t.transformed(&g);
        prop_assert!(moved.is_symmetric());
        prop_assert_eq!(aronhold_st(&t).unwrap(), aronhold_st(&moved).unwrap());
        prop_assert_eq!(forms_distinguishable(&t, &moved).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn aronhold_scaling(t in tensor3(), lambda in prop_oneof![Just(2i64), Just(3i64), -3i64..=3]) {
        let l = BigInt::from(lambda);
        let a = aronhold_st(&t).unwrap();
        let b = aronhold_st(&t.scaled(&l)).unwrap();
        prop_assert_eq!(b.s, a.s * l.pow(4));
        prop_assert_eq!(b.t, a.t * l.pow(6));
    }

    #[test]
    fn hesse_pencil_oracle(m in -30i64..=30) {
        let st = aronhold_st(&hesse(m)).unwrap();
        let m = BigInt::from(m);
        prop_assert_eq!(st.s, BigInt::from(-24) * (&m - m.pow(4)));
        prop_assert_eq!(st.t, BigInt::from(-6) * (BigInt::from(1) - BigInt::from(20) * m.pow(3) - BigInt::from(8) * m.pow(6)));
    }

    #[test]
    fn json_round_trip(t in tensor3()) {
        let s = serde_json::to_string(&t).unwrap();
        let back: CubicTensor = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn discriminant_from_roots(roots in proptest::collection::vec(-5i64..=5, 3), lead in 1i64..=3) {
        // f = 3 lead (x - r1 y)(x - r2 y)(x - r3 y); disc = a^4 prod_{i<j} (ri - rj)^2
        let a = 3 * lead;
        let (r1, r2, r3) = (roots[0], roots[1], roots[2]);
        let c3 = a;
        let c2 = -a * (r1 + r2 + r3);
        let c1 = a * (r1 * r2 + r1 * r3 + r2 * r3);
        let c0 = -a * r1 * r2 * r3;
        let t = CubicTensor::from_sorted(2, &[((0, 0, 0), c3), ((0, 0, 1), c2 / 3), ((0, 1, 1), c1 / 3), ((1, 1, 1), c0)]);
        let expected = BigInt::from(a).pow(4) * BigInt::from(((r1 - r2) * (r1 - r3) * (r2 - r3)).pow(2));
        prop_assert_eq!(binary_discriminant(&t).unwrap(), expected);
    }

    #[test]
    fn rr_is_odd_and_exact(a in 1i64..=60, b in -20i64..=120, n in 0i64..=30) {
        let inv = CyInvariantTriple::new(a, b, None);
        let twelve_chi = 2 * a * n.pow(3) + b * n;
        let r = rr_dimension(&inv, &BigInt::from(n));
        if twelve_chi % 12 == 0 {
            let chi = r.unwrap();
            prop_assert_eq!(chi.clone(), BigInt::from(twelve_chi / 12));
            prop_assert_eq!(rr_dimension(&inv, &BigInt::from(-n)).unwrap(), -chi);
        } else {
            prop_assert!(r.is_err());
        }
    }

    #[test]
    fn grouping_is_an_order_free_partition(
        keys in proptest::collection::vec((1i64..=4, 40i64..=43), 0..12),
        seed in any::<u64>(),
    ) {
        let items: Vec<(String, CyInvariantTriple)> =
            keys.iter().enumerate().map(|(i, &(a, b))| (format!("z{i:02}"), CyInvariantTriple::new(a, b, Some(i as i64)))).collect();
        let groups = deformation_group(&items);

        // Each label exactly once, and grouped exactly with its key-mates.
        let mut seen = BTreeSet::new();
        for g in &groups {
            for m in &g.members {
                prop_assert!(seen.insert(m.clone()));
                let (_, inv) = items.iter().find(|(l, _)| l == m).unwrap();
                prop_assert_eq!((&inv.rho_cubed, &inv.rho_c2), (&g.rho_cubed, &g.rho_c2));
            }
        }
        prop_assert_eq!(seen.len(), items.len());
        let distinct: BTreeSet<(i64, i64)> = keys.iter().copied().collect();
        prop_assert_eq!(groups.len(), distinct.len());

        let mut shuffled = items.clone();
        let len = shuffled.len().max(1);
        shuffled.rotate_left((seed as usize) % len);
        if seed % 2 == 0 {
            shuffled.reverse();
        }
        prop_assert_eq!(deformation_group(&shuffled), groups);
    }
}

#[test]
fn pair_one_bases_are_inconclusive() {
    let e = CubicTensor::from_sorted(2, &[((0, 0, 0), 2), ((0, 0, 1), 5), ((0, 1, 1), 5), ((1, 1, 1), 5)]);
    let f = e.clone();
    assert_eq!(forms_distinguishable(&e, &f).unwrap().verdict, Verdict::Inconclusive);
}
