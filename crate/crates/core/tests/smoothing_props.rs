//! Structural laws of the smoothing engine on random d-semistable models.

use cy_smoother_core::catalog::search_pairs;
use cy_smoother_core::smoothing::{c2_form, compute_rg2, compute_rg4_and_consur, cubic_form, hodge_numbers};
use cy_smoother_core::{
    build_component, move_top_center, smooth, Catalog, CurveClass, IntMatrix, K3Model, NormalCrossingModel,
    PicardVector,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Two rank-one bases with equal delta on the generic K3 of degree delta,
/// blown up along multiples of h whose degrees add up to `r1 + r2`.
#[derive(Clone, Debug)]
struct ModelSpec {
    v1: String,
    v2: String,
    /// `(side, k)` in global blow-up order.
    centers: Vec<(bool, i64)>,
}

fn build(spec: &ModelSpec) -> NormalCrossingModel {
    let cat = Catalog::bundled();
    let f1 = cat.get(&spec.v1).unwrap();
    let f2 = cat.get(&spec.v2).unwrap();
    let k3 = K3Model::generic(f1.delta()).unwrap();
    let side = |s: bool| -> Vec<CurveClass> {
        spec.centers.iter().filter(|c| c.0 == s).map(|&(_, k)| CurveClass::from_i64(&[k])).collect()
    };
    NormalCrossingModel::new(
        build_component(&f1.to_base().unwrap(), &k3, &side(false)).unwrap(),
        build_component(&f2.to_base().unwrap(), &k3, &side(true)).unwrap(),
    )
}

fn model_spec() -> impl Strategy<Value = ModelSpec> {
    let cat = Catalog::bundled();
    let pairs: Vec<(String, String, i64)> = search_pairs(&cat, true)
        .into_iter()
        .map(|p| {
            let r = i64::from(cat.get(&p.v1).unwrap().index) + i64::from(cat.get(&p.v2).unwrap().index);
            (p.v1, p.v2, r)
        })
        .collect();
    proptest::sample::select(pairs).prop_flat_map(|(v1, v2, total)| {
        let n = total as usize;
        (proptest::collection::vec(any::<bool>(), n - 1), proptest::collection::vec(any::<bool>(), n), any::<bool>())
            .prop_map(move |(cuts, sides, swap)| {
                let mut parts = Vec::new();
                let mut run = 1;
                for cut in cuts {
                    if cut {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                let centers = parts.into_iter().zip(sides).map(|(k, s)| (s, k)).collect();
                let (a, b) = if swap { (v2.clone(), v1.clone()) } else { (v1.clone(), v2.clone()) };
                ModelSpec { v1: a, v2: b, centers }
            })
    })
}

/// Rank-two lattice `[[4, 0], [0, -2]]` with `h = (1, 0)` over `P3 | P3`.
fn rank_two_model(a: i64, e: i64, on_y1: bool) -> NormalCrossingModel {
    let k3 = K3Model::new(
        IntMatrix::from_i64(&[&[4, 0], &[0, -2]]),
        vec!["h".into(), "e".into()],
        PicardVector::from_i64(&[1, 0]),
    )
    .unwrap();
    let p3 = Catalog::bundled().get("P3").unwrap().to_base().unwrap();
    let first = CurveClass::from_i64(&[a, e]);
    let second = CurveClass::from_i64(&[8 - a, -e]);
    let (c1, c2) = if on_y1 { (vec![first], vec![second]) } else { (vec![], vec![first, second]) };
    NormalCrossingModel::new(build_component(&p3, &k3, &c1).unwrap(), build_component(&p3, &k3, &c2).unwrap())
}

fn check_engine(x0: &NormalCrossingModel, shift: i64) -> Result<(), TestCaseError> {
    let rg2 = compute_rg2(x0).unwrap();
    let hodge = hodge_numbers(x0).unwrap();
    prop_assert_eq!(hodge.euler.clone(), BigInt::from(2) * (&hodge.h11 - &hodge.h12));
    prop_assert_eq!(BigInt::from(rg2.rank()), hodge.h11.clone());

    let cubic = cubic_form(x0, &rg2).unwrap();
    prop_assert!(cubic.is_symmetric());
    let g = &rg2.generators;
    for i in 0..g.len() {
        for j in 0..g.len() {
            for k in 0..g.len() {
                prop_assert_eq!(cubic.get(i, j, k), &x0.triple_product(&g[i], &g[j], &g[k]).unwrap());
            }
        }
    }

    // Shifting lifts by multiples of (D1, -D2) changes nothing.
    let mut moved = rg2.clone();
    for (i, v) in moved.generators.iter_mut().enumerate() {
        let k = BigInt::from(shift * (i as i64 + 1));
        *v = &*v + &rg2.degenerate_class.scaled(&k);
    }
    prop_assert_eq!(cubic_form(x0, &moved).unwrap(), cubic.clone());
    let c2 = c2_form(x0, &rg2).unwrap();
    prop_assert_eq!(c2_form(x0, &moved).unwrap(), c2.clone());
    prop_assert!(c2.corrections.iter().all(|c| *c == BigInt::from(0)));

    // Consur Gram against the componentwise pairing.
    let consur = compute_rg4_and_consur(x0, &rg2).unwrap();
    prop_assert_eq!(consur.rg4_rank, rg2.rank());
    for (i, a) in g.iter().enumerate() {
        let (a1, a2) = x0.split(a).unwrap();
        for (j, beta) in consur.rg4_generators.iter().enumerate() {
            let (b1, b2) = x0.split(beta).unwrap();
            let direct = x0.y1().pair_h2_h4(&a1, &b1).unwrap() + x0.y2().pair_h2_h4(&a2, &b2).unwrap();
            prop_assert_eq!(&consur.gram[i][j], &direct);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_laws_on_multiples_of_h(spec in model_spec(), shift in -3i64..=3) {
        let x0 = build(&spec);
        check_engine(&x0, shift)?;
    }

    #[test]
    fn engine_laws_on_rank_two_lattice(a in 1i64..=7, e in -2i64..=2, on_y1 in any::<bool>(), shift in -3i64..=3) {
        prop_assume!(4 * a * a - 2 * e * e >= -2 && 4 * (8 - a) * (8 - a) - 2 * e * e >= -2);
        check_engine(&rank_two_model(a, e, on_y1), shift)?;
    }

    #[test]
    fn move_and_move_back(spec in model_spec(), from in 1usize..=2) {
        let x0 = build(&spec);
        let src = if from == 1 { x0.y1() } else { x0.y2() };
        prop_assume!(!src.centers().is_empty());
        let moved = move_top_center(&x0, from).unwrap();
        let back = move_top_center(&moved, 3 - from).unwrap();
        prop_assert_eq!(back.y1().centers(), x0.y1().centers());
        prop_assert_eq!(back.y2().centers(), x0.y2().centers());
        let (h0, h1) = (hodge_numbers(&x0).unwrap(), hodge_numbers(&moved).unwrap());
        prop_assert_eq!((h0.h11, h0.h12, h0.euler), (h1.h11, h1.h12, h1.euler));
    }

    #[test]
    fn smooth_is_deterministic(spec in model_spec()) {
        let x0 = build(&spec);
        let a = smooth(&x0).unwrap();
        prop_assert_eq!(smooth(&x0).unwrap(), a.clone());
        prop_assert_eq!(a.invariants.is_some(), a.hypotheses_hold());
    }
}
