//! Closed-form Calabi-Yau invariants against the full smoothing engine.

use cy_smoother_core::catalog::search_pairs;
use cy_smoother_core::{
    build_component, cy_invariants, smooth, xi_examples, Catalog, CurveClass, CyInvariantTriple, FanoFamily, K3Model,
    NormalCrossingModel,
};
use num_bigint::BigInt;

/// `V1 | V2` blown up along a curve in `|(r1 + r2) h|`.
fn engine_triple(f1: &FanoFamily, f2: &FanoFamily) -> CyInvariantTriple {
    let k3 = K3Model::generic(f1.delta()).unwrap();
    let c = CurveClass::from_i64(&[i64::from(f1.index + f2.index)]);
    let x0 = NormalCrossingModel::new(
        build_component(&f1.to_base().unwrap(), &k3, &[]).unwrap(),
        build_component(&f2.to_base().unwrap(), &k3, &[c]).unwrap(),
    );
    let report = smooth(&x0).unwrap();
    assert!(report.hypotheses_hold(), "{} | {}: {:?}", f1.id, f2.id, report.hypotheses);
    let inv = report.invariants.unwrap();
    assert_eq!(inv.picard_rank, 1, "{} | {}", f1.id, f2.id);
    assert!(inv.torsion.is_empty());
    assert!(inv.consur.unimodular, "{} | {}", f1.id, f2.id);
    CyInvariantTriple {
        rho_cubed: inv.cubic_form.get(0, 0, 0).clone(),
        rho_c2: inv.c2_form.values[0].clone(),
        h12: Some(inv.hodge.h12),
    }
}

#[test]
fn every_rank_one_pair_agrees_with_the_engine() {
    let cat = Catalog::bundled();
    let pairs = search_pairs(&cat, true);
    assert_eq!(pairs.len(), 26);
    for p in pairs {
        let (f1, f2) = (cat.get(&p.v1).unwrap(), cat.get(&p.v2).unwrap());
        let closed = cy_invariants(f1, f2).unwrap().invariants;
        assert_eq!(engine_triple(f1, f2), closed, "{} | {}", p.v1, p.v2);
        assert_eq!(engine_triple(f2, f1), closed, "{} | {}", p.v2, p.v1);
    }
}

#[test]
fn closed_forms_from_family_data() {
    let cat = Catalog::bundled();
    for p in search_pairs(&cat, false) {
        let (f1, f2) = (cat.get(&p.v1).unwrap(), cat.get(&p.v2).unwrap());
        let Ok(pred) = cy_invariants(f1, f2) else { continue };
        let (r1, r2) = (i64::from(f1.index), i64::from(f2.index));
        let delta = f1.minus_k_cubed / (r1 * r1);
        let inv = &pred.invariants;
        assert_eq!(inv.rho_cubed.clone() * BigInt::from(r1 * r2), BigInt::from(delta * (r1 + r2)));
        assert_eq!(
            inv.rho_c2.clone() * BigInt::from(r1 * r2),
            BigInt::from(24 * (r1 + r2) + (r1 + r2) * delta * r1 * r2)
        );
        let h12 = 22 + f1.h12 + f2.h12 + (r1 + r2).pow(2) * delta / 2 - i64::from(f1.b2.max(f2.b2));
        assert_eq!(inv.h12, Some(BigInt::from(h12)));
    }
}

#[test]
fn xi_triples() {
    let expected = [
        ("Xi1", 44, 92, 68),
        ("Xi2", 44, 92, 66),
        ("Xi3", 44, 92, 64),
        ("Xi4", 15, 66, 75),
        ("Xi5", 8, 56, 88),
        ("Xi6", 8, 56, 60),
        ("Xi7", 5, 50, 92),
    ];
    let got = xi_examples(&Catalog::bundled()).unwrap();
    assert_eq!(got.len(), expected.len());
    for ((label, pred), (l, a, b, h)) in got.iter().zip(expected) {
        assert_eq!(label, l);
        assert_eq!(pred.invariants, CyInvariantTriple::new(a, b, Some(h)), "{label}");
        assert!(pred.picard_rank_one);
    }
}
