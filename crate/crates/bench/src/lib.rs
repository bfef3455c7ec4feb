//! Benchmark fixtures.

use cy_smoother_core::{build_component, Catalog, CubicTensor, CurveClass, IntMatrix, K3Model, NormalCrossingModel};

/// `P3 | P3` blown up along `5h, h, 2h` on the quartic K3.
pub fn triple_model() -> NormalCrossingModel {
    let k3 = K3Model::generic_quartic();
    let p3 = Catalog::bundled().get("P3").expect("bundled").to_base().expect("rank one");
    let centers: Vec<CurveClass> = [5, 1, 2].iter().map(|&k| CurveClass::from_i64(&[k])).collect();
    NormalCrossingModel::new(
        build_component(&p3, &k3, &[]).expect("valid"),
        build_component(&p3, &k3, &centers).expect("valid"),
    )
}

/// Dense `n x n` matrix with entries in `-7..=7`.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| ((i * 31 + j * 17 + i * j * 7) % 15) as i64 - 7).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

/// The cubic form of the triple example.
pub fn mu_tensor() -> CubicTensor {
    let idx =
        [(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 1), (0, 1, 2), (0, 2, 2), (1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)];
    let vals = [2, 5, 2, 5, 10, -4, 5, 10, 20, -32];
    CubicTensor::from_sorted(3, &idx.iter().copied().zip(vals).collect::<Vec<_>>())
}
