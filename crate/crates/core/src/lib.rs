//! Exact lattice computations for smoothings of two-component normal
//! crossing Calabi-Yau threefolds `X0 = Y1 ∪_D Y2` glued along a K3 surface.

pub mod catalog;
pub mod component;
mod error;
pub mod forms;
mod intser;
pub mod lattice;
pub mod schema;
pub mod smoothing;
pub mod surface;

pub use catalog::{
    cy_invariants, known_cy_table, load_catalog, search_pairs, xi_examples, Catalog, CyPrediction, FanoFamily, FanoPair,
};
pub use component::{build_component, BaseThreefold, BlownComponent};
pub use error::{Error, Result};
pub use forms::{
    aronhold_st, deformation_group, forms_distinguishable, rr_dimension, AronholdInvariants, CubicTensor,
    CyInvariantTriple, DeformationGroup, FormComparison, Verdict,
};
pub use lattice::{FgAbelianGroup, IntMatrix};
pub use schema::{ComponentSpec, DegenerationSpec};
pub use smoothing::{
    c2_form, check_smoothability, compute_rg2, compute_rg4_and_consur, cubic_form, hodge_numbers, move_top_center,
    smooth, HodgeNumbers, Hypothesis, HypothesisVerdict, NormalCrossingModel, SmoothingInvariants, SmoothingReport,
    Status,
};
pub use surface::{CurveClass, K3Model, PicardVector};
