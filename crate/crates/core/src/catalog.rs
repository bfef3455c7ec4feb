//! Fano threefold families, the `delta`-matching pair search and the closed
//! forms for the Calabi-Yau obtained by smoothing `V1 ∪_D Bl_c V2`.
//!
//! With `delta = -K^3 / r^2` equal on both sides and `-K . c2 = 24` for
//! every Fano threefold:
//!
//! ```text
//! rho^3    = delta (r1 + r2) / (r1 r2)
//! rho . c2 = 24/r1 + 24/r2 + (r1 + r2) delta
//! h^{1,2}  = 22 + h12(V1) + h12(V2) + (r1 + r2)^2 delta / 2 - max(b2)
//! ```

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::component::{BaseThreefold, ANTICANONICAL_C2};
use crate::error::{Error, Result};
use crate::forms::{deformation_group, CyInvariantTriple, DeformationGroup};

const DEFAULT_CSV: &str = include_str!("../data/fano_catalog.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanoFamily {
    pub id: String,
    pub b2: u32,
    pub index: u32,
    #[serde(rename = "minus_K_cubed")]
    pub minus_k_cubed: i64,
    pub h12: i64,
    #[serde(default)]
    pub provenance: String,
    #[serde(default)]
    pub description: String,
}

impl FanoFamily {
    /// `-K^3 / r^2`; exact for every validated row.
    pub fn delta(&self) -> i64 {
        let r = i64::from(self.index);
        self.minus_k_cubed / (r * r)
    }

    fn validate(&self, row: usize) -> Result<()> {
        let err = |message: String| Error::Catalog { row, message };
        if self.id.trim().is_empty() {
            return Err(err("empty id".into()));
        }
        if self.b2 == 0 || self.index == 0 {
            return Err(err(format!("{}: b2 and index must be positive", self.id)));
        }
        if self.minus_k_cubed <= 0 {
            return Err(err(format!("{}: -K^3 must be positive", self.id)));
        }
        if self.h12 < 0 {
            return Err(err(format!("{}: h12 must be non-negative", self.id)));
        }
        let r2 = i64::from(self.index).pow(2);
        if self.minus_k_cubed % r2 != 0 {
            return Err(err(format!("{}: delta = {}/{} is not an integer", self.id, self.minus_k_cubed, r2)));
        }
        if ANTICANONICAL_C2 % i64::from(self.index) != 0 {
            return Err(err(format!("{}: index {} does not divide 24", self.id, self.index)));
        }
        Ok(())
    }

    /// The base for lattice mode; only meaningful when `b2 = 1`.
    pub fn to_base(&self) -> Result<BaseThreefold> {
        BaseThreefold::new(self.id.clone(), self.b2, self.index, self.minus_k_cubed, self.h12)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    families: Vec<FanoFamily>,
}

impl Catalog {
    pub fn new(families: Vec<FanoFamily>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, f) in families.iter().enumerate() {
            f.validate(i + 1)?;
            if !seen.insert(f.id.clone()) {
                return Err(Error::Catalog { row: i + 1, message: format!("duplicate id {}", f.id) });
            }
        }
        Ok(Catalog { families })
    }

    /// The bundled catalog.
    pub fn bundled() -> Self {
        parse_csv(DEFAULT_CSV).expect("bundled catalog is valid")
    }

    pub fn families(&self) -> &[FanoFamily] {
        &self.families
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn get(&self, id: &str) -> Result<&FanoFamily> {
        self.families.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.to_string()))
    }
}

/// Parses CSV with header `id,b2,index,minus_K_cubed,h12,provenance,description`.
/// Row numbers in errors count data rows from 1.
pub fn parse_csv(text: &str) -> Result<Catalog> {
    if text.trim().is_empty() {
        return Ok(Catalog::default());
    }
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut families = Vec::new();
    for (i, rec) in reader.deserialize::<FanoFamily>().enumerate() {
        let f = rec.map_err(|e| Error::Catalog { row: i + 1, message: e.to_string() })?;
        families.push(f);
    }
    Catalog::new(families)
}

/// Parses a JSON array of rows with the CSV column names as keys.
pub fn parse_json(text: &str) -> Result<Catalog> {
    if text.trim().is_empty() {
        return Ok(Catalog::default());
    }
    let rows: Vec<serde_json::Value> =
        serde_json::from_str(text).map_err(|e| Error::Catalog { row: 0, message: e.to_string() })?;
    let mut families = Vec::with_capacity(rows.len());
    for (i, row) in rows.into_iter().enumerate() {
        let f: FanoFamily =
            serde_json::from_value(row).map_err(|e| Error::Catalog { row: i + 1, message: e.to_string() })?;
        families.push(f);
    }
    Catalog::new(families)
}

/// Loads a catalog file; `.json` files are read as JSON, anything else as CSV.
pub fn load_catalog(path: &Path) -> Result<Catalog> {
    let text = fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => parse_json(&text),
        _ => parse_csv(&text),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoPair {
    pub v1: String,
    pub v2: String,
    pub delta: i64,
}

/// All unordered pairs, repetition allowed, with equal `delta`; in catalog
/// order. With `require_rank_one` both members must have `b2 = 1`.
pub fn search_pairs(catalog: &Catalog, require_rank_one: bool) -> Vec<FanoPair> {
    let fams: Vec<&FanoFamily> = catalog.families().iter().filter(|f| !require_rank_one || f.b2 == 1).collect();
    let mut out = Vec::new();
    for (i, a) in fams.iter().enumerate() {
        for b in &fams[i..] {
            if a.delta() == b.delta() {
                out.push(FanoPair { v1: a.id.clone(), v2: b.id.clone(), delta: a.delta() });
            }
        }
    }
    out
}

/// Pairs with exactly one Picard-rank-one member.
pub fn mixed_rank_pairs(catalog: &Catalog) -> Result<Vec<FanoPair>> {
    let mut out = Vec::new();
    for p in search_pairs(catalog, false) {
        let (a, b) = (catalog.get(&p.v1)?, catalog.get(&p.v2)?);
        if (a.b2 == 1) != (b.b2 == 1) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Number of pairs per `delta`, keyed by `delta`.
pub fn delta_profile(pairs: &[FanoPair]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for p in pairs {
        *m.entry(p.delta).or_insert(0) += 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Existence {
    /// Both families have Picard rank one, or the rank-one side is rigid,
    /// so a common anticanonical K3 exists.
    Guaranteed,
    /// A common anticanonical K3 is assumed, not known to exist.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyPrediction {
    pub v1: String,
    pub v2: String,
    pub delta: i64,
    pub invariants: CyInvariantTriple,
    pub picard_rank_one: bool,
    pub existence: Existence,
}

fn exact_div(num: i64, den: i64, v1: &FanoFamily, v2: &FanoFamily, what: &str) -> Result<i64> {
    if den == 0 || num % den != 0 {
        return Err(Error::NonIntegral { v1: v1.id.clone(), v2: v2.id.clone(), what: format!("{what} = {num}/{den}") });
    }
    Ok(num / den)
}

pub fn cy_invariants(v1: &FanoFamily, v2: &FanoFamily) -> Result<CyPrediction> {
    let (d1, d2) = (v1.delta(), v2.delta());
    if d1 != d2 {
        return Err(Error::DeltaMismatch { v1: v1.id.clone(), v2: v2.id.clone(), d1, d2 });
    }
    let delta = d1;
    let (r1, r2) = (i64::from(v1.index), i64::from(v2.index));
    let c2 = ANTICANONICAL_C2;

    let rho_cubed = exact_div(delta * (r1 + r2), r1 * r2, v1, v2, "rho^3")?;
    let rho_c2 = exact_div(c2, r1, v1, v2, "24/r1")? + exact_div(c2, r2, v1, v2, "24/r2")? + (r1 + r2) * delta;
    // c^2 / 2 for the blow-up curve c in |(r1 + r2) h|.
    let half_c_squared = exact_div((r1 + r2).pow(2) * delta, 2, v1, v2, "c^2/2")?;
    let max_b2 = i64::from(v1.b2.max(v2.b2));
    let h12 = 22 + v1.h12 + v2.h12 + half_c_squared - max_b2;

    // Same number through 21 + h12(Y1) + h12(Y2) - k with g(c) = c^2/2 + 1
    // and k = max(b2), the rank of the joint image in Pic(D).
    let genus = half_c_squared + 1;
    let via_components = 21 + v1.h12 + (v2.h12 + genus) - max_b2;
    if via_components != h12 {
        return Err(Error::Inconsistent(format!("h12 routes disagree: {h12} vs {via_components}")));
    }

    let min_b2 = v1.b2.min(v2.b2);
    let rigid_rank_one = [v1, v2].iter().any(|f| f.b2 == 1 && f.h12 == 0);
    let existence =
        if (v1.b2 == 1 && v2.b2 == 1) || rigid_rank_one { Existence::Guaranteed } else { Existence::Assumed };
    Ok(CyPrediction {
        v1: v1.id.clone(),
        v2: v2.id.clone(),
        delta,
        invariants: CyInvariantTriple::new(rho_cubed, rho_c2, Some(h12)),
        picard_rank_one: min_b2 == 1,
        existence,
    })
}

/// Known Calabi-Yau threefolds of Picard rank one used as references.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownCy {
    pub label: String,
    pub description: String,
    pub invariants: CyInvariantTriple,
}

pub fn known_cy_table() -> Vec<KnownCy> {
    let row = |label: &str, description: &str, a, b, h| KnownCy {
        label: label.into(),
        description: description.into(),
        invariants: CyInvariantTriple::new(a, b, h),
    };
    vec![
        row("X(8)", "octic hypersurface in P(1,1,1,1,4)", 2, 44, Some(149)),
        row("X(6)", "sextic hypersurface in P(1,1,1,1,2)", 3, 42, Some(103)),
        row("Z1", "quintic hypersurface in P^4", 5, 50, None),
        row("Z2", "complete intersection of a quadric and a quartic in P^5", 8, 56, None),
        row("Z3", "Picard rank one Calabi-Yau with h12 = 76", 15, 66, Some(76)),
        row("Z4", "Picard rank one Calabi-Yau with h12 = 65", 44, 92, Some(65)),
    ]
}

pub fn known_cy(label: &str) -> Option<KnownCy> {
    known_cy_table().into_iter().find(|k| k.label == label)
}

/// The seven Picard-rank-one smoothings built from a rank-one family and a
/// higher-rank family.
pub const XI_PAIRS: [(&str, &str, &str); 7] = [
    ("Xi1", "X22", "MM-12.3-15"),
    ("Xi2", "X22", "MM-12.3-16"),
    ("Xi3", "X22", "MM-12.4-6"),
    ("Xi4", "V5", "MM-12.3-4"),
    ("Xi5", "Q", "MM-12.3-2"),
    ("Xi6", "Q", "P1xS1"),
    ("Xi7", "P3", "MM-12.3-1"),
];

pub fn xi_examples(catalog: &Catalog) -> Result<Vec<(String, CyPrediction)>> {
    XI_PAIRS
        .iter()
        .map(|(label, a, b)| Ok((label.to_string(), cy_invariants(catalog.get(a)?, catalog.get(b)?)?)))
        .collect()
}

/// Groups `Xi1..Xi7` together with the known table. `X(8)` and `X(6)` are
/// included only when `include_all_known` is set.
pub fn hilbert_scheme_groups(catalog: &Catalog, include_all_known: bool) -> Result<Vec<DeformationGroup>> {
    let mut items: Vec<(String, CyInvariantTriple)> =
        xi_examples(catalog)?.into_iter().map(|(l, p)| (l, p.invariants)).collect();
    for k in known_cy_table() {
        if include_all_known || k.label.starts_with('Z') {
            items.push((k.label, k.invariants));
        }
    }
    Ok(deformation_group(&items))
}
