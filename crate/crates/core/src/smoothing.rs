//! Smoothing of `X0 = Y1 ∪_D Y2`: hypothesis checks, the Picard lattice of
//! the smoothing `RG^2 = G^2 / NG^2`, its cubic and `c2` forms, the dual
//! lattice `RG^4` and the Hodge numbers.
//!
//! Ambient coordinates concatenate the two components:
//! `H^2(Y1) ⊕ H^2(Y2)` in the bases `(H, E1, ...)`, and `H^4(Y1) ⊕ H^4(Y2)`
//! in the bases `(gamma, M1, ...)`.
//!
//! ```text
//! G^2  = { (a1, a2) : a1|_D = a2|_D }          NG^2 = Z (D1, -D2)
//! G^4  = { (b1, b2) : deg_D b1 = deg_D b2 }    NG^4 = right radical of G^2 x G^4
//! ```
//!
//! Generators of the free quotients are chosen from geometric candidates
//! first (`(H1, H2)`, then `k H - E` for centers `k h` in order of decreasing
//! `k`, differences of exceptional fibres) and completed from the Smith
//! section when needed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::component::{build_component, BlownComponent};
use crate::error::{Error, Result};
use crate::forms::CubicTensor;
use crate::intser;
use crate::lattice::{
    is_primitive_family, kernel_basis, pairing_is_unimodular, quotient, rank, solve_in_span, FgAbelianGroup, IntMatrix,
    Quotient,
};
use crate::surface::{CurveClass, K3Model, PicardVector};

pub const TORSION_NOTE: &str = "all results modulo torsion";

/// Upper bound for the Kähler witness search over `N`.
const KAHLER_SEARCH_LIMIT: i64 = 4096;

/// `Y1 ∪_D Y2`. Both components must be built on the same [`K3Model`];
/// this is checked by every operation rather than at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCrossingModel {
    y1: BlownComponent,
    y2: BlownComponent,
}

impl NormalCrossingModel {
    pub fn new(y1: BlownComponent, y2: BlownComponent) -> Self {
        NormalCrossingModel { y1, y2 }
    }

    pub fn y1(&self) -> &BlownComponent {
        &self.y1
    }

    pub fn y2(&self) -> &BlownComponent {
        &self.y2
    }

    pub fn component(&self, index: usize) -> Result<&BlownComponent> {
        match index {
            1 => Ok(&self.y1),
            2 => Ok(&self.y2),
            _ => Err(Error::ComponentIndex(index)),
        }
    }

    pub fn k3(&self) -> Result<&K3Model> {
        if self.y1.k3 != self.y2.k3 {
            return Err(Error::MismatchedK3);
        }
        Ok(&self.y1.k3)
    }

    fn n1(&self) -> usize {
        self.y1.h2()
    }

    fn ambient_rank(&self) -> usize {
        self.y1.h2() + self.y2.h2()
    }

    /// Splits an ambient vector into its `Y1` and `Y2` parts.
    pub fn split(&self, v: &PicardVector) -> Result<(PicardVector, PicardVector)> {
        if v.len() != self.ambient_rank() {
            return Err(Error::Dimension { expected: self.ambient_rank(), found: v.len() });
        }
        let (a, b) = v.split_at(self.n1());
        Ok((PicardVector(a.to_vec()), PicardVector(b.to_vec())))
    }

    /// `(D1, -D2)`, the class of the degeneration in `G^2`.
    pub fn degenerate_class(&self) -> PicardVector {
        self.y1.d_class.concat(&-&self.y2.d_class)
    }

    fn block_pairing(&self) -> IntMatrix {
        let (n1, n2) = (self.y1.h2(), self.y2.h2());
        let mut b = IntMatrix::zeros(n1 + n2, n1 + n2);
        for i in 0..n1 {
            for j in 0..n1 {
                b[(i, j)] = self.y1.pairing[(i, j)].clone();
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                b[(n1 + i, n1 + j)] = self.y2.pairing[(i, j)].clone();
            }
        }
        b
    }

    /// `sum_i Y_i-triple(a_i, b_i, c_i)` on ambient classes.
    pub fn triple_product(&self, a: &PicardVector, b: &PicardVector, c: &PicardVector) -> Result<BigInt> {
        let (a1, a2) = self.split(a)?;
        let (b1, b2) = self.split(b)?;
        let (c1, c2) = self.split(c)?;
        Ok(self.y1.triple_product(&a1, &b1, &c1)? + self.y2.triple_product(&a2, &b2, &c2)?)
    }

    pub fn c2_pair(&self, a: &PicardVector) -> Result<BigInt> {
        let (a1, a2) = self.split(a)?;
        Ok(self.y1.c2_pair(&a1)? + self.y2.c2_pair(&a2)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `D_i ∈ |-K_{Y_i}|` on both components.
    AnticanonicalDivisor,
    /// `H^1(Y_i, O) = 0`.
    IrregularityVanishes,
    /// Both components carry Kähler classes agreeing on `D`.
    KahlerClasses,
    /// `N_{D/Y1} ⊗ N_{D/Y2} = O_D`.
    DSemistable,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::AnticanonicalDivisor => "anticanonical divisor",
            Hypothesis::IrregularityVanishes => "H^1(O) = 0",
            Hypothesis::KahlerClasses => "Kahler classes",
            Hypothesis::DSemistable => "d-semistability",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Declared to hold for the input class, not computed.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisVerdict {
    pub hypothesis: Hypothesis,
    pub status: Status,
    pub note: String,
}

impl HypothesisVerdict {
    fn new(hypothesis: Hypothesis, status: Status, note: impl Into<String>) -> Self {
        HypothesisVerdict { hypothesis, status, note: note.into() }
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Witness `(N1, N2)` for the Kähler hypothesis: `A_i = N_i H - sum E_j` is
/// positive on every test class of `Y_i` and `A_1|_D = A_2|_D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KahlerWitness {
    #[serde(with = "intser::int")]
    pub n1: BigInt,
    #[serde(with = "intser::int")]
    pub n2: BigInt,
}

fn exceptional_sum(y: &BlownComponent) -> PicardVector {
    let mut v = PicardVector(y.k3.polarization().iter().map(|_| BigInt::zero()).collect());
    for c in &y.centers {
        v = &v + &c.class;
    }
    v
}

fn candidate_class(y: &BlownComponent, n: &BigInt) -> PicardVector {
    let mut a = PicardVector(vec![-BigInt::one(); y.h2()]);
    a.0[0] = n.clone();
    a
}

/// Numerical positivity tests for `A = N H - sum E`. Sufficient conditions
/// only: a pass on every test class, not a proof of ampleness.
fn passes_positivity(y: &BlownComponent, n: &BigInt) -> Result<bool> {
    if !n.is_positive() {
        return Ok(false);
    }
    let k3 = &y.k3;
    let h = k3.polarization();
    let l = &h.scaled(n) - &exceptional_sum(y);
    if !k3.intersect(&l, h)?.is_positive() || !k3.intersect(&l, &l)?.is_positive() {
        return Ok(false);
    }
    for c in &y.centers {
        if !k3.intersect(&l, &c.class)?.is_positive() {
            return Ok(false);
        }
    }
    let a = candidate_class(y, n);
    let hh = PicardVector::unit(y.h2(), 0);
    Ok(y.triple_product(&a, &a, &a)?.is_positive()
        && y.triple_product(&a, &a, &hh)?.is_positive()
        && y.triple_product(&a, &hh, &hh)?.is_positive())
}

/// Searches for a [`KahlerWitness`]. `Ok(None)` means none was found within
/// the search bound or the center sums differ by a non-multiple of `h`.
pub fn kahler_witness(x0: &NormalCrossingModel) -> Result<Option<KahlerWitness>> {
    let k3 = x0.k3()?;
    let delta = &exceptional_sum(&x0.y1) - &exceptional_sum(&x0.y2);
    let shift = if delta.is_zero() {
        BigInt::zero()
    } else {
        match k3.multiple_of_polarization(&delta) {
            Some(t) => t,
            None => return Ok(None),
        }
    };
    let start = std::cmp::max(BigInt::one(), BigInt::one() - &shift);
    let mut n2 = start;
    while n2 <= BigInt::from(KAHLER_SEARCH_LIMIT) {
        let n1 = &n2 + &shift;
        if passes_positivity(&x0.y1, &n1)? && passes_positivity(&x0.y2, &n2)? {
            return Ok(Some(KahlerWitness { n1, n2 }));
        }
        n2 += 1;
    }
    Ok(None)
}

/// `D1|_D + D2|_D = 0` in `Pic(D)`.
pub fn is_d_semistable(x0: &NormalCrossingModel) -> Result<bool> {
    x0.k3()?;
    let r1 = x0.y1.restrict(&x0.y1.d_class)?;
    let r2 = x0.y2.restrict(&x0.y2.d_class)?;
    Ok((&r1 + &r2).is_zero())
}

fn is_anticanonical(y: &BlownComponent) -> bool {
    y.d_class == -&y.canonical
}

pub fn check_smoothability(x0: &NormalCrossingModel) -> Result<Vec<HypothesisVerdict>> {
    x0.k3()?;
    let mut out = Vec::with_capacity(4);

    let anti = is_anticanonical(&x0.y1) && is_anticanonical(&x0.y2);
    out.push(HypothesisVerdict::new(
        Hypothesis::AnticanonicalDivisor,
        if anti { Status::Pass } else { Status::Fail },
        "D_i = -K_{Y_i} in both component bases",
    ));

    out.push(HypothesisVerdict::new(
        Hypothesis::IrregularityVanishes,
        Status::Assumed,
        "holds for Fano bases and is preserved by blowing up smooth curves; not computed",
    ));

    let kahler = match kahler_witness(x0)? {
        Some(w) => HypothesisVerdict::new(
            Hypothesis::KahlerClasses,
            Status::Pass,
            format!("witness {}H - sum E on Y1, {}H - sum E on Y2 (numerical tests, sufficient only)", w.n1, w.n2),
        ),
        None => HypothesisVerdict::new(
            Hypothesis::KahlerClasses,
            Status::Fail,
            "no witness N H - sum E found; the check is sufficient only",
        ),
    };
    out.push(kahler);

    let ds = is_d_semistable(x0)?;
    out.push(HypothesisVerdict::new(
        Hypothesis::DSemistable,
        if ds { Status::Pass } else { Status::Fail },
        if ds {
            "N_{D/Y1} ⊗ N_{D/Y2} is trivial".to_string()
        } else {
            let r1 = x0.y1.restrict(&x0.y1.d_class)?;
            let r2 = x0.y2.restrict(&x0.y2.d_class)?;
            format!("D1|_D + D2|_D = {:?}, expected 0", (&r1 + &r2).iter().map(|x| x.to_string()).collect::<Vec<_>>())
        },
    ));
    Ok(out)
}

/// Picks generators for the free part of a quotient `Q = G / N`.
///
/// `coords` sends an ambient candidate to free-part coordinates of `Q`
/// (or `None` if it is not in `G`); `lift` sends free-part coordinates back
/// to an ambient representative.
fn choose_generators(
    free_rank: usize,
    candidates: &[PicardVector],
    coords: impl Fn(&PicardVector) -> Option<Vec<BigInt>>,
    lift: impl Fn(&[BigInt]) -> PicardVector,
) -> Result<Vec<PicardVector>> {
    let mut images: Vec<Vec<BigInt>> = Vec::new();
    let mut lifts = Vec::new();
    for c in candidates {
        if images.len() == free_rank {
            break;
        }
        let Some(img) = coords(c) else { continue };
        images.push(img);
        if is_primitive_family(&images, free_rank) {
            lifts.push(c.clone());
        } else {
            images.pop();
        }
    }
    if images.len() < free_rank {
        let rel = IntMatrix::from_columns(&images, free_rank);
        let rest = quotient(free_rank, &rel)?;
        if !rest.group.is_torsion_free() {
            return Err(Error::Inconsistent("chosen generators do not span a saturated sublattice".into()));
        }
        for s in rest.section.columns() {
            lifts.push(lift(&s));
        }
    }
    Ok(lifts)
}

/// `RG^2 = G^2 / NG^2` together with the data needed to lift into `G^2`.
#[derive(Clone, Debug)]
pub struct Rg2 {
    pub group: FgAbelianGroup,
    /// Ambient lifts of the chosen free generators.
    pub generators: Vec<PicardVector>,
    /// `(D1, -D2)`.
    pub degenerate_class: PicardVector,
    /// Columns form a basis of `G^2` in ambient coordinates.
    pub g2_basis: IntMatrix,
    quotient: Quotient,
}

impl Rg2 {
    pub fn rank(&self) -> usize {
        self.group.free_rank
    }

    /// Free-part coordinates of an ambient class, `None` if it is not in `G^2`.
    pub fn coordinates(&self, v: &PicardVector) -> Option<Vec<BigInt>> {
        let c = solve_in_span(&self.g2_basis, v)?;
        Some(self.quotient.projection.mul_vec(&c))
    }
}

fn rg2_candidates(x0: &NormalCrossingModel) -> Vec<PicardVector> {
    let n = x0.ambient_rank();
    let n1 = x0.n1();
    let mut multiples = Vec::new();
    for (offset, y) in [(0, &x0.y1), (n1, &x0.y2)] {
        for (i, c) in y.centers.iter().enumerate() {
            if let Some(k) = y.k3.multiple_of_polarization(&c.class) {
                let mut v = PicardVector::zero(n);
                v.0[offset] = k.clone();
                v.0[offset + 1 + i] = -BigInt::one();
                multiples.push((k, v));
            }
        }
    }
    // Highest degree first; the sort is stable so ties keep Y1-before-Y2
    // and blow-up order.
    multiples.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = vec![&PicardVector::unit(n, 0) + &PicardVector::unit(n, n1)];
    out.extend(multiples.into_iter().map(|(_, v)| v));
    out
}

pub fn compute_rg2(x0: &NormalCrossingModel) -> Result<Rg2> {
    x0.k3()?;
    let res = x0.y1.restriction.hstack(&x0.y2.restriction.negated());
    let g2 = kernel_basis(&res);
    let nu = x0.degenerate_class();
    let nu_coords = solve_in_span(&g2, &nu)
        .ok_or_else(|| Error::Inconsistent("(D1, -D2) does not restrict compatibly to D".into()))?;
    let rel = IntMatrix::from_columns(&[nu_coords], g2.cols());
    let q = quotient(g2.cols(), &rel)?;

    let proj = q.projection.clone();
    let section = q.section.clone();
    let g2c = g2.clone();
    let generators = choose_generators(
        q.group.free_rank,
        &rg2_candidates(x0),
        |c| solve_in_span(&g2c, c).map(|x| proj.mul_vec(&x)),
        |s| PicardVector(g2c.mul_vec(&section.mul_vec(s))),
    )?;
    Ok(Rg2 { group: q.group.clone(), generators, degenerate_class: nu, g2_basis: g2, quotient: q })
}

/// Cubic form on `RG^2`: `T(a, b, c) = sum_i (a_i b_i c_i)_{Y_i}`.
/// Fails if the result would depend on the choice of lifts.
pub fn cubic_form(x0: &NormalCrossingModel, rg2: &Rg2) -> Result<CubicTensor> {
    let g = &rg2.generators;
    let nu = &rg2.degenerate_class;
    let mut bad = None;
    for i in 0..g.len() {
        for j in i..g.len() {
            if !x0.triple_product(nu, &g[i], &g[j])?.is_zero() {
                bad = Some((i, j));
            }
        }
        if !x0.triple_product(nu, nu, &g[i])?.is_zero() {
            bad = Some((i, i));
        }
    }
    if let Some((i, j)) = bad {
        return Err(Error::Inconsistent(format!(
            "(D1, -D2) pairs nontrivially with generators {} and {}; the cubic form is not well defined",
            i + 1,
            j + 1
        )));
    }
    let mut err = None;
    let t = CubicTensor::from_fn(g.len(), |i, j, k| match x0.triple_product(&g[i], &g[j], &g[k]) {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            BigInt::zero()
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

/// Linear form `l ↦ c2(X_t) . l` on `RG^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Form {
    #[serde(with = "intser::vec_int")]
    pub values: Vec<BigInt>,
    /// `l1 D1^2 + l2 D2^2` per generator; zero on a d-semistable model.
    #[serde(with = "intser::vec_int")]
    pub corrections: Vec<BigInt>,
}

pub fn c2_form(x0: &NormalCrossingModel, rg2: &Rg2) -> Result<C2Form> {
    if !is_anticanonical(&x0.y1) || !is_anticanonical(&x0.y2) {
        return Err(Error::Inconsistent("c2 form needs D_i = -K_{Y_i}".into()));
    }
    let d1 = &x0.y1.d_class;
    let d2 = &x0.y2.d_class;
    let mut values = Vec::with_capacity(rg2.generators.len());
    let mut corrections = Vec::with_capacity(rg2.generators.len());
    for (idx, g) in rg2.generators.iter().enumerate() {
        let (l1, l2) = x0.split(g)?;
        let corr = x0.y1.triple_product(&l1, d1, d1)? + x0.y2.triple_product(&l2, d2, d2)?;
        if !corr.is_zero() {
            return Err(Error::NonzeroC2Correction { generator: idx + 1, value: corr.to_string() });
        }
        values.push(x0.c2_pair(g)?);
        corrections.push(corr);
    }
    Ok(C2Form { values, corrections })
}

/// `RG^4 = G^4 / NG^4` and the pairing `RG^2 x RG^4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsurCheck {
    pub rg4_rank: usize,
    /// Ambient lifts in `H^4(Y1) ⊕ H^4(Y2)`.
    pub rg4_generators: Vec<PicardVector>,
    #[serde(with = "intser::mat_int")]
    pub gram: Vec<Vec<BigInt>>,
    pub unimodular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

fn rg4_candidates(x0: &NormalCrossingModel) -> Vec<PicardVector> {
    let n = x0.ambient_rank();
    let n1 = x0.n1();
    let comps = [(0usize, &x0.y1), (n1, &x0.y2)];
    let gamma_minus_m = |offset: usize, y: &BlownComponent| {
        let mut v = PicardVector::unit(n, offset);
        v.0[offset + 1] = -y.base.r();
        v
    };
    let with_centers: Vec<_> = comps.iter().filter(|(_, y)| !y.centers.is_empty()).collect();

    let mut out = Vec::new();
    if let Some((off, y)) = with_centers.first() {
        out.push(gamma_minus_m(*off, y));
    }
    for i in 0..x0.y1.centers.len() {
        for j in 0..x0.y2.centers.len() {
            out.push(&PicardVector::unit(n, 1 + i) + &PicardVector::unit(n, n1 + 1 + j));
        }
    }
    if let Some((off, y)) = with_centers.get(1) {
        out.push(gamma_minus_m(*off, y));
    }
    for (off, y) in comps {
        for i in 1..y.centers.len() {
            out.push(&PicardVector::unit(n, off + i) - &PicardVector::unit(n, off + i + 1));
        }
    }
    out.push(&PicardVector::unit(n, 0) + &PicardVector::unit(n, n1));
    out
}

pub fn compute_rg4_and_consur(x0: &NormalCrossingModel, rg2: &Rg2) -> Result<ConsurCheck> {
    x0.k3()?;
    let n = x0.ambient_rank();
    let mut deg = IntMatrix::zeros(1, n);
    for (i, d) in x0.y1.d_degree.iter().enumerate() {
        deg[(0, i)] = d.clone();
    }
    for (i, d) in x0.y2.d_degree.iter().enumerate() {
        deg[(0, x0.n1() + i)] = -d;
    }
    let g4 = kernel_basis(&deg);
    let b = x0.block_pairing();
    let w = rg2.g2_basis.transpose().mul(&b).mul(&g4);
    let radical = kernel_basis(&w);
    let q = quotient(g4.cols(), &radical)?;
    if !q.group.is_torsion_free() {
        return Err(Error::Inconsistent("NG^4 is not saturated".into()));
    }

    let proj = &q.projection;
    let generators = choose_generators(
        q.group.free_rank,
        &rg4_candidates(x0),
        |c| solve_in_span(&g4, c).map(|x| proj.mul_vec(&x)),
        |s| PicardVector(g4.mul_vec(&q.section.mul_vec(s))),
    )?;

    let mut gram = Vec::with_capacity(rg2.generators.len());
    for a in &rg2.generators {
        let ba = b.transpose().mul_vec(a);
        gram.push(generators.iter().map(|g| crate::lattice::dot(&ba, g)).collect::<Vec<_>>());
    }
    let (rows, cols) = (rg2.generators.len(), generators.len());
    let (unimodular, diagnostics) = if rows != cols {
        (false, Some(format!("RG^2 has rank {rows} but RG^4 has rank {cols}")))
    } else {
        let m = IntMatrix::from_rows(&gram, cols);
        let ok = pairing_is_unimodular(&m)?;
        let diag = (!ok).then(|| format!("Gram determinant is {}", m.determinant().unwrap_or_default()));
        (ok, diag)
    };
    Ok(ConsurCheck { rg4_rank: cols, rg4_generators: generators, gram, unimodular, diagnostics })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeNumbers {
    #[serde(with = "intser::int")]
    pub h11: BigInt,
    #[serde(with = "intser::int")]
    pub h12: BigInt,
    #[serde(with = "intser::int")]
    pub euler: BigInt,
    /// Rank of `[res1 | res2]`, the image of `H^2(Y1) ⊕ H^2(Y2)` in `Pic(D)`.
    pub k: usize,
}

pub fn hodge_numbers(x0: &NormalCrossingModel) -> Result<HodgeNumbers> {
    x0.k3()?;
    let k = rank(&x0.y1.restriction.hstack(&x0.y2.restriction));
    let kb = BigInt::from(k);
    let h11 = BigInt::from(x0.ambient_rank()) - &kb - 1;
    let h12 = BigInt::from(21) + x0.y1.h12() + x0.y2.h12() - &kb;
    let euler = x0.y1.euler_number() + x0.y2.euler_number() - 48;
    if euler != BigInt::from(2) * (&h11 - &h12) {
        return Err(Error::Inconsistent(format!("e = {euler} but 2(h11 - h12) = {}", BigInt::from(2) * (&h11 - &h12))));
    }
    Ok(HodgeNumbers { h11, h12, euler, k })
}

/// Moves the last-blown-up center of component `from` to the other side,
/// where it is blown up last.
pub fn move_top_center(x0: &NormalCrossingModel, from: usize) -> Result<NormalCrossingModel> {
    x0.k3()?;
    let (src, dst) = match from {
        1 => (&x0.y1, &x0.y2),
        2 => (&x0.y2, &x0.y1),
        _ => return Err(Error::ComponentIndex(from)),
    };
    let Some((top, rest)) = src.centers.split_last() else {
        return Err(Error::NoCenters(from));
    };
    let mut moved: Vec<CurveClass> = dst.centers.clone();
    moved.push(top.clone());
    let new_src = build_component(&src.base, &src.k3, rest)?;
    let new_dst = build_component(&dst.base, &dst.k3, &moved)?;
    Ok(match from {
        1 => NormalCrossingModel::new(new_src, new_dst),
        _ => NormalCrossingModel::new(new_dst, new_src),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingInvariants {
    pub picard_rank: usize,
    #[serde(with = "intser::vec_int")]
    pub torsion: Vec<BigInt>,
    /// Ambient lifts in `H^2(Y1) ⊕ H^2(Y2)`.
    pub picard_generators: Vec<PicardVector>,
    pub cubic_form: CubicTensor,
    pub c2_form: C2Form,
    pub consur: ConsurCheck,
    pub hodge: HodgeNumbers,
}

impl SmoothingInvariants {
    /// Compares everything except the ambient lifts, which depend on the
    /// component decomposition.
    pub fn agrees_with(&self, other: &SmoothingInvariants) -> bool {
        self.picard_rank == other.picard_rank
            && self.torsion == other.torsion
            && self.cubic_form == other.cubic_form
            && self.c2_form == other.c2_form
            && self.consur.gram == other.consur.gram
            && self.consur.unimodular == other.consur.unimodular
            && self.hodge.h11 == other.hodge.h11
            && self.hodge.h12 == other.hodge.h12
            && self.hodge.euler == other.hodge.euler
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingReport {
    pub hypotheses: Vec<HypothesisVerdict>,
    /// Absent when a required hypothesis fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<SmoothingInvariants>,
    pub torsion_note: String,
}

impl SmoothingReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(HypothesisVerdict::holds)
    }
}

/// Runs the full pipeline. Invariants are computed only when every
/// hypothesis passes or is assumed.
pub fn smooth(x0: &NormalCrossingModel) -> Result<SmoothingReport> {
    let hypotheses = check_smoothability(x0)?;
    let torsion_note = TORSION_NOTE.to_string();
    if !hypotheses.iter().all(HypothesisVerdict::holds) {
        return Ok(SmoothingReport { hypotheses, invariants: None, torsion_note });
    }
    let rg2 = compute_rg2(x0)?;
    let cubic = cubic_form(x0, &rg2)?;
    let c2 = c2_form(x0, &rg2)?;
    let consur = compute_rg4_and_consur(x0, &rg2)?;
    let hodge = hodge_numbers(x0)?;
    let invariants = SmoothingInvariants {
        picard_rank: rg2.rank(),
        torsion: rg2.group.torsion.clone(),
        picard_generators: rg2.generators.clone(),
        cubic_form: cubic,
        c2_form: c2,
        consur,
        hodge,
    };
    Ok(SmoothingReport { hypotheses, invariants: Some(invariants), torsion_note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component::BaseThreefold;

    fn quartic_model(c1: &[i64], c2: &[i64]) -> NormalCrossingModel {
        let k3 = K3Model::generic_quartic();
        let p3 = BaseThreefold::projective_space();
        let cs = |v: &[i64]| v.iter().map(|&k| CurveClass::from_i64(&[k])).collect::<Vec<_>>();
        NormalCrossingModel::new(
            build_component(&p3, &k3, &cs(c1)).unwrap(),
            build_component(&p3, &k3, &cs(c2)).unwrap(),
        )
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quick_example() {
        let x0 = quartic_model(&[], &[8]);
        let report = smooth(&x0).unwrap();
        assert!(report.hypotheses_hold());
        let inv = report.invariants.unwrap();
        assert_eq!(inv.picard_rank, 1);
        assert!(inv.torsion.is_empty());
        assert_eq!(*inv.cubic_form.get(0, 0, 0), BigInt::from(2));
        assert_eq!(inv.c2_form.values, big(&[44]));
        assert_eq!(inv.consur.gram, vec![big(&[1])]);
        assert!(inv.consur.unimodular);
        assert_eq!((inv.hodge.h11, inv.hodge.h12, inv.hodge.euler), (1.into(), 149.into(), (-296).into()));
        assert_eq!(inv.picard_generators, vec![PicardVector::from_i64(&[1, 1, 0])]);
    }

    #[test]
    fn pair_one() {
        let x0 = quartic_model(&[5], &[3]);
        let inv = smooth(&x0).unwrap().invariants.unwrap();
        assert_eq!(
            inv.picard_generators,
            vec![PicardVector::from_i64(&[1, 0, 1, 0]), PicardVector::from_i64(&[5, -1, 0, 0])]
        );
        assert_eq!(inv.picard_rank, 2);
        let t = &inv.cubic_form;
        let vals: Vec<BigInt> =
            [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)].iter().map(|&(i, j, k)| t.get(i, j, k).clone()).collect();
        assert_eq!(vals, big(&[2, 5, 5, 5]));
        assert_eq!(inv.c2_form.values, big(&[44, 50]));
        assert_eq!(inv.consur.gram, vec![big(&[1, 0]), big(&[1, 1])]);
        assert!(inv.consur.unimodular);
        assert_eq!((inv.hodge.h11, inv.hodge.h12), (2.into(), 90.into()));
    }

    fn table(t: &CubicTensor) -> Vec<BigInt> {
        t.sorted_entries().into_iter().map(|(_, v)| v).collect()
    }

    #[test]
    fn triple_orderings() {
        let mu = smooth(&quartic_model(&[], &[5, 2, 1])).unwrap().invariants.unwrap();
        assert_eq!(table(&mu.cubic_form), big(&[2, 5, 2, 5, 10, -4, 5, 10, 20, -32]));
        assert_eq!((mu.hodge.h11.clone(), mu.hodge.h12.clone()), (3.into(), 83.into()));
        let nu = smooth(&quartic_model(&[], &[5, 1, 2])).unwrap().invariants.unwrap();
        assert_eq!(table(&nu.cubic_form), big(&[2, 5, 2, 5, 10, -4, 5, 10, 20, -40]));
        assert_eq!((nu.hodge.h11, nu.hodge.h12), (3.into(), 83.into()));
        assert!(mu.consur.unimodular && nu.consur.unimodular);
    }

    #[test]
    fn not_d_semistable() {
        let x0 = quartic_model(&[], &[7]);
        let report = smooth(&x0).unwrap();
        assert!(!report.hypotheses_hold());
        assert!(report.invariants.is_none());
        let ds = report.hypotheses.iter().find(|v| v.hypothesis == Hypothesis::DSemistable).unwrap();
        assert_eq!(ds.status, Status::Fail);
    }

    #[test]
    fn kahler_witness_quick() {
        let x0 = quartic_model(&[], &[8]);
        let w = kahler_witness(&x0).unwrap().unwrap();
        assert_eq!((w.n1, w.n2), (1.into(), 9.into()));
    }

    #[test]
    fn move_top() {
        let a = quartic_model(&[5, 3], &[]);
        let b = move_top_center(&a, 1).unwrap();
        assert_eq!(b.y1.centers.len(), 1);
        assert_eq!(b.y2.centers, vec![CurveClass::from_i64(&[3])]);
        assert!(matches!(move_top_center(&quartic_model(&[], &[8]), 1), Err(Error::NoCenters(1))));
        let other = smooth(&quartic_model(&[5, 3], &[])).unwrap().invariants.unwrap();
        let moved = smooth(&move_top_center(&quartic_model(&[5], &[3]), 2).unwrap()).unwrap().invariants.unwrap();
        assert!(moved.agrees_with(&other));
        assert!(matches!(move_top_center(&a, 3), Err(Error::ComponentIndex(3))));
    }

    #[test]
    fn non_anticanonical_d() {
        let x0 = quartic_model(&[], &[8]);
        let y1 = x0.y1.clone().with_declared_d_class(PicardVector::from_i64(&[3]));
        let report = smooth(&NormalCrossingModel::new(y1, x0.y2.clone())).unwrap();
        assert_eq!(report.hypotheses[0].status, Status::Fail);
        assert!(report.invariants.is_none());
    }

    #[test]
    fn mismatched_k3() {
        let p3 = BaseThreefold::projective_space();
        let k3a = K3Model::generic_quartic();
        let k3b = K3Model::new(
            IntMatrix::from_i64(&[&[4, 0], &[0, -2]]),
            vec!["h".into(), "e".into()],
            PicardVector::from_i64(&[1, 0]),
        )
        .unwrap();
        let x0 = NormalCrossingModel::new(
            build_component(&p3, &k3a, &[]).unwrap(),
            build_component(&p3, &k3b, &[]).unwrap(),
        );
        assert!(matches!(check_smoothability(&x0), Err(Error::MismatchedK3)));
    }
}
