//! Cohomological model of one component `Y`: a Picard-rank-one Fano base
//! blown up successively along curves lying on the anticanonical K3 `D`.
//!
//! Basis conventions. `H^2(Y)` has basis `(H, E1, ..., Es)` where `H` is the
//! pullback of the ample generator of the base and `Ei` is the pullback to
//! the final stage of the exceptional divisor of the `i`-th blow-up.
//! `H^4(Y)` has basis `(gamma, M1, ..., Ms)` where `gamma` is a curve with
//! `H . gamma = 1` on the base and `Mi` is a fibre of `Ei` over its center.
//!
//! Writing `d_i = H . c_i`, `g_i` for the genus of `c_i` and `m_ij = c_i . c_j`
//! on `D`, the nonzero triple products are
//!
//! ```text
//! H^3        = H_cubed(base)
//! H Ei^2     = -d_i
//! Ei^3       = -r d_i + sum_{k<i} m_ki + 2 - 2 g_i
//! Ej Ei^2    = -m_ji                       (j < i)
//! ```
//!
//! and every other monomial vanishes by the projection formula. The second
//! Chern class pairs as `H . c2 = 24/r + sum_i d_i` and
//! `Ei . c2 = r d_i - sum_{k<i} m_ki + sum_{k>i} m_ik`.

use num_bigint::BigInt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::surface::{CurveClass, K3Model, PicardVector};

/// `-K_V . c2(V) = 24` for every Fano threefold (`chi(O_V) = 1`).
pub const ANTICANONICAL_C2: i64 = 24;

/// A Fano threefold with `-K = r H`, `H` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseThreefold {
    pub name: String,
    pub b2: u32,
    pub index: u32,
    pub minus_k_cubed: i64,
    pub h12: i64,
}

impl BaseThreefold {
    pub fn new(name: impl Into<String>, b2: u32, index: u32, minus_k_cubed: i64, h12: i64) -> Result<Self> {
        let base = BaseThreefold { name: name.into(), b2, index, minus_k_cubed, h12 };
        let r = i64::from(index);
        if r <= 0 || minus_k_cubed <= 0 || h12 < 0 || b2 == 0 {
            return Err(Error::InvalidBase(format!("{}: index, -K^3 and b2 must be positive", base.name)));
        }
        if minus_k_cubed % (r * r) != 0 {
            return Err(Error::InvalidBase(format!("{}: r^2 does not divide -K^3", base.name)));
        }
        if ANTICANONICAL_C2 % r != 0 {
            return Err(Error::InvalidBase(format!("{}: index {r} does not divide 24", base.name)));
        }
        Ok(base)
    }

    pub fn projective_space() -> Self {
        BaseThreefold::new("P3", 1, 4, 64, 0).expect("valid base")
    }

    pub fn r(&self) -> BigInt {
        BigInt::from(self.index)
    }

    /// `-K^3 / r^2`, the degree `h^2` of the anticanonical K3.
    pub fn delta(&self) -> i64 {
        let r = i64::from(self.index);
        self.minus_k_cubed / (r * r)
    }

    /// `H^3 = -K^3 / r^3`, when integral.
    pub fn h_cubed(&self) -> Option<BigInt> {
        let r3 = i64::from(self.index).pow(3);
        (self.minus_k_cubed % r3 == 0).then(|| BigInt::from(self.minus_k_cubed / r3))
    }

    /// `H . c2 = 24 / r`.
    pub fn h_c2(&self) -> BigInt {
        BigInt::from(ANTICANONICAL_C2 / i64::from(self.index))
    }

    pub fn euler(&self) -> BigInt {
        BigInt::from(2 * (i64::from(self.b2) - self.h12 + 1))
    }
}

/// A blown-up component together with its full intersection data.
/// Immutable after [`build_component`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownComponent {
    pub(crate) base: BaseThreefold,
    pub(crate) k3: K3Model,
    pub(crate) centers: Vec<CurveClass>,
    pub(crate) degrees: Vec<BigInt>,
    pub(crate) genera: Vec<BigInt>,
    /// Full symmetric tensor, `n^3` entries with `n = 1 + s`.
    pub(crate) triple: Vec<BigInt>,
    pub(crate) c2: Vec<BigInt>,
    pub(crate) d_class: PicardVector,
    pub(crate) canonical: PicardVector,
    /// `rank Pic(D) x n`; column `j` is the restriction of basis class `j`.
    pub(crate) restriction: IntMatrix,
    /// `n x n`; `H^2 x H^4` pairing in the bases above.
    pub(crate) pairing: IntMatrix,
    /// Degree on `D` of each `H^4` basis class.
    pub(crate) d_degree: Vec<BigInt>,
}

pub fn build_component(base: &BaseThreefold, k3: &K3Model, centers: &[CurveClass]) -> Result<BlownComponent> {
    if base.b2 != 1 {
        return Err(Error::InvalidBase(format!(
            "{} has b2 = {}; lattice mode needs Picard rank one (use the Fano catalog's closed forms instead)",
            base.name, base.b2
        )));
    }
    let h_cubed =
        base.h_cubed().ok_or_else(|| Error::InvalidBase(format!("{}: r^3 does not divide -K^3", base.name)))?;
    let r = base.r();
    if &h_cubed * &r != k3.h_squared() {
        return Err(Error::InvalidBase(format!(
            "{}: H restricted to D has square {}, but the K3 polarization has h^2 = {}",
            base.name,
            &h_cubed * &r,
            k3.h_squared()
        )));
    }
    for (i, c) in centers.iter().enumerate() {
        if c.class.len() != k3.rank() {
            return Err(Error::CenterNotOnLattice { index: i, expected: k3.rank(), found: c.class.len() });
        }
        k3.validate_curve(c)?;
    }

    let s = centers.len();
    let n = s + 1;
    let degrees: Vec<BigInt> = centers.iter().map(|c| k3.degree(&c.class)).collect::<Result<_>>()?;
    let genera: Vec<BigInt> = centers.iter().map(|c| k3.curve_genus(c)).collect::<Result<_>>()?;
    let mut mutual = vec![vec![BigInt::zero(); s]; s];
    for i in 0..s {
        for j in 0..s {
            mutual[i][j] = k3.intersect(&centers[i].class, &centers[j].class)?;
            if i != j && mutual[i][j].is_negative() {
                return Err(Error::NegativeIntersection { i, j, value: mutual[i][j].to_string() });
            }
        }
    }

    let mut triple = vec![BigInt::zero(); n * n * n];
    let mut put = |a: usize, b: usize, c: usize, v: BigInt| {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            triple[(x * n + y) * n + z] = v.clone();
        }
    };
    put(0, 0, 0, h_cubed);
    for i in 0..s {
        let e = i + 1;
        put(0, e, e, -&degrees[i]);
        let earlier: BigInt = (0..i).map(|k| &mutual[k][i]).sum();
        let cube = -(&r * &degrees[i]) + earlier + 2 - BigInt::from(2) * &genera[i];
        put(e, e, e, cube);
        for (j, row) in mutual.iter().enumerate().take(i) {
            put(j + 1, e, e, -&row[i]);
        }
    }

    let mut c2 = vec![BigInt::zero(); n];
    c2[0] = base.h_c2() + degrees.iter().sum::<BigInt>();
    for i in 0..s {
        let earlier: BigInt = (0..i).map(|k| &mutual[k][i]).sum();
        let later: BigInt = (i + 1..s).map(|k| &mutual[i][k]).sum();
        c2[i + 1] = &r * &degrees[i] - earlier + later;
    }

    let mut d_class = PicardVector::zero(n);
    d_class.0[0] = r.clone();
    for i in 0..s {
        d_class.0[i + 1] = -BigInt::one();
    }
    let canonical = -&d_class;

    let mut restriction_cols = vec![k3.polarization().0.clone()];
    restriction_cols.extend(centers.iter().map(|c| c.class.0.clone()));
    let restriction = IntMatrix::from_columns(&restriction_cols, k3.rank());

    let mut pairing = IntMatrix::zeros(n, n);
    pairing[(0, 0)] = BigInt::one();
    for i in 1..n {
        pairing[(i, i)] = -BigInt::one();
    }
    let mut d_degree = vec![BigInt::one(); n];
    d_degree[0] = r;

    Ok(BlownComponent {
        base: base.clone(),
        k3: k3.clone(),
        centers: centers.to_vec(),
        degrees,
        genera,
        triple,
        c2,
        d_class,
        canonical,
        restriction,
        pairing,
        d_degree,
    })
}

impl BlownComponent {
    pub fn base(&self) -> &BaseThreefold {
        &self.base
    }

    pub fn k3(&self) -> &K3Model {
        &self.k3
    }

    pub fn centers(&self) -> &[CurveClass] {
        &self.centers
    }

    pub fn genera(&self) -> &[BigInt] {
        &self.genera
    }

    pub fn degrees(&self) -> &[BigInt] {
        &self.degrees
    }

    /// `h^2(Y) = 1 + s`
    pub fn h2(&self) -> usize {
        self.centers.len() + 1
    }

    pub fn h2_labels(&self) -> Vec<String> {
        std::iter::once("H".to_string()).chain((1..self.h2()).map(|i| format!("E{i}"))).collect()
    }

    pub fn h4_labels(&self) -> Vec<String> {
        std::iter::once("gamma".to_string()).chain((1..self.h2()).map(|i| format!("M{i}"))).collect()
    }

    pub fn d_class(&self) -> &PicardVector {
        &self.d_class
    }

    pub fn canonical_class(&self) -> &PicardVector {
        &self.canonical
    }

    pub fn restriction(&self) -> &IntMatrix {
        &self.restriction
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn d_degree(&self) -> &[BigInt] {
        &self.d_degree
    }

    pub fn c2_covector(&self) -> &[BigInt] {
        &self.c2
    }

    /// Restriction of a class to `Pic(D)`.
    pub fn restrict(&self, a: &PicardVector) -> Result<PicardVector> {
        self.check(a)?;
        Ok(PicardVector(self.restriction.mul_vec(a)))
    }

    pub(crate) fn t(&self, i: usize, j: usize, k: usize) -> &BigInt {
        let n = self.h2();
        &self.triple[(i * n + j) * n + k]
    }

    fn check(&self, a: &[BigInt]) -> Result<()> {
        if a.len() != self.h2() {
            return Err(Error::Dimension { expected: self.h2(), found: a.len() });
        }
        Ok(())
    }

    pub fn triple_product(&self, a: &PicardVector, b: &PicardVector, c: &PicardVector) -> Result<BigInt> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        let n = self.h2();
        let mut total = BigInt::zero();
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let ab = &a[i] * &b[j];
                for k in (0..n).filter(|&k| !c[k].is_zero()) {
                    let t = self.t(i, j, k);
                    if !t.is_zero() {
                        total += &ab * &c[k] * t;
                    }
                }
            }
        }
        Ok(total)
    }

    pub fn c2_pair(&self, a: &PicardVector) -> Result<BigInt> {
        self.check(a)?;
        Ok(a.iter().zip(&self.c2).map(|(x, y)| x * y).sum())
    }

    /// `H^2 x H^4` pairing of a divisor class with a curve class.
    pub fn pair_h2_h4(&self, a: &PicardVector, beta: &PicardVector) -> Result<BigInt> {
        self.check(a)?;
        self.check(beta)?;
        Ok(a.iter().zip(&self.pairing.mul_vec(beta)).map(|(x, y)| x * y).sum())
    }

    pub fn euler_number(&self) -> BigInt {
        self.base.euler() + self.genera.iter().map(|g| BigInt::from(2) - BigInt::from(2) * g).sum::<BigInt>()
    }

    /// `h^{1,2}(Y) = h^{1,2}(base) + sum g_i`
    pub fn h12(&self) -> BigInt {
        BigInt::from(self.base.h12) + self.genera.iter().sum::<BigInt>()
    }

    /// Replaces the declared class of `D`, leaving the canonical class alone.
    /// Only useful for exercising the hypothesis checks on hand-built data.
    pub fn with_declared_d_class(mut self, d_class: PicardVector) -> Self {
        self.d_class = d_class;
        self
    }

    /// Rebuilds from the same base and K3 with a new center list.
    pub fn with_centers(&self, centers: &[CurveClass]) -> Result<BlownComponent> {
        build_component(&self.base, &self.k3, centers)
    }

    /// `chi(O_Y(a))` numerator check: `2 a^3 + 3 a^2 (-K) + a (K^2 + c2)`
    /// must be divisible by 12 for every class. Used as a sanity check.
    pub fn riemann_roch_numerator(&self, a: &PicardVector) -> Result<BigInt> {
        let k = &self.canonical;
        let a3 = self.triple_product(a, a, a)?;
        let a2k = self.triple_product(a, a, k)?;
        let ak2 = self.triple_product(a, k, k)?;
        let ac2 = self.c2_pair(a)?;
        Ok(BigInt::from(2) * a3 - BigInt::from(3) * a2k + ak2 + ac2)
    }
}
