//! Classical invariants of cubic cup-product forms, Riemann-Roch counts on
//! Calabi-Yau threefolds, and grouping by Hilbert polynomial.
//!
//! # Aronhold normalization
//!
//! For a ternary cubic with coefficient tensor `a_ijk` (so the polynomial is
//! `sum a_ijk x_i x_j x_k`), `S` and `T` are the symbolic bracket monomials
//!
//! ```text
//! S = (abc)(abd)(acd)(bcd)
//! T = (abc)(abd)(ace)(bcf)(def)^2
//! ```
//!
//! evaluated by contracting copies of the tensor with Levi-Civita symbols.
//! No further scaling is applied. On the Hesse pencil
//! `x^3 + y^3 + z^3 + 6 m xyz` these give `S = -24 (m - m^4)` and
//! `T = -6 (1 - 20 m^3 - 8 m^6)`, i.e. `-24` and `-6` times Salmon's
//! normalization. Both are invariant under `GL(3, Z)` and have weights 4 and 6.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intser::{self, Num};
use crate::lattice::IntMatrix;

/// Fully symmetric integer 3-tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CubicTensorRepr", into = "CubicTensorRepr")]
pub struct CubicTensor {
    rank: usize,
    entries: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubicTensorRepr {
    rank: usize,
    entries: BTreeMap<String, Num>,
}

fn index_key(rank: usize, (i, j, k): (usize, usize, usize)) -> String {
    if rank <= 9 {
        format!("{}{}{}", i + 1, j + 1, k + 1)
    } else {
        format!("{},{},{}", i + 1, j + 1, k + 1)
    }
}

fn parse_key(rank: usize, key: &str) -> Result<[usize; 3]> {
    let bad = || Error::InvalidTensor(format!("bad index key {key:?} for rank {rank}"));
    let parts: Vec<usize> = if key.contains(',') {
        key.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?
    } else {
        key.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
    };
    let [a, b, c]: [usize; 3] = parts.try_into().map_err(|_| bad())?;
    if [a, b, c].iter().any(|&x| x == 0 || x > rank) {
        return Err(bad());
    }
    Ok([a - 1, b - 1, c - 1])
}

impl TryFrom<CubicTensorRepr> for CubicTensor {
    type Error = Error;
    fn try_from(r: CubicTensorRepr) -> Result<Self> {
        let mut t = CubicTensor::zeros(r.rank);
        let mut seen: BTreeMap<[usize; 3], BigInt> = BTreeMap::new();
        for (key, Num(v)) in r.entries {
            let mut idx = parse_key(r.rank, &key)?;
            idx.sort_unstable();
            if let Some(prev) = seen.get(&idx) {
                if *prev != v {
                    return Err(Error::InvalidTensor(format!("conflicting values for permutations of {key:?}")));
                }
            }
            t.set(idx[0], idx[1], idx[2], v.clone());
            seen.insert(idx, v);
        }
        Ok(t)
    }
}

impl From<CubicTensor> for CubicTensorRepr {
    fn from(t: CubicTensor) -> Self {
        let entries = t
            .sorted_entries()
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| (index_key(t.rank, idx), Num(v)))
            .collect();
        CubicTensorRepr { rank: t.rank, entries }
    }
}

impl CubicTensor {
    pub fn zeros(rank: usize) -> Self {
        CubicTensor { rank, entries: vec![BigInt::zero(); rank * rank * rank] }
    }

    /// Builds the tensor from a function that is assumed symmetric; only
    /// sorted index triples are queried.
    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize, usize) -> BigInt) -> Self {
        let mut t = CubicTensor::zeros(rank);
        for i in 0..rank {
            for j in i..rank {
                for k in j..rank {
                    t.set(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    /// Entries `(i <= j <= k, value)` in lexicographic order.
    pub fn from_sorted(rank: usize, values: &[((usize, usize, usize), i64)]) -> Self {
        let mut t = CubicTensor::zeros(rank);
        for &((i, j, k), v) in values {
            t.set(i, j, k, BigInt::from(v));
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.entries[(i * self.rank + j) * self.rank + k]
    }

    /// Sets all permutations of `(i, j, k)`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: BigInt) {
        let n = self.rank;
        for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
            self.entries[(a * n + b) * n + c] = v.clone();
        }
    }

    pub fn sorted_entries(&self) -> Vec<((usize, usize, usize), BigInt)> {
        let n = self.rank;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    out.push(((i, j, k), self.get(i, j, k).clone()));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let v = self.get(i, j, k);
                    v == self.get(j, i, k) && v == self.get(i, k, j) && v == self.get(k, j, i)
                })
            })
        })
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        CubicTensor { rank: self.rank, entries: self.entries.iter().map(|x| x * k).collect() }
    }

    /// `T'(x, y, z) = T(g^T x, g^T y, g^T z)`, i.e. `T'_abc = g_ai g_bj g_ck T_ijk`.
    pub fn transformed(&self, g: &IntMatrix) -> Self {
        let n = self.rank;
        assert!(g.rows() == n && g.cols() == n, "change of basis must be {n}x{n}");
        // Contract one index at a time.
        let mut cur = self.entries.clone();
        for axis in 0..3 {
            let mut next = vec![BigInt::zero(); n * n * n];
            for a in 0..n {
                for i in (0..n).filter(|&i| !g[(a, i)].is_zero()) {
                    for p in 0..n {
                        for q in 0..n {
                            let (src, dst) = match axis {
                                0 => ((i * n + p) * n + q, (a * n + p) * n + q),
                                1 => ((p * n + i) * n + q, (p * n + a) * n + q),
                                _ => ((p * n + q) * n + i, (p * n + q) * n + a),
                            };
                            if !cur[src].is_zero() {
                                next[dst] += &g[(a, i)] * &cur[src];
                            }
                        }
                    }
                }
            }
            cur = next;
        }
        CubicTensor { rank: n, entries: cur }
    }

    /// gcd of all entries (0 for the zero tensor).
    pub fn content(&self) -> BigInt {
        self.entries.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// `sum T_ijk x_i x_j x_k`
    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        let n = self.rank;
        assert_eq!(x.len(), n);
        let mut total = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    total += self.get(i, j, k) * &x[i] * &x[j] * &x[k];
                }
            }
        }
        total
    }
}

impl fmt::Display for CubicTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.sorted_entries().into_iter().map(|(idx, v)| format!("{}={}", index_key(self.rank, idx), v)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

const PERMS: [([usize; 3], i8); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AronholdInvariants {
    #[serde(with = "intser::int")]
    pub s: BigInt,
    #[serde(with = "intser::int")]
    pub t: BigInt,
}

/// Aronhold `S` (degree 4) and `T` (degree 6) of a ternary cubic form.
pub fn aronhold_st(form: &CubicTensor) -> Result<AronholdInvariants> {
    if form.rank() != 3 {
        return Err(Error::TensorRank { found: form.rank() });
    }
    let a = |i: usize, j: usize, k: usize| form.get(i, j, k);

    // (abc)(abd)(acd)(bcd): each bracket is a signed permutation of slots.
    let mut s = BigInt::zero();
    for (p1, s1) in PERMS {
        for (p2, s2) in PERMS {
            for (p3, s3) in PERMS {
                for (p4, s4) in PERMS {
                    let [a0, b0, c0] = p1;
                    let [a1, b1, d0] = p2;
                    let [a2, c1, d1] = p3;
                    let [b2, c2, d2] = p4;
                    let sign = s1 * s2 * s3 * s4;
                    let term = a(a0, a1, a2) * a(b0, b1, b2) * a(c0, c1, c2) * a(d0, d1, d2);
                    if sign > 0 {
                        s += term;
                    } else {
                        s -= term;
                    }
                }
            }
        }
    }

    // (abc)(abd)(ace)(bcf)(def)^2. Contract the a, b, c slots first into
    // an intermediate indexed by the d, e, f slots they leave open.
    let mut abc = vec![BigInt::zero(); 27];
    for (p1, s1) in PERMS {
        for (p2, s2) in PERMS {
            for (p3, s3) in PERMS {
                for (p4, s4) in PERMS {
                    let [a0, b0, c0] = p1;
                    let [a1, b1, d0] = p2;
                    let [a2, c1, e0] = p3;
                    let [b2, c2, f0] = p4;
                    let sign = s1 * s2 * s3 * s4;
                    let term = a(a0, a1, a2) * a(b0, b1, b2) * a(c0, c1, c2);
                    let slot = (d0 * 3 + e0) * 3 + f0;
                    if sign > 0 {
                        abc[slot] += term;
                    } else {
                        abc[slot] -= term;
                    }
                }
            }
        }
    }
    let mut t = BigInt::zero();
    for d0 in 0..3 {
        for e0 in 0..3 {
            for f0 in 0..3 {
                let coef = &abc[(d0 * 3 + e0) * 3 + f0];
                if coef.is_zero() {
                    continue;
                }
                let mut inner = BigInt::zero();
                for (p5, s5) in PERMS {
                    for (p6, s6) in PERMS {
                        let [d1, e1, f1] = p5;
                        let [d2, e2, f2] = p6;
                        let term = a(d0, d1, d2) * a(e0, e1, e2) * a(f0, f1, f2);
                        if s5 * s6 > 0 {
                            inner += term;
                        } else {
                            inner -= term;
                        }
                    }
                }
                t += coef * inner;
            }
        }
    }
    Ok(AronholdInvariants { s, t })
}

/// Discriminant of the binary cubic `sum T_ijk x_i x_j x_k`, rank 2.
pub fn binary_discriminant(form: &CubicTensor) -> Result<BigInt> {
    if form.rank() != 2 {
        return Err(Error::InvalidTensor(format!("binary discriminant needs rank 2, got {}", form.rank())));
    }
    let a = form.get(0, 0, 0).clone();
    let b = BigInt::from(3) * form.get(0, 0, 1);
    let c = BigInt::from(3) * form.get(0, 1, 1);
    let d = form.get(1, 1, 1).clone();
    Ok(&b * &b * &c * &c
        - BigInt::from(4) * &a * &c * &c * &c
        - BigInt::from(4) * &b * &b * &b * &d
        - BigInt::from(27) * &a * &a * &d * &d
        + BigInt::from(18) * &a * &b * &c * &d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Some invariant differs, so the forms are not equivalent.
    Distinct,
    /// Every computed invariant agrees; this does not prove equivalence.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormComparison {
    pub verdict: Verdict,
    /// One line per invariant that was compared.
    pub checks: Vec<String>,
    /// `T1 / T2` in lowest terms when both forms have `S = 0` and `T2 != 0`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t_ratio: Option<(String, String)>,
}

fn reduced_ratio(num: &BigInt, den: &BigInt) -> (BigInt, BigInt) {
    let g = num.gcd(den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

pub fn forms_distinguishable(first: &CubicTensor, second: &CubicTensor) -> Result<FormComparison> {
    if first.rank() != second.rank() {
        return Err(Error::TensorRankMismatch(first.rank(), second.rank()));
    }
    let mut checks = Vec::new();
    let mut distinct = false;
    let mut record = |name: &str, x: &BigInt, y: &BigInt| {
        let differs = x != y;
        distinct |= differs;
        checks.push(format!("{name}: {x} vs {y}{}", if differs { " (differs)" } else { "" }));
    };

    record("content", &first.content(), &second.content());
    let mut t_ratio = None;
    match first.rank() {
        0 => {}
        1 => record("|a|", &first.get(0, 0, 0).abs(), &second.get(0, 0, 0).abs()),
        2 => record("discriminant", &binary_discriminant(first)?, &binary_discriminant(second)?),
        3 => {
            let a = aronhold_st(first)?;
            let b = aronhold_st(second)?;
            record("S", &a.s, &b.s);
            record("T", &a.t, &b.t);
            if a.s.is_zero() && b.s.is_zero() && !b.t.is_zero() {
                let (n, d) = reduced_ratio(&a.t, &b.t);
                t_ratio = Some((n.to_string(), d.to_string()));
            }
        }
        _ => {}
    }
    let verdict = if distinct { Verdict::Distinct } else { Verdict::Inconclusive };
    Ok(FormComparison { verdict, checks, t_ratio })
}

/// `(rho^3, rho . c2, h^{1,2})` of a Calabi-Yau threefold with an ample
/// generator `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyInvariantTriple {
    #[serde(with = "intser::int")]
    pub rho_cubed: BigInt,
    #[serde(with = "intser::int")]
    pub rho_c2: BigInt,
    #[serde(with = "intser::opt_int", default, skip_serializing_if = "Option::is_none")]
    pub h12: Option<BigInt>,
}

impl CyInvariantTriple {
    pub fn new(rho_cubed: i64, rho_c2: i64, h12: Option<i64>) -> Self {
        CyInvariantTriple { rho_cubed: rho_cubed.into(), rho_c2: rho_c2.into(), h12: h12.map(BigInt::from) }
    }
}

impl fmt::Display for CyInvariantTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.h12 {
            Some(h) => write!(f, "({}, {}, {})", self.rho_cubed, self.rho_c2, h),
            None => write!(f, "({}, {})", self.rho_cubed, self.rho_c2),
        }
    }
}

/// `chi(O(n rho)) = rho^3 n^3 / 6 + (rho . c2) n / 12`.
pub fn rr_dimension(inv: &CyInvariantTriple, n: &BigInt) -> Result<BigInt> {
    let numerator = BigInt::from(2) * &inv.rho_cubed * n * n * n + &inv.rho_c2 * n;
    let (q, r) = numerator.div_rem(&BigInt::from(12));
    if !r.is_zero() {
        return Err(Error::NonIntegralChi {
            rho_cubed: inv.rho_cubed.to_string(),
            rho_c2: inv.rho_c2.to_string(),
            n: n.to_string(),
        });
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationGroup {
    #[serde(with = "intser::int")]
    pub rho_cubed: BigInt,
    #[serde(with = "intser::int")]
    pub rho_c2: BigInt,
    pub members: Vec<String>,
}

/// Partitions Picard-rank-one Calabi-Yau threefolds by `(rho^3, rho . c2)`:
/// members of one group share a Hilbert polynomial under `|8 rho|`.
/// Groups are ordered by decreasing `(rho^3, rho . c2)`, members by label.
pub fn deformation_group(items: &[(String, CyInvariantTriple)]) -> Vec<DeformationGroup> {
    let mut groups: BTreeMap<(BigInt, BigInt), Vec<String>> = BTreeMap::new();
    for (label, inv) in items {
        groups.entry((inv.rho_cubed.clone(), inv.rho_c2.clone())).or_default().push(label.clone());
    }
    groups
        .into_iter()
        .rev()
        .map(|((rho_cubed, rho_c2), mut members)| {
            members.sort();
            DeformationGroup { rho_cubed, rho_c2, members }
        })
        .collect()
}
