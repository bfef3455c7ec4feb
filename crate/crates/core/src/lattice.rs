//! Exact integer linear algebra over finitely generated abelian groups.
//!
//! Everything here works on [`IntMatrix`], a dense row-major matrix of
//! arbitrary-precision integers. The central routine is the Smith normal
//! form; kernels, quotients and unimodularity tests are built on top of it.
//!
//! Lattice bases returned by [`kernel_basis`] and [`quotient`] are put in a
//! canonical "bottom-pivot" Hermite form: every basis vector has a positive
//! last nonzero coordinate (its pivot), pivots are distinct, and every other
//! vector's entry at a pivot coordinate lies in `[0, pivot)`. Vectors are
//! ordered by pivot position. For a given lattice this basis is unique.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must equal rows*cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have `cols` entries.
    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn negated(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::RankMismatch { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len(), "dimension mismatch in dot product");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`
/// with `d1 | d2 | ... | dk`, each `di ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `s = u * m * v` with `u`, `v` unimodular and `s` diagonal,
/// diagonal entries non-negative and forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariants().len()
    }

    /// The nonzero diagonal entries.
    pub fn invariants(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).take_while(|d| !d.is_zero()).collect()
    }
}

fn min_abs_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if s[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&pivot);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&pivot);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived; re-pivot on it.
                let (pi, pj) = min_abs_entry(&s, t).expect("nonzero remainder exists");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Canonical bottom-pivot Hermite basis of the lattice spanned by `vectors`
/// (all of length `dim`). Zero vectors and dependencies are removed.
pub fn hermite_basis(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut pending: Vec<Vec<BigInt>> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    for v in &pending {
        assert_eq!(v.len(), dim, "vector length must equal lattice dimension");
    }
    // (pivot coordinate, vector), in processing order: highest pivot first.
    let mut done: Vec<(usize, Vec<BigInt>)> = Vec::new();

    for p in (0..dim).rev() {
        // Euclid on coordinate p across pending vectors.
        loop {
            let nonzero: Vec<usize> = (0..pending.len()).filter(|&i| !pending[i][p].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let k = *nonzero.iter().min_by_key(|&&i| pending[i][p].abs()).unwrap();
            for &i in &nonzero {
                if i == k {
                    continue;
                }
                let q = pending[i][p].div_floor(&pending[k][p]);
                let pk = pending[k].clone();
                for (x, y) in pending[i].iter_mut().zip(&pk) {
                    *x -= &q * y;
                }
            }
        }
        let Some(k) = (0..pending.len()).find(|&i| !pending[i][p].is_zero()) else {
            continue;
        };
        let mut piv = pending.swap_remove(k);
        if piv[p].is_negative() {
            piv.iter_mut().for_each(|x| *x = -&*x);
        }
        for (_, w) in done.iter_mut() {
            reduce_at(w, &piv, p);
        }
        done.push((p, piv));
        pending.retain(|v| v.iter().any(|x| !x.is_zero()));
    }
    done.reverse();
    done.into_iter().map(|(_, v)| v).collect()
}

/// w -= floor(w[p] / v[p]) * v, leaving w[p] in [0, v[p]).
fn reduce_at(w: &mut [BigInt], v: &[BigInt], p: usize) {
    let q = w[p].div_floor(&v[p]);
    if !q.is_zero() {
        for (x, y) in w.iter_mut().zip(v) {
            *x -= &q * y;
        }
    }
}

fn pivot_of(v: &[BigInt]) -> Option<usize> {
    v.iter().rposition(|x| !x.is_zero())
}

/// Reduces `x` modulo the lattice with canonical basis `basis`
/// (as returned by [`hermite_basis`]).
pub fn reduce_modulo(x: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut x = x.to_vec();
    for b in basis.iter().rev() {
        if let Some(p) = pivot_of(b) {
            reduce_at(&mut x, b, p);
        }
    }
    x
}

/// Columns form a canonical basis of the saturated kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let cols: Vec<Vec<BigInt>> = (r..m.cols()).map(|j| snf.v.column(j)).collect();
    let basis = hermite_basis(&cols, m.cols());
    IntMatrix::from_columns(&basis, m.cols())
}

/// Coordinates `c` with `basis * c = x`, if `x` lies in the column span.
pub fn solve_in_span(basis: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.rows(), x.len(), "dimension mismatch");
    let snf = smith_normal_form(basis);
    let ux = snf.u.mul_vec(x);
    let inv = snf.invariants();
    let mut y = vec![BigInt::zero(); basis.cols()];
    for (i, val) in ux.iter().enumerate() {
        if i < inv.len() {
            let (q, rem) = val.div_rem(&inv[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// `Z^n / column-span(relations)` together with coordinates for its free part.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAbelianGroup,
    /// free_rank x n; maps ambient coordinates onto free-part coordinates.
    pub projection: IntMatrix,
    /// n x free_rank; lifts free generators back to the ambient lattice.
    pub section: IntMatrix,
}

pub fn quotient(ambient_rank: usize, relations: &IntMatrix) -> Result<Quotient> {
    if relations.rows() != ambient_rank {
        return Err(Error::Dimension { expected: ambient_rank, found: relations.rows() });
    }
    let n = ambient_rank;
    let snf = smith_normal_form(relations);
    let inv = snf.invariants();
    let torsion: Vec<BigInt> = inv.iter().filter(|d| !d.is_one()).cloned().collect();
    let free_rank = n - inv.len();

    // Rows of the projection span the annihilator {y : y^T R = 0}.
    let annihilator = kernel_basis(&relations.transpose());
    let projection = annihilator.transpose();
    debug_assert_eq!(projection.rows(), free_rank);

    // P = U^-1 [I | 0] V^-1, so S = V [U ; 0] satisfies P S = I.
    let section = if free_rank == 0 {
        IntMatrix::zeros(n, 0)
    } else {
        let psnf = smith_normal_form(&projection);
        let mut padded = IntMatrix::zeros(n, free_rank);
        for i in 0..free_rank {
            for j in 0..free_rank {
                padded[(i, j)] = psnf.u[(i, j)].clone();
            }
        }
        let raw = psnf.v.mul(&padded);
        let ker = kernel_basis(&projection).columns();
        let cols: Vec<Vec<BigInt>> = raw.columns().iter().map(|c| reduce_modulo(c, &ker)).collect();
        IntMatrix::from_columns(&cols, n)
    };

    Ok(Quotient { group: FgAbelianGroup { free_rank, torsion }, projection, section })
}

/// True iff the pairing with Gram matrix `g` is unimodular (all Smith
/// invariants equal to 1). A 0x0 pairing is vacuously unimodular.
pub fn pairing_is_unimodular(g: &IntMatrix) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::RankMismatch { rows: g.rows(), cols: g.cols() });
    }
    let snf = smith_normal_form(g);
    let inv = snf.invariants();
    Ok(inv.len() == g.rows() && inv.iter().all(One::is_one))
}

/// True iff `vectors` extend to a basis of `Z^dim`, i.e. they are linearly
/// independent and span a saturated sublattice.
pub fn is_primitive_family(vectors: &[Vec<BigInt>], dim: usize) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let m = IntMatrix::from_rows(vectors, dim);
    let inv = smith_normal_form(&m).invariants();
    inv.len() == vectors.len() && inv.iter().all(One::is_one)
}
