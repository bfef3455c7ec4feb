//! The shared anticanonical K3 surface `D`: its Picard lattice, curve
//! classes on it, and the genus formula `g = c^2/2 + 1`.

use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intser;
use crate::lattice::{dot, IntMatrix};

/// Integer coordinates of a divisor class in some distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicardVector(#[serde(with = "intser::vec_int")] pub Vec<BigInt>);

impl PicardVector {
    pub fn zero(len: usize) -> Self {
        PicardVector(vec![BigInt::zero(); len])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        PicardVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The `i`-th standard basis vector of length `len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        PicardVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn concat(&self, other: &PicardVector) -> Self {
        PicardVector(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl Deref for PicardVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl Add for &PicardVector {
    type Output = PicardVector;
    fn add(self, rhs: &PicardVector) -> PicardVector {
        assert_eq!(self.len(), rhs.len(), "dimension mismatch");
        PicardVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &PicardVector {
    type Output = PicardVector;
    fn sub(self, rhs: &PicardVector) -> PicardVector {
        assert_eq!(self.len(), rhs.len(), "dimension mismatch");
        PicardVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &PicardVector {
    type Output = PicardVector;
    fn neg(self) -> PicardVector {
        PicardVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&PicardVector> for &BigInt {
    type Output = PicardVector;
    fn mul(self, rhs: &PicardVector) -> PicardVector {
        rhs.scaled(self)
    }
}

impl From<Vec<BigInt>> for PicardVector {
    fn from(v: Vec<BigInt>) -> Self {
        PicardVector(v)
    }
}

/// A class on the K3 surface, in the [`K3Model`] basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass {
    pub class: PicardVector,
}

impl CurveClass {
    pub fn new(class: PicardVector) -> Self {
        CurveClass { class }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        CurveClass { class: PicardVector::from_i64(v) }
    }
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct K3ModelRepr {
    #[serde(with = "intser::mat_int")]
    gram: Vec<Vec<BigInt>>,
    classes: Vec<String>,
    polarization: PicardVector,
}

/// Picard lattice of the K3 surface together with a polarization `h`,
/// `h^2 = 2n - 2` with `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "K3ModelRepr", into = "K3ModelRepr")]
pub struct K3Model {
    gram: IntMatrix,
    class_names: Vec<String>,
    polarization: PicardVector,
}

impl TryFrom<K3ModelRepr> for K3Model {
    type Error = Error;
    fn try_from(r: K3ModelRepr) -> Result<Self> {
        let n = r.gram.len();
        if r.gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidK3("gram must be a square matrix".into()));
        }
        K3Model::new(IntMatrix::from_rows(&r.gram, n), r.classes, r.polarization)
    }
}

impl From<K3Model> for K3ModelRepr {
    fn from(m: K3Model) -> Self {
        K3ModelRepr { gram: m.gram.to_rows(), classes: m.class_names, polarization: m.polarization }
    }
}

impl K3Model {
    pub fn new(gram: IntMatrix, class_names: Vec<String>, polarization: PicardVector) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::InvalidK3("gram must be symmetric".into()));
        }
        let n = gram.rows();
        if (0..n).any(|i| gram[(i, i)].is_odd()) {
            return Err(Error::InvalidK3("gram must be even (a K3 lattice has even diagonal)".into()));
        }
        if class_names.len() != n {
            return Err(Error::InvalidK3(format!("{} class names for a rank-{n} lattice", class_names.len())));
        }
        if polarization.len() != n {
            return Err(Error::InvalidK3(format!(
                "polarization has {} coordinates, lattice rank is {n}",
                polarization.len()
            )));
        }
        let model = K3Model { gram, class_names, polarization };
        let h2 = model.h_squared();
        if h2 < BigInt::from(2) {
            return Err(Error::InvalidK3(format!("polarization has h^2 = {h2}; need 2n-2 with n >= 2")));
        }
        Ok(model)
    }

    /// A very general K3 of degree `h_squared`: `Pic = Z h`.
    pub fn generic(h_squared: i64) -> Result<Self> {
        K3Model::new(IntMatrix::from_i64(&[&[h_squared]]), vec!["h".to_string()], PicardVector::from_i64(&[1]))
    }

    /// A very general quartic surface in P^3.
    pub fn generic_quartic() -> Self {
        K3Model::generic(4).expect("valid lattice")
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn polarization(&self) -> &PicardVector {
        &self.polarization
    }

    pub fn h_squared(&self) -> BigInt {
        dot(&self.polarization, &self.gram.mul_vec(&self.polarization))
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// `a^T * gram * b`.
    pub fn intersect(&self, a: &PicardVector, b: &PicardVector) -> Result<BigInt> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(dot(a, &self.gram.mul_vec(b)))
    }

    /// `h . c`
    pub fn degree(&self, c: &PicardVector) -> Result<BigInt> {
        self.intersect(&self.polarization, c)
    }

    /// `k` such that `v = k h`, if any.
    pub fn multiple_of_polarization(&self, v: &PicardVector) -> Option<BigInt> {
        let h = &self.polarization;
        if v.len() != h.len() {
            return None;
        }
        let p = h.iter().position(|x| !x.is_zero())?;
        let (k, rem) = v[p].div_rem(&h[p]);
        if !rem.is_zero() {
            return None;
        }
        (h.scaled(&k) == *v).then_some(k)
    }

    pub fn curve_genus(&self, c: &CurveClass) -> Result<BigInt> {
        let c2 = self.intersect(&c.class, &c.class)?;
        if c2.is_odd() || c2 < BigInt::from(-2) {
            return Err(Error::NotACurve(c2.to_string()));
        }
        Ok(c2 / 2 + 1)
    }

    /// Checks `c^2 >= -2` and even.
    pub fn validate_curve(&self, c: &CurveClass) -> Result<()> {
        self.curve_genus(c).map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> K3Model {
        K3Model::generic_quartic()
    }

    #[test]
    fn intersect_examples() {
        let d = quartic();
        let a = PicardVector::from_i64(&[5]);
        let b = PicardVector::from_i64(&[3]);
        assert_eq!(d.intersect(&a, &b).unwrap(), BigInt::from(60));
        assert_eq!(d.intersect(&PicardVector::zero(1), &b).unwrap(), BigInt::zero());
        assert_eq!(d.h_squared(), BigInt::from(4));
        assert!(matches!(
            d.intersect(&PicardVector::from_i64(&[1, 0]), &b),
            Err(Error::Dimension { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn genus_examples() {
        let d = quartic();
        assert_eq!(d.curve_genus(&CurveClass::from_i64(&[8])).unwrap(), BigInt::from(129));
        assert_eq!(d.curve_genus(&CurveClass::from_i64(&[1])).unwrap(), BigInt::from(3));

        // A -2 curve on a rank-2 lattice.
        let d2 = K3Model::new(
            IntMatrix::from_i64(&[&[4, 0], &[0, -2]]),
            vec!["h".into(), "e".into()],
            PicardVector::from_i64(&[1, 0]),
        )
        .unwrap();
        assert_eq!(d2.curve_genus(&CurveClass::from_i64(&[0, 1])).unwrap(), BigInt::zero());
        assert!(matches!(d2.curve_genus(&CurveClass::from_i64(&[0, 2])), Err(Error::NotACurve(_))));
    }

    #[test]
    fn odd_lattice_rejected() {
        let r = K3Model::new(IntMatrix::from_i64(&[&[3]]), vec!["h".into()], PicardVector::from_i64(&[1]));
        assert!(matches!(r, Err(Error::InvalidK3(_))));
        let r = K3Model::new(IntMatrix::from_i64(&[&[0]]), vec!["h".into()], PicardVector::from_i64(&[1]));
        assert!(matches!(r, Err(Error::InvalidK3(_))));
    }

    #[test]
    fn json_shape() {
        let d: K3Model = serde_json::from_str(r#"{"gram": [[4]], "classes": ["h"], "polarization": [1]}"#).unwrap();
        assert_eq!(d, quartic());
        let back = serde_json::to_string(&d).unwrap();
        assert_eq!(back, r#"{"gram":[[4]],"classes":["h"],"polarization":[1]}"#);
    }

    #[test]
    fn polarization_multiples() {
        let d = quartic();
        assert_eq!(d.multiple_of_polarization(&PicardVector::from_i64(&[7])), Some(BigInt::from(7)));
        let d2 = K3Model::new(
            IntMatrix::from_i64(&[&[2, 1], &[1, -2]]),
            vec!["h".into(), "e".into()],
            PicardVector::from_i64(&[1, 0]),
        )
        .unwrap();
        assert_eq!(d2.multiple_of_polarization(&PicardVector::from_i64(&[3, 0])), Some(BigInt::from(3)));
        assert_eq!(d2.multiple_of_polarization(&PicardVector::from_i64(&[3, 1])), None);
    }
}
