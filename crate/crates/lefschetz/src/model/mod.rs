//! Surfaces, homology classes, curves and the π1 word grammar.
//!
//! Homology is written in the basis (a1, b1, a2, b2, ..., ag, bg) with
//! `<a_i, b_i> = +1`. Every other module inherits this ordering.

mod curve;
mod word;

pub use curve::{validate_curve, Curve, CurveViolation, Provenance};
pub use word::{
    abelianize_word, parse_pi1_word, parse_word, surface_generator_names, Letter, Pi1Word,
    WordError,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Compact oriented surface of genus `g` with `n` boundary components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    pub genus: usize,
    pub boundary_count: usize,
}

impl Surface {
    pub fn new(genus: usize, boundary_count: usize) -> Self {
        Surface { genus, boundary_count }
    }

    pub fn closed(genus: usize) -> Self {
        Surface::new(genus, 0)
    }

    /// Rank of the first homology of the closed surface.
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.boundary_count == 0 {
            write!(f, "Σ_{}", self.genus)
        } else {
            write!(f, "Σ_{}^{}", self.genus, self.boundary_count)
        }
    }
}

/// Integer vector in the closed-surface basis (a1, b1, ..., ag, bg).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    coeffs: Vec<BigInt>,
}

impl HomologyClass {
    /// Panics if the length is odd.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.len().is_multiple_of(2), "homology vector must have even length");
        HomologyClass { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        HomologyClass::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(genus: usize) -> Self {
        HomologyClass { coeffs: vec![BigInt::zero(); 2 * genus] }
    }

    /// `a_i`, 1-based.
    pub fn a(genus: usize, i: usize) -> Self {
        let mut v = HomologyClass::zero(genus);
        v.coeffs[2 * (i - 1)] = BigInt::from(1);
        v
    }

    /// `b_i`, 1-based.
    pub fn b(genus: usize, i: usize) -> Self {
        let mut v = HomologyClass::zero(genus);
        v.coeffs[2 * (i - 1) + 1] = BigInt::from(1);
        v
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        HomologyClass { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Panics on length mismatch.
    pub fn add(&self, other: &HomologyClass) -> Self {
        assert_eq!(self.len(), other.len());
        HomologyClass {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        HomologyClass { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// v and -v give the same twist.
    pub fn eq_up_to_sign(&self, other: &HomologyClass) -> bool {
        self == other || *self == other.neg()
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Canonical sign: first nonzero coefficient positive.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Greatest common divisor of the coefficients; zero for the zero class.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// Numbers when they fit in i64, decimal strings otherwise.
impl Serialize for HomologyClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for HomologyClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = deserialize_bigints(d)?;
        if coeffs.len() % 2 != 0 {
            return Err(serde::de::Error::custom("homology vector must have even length"));
        }
        Ok(HomologyClass { coeffs })
    }
}

pub(crate) fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        match c.to_i64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

pub(crate) fn deserialize_bigints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Num {
        Int(i64),
        Text(String),
    }
    let raw: Vec<Num> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|n| match n {
            Num::Int(x) => Ok(BigInt::from(x)),
            Num::Text(t) => t
                .trim()
                .parse::<BigInt>()
                .map_err(|_| serde::de::Error::custom(format!("not an integer: {t:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_vectors() {
        assert_eq!(HomologyClass::a(3, 2).to_i64_vec().unwrap(), vec![0, 0, 1, 0, 0, 0]);
        assert_eq!(HomologyClass::b(3, 3).to_i64_vec().unwrap(), vec![0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn serde_round_trip_with_huge_entry() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = HomologyClass::new(vec![big, BigInt::from(-3)]);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"["123456789012345678901234567890",-3]"#);
        let back: HomologyClass = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn sign_normalization() {
        let v = HomologyClass::from_i64(&[0, -2, 1, 0]);
        assert_eq!(v.normalized().to_i64_vec().unwrap(), vec![0, 2, -1, 0]);
        assert!(v.eq_up_to_sign(&v.normalized()));
        assert_eq!(v.content(), BigInt::from(1));
    }
}
