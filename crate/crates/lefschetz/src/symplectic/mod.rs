//! Homology representation Mod_g -> Sp(2g, Z).
//!
//! A right-handed twist about `c` acts as the transvection `x -> x - <x,c> c`.
//! Words are evaluated as ordered matrix products: `t_1 t_2 ... t_n` maps to
//! `T_1 T_2 ... T_n`, so the rightmost twist acts first.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::factorization::{Factorization, Target};
use crate::model::{Curve, HomologyClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("letters live on surfaces of different genus ({0} and {1})")]
    MixedSurfaces(usize, usize),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("twist exponent must be nonzero")]
    ZeroExponent,
}

/// `u^T J v` with J the block sum of [[0,1],[-1,0]].
pub fn intersection_pairing(u: &HomologyClass, v: &HomologyClass) -> Result<BigInt, SymplecticError> {
    if u.len() != v.len() {
        return Err(SymplecticError::DimensionMismatch(u.len(), v.len()));
    }
    Ok(pairing(u.coeffs(), v.coeffs()))
}

pub(crate) fn pairing(u: &[BigInt], v: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for i in (0..u.len()).step_by(2) {
        s += &u[i] * &v[i + 1] - &u[i + 1] * &v[i];
    }
    s
}

/// Square integer matrix of size 2g, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    g: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SpMatrix(g={})", self.g)?;
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl SpMatrix {
    pub fn identity(g: usize) -> Self {
        let n = 2 * g;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        SpMatrix { g, entries }
    }

    /// The form matrix J itself (it is symplectic).
    pub fn j(g: usize) -> Self {
        let n = 2 * g;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..g {
            entries[2 * i * n + 2 * i + 1] = BigInt::one();
            entries[(2 * i + 1) * n + 2 * i] = -BigInt::one();
        }
        SpMatrix { g, entries }
    }

    /// Checked constructor.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, SymplecticError> {
        let m = Self::from_rows_unchecked(rows)?;
        if !m.is_symplectic() {
            return Err(SymplecticError::NotSymplectic);
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, SymplecticError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<BigInt>>) -> Result<Self, SymplecticError> {
        let n = rows.len();
        if !n.is_multiple_of(2) {
            return Err(SymplecticError::DimensionMismatch(n, n + 1));
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(SymplecticError::DimensionMismatch(n, r.len()));
            }
            entries.extend(r);
        }
        Ok(SpMatrix { g: n / 2, entries })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim() + c]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.dim().max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == SpMatrix::identity(self.g)
    }

    /// `M^T J M = J`.
    pub fn is_symplectic(&self) -> bool {
        let n = self.dim();
        // (M^T J M)_{ij} = <col_i, col_j>
        let cols: Vec<Vec<BigInt>> = (0..n).map(|c| (0..n).map(|r| self.get(r, c).clone()).collect()).collect();
        let j = SpMatrix::j(self.g);
        for a in 0..n {
            for b in 0..n {
                if pairing(&cols[a], &cols[b]) != *j.get(a, b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.g, other.g, "genus mismatch in product");
        let n = self.dim();
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        SpMatrix { g: self.g, entries }
    }

    /// For symplectic M, `M^{-1} = -J M^T J`.
    pub fn inverse(&self) -> SpMatrix {
        let n = self.dim();
        let mut entries = vec![BigInt::zero(); n * n];
        // (J M^T J)_{ij} uses the block structure directly.
        let jidx = |i: usize| -> (usize, i64) {
            if i.is_multiple_of(2) {
                (i + 1, 1)
            } else {
                (i - 1, -1)
            }
        };
        for i in 0..n {
            let (k, s1) = jidx(i);
            for j in 0..n {
                let (l, s2) = jidx(j);
                // J_{ik} (M^T)_{kl} J_{lj}, J_{lj} nonzero only for l = jidx(j) with sign -s2.
                let v = self.get(l, k) * BigInt::from(s1 * -s2);
                entries[i * n + j] = -v;
            }
        }
        SpMatrix { g: self.g, entries }
    }

    pub fn apply(&self, v: &HomologyClass) -> HomologyClass {
        let n = self.dim();
        assert_eq!(v.len(), n, "dimension mismatch in apply");
        let out = (0..n)
            .map(|r| {
                let mut s = BigInt::zero();
                for (c, x) in v.coeffs().iter().enumerate() {
                    if !x.is_zero() {
                        s += self.get(r, c) * x;
                    }
                }
                s
            })
            .collect();
        HomologyClass::new(out)
    }

    pub fn transpose(&self) -> SpMatrix {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(self.get(c, r).clone());
            }
        }
        SpMatrix { g: self.g, entries }
    }

    /// `self * T_c^e` in O(n^2): `T_c^e = I - e c (Jc)^T`.
    pub fn mul_transvection(&mut self, c: &HomologyClass, e: i64) {
        if c.is_zero() || e == 0 {
            return;
        }
        let n = self.dim();
        let w = j_times(c.coeffs());
        let pc: Vec<BigInt> = (0..n)
            .map(|r| {
                let mut s = BigInt::zero();
                for (k, ck) in c.coeffs().iter().enumerate() {
                    if !ck.is_zero() {
                        s += &self.entries[r * n + k] * ck;
                    }
                }
                s * BigInt::from(e)
            })
            .collect();
        for (r, pr) in pc.iter().enumerate() {
            if pr.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() {
                    self.entries[r * n + j] -= pr * wj;
                }
            }
        }
    }
}

// (Jc)_j = <e_j, c>
fn j_times(c: &[BigInt]) -> Vec<BigInt> {
    let mut w = vec![BigInt::zero(); c.len()];
    for i in (0..c.len()).step_by(2) {
        w[i] = c[i + 1].clone();
        w[i + 1] = -&c[i];
    }
    w
}

/// Matrix of the right-handed twist about `c`; identical for `c` and `-c`.
pub fn transvection_matrix(c: &Curve) -> SpMatrix {
    transvection_power(&c.homology, 1)
}

pub fn transvection_power(c: &HomologyClass, e: i64) -> SpMatrix {
    let mut m = SpMatrix::identity(c.genus());
    m.mul_transvection(c, e);
    m
}

/// `t_c^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistLetter {
    pub curve: Arc<Curve>,
    pub exponent: i64,
}

impl TwistLetter {
    pub fn new(curve: Arc<Curve>, exponent: i64) -> Result<Self, SymplecticError> {
        if exponent == 0 {
            return Err(SymplecticError::ZeroExponent);
        }
        Ok(TwistLetter { curve, exponent })
    }

    pub fn positive(curve: Arc<Curve>) -> Self {
        TwistLetter { curve, exponent: 1 }
    }
}

/// Arbitrary word of twists, read left to right as a composition (rightmost first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingWord {
    pub name: Option<String>,
    genus: usize,
    letters: Vec<TwistLetter>,
}

impl MappingWord {
    pub fn new(genus: usize, letters: Vec<TwistLetter>) -> Result<Self, SymplecticError> {
        for l in &letters {
            if l.curve.genus() != genus {
                return Err(SymplecticError::MixedSurfaces(genus, l.curve.genus()));
            }
        }
        Ok(MappingWord { name: None, genus, letters })
    }

    pub fn empty(genus: usize) -> Self {
        MappingWord { name: None, genus, letters: Vec::new() }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Name used when labelling images of curves.
    pub fn label(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        self.letters
            .iter()
            .map(|l| if l.exponent == 1 { format!("t_{}", l.curve.name) } else { format!("t_{}^{}", l.curve.name, l.exponent) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn inverse(&self) -> MappingWord {
        MappingWord {
            name: self.name.as_ref().map(|n| format!("{n}^-1")),
            genus: self.genus,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| TwistLetter { curve: l.curve.clone(), exponent: -l.exponent })
                .collect(),
        }
    }
}

/// Anything that is a sequence of twist letters on one surface.
pub trait TwistSequence {
    fn genus(&self) -> usize;
    fn twist_letters(&self) -> &[TwistLetter];
}

impl TwistSequence for MappingWord {
    fn genus(&self) -> usize {
        self.genus
    }
    fn twist_letters(&self) -> &[TwistLetter] {
        &self.letters
    }
}

impl TwistSequence for Factorization {
    fn genus(&self) -> usize {
        self.surface.genus
    }
    fn twist_letters(&self) -> &[TwistLetter] {
        self.letters()
    }
}

/// Ordered product of transvection powers.
pub fn evaluate_word<W: TwistSequence + ?Sized>(w: &W) -> Result<SpMatrix, SymplecticError> {
    let g = w.genus();
    let mut m = SpMatrix::identity(g);
    for l in w.twist_letters() {
        if l.curve.genus() != g {
            return Err(SymplecticError::MixedSurfaces(g, l.curve.genus()));
        }
        m.mul_transvection(&l.curve.homology, l.exponent);
    }
    Ok(m)
}

/// Image of a curve under a mapping word. The π1 word is dropped unless `w` is empty.
pub fn act_on_curve(w: &MappingWord, c: &Curve) -> Result<Curve, SymplecticError> {
    if w.genus != c.genus() {
        return Err(SymplecticError::MixedSurfaces(w.genus, c.genus()));
    }
    if w.is_empty() {
        return Ok(c.clone());
    }
    let m = evaluate_word(w)?;
    Ok(image_curve(&m, &w.label(), c))
}

pub(crate) fn image_curve(m: &SpMatrix, label: &str, c: &Curve) -> Curve {
    let homology = m.apply(&c.homology);
    let mut out = Curve::new(format!("{label}({})", c.name), c.surface, homology);
    out.boundary = c.boundary;
    out
}

/// Homology-level identity check: necessary, not sufficient, for the
/// factorization to be the identity in the mapping class group.
/// Factorizations with a boundary target are checked after forgetting the
/// boundary (boundary twists act trivially on homology).
pub fn verify_identity(f: &Factorization) -> bool {
    match f.target {
        Target::Identity | Target::BoundaryMultitwist(_) => {
            evaluate_word(f).map(|m| m.is_identity()).unwrap_or(false)
        }
    }
}
