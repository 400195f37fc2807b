//! Finitely presented groups: surface groups and their quotients,
//! abelianization, Tietze simplification and coset enumeration.

mod certify;
mod coset;
mod snf;
mod tietze;

pub use certify::{certify_trivial, is_abelian_certificate, Pi1Certificate, Pi1Outcome, Pi1Verdict};
pub use coset::{todd_coxeter, CosetEnumeration, DEFAULT_MAX_COSETS};
pub use snf::{smith_normal_form, Snf};
pub use tietze::{tietze_simplify, tietze_simplify_with, TietzeResult, DEFAULT_GROWTH_FACTOR};

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{parse_word, surface_generator_names, Letter, Pi1Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses generator index {index}, only {count} generators")]
    GeneratorOutOfRange { relator: usize, index: usize, count: usize },
    #[error("in {context}: {source}")]
    Word { context: String, source: WordError },
}

/// Generators by name, relators as freely reduced words over their indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Pi1Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Pi1Word>) -> Result<Self, FpError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(FpError::DuplicateGenerator(g.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(m) = r.max_generator() {
                if m >= generators.len() {
                    return Err(FpError::GeneratorOutOfRange { relator: i, index: m, count: generators.len() });
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Relators written in the word grammar over the given names.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, FpError> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let words = relators
            .iter()
            .map(|r| parse_word(r, &names).map_err(|e| FpError::Word { context: r.to_string(), source: e }))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(names, words)
    }

    pub fn trivial() -> Self {
        Presentation { generators: Vec::new(), relators: Vec::new() }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Pi1Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Pi1Word::len).sum()
    }

    pub fn add_relators<I: IntoIterator<Item = Pi1Word>>(&mut self, rels: I) -> Result<(), FpError> {
        for r in rels {
            if let Some(m) = r.max_generator() {
                if m >= self.generators.len() {
                    return Err(FpError::GeneratorOutOfRange {
                        relator: self.relators.len(),
                        index: m,
                        count: self.generators.len(),
                    });
                }
            }
            self.relators.push(r);
        }
        Ok(())
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| r.display_with(&self.generators)).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | {} >", self.generators.join(", "), self.relator_strings().join(", "))
    }
}

/// Z^free_rank ⊕ Z/d1 ⊕ ... with d1 | d2 | ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `b_g^-1 ... b_1^-1 (a_1 b_1 a_1^-1) ... (a_g b_g a_g^-1)` on a1, b1, ..., ag, bg.
pub fn surface_presentation(g: usize) -> Presentation {
    if g == 0 {
        return Presentation::trivial();
    }
    let mut letters = Vec::new();
    for i in (0..g).rev() {
        letters.push(Letter::new(2 * i + 1, true));
    }
    for i in 0..g {
        letters.push(Letter::new(2 * i, false));
        letters.push(Letter::new(2 * i + 1, false));
        letters.push(Letter::new(2 * i, true));
    }
    Presentation { generators: surface_generator_names(g), relators: vec![Pi1Word::new(letters)] }
}

/// Surface group of genus g modulo the given cycles.
pub fn vanishing_cycle_quotient(g: usize, cycles: &[Pi1Word]) -> Result<Presentation, FpError> {
    let mut p = surface_presentation(g);
    p.add_relators(cycles.iter().cloned())?;
    Ok(p)
}

/// Free product of `p1` and `p2` modulo `u = v` for each identification (u in p1, v in p2).
pub fn amalgamate(
    p1: &Presentation,
    p2: &Presentation,
    identifications: &[(Pi1Word, Pi1Word)],
) -> Result<Presentation, FpError> {
    let off = p1.generator_count();
    let mut gens = p1.generators.clone();
    gens.extend(p2.generators.iter().cloned());
    let shift: Vec<usize> = (0..p2.generator_count()).map(|i| i + off).collect();
    let mut rels = p1.relators.clone();
    rels.extend(p2.relators.iter().map(|r| r.renumber(&shift)));
    for (k, (u, v)) in identifications.iter().enumerate() {
        for (w, count) in [(u, p1.generator_count()), (v, p2.generator_count())] {
            if let Some(m) = w.max_generator() {
                if m >= count {
                    return Err(FpError::GeneratorOutOfRange { relator: rels.len() + k, index: m, count });
                }
            }
        }
        rels.push(u.concat(&v.renumber(&shift).inverse()));
    }
    Presentation::new(gens, rels)
}

/// Exponent-sum matrix: one row per relator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators.iter().map(|r| r.exponent_sums(p.generator_count())).collect()
}

pub fn abelianization(p: &Presentation) -> AbelianGroup {
    let n = p.generator_count();
    let m = relation_matrix(p);
    if m.is_empty() {
        return AbelianGroup::free(n);
    }
    let snf = smith_normal_form(&m);
    let mut rank = 0;
    let mut torsion = Vec::new();
    for d in snf.diagonal() {
        if d.is_zero() {
            continue;
        }
        rank += 1;
        let d = d.abs();
        if !d.is_one() {
            torsion.push(d.to_u64().expect("torsion coefficient fits in u64"));
        }
    }
    AbelianGroup { free_rank: n - rank, torsion }
}
