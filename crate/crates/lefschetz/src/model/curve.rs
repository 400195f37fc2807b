use std::fmt;

use serde::{Deserialize, Serialize};

use super::{abelianize_word, HomologyClass, Pi1Word, Surface};

/// Where a piece of fixture data came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Transcribed from a displayed formula.
    Transcribed,
    /// Worked out from transcribed data by an independent check.
    Derived,
    /// Produced by this library (conjugation, Hurwitz moves).
    #[default]
    Computed,
}

/// Named simple closed curve, known only through its homology class and,
/// optionally, a π1 word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    pub name: String,
    pub surface: Surface,
    pub homology: HomologyClass,
    pub separating: bool,
    pub pi1_word: Option<Pi1Word>,
    /// Boundary-parallel curves carry the 1-based index of their boundary component.
    pub boundary: Option<usize>,
    pub provenance: Provenance,
}

impl Curve {
    /// Separating flag follows the class.
    pub fn new(name: impl Into<String>, surface: Surface, homology: HomologyClass) -> Self {
        let separating = homology.is_zero();
        Curve {
            name: name.into(),
            surface,
            homology,
            separating,
            pi1_word: None,
            boundary: None,
            provenance: Provenance::Computed,
        }
    }

    /// Class taken from the abelianized word.
    pub fn from_word(name: impl Into<String>, surface: Surface, word: Pi1Word) -> Self {
        let homology = abelianize_word(&word, surface);
        let mut c = Curve::new(name, surface, homology);
        c.pi1_word = Some(word);
        c
    }

    pub fn boundary_parallel(name: impl Into<String>, surface: Surface, index: usize) -> Self {
        let mut c = Curve::new(name, surface, HomologyClass::zero(surface.genus));
        c.boundary = Some(index);
        c
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn genus(&self) -> usize {
        self.surface.genus
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.homology)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveViolation {
    LengthMismatch { expected: usize, found: usize },
    SeparatingMismatch { zero_class: bool, separating: bool },
    WordMismatch { word_class: HomologyClass, declared: HomologyClass },
    WordOutOfRange { generator: usize },
    BoundaryOutOfRange { index: usize, boundary_count: usize },
}

impl fmt::Display for CurveViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveViolation::LengthMismatch { expected, found } => {
                write!(f, "homology vector has length {found}, expected {expected}")
            }
            CurveViolation::SeparatingMismatch { zero_class, separating } => write!(
                f,
                "separating={separating} but the class is {}",
                if *zero_class { "zero" } else { "nonzero" }
            ),
            CurveViolation::WordMismatch { word_class, declared } => {
                write!(f, "word abelianizes to {word_class}, declared class {declared}")
            }
            CurveViolation::WordOutOfRange { generator } => {
                write!(f, "word uses generator index {generator} outside the surface")
            }
            CurveViolation::BoundaryOutOfRange { index, boundary_count } => {
                write!(f, "boundary index {index} but the surface has {boundary_count} components")
            }
        }
    }
}

/// Every violated invariant; empty means valid.
pub fn validate_curve(c: &Curve) -> Vec<CurveViolation> {
    let mut out = Vec::new();
    let rank = c.surface.rank();
    if c.homology.len() != rank {
        out.push(CurveViolation::LengthMismatch { expected: rank, found: c.homology.len() });
        return out;
    }
    // A curve is null-homologous in the closed surface iff it separates.
    let zero = c.homology.is_zero();
    if zero != c.separating {
        out.push(CurveViolation::SeparatingMismatch { zero_class: zero, separating: c.separating });
    }
    if let Some(w) = &c.pi1_word {
        match w.max_generator() {
            Some(m) if m >= rank => out.push(CurveViolation::WordOutOfRange { generator: m }),
            _ => {
                let wc = abelianize_word(w, c.surface);
                if wc != c.homology {
                    out.push(CurveViolation::WordMismatch { word_class: wc, declared: c.homology.clone() });
                }
            }
        }
    }
    if let Some(i) = c.boundary {
        if i == 0 || i > c.surface.boundary_count {
            out.push(CurveViolation::BoundaryOutOfRange { index: i, boundary_count: c.surface.boundary_count });
        }
    }
    out
}
