//! Positive factorizations and the operations that build new ones from old.

mod ops;

pub use ops::{
    cap_off, commute, cyclic_shift, global_conjugate, hurwitz_move, identify, relator_substitute,
    twisted_fiber_sum, Substitution,
};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Curve, Surface};
use crate::symplectic::{evaluate_word, SpMatrix, SymplecticError, TwistLetter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("index {index} out of range for {len} letters")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("curve {name} lives on genus {found}, expected {expected}")]
    WrongSurface { name: String, expected: usize, found: usize },
    #[error("factorizations have incompatible targets: {0} and {1}")]
    TargetMismatch(Target, Target),
    #[error("target {0} has no boundary component {1}")]
    NoSuchBoundary(Target, usize),
    #[error("boundary index {index} exceeds the {count} boundary components of the surface")]
    BoundaryOutOfRange { index: usize, count: usize },
    #[error("letter {position} is {found}, expected {expected}")]
    SpanMismatch { position: usize, expected: String, found: String },
    #[error("homology images of the removed and inserted words differ")]
    HomologyMismatch,
    #[error("{0:?} and {1:?} are not declared disjoint")]
    NotDisjoint(String, String),
    #[error("{0} has nonzero pairing with {1}")]
    NonzeroPairing(String, String),
    #[error("class of {from} is not ±class of {to}")]
    ClassMismatch { from: String, to: String },
    #[error("no letter named {0}")]
    NoSuchLetter(String),
    #[error("shift {shift} exceeds the {len} letters")]
    BadShift { shift: usize, len: usize },
}

/// Monodromy target of a factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Identity,
    /// (1-based boundary index, multiplicity m_j) with multiplicities ≥ 1.
    BoundaryMultitwist(Vec<(usize, u32)>),
}

impl Target {
    pub fn boundary(index: usize, multiplicity: u32) -> Self {
        Target::BoundaryMultitwist(vec![(index, multiplicity)])
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Target::Identity => true,
            Target::BoundaryMultitwist(v) => v.is_empty(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Identity => write!(f, "1"),
            Target::BoundaryMultitwist(v) if v.is_empty() => write!(f, "1"),
            Target::BoundaryMultitwist(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|(i, m)| if *m == 1 { format!("t_δ{i}") } else { format!("t_δ{i}^{m}") })
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// Relators with a known Endo–Nagami signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorKind {
    /// A single twist about a separating curve.
    Separating,
    Lantern,
    MatsumotoEven,
    MatsumotoOdd,
    /// Reordering of commuting twists.
    Commutation,
}

impl RelatorKind {
    pub const ALL: [RelatorKind; 5] = [
        RelatorKind::Separating,
        RelatorKind::Lantern,
        RelatorKind::MatsumotoEven,
        RelatorKind::MatsumotoOdd,
        RelatorKind::Commutation,
    ];

    pub fn endo_nagami_value(self) -> i64 {
        match self {
            RelatorKind::Separating => -1,
            RelatorKind::Lantern => 1,
            RelatorKind::MatsumotoEven => -4,
            RelatorKind::MatsumotoOdd => -8,
            RelatorKind::Commutation => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelatorKind::Separating => "separating",
            RelatorKind::Lantern => "lantern",
            RelatorKind::MatsumotoEven => "matsumoto_even",
            RelatorKind::MatsumotoOdd => "matsumoto_odd",
            RelatorKind::Commutation => "commutation",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        RelatorKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// One relator with multiplicity in a base factorization's decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub relator: RelatorKind,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ConstructionStep {
    /// `decomposition = None` means the Endo–Nagami value is unknown.
    BaseRelator { name: String, decomposition: Option<Vec<LedgerEntry>> },
    GlobalConjugate { word: String },
    TwistedFiberSum { left: Vec<ConstructionStep>, right: Vec<ConstructionStep>, gluing: String },
    RelatorSubstitution {
        relator: String,
        start: usize,
        removed: Vec<String>,
        inserted: Vec<String>,
        delta: Option<i64>,
    },
    HurwitzMove { index: usize, direction: Direction },
    /// Adjacent swaps of twists about disjoint curves.
    Reorder { swaps: Vec<usize> },
    /// Last `shift` letters moved to the front.
    CyclicShift { shift: usize },
    /// Letters renamed to a curve with the same class up to sign.
    Identify { from: String, to: String, count: usize },
    CapBoundary { index: usize, multiplicity: u32 },
}

/// Unordered pairs of curve names declared disjoint by fixture data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DisjointTable {
    pairs: BTreeSet<(String, String)>,
}

impl DisjointTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, a: &str, b: &str) {
        self.pairs.insert(ordered(a, b));
    }

    /// Declares every pair within the group.
    pub fn declare_all(&mut self, names: &[&str]) {
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                self.declare(a, b);
            }
        }
    }

    pub fn are_disjoint(&self, a: &str, b: &str) -> bool {
        a == b || self.pairs.contains(&ordered(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Positive factorization: every letter has exponent +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub surface: Surface,
    letters: Vec<TwistLetter>,
    pub target: Target,
    /// Self-intersections of the sections, `-m_j` per boundary twist.
    pub sections: Vec<i64>,
    pub history: Vec<ConstructionStep>,
}

impl Factorization {
    pub fn new(
        surface: Surface,
        curves: Vec<Arc<Curve>>,
        target: Target,
        base: ConstructionStep,
    ) -> Result<Self, FactorizationError> {
        for c in &curves {
            if c.genus() != surface.genus {
                return Err(FactorizationError::WrongSurface {
                    name: c.name.clone(),
                    expected: surface.genus,
                    found: c.genus(),
                });
            }
        }
        let sections = match &target {
            Target::Identity => Vec::new(),
            Target::BoundaryMultitwist(v) => {
                for &(i, _) in v {
                    if i == 0 || i > surface.boundary_count {
                        return Err(FactorizationError::BoundaryOutOfRange { index: i, count: surface.boundary_count });
                    }
                }
                v.iter().map(|&(_, m)| -(m as i64)).collect()
            }
        };
        Ok(Factorization {
            surface,
            letters: curves.into_iter().map(TwistLetter::positive).collect(),
            target,
            sections,
            history: vec![base],
        })
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn curves(&self) -> impl Iterator<Item = &Arc<Curve>> {
        self.letters.iter().map(|l| &l.curve)
    }

    pub fn curve(&self, i: usize) -> &Arc<Curve> {
        &self.letters[i].curve
    }

    pub fn curve_names(&self) -> Vec<String> {
        self.curves().map(|c| c.name.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.surface.genus
    }

    pub fn separating_count(&self) -> usize {
        self.curves().filter(|c| c.separating).count()
    }

    pub fn nonseparating_count(&self) -> usize {
        self.len() - self.separating_count()
    }

    /// Homology image of the letters.
    pub fn monodromy(&self) -> SpMatrix {
        evaluate_word(self).expect("letters share the factorization's surface")
    }

    pub(crate) fn with_letters(&self, letters: Vec<TwistLetter>, step: ConstructionStep) -> Self {
        let mut history = self.history.clone();
        history.push(step);
        Factorization {
            surface: self.surface,
            letters,
            target: self.target.clone(),
            sections: self.sections.clone(),
            history,
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.curves().map(|c| format!("t_{{{}}}", c.name)).collect();
        write!(f, "{} = {} on {}", names.join(" "), self.target, self.surface)
    }
}

/// Fiber sum whose gluing maps are known only by name. Carries enough to
/// compute e and σ; letters of the glued copies are never materialized.
#[derive(Clone, Debug)]
pub struct SymbolicFiberSum {
    pub summands: Vec<Factorization>,
    /// One label per summand after the first.
    pub gluings: Vec<String>,
}

impl SymbolicFiberSum {
    pub fn new(summands: Vec<Factorization>, gluings: Vec<String>) -> Result<Self, FactorizationError> {
        assert!(!summands.is_empty(), "symbolic sum needs a summand");
        let g = summands[0].genus();
        for s in &summands {
            if s.genus() != g {
                return Err(FactorizationError::Symplectic(SymplecticError::MixedSurfaces(g, s.genus())));
            }
            if !s.target.is_identity() {
                return Err(FactorizationError::TargetMismatch(Target::Identity, s.target.clone()));
            }
        }
        assert_eq!(gluings.len() + 1, summands.len(), "one gluing per extra summand");
        Ok(SymbolicFiberSum { summands, gluings })
    }

    pub fn genus(&self) -> usize {
        self.summands[0].genus()
    }

    pub fn len(&self) -> usize {
        self.summands.iter().map(Factorization::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn separating_count(&self) -> usize {
        self.summands.iter().map(Factorization::separating_count).sum()
    }

    pub fn history(&self) -> ConstructionStep {
        let mut acc = self.summands[0].history.clone();
        for (s, label) in self.summands[1..].iter().zip(&self.gluings) {
            acc = vec![ConstructionStep::TwistedFiberSum { left: acc, right: s.history.clone(), gluing: label.clone() }];
        }
        acc.pop().expect("non-empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_table() {
        let vals: Vec<i64> = RelatorKind::ALL.iter().map(|k| k.endo_nagami_value()).collect();
        assert_eq!(vals, vec![-1, 1, -4, -8, 0]);
        for k in RelatorKind::ALL {
            assert_eq!(RelatorKind::from_name(k.name()), Some(k));
        }
        assert_eq!(RelatorKind::from_name("daisy"), None);
    }

    #[test]
    fn disjoint_table_is_symmetric() {
        let mut t = DisjointTable::new();
        t.declare_all(&["c1", "c3", "c5"]);
        assert!(t.are_disjoint("c5", "c1"));
        assert!(t.are_disjoint("x", "x"));
        assert!(!t.are_disjoint("c1", "c2"));
    }

    #[test]
    fn history_serializes() {
        let step = ConstructionStep::TwistedFiberSum {
            left: vec![ConstructionStep::BaseRelator {
                name: "W".into(),
                decomposition: Some(vec![LedgerEntry { relator: RelatorKind::Lantern, multiplicity: 2 }]),
            }],
            right: vec![ConstructionStep::HurwitzMove { index: 3, direction: Direction::Left }],
            gluing: "phi".into(),
        };
        let text = serde_json::to_string(&step).unwrap();
        let back: ConstructionStep = serde_json::from_str(&text).unwrap();
        assert_eq!(back, step);
    }

    #[test]
    fn sections_follow_target() {
        let s = Surface::new(1, 2);
        let f = Factorization::new(
            s,
            vec![],
            Target::BoundaryMultitwist(vec![(1, 1), (2, 3)]),
            ConstructionStep::BaseRelator { name: "e".into(), decomposition: None },
        )
        .unwrap();
        assert_eq!(f.sections, vec![-1, -3]);
        let bad = Factorization::new(
            s,
            vec![],
            Target::boundary(3, 1),
            ConstructionStep::BaseRelator { name: "e".into(), decomposition: None },
        );
        assert!(matches!(bad, Err(FactorizationError::BoundaryOutOfRange { index: 3, count: 2 })));
    }
}
