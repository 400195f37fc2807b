//! Scenario files: a curve table, mapping words, base factorizations, a
//! pipeline of construction operations, π1 presentations and expected
//! invariants, stored as JSON.

mod run;

pub use run::{execute, run_scenario, Check, CheckStatus, Executed, Pi1Summary, RunOptions, RunReport, Slot};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorization::{Direction, FactorizationError, LedgerEntry, RelatorKind, Target};
use crate::fpgroups::AbelianGroup;
use crate::invariants::MinimalityEvidence;
use crate::model::{parse_pi1_word, Curve, HomologyClass, Provenance, Surface, WordError};
use crate::symplectic::{MappingWord, TwistLetter};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("scenario {scenario}: unknown curve `{name}`")]
    UnknownCurve { scenario: String, name: String },
    #[error("scenario {scenario}: unknown mapping word `{name}`")]
    UnknownWord { scenario: String, name: String },
    #[error("scenario {scenario}: slot `{name}` is used before it is defined")]
    UnknownSlot { scenario: String, name: String },
    #[error("scenario {scenario}: duplicate name `{name}`")]
    Duplicate { scenario: String, name: String },
    #[error("scenario {scenario}: curve `{curve}` has {found} coefficients, expected {expected}")]
    BadClass { scenario: String, curve: String, expected: usize, found: usize },
    #[error("scenario {scenario}: bad word `{text}`: {source}")]
    Word { scenario: String, text: String, source: WordError },
    #[error("scenario {scenario}: bad twist token `{token}`")]
    BadToken { scenario: String, token: String },
    #[error("scenario {scenario}: slot `{slot}` is not a plain factorization")]
    NotConcrete { scenario: String, slot: String },
    #[error("no scenario named `{0}`")]
    NoSuchScenario(String),
    #[error("scenario {scenario}: {source}")]
    Factorization { scenario: String, source: FactorizationError },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    pub homology: Vec<i64>,
    pub separating: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi1_word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<usize>,
    pub provenance: Provenance,
}

/// A mapping word: whitespace-separated twist tokens `name` or `name^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSpec {
    pub name: String,
    pub letters: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSpec {
    pub name: String,
    pub letters: String,
    pub target: Target,
    /// Endo–Nagami decomposition; absent when unknown.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<LedgerEntry>>,
}

/// One pipeline operation. `into` names the output slot; when absent the
/// input slot is overwritten.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    Hurwitz {
        on: String,
        /// 0-based positions.
        moves: Vec<(usize, Direction)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    Conjugate {
        on: String,
        word: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    FiberSum {
        left: String,
        right: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gluing: Option<String>,
        into: String,
    },
    SymbolicSum {
        summands: Vec<String>,
        gluings: Vec<String>,
        into: String,
    },
    /// Fiber sum with a manifold known only through (e, σ).
    GeneralizedSum {
        on: String,
        e: i64,
        sigma: i64,
        into: String,
    },
    CyclicShift {
        on: String,
        shift: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    Reorder {
        on: String,
        swaps: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    /// Replace letters by a table curve with the same class up to sign.
    Identify {
        on: String,
        pairs: Vec<(String, String)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    /// Give letters a new name, keeping their curve data.
    Rename {
        on: String,
        pairs: Vec<(String, String)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    Substitute {
        on: String,
        relator: RelatorKind,
        start: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        certificate: Vec<usize>,
        removed: Vec<String>,
        inserted: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    Cap {
        on: String,
        index: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
}

impl Step {
    /// (inputs, output)
    pub fn slots(&self) -> (Vec<&str>, &str) {
        fn out<'a>(on: &'a str, into: &'a Option<String>) -> &'a str {
            into.as_deref().unwrap_or(on)
        }
        match self {
            Step::Hurwitz { on, into, .. }
            | Step::Conjugate { on, into, .. }
            | Step::CyclicShift { on, into, .. }
            | Step::Reorder { on, into, .. }
            | Step::Identify { on, into, .. }
            | Step::Rename { on, into, .. }
            | Step::Substitute { on, into, .. }
            | Step::Cap { on, into, .. } => (vec![on.as_str()], out(on, into)),
            Step::FiberSum { left, right, into, .. } => (vec![left.as_str(), right.as_str()], into.as_str()),
            Step::SymbolicSum { summands, into, .. } => (summands.iter().map(String::as_str).collect(), into.as_str()),
            Step::GeneralizedSum { on, into, .. } => (vec![on.as_str()], into.as_str()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorSpec {
    pub label: String,
    pub word: String,
    /// False for stand-in words that only carry the right homology class.
    #[serde(default = "yes")]
    pub trusted: bool,
}

fn yes() -> bool {
    true
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Generators default to a1, b1, ..., ag, bg of the scenario surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    /// Add the surface relator `b_g^-1 ... b_1^-1 (a_1 b_1 a_1^-1) ... (a_g b_g a_g^-1)`.
    #[serde(default, skip_serializing_if = "is_false")]
    pub surface_relator: bool,
    /// Add one relator per distinct letter of the pipeline result.
    #[serde(default, skip_serializing_if = "is_false")]
    pub vanishing_cycles: bool,
    /// Letters left out of the vanishing-cycle relators.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omit: Vec<String>,
    /// π1 words for letters whose curve carries none. Used only when the
    /// word abelianizes to the letter's class up to sign.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub words: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relators: Vec<RelatorSpec>,
    /// Labels of trusted relators that present an abelian group.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonseparating: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separating: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1sq: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<AbelianGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2plus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2minus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi1_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimality: Option<MinimalityEvidence>,
    /// Coset enumeration is expected to close with one coset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset_trivial: Option<bool>,
}

impl Expectations {
    /// Internal consistency: c1² = 2e + 3σ and the b2± split.
    pub fn consistency_errors(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let (Some(e), Some(s), Some(c)) = (self.e, self.sigma, self.c1sq) {
            if c != 2 * e + 3 * s {
                out.push(format!("c1sq {c} != 2e + 3σ = {}", 2 * e + 3 * s));
            }
        }
        if let (Some(p), Some(m), Some(s)) = (self.b2plus, self.b2minus, self.sigma) {
            if p - m != s {
                out.push(format!("b2+ - b2- = {} != σ = {s}", p - m));
            }
        }
        if let (Some(p), Some(m), Some(e), Some(h)) = (self.b2plus, self.b2minus, self.e, &self.h1) {
            let b1 = h.free_rank as i64;
            if e != 2 - 2 * b1 + p + m {
                out.push(format!("e {e} != 2 - 2b1 + b2+ + b2- = {}", 2 - 2 * b1 + p + m));
            }
        }
        if let (Some(l), Some(n), Some(s)) = (self.letters, self.nonseparating, self.separating) {
            if l != n + s {
                out.push(format!("letter census {n} + {s} != {l}"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub surface: Surface,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub disjoint_pairs: Vec<(String, String)>,
    #[serde(default)]
    pub words: Vec<WordSpec>,
    #[serde(default)]
    pub factorizations: Vec<FactorizationSpec>,
    /// The last step's output is the result; with no steps, the last factorization.
    #[serde(default)]
    pub pipeline: Vec<Step>,
    #[serde(default)]
    pub presentations: Vec<PresentationSpec>,
    #[serde(default)]
    pub expectations: Expectations,
}

#[derive(Serialize, Deserialize)]
struct ScenarioFile {
    scenarios: Vec<Scenario>,
}

/// Accepts `{"scenarios": [...]}` or a single scenario object.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>, ScenarioError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let list = if value.get("scenarios").is_some() {
        serde_json::from_str::<ScenarioFile>(text)?.scenarios
    } else {
        vec![serde_json::from_str::<Scenario>(text)?]
    };
    for s in &list {
        s.validate()?;
    }
    Ok(list)
}

/// Pretty JSON with a trailing newline; byte-identical for equal inputs.
pub fn to_json(scenarios: &[Scenario]) -> String {
    let file = ScenarioFile { scenarios: scenarios.to_vec() };
    let mut s = serde_json::to_string_pretty(&file).expect("scenarios serialize");
    s.push('\n');
    s
}

impl Scenario {
    pub fn result_slot(&self) -> Option<&str> {
        match self.pipeline.last() {
            Some(step) => Some(step.slots().1),
            None => self.factorizations.last().map(|f| f.name.as_str()),
        }
    }

    fn err_curve(&self, name: &str) -> ScenarioError {
        ScenarioError::UnknownCurve { scenario: self.name.clone(), name: name.to_string() }
    }

    /// Static checks: names resolve, classes have the right length, words parse,
    /// slots are defined before use.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.curve_table()?;
        for w in &self.words {
            self.mapping_word(&w.name)?;
        }
        let mut slots: HashSet<&str> = HashSet::new();
        for f in &self.factorizations {
            if !slots.insert(&f.name) {
                return Err(ScenarioError::Duplicate { scenario: self.name.clone(), name: f.name.clone() });
            }
            for tok in f.letters.split_whitespace() {
                if !self.curves.iter().any(|c| c.name == tok) {
                    return Err(self.err_curve(tok));
                }
            }
        }
        for (a, b) in &self.disjoint_pairs {
            for n in [a, b] {
                if !self.curves.iter().any(|c| &c.name == n) {
                    return Err(self.err_curve(n));
                }
            }
        }
        for step in &self.pipeline {
            let (ins, out) = step.slots();
            for i in ins {
                if !slots.contains(i) {
                    return Err(ScenarioError::UnknownSlot { scenario: self.name.clone(), name: i.to_string() });
                }
            }
            match step {
                Step::Conjugate { word, .. } => {
                    self.mapping_word(word)?;
                }
                Step::FiberSum { gluing: Some(word), .. } => {
                    self.mapping_word(word)?;
                }
                Step::Identify { pairs, .. } => {
                    for (_, to) in pairs {
                        if !self.curves.iter().any(|c| &c.name == to) {
                            return Err(self.err_curve(to));
                        }
                    }
                }
                _ => {}
            }
            slots.insert(out);
        }
        let gens = self.surface_generators();
        for p in &self.presentations {
            let names = p.generators.clone().unwrap_or_else(|| gens.clone());
            for r in &p.relators {
                self.parse_with(&r.word, &names)?;
            }
            for w in p.words.values() {
                self.parse_with(w, &names)?;
            }
        }
        Ok(())
    }

    fn surface_generators(&self) -> Vec<String> {
        crate::model::surface_generator_names(self.surface.genus)
    }

    fn parse_with(&self, text: &str, names: &[String]) -> Result<crate::model::Pi1Word, ScenarioError> {
        crate::model::parse_word(text, names).map_err(|source| ScenarioError::Word {
            scenario: self.name.clone(),
            text: text.to_string(),
            source,
        })
    }

    /// Curves by name, built on the scenario surface.
    pub fn curve_table(&self) -> Result<HashMap<String, Arc<Curve>>, ScenarioError> {
        let mut out = HashMap::new();
        let dim = 2 * self.surface.genus;
        for c in &self.curves {
            if c.homology.len() != dim {
                return Err(ScenarioError::BadClass {
                    scenario: self.name.clone(),
                    curve: c.name.clone(),
                    expected: dim,
                    found: c.homology.len(),
                });
            }
            let pi1_word = match &c.pi1_word {
                Some(t) => Some(parse_pi1_word(t, self.surface).map_err(|source| ScenarioError::Word {
                    scenario: self.name.clone(),
                    text: t.clone(),
                    source,
                })?),
                None => None,
            };
            let curve = Curve {
                name: c.name.clone(),
                surface: self.surface,
                homology: HomologyClass::from_i64(&c.homology),
                separating: c.separating,
                pi1_word,
                boundary: c.boundary,
                provenance: c.provenance,
            };
            if out.insert(c.name.clone(), Arc::new(curve)).is_some() {
                return Err(ScenarioError::Duplicate { scenario: self.name.clone(), name: c.name.clone() });
            }
        }
        Ok(out)
    }

    pub fn mapping_word(&self, name: &str) -> Result<MappingWord, ScenarioError> {
        let spec = self
            .words
            .iter()
            .find(|w| w.name == name)
            .ok_or_else(|| ScenarioError::UnknownWord { scenario: self.name.clone(), name: name.to_string() })?;
        let table = self.curve_table()?;
        let mut letters = Vec::new();
        for tok in spec.letters.split_whitespace() {
            let (curve, exp) = match tok.split_once('^') {
                Some((c, e)) => {
                    let e: i64 = e.parse().map_err(|_| ScenarioError::BadToken {
                        scenario: self.name.clone(),
                        token: tok.to_string(),
                    })?;
                    (c, e)
                }
                None => (tok, 1),
            };
            let c = table.get(curve).ok_or_else(|| self.err_curve(curve))?;
            letters.push(TwistLetter::new(c.clone(), exp).map_err(|_| ScenarioError::BadToken {
                scenario: self.name.clone(),
                token: tok.to_string(),
            })?);
        }
        Ok(MappingWord::new(self.surface.genus, letters)
            .expect("table curves share the scenario genus")
            .named(name))
    }
}

impl CurveSpec {
    pub fn from_curve(c: &Curve) -> Self {
        CurveSpec {
            name: c.name.clone(),
            homology: c.homology.to_i64_vec().expect("fixture classes are small"),
            separating: c.separating,
            pi1_word: c.pi1_word.as_ref().map(|w| w.display_with(&crate::model::surface_generator_names(c.genus()))),
            boundary: c.boundary,
            provenance: c.provenance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Scenario {
        Scenario {
            name: "torus".into(),
            surface: Surface::closed(1),
            curves: vec![
                CurveSpec {
                    name: "a".into(),
                    homology: vec![1, 0],
                    separating: false,
                    pi1_word: Some("a1".into()),
                    boundary: None,
                    provenance: Provenance::Transcribed,
                },
                CurveSpec {
                    name: "b".into(),
                    homology: vec![0, 1],
                    separating: false,
                    pi1_word: Some("b1".into()),
                    boundary: None,
                    provenance: Provenance::Transcribed,
                },
            ],
            disjoint_pairs: vec![],
            words: vec![WordSpec { name: "w".into(), letters: "a b^-1".into() }],
            factorizations: vec![FactorizationSpec {
                name: "E".into(),
                letters: "a b a b a b a b a b a b".into(),
                target: Target::Identity,
                decomposition: None,
            }],
            pipeline: vec![],
            presentations: vec![],
            expectations: Expectations { e: Some(12), sigma: Some(-8), c1sq: Some(0), ..Default::default() },
        }
    }

    #[test]
    fn round_trip_json() {
        let s = vec![tiny()];
        let text = to_json(&s);
        let back = parse_scenarios(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json(&back), text);
        let single = serde_json::to_string(&s[0]).unwrap();
        assert_eq!(parse_scenarios(&single).unwrap(), s);
    }

    #[test]
    fn unknown_references_are_rejected() {
        let mut s = tiny();
        s.factorizations[0].letters.push_str(" q");
        assert!(matches!(s.validate(), Err(ScenarioError::UnknownCurve { .. })));
        let mut s = tiny();
        s.pipeline.push(Step::Cap { on: "nope".into(), index: 1, into: None });
        assert!(matches!(s.validate(), Err(ScenarioError::UnknownSlot { .. })));
        let mut s = tiny();
        s.curves[0].homology.push(0);
        assert!(matches!(s.validate(), Err(ScenarioError::BadClass { .. })));
    }

    #[test]
    fn malformed_json_reports_position() {
        let e = parse_scenarios("{\"scenarios\": [ {\"name\": 3 ").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
    }

    #[test]
    fn consistency() {
        let mut x = tiny().expectations;
        assert!(x.consistency_errors().is_empty());
        x.c1sq = Some(1);
        assert_eq!(x.consistency_errors().len(), 1);
    }

    #[test]
    fn mapping_word_tokens() {
        let s = tiny();
        let w = s.mapping_word("w").unwrap();
        assert_eq!(w.letters().len(), 2);
        assert_eq!(w.letters()[1].exponent, -1);
    }
}
