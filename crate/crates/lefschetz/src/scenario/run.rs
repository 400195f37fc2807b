use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{PresentationSpec, Scenario, ScenarioError, Step};
use crate::factorization::{
    cap_off, commute, cyclic_shift, global_conjugate, hurwitz_move, identify, relator_substitute, twisted_fiber_sum,
    Substitution,
};
use crate::factorization::{ConstructionStep, DisjointTable, Factorization, SymbolicFiberSum};
use crate::fpgroups::{
    certify_trivial, surface_presentation, tietze_simplify, todd_coxeter, AbelianGroup, CosetEnumeration, Pi1Verdict,
    Presentation, DEFAULT_MAX_COSETS,
};
use crate::invariants::{
    euler_characteristic, euler_symbolic, generalized_sum, minimality_evidence, report_from_values, signature_endo_nagami,
    signature_endo_nagami_symbolic, signature_meyer, signature_meyer_symbolic, InvariantReport, MinimalityEvidence,
};
use crate::model::{abelianize_word, validate_curve, Curve, Letter, Pi1Word};
use crate::symplectic::{intersection_pairing, verify_identity, MappingWord};

/// Value held by a pipeline slot.
#[derive(Clone, Debug)]
pub enum Slot {
    Concrete(Factorization),
    Symbolic(SymbolicFiberSum),
    /// Fiber sum of `base` with a manifold known only through (e, σ).
    Sum { base: Factorization, e: i64, sigma: i64 },
}

impl Slot {
    pub fn letter_count(&self) -> Option<usize> {
        match self {
            Slot::Concrete(f) => Some(f.len()),
            Slot::Symbolic(s) => Some(s.len()),
            Slot::Sum { .. } => None,
        }
    }

    pub fn separating_count(&self) -> Option<usize> {
        match self {
            Slot::Concrete(f) => Some(f.separating_count()),
            Slot::Symbolic(s) => Some(s.separating_count()),
            Slot::Sum { .. } => None,
        }
    }

    fn factorizations(&self) -> Vec<&Factorization> {
        match self {
            Slot::Concrete(f) => vec![f],
            Slot::Symbolic(s) => s.summands.iter().collect(),
            Slot::Sum { base, .. } => vec![base],
        }
    }

    pub fn homology_identity(&self) -> bool {
        self.factorizations().into_iter().all(verify_identity)
    }

    pub fn euler(&self) -> Result<i64, String> {
        match self {
            Slot::Concrete(f) => euler_characteristic(f),
            Slot::Symbolic(s) => euler_symbolic(s),
            Slot::Sum { base, e, sigma } => {
                euler_characteristic(base).map(|eb| generalized_sum(eb, 0, *e, *sigma, base.genus()).0)
            }
        }
        .map_err(|e| e.to_string())
    }

    pub fn sigma_ledger(&self) -> Option<i64> {
        match self {
            Slot::Concrete(f) => signature_endo_nagami(f),
            Slot::Symbolic(s) => signature_endo_nagami_symbolic(s),
            Slot::Sum { base, sigma, .. } => signature_endo_nagami(base).map(|s| s + sigma),
        }
    }

    pub fn sigma_meyer(&self) -> Result<i64, String> {
        match self {
            Slot::Concrete(f) => signature_meyer(f),
            Slot::Symbolic(s) => signature_meyer_symbolic(s),
            Slot::Sum { base, sigma, .. } => signature_meyer(base).map(|s| s + sigma),
        }
        .map_err(|e| e.to_string())
    }

    pub fn minimality(&self) -> MinimalityEvidence {
        match self {
            Slot::Concrete(f) => minimality_evidence(&f.history),
            Slot::Symbolic(s) => minimality_evidence(&[s.history()]),
            Slot::Sum { .. } => MinimalityEvidence::Unknown,
        }
    }

    /// Distinct letters by name, in order of first appearance.
    pub fn distinct_curves(&self) -> Vec<Arc<Curve>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for f in self.factorizations() {
            for c in f.curves() {
                if seen.insert(c.name.clone()) {
                    out.push(c.clone());
                }
            }
        }
        out
    }
}

/// Slots after running a pipeline.
#[derive(Clone, Debug)]
pub struct Executed {
    pub slots: HashMap<String, Slot>,
    pub result: Option<String>,
}

impl Executed {
    pub fn result(&self) -> Option<&Slot> {
        self.result.as_ref().and_then(|r| self.slots.get(r))
    }

    /// The result as a plain factorization, if it is one.
    pub fn factorization(&self) -> Option<&Factorization> {
        match self.result() {
            Some(Slot::Concrete(f)) => Some(f),
            _ => None,
        }
    }
}

fn disjoint_table(s: &Scenario) -> DisjointTable {
    let mut t = DisjointTable::new();
    for (a, b) in &s.disjoint_pairs {
        t.declare(a, b);
    }
    t
}

/// Builds the base factorizations and runs the pipeline.
pub fn execute(s: &Scenario) -> Result<Executed, ScenarioError> {
    s.validate()?;
    let table = s.curve_table()?;
    let disjoint = disjoint_table(s);
    let fe = |source| ScenarioError::Factorization { scenario: s.name.clone(), source };
    let mut slots: HashMap<String, Slot> = HashMap::new();
    for spec in &s.factorizations {
        let curves = spec.letters.split_whitespace().map(|n| table[n].clone()).collect();
        let base = ConstructionStep::BaseRelator { name: spec.name.clone(), decomposition: spec.decomposition.clone() };
        let f = Factorization::new(s.surface, curves, spec.target.clone(), base).map_err(fe)?;
        slots.insert(spec.name.clone(), Slot::Concrete(f));
    }
    let concrete = |slots: &HashMap<String, Slot>, name: &str| -> Result<Factorization, ScenarioError> {
        match slots.get(name) {
            Some(Slot::Concrete(f)) => Ok(f.clone()),
            Some(_) => Err(ScenarioError::NotConcrete { scenario: s.name.clone(), slot: name.to_string() }),
            None => Err(ScenarioError::UnknownSlot { scenario: s.name.clone(), name: name.to_string() }),
        }
    };
    for step in &s.pipeline {
        let out = step.slots().1.to_string();
        let value = match step {
            Step::Hurwitz { on, moves, .. } => {
                let mut f = concrete(&slots, on)?;
                for &(i, d) in moves {
                    f = hurwitz_move(&f, i, d).map_err(fe)?;
                }
                Slot::Concrete(f)
            }
            Step::Conjugate { on, word, .. } => {
                let w = s.mapping_word(word)?;
                Slot::Concrete(global_conjugate(&concrete(&slots, on)?, &w).map_err(fe)?)
            }
            Step::FiberSum { left, right, gluing, .. } => {
                let l = concrete(&slots, left)?;
                let w = match gluing {
                    Some(name) => s.mapping_word(name)?,
                    None => MappingWord::empty(s.surface.genus),
                };
                Slot::Concrete(twisted_fiber_sum(&l, &concrete(&slots, right)?, &w).map_err(fe)?)
            }
            Step::SymbolicSum { summands, gluings, .. } => {
                let fs = summands.iter().map(|n| concrete(&slots, n)).collect::<Result<Vec<_>, _>>()?;
                Slot::Symbolic(SymbolicFiberSum::new(fs, gluings.clone()).map_err(fe)?)
            }
            Step::GeneralizedSum { on, e, sigma, .. } => Slot::Sum { base: concrete(&slots, on)?, e: *e, sigma: *sigma },
            Step::CyclicShift { on, shift, .. } => Slot::Concrete(cyclic_shift(&concrete(&slots, on)?, *shift).map_err(fe)?),
            Step::Reorder { on, swaps, .. } => Slot::Concrete(commute(&concrete(&slots, on)?, swaps, &disjoint).map_err(fe)?),
            Step::Identify { on, pairs, .. } => {
                let mut f = concrete(&slots, on)?;
                for (from, to) in pairs {
                    f = identify(&f, from, &table[to]).map_err(fe)?;
                }
                Slot::Concrete(f)
            }
            Step::Rename { on, pairs, .. } => {
                let mut f = concrete(&slots, on)?;
                for (from, to) in pairs {
                    let Some(c) = f.curves().find(|c| &c.name == from) else {
                        return Err(fe(crate::factorization::FactorizationError::NoSuchLetter(from.clone())));
                    };
                    let mut renamed = (**c).clone();
                    renamed.name = to.clone();
                    f = identify(&f, from, &Arc::new(renamed)).map_err(fe)?;
                }
                Slot::Concrete(f)
            }
            Step::Substitute { on, relator, start, certificate, removed, inserted, .. } => {
                let f = concrete(&slots, on)?;
                let mut order: Vec<Arc<Curve>> = f.curves().cloned().collect();
                for &i in certificate {
                    if i + 1 < order.len() {
                        order.swap(i, i + 1);
                    }
                }
                let lookup = |name: &str, at: Option<usize>| -> Result<Arc<Curve>, ScenarioError> {
                    if let Some(c) = at.and_then(|p| order.get(p)).filter(|c| c.name == name) {
                        return Ok(c.clone());
                    }
                    if let Some(c) = table.get(name) {
                        return Ok(c.clone());
                    }
                    order
                        .iter()
                        .find(|c| c.name == name)
                        .cloned()
                        .ok_or_else(|| ScenarioError::UnknownCurve { scenario: s.name.clone(), name: name.to_string() })
                };
                let removed =
                    removed.iter().enumerate().map(|(k, n)| lookup(n, Some(start + k))).collect::<Result<Vec<_>, _>>()?;
                let inserted = inserted.iter().map(|n| lookup(n, None)).collect::<Result<Vec<_>, _>>()?;
                let sub = Substitution {
                    start: *start,
                    certificate: certificate.clone(),
                    removed,
                    inserted,
                    relator: *relator,
                };
                Slot::Concrete(relator_substitute(&f, &sub, &disjoint).map_err(fe)?)
            }
            Step::Cap { on, index, .. } => Slot::Concrete(cap_off(&concrete(&slots, on)?, *index).map_err(fe)?),
        };
        slots.insert(out, value);
    }
    Ok(Executed { result: s.result_slot().map(str::to_string), slots })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub mandatory: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Summary {
    pub presentation: String,
    pub generators: usize,
    pub relators: usize,
    /// Relators that only carry the right homology class.
    pub stand_ins: Vec<String>,
    /// Supplied words whose abelianization disagrees with the letter's class.
    pub audit_conflicts: Vec<String>,
    pub h1: AbelianGroup,
    pub verdict: Pi1Verdict,
    pub simplified_generators: usize,
    pub tietze_exhausted: bool,
    pub enumeration: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: String,
    pub status: CheckStatus,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<InvariantReport>,
    pub pi1: Vec<Pi1Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_cosets: usize,
    pub tietze_budget: usize,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_cosets: DEFAULT_MAX_COSETS, tietze_budget: 1000, timings: false }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, mandatory: bool, status: CheckStatus, expected: Option<String>, computed: Option<String>) {
        self.0.push(Check { name: name.to_string(), status, mandatory, expected, computed });
    }

    fn compare<T: PartialEq + ToString>(&mut self, name: &str, expected: Option<T>, computed: T) {
        if let Some(x) = expected {
            let status = if x == computed { CheckStatus::Pass } else { CheckStatus::Fail };
            self.push(name, true, status, Some(x.to_string()), Some(computed.to_string()));
        }
    }
}

fn pass_if(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// One relator per product of generator powers, in basis order.
fn representative_word(c: &Curve) -> Pi1Word {
    let mut letters = Vec::new();
    for (i, x) in c.homology.coeffs().iter().enumerate() {
        let n: i64 = x.try_into().expect("fixture classes are small");
        for _ in 0..n.unsigned_abs() {
            letters.push(Letter::new(i, n < 0));
        }
    }
    Pi1Word::new(letters)
}

struct BuiltPresentation {
    full: Presentation,
    trusted: Presentation,
    witness: Option<Presentation>,
    stand_ins: Vec<String>,
    audit_conflicts: Vec<String>,
}

fn build_presentation(s: &Scenario, spec: &PresentationSpec, result: Option<&Slot>) -> Result<BuiltPresentation, ScenarioError> {
    let names = spec.generators.clone().unwrap_or_else(|| s.surface_generators());
    let mut rels: Vec<(String, Pi1Word, bool)> = Vec::new();
    let mut stand_ins = Vec::new();
    let mut audit_conflicts = Vec::new();
    if spec.surface_relator {
        rels.push(("surface".into(), surface_presentation(s.surface.genus).relators()[0].clone(), true));
    }
    if spec.vanishing_cycles {
        let curves = result.map(Slot::distinct_curves).unwrap_or_default();
        for c in curves.iter().filter(|c| !spec.omit.contains(&c.name)) {
            let audited = |w: &Pi1Word| abelianize_word(w, s.surface).eq_up_to_sign(&c.homology);
            let supplied = match (&c.pi1_word, spec.words.get(&c.name)) {
                (Some(w), _) => Some(w.clone()),
                (None, Some(text)) => Some(s.parse_with(text, &names)?),
                (None, None) => None,
            };
            match supplied {
                Some(w) if audited(&w) => rels.push((c.name.clone(), w, true)),
                other => {
                    if other.is_some() {
                        audit_conflicts.push(c.name.clone());
                    }
                    if !c.homology.is_zero() {
                        stand_ins.push(c.name.clone());
                        rels.push((c.name.clone(), representative_word(c), false));
                    }
                }
            }
        }
    }
    for r in &spec.relators {
        let w = s.parse_with(&r.word, &names)?;
        if !r.trusted {
            stand_ins.push(r.label.clone());
        }
        rels.push((r.label.clone(), w, r.trusted));
    }
    let mk = |ws: Vec<Pi1Word>| Presentation::new(names.clone(), ws).expect("relators parsed over these generators");
    let full = mk(rels.iter().map(|r| r.1.clone()).collect());
    let trusted = mk(rels.iter().filter(|r| r.2).map(|r| r.1.clone()).collect());
    let witness = if spec.witness.is_empty() {
        None
    } else {
        let picked: Vec<_> = rels.iter().filter(|r| spec.witness.contains(&r.0)).collect();
        let complete = spec.witness.iter().all(|l| picked.iter().any(|r| &r.0 == l));
        (complete && picked.iter().all(|r| r.2)).then(|| mk(picked.iter().map(|r| r.1.clone()).collect()))
    };
    Ok(BuiltPresentation { full, trusted, witness, stand_ins, audit_conflicts })
}

fn enumeration_text(e: &CosetEnumeration) -> String {
    match e {
        CosetEnumeration::Finite(k) => format!("Finite({k})"),
        CosetEnumeration::Exhausted { defined } => format!("Exhausted({defined})"),
    }
}

/// Presentation, H1 and π1 verdict for one presentation spec.
pub(crate) fn pi1_summary(
    s: &Scenario,
    spec: &PresentationSpec,
    result: Option<&Slot>,
    opts: &RunOptions,
) -> Result<(Pi1Summary, Option<CosetEnumeration>), ScenarioError> {
    let p = build_presentation(s, spec, result)?;
    let o = certify_trivial(&p.full, &p.trusted, p.witness.as_ref(), opts.tietze_budget, opts.max_cosets);
    let summary = Pi1Summary {
        presentation: spec.name.clone(),
        generators: p.full.generator_count(),
        relators: p.full.relators().len(),
        stand_ins: p.stand_ins,
        audit_conflicts: p.audit_conflicts,
        h1: o.h1.clone(),
        verdict: o.verdict,
        simplified_generators: o.simplified_generators,
        tietze_exhausted: o.tietze_exhausted,
        enumeration: o.enumeration.as_ref().map(enumeration_text),
    };
    Ok((summary, o.enumeration))
}

/// Coset enumeration on the Tietze-reduced trusted relators.
fn trusted_enumeration(s: &Scenario, spec: &PresentationSpec, result: Option<&Slot>, opts: &RunOptions) -> Option<CosetEnumeration> {
    let p = build_presentation(s, spec, result).ok()?;
    let t = tietze_simplify(&p.trusted, opts.tietze_budget);
    if t.presentation.generator_count() == 0 {
        return Some(CosetEnumeration::Finite(1));
    }
    match todd_coxeter(&t.presentation, opts.max_cosets) {
        CosetEnumeration::Finite(1) => Some(CosetEnumeration::Finite(1)),
        e => match todd_coxeter(&p.trusted, opts.max_cosets) {
            CosetEnumeration::Finite(1) => Some(CosetEnumeration::Finite(1)),
            _ => Some(e),
        },
    }
}

/// Runs every check for one scenario. Never panics on bad data: input
/// errors are returned, construction failures become failing checks.
pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> Result<RunReport, ScenarioError> {
    let clock = Instant::now();
    s.validate()?;
    let x = &s.expectations;
    let mut checks = Checks(Vec::new());

    let table = s.curve_table()?;
    let mut bad: Vec<String> = Vec::new();
    let mut names: Vec<&String> = table.keys().collect();
    names.sort();
    for n in names {
        let v = validate_curve(&table[n]);
        if !v.is_empty() {
            bad.push(format!("{n}: {v:?}"));
        }
    }
    checks.push("curves", true, pass_if(bad.is_empty()), None, (!bad.is_empty()).then(|| bad.join("; ")));

    let mut clash = Vec::new();
    for (a, b) in &s.disjoint_pairs {
        let p = intersection_pairing(&table[a].homology, &table[b].homology).expect("same surface");
        if !p.is_zero() {
            clash.push(format!("<{a},{b}> = {p}"));
        }
    }
    if !s.disjoint_pairs.is_empty() {
        checks.push("disjointness", true, pass_if(clash.is_empty()), None, (!clash.is_empty()).then(|| clash.join("; ")));
    }

    let errs = x.consistency_errors();
    checks.push("expectations", true, pass_if(errs.is_empty()), None, (!errs.is_empty()).then(|| errs.join("; ")));

    let executed = match execute(s) {
        Ok(e) => Some(e),
        Err(ScenarioError::Factorization { source, .. }) => {
            checks.push("pipeline", true, CheckStatus::Fail, None, Some(source.to_string()));
            None
        }
        Err(e) => return Err(e),
    };
    let result = executed.as_ref().and_then(Executed::result);

    let mut e_val = None;
    let mut sigma_val = None;
    let mut minimality = MinimalityEvidence::Unknown;
    let mut from_meyer = false;
    if let Some(r) = result {
        checks.push("pipeline", true, CheckStatus::Pass, None, None);
        checks.push("homology_identity", true, pass_if(r.homology_identity()), Some("identity".into()), None);
        if let (Some(n), Some(sep)) = (r.letter_count(), r.separating_count()) {
            checks.compare("letters", x.letters, n);
            checks.compare("nonseparating", x.nonseparating, n - sep);
            checks.compare("separating", x.separating, sep);
        }
        match r.euler() {
            Ok(e) => {
                checks.compare("euler", x.e, e);
                e_val = Some(e);
            }
            Err(err) => checks.push("euler", true, CheckStatus::Fail, x.e.map(|v| v.to_string()), Some(err)),
        }
        let ledger = r.sigma_ledger();
        match ledger {
            Some(v) => checks.compare("sigma_ledger", x.sigma, v),
            None => checks.push("sigma_ledger", true, CheckStatus::Fail, x.sigma.map(|v| v.to_string()), Some("unknown".into())),
        }
        let meyer = r.sigma_meyer();
        match &meyer {
            Ok(v) => checks.compare("sigma_meyer", x.sigma, *v),
            Err(err) => checks.push("sigma_meyer", true, CheckStatus::Fail, x.sigma.map(|v| v.to_string()), Some(err.clone())),
        }
        if let (Some(l), Ok(m)) = (ledger, &meyer) {
            checks.push("signature_agreement", true, pass_if(l == *m), Some(l.to_string()), Some(m.to_string()));
        }
        sigma_val = ledger.or_else(|| meyer.ok().inspect(|_| from_meyer = true));
        if let (Some(e), Some(sg)) = (e_val, sigma_val) {
            checks.compare("c1sq", x.c1sq, 2 * e + 3 * sg);
        }
        minimality = r.minimality();
        checks.compare("minimality", x.minimality.map(|m| format!("{m:?}")), format!("{minimality:?}"));
    }

    let mut pi1 = Vec::new();
    let mut first_enum = None;
    for spec in &s.presentations {
        let (summary, en) = pi1_summary(s, spec, result, opts)?;
        if pi1.is_empty() {
            first_enum = Some(en);
        }
        pi1.push(summary);
    }
    let primary = pi1.first();
    if let Some(p) = primary {
        checks.compare("h1", x.h1.as_ref().map(ToString::to_string), p.h1.to_string());
        if let Some(want) = x.pi1_trivial {
            let status = match (want, p.verdict) {
                (true, Pi1Verdict::Trivial(_)) | (false, Pi1Verdict::NonTrivial) => CheckStatus::Pass,
                (true, Pi1Verdict::NonTrivial) | (false, Pi1Verdict::Trivial(_)) => CheckStatus::Fail,
                _ => CheckStatus::Inconclusive,
            };
            let computed = format!("{:?}", p.verdict);
            checks.push("pi1", false, status, Some(if want { "trivial" } else { "nontrivial" }.into()), Some(computed));
        }
        if x.coset_trivial == Some(true) {
            let en = match first_enum.flatten() {
                Some(e @ CosetEnumeration::Finite(1)) => Some(e),
                _ => trusted_enumeration(s, &s.presentations[0], result, opts),
            };
            let status = if en == Some(CosetEnumeration::Finite(1)) { CheckStatus::Pass } else { CheckStatus::Inconclusive };
            checks.push("coset_enumeration", false, status, Some("Finite(1)".into()), en.as_ref().map(enumeration_text));
        }
        let conflicts: Vec<&String> = pi1.iter().flat_map(|p| &p.audit_conflicts).collect();
        if !conflicts.is_empty() {
            let list = conflicts.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(", ");
            checks.push("word_audit", false, CheckStatus::Inconclusive, None, Some(list));
        }
    }

    let mut report = None;
    if let (Some(e), Some(sg)) = (e_val, sigma_val) {
        let h1 = primary.map(|p| p.h1.clone()).unwrap_or_default();
        let certified = primary.is_some_and(|p| p.verdict.is_certified_trivial());
        match report_from_values(e, sg, &h1, certified, minimality) {
            Ok(mut rep) => {
                if from_meyer {
                    rep.caveats.push("signature from the Meyer cocycle only".into());
                }
                if primary.is_some_and(|p| p.verdict == Pi1Verdict::ConditionalTrivial) {
                    rep.caveats.push("π1 trivial only for a presentation with stand-in relators".into());
                }
                if primary.is_some() {
                    checks.compare("b2plus", x.b2plus, rep.b2plus);
                    checks.compare("b2minus", x.b2minus, rep.b2minus);
                }
                if let Some(want) = &x.label {
                    let (status, computed) = match &rep.label {
                        Some(l) => (pass_if(l == want), Some(l.clone())),
                        None => (CheckStatus::Inconclusive, None),
                    };
                    checks.push("label", true, status, Some(want.clone()), computed);
                }
                report = Some(rep);
            }
            Err(err) => checks.push("report", true, CheckStatus::Fail, None, Some(err.to_string())),
        }
    }

    let failed = checks.0.iter().any(|c| c.mandatory && c.status == CheckStatus::Fail);
    Ok(RunReport {
        scenario: s.name.clone(),
        status: if failed { CheckStatus::Fail } else { CheckStatus::Pass },
        checks: checks.0,
        report,
        pi1,
        timing_ms: opts.timings.then(|| clock.elapsed().as_millis() as u64),
    })
}
