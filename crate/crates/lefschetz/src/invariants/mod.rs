//! Invariants of the total space: e, σ (ledger and Meyer), c1², Betti numbers,
//! homeomorphism labels and minimality evidence.

mod meyer;

pub use meyer::{meyer_cocycle, meyer_self_test, signature_meyer, CocycleSelfTest};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorization::{ConstructionStep, Factorization, RelatorKind, SymbolicFiberSum, Target};
use crate::fpgroups::AbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("target {0} is not the identity; cap the boundary first")]
    UncappedTarget(Target),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
}

/// `2(2 - 2g) + n` for a closed fibration over the sphere.
pub fn euler_characteristic(f: &Factorization) -> Result<i64, InvariantError> {
    if !f.target.is_identity() {
        return Err(InvariantError::UncappedTarget(f.target.clone()));
    }
    Ok(fiber_euler(f.genus()) * 2 + f.len() as i64)
}

fn fiber_euler(g: usize) -> i64 {
    2 - 2 * g as i64
}

/// Euler characteristic of a fiber sum: each gluing removes two fibers.
pub fn euler_symbolic(s: &SymbolicFiberSum) -> Result<i64, InvariantError> {
    let mut e = 0;
    for f in &s.summands {
        e += euler_characteristic(f)?;
    }
    Ok(e - 2 * fiber_euler(s.genus()) * s.gluings.len() as i64)
}

/// e and σ of a sum of two fibrations along a genus-g fiber, e.g. a fiber sum
/// with a surface bundle given only by its invariants.
pub fn generalized_sum(e1: i64, sigma1: i64, e2: i64, sigma2: i64, genus: usize) -> (i64, i64) {
    (e1 + e2 - 2 * fiber_euler(genus), sigma1 + sigma2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerLine {
    pub relator: String,
    pub multiplicity: i64,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjustment {
    pub step: String,
    pub delta: i64,
}

/// Endo–Nagami decomposition of a construction history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SignatureLedger {
    pub entries: Vec<LedgerLine>,
    pub adjustments: Vec<Adjustment>,
    /// `None` when some step has no known value.
    pub total: Option<i64>,
}

impl SignatureLedger {
    pub fn from_history(history: &[ConstructionStep]) -> Self {
        let mut ledger = SignatureLedger { total: Some(0), ..Default::default() };
        ledger.walk(history);
        if let Some(t) = ledger.total.as_mut() {
            *t = ledger.entries.iter().map(|e| e.multiplicity * e.value).sum::<i64>()
                + ledger.adjustments.iter().map(|a| a.delta).sum::<i64>();
        }
        ledger
    }

    fn walk(&mut self, history: &[ConstructionStep]) {
        for step in history {
            match step {
                ConstructionStep::BaseRelator { decomposition: Some(d), .. } => {
                    for e in d {
                        self.entries.push(LedgerLine {
                            relator: e.relator.name().to_string(),
                            multiplicity: e.multiplicity,
                            value: e.relator.endo_nagami_value(),
                        });
                    }
                }
                ConstructionStep::BaseRelator { decomposition: None, .. } => self.total = None,
                ConstructionStep::TwistedFiberSum { left, right, .. } => {
                    self.walk(left);
                    self.walk(right);
                }
                ConstructionStep::RelatorSubstitution { relator, delta, start, .. } => {
                    match (RelatorKind::from_name(relator), delta) {
                        (Some(_), Some(d)) => {
                            self.adjustments.push(Adjustment { step: format!("{relator}@{start}"), delta: *d })
                        }
                        _ => self.total = None,
                    }
                }
                _ => {}
            }
        }
    }
}

/// σ from the relator ledger, or `None` when the history is not decomposable.
pub fn signature_endo_nagami(f: &Factorization) -> Option<i64> {
    SignatureLedger::from_history(&f.history).total
}

pub fn signature_endo_nagami_symbolic(s: &SymbolicFiberSum) -> Option<i64> {
    SignatureLedger::from_history(&[s.history()]).total
}

/// Meyer signature of a symbolic sum: Novikov additivity over the summands.
pub fn signature_meyer_symbolic(s: &SymbolicFiberSum) -> Result<i64, InvariantError> {
    s.summands.iter().map(signature_meyer).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalityEvidence {
    /// The factorization is a fiber sum `W_1^φ W_2` of nontrivial pieces.
    FiberSumDecomposition,
    /// Lantern substitutions applied after such a fiber sum.
    LanternBlowdownChain,
    Unknown,
}

/// Reads the top level of a history: a fiber sum followed only by
/// reorderings, conjugations and capping gives the decomposition evidence;
/// lantern substitutions after it give the blowdown chain.
pub fn minimality_evidence(history: &[ConstructionStep]) -> MinimalityEvidence {
    let Some(pos) = history.iter().rposition(|s| matches!(s, ConstructionStep::TwistedFiberSum { .. })) else {
        return MinimalityEvidence::Unknown;
    };
    let lantern = history[pos + 1..].iter().any(|s| {
        matches!(s, ConstructionStep::RelatorSubstitution { relator, .. } if relator == RelatorKind::Lantern.name())
    });
    if lantern {
        MinimalityEvidence::LanternBlowdownChain
    } else {
        MinimalityEvidence::FiberSumDecomposition
    }
}

pub const ODD_FORM_CAVEAT: &str = "intersection form assumed odd, not checked";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub e: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub b1: i64,
    pub b2plus: i64,
    pub b2minus: i64,
    pub h1: AbelianGroup,
    pub label: Option<String>,
    pub minimality: MinimalityEvidence,
    pub caveats: Vec<String>,
}

/// Builds a report from e, σ and H1. The label `p CP2 # q CP2bar` is only
/// emitted when π1 is certified trivial and b2+ ≥ 1.
pub fn report_from_values(
    e: i64,
    sigma: i64,
    h1: &AbelianGroup,
    pi1_trivial: bool,
    minimality: MinimalityEvidence,
) -> Result<InvariantReport, InvariantError> {
    let b1 = h1.free_rank as i64;
    let b2 = e - 2 + 2 * b1;
    if b2 < sigma.abs() || (b2 - sigma) % 2 != 0 {
        return Err(InvariantError::Inconsistent(format!("e={e}, σ={sigma}, b1={b1} give b2={b2}")));
    }
    if pi1_trivial && !h1.is_trivial() {
        return Err(InvariantError::Inconsistent(format!("π1 certified trivial but H1 = {h1}")));
    }
    let b2plus = (b2 + sigma) / 2;
    let b2minus = (b2 - sigma) / 2;
    let mut caveats = Vec::new();
    let label = if pi1_trivial && b2plus >= 1 {
        caveats.push(ODD_FORM_CAVEAT.to_string());
        Some(format!("{b2plus} CP2 # {b2minus} CP2bar"))
    } else {
        None
    };
    if minimality != MinimalityEvidence::Unknown {
        caveats.push("minimality is structural evidence, not a proof".to_string());
    }
    Ok(InvariantReport { e, sigma, c1sq: 2 * e + 3 * sigma, b1, b2plus, b2minus, h1: h1.clone(), label, minimality, caveats })
}

/// Report for a closed factorization. σ comes from the ledger when known,
/// otherwise from the Meyer cocycle.
pub fn invariant_report(f: &Factorization, h1: &AbelianGroup, pi1_trivial: bool) -> Result<InvariantReport, InvariantError> {
    let e = euler_characteristic(f)?;
    let (sigma, from_ledger) = match signature_endo_nagami(f) {
        Some(s) => (s, true),
        None => (signature_meyer(f)?, false),
    };
    let mut r = report_from_values(e, sigma, h1, pi1_trivial, minimality_evidence(&f.history))?;
    if !from_ledger {
        r.caveats.push("signature from the Meyer cocycle only".to_string());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{Direction, LedgerEntry};
    use crate::model::Surface;

    fn base(dec: Option<Vec<LedgerEntry>>) -> ConstructionStep {
        ConstructionStep::BaseRelator { name: "W".into(), decomposition: dec }
    }

    #[test]
    fn euler_of_empty_factorization() {
        let f = Factorization::new(Surface::closed(3), vec![], Target::Identity, base(None)).unwrap();
        assert_eq!(euler_characteristic(&f).unwrap(), -8);
        let g = Factorization::new(Surface::new(3, 1), vec![], Target::boundary(1, 1), base(None)).unwrap();
        assert!(euler_characteristic(&g).is_err());
    }

    #[test]
    fn ledger_of_w_shape() {
        let dec = vec![
            LedgerEntry { relator: RelatorKind::MatsumotoEven, multiplicity: 2 },
            LedgerEntry { relator: RelatorKind::Separating, multiplicity: -2 },
        ];
        let w = vec![base(Some(dec))];
        assert_eq!(SignatureLedger::from_history(&w).total, Some(-6));
        let sum = vec![
            ConstructionStep::TwistedFiberSum { left: w.clone(), right: w.clone(), gluing: "id".into() },
            ConstructionStep::RelatorSubstitution {
                relator: "lantern".into(),
                start: 0,
                removed: vec![],
                inserted: vec![],
                delta: Some(1),
            },
        ];
        let l = SignatureLedger::from_history(&sum);
        assert_eq!(l.total, Some(-11));
        assert_eq!(minimality_evidence(&sum), MinimalityEvidence::LanternBlowdownChain);
        assert_eq!(minimality_evidence(&sum[..1]), MinimalityEvidence::FiberSumDecomposition);
        assert_eq!(minimality_evidence(&w), MinimalityEvidence::Unknown);
        let unknown = vec![ConstructionStep::TwistedFiberSum { left: w, right: vec![base(None)], gluing: "f".into() }];
        assert_eq!(SignatureLedger::from_history(&unknown).total, None);
        let moved = vec![ConstructionStep::HurwitzMove { index: 0, direction: Direction::Left }];
        assert_eq!(SignatureLedger::from_history(&moved).total, Some(0));
    }

    #[test]
    fn report_identities() {
        let r = report_from_values(24, -16, &AbelianGroup::trivial(), true, MinimalityEvidence::FiberSumDecomposition).unwrap();
        assert_eq!((r.b2plus, r.b2minus, r.c1sq), (3, 19, 0));
        assert_eq!(r.label.as_deref(), Some("3 CP2 # 19 CP2bar"));
        assert!(r.caveats.iter().any(|c| c == ODD_FORM_CAVEAT));
        assert_eq!(r.e, 2 - 2 * r.b1 + r.b2plus + r.b2minus);
        let x = report_from_values(6, -6, &AbelianGroup::free(2), false, MinimalityEvidence::Unknown).unwrap();
        assert_eq!((x.b1, x.b2plus, x.b2minus), (2, 1, 7));
        assert_eq!(x.label, None);
        assert!(report_from_values(6, -5, &AbelianGroup::free(2), false, MinimalityEvidence::Unknown).is_err());
        assert!(report_from_values(6, -6, &AbelianGroup::free(2), true, MinimalityEvidence::Unknown).is_err());
    }

    #[test]
    fn z_k_label() {
        for k in 1..=3 {
            let (e, s) = generalized_sum(-4 * k + 10, -6, 0, 0, 3 * k as usize);
            assert_eq!((e, s), (6 + 8 * k, -6));
            let r = report_from_values(e, s, &AbelianGroup::trivial(), true, MinimalityEvidence::Unknown).unwrap();
            assert_eq!((r.b2plus, r.b2minus), (4 * k - 1, 4 * k + 5));
        }
    }
}
