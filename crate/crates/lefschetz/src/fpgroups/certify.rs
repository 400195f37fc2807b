use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::tietze::canonical;
use super::{abelianization, tietze_simplify, todd_coxeter, AbelianGroup, CosetEnumeration, Presentation};
use crate::model::Pi1Word;

/// Why a group is known to be trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pi1Certificate {
    /// Tietze moves on true relators removed every generator.
    TietzeTrivial,
    /// Coset enumeration on true relators closed with one coset.
    CosetEnumeration,
    /// True relators present an abelian group, so π1 equals H1, which is 0.
    AbelianWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "snake_case")]
pub enum Pi1Verdict {
    Trivial(Pi1Certificate),
    /// Trivial for a presentation that contains stand-in relators.
    ConditionalTrivial,
    NonTrivial,
    Inconclusive,
}

impl Pi1Verdict {
    pub fn is_certified_trivial(&self) -> bool {
        matches!(self, Pi1Verdict::Trivial(_))
    }
}

#[derive(Clone, Debug)]
pub struct Pi1Outcome {
    pub h1: AbelianGroup,
    pub verdict: Pi1Verdict,
    pub tietze_exhausted: bool,
    /// Generator count after Tietze simplification of the trusted relators.
    pub simplified_generators: usize,
    pub enumeration: Option<CosetEnumeration>,
}

/// Group is abelian when it has at most one generator, or two generators and
/// a relator that is their commutator.
pub fn is_abelian_certificate(p: &Presentation) -> bool {
    match p.generator_count() {
        0 | 1 => true,
        2 => {
            let c = canonical(&Pi1Word::commutator(&Pi1Word::generator(0), &Pi1Word::generator(1)));
            p.relators().iter().any(|r| canonical(&r.cyclically_reduced()) == c)
        }
        _ => false,
    }
}

/// `full` holds every relator and fixes H1 exactly. `trusted` is the
/// sub-collection of relators known to be true words for the vanishing
/// cycles. `witness`, when given, must consist of trusted relators.
pub fn certify_trivial(
    full: &Presentation,
    trusted: &Presentation,
    witness: Option<&Presentation>,
    budget: usize,
    max_cosets: usize,
) -> Pi1Outcome {
    assert_eq!(full.generators(), trusted.generators(), "trusted part must share generators");
    let h1 = abelianization(full);
    let simplified = tietze_simplify(trusted, budget);
    let mut out = Pi1Outcome {
        h1: h1.clone(),
        verdict: Pi1Verdict::Inconclusive,
        tietze_exhausted: simplified.exhausted,
        simplified_generators: simplified.presentation.generator_count(),
        enumeration: None,
    };
    if !h1.is_trivial() {
        out.verdict = Pi1Verdict::NonTrivial;
        return out;
    }
    if simplified.presentation.generator_count() == 0 {
        out.verdict = Pi1Verdict::Trivial(Pi1Certificate::TietzeTrivial);
        return out;
    }
    let trusted_is_full = full.relators().len() == trusted.relators().len();
    if let Some(w) = witness {
        if w.generators() == trusted.generators() && subset(w, trusted) {
            let ws = tietze_simplify(w, budget);
            if is_abelian_certificate(&ws.presentation) {
                out.verdict = Pi1Verdict::Trivial(Pi1Certificate::AbelianWitness);
                return out;
            }
        }
    }
    let e = enumerate(&simplified.presentation, trusted, max_cosets);
    out.enumeration = Some(e);
    match e {
        CosetEnumeration::Finite(1) => {
            out.verdict = Pi1Verdict::Trivial(Pi1Certificate::CosetEnumeration);
            return out;
        }
        CosetEnumeration::Finite(_) if trusted_is_full => {
            out.verdict = Pi1Verdict::NonTrivial;
            return out;
        }
        _ => {}
    }
    if !trusted_is_full {
        let fs = tietze_simplify(full, budget);
        let e = if fs.presentation.generator_count() == 0 {
            CosetEnumeration::Finite(1)
        } else {
            enumerate(&fs.presentation, full, max_cosets)
        };
        out.enumeration = Some(e);
        if e == CosetEnumeration::Finite(1) {
            out.verdict = Pi1Verdict::ConditionalTrivial;
        }
    }
    out
}

/// Tietze output can carry long relators that stall enumeration; the
/// original short relators are tried when the reduced form does not close.
fn enumerate(reduced: &Presentation, original: &Presentation, max_cosets: usize) -> CosetEnumeration {
    let e = todd_coxeter(reduced, max_cosets);
    if e == CosetEnumeration::Finite(1) || reduced == original {
        return e;
    }
    match todd_coxeter(original, max_cosets) {
        CosetEnumeration::Finite(1) => CosetEnumeration::Finite(1),
        _ => e,
    }
}

fn subset(small: &Presentation, big: &Presentation) -> bool {
    let have: HashSet<_> = big.relators().iter().map(|r| canonical(&r.cyclically_reduced())).collect();
    small.relators().iter().all(|r| r.cyclically_reduced().is_empty() || have.contains(&canonical(&r.cyclically_reduced())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_detection() {
        assert!(is_abelian_certificate(&Presentation::parse(&["x", "y"], &["y x y^-1 x^-1"]).unwrap()));
        assert!(!is_abelian_certificate(&Presentation::parse(&["x", "y"], &["x^2"]).unwrap()));
        assert!(is_abelian_certificate(&Presentation::parse(&["x"], &[]).unwrap()));
    }

    #[test]
    fn witness_route() {
        // <x,y | [x,y], x^2 y^3, x^3 y^4> is trivial: abelian witness plus H1 = 0
        let full = Presentation::parse(&["x", "y"], &["[x,y]", "x^2 y^3", "x^3 y^4"]).unwrap();
        let w = Presentation::parse(&["x", "y"], &["[x,y]"]).unwrap();
        let o = certify_trivial(&full, &full, Some(&w), 50, 1000);
        assert!(o.h1.is_trivial());
        assert!(o.verdict.is_certified_trivial());
    }

    #[test]
    fn stand_in_relators_give_conditional_verdict() {
        let full = Presentation::parse(&["x", "y"], &["[x,y]", "x", "y x"]).unwrap();
        let trusted = Presentation::parse(&["x", "y"], &["[x,y]"]).unwrap();
        let o = certify_trivial(&full, &trusted, None, 50, 100);
        assert_eq!(o.verdict, Pi1Verdict::ConditionalTrivial);
    }

    #[test]
    fn nontrivial_h1() {
        let p = Presentation::parse(&["x"], &["x^3"]).unwrap();
        assert_eq!(certify_trivial(&p, &p, None, 10, 10).verdict, Pi1Verdict::NonTrivial);
    }
}
