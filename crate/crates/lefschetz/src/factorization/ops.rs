use std::sync::Arc;

use num_traits::Zero;

use super::{ConstructionStep, DisjointTable, Direction, Factorization, FactorizationError, RelatorKind, Target};
use crate::model::{Curve, Surface};
use crate::symplectic::{
    evaluate_word, image_curve, intersection_pairing, transvection_power, MappingWord, TwistLetter,
};

fn check_index(f: &Factorization, i: usize) -> Result<(), FactorizationError> {
    if i + 1 >= f.len() {
        return Err(FactorizationError::IndexOutOfRange { index: i, len: f.len() });
    }
    Ok(())
}

/// Exchange letters `i` and `i+1` (0-based).
/// Right: `(x, y) -> (y, t_y^-1(x))`. Left: `(x, y) -> (t_x(y), x)`.
pub fn hurwitz_move(f: &Factorization, i: usize, direction: Direction) -> Result<Factorization, FactorizationError> {
    check_index(f, i)?;
    let x = f.curve(i).clone();
    let y = f.curve(i + 1).clone();
    let (first, second) = match direction {
        Direction::Right => {
            let m = transvection_power(&y.homology, -1);
            let moved = image_curve(&m, &format!("t_{}^-1", y.name), &x);
            (y, Arc::new(moved))
        }
        Direction::Left => {
            let m = transvection_power(&x.homology, 1);
            let moved = image_curve(&m, &format!("t_{}", x.name), &y);
            (Arc::new(moved), x)
        }
    };
    let mut letters = f.letters().to_vec();
    letters[i] = TwistLetter::positive(first);
    letters[i + 1] = TwistLetter::positive(second);
    Ok(f.with_letters(letters, ConstructionStep::HurwitzMove { index: i, direction }))
}

/// Replace every curve `c` by `w(c)`.
pub fn global_conjugate(f: &Factorization, w: &MappingWord) -> Result<Factorization, FactorizationError> {
    if w.is_empty() {
        return Ok(f.clone());
    }
    use crate::symplectic::TwistSequence;
    if w.genus() != f.genus() {
        return Err(crate::symplectic::SymplecticError::MixedSurfaces(f.genus(), w.genus()).into());
    }
    let m = evaluate_word(w)?;
    let label = w.label();
    let letters = f
        .curves()
        .map(|c| TwistLetter::positive(Arc::new(image_curve(&m, &label, c))))
        .collect();
    Ok(f.with_letters(letters, ConstructionStep::GlobalConjugate { word: label }))
}

/// `F1 · F2^w`. Targets must both be the identity, or both be multitwists
/// about the same boundary components (multiplicities then add).
pub fn twisted_fiber_sum(
    f1: &Factorization,
    f2: &Factorization,
    w: &MappingWord,
) -> Result<Factorization, FactorizationError> {
    if f1.surface != f2.surface {
        return Err(FactorizationError::WrongSurface {
            name: "second summand".into(),
            expected: f1.genus(),
            found: f2.genus(),
        });
    }
    let target = match (&f1.target, &f2.target) {
        (t1, t2) if t1.is_identity() && t2.is_identity() => Target::Identity,
        (Target::BoundaryMultitwist(v1), Target::BoundaryMultitwist(v2))
            if v1.len() == v2.len() && v1.iter().zip(v2).all(|(a, b)| a.0 == b.0) =>
        {
            Target::BoundaryMultitwist(v1.iter().zip(v2).map(|(a, b)| (a.0, a.1 + b.1)).collect())
        }
        (t1, t2) => return Err(FactorizationError::TargetMismatch(t1.clone(), t2.clone())),
    };
    let conj = global_conjugate(f2, w)?;
    let mut letters = f1.letters().to_vec();
    letters.extend(conj.letters().iter().cloned());
    let sections = if f1.sections.len() == f2.sections.len() {
        f1.sections.iter().zip(&f2.sections).map(|(a, b)| a + b).collect()
    } else {
        f1.sections.iter().chain(&f2.sections).copied().collect()
    };
    Ok(Factorization {
        surface: f1.surface,
        letters,
        target,
        sections,
        history: vec![ConstructionStep::TwistedFiberSum {
            left: f1.history.clone(),
            right: conj.history.clone(),
            gluing: if w.is_empty() { "id".into() } else { w.label() },
        }],
    })
}

fn apply_swaps(
    letters: &mut [TwistLetter],
    swaps: &[usize],
    disjoint: &DisjointTable,
) -> Result<(), FactorizationError> {
    for &i in swaps {
        if i + 1 >= letters.len() {
            return Err(FactorizationError::IndexOutOfRange { index: i, len: letters.len() });
        }
        let (x, y) = (&letters[i].curve, &letters[i + 1].curve);
        if !intersection_pairing(&x.homology, &y.homology)?.is_zero() {
            return Err(FactorizationError::NonzeroPairing(x.name.clone(), y.name.clone()));
        }
        if !disjoint.are_disjoint(&x.name, &y.name) {
            return Err(FactorizationError::NotDisjoint(x.name.clone(), y.name.clone()));
        }
        letters.swap(i, i + 1);
    }
    Ok(())
}

/// Reorder by adjacent swaps; each swap needs zero pairing and declared disjointness.
pub fn commute(f: &Factorization, swaps: &[usize], disjoint: &DisjointTable) -> Result<Factorization, FactorizationError> {
    let mut letters = f.letters().to_vec();
    apply_swaps(&mut letters, swaps, disjoint)?;
    Ok(f.with_letters(letters, ConstructionStep::Reorder { swaps: swaps.to_vec() }))
}

/// Parameters of a relator substitution.
#[derive(Clone, Debug)]
pub struct Substitution {
    /// 0-based start of the span, after the certificate swaps.
    pub start: usize,
    /// Adjacent swaps applied before matching.
    pub certificate: Vec<usize>,
    pub removed: Vec<Arc<Curve>>,
    pub inserted: Vec<Arc<Curve>>,
    pub relator: RelatorKind,
}

impl Substitution {
    /// Signature change from the relator table. Lantern: +1 when four twists
    /// become three. Other relators: their value when the inserted side is longer.
    pub fn delta(&self) -> i64 {
        let forward = self.removed.len() > self.inserted.len();
        match self.relator {
            RelatorKind::Commutation => 0,
            RelatorKind::Lantern => {
                if forward {
                    1
                } else {
                    -1
                }
            }
            k => {
                if forward {
                    -k.endo_nagami_value()
                } else {
                    k.endo_nagami_value()
                }
            }
        }
    }
}

/// Replace the span matching `removed` by `inserted`.
pub fn relator_substitute(
    f: &Factorization,
    sub: &Substitution,
    disjoint: &DisjointTable,
) -> Result<Factorization, FactorizationError> {
    let mut letters = f.letters().to_vec();
    apply_swaps(&mut letters, &sub.certificate, disjoint)?;
    let end = sub.start + sub.removed.len();
    if end > letters.len() {
        return Err(FactorizationError::IndexOutOfRange { index: end, len: letters.len() });
    }
    for (k, want) in sub.removed.iter().enumerate() {
        let have = &letters[sub.start + k].curve;
        if have.name != want.name || !have.homology.eq_up_to_sign(&want.homology) {
            return Err(FactorizationError::SpanMismatch {
                position: sub.start + k,
                expected: want.name.clone(),
                found: have.name.clone(),
            });
        }
    }
    for c in &sub.inserted {
        if c.genus() != f.genus() {
            return Err(FactorizationError::WrongSurface { name: c.name.clone(), expected: f.genus(), found: c.genus() });
        }
    }
    let g = f.genus();
    let lhs = MappingWord::new(g, sub.removed.iter().cloned().map(TwistLetter::positive).collect())?;
    let rhs = MappingWord::new(g, sub.inserted.iter().cloned().map(TwistLetter::positive).collect())?;
    if evaluate_word(&lhs)? != evaluate_word(&rhs)? {
        return Err(FactorizationError::HomologyMismatch);
    }
    let step = ConstructionStep::RelatorSubstitution {
        relator: sub.relator.name().to_string(),
        start: sub.start,
        removed: sub.removed.iter().map(|c| c.name.clone()).collect(),
        inserted: sub.inserted.iter().map(|c| c.name.clone()).collect(),
        delta: Some(sub.delta()),
    };
    let mut out: Vec<TwistLetter> = letters[..sub.start].to_vec();
    out.extend(sub.inserted.iter().cloned().map(TwistLetter::positive));
    out.extend(letters[end..].iter().cloned());
    let mut res = f.with_letters(out, step);
    if !sub.certificate.is_empty() {
        let last = res.history.len() - 1;
        res.history.insert(last, ConstructionStep::Reorder { swaps: sub.certificate.clone() });
    }
    Ok(res)
}

/// Fill in boundary component `index` (1-based). Boundary-parallel letters
/// around it disappear; the section self-intersections are kept.
pub fn cap_off(f: &Factorization, index: usize) -> Result<Factorization, FactorizationError> {
    let entries = match &f.target {
        Target::BoundaryMultitwist(v) => v,
        t => return Err(FactorizationError::NoSuchBoundary(t.clone(), index)),
    };
    let Some(pos) = entries.iter().position(|&(i, _)| i == index) else {
        return Err(FactorizationError::NoSuchBoundary(f.target.clone(), index));
    };
    let multiplicity = entries[pos].1;
    let rest: Vec<(usize, u32)> = entries
        .iter()
        .filter(|&&(i, _)| i != index)
        .map(|&(i, m)| (if i > index { i - 1 } else { i }, m))
        .collect();
    let surface = Surface::new(f.surface.genus, f.surface.boundary_count - 1);
    let letters = f
        .curves()
        .filter(|c| c.boundary != Some(index))
        .map(|c| {
            let mut c2 = (**c).clone();
            c2.surface = surface;
            c2.boundary = c.boundary.map(|b| if b > index { b - 1 } else { b });
            TwistLetter::positive(Arc::new(c2))
        })
        .collect();
    let mut out = f.with_letters(letters, ConstructionStep::CapBoundary { index, multiplicity });
    out.surface = surface;
    out.target = if rest.is_empty() { Target::Identity } else { Target::BoundaryMultitwist(rest) };
    Ok(out)
}

/// Move the last `shift` letters to the front. Legal because the target is central.
pub fn cyclic_shift(f: &Factorization, shift: usize) -> Result<Factorization, FactorizationError> {
    if shift > f.len() {
        return Err(FactorizationError::BadShift { shift, len: f.len() });
    }
    let mut letters = f.letters().to_vec();
    letters.rotate_right(shift);
    Ok(f.with_letters(letters, ConstructionStep::CyclicShift { shift }))
}

/// Rename every letter called `from` to `to`, provided the classes agree up to sign.
pub fn identify(f: &Factorization, from: &str, to: &Arc<Curve>) -> Result<Factorization, FactorizationError> {
    let mut count = 0;
    let mut letters = f.letters().to_vec();
    for l in letters.iter_mut() {
        if l.curve.name == from {
            if !l.curve.homology.eq_up_to_sign(&to.homology) || l.curve.separating != to.separating {
                return Err(FactorizationError::ClassMismatch { from: from.into(), to: to.name.clone() });
            }
            l.curve = to.clone();
            count += 1;
        }
    }
    if count == 0 {
        return Err(FactorizationError::NoSuchLetter(from.into()));
    }
    Ok(f.with_letters(letters, ConstructionStep::Identify { from: from.into(), to: to.name.clone(), count }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HomologyClass;

    fn c(name: &str, s: Surface, v: &[i64]) -> Arc<Curve> {
        Arc::new(Curve::new(name, s, HomologyClass::from_i64(v)))
    }

    fn base() -> ConstructionStep {
        ConstructionStep::BaseRelator { name: "test".into(), decomposition: None }
    }

    fn torus_chain() -> Factorization {
        // (t_a t_b)^6 = 1 on the torus
        let s = Surface::closed(1);
        let a = c("a", s, &[1, 0]);
        let b = c("b", s, &[0, 1]);
        let curves = (0..6).flat_map(|_| [a.clone(), b.clone()]).collect();
        Factorization::new(s, curves, Target::Identity, base()).unwrap()
    }

    #[test]
    fn torus_relation_is_identity() {
        assert!(torus_chain().monodromy().is_identity());
    }

    #[test]
    fn right_move_example() {
        let f = torus_chain();
        let g = hurwitz_move(&f, 0, Direction::Right).unwrap();
        assert_eq!(g.curve(0).name, "b");
        // t_b^-1(a) = a + <a,b> b = a + b
        assert_eq!(g.curve(1).homology.to_i64_vec().unwrap(), vec![1, 1]);
        assert_eq!(g.monodromy(), f.monodromy());
        assert_eq!(g.len(), f.len());
    }

    #[test]
    fn left_undoes_right() {
        let f = torus_chain();
        let g = hurwitz_move(&f, 4, Direction::Right).unwrap();
        let h = hurwitz_move(&g, 4, Direction::Left).unwrap();
        for (x, y) in f.curves().zip(h.curves()) {
            assert!(x.homology.eq_up_to_sign(&y.homology));
        }
        assert!(hurwitz_move(&f, 11, Direction::Left).is_err());
    }

    #[test]
    fn disjoint_move_keeps_classes() {
        let s = Surface::closed(2);
        let f = Factorization::new(s, vec![c("x", s, &[1, 0, 0, 0]), c("y", s, &[0, 0, 1, 0])], Target::Identity, base())
            .unwrap();
        let g = hurwitz_move(&f, 0, Direction::Right).unwrap();
        assert_eq!(g.curve(0).homology, f.curve(1).homology);
        assert_eq!(g.curve(1).homology, f.curve(0).homology);
    }

    #[test]
    fn conjugation_and_sum() {
        let f = torus_chain();
        let s = f.surface;
        let w = MappingWord::new(1, vec![TwistLetter::positive(c("a", s, &[1, 0]))]).unwrap();
        let g = global_conjugate(&f, &w).unwrap();
        assert_eq!(g.len(), 12);
        assert!(g.monodromy().is_identity());
        assert_eq!(global_conjugate(&f, &MappingWord::empty(1)).unwrap(), f);
        let sum = twisted_fiber_sum(&f, &f, &w).unwrap();
        assert_eq!(sum.len(), 24);
        assert!(sum.monodromy().is_identity());
    }

    #[test]
    fn fiber_sum_of_boundary_targets_adds() {
        let s = Surface::new(1, 1);
        let a = c("a", s, &[1, 0]);
        let f = Factorization::new(s, vec![a.clone()], Target::boundary(1, 1), base()).unwrap();
        let g = twisted_fiber_sum(&f, &f, &MappingWord::empty(1)).unwrap();
        assert_eq!(g.target, Target::boundary(1, 2));
        assert_eq!(g.sections, vec![-2]);
        let closed = Factorization::new(Surface::closed(1), vec![], Target::Identity, base()).unwrap();
        assert!(twisted_fiber_sum(&f, &closed, &MappingWord::empty(1)).is_err());
    }

    #[test]
    fn cap_off_drops_boundary_letters() {
        let s = Surface::new(1, 2);
        let a = c("a", s, &[1, 0]);
        let d = Arc::new(Curve::boundary_parallel("d2", s, 2));
        let f = Factorization::new(s, vec![a, d], Target::BoundaryMultitwist(vec![(1, 1), (2, 1)]), base()).unwrap();
        let g = cap_off(&f, 1).unwrap();
        assert_eq!(g.target, Target::boundary(1, 1));
        assert_eq!(g.curve(1).boundary, Some(1));
        let h = cap_off(&g, 1).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.target, Target::Identity);
        assert!(h.surface.is_closed());
        assert_eq!(h.sections, vec![-1, -1]);
        assert!(matches!(cap_off(&h, 1), Err(FactorizationError::NoSuchBoundary(..))));
    }

    #[test]
    fn substitution_checks() {
        let s = Surface::closed(2);
        let x = c("x", s, &[1, 0, 0, 0]);
        let y = c("y", s, &[0, 0, 1, 0]);
        let b = c("b", s, &[0, 1, 0, 0]);
        let f = Factorization::new(s, vec![x.clone(), b.clone(), y.clone()], Target::Identity, base()).unwrap();
        let mut table = DisjointTable::new();
        table.declare("x", "y");
        // commutation: swap x and y through the certificate is illegal (b sits between)
        let sub = Substitution {
            start: 1,
            certificate: vec![],
            removed: vec![b.clone(), y.clone()],
            inserted: vec![y.clone(), b.clone()],
            relator: RelatorKind::Commutation,
        };
        let g = relator_substitute(&f, &sub, &table);
        assert!(g.is_ok(), "b and y have zero pairing so their transvections commute");
        let bad = Substitution { removed: vec![x.clone()], ..sub.clone() };
        assert!(matches!(relator_substitute(&f, &bad, &table), Err(FactorizationError::SpanMismatch { .. })));
        let wrong = Substitution { start: 0, removed: vec![x.clone()], inserted: vec![y.clone()], ..sub };
        assert_eq!(relator_substitute(&f, &wrong, &table), Err(FactorizationError::HomologyMismatch));
        assert!(matches!(commute(&f, &[0], &table), Err(FactorizationError::NonzeroPairing(..))));
        assert!(matches!(commute(&f, &[1], &table), Err(FactorizationError::NotDisjoint(..))));
    }

    #[test]
    fn rotation_and_identify() {
        let f = torus_chain();
        let g = cyclic_shift(&f, 1).unwrap();
        assert_eq!(g.curve(0).name, "b");
        assert!(g.monodromy().is_identity());
        let s = f.surface;
        let minus_a = c("a'", s, &[-1, 0]);
        let h = identify(&f, "a", &minus_a).unwrap();
        assert_eq!(h.curve(0).name, "a'");
        assert!(identify(&f, "a", &c("b2", s, &[0, 1])).is_err());
        assert!(identify(&f, "zz", &minus_a).is_err());
    }
}
