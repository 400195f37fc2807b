use super::Presentation;
use crate::model::{Letter, Pi1Word};

pub const DEFAULT_GROWTH_FACTOR: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeResult {
    pub presentation: Presentation,
    pub eliminations: usize,
    /// Budget ran out before a fixed point was reached.
    pub exhausted: bool,
}

/// `tietze_simplify_with` at the default growth factor.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeResult {
    tietze_simplify_with(p, budget, DEFAULT_GROWTH_FACTOR)
}

/// Repeatedly eliminates a generator that occurs exactly once in some relator.
/// Candidate order: shortest relator first, then generator name. A substitution
/// that would make the total relator length exceed `factor` times the current
/// total is skipped.
pub fn tietze_simplify_with(p: &Presentation, budget: usize, factor: usize) -> TietzeResult {
    let n = p.generator_count();
    let names = p.generators().to_vec();
    let mut alive = vec![true; n];
    let mut rels = normalize(p.relators().to_vec());
    let mut eliminations = 0;
    let mut exhausted = false;
    while let Some((ri, gen, image)) = pick(&rels, &names, &alive, factor) {
        if eliminations == budget {
            exhausted = true;
            break;
        }
        let mut images: Vec<Pi1Word> = (0..n).map(Pi1Word::generator).collect();
        images[gen] = image;
        rels.remove(ri);
        rels = normalize(rels.iter().map(|r| r.substitute(&images)).collect());
        alive[gen] = false;
        eliminations += 1;
    }
    let map: Vec<usize> = {
        let mut next = 0;
        alive
            .iter()
            .map(|&a| {
                let v = next;
                if a {
                    next += 1;
                }
                v
            })
            .collect()
    };
    let gens = names.iter().zip(&alive).filter(|(_, a)| **a).map(|(s, _)| s.clone()).collect();
    let rels = rels.iter().map(|r| r.renumber(&map)).collect();
    TietzeResult {
        presentation: Presentation::new(gens, rels).expect("renumbered presentation is valid"),
        eliminations,
        exhausted,
    }
}

/// Cyclically reduce, drop trivial relators, drop repeats up to rotation and inversion.
fn normalize(rels: Vec<Pi1Word>) -> Vec<Pi1Word> {
    let mut out: Vec<Pi1Word> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for r in rels {
        let r = r.cyclically_reduced();
        if r.is_empty() {
            continue;
        }
        if seen.insert(canonical(&r)) {
            out.push(r);
        }
    }
    out
}

/// Least rotation of the word or its inverse, as a key.
pub(crate) fn canonical(r: &Pi1Word) -> Vec<(usize, bool)> {
    let mut best: Option<Vec<(usize, bool)>> = None;
    for w in [r.clone(), r.inverse()] {
        let l = w.letters();
        for s in 0..l.len() {
            let rot: Vec<(usize, bool)> = l[s..].iter().chain(&l[..s]).map(|x| (x.gen, x.inv)).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn pick(rels: &[Pi1Word], names: &[String], alive: &[bool], factor: usize) -> Option<(usize, usize, Pi1Word)> {
    let total: usize = rels.iter().map(Pi1Word::len).sum();
    let mut cands: Vec<(usize, &str, usize, usize)> = Vec::new();
    for (ri, r) in rels.iter().enumerate() {
        for g in 0..names.len() {
            if alive[g] && r.occurrences(g) == 1 {
                cands.push((r.len(), names[g].as_str(), ri, g));
            }
        }
    }
    cands.sort();
    for (_, _, ri, g) in cands {
        let image = solve_for(&rels[ri], g);
        let mut images: Vec<Pi1Word> = (0..names.len()).map(Pi1Word::generator).collect();
        images[g] = image.clone();
        let new_total: usize = rels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != ri)
            .map(|(_, r)| r.substitute(&images).cyclically_reduced().len())
            .sum();
        if new_total <= factor * total {
            return Some((ri, g, image));
        }
    }
    None
}

/// From r = u g^e v with g absent from u and v: g = (v u)^(-e).
fn solve_for(r: &Pi1Word, g: usize) -> Pi1Word {
    let l = r.letters();
    let pos = l.iter().position(|x| x.gen == g).expect("generator occurs");
    let rest: Vec<Letter> = l[pos + 1..].iter().chain(&l[..pos]).copied().collect();
    let w = Pi1Word::new(rest);
    if l[pos].inv {
        w
    } else {
        w.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::super::abelianization;
    use super::*;

    #[test]
    fn single_generator_relator_kills_it() {
        let p = Presentation::parse(&["x", "y"], &["x", "x y"]).unwrap();
        let t = tietze_simplify(&p, 10);
        assert_eq!(t.presentation.generator_count(), 0);
        assert!(!t.exhausted);
    }

    #[test]
    fn idempotent_and_preserves_homology() {
        let p = Presentation::parse(
            &["a", "b", "c", "d"],
            &["a b a^-1 b^-1", "c a^2 b", "d c d c^-1 b", "[c, d]"],
        )
        .unwrap();
        let t1 = tietze_simplify(&p, 100);
        let t2 = tietze_simplify(&t1.presentation, 100);
        assert_eq!(t1.presentation, t2.presentation);
        assert_eq!(t2.eliminations, 0);
        assert_eq!(abelianization(&p), abelianization(&t1.presentation));
        assert!(t1.presentation.generator_count() <= p.generator_count());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = Presentation::parse(&["x", "y", "z"], &["x", "y", "z"]).unwrap();
        let t = tietze_simplify(&p, 1);
        assert!(t.exhausted);
        assert_eq!(t.presentation.generator_count(), 2);
        assert_eq!(tietze_simplify(&p, 0).presentation, Presentation::parse(&["x", "y", "z"], &["x", "y", "z"]).unwrap());
    }

    #[test]
    fn solve_examples() {
        let names = vec!["x".to_string(), "y".to_string()];
        let r = crate::model::parse_word("y x^-1 y^2", &names).unwrap();
        // x = y^3 after rotation
        assert_eq!(solve_for(&r, 0).display_with(&names), "y^3");
        let r = crate::model::parse_word("y x y", &names).unwrap();
        assert_eq!(solve_for(&r, 0).display_with(&names), "y^-2");
    }
}
