//! Built-in scenarios: curve tables, mapping words and pipelines for the
//! factorizations X, X1–X3, M16–M19, the Matsumoto relations, W_k and the
//! families X(k), X(k,k+1), Z(k).

use std::collections::BTreeMap;

use crate::factorization::{Direction, Factorization, LedgerEntry, RelatorKind, Target};
use crate::fpgroups::{amalgamate, AbelianGroup, Presentation};
use crate::invariants::MinimalityEvidence;
use crate::model::{abelianize_word, parse_pi1_word, parse_word, surface_generator_names, Pi1Word, Provenance, Surface};
use crate::scenario::{
    execute, CurveSpec, Expectations, FactorizationSpec, PresentationSpec, RelatorSpec, Scenario, ScenarioError, Step,
    WordSpec,
};

pub fn worded(name: &str, surface: Surface, word: &str, provenance: Provenance) -> CurveSpec {
    let w = parse_pi1_word(word, surface).expect("fixture words parse");
    let class = abelianize_word(&w, surface);
    CurveSpec {
        name: name.to_string(),
        separating: class.is_zero(),
        homology: class.to_i64_vec().expect("small"),
        pi1_word: Some(word.to_string()),
        boundary: None,
        provenance,
    }
}

pub fn classed(name: &str, homology: Vec<i64>, provenance: Provenance) -> CurveSpec {
    CurveSpec {
        name: name.to_string(),
        separating: homology.iter().all(|&x| x == 0),
        homology,
        pi1_word: None,
        boundary: None,
        provenance,
    }
}

fn unit(genus: usize, gen: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * genus];
    v[gen] = 1;
    v
}

fn g3() -> Surface {
    Surface::new(3, 1)
}

const GENUS3_WORDS: &[(&str, &str)] = &[
    ("B0", "b1 b2"),
    ("B1", "a2^-1 [a3,b3] b2^-1 b1^-1 a1^-1"),
    ("B2", "a2^-1 [a1,b1^-1] a1^-1"),
    ("B0'", "b2 b3"),
    ("B1'", "a3^-1 b3^-1 b2^-1 a2^-1"),
    ("B2'", "b3 a3^-1 b3^-1 a2^-1"),
    ("C", "[a1,b1]"),
    ("C'", "[a3,b3]"),
    ("c1", "a1"),
    ("c3", "a1 a2^-1"),
    ("c5", "a2 a3^-1"),
    ("c7", "a3"),
    ("d", "a1 a3^-1"),
    ("y", "a1 a2^-1 a3"),
    ("a", "a2"),
    ("beta0", "b1 b2 b3"),
    ("beta1", "b1 b2 b3 a3 a1"),
    ("beta2", "b2 b3 a3 b3^-1 a1"),
    ("beta3", "a2 b2 [b3,a3] a2"),
    ("b", "[a1,b1^-1] a2^-1"),
];

/// Genus-3 curves by name. Unknown names panic: callers pass literals.
pub fn genus3_curves(names: &[&str]) -> Vec<CurveSpec> {
    names
        .iter()
        .map(|&n| {
            if let Some((_, w)) = GENUS3_WORDS.iter().find(|(k, _)| *k == n) {
                return worded(n, g3(), w, Provenance::Transcribed);
            }
            let derived = match n {
                "c2" => unit(3, 1),
                "c4" => unit(3, 3),
                "c6" | "b3" => unit(3, 5),
                "z" => unit(3, 2),
                "x" => vec![0; 6],
                _ => panic!("no genus-3 curve `{n}`"),
            };
            classed(n, derived, Provenance::Derived)
        })
        .collect()
}

pub const ALPHA: &str = "c4 c3 B2' c4 c2 c1 B2 c2";
pub const BETA: &str = "c2 c4 c5 B2 c4 c6 c7 B2' c6";
pub const PHI: &str = "b3 beta0 c1";

pub const W_LETTERS: &str = "B0 B1 B2 C B0 B1 B2 B0' B1' B2' C' B0' B1' B2'";
pub const W3_LETTERS: &str = "beta0 beta1 beta2 beta3 a a b b beta0 beta1 beta2 beta3 a a b b";

/// Audited π1 words for some of the conjugated curves. U4 and U8 do not
/// abelianize to their letters' classes and end up as stand-ins.
pub const U_WORDS: &[(&str, &str)] = &[
    ("U4'", "a1b1^-1b2[b3,a3]a2b2^-1b3^-1a3^-1a2b2^-1a2b2^-1b1b2[b3,a3]a2b2^-1a3^-1a2b2^-1"),
    ("U6", "a1^-1a2b2^-1b1^-1a1b1b3a2b2^-1b3a3b3^-1a2b2^-1b1^-1"),
    ("U7", "a1^-1a2b2^-1b1^-1a1b1b3a3a2b2^-1a2^-1a1a2b2^-1b1^-1"),
    (
        "U4",
        "a1^-1a2b1^-1a1b1a2^-1b3a3^-1b3^-1b2^-1a2^-1a1a2b1^-1a1b1a2^-1b3a3^-1b3^-1b2^-1a2^-1a1a2b1^-1a1^-2a2b2b3a3^-1b3^-1a2^2b1^-1a1",
    ),
    ("U8", "a1^-1a2b2a2^-1a3^-1a2b2^-1a2^-1a1b3a3^-1b3^-1"),
];

fn ledger(entries: &[(RelatorKind, i64)]) -> Option<Vec<LedgerEntry>> {
    Some(entries.iter().map(|&(relator, multiplicity)| LedgerEntry { relator, multiplicity }).collect())
}

fn w_ledger() -> Option<Vec<LedgerEntry>> {
    ledger(&[(RelatorKind::MatsumotoEven, 2), (RelatorKind::Separating, -2)])
}

fn word(name: &str, letters: &str) -> WordSpec {
    WordSpec { name: name.into(), letters: letters.into() }
}

fn fact(name: &str, letters: &str, target: Target, decomposition: Option<Vec<LedgerEntry>>) -> FactorizationSpec {
    FactorizationSpec { name: name.into(), letters: letters.into(), target, decomposition }
}

fn presentation(name: &str) -> PresentationSpec {
    PresentationSpec {
        name: name.into(),
        generators: None,
        surface_relator: true,
        vanishing_cycles: true,
        omit: vec![],
        words: BTreeMap::new(),
        relators: vec![],
        witness: vec![],
    }
}

fn pairs<'a>(list: impl IntoIterator<Item = (&'a str, &'a str)>) -> Vec<(String, String)> {
    list.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Adjacent swaps taking `from` to `to` (equal multisets), offset by `base`.
pub fn sort_swaps<S: AsRef<str>, T: AsRef<str>>(from: &[S], to: &[T], base: usize) -> Vec<usize> {
    let mut cur: Vec<&str> = from.iter().map(AsRef::as_ref).collect();
    let mut out = Vec::new();
    for (p, want) in to.iter().enumerate() {
        let j = p + cur[p..].iter().position(|c| *c == want.as_ref()).expect("same letters");
        for k in (p..j).rev() {
            cur.swap(k, k + 1);
            out.push(base + k);
        }
    }
    out
}

/// Letter names of a slot after running the scenario's pipeline so far.
pub fn slot_letters(s: &Scenario, slot: &str) -> Vec<String> {
    let ex = execute(s).expect("fixture pipeline runs");
    match ex.slots.get(slot) {
        Some(crate::scenario::Slot::Concrete(f)) => f.curve_names(),
        _ => panic!("slot {slot} is not a factorization"),
    }
}

fn expect(letters: usize, separating: usize, e: i64, sigma: i64, h1: AbelianGroup, b2plus: i64) -> Expectations {
    Expectations {
        letters: Some(letters),
        nonseparating: Some(letters - separating),
        separating: Some(separating),
        e: Some(e),
        sigma: Some(sigma),
        c1sq: Some(2 * e + 3 * sigma),
        b2plus: Some(b2plus),
        b2minus: Some(b2plus - sigma),
        h1: Some(h1),
        ..Default::default()
    }
}

fn label(p: i64, q: i64) -> Option<String> {
    Some(format!("{p} CP2 # {q} CP2bar"))
}

// ---------------------------------------------------------------- X family

const WV_MOVES: &[(usize, Direction)] = &[
    (5, Direction::Right),
    (4, Direction::Right),
    (3, Direction::Right),
    (1, Direction::Right),
    (0, Direction::Right),
    (2, Direction::Right),
    (1, Direction::Right),
    (9, Direction::Left),
    (10, Direction::Left),
    (11, Direction::Left),
];

fn x_scenario(name: &str, extra: &[&str]) -> Scenario {
    let mut curves = vec!["B0", "B1", "B2", "B0'", "B1'", "B2'", "C", "C'"];
    curves.extend_from_slice(extra);
    Scenario {
        name: name.into(),
        surface: g3(),
        curves: genus3_curves(&curves),
        disjoint_pairs: vec![],
        words: vec![],
        factorizations: vec![fact("W", W_LETTERS, Target::boundary(1, 1), w_ledger())],
        pipeline: vec![],
        presentations: vec![presentation("cycles")],
        expectations: Expectations::default(),
    }
}

pub fn build_x() -> Scenario {
    let mut s = x_scenario("X", &[]);
    s.pipeline.push(Step::Cap { on: "W".into(), index: 1, into: None });
    s.expectations = Expectations {
        pi1_trivial: Some(false),
        minimality: Some(MinimalityEvidence::Unknown),
        ..expect(14, 2, 6, -6, AbelianGroup::free(2), 1)
    };
    s
}

/// W rewritten as V · t_{B2'}^2 t_{B2}^2 with the V letters named V1..V10.
fn push_wv(s: &mut Scenario) {
    s.pipeline.push(Step::Hurwitz { on: "W".into(), moves: WV_MOVES.to_vec(), into: Some("WV".into()) });
    s.pipeline.push(Step::CyclicShift { on: "WV".into(), shift: 12, into: None });
    let got = slot_letters(s, "WV");
    let renames = got[..10].iter().enumerate().map(|(i, n)| (n.clone(), format!("V{}", i + 1))).collect();
    s.pipeline.push(Step::Rename { on: "WV".into(), pairs: renames, into: None });
}

const CHAIN: [&str; 4] = ["c1", "c3", "c5", "c7"];

/// X1 before capping, left in slot "X".
fn x1_uncapped(name: &str) -> Scenario {
    let mut s = x_scenario(name, &["c1", "c2", "c3", "c4", "c5", "c6", "c7", "d", "y", "a"]);
    s.words = vec![word("alpha", ALPHA), word("beta", BETA)];
    for (i, a) in CHAIN.iter().enumerate() {
        for b in &CHAIN[i + 1..] {
            s.disjoint_pairs.push((a.to_string(), b.to_string()));
        }
    }
    push_wv(&mut s);
    s.pipeline.push(Step::Conjugate { on: "WV".into(), word: "alpha".into(), into: Some("Wa".into()) });
    s.pipeline.push(Step::CyclicShift { on: "WV".into(), shift: 4, into: Some("Wr".into()) });
    s.pipeline.push(Step::FiberSum { left: "Wa".into(), right: "Wr".into(), gluing: Some("beta".into()), into: "X".into() });
    s.pipeline.push(Step::Identify {
        on: "X".into(),
        pairs: pairs([("alpha(B2')", "c3"), ("alpha(B2)", "c1"), ("beta(B2')", "c7"), ("beta(B2)", "c5")]),
        into: None,
    });
    let mut renames = Vec::new();
    for i in 1..=10 {
        renames.push((format!("alpha(V{i})"), format!("U{i}")));
        renames.push((format!("beta(V{i})"), format!("U{i}'")));
    }
    s.pipeline.push(Step::Rename { on: "X".into(), pairs: renames, into: None });
    let got = slot_letters(&s, "X");
    let want = ["c1", "c1", "c3", "c3", "c5", "c5", "c7", "c7"];
    s.pipeline.push(Step::Reorder { on: "X".into(), swaps: sort_swaps(&got[10..18], &want, 10), into: None });
    s.pipeline.push(Step::CyclicShift { on: "X".into(), shift: 10, into: None });
    let p = &mut s.presentations[0];
    p.words = U_WORDS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    s
}

fn lantern_dya(s: &mut Scenario, start: usize, certificate: Vec<usize>) {
    s.pipeline.push(Step::Substitute {
        on: "X".into(),
        relator: RelatorKind::Lantern,
        start,
        certificate,
        removed: names(&CHAIN),
        inserted: names(&["d", "y", "a"]),
        into: None,
    });
}

/// X1, X2, X3: `i` lantern substitutions after the fiber sum.
pub fn build_xi(i: usize) -> Scenario {
    assert!((1..=3).contains(&i), "X1, X2 and X3 only");
    let mut s = x1_uncapped(&format!("X{i}"));
    if i >= 2 {
        let from = ["c1", "c1", "c3", "c3", "c5", "c5", "c7", "c7"];
        let to = ["c1", "c3", "c5", "c7", "c1", "c3", "c5", "c7"];
        lantern_dya(&mut s, 20, sort_swaps(&from, &to, 20));
    }
    if i == 3 {
        lantern_dya(&mut s, 23, vec![]);
    }
    s.pipeline.push(Step::Cap { on: "X".into(), index: 1, into: None });
    let i = i as i64;
    let n = (29 - i) as usize;
    s.expectations = Expectations {
        label: label(3, 16 - i),
        pi1_trivial: Some(true),
        minimality: Some(if i == 1 { MinimalityEvidence::FiberSumDecomposition } else { MinimalityEvidence::LanternBlowdownChain }),
        ..expect(n, 4, 21 - i, -13 + i, AbelianGroup::trivial(), 3)
    };
    s
}

// ---------------------------------------------------------------- M family

fn m_scenario(name: &str, extra: &[&str]) -> Scenario {
    let mut curves = vec!["beta0", "beta1", "beta2", "beta3", "a", "b", "b3", "c1"];
    curves.extend_from_slice(extra);
    let mut p = presentation("cycles");
    p.witness = names(&["surface", "beta0", "beta1", "beta2", "beta3", "a", "b"]);
    Scenario {
        name: name.into(),
        surface: g3(),
        curves: genus3_curves(&curves),
        disjoint_pairs: pairs([("a", "b")]),
        words: vec![word("phi", PHI)],
        factorizations: vec![fact("W3", W3_LETTERS, Target::boundary(1, 1), ledger(&[(RelatorKind::MatsumotoOdd, 1)]))],
        pipeline: vec![],
        presentations: vec![p],
        expectations: Expectations::default(),
    }
}

fn m_expect(letters: usize, separating: usize, e: i64, sigma: i64, minimality: MinimalityEvidence) -> Expectations {
    Expectations {
        label: label(3, 3 - sigma),
        pi1_trivial: Some(true),
        minimality: Some(minimality),
        ..expect(letters, separating, e, sigma, AbelianGroup::trivial(), 3)
    }
}

fn m19_sum(s: &mut Scenario) {
    s.pipeline.push(Step::FiberSum { left: "W3".into(), right: "W3".into(), gluing: Some("phi".into()), into: "M".into() });
    s.pipeline.push(Step::Identify { on: "M".into(), pairs: pairs([("phi(beta0)", "c1")]), into: None });
}

fn cap_m(s: &mut Scenario) {
    s.pipeline.push(Step::Cap { on: "M".into(), index: 1, into: None });
}

pub fn build_m19() -> Scenario {
    let mut s = m_scenario("M19", &[]);
    m19_sum(&mut s);
    cap_m(&mut s);
    s.expectations = m_expect(32, 0, 24, -16, MinimalityEvidence::FiberSumDecomposition);
    s
}

pub fn build_m18() -> Scenario {
    let mut s = m_scenario("M18", &["c3", "C", "B2"]);
    m19_sum(&mut s);
    s.pipeline.push(Step::Reorder { on: "M".into(), swaps: vec![13], into: None });
    let p: Vec<String> =
        ["beta1", "beta2", "beta3", "a", "a", "b", "b"].iter().map(|n| format!("phi({n})")).collect();
    let mut removed = p.clone();
    removed.push("c1".into());
    let mut inserted = vec!["c1".to_string()];
    inserted.extend(p);
    s.pipeline.push(Step::Substitute {
        on: "M".into(),
        relator: RelatorKind::Commutation,
        start: 17,
        certificate: vec![],
        removed,
        inserted,
        into: None,
    });
    s.pipeline.push(Step::Substitute {
        on: "M".into(),
        relator: RelatorKind::Lantern,
        start: 14,
        certificate: vec![],
        removed: names(&["a", "b", "c1", "c1"]),
        inserted: names(&["c3", "C", "B2"]),
        into: None,
    });
    cap_m(&mut s);
    s.expectations = m_expect(31, 1, 23, -15, MinimalityEvidence::LanternBlowdownChain);
    s
}

fn m17_sum(s: &mut Scenario) {
    s.factorizations.push(fact("W", W_LETTERS, Target::boundary(1, 1), w_ledger()));
    s.disjoint_pairs.push(("C".into(), "C'".into()));
    s.pipeline.push(Step::Reorder { on: "W3".into(), swaps: vec![13, 12, 14, 13], into: Some("W3r".into()) });
    let moves = vec![
        (2, Direction::Right),
        (1, Direction::Right),
        (0, Direction::Right),
        (10, Direction::Left),
        (11, Direction::Left),
        (12, Direction::Left),
    ];
    s.pipeline.push(Step::Hurwitz { on: "W".into(), moves, into: Some("Wr".into()) });
    s.pipeline.push(Step::CyclicShift { on: "Wr".into(), shift: 1, into: None });
    s.pipeline.push(Step::Reorder { on: "Wr".into(), swaps: vec![0], into: None });
    s.pipeline.push(Step::FiberSum { left: "W3r".into(), right: "Wr".into(), gluing: None, into: "M".into() });
}

const W_CURVES: [&str; 8] = ["B0", "B1", "B2", "B0'", "B1'", "B2'", "C", "C'"];

pub fn build_m17() -> Scenario {
    let mut s = m_scenario("M17", &W_CURVES);
    m17_sum(&mut s);
    cap_m(&mut s);
    s.expectations = m_expect(30, 2, 22, -14, MinimalityEvidence::FiberSumDecomposition);
    s
}

pub fn build_m16() -> Scenario {
    let mut extra = W_CURVES.to_vec();
    extra.extend(["x", "z"]);
    let mut s = m_scenario("M16", &extra);
    m17_sum(&mut s);
    s.pipeline.push(Step::Substitute {
        on: "M".into(),
        relator: RelatorKind::Lantern,
        start: 14,
        certificate: vec![],
        removed: names(&["a", "a", "C", "C'"]),
        inserted: names(&["x", "b", "z"]),
        into: None,
    });
    cap_m(&mut s);
    s.presentations[0].omit = names(&["x", "z"]);
    s.expectations = m_expect(29, 1, 21, -13, MinimalityEvidence::LanternBlowdownChain);
    s
}

// ------------------------------------------------- W_k family

fn bs(from: usize, to: usize) -> String {
    (from..=to).map(|j| format!("b{j}")).collect::<Vec<_>>().join(" ")
}

/// `c_j = [a1,b1] ... [aj,bj]`.
pub fn c_word(j: usize) -> String {
    (1..=j).map(|i| format!("[a{i},b{i}]")).collect::<Vec<_>>().join(" ")
}

/// Chain words B_0..B_{2k} and C = c_k, shifted by `off` genera, with `suffix` on the names.
fn chain_words(k: usize, off: usize, suffix: &str) -> Vec<(String, String)> {
    let mut out = vec![(format!("B0{suffix}"), bs(off + 1, off + 2 * k))];
    let a = |i: usize| format!("a{}", off + i);
    for i in 1..=k {
        let top = 2 * k + 1 - i;
        out.push((
            format!("B{}{suffix}", 2 * i - 1),
            format!("{} {} {} {}", a(i), bs(off + i, off + top), c_word(off + top), a(top)),
        ));
        if i < k {
            out.push((
                format!("B{}{suffix}", 2 * i),
                format!("{} {} {} {}", a(i), bs(off + i + 1, off + 2 * k - i), c_word(off + 2 * k - i), a(top)),
            ));
        }
    }
    out.push((format!("B{}{suffix}", 2 * k), format!("{} {} {}", a(k), c_word(off + k), a(k + 1))));
    out.sort_by_key(|(n, _)| n[1..n.len() - suffix.len()].parse::<usize>().expect("index"));
    out.push((format!("C{suffix}"), c_word(off + k)));
    out
}

fn chain_letters(k: usize, suffix: &str) -> String {
    let bs: Vec<String> = (0..=2 * k).map(|i| format!("B{i}{suffix}")).collect();
    let half = bs.join(" ");
    format!("{half} C{suffix} {half}")
}

/// W_k on Σ_{3k}^1 with target the boundary twist.
pub fn wk_scenario(k: usize) -> Scenario {
    assert!(k >= 1);
    let surface = Surface::new(3 * k, 1);
    let mut curves: Vec<CurveSpec> = chain_words(k, 0, "")
        .into_iter()
        .chain(chain_words(k, k, "'"))
        .map(|(n, w)| worded(&n, surface, &w, Provenance::Transcribed))
        .collect();
    // C' is c_{2k}, not the shifted c_k.
    let cp = curves.iter_mut().find(|c| c.name == "C'").expect("C'");
    *cp = worded("C'", surface, &c_word(2 * k), Provenance::Transcribed);
    let letters = format!("{} {}", chain_letters(k, ""), chain_letters(k, "'"));
    let mut p = presentation("cycles");
    p.surface_relator = false;
    p.relators.push(RelatorSpec { label: "surface".into(), word: c_word(3 * k), trusted: true });
    Scenario {
        name: format!("W_{k}"),
        surface,
        curves,
        disjoint_pairs: vec![],
        words: vec![],
        factorizations: vec![fact("W", &letters, Target::boundary(1, 1), w_ledger())],
        pipeline: vec![],
        presentations: vec![p],
        expectations: Expectations::default(),
    }
}

fn cap_w(s: &mut Scenario) {
    s.pipeline.push(Step::Cap { on: "W".into(), index: 1, into: None });
}

pub fn build_xk(k: usize) -> Scenario {
    let mut s = wk_scenario(k);
    s.name = format!("X({k})");
    cap_w(&mut s);
    let k = k as i64;
    s.expectations = Expectations {
        pi1_trivial: Some(false),
        minimality: Some(MinimalityEvidence::Unknown),
        ..expect((8 * k + 6) as usize, 2, 10 - 4 * k, -6, AbelianGroup::free(2 * k as usize), 1)
    };
    s
}

pub fn build_xkk1(k: usize) -> Scenario {
    let mut s = wk_scenario(k);
    s.name = format!("X({k},{})", k + 1);
    cap_w(&mut s);
    s.pipeline.push(Step::SymbolicSum {
        summands: vec!["W".to_string(); k + 1],
        gluings: (1..=k).map(|i| format!("f_{i}")).collect(),
        into: "S".into(),
    });
    for i in 1..=k {
        for g in ["a", "b"] {
            s.presentations[0].relators.push(RelatorSpec { label: format!("{g}{i}"), word: format!("{g}{i}"), trusted: true });
        }
    }
    let k = k as i64;
    let e = 8 * k * k + 2 * k + 10;
    let sigma = -6 * k - 6;
    let b2plus = 4 * k * k - 2 * k + 1;
    let n = ((k + 1) * (8 * k + 6)) as usize;
    s.expectations = Expectations {
        label: label(b2plus, b2plus - sigma),
        pi1_trivial: Some(true),
        minimality: Some(MinimalityEvidence::FiberSumDecomposition),
        coset_trivial: (k <= 2).then_some(true),
        ..expect(n, 2 * (k as usize + 1), e, sigma, AbelianGroup::trivial(), b2plus)
    };
    s
}

/// Relators of the genus-3k piece glued to X(k) in Z(k), on generators
/// al1..al{3k}, be1..be{3k}, c, d.
pub fn y_presentation(k: usize) -> Presentation {
    let n = 3 * k;
    let mut gens: Vec<String> = (1..=n).map(|i| format!("al{i}")).collect();
    gens.extend((1..=n).map(|i| format!("be{i}")));
    gens.extend(["c".to_string(), "d".to_string()]);
    let mut rels = Vec::new();
    for i in 1..=k {
        rels.push(format!("[al{i}^-1,d] be{}^-1", 2 * k - 1 + i));
    }
    for i in k + 1..n {
        rels.push(format!("[al{i}^-1,d] be{}^-1", i - k));
    }
    rels.push(format!("[c^-1,be{n}]^-1 d^-1"));
    for i in 1..n {
        rels.push(format!("[be{i}^-1,d^-1] al{i}^-1"));
    }
    rels.push(format!("[d^-1,be{n}^-1] c^-1"));
    for j in 1..n {
        rels.push(format!("[be{j},c]"));
        rels.push(format!("[al{j},c]"));
    }
    rels.push(format!("[al{n},d]"));
    rels.push(format!("[al{n},c]"));
    rels.push((1..=n).map(|i| format!("[al{i},be{i}]")).collect::<Vec<_>>().join(" "));
    rels.push("[c,d]".into());
    let words = rels.iter().map(|r| parse_word(r, &gens).expect("relator parses")).collect();
    Presentation::new(gens, words).expect("generators in range")
}

pub fn build_zk(k: usize) -> Scenario {
    let mut s = wk_scenario(k);
    s.name = format!("Z({k})");
    cap_w(&mut s);
    s.pipeline.push(Step::GeneralizedSum { on: "W".into(), e: 0, sigma: 0, into: "Z".into() });
    let g = 3 * k;
    let xgens = surface_generator_names(g);
    let mut xrels = vec![parse_word(&c_word(g), &xgens).expect("c word")];
    for c in &s.curves {
        xrels.push(parse_word(c.pi1_word.as_deref().expect("worded"), &xgens).expect("curve word"));
    }
    let xp = Presentation::new(xgens, xrels).expect("x presentation");
    let idents: Vec<(Pi1Word, Pi1Word)> = (0..2 * g).map(|i| (Pi1Word::generator(i), Pi1Word::generator(i))).collect();
    let z = amalgamate(&xp, &y_presentation(k), &idents).expect("amalgam");
    s.presentations = vec![PresentationSpec {
        name: "amalgam".into(),
        generators: Some(z.generators().to_vec()),
        surface_relator: false,
        vanishing_cycles: false,
        omit: vec![],
        words: BTreeMap::new(),
        relators: z
            .relator_strings()
            .into_iter()
            .enumerate()
            .map(|(i, word)| RelatorSpec { label: format!("r{}", i + 1), word, trusted: true })
            .collect(),
        witness: vec![],
    }];
    let k = k as i64;
    let e = 6 + 8 * k;
    s.expectations = Expectations {
        e: Some(e),
        sigma: Some(-6),
        c1sq: Some(2 * e - 18),
        h1: Some(AbelianGroup::trivial()),
        b2plus: Some(4 * k - 1),
        b2minus: Some(4 * k + 5),
        label: label(4 * k - 1, 4 * k + 5),
        pi1_trivial: Some(true),
        minimality: Some(MinimalityEvidence::Unknown),
        ..Default::default()
    };
    s
}

// ---------------------------------------------------------- Matsumoto

pub fn matsumoto_scenario(g: usize) -> Result<Scenario, String> {
    if g == 3 {
        let mut s = m_scenario("Matsumoto(3)", &[]);
        s.words.clear();
        s.curves.retain(|c| !["b3", "c1"].contains(&c.name.as_str()));
        s.presentations[0].witness.clear();
        s.pipeline.push(Step::Cap { on: "W3".into(), index: 1, into: None });
        s.expectations = Expectations {
            pi1_trivial: Some(false),
            minimality: Some(MinimalityEvidence::Unknown),
            ..expect(16, 0, 8, -8, AbelianGroup::free(2), 1)
        };
        return Ok(s);
    }
    if g == 0 || g % 2 == 1 {
        return Err(format!("Matsumoto relation built for even genus and genus 3, not {g}"));
    }
    let k = g / 2;
    let surface = Surface::new(g, 2);
    let curves = chain_words(k, 0, "").into_iter().map(|(n, w)| worded(&n, surface, &w, Provenance::Transcribed)).collect();
    let half: Vec<String> = (0..=g).map(|i| format!("B{i}")).collect();
    let letters = format!("{0} C {0} C", half.join(" "));
    let mut s = Scenario {
        name: format!("Matsumoto({g})"),
        surface,
        curves,
        disjoint_pairs: vec![],
        words: vec![],
        factorizations: vec![fact(
            "M",
            &letters,
            Target::BoundaryMultitwist(vec![(1, 1), (2, 1)]),
            ledger(&[(RelatorKind::MatsumotoEven, 1)]),
        )],
        pipeline: vec![],
        presentations: vec![presentation("cycles")],
        expectations: Expectations::default(),
    };
    s.presentations[0].surface_relator = false;
    s.presentations[0].relators.push(RelatorSpec { label: "surface".into(), word: c_word(g), trusted: true });
    for _ in 0..2 {
        s.pipeline.push(Step::Cap { on: "M".into(), index: 1, into: None });
    }
    let gi = g as i64;
    s.expectations = Expectations {
        pi1_trivial: Some(false),
        minimality: Some(MinimalityEvidence::Unknown),
        ..expect(2 * (g + 2), 2, 8 - 2 * gi, -4, AbelianGroup::free(g), 1)
    };
    Ok(s)
}

fn run_factorization(s: &Scenario) -> Result<Factorization, ScenarioError> {
    let ex = execute(s)?;
    ex.factorization().cloned().ok_or_else(|| ScenarioError::NotConcrete {
        scenario: s.name.clone(),
        slot: ex.result.clone().unwrap_or_default(),
    })
}

/// The capped Matsumoto factorization on the closed genus-g surface.
pub fn build_matsumoto(g: usize) -> Result<Factorization, String> {
    let s = matsumoto_scenario(g)?;
    run_factorization(&s).map_err(|e| e.to_string())
}

/// W_k on Σ_{3k}^1, uncapped.
pub fn build_wk(k: usize) -> Factorization {
    run_factorization(&wk_scenario(k)).expect("W_k builds")
}

// ------------------------------------------------------------- registry

pub fn scenario_names() -> Vec<String> {
    let mut v = names(&["X", "X1", "X2", "X3", "M19", "M18", "M17", "M16"]);
    v.extend([2, 3, 4, 6].iter().map(|g| format!("Matsumoto({g})")));
    v.extend((1..=5).map(|k| format!("X({k})")));
    v.extend((1..=3).map(|k| format!("X({k},{})", k + 1)));
    v.extend((1..=3).map(|k| format!("Z({k})")));
    v
}

fn arg(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
}

pub fn build_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    let missing = || ScenarioError::NoSuchScenario(name.to_string());
    if !scenario_names().iter().any(|n| n == name) {
        return Err(missing());
    }
    Ok(match name {
        "X" => build_x(),
        "X1" => build_xi(1),
        "X2" => build_xi(2),
        "X3" => build_xi(3),
        "M19" => build_m19(),
        "M18" => build_m18(),
        "M17" => build_m17(),
        "M16" => build_m16(),
        _ => {
            if let Some(g) = arg(name, "Matsumoto(") {
                matsumoto_scenario(g).map_err(|_| missing())?
            } else if let Some(k) = arg(name, "Z(") {
                build_zk(k)
            } else if let Some(k) = arg(name, "X(") {
                build_xk(k)
            } else {
                let k = name.strip_prefix("X(").and_then(|r| r.split(',').next()).and_then(|k| k.parse().ok());
                build_xkk1(k.ok_or_else(missing)?)
            }
        }
    })
}

pub fn all_scenarios() -> Vec<Scenario> {
    scenario_names().iter().map(|n| build_scenario(n).expect("registered")).collect()
}
