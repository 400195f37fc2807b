use super::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetEnumeration {
    /// The group has exactly this order (table closed and audited).
    Finite(usize),
    /// Coset limit reached; says nothing about the group.
    Exhausted { defined: usize },
}

const NONE: u32 = u32::MAX;

struct Table {
    cols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    max: usize,
    // first live coset chain is not needed; liveness is parent[c] == c
}

impl Table {
    fn new(cols: usize, max: usize) -> Self {
        Table { cols, rows: vec![NONE; cols], parent: vec![0], max }
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.rows[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.rows[c * self.cols + x] = v;
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Option<()> {
        if self.count() >= self.max {
            return None;
        }
        let d = self.count();
        self.parent.push(d as u32);
        self.rows.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        Some(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = c;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi] = lo as u32;
        queue.push(hi);
    }

    fn coincidence(&mut self, k: usize, l: usize) {
        let mut queue = Vec::new();
        self.merge(k, l, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                if self.get(f, x ^ 1) == e as u32 {
                    self.set(f, x ^ 1, NONE);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != NONE {
                    self.merge(f1, ex as usize, &mut queue);
                } else if fx != NONE {
                    self.merge(e1, fx as usize, &mut queue);
                } else {
                    self.set(e1, x, f1 as u32);
                    self.set(f1, x ^ 1, e1 as u32);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: usize, w: &[usize]) -> Option<()> {
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0, w.len());
        loop {
            while i < j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Some(());
            }
            while j > i && self.get(b, w[j - 1] ^ 1) != NONE {
                b = self.get(b, w[j - 1] ^ 1) as usize;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Some(());
            }
            if j == i + 1 {
                self.set(f, w[i], b as u32);
                self.set(b, w[i] ^ 1, f as u32);
                return Some(());
            }
            self.define(f, w[i])?;
        }
    }
}

fn columns(p: &Presentation) -> Vec<Vec<usize>> {
    p.relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| 2 * l.gen + usize::from(l.inv)).collect())
        .collect()
}

/// Hasse–Lipschitz–Todd enumeration of the cosets of the trivial subgroup.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> CosetEnumeration {
    let cols = 2 * p.generator_count();
    let rels = columns(p);
    let mut t = Table::new(cols, max_cosets.max(1));
    let mut a = 0;
    while a < t.count() {
        if t.alive(a) {
            for r in &rels {
                if !t.alive(a) {
                    break;
                }
                if t.scan_and_fill(a, r).is_none() {
                    return CosetEnumeration::Exhausted { defined: t.count() };
                }
            }
            if t.alive(a) {
                for x in 0..cols {
                    if t.get(a, x) == NONE && t.define(a, x).is_none() {
                        return CosetEnumeration::Exhausted { defined: t.count() };
                    }
                }
            }
        }
        a += 1;
    }
    match audit(&mut t, &rels) {
        Some(n) => CosetEnumeration::Finite(n),
        None => CosetEnumeration::Exhausted { defined: t.count() },
    }
}

/// Closed, consistent, and every relator fixes every coset.
fn audit(t: &mut Table, rels: &[Vec<usize>]) -> Option<usize> {
    let live: Vec<usize> = (0..t.count()).filter(|&c| t.alive(c)).collect();
    for &c in &live {
        for x in 0..t.cols {
            let d = t.get(c, x);
            if d == NONE || !t.alive(d as usize) || t.get(d as usize, x ^ 1) != c as u32 {
                return None;
            }
        }
        for r in rels {
            let mut e = c;
            for &x in r {
                e = t.get(e, x) as usize;
            }
            if e != c {
                return None;
            }
        }
    }
    Some(live.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(gens: &[&str], rels: &[&str]) -> CosetEnumeration {
        todd_coxeter(&Presentation::parse(gens, rels).unwrap(), 100_000)
    }

    #[test]
    fn cyclic_and_trivial() {
        assert_eq!(order(&["x"], &["x"]), CosetEnumeration::Finite(1));
        assert_eq!(order(&["x"], &["x^5"]), CosetEnumeration::Finite(5));
        assert_eq!(todd_coxeter(&Presentation::trivial(), 10), CosetEnumeration::Finite(1));
    }

    #[test]
    fn small_groups() {
        assert_eq!(order(&["a", "b"], &["a^2", "b^3", "(a b)^3"]), CosetEnumeration::Finite(12));
        assert_eq!(order(&["a", "b"], &["a^2", "b^3", "(a b)^5"]), CosetEnumeration::Finite(60));
        assert_eq!(order(&["a", "b"], &["a^4", "b^2", "(a b)^2"]), CosetEnumeration::Finite(8));
        assert_eq!(order(&["x", "y"], &["x^3", "y^3", "[x,y]"]), CosetEnumeration::Finite(9));
    }

    #[test]
    fn classical_trivial_presentation() {
        assert_eq!(order(&["a", "b"], &["a b a^-1 b^-2", "b a b^-1 a^-2"]), CosetEnumeration::Finite(1));
    }

    #[test]
    fn infinite_group_exhausts() {
        let r = todd_coxeter(&Presentation::parse(&["x", "y"], &["[x,y]"]).unwrap(), 500);
        assert!(matches!(r, CosetEnumeration::Exhausted { .. }));
    }
}
