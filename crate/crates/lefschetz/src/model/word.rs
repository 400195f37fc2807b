use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::{HomologyClass, Surface};

/// Generator index with an inversion flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in numbered generators.
///
/// On a genus-g surface generator `2(i-1)` is `a_i` and `2(i-1)+1` is `b_i`,
/// matching the homology basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pi1Word {
    letters: Vec<Letter>,
}

impl Pi1Word {
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Pi1Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn identity() -> Self {
        Pi1Word { letters: Vec::new() }
    }

    pub fn generator(gen: usize) -> Self {
        Pi1Word { letters: vec![Letter::new(gen, false)] }
    }

    /// `gen^exp` as a word.
    pub fn power_of(gen: usize, exp: i64) -> Self {
        let l = Letter::new(gen, exp < 0);
        Pi1Word { letters: vec![l; exp.unsigned_abs() as usize] }
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Pi1Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Pi1Word) -> Self {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Pi1Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(x: &Pi1Word, y: &Pi1Word) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// Strips inverse pairs between the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Pi1Word { letters: l[i..j].to_vec() }
    }

    /// Exponent sum of each generator in `0..ngens`. Panics on out-of-range generators.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<BigInt> {
        let mut v = vec![0i64; ngens];
        for l in &self.letters {
            v[l.gen] += l.exponent();
        }
        v.into_iter().map(BigInt::from).collect()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.letters.iter().filter(|l| l.gen == gen).count()
    }

    /// Replace each generator by a word. `images[g]` is the image of generator g.
    pub fn substitute(&self, images: &[Pi1Word]) -> Pi1Word {
        let mut w = Pi1Word::identity();
        for l in &self.letters {
            let img = &images[l.gen];
            if l.inv {
                w = w.concat(&img.inverse());
            } else {
                w = w.concat(img);
            }
        }
        w
    }

    /// Renumber generators; `map[g]` is the new index of generator g.
    pub fn renumber(&self, map: &[usize]) -> Pi1Word {
        Pi1Word::new(self.letters.iter().map(|l| Letter::new(map[l.gen], l.inv)))
    }

    /// Print with run-length exponents, e.g. `a1^2 b1^-1`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = names.get(l.gen).cloned().unwrap_or_else(|| format!("g{}", l.gen));
            let exp = run as i64 * l.exponent();
            if exp == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Pi1Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ngens = self.max_generator().map_or(0, |m| m + 1);
        let names = surface_generator_names(ngens.div_ceil(2));
        write!(f, "{}", self.display_with(&names))
    }
}

/// `a1, b1, ..., ag, bg`.
pub fn surface_generator_names(genus: usize) -> Vec<String> {
    (1..=genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{name}` at byte {offset}")]
    UnknownGenerator { name: String, offset: usize },
    #[error("malformed token at byte {offset}: {detail}")]
    Malformed { offset: usize, detail: String },
    #[error("unbalanced bracket at byte {offset}")]
    Unbalanced { offset: usize },
}

impl WordError {
    pub fn offset(&self) -> usize {
        match self {
            WordError::UnknownGenerator { offset, .. }
            | WordError::Malformed { offset, .. }
            | WordError::Unbalanced { offset } => *offset,
        }
    }
}

/// Parse a word on the standard generators of the closed genus-g surface group.
pub fn parse_pi1_word(text: &str, surface: Surface) -> Result<Pi1Word, WordError> {
    parse_word(text, &surface_generator_names(surface.genus))
}

/// Parse a word over an arbitrary generator table.
///
/// Grammar: `word := item*`, `item := primary ('^' ['{'] ['-'] digits ['}'])?`,
/// `primary := name | '1' | '(' word ')' | '[' word ',' word ']'`.
/// Names match longest-first, so `a1b2` and `a1 b2` parse alike.
pub fn parse_word(text: &str, names: &[String]) -> Result<Pi1Word, WordError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, names };
    let w = p.sequence()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        let c = p.s[p.pos];
        return Err(if c == b')' || c == b']' {
            WordError::Unbalanced { offset: p.pos }
        } else {
            WordError::Malformed { offset: p.pos, detail: format!("unexpected `{}`", c as char) }
        });
    }
    Ok(w)
}

/// Exponent-sum map to homology.
pub fn abelianize_word(w: &Pi1Word, surface: Surface) -> HomologyClass {
    HomologyClass::new(w.exponent_sums(surface.rank()))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    // Stops before ')', ']', ',' or end of input.
    fn sequence(&mut self) -> Result<Pi1Word, WordError> {
        let mut w = Pi1Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') | Some(b']') | Some(b',') => return Ok(w),
                _ => {
                    let item = self.item()?;
                    w = w.concat(&item);
                }
            }
        }
    }

    fn item(&mut self) -> Result<Pi1Word, WordError> {
        let start = self.pos;
        let c = self.peek().unwrap();
        let base = match c {
            b'(' => {
                self.pos += 1;
                let inner = self.sequence()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(WordError::Unbalanced { offset: start });
                }
                self.pos += 1;
                inner
            }
            b'[' => {
                self.pos += 1;
                let x = self.sequence()?;
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b']') => {
                        return Err(WordError::Malformed {
                            offset: self.pos,
                            detail: "commutator needs two arguments".into(),
                        })
                    }
                    _ => return Err(WordError::Unbalanced { offset: start }),
                }
                let y = self.sequence()?;
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(WordError::Unbalanced { offset: start });
                }
                self.pos += 1;
                Pi1Word::commutator(&x, &y)
            }
            b'1' if !self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric()) => {
                self.pos += 1;
                Pi1Word::identity()
            }
            c if c.is_ascii_alphabetic() || c == b'_' => self.name()?,
            c => {
                return Err(WordError::Malformed {
                    offset: start,
                    detail: format!("unexpected `{}`", c as char),
                })
            }
        };
        let exp = self.exponent()?;
        Ok(base.pow(exp))
    }

    fn name(&mut self) -> Result<Pi1Word, WordError> {
        let rest = &self.s[self.pos..];
        let mut best: Option<(usize, usize)> = None;
        for (i, n) in self.names.iter().enumerate() {
            let nb = n.as_bytes();
            if nb.is_empty() || !rest.starts_with(nb) {
                continue;
            }
            // `a1` must not swallow the head of `a12`.
            if nb.last().unwrap().is_ascii_digit()
                && rest.get(nb.len()).is_some_and(|c| c.is_ascii_digit())
            {
                continue;
            }
            if best.is_none_or(|(_, len)| nb.len() > len) {
                best = Some((i, nb.len()));
            }
        }
        match best {
            Some((gen, len)) => {
                self.pos += len;
                Ok(Pi1Word::generator(gen))
            }
            None => {
                let mut end = 0;
                while end < rest.len() && (rest[end].is_ascii_alphabetic() || rest[end] == b'_') {
                    end += 1;
                }
                while end < rest.len() && rest[end].is_ascii_digit() {
                    end += 1;
                }
                Err(WordError::UnknownGenerator {
                    name: String::from_utf8_lossy(&rest[..end]).into_owned(),
                    offset: self.pos,
                })
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, WordError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        let caret = self.pos;
        self.pos += 1;
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(WordError::Malformed { offset: caret, detail: "exponent needs digits".into() });
        }
        let text = std::str::from_utf8(&self.s[digits_start..self.pos]).unwrap();
        let value: i64 = text.parse().map_err(|_| WordError::Malformed {
            offset: digits_start,
            detail: "exponent out of range".into(),
        })?;
        if braced {
            if self.peek() != Some(b'}') {
                return Err(WordError::Unbalanced { offset: caret + 1 });
            }
            self.pos += 1;
        }
        Ok(if neg { -value } else { value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> Surface {
        Surface::closed(3)
    }

    #[test]
    fn b0_has_two_letters() {
        let w = parse_pi1_word("b1 b2", g3()).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(abelianize_word(&w, g3()).to_i64_vec().unwrap(), vec![0, 1, 0, 1, 0, 0]);
    }

    #[test]
    fn free_reduction_on_parse() {
        assert!(parse_pi1_word("a1 a1^-1", g3()).unwrap().is_empty());
    }

    #[test]
    fn b1_word_reduces_to_eight_letters() {
        let w = parse_pi1_word("a2^-1 [a3,b3] b2^-1 b1^-1 a1^-1", g3()).unwrap();
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn b2_prime_class() {
        let w = parse_pi1_word("b3 a3^-1 b3^-1 a2^-1", g3()).unwrap();
        // a3 and a2 each occur once with exponent -1; b3 cancels.
        assert_eq!(abelianize_word(&w, g3()).to_i64_vec().unwrap(), vec![0, 0, -1, 0, -1, 0]);
    }

    #[test]
    fn commutator_abelianizes_to_zero() {
        let w = parse_pi1_word("[a1 b2, b3^-1 a2]", g3()).unwrap();
        assert!(abelianize_word(&w, g3()).is_zero());
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn concatenated_tokens_and_powers() {
        let w = parse_pi1_word("a1^-2a2b2b3a3^-1", g3()).unwrap();
        let v = parse_pi1_word("a1^-1 a1^-1 a2 b2 b3 a3^-1", g3()).unwrap();
        assert_eq!(w, v);
        assert_eq!(parse_pi1_word("a2^{2}", g3()).unwrap().len(), 2);
        assert_eq!(parse_pi1_word("(a1 b1)^-2", g3()).unwrap().len(), 4);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_pi1_word("b1 a4", g3()).unwrap_err();
        assert_eq!(e, WordError::UnknownGenerator { name: "a4".into(), offset: 3 });
        let e = parse_pi1_word("a1 [a2, b2", g3()).unwrap_err();
        assert_eq!(e, WordError::Unbalanced { offset: 3 });
        let e = parse_pi1_word("a1 ) b1", g3()).unwrap_err();
        assert_eq!(e, WordError::Unbalanced { offset: 3 });
        let e = parse_pi1_word("a1 ^x", g3()).unwrap_err();
        assert!(matches!(e, WordError::Malformed { offset: 3, .. }));
        let e = parse_pi1_word("a1 # b1", g3()).unwrap_err();
        assert!(matches!(e, WordError::Malformed { offset: 3, .. }));
        let e = parse_pi1_word("a12", g3()).unwrap_err();
        assert!(matches!(e, WordError::UnknownGenerator { ref name, offset: 0 } if name == "a12"));
    }

    #[test]
    fn custom_names_longest_match() {
        let names: Vec<String> = ["c", "d", "alpha1", "beta1"].iter().map(|s| s.to_string()).collect();
        let w = parse_word("[beta1^-1, d^-1] alpha1^-1", &names).unwrap();
        assert_eq!(w.display_with(&names), "beta1^-1 d^-1 beta1 d alpha1^-1");
    }

    #[test]
    fn print_parse_round_trip() {
        let w = parse_pi1_word("a1 a1 b2^-1 b2^-1 b2^-1 a3", g3()).unwrap();
        let text = w.to_string();
        assert_eq!(text, "a1^2 b2^-3 a3");
        assert_eq!(parse_pi1_word(&text, g3()).unwrap(), w);
        assert_eq!(Pi1Word::identity().to_string(), "1");
        assert!(parse_pi1_word("1", g3()).unwrap().is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let w = parse_pi1_word("a1 b1 a2 b1^-1 a1^-1", g3()).unwrap();
        assert_eq!(w.cyclically_reduced(), parse_pi1_word("a2", g3()).unwrap());
    }
}
