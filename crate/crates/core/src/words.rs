//! Words, presentations and the word problem for right-angled Artin groups.
//!
//! A [`Word`] stores generator indices, not names; names live in the graph or
//! presentation the word is read against. Letters are ordered `a < a^-1 < b <
//! b^-1 < ...` following generator index, and words compare shortlex.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from `(generator, exponent)` pairs, expanding powers.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(g, e) in powers {
            let l = Letter::new(g, e < 0);
            letters.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        Word(letters)
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: usize, b: usize) -> Self {
        Word(vec![
            Letter::pos(a),
            Letter::pos(b),
            Letter::neg(a),
            Letter::neg(b),
        ])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Cancels adjacent `x x^-1` pairs (reduction in the free group).
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0; generators];
        for l in &self.0 {
            sums[l.generator] += l.sign();
        }
        sums
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Renders with generator names, `x^-1` for inverses, `1` for the identity.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }

    /// Parses whitespace-separated tokens `a`, `a^-1`, `a^3`; `1` is the identity.
    pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::MalformedWord(token.to_string()))?;
                    (b, e)
                }
                None => (token, 1),
            };
            if base.is_empty() {
                return Err(Error::MalformedWord(token.to_string()));
            }
            let generator = names
                .iter()
                .position(|n| n.as_ref() == base)
                .ok_or_else(|| Error::UnknownGenerator(base.to_string()))?;
            if exp.unsigned_abs() > 1_000_000 {
                return Err(Error::MalformedWord(token.to_string()));
            }
            letters.extend(
                std::iter::repeat(Letter::new(generator, exp < 0)).take(exp.unsigned_abs() as usize),
            );
        }
        Ok(Word(letters))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self
                .names
                .get(l.generator)
                .map(|s| s.as_ref())
                .unwrap_or("?");
            if l.inverse {
                write!(f, "{name}^-1")?;
            } else {
                f.write_str(name)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    /// Presentation of the right-angled Artin group on the given generators
    /// with one commutator relator per listed pair, in the given order.
    pub fn commutators(generators: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let relators = pairs.iter().map(|&(a, b)| Word::commutator(a, b)).collect();
        GroupPresentation {
            generators,
            relators,
        }
    }

    fn as_commutator(w: &Word) -> Option<(usize, usize)> {
        match w.letters() {
            [a, b, c, d]
                if !a.inverse
                    && !b.inverse
                    && *c == a.inv()
                    && *d == b.inv()
                    && a.generator != b.generator =>
            {
                Some((a.generator, b.generator))
            }
            _ => None,
        }
    }

    /// The relators as `[x,y]=[y,z]=1` when they are all commutators,
    /// otherwise as a comma-separated word list.
    pub fn relations_string(&self) -> String {
        if self.relators.is_empty() {
            return String::new();
        }
        let pairs: Option<Vec<(usize, usize)>> =
            self.relators.iter().map(Self::as_commutator).collect();
        match pairs {
            Some(pairs) => {
                let parts: Vec<String> = pairs
                    .iter()
                    .map(|&(a, b)| format!("[{},{}]", self.generators[a], self.generators[b]))
                    .collect();
                format!("{}=1", parts.join("="))
            }
            None => self
                .relators
                .iter()
                .map(|r| r.display(&self.generators).to_string())
                .collect::<Vec<_>>()
                .join(", "),
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = self.relations_string();
        if rel.is_empty() {
            write!(f, "⟨{} | ⟩", self.generators.join(", "))
        } else {
            write!(f, "⟨{} | {}⟩", self.generators.join(", "), rel)
        }
    }
}

/// One generator per vertex, one commutator `[g_i, g_j]` per edge with `i < j`,
/// edges in lexicographic order.
pub fn raag_presentation(g: &Graph) -> GroupPresentation {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    GroupPresentation::commutators(g.vertices().to_vec(), &edges)
}

fn check_letters(g: &Graph, w: &Word) -> Result<()> {
    match w.max_generator() {
        Some(m) if m >= g.vertex_count() => Err(Error::UnknownGenerator(format!("#{m}"))),
        _ => Ok(()),
    }
}

fn commute(g: &Graph, x: Letter, y: Letter) -> bool {
    g.adjacent(x.generator, y.generator)
}

/// Freely reduces `w` in the RAAG: a letter cancels against an earlier inverse
/// whenever every letter between them commutes with it.
fn reduce(g: &Graph, w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    'next: for &x in w {
        for p in (0..out.len()).rev() {
            let y = out[p];
            if y.generator == x.generator {
                if y == x.inv() {
                    out.remove(p);
                    continue 'next;
                }
                break;
            }
            if !commute(g, x, y) {
                break;
            }
        }
        out.push(x);
    }
    out
}

/// Lexicographically least rearrangement of a word under commutation of
/// adjacent commuting letters: repeatedly take the least letter that can be
/// shuffled to the front.
fn sort_commuting(g: &Graph, w: Vec<Letter>) -> Vec<Letter> {
    let mut rest = w;
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let x = rest[p];
            let movable = rest[..p]
                .iter()
                .all(|&y| y.generator != x.generator && commute(g, x, y));
            if movable && best.map_or(true, |b| x < rest[b]) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter is always movable");
        out.push(rest.remove(p));
    }
    out
}

/// Shortlex-least word representing the same element of the RAAG of `g`.
pub fn normal_form(g: &Graph, w: &Word) -> Result<Word> {
    check_letters(g, w)?;
    Ok(Word(sort_commuting(g, reduce(g, &w.0))))
}

pub fn words_equal(g: &Graph, w1: &Word, w2: &Word) -> Result<bool> {
    Ok(normal_form(g, w1)? == normal_form(g, w2)?)
}

/// Parses a word against the vertex names of `g`.
pub fn parse_word(g: &Graph, text: &str) -> Result<Word> {
    Word::parse(text, g.vertices())
}

/// Re-indexes a word over the vertices of `from` as a word over the vertices of `to`, by name.
pub fn translate(w: &Word, from: &Graph, to: &Graph) -> Result<Word> {
    w.letters()
        .iter()
        .map(|l| {
            let name = from
                .vertices()
                .get(l.generator)
                .ok_or_else(|| Error::UnknownGenerator(format!("#{}", l.generator)))?;
            let idx = to
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            Ok(Letter::new(idx, l.inverse))
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}
