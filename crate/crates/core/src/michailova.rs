//! The subgroup `L_H` of `F_n × F_n` built from a finite presentation
//! `H = ⟨x_1..x_n | r_1..r_m⟩`, and coset enumeration for finite `H`.
//!
//! `L_H` is generated by the diagonal pairs `(x_i, x_i)` and the pairs
//! `(1, r_j)`. Its intersection with the second factor is the normal closure
//! of the relators, so `(u, v) ∈ L_H` exactly when `u` and `v` are equal in
//! `H`. Deciding that needs a word-problem oracle for `H`; there is no uniform
//! one, which is why membership takes the oracle as a parameter.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::MalformedPresentation(
                "at least one generator is required".into(),
            ));
        }
        for (i, g) in generators.iter().enumerate() {
            if !crate::graph::valid_name(g) {
                return Err(Error::MalformedPresentation(format!(
                    "bad generator name `{g}`"
                )));
            }
            if generators[..i].contains(g) {
                return Err(Error::MalformedPresentation(format!(
                    "duplicate generator `{g}`"
                )));
            }
        }
        if relators
            .iter()
            .any(|r| r.max_generator().is_some_and(|m| m >= generators.len()))
        {
            return Err(Error::MalformedPresentation(
                "relator uses an unknown generator".into(),
            ));
        }
        Ok(FinitePresentation {
            generators,
            relators,
        })
    }

    /// Builds a presentation from names and relator strings in word syntax.
    pub fn from_strs(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| Word::parse(r, &gens))
            .collect::<Result<Vec<_>>>()?;
        FinitePresentation::new(gens, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }

    /// Parses `u | v`, each side in word syntax.
    pub fn parse_pair(&self, text: &str) -> Result<PairWord> {
        let (u, v) = text
            .split_once('|')
            .ok_or_else(|| Error::MalformedPair(text.to_string()))?;
        if u.trim().is_empty() || v.trim().is_empty() || v.contains('|') {
            return Err(Error::MalformedPair(text.to_string()));
        }
        Ok(PairWord::new(self.parse_word(u)?, self.parse_word(v)?))
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display(&self.generators).to_string())
            .collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

/// Parses the presentation file format: a `gens: x y` line, then one relator
/// per non-blank, non-`#` line.
pub fn parse_presentation(text: &str) -> Result<FinitePresentation> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedPresentation("missing `gens:` line".into()))?;
    let gens = header
        .strip_prefix("gens:")
        .ok_or_else(|| Error::MalformedPresentation(format!("expected `gens:`, found `{header}`")))?;
    let generators: Vec<String> = gens.split_whitespace().map(String::from).collect();
    let relators = lines
        .map(|l| Word::parse(l, &generators))
        .collect::<Result<Vec<_>>>()?;
    FinitePresentation::new(generators, relators)
}

/// An element `(u, v)` of `F_n × F_n`, both sides freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairWord {
    first: Word,
    second: Word,
}

impl PairWord {
    pub fn new(first: Word, second: Word) -> Self {
        PairWord {
            first: first.free_reduce(),
            second: second.free_reduce(),
        }
    }

    pub fn identity() -> Self {
        PairWord::new(Word::identity(), Word::identity())
    }

    pub fn first(&self) -> &Word {
        &self.first
    }

    pub fn second(&self) -> &Word {
        &self.second
    }

    pub fn mul(&self, other: &PairWord) -> PairWord {
        PairWord::new(
            self.first.concat(&other.first),
            self.second.concat(&other.second),
        )
    }

    pub fn inverse(&self) -> PairWord {
        PairWord::new(self.first.inverse(), self.second.inverse())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PairDisplay { pair: self, names }
    }
}

struct PairDisplay<'a> {
    pair: &'a PairWord,
    names: &'a [String],
}

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.pair.first.display(self.names),
            self.pair.second.display(self.names)
        )
    }
}

/// Generators of `L_H`: the `n` diagonal pairs, then `(1, r_j)` for each relator.
pub fn michailova_generators(h: &FinitePresentation) -> Vec<PairWord> {
    let diagonal = (0..h.rank()).map(|i| {
        let x = Word::from_letters(vec![Letter::pos(i)]);
        PairWord::new(x.clone(), x)
    });
    let relators = h
        .relators
        .iter()
        .map(|r| PairWord::new(Word::identity(), r.clone()));
    diagonal.chain(relators).collect()
}

/// Decides whether a word is trivial in some fixed group.
pub trait WordProblemOracle {
    fn is_trivial(&self, w: &Word) -> Result<bool>;
}

/// Oracle for a free group: a word is trivial iff it freely reduces to nothing.
pub struct FreeGroupOracle;

impl WordProblemOracle for FreeGroupOracle {
    fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(w.free_reduce().is_empty())
    }
}

/// `(u, v) ∈ L_H` iff `u^-1 v` is trivial in `H`.
pub fn lh_contains(
    h: &FinitePresentation,
    p: &PairWord,
    oracle: &impl WordProblemOracle,
) -> Result<bool> {
    let w = p.first.inverse().concat(&p.second);
    if w.max_generator().is_some_and(|m| m >= h.rank()) {
        return Err(Error::UnknownGenerator(format!(
            "#{}",
            w.max_generator().unwrap()
        )));
    }
    oracle.is_trivial(&w)
}

/// Regular permutation action of a finite group on its elements, as
/// produced by coset enumeration over the trivial subgroup. Coset 0 is the
/// identity element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// `forward[g][c]` is the coset `c · x_g`.
    forward: Vec<Vec<u32>>,
    /// `backward[g][c]` is the coset `c · x_g^-1`.
    backward: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.forward.first().map_or(1, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.forward.len()
    }

    /// The permutation of cosets induced by generator `g`.
    pub fn action(&self, g: usize) -> &[u32] {
        &self.forward[g]
    }

    pub fn apply(&self, coset: usize, l: Letter) -> usize {
        let col = if l.inverse {
            &self.backward[l.generator]
        } else {
            &self.forward[l.generator]
        };
        col[coset] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.apply(c, l))
    }

    /// Checks that every generator acts as a bijection with the stored inverse
    /// and that every relator of `h` fixes every coset.
    pub fn is_valid_for(&self, h: &FinitePresentation) -> bool {
        let n = self.coset_count();
        if self.generator_count() != h.rank() {
            return false;
        }
        for (fwd, bwd) in self.forward.iter().zip(&self.backward) {
            if fwd.len() != n || bwd.len() != n {
                return false;
            }
            let mut hit = vec![false; n];
            for c in 0..n {
                let d = fwd[c] as usize;
                if d >= n || hit[d] || bwd[d] as usize != c {
                    return false;
                }
                hit[d] = true;
            }
        }
        h.relators()
            .iter()
            .all(|r| (0..n).all(|c| self.trace(c, r) == c))
    }
}

impl WordProblemOracle for CosetTable {
    fn is_trivial(&self, w: &Word) -> Result<bool> {
        if w.max_generator().is_some_and(|m| m >= self.generator_count()) {
            return Err(Error::UnknownGenerator(format!(
                "#{}",
                w.max_generator().unwrap()
            )));
        }
        Ok(word_trivial_in_h(self, w))
    }
}

/// True iff `w` fixes the identity coset, i.e. `w = 1` in the enumerated group.
pub fn word_trivial_in_h(table: &CosetTable, w: &Word) -> bool {
    table.trace(0, w) == 0
}

const UNDEF: usize = usize::MAX;

/// Working state of an HLT enumeration. Columns `2g` and `2g + 1` hold the
/// action of `x_g` and `x_g^-1`.
struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_cosets: usize,
    queue: Vec<usize>,
}

fn col(l: Letter) -> usize {
    2 * l.generator + l.inverse as usize
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl Enumerator {
    fn new(generators: usize, max_cosets: usize) -> Self {
        Enumerator {
            cols: 2 * generators,
            table: vec![vec![UNDEF; 2 * generators]],
            parent: vec![0],
            live: 1,
            max_cosets,
            queue: Vec::new(),
        }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.live >= self.max_cosets {
            return Err(Error::Exhausted(self.max_cosets));
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][x] = d;
        self.table[d][inv_col(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.live -= 1;
            self.queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[dead][x];
                if d == UNDEF {
                    continue;
                }
                self.table[d][inv_col(x)] = UNDEF;
                let mu = self.rep(dead);
                let nu = self.rep(d);
                if self.table[mu][x] != UNDEF {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][inv_col(x)] != UNDEF {
                    let t = self.table[nu][inv_col(x)];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv_col(x)] = mu;
                }
            }
        }
    }

    /// Traces `w` from `start` in both directions, defining cosets as needed,
    /// and records the resulting deduction or coincidence.
    fn scan_and_fill(&mut self, start: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (start, start);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.table[b][inv_col(w[j - 1])] != UNDEF {
                b = self.table[b][inv_col(w[j - 1])];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][inv_col(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        let mut c = 0;
        while c < self.table.len() {
            for r in relators {
                if !self.alive(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.alive(c) {
                for x in 0..self.cols {
                    if self.table[c][x] == UNDEF {
                        self.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn into_table(mut self, generators: usize) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.alive(c)).collect();
        let mut renumber = vec![UNDEF; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            renumber[c] = k;
        }
        let mut forward = vec![vec![0u32; live.len()]; generators];
        let mut backward = vec![vec![0u32; live.len()]; generators];
        for (k, &c) in live.iter().enumerate() {
            for g in 0..generators {
                let f = self.rep(self.table[c][2 * g]);
                let b = self.rep(self.table[c][2 * g + 1]);
                forward[g][k] = renumber[f] as u32;
                backward[g][k] = renumber[b] as u32;
            }
        }
        CosetTable { forward, backward }
    }
}

/// Enumerates cosets of the trivial subgroup of `h` (HLT strategy with
/// immediate coincidence processing). Fails with [`Error::Exhausted`] when more
/// than `max_cosets` cosets would be live at once.
pub fn todd_coxeter(h: &FinitePresentation, max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Exhausted(0));
    }
    let relators: Vec<Vec<usize>> = h
        .relators()
        .iter()
        .map(|r| r.free_reduce().letters().iter().map(|&l| col(l)).collect())
        .collect();
    let mut e = Enumerator::new(h.rank(), max_cosets);
    e.run(&relators)?;
    Ok(e.into_table(h.rank()))
}
