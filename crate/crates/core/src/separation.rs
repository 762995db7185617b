//! Finite quotients separating an element from a cyclic subgroup of a RAAG.
//!
//! Every cyclic subgroup `⟨h⟩` of a RAAG is closed in the profinite topology,
//! so for `x ∉ ⟨h⟩` some homomorphism `q` onto a finite group has
//! `q(x) ∉ q(⟨h⟩)`. Nothing bounds the size of that group, so the search here
//! is budgeted and may come back inconclusive. It runs in three phases:
//!
//! 1. cyclic quotients `Z/p` (`p = 2, 3, 5, 7`) of the abelianization,
//! 2. exhaustive assignments of generators to permutations of degree
//!    `2..=max_degree` that respect the commutation relators,
//! 3. seeded random assignments up to degree 8.
//!
//! Generators that occur in neither `h` nor `x` are always sent to the
//! identity, which satisfies every relator.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Perm;
use crate::words::{normal_form, words_equal, Word};

pub const ABELIAN_MODULI: [usize; 4] = [2, 3, 5, 7];
pub const RANDOM_MAX_DEGREE: usize = 8;
const RANDOM_RETRIES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest permutation degree tried exhaustively.
    pub max_degree: usize,
    /// Candidate assignments evaluated across the exhaustive and random phases.
    pub max_candidates: u64,
    pub seed: u64,
    pub time_cap: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 5,
            max_candidates: 1_000_000,
            seed: 0x5241_4147, // "RAAG"
            time_cap: Duration::from_secs(10),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Abelian { modulus: usize },
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotientWitness {
    pub degree: usize,
    /// Image of every generator, in graph vertex order.
    pub images: Vec<(String, Perm)>,
    pub qx: Perm,
    /// `q(h)^e` for `e = 0 .. order(q(h))`, i.e. the whole image of `⟨h⟩`.
    pub qh_powers: Vec<Perm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Found {
        witness: FiniteQuotientWitness,
        phase: Phase,
        candidates: u64,
    },
    /// The budget ran out. This says nothing about separability.
    Inconclusive { candidates: u64, timed_out: bool },
}

impl Separation {
    pub fn witness(&self) -> Option<&FiniteQuotientWitness> {
        match self {
            Separation::Found { witness, .. } => Some(witness),
            Separation::Inconclusive { .. } => None,
        }
    }
}

fn eval(images: &[Perm], inverses: &[Perm], w: &Word, degree: usize) -> Perm {
    w.letters()
        .iter()
        .fold(Perm::identity(degree), |acc, l| {
            let p = if l.inverse {
                &inverses[l.generator]
            } else {
                &images[l.generator]
            };
            acc.mul(p)
        })
}

impl FiniteQuotientWitness {
    fn build(g: &Graph, images: Vec<Perm>, h: &Word, x: &Word) -> Option<Self> {
        let degree = images.first().map_or(1, Perm::degree);
        let inverses: Vec<Perm> = images.iter().map(Perm::inverse).collect();
        let qh = eval(&images, &inverses, h, degree);
        let qx = eval(&images, &inverses, x, degree);
        let qh_powers = qh.powers();
        if qh_powers.contains(&qx) {
            return None;
        }
        Some(FiniteQuotientWitness {
            degree,
            images: g.vertices().iter().cloned().zip(images).collect(),
            qx,
            qh_powers,
        })
    }

    pub fn image_of(&self, generator: &str) -> Option<&Perm> {
        self.images
            .iter()
            .find(|(n, _)| n == generator)
            .map(|(_, p)| p)
    }

    pub fn to_json_value(&self) -> Value {
        let mut images = Map::new();
        for (name, p) in &self.images {
            images.insert(name.clone(), json!(p.images()));
        }
        json!({
            "degree": self.degree,
            "images": images,
            "qx": self.qx.images(),
            "qh_powers": self.qh_powers.iter().map(|p| p.images()).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Oracle(format!("malformed witness JSON: {what}"));
        let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let perm = |v: &Value| -> Result<Perm> {
            let images: Vec<u8> = serde_json::from_value(v.clone()).map_err(|_| bad("permutation"))?;
            Perm::from_images(images).ok_or_else(|| bad("not a permutation"))
        };
        let degree = v["degree"].as_u64().ok_or_else(|| bad("degree"))? as usize;
        let images = v["images"]
            .as_object()
            .ok_or_else(|| bad("images"))?
            .iter()
            .map(|(k, p)| Ok((k.clone(), perm(p)?)))
            .collect::<Result<Vec<_>>>()?;
        let qx = perm(&v["qx"])?;
        let qh_powers = v["qh_powers"]
            .as_array()
            .ok_or_else(|| bad("qh_powers"))?
            .iter()
            .map(perm)
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteQuotientWitness {
            degree,
            images,
            qx,
            qh_powers,
        })
    }
}

/// Re-derives everything a witness claims: the images define a homomorphism
/// (adjacent generators commute), the stored `q(x)` and `q(⟨h⟩)` match the
/// images, and `q(x)` lies outside `q(⟨h⟩)`.
pub fn verify_witness(g: &Graph, h: &Word, x: &Word, w: &FiniteQuotientWitness) -> bool {
    let mut images = Vec::with_capacity(g.vertex_count());
    for name in g.vertices() {
        match w.image_of(name) {
            Some(p) if p.degree() == w.degree => images.push(p.clone()),
            _ => return false,
        }
    }
    if w.images.len() != g.vertex_count() {
        return false;
    }
    if g.edges().any(|(i, j)| !images[i].commutes_with(&images[j])) {
        return false;
    }
    if [h, x]
        .iter()
        .any(|word| word.max_generator().is_some_and(|m| m >= g.vertex_count()))
    {
        return false;
    }
    let inverses: Vec<Perm> = images.iter().map(Perm::inverse).collect();
    let qh = eval(&images, &inverses, h, w.degree);
    let qx = eval(&images, &inverses, x, w.degree);
    let powers = qh.powers();
    qx == w.qx && powers == w.qh_powers && !powers.contains(&qx)
}

/// Looks for `e` with `x = h^e`, trying `0, 1, -1, 2, -2, ...` up to
/// `|e| <= |x| + |h|`. In a RAAG a nontrivial `h` has `|h^e| >= |e|`, so this
/// bound is enough to decide membership in `⟨h⟩`.
pub fn cyclic_exponent(g: &Graph, h: &Word, x: &Word) -> Result<Option<i64>> {
    let hn = normal_form(g, h)?;
    let xn = normal_form(g, x)?;
    if hn.is_empty() {
        return Ok(xn.is_empty().then_some(0));
    }
    let bound = (x.len() + h.len()) as i64;
    for k in 0..=bound {
        for e in if k == 0 { vec![0] } else { vec![k, -k] } {
            if words_equal(g, &xn, &hn.pow(e))? {
                return Ok(Some(e));
            }
        }
    }
    Ok(None)
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Word,
    x: &'a Word,
    support: Vec<usize>,
    candidates: u64,
    limit: u64,
    started: Instant,
    time_cap: Duration,
    timed_out: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.candidates >= self.limit {
            return true;
        }
        if self.candidates % 256 == 0 && self.started.elapsed() >= self.time_cap {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn try_assignment(&mut self, degree: usize, assigned: &[Perm]) -> Option<FiniteQuotientWitness> {
        self.candidates += 1;
        let mut images = vec![Perm::identity(degree); self.g.vertex_count()];
        for (&v, p) in self.support.iter().zip(assigned) {
            images[v] = p.clone();
        }
        FiniteQuotientWitness::build(self.g, images, self.h, self.x)
    }

    fn compatible(&self, assigned: &[Perm], p: &Perm) -> bool {
        let v = self.support[assigned.len()];
        assigned
            .iter()
            .zip(&self.support)
            .all(|(q, &u)| !self.g.adjacent(u, v) || p.commutes_with(q))
    }

    fn exhaustive(
        &mut self,
        degree: usize,
        first: &[Perm],
        all: &[Perm],
        assigned: &mut Vec<Perm>,
    ) -> Option<FiniteQuotientWitness> {
        if assigned.len() == self.support.len() {
            return self.try_assignment(degree, assigned);
        }
        let choices = if assigned.is_empty() { first } else { all };
        for p in choices {
            if self.out_of_budget() {
                return None;
            }
            if !self.compatible(assigned, p) {
                continue;
            }
            assigned.push(p.clone());
            let found = self.exhaustive(degree, first, all, assigned);
            assigned.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn random(&mut self, rng: &mut ChaCha8Rng) -> Option<FiniteQuotientWitness> {
        let mut degree = 3;
        while !self.out_of_budget() {
            let mut assigned: Vec<Perm> = Vec::with_capacity(self.support.len());
            for _ in 0..self.support.len() {
                let mut pick = Perm::identity(degree);
                for _ in 0..RANDOM_RETRIES {
                    let p = random_perm(rng, degree);
                    if self.compatible(&assigned, &p) {
                        pick = p;
                        break;
                    }
                }
                assigned.push(pick);
            }
            if let Some(w) = self.try_assignment(degree, &assigned) {
                return Some(w);
            }
            degree = if degree == RANDOM_MAX_DEGREE { 3 } else { degree + 1 };
        }
        None
    }
}

fn random_perm(rng: &mut ChaCha8Rng, degree: usize) -> Perm {
    let mut v: Vec<u8> = (0..degree as u8).collect();
    for i in (1..degree).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    Perm::from_images(v).unwrap()
}

/// One permutation per cycle type of degree `k`, cycles laid out on
/// consecutive points, longest first.
fn conjugacy_representatives(k: usize) -> Vec<Perm> {
    fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            partitions(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(k, k, &mut Vec::new(), &mut parts);
    let mut reps: Vec<Perm> = parts
        .into_iter()
        .map(|shape| {
            let mut p = Perm::identity(k);
            let mut start = 0;
            for len in shape {
                let pts: Vec<usize> = (start..start + len).collect();
                p = p.mul(&Perm::cycle(k, &pts));
                start += len;
            }
            p
        })
        .collect();
    reps.sort();
    reps
}

fn mod_p(v: i64, p: usize) -> usize {
    v.rem_euclid(p as i64) as usize
}

/// A functional `c` on `(Z/p)^n` with `c·a_h = 0` and `c·a_x != 0`, if any.
fn separating_functional(ah: &[usize], ax: &[usize], p: usize) -> Option<Vec<usize>> {
    let n = ah.len();
    let dot = |c: &[usize], a: &[usize]| c.iter().zip(a).map(|(x, y)| x * y).sum::<usize>() % p;
    match ah.iter().position(|&a| a != 0) {
        None => ax.iter().position(|&a| a != 0).map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        }),
        Some(j) => (0..n).filter(|&i| i != j).find_map(|i| {
            let mut c = vec![0; n];
            c[i] = ah[j];
            c[j] = (p - ah[i]) % p;
            (dot(&c, ax) != 0).then_some(c)
        }),
    }
}

fn abelian_phase(g: &Graph, h: &Word, x: &Word) -> Option<(FiniteQuotientWitness, usize)> {
    let n = g.vertex_count();
    let sh = h.exponent_sums(n);
    let sx = x.exponent_sums(n);
    for p in ABELIAN_MODULI {
        let ah: Vec<usize> = sh.iter().map(|&e| mod_p(e, p)).collect();
        let ax: Vec<usize> = sx.iter().map(|&e| mod_p(e, p)).collect();
        if let Some(c) = separating_functional(&ah, &ax, p) {
            let gen = Perm::cycle(p, &(0..p).collect::<Vec<_>>());
            let images: Vec<Perm> = c.iter().map(|&k| gen.powers()[k].clone()).collect();
            if let Some(w) = FiniteQuotientWitness::build(g, images, h, x) {
                return Some((w, p));
            }
        }
    }
    None
}

/// Searches for a finite permutation quotient separating `x` from `⟨h⟩`.
///
/// Fails with [`Error::NotOutside`] when `x` is a power of `h`.
pub fn separate_cyclic(g: &Graph, h: &Word, x: &Word, budget: &Budget) -> Result<Separation> {
    if let Some(e) = cyclic_exponent(g, h, x)? {
        return Err(Error::NotOutside(e));
    }
    if let Some((witness, modulus)) = abelian_phase(g, h, x) {
        return Ok(Separation::Found {
            witness,
            phase: Phase::Abelian { modulus },
            candidates: 0,
        });
    }

    let mut support: Vec<usize> = h
        .letters()
        .iter()
        .chain(x.letters())
        .map(|l| l.generator)
        .collect();
    support.sort_unstable();
    support.dedup();

    let exhaustive_share = budget.max_candidates / 2;
    let mut search = Search {
        g,
        h,
        x,
        support,
        candidates: 0,
        limit: exhaustive_share,
        started: Instant::now(),
        time_cap: budget.time_cap,
        timed_out: budget.time_cap.is_zero(),
    };

    for degree in 2..=budget.max_degree {
        let all = Perm::all(degree);
        let first = conjugacy_representatives(degree);
        if let Some(witness) = search.exhaustive(degree, &first, &all, &mut Vec::new()) {
            return Ok(Separation::Found {
                witness,
                phase: Phase::Exhaustive,
                candidates: search.candidates,
            });
        }
    }

    search.limit = budget.max_candidates;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    if let Some(witness) = search.random(&mut rng) {
        return Ok(Separation::Found {
            witness,
            phase: Phase::Random,
            candidates: search.candidates,
        });
    }
    Ok(Separation::Inconclusive {
        candidates: search.candidates,
        timed_out: search.timed_out,
    })
}
