//! Brute-force oracles shared by the integration and acceptance tests. None of
//! these call into the algorithms they are used to check.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use raagsep::{Graph, Letter, Perm, Word};

/// Plain adjacency matrix copy of a graph.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n)
        .map(|i| (0..n).map(|j| g.adjacent(i, j)).collect())
        .collect()
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut s = p.to_vec();
                    s.sort();
                    s.dedup();
                    if s.len() == 4 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Does some ordering of some four vertices induce exactly a P4 or a C4?
pub fn has_p4_or_c4(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let perms = permutations4();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    for p in &perms {
                        let v = p.map(|k| q[k]);
                        let e = |i: usize, j: usize| adj[v[i]][v[j]];
                        let path = e(0, 1) && e(1, 2) && e(2, 3) && !e(0, 2) && !e(1, 3) && !e(0, 3);
                        let square =
                            e(0, 1) && e(1, 2) && e(2, 3) && e(3, 0) && !e(0, 2) && !e(1, 3);
                        if path || square {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Delete a vertex adjacent to all others, split into components, repeat.
/// True iff every branch bottoms out at single vertices.
pub fn dominating_recursion(adj: &[Vec<bool>], verts: &[usize]) -> bool {
    if verts.len() <= 1 {
        return true;
    }
    // components by DFS
    let mut comp_of = vec![usize::MAX; adj.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &s in verts {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut comp = Vec::new();
        comp_of[s] = id;
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in verts {
                if adj[u][w] && comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    stack.push(w);
                }
            }
        }
        comps.push(comp);
    }
    if comps.len() > 1 {
        return comps.iter().all(|c| dominating_recursion(adj, c));
    }
    let all = &comps[0];
    match all
        .iter()
        .find(|&&v| all.iter().all(|&u| u == v || adj[u][v]))
    {
        Some(&d) => {
            let rest: Vec<usize> = all.iter().copied().filter(|&u| u != d).collect();
            dominating_recursion(adj, &rest)
        }
        None => false,
    }
}

fn code(l: Letter) -> u8 {
    (2 * l.generator + l.inverse as usize) as u8
}

/// Breadth-first search over the rewrite graph of a RAAG: delete or insert an
/// adjacent `x x^-1`, swap adjacent letters on adjacent vertices. Words longer
/// than `max(|w1|, |w2|) + 2` are not visited.
pub fn bfs_equal(adj: &[Vec<bool>], w1: &Word, w2: &Word) -> bool {
    let start: Vec<u8> = w1.letters().iter().map(|&l| code(l)).collect();
    let goal: Vec<u8> = w2.letters().iter().map(|&l| code(l)).collect();
    let cap = start.len().max(goal.len()) + 2;
    let letters = 2 * adj.len() as u8;
    let commute = |a: u8, b: u8| adj[(a / 2) as usize][(b / 2) as usize];

    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        if w == goal {
            return true;
        }
        let mut next = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            if w[i] ^ 1 == w[i + 1] {
                let mut v = w.clone();
                v.drain(i..i + 2);
                next.push(v);
            }
            if commute(w[i], w[i + 1]) {
                let mut v = w.clone();
                v.swap(i, i + 1);
                next.push(v);
            }
        }
        if w.len() + 2 <= cap {
            for i in 0..=w.len() {
                for x in 0..letters {
                    let mut v = w.clone();
                    v.splice(i..i, [x, x ^ 1]);
                    next.push(v);
                }
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    false
}

pub fn random_word(rng: &mut impl Rng, generators: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..generators), rng.gen_bool(0.5)))
        .collect()
}

/// Applies random equality-preserving moves to `w`, keeping the length at most `max_len`.
pub fn random_equivalent(rng: &mut impl Rng, adj: &[Vec<bool>], w: &Word, max_len: usize) -> Word {
    let mut v: Vec<Letter> = w.letters().to_vec();
    for _ in 0..rng.gen_range(0..8) {
        match rng.gen_range(0..3) {
            0 if v.len() + 2 <= max_len => {
                let l = Letter::new(rng.gen_range(0..adj.len()), rng.gen_bool(0.5));
                let i = rng.gen_range(0..=v.len());
                v.splice(i..i, [l, l.inv()]);
            }
            1 if v.len() >= 2 => {
                let i = rng.gen_range(0..v.len() - 1);
                if adj[v[i].generator][v[i + 1].generator] {
                    v.swap(i, i + 1);
                }
            }
            _ if v.len() >= 2 => {
                let i = rng.gen_range(0..v.len() - 1);
                if v[i] == v[i + 1].inv() {
                    v.drain(i..i + 2);
                }
            }
            _ => {}
        }
    }
    Word::from_letters(v)
}

/// A finite group given by explicit permutation images of its generators.
pub struct ConcreteGroup {
    pub name: &'static str,
    pub generators: Vec<&'static str>,
    pub relators: Vec<&'static str>,
    pub images: Vec<Perm>,
}

impl ConcreteGroup {
    pub fn eval(&self, w: &Word) -> Perm {
        let degree = self.images[0].degree();
        w.letters().iter().fold(Perm::identity(degree), |acc, l| {
            let p = &self.images[l.generator];
            acc.mul(&if l.inverse { p.inverse() } else { p.clone() })
        })
    }

    /// Order of the generated permutation group, by closing under multiplication.
    pub fn order(&self) -> usize {
        let degree = self.images[0].degree();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([Perm::identity(degree)]);
        seen.insert(Perm::identity(degree));
        while let Some(p) = queue.pop_front() {
            for g in &self.images {
                let q = p.mul(g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen.len()
    }
}

/// Trivial group, Z/2, Z/3 and S3 with faithful permutation representations.
pub fn desk_groups() -> Vec<ConcreteGroup> {
    vec![
        ConcreteGroup {
            name: "trivial",
            generators: vec!["x"],
            relators: vec!["x"],
            images: vec![Perm::identity(1)],
        },
        ConcreteGroup {
            name: "Z/2",
            generators: vec!["x"],
            relators: vec!["x^2"],
            images: vec![Perm::cycle(2, &[0, 1])],
        },
        ConcreteGroup {
            name: "Z/3",
            generators: vec!["x"],
            relators: vec!["x^3"],
            images: vec![Perm::cycle(3, &[0, 1, 2])],
        },
        ConcreteGroup {
            name: "S3",
            generators: vec!["x", "y"],
            relators: vec!["x^2", "y^2", "x y x y x y"],
            images: vec![Perm::cycle(3, &[0, 1]), Perm::cycle(3, &[1, 2])],
        },
    ]
}

/// All freely reduced words over `n` generators of length at most `max_len`.
pub fn reduced_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n {
                for inv in [false, true] {
                    let l = Letter::new(g, inv);
                    if w.letters().last() == Some(&l.inv()) {
                        continue;
                    }
                    let mut v = w.letters().to_vec();
                    v.push(l);
                    next.push(Word::from_letters(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Cayley-style search over `L_H`'s generators, pushed into `F_n × H` through
/// an explicit permutation model of `H`. Returns the reachable pairs
/// `(u, image of v)` whose first component stays within `max_len`.
pub fn lh_image_reach(group: &ConcreteGroup, max_len: usize) -> HashSet<(Word, Perm)> {
    let n = group.generators.len();
    let degree = group.images[0].degree();
    let names: Vec<String> = group.generators.iter().map(|s| s.to_string()).collect();
    let mut steps: Vec<(Word, Perm)> = Vec::new();
    for g in 0..n {
        for inv in [false, true] {
            let l = Letter::new(g, inv);
            let w = Word::from_letters(vec![l]);
            steps.push((w.clone(), group.eval(&w)));
        }
    }
    for r in &group.relators {
        let r = Word::parse(r, &names).unwrap();
        for w in [r.clone(), r.inverse()] {
            steps.push((Word::identity(), group.eval(&w)));
        }
    }
    let start = (Word::identity(), Perm::identity(degree));
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((u, p)) = queue.pop_front() {
        for (su, sp) in &steps {
            let nu = u.concat(su).free_reduce();
            if nu.len() > max_len {
                continue;
            }
            let state = (nu, p.mul(sp));
            if seen.insert(state.clone()) {
                queue.push_back(state);
            }
        }
    }
    seen
}

/// Products of at most `depth` generators of `L_H` (and their inverses),
/// computed in `F_n × F_n` itself.
pub fn lh_products(
    generators: &[raagsep::PairWord],
    depth: usize,
) -> HashSet<raagsep::PairWord> {
    let mut steps: Vec<raagsep::PairWord> = Vec::new();
    for g in generators {
        steps.push(g.clone());
        steps.push(g.inverse());
    }
    let start = raagsep::PairWord::identity();
    let mut seen = HashSet::from([start.clone()]);
    let mut layer = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &layer {
            for s in &steps {
                let q = p.mul(s);
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    seen
}
