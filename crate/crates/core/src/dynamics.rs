//! The root-change action of words, stabilizer enumeration, colored-labeled
//! automorphisms, and the extraction of a repetitive path from a nontrivial
//! automorphism.
//!
//! A word's letters are generator symbols applied first-to-last to the
//! root. On a truncated graph a walk may leave through an undefined map;
//! that is a boundary-truncation *outcome*, reported as `None`, not an
//! error — two graphs with isomorphic balls must agree on it.

use std::collections::VecDeque;

use crate::coloring::PathWitness;
use crate::error::{Error, Result};
use crate::graph::{Coloring, GeneratorSet, Rooted, SchreierGraph};

/// A sequence of generator symbols; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Applying `self` then `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Free reduction: adjacent mutually-inverse symbols cancel. Walks are
    /// unchanged by reduction wherever they are defined.
    pub fn reduced(&self, gens: &GeneratorSet) -> Word {
        let mut stack: Vec<usize> = Vec::with_capacity(self.letters.len());
        for &s in &self.letters {
            if stack.last().is_some_and(|&top| top == gens.inv(s)) {
                stack.pop();
            } else {
                stack.push(s);
            }
        }
        Word { letters: stack }
    }

    pub fn validate_against(&self, gens: &GeneratorSet) -> Result<()> {
        match self.letters.iter().find(|&&s| s >= gens.count()) {
            Some(&bad) => Err(Error::InvalidInput(format!(
                "letter {bad} outside generator alphabet 0..{}",
                gens.count()
            ))),
            None => Ok(()),
        }
    }
}

/// Walks `start` along the word's letters; `None` if a map is undefined en
/// route.
pub fn walk(graph: &SchreierGraph, start: usize, word: &Word) -> Option<usize> {
    let mut at = start;
    for &s in word.letters() {
        at = graph.target(s, at)?;
    }
    Some(at)
}

impl Rooted {
    /// The same graph with the root moved along `word`; `None` is the
    /// boundary-truncation outcome on truncated graphs.
    pub fn apply_word(&self, word: &Word) -> Option<Rooted> {
        let root = walk(self.graph(), self.root(), word)?;
        Some(self.with_root(root).expect("walk stays in range"))
    }

    /// Whether the walk returns to the root; `None` if it leaves the graph.
    pub fn fixes_root(&self, word: &Word) -> Option<bool> {
        walk(self.graph(), self.root(), word).map(|at| at == self.root())
    }
}

/// All words of length <= `max_len` fixing the root, in breadth-first
/// (length-then-lexicographic) order. Errors if any enumerated word walks
/// out of a truncated graph, since the enumeration would be incomplete.
pub fn stabilizer_words(x: &Rooted, max_len: usize) -> Result<Vec<Word>> {
    let gens = x.graph().gens().clone();
    let mut out = Vec::new();
    let mut queue: VecDeque<(Vec<usize>, usize)> = VecDeque::from([(Vec::new(), x.root())]);
    while let Some((word, at)) = queue.pop_front() {
        if at == x.root() {
            out.push(Word::new(word.clone()));
        }
        if word.len() == max_len {
            continue;
        }
        for s in 0..gens.count() {
            match x.graph().target(s, at) {
                Some(next) => {
                    let mut w = word.clone();
                    w.push(s);
                    queue.push_back((w, next));
                }
                None => {
                    return Err(Error::BoundaryTruncation {
                        step: word.len() + 1,
                    })
                }
            }
        }
    }
    Ok(out)
}

/// A total vertex map commuting with every generator map (and preserving
/// colors, when checked against a coloring). On a connected complete graph
/// such a map is automatically a bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    image: Vec<usize>,
}

impl Automorphism {
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, vertex: usize) -> usize {
        self.image[vertex]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Verifies the defining equations on the given graph and coloring.
    pub fn verify(&self, graph: &SchreierGraph, coloring: Option<&Coloring>) -> Result<()> {
        let n = graph.n_vertices();
        if self.image.len() != n {
            return Err(Error::NotAnAutomorphism(format!(
                "image has {} entries for {n} vertices",
                self.image.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &self.image {
            if v >= n || seen[v] {
                return Err(Error::NotAnAutomorphism("image is not a bijection".into()));
            }
            seen[v] = true;
        }
        for s in 0..graph.gens().count() {
            for u in 0..n {
                let lhs = graph.target(s, u).map(|v| self.image[v]);
                let rhs = graph.target(s, self.image[u]);
                if lhs != rhs {
                    return Err(Error::NotAnAutomorphism(format!(
                        "does not commute with generator {s} at vertex {u}"
                    )));
                }
            }
        }
        if let Some(c) = coloring {
            for u in 0..n {
                if c.color(u) != c.color(self.image[u]) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "does not preserve the color of vertex {u}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The full colored-labeled automorphism group of a connected complete
/// graph, by candidate propagation: each candidate image of vertex 0
/// extends uniquely along the generator maps (determinism), and is kept iff
/// globally consistent and color-preserving. At most n candidates, so
/// O(n^2·|Q|) overall.
pub fn colored_automorphisms(
    graph: &SchreierGraph,
    coloring: Option<&Coloring>,
) -> Result<Vec<Automorphism>> {
    if !graph.is_complete() {
        return Err(Error::IncompleteOrDisconnected(
            "maps must be total".into(),
        ));
    }
    if graph.n_vertices() == 0 {
        return Err(Error::IncompleteOrDisconnected("graph is empty".into()));
    }
    if !graph.is_connected() {
        return Err(Error::IncompleteOrDisconnected("graph is disconnected".into()));
    }
    if let Some(c) = coloring {
        if c.len() != graph.n_vertices() {
            return Err(Error::InvalidInput(
                "coloring length does not match graph".into(),
            ));
        }
    }

    let n = graph.n_vertices();
    let symbols = graph.gens().count();
    let mut out = Vec::new();

    'candidates: for candidate in 0..n {
        let mut image = vec![usize::MAX; n];
        image[0] = candidate;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for s in 0..symbols {
                let v = graph.target(s, u).expect("complete");
                let w = graph.target(s, image[u]).expect("complete");
                if image[v] == usize::MAX {
                    image[v] = w;
                    queue.push_back(v);
                } else if image[v] != w {
                    continue 'candidates;
                }
            }
        }
        // connectivity guarantees every vertex was assigned
        let aut = Automorphism { image };
        if aut.verify(graph, coloring).is_ok() {
            out.push(aut);
        }
    }
    Ok(out)
}

/// True iff the only colored-labeled automorphism is the identity. Uses the
/// attached coloring; an uncolored graph is judged on its labeled structure
/// alone.
pub fn is_z_proper(x: &Rooted) -> Result<bool> {
    let auts = colored_automorphisms(x.graph(), x.coloring())?;
    Ok(auts.len() == 1)
}

/// Builds a repetitive path from a nontrivial color-preserving
/// automorphism: pick a vertex of minimal displacement (lowest index on
/// ties), take a shortest path to its image (lowest generator symbol on
/// ties), and extend it by the same generator letters. The resulting 2n
/// vertices are distinct and the color halves match.
pub fn extract_repetition(
    graph: &SchreierGraph,
    coloring: &Coloring,
    theta: &Automorphism,
) -> Result<PathWitness> {
    theta.verify(graph, Some(coloring))?;
    if theta.is_identity() {
        return Err(Error::TrivialAutomorphism);
    }

    let n = graph.n_vertices();
    let mut best: Option<(usize, usize)> = None; // (displacement, vertex)
    let mut dist_cache: Vec<Option<Vec<Option<usize>>>> = vec![None; n];
    for a in 0..n {
        let d = graph.bfs_distances(a);
        let disp = d[theta.apply(a)].ok_or_else(|| {
            Error::IncompleteOrDisconnected("image unreachable from its source".into())
        })?;
        dist_cache[a] = Some(d);
        if best.map_or(true, |(bd, _)| disp < bd) {
            best = Some((disp, a));
        }
    }
    let (displacement, a) = best.expect("nonempty graph");
    debug_assert!(displacement >= 1, "a labeled automorphism fixing a vertex is the identity");

    // march from a toward theta(a), smallest symbol first, staying on
    // geodesics (distance-to-target must drop by one each step)
    let target = theta.apply(a);
    let dist_from_a = dist_cache[a].take().expect("cached");
    let dist_to_target = graph.bfs_distances(target);
    let mut path = vec![a];
    let mut letters = Vec::with_capacity(displacement);
    let mut at = a;
    for step in 0..displacement {
        let sofar = step + 1;
        let (symbol, next) = (0..graph.gens().count())
            .filter_map(|s| graph.target(s, at).map(|v| (s, v)))
            .find(|&(_, v)| {
                dist_from_a[v] == Some(sofar)
                    && dist_to_target[v] == Some(displacement - sofar)
            })
            .expect("a geodesic step always exists");
        letters.push(symbol);
        path.push(next);
        at = next;
    }

    // continue by the same letters: positions n+2 .. 2n
    for &symbol in letters.iter().take(displacement.saturating_sub(1)) {
        let next = graph
            .target(symbol, *path.last().unwrap())
            .expect("complete");
        path.push(next);
    }

    let witness = PathWitness::new(path, graph)?;
    debug_assert!(crate::coloring::is_repetitive_path(coloring, &witness));
    Ok(witness)
}
