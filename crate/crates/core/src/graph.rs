//! Labeled graphs with one deterministic partial map per generator symbol.
//!
//! A generator symbol acts on vertices as a partial injection; the symbol
//! paired with it acts as the inverse map. Complete graphs (every map total)
//! are genuine finite Schreier graphs; incomplete ones model balls truncated
//! out of larger or infinite graphs.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A symmetric generating alphabet: `count` symbols together with an
/// involution pairing each symbol with its inverse. A symbol may be paired
/// with itself (an involutive generator).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    inv: Vec<usize>,
}

impl GeneratorSet {
    /// `inv[i]` is the symbol acting as the inverse of symbol `i`.
    pub fn new(inv: Vec<usize>) -> Result<Self> {
        if inv.is_empty() {
            return Err(Error::InvalidInput(
                "generator set must have at least one symbol".into(),
            ));
        }
        let n = inv.len();
        for (i, &j) in inv.iter().enumerate() {
            if j >= n {
                return Err(Error::InvalidInput(format!(
                    "inverse index {j} of symbol {i} out of range"
                )));
            }
            if inv[j] != i {
                return Err(Error::InvalidInput(format!(
                    "inverse pairing is not an involution at symbol {i}"
                )));
            }
        }
        Ok(GeneratorSet { inv })
    }

    /// Pairing given as explicit `[i, inv(i)]` pairs covering every symbol.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let count = pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .max()
            .map_or(0, |m| m + 1);
        let mut inv = vec![usize::MAX; count];
        for &(a, b) in pairs {
            for (x, y) in [(a, b), (b, a)] {
                if inv[x] != usize::MAX && inv[x] != y {
                    return Err(Error::InvalidInput(format!(
                        "symbol {x} appears in conflicting pairs"
                    )));
                }
                inv[x] = y;
            }
        }
        if let Some(missing) = inv.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidInput(format!(
                "symbol {missing} has no inverse pair"
            )));
        }
        GeneratorSet::new(inv)
    }

    /// 2k symbols with pairs (0,1), (2,3), ...: the standard symmetric
    /// alphabet of a rank-k free group. Rank 1 is the alphabet used for
    /// cycles and integer segments.
    pub fn free(rank: usize) -> Self {
        let mut inv = Vec::with_capacity(2 * rank.max(1));
        for i in 0..rank.max(1) {
            inv.push(2 * i + 1);
            inv.push(2 * i);
        }
        GeneratorSet { inv }
    }

    /// `count` involutive symbols, each its own inverse.
    pub fn involutions(count: usize) -> Self {
        GeneratorSet {
            inv: (0..count.max(1)).collect(),
        }
    }

    pub fn count(&self) -> usize {
        self.inv.len()
    }

    pub fn inv(&self, symbol: usize) -> usize {
        self.inv[symbol]
    }

    /// Canonical pair list: one `(i, inv(i))` entry per orbit, `i <= inv(i)`,
    /// ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.count())
            .filter(|&i| i <= self.inv[i])
            .map(|i| (i, self.inv[i]))
            .collect()
    }
}

/// One invariant violation, locating the generator and vertex at fault.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TargetOutOfRange {
        gen: usize,
        vertex: usize,
        target: usize,
    },
    InverseInconsistency {
        gen: usize,
        vertex: usize,
    },
    Incompleteness {
        gen: usize,
        vertex: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TargetOutOfRange {
                gen,
                vertex,
                target,
            } => write!(
                f,
                "target {target} out of range at (generator {gen}, vertex {vertex})"
            ),
            Violation::InverseInconsistency { gen, vertex } => {
                write!(f, "inverse inconsistency at (generator {gen}, vertex {vertex})")
            }
            Violation::Incompleteness { gen, vertex } => {
                write!(f, "incompleteness at (generator {gen}, vertex {vertex})")
            }
        }
    }
}

/// A finite vertex set with one deterministic partial map per generator
/// symbol. Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGraph {
    gens: GeneratorSet,
    n_vertices: usize,
    /// `act[symbol][vertex]` — target vertex, or `None` where the map is
    /// undefined (a truncation boundary).
    act: Vec<Vec<Option<usize>>>,
    complete: bool,
}

impl SchreierGraph {
    /// Builds from explicit per-symbol maps. Only the representation is
    /// checked here (dimensions); semantic invariants are reported by
    /// [`SchreierGraph::validate`], so invalid graphs can be constructed and
    /// then diagnosed.
    pub fn from_maps(
        gens: GeneratorSet,
        n_vertices: usize,
        act: Vec<Vec<Option<usize>>>,
        complete: bool,
    ) -> Result<Self> {
        if act.len() != gens.count() {
            return Err(Error::InvalidInput(format!(
                "expected {} maps, got {}",
                gens.count(),
                act.len()
            )));
        }
        for (i, m) in act.iter().enumerate() {
            if m.len() != n_vertices {
                return Err(Error::InvalidInput(format!(
                    "map of symbol {i} has length {}, expected {n_vertices}",
                    m.len()
                )));
            }
        }
        Ok(SchreierGraph {
            gens,
            n_vertices,
            act,
            complete,
        })
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Target of `symbol` at `vertex`, or `None` at a truncation boundary.
    pub fn target(&self, symbol: usize, vertex: usize) -> Option<usize> {
        self.act[symbol][vertex]
    }

    pub fn maps(&self) -> &[Vec<Option<usize>>] {
        &self.act
    }

    /// Checks every invariant and returns the violations found (empty iff
    /// the graph is valid). Inverse consistency: `act[i](u) = v` iff
    /// `act[inv(i)](v) = u`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for symbol in 0..self.gens.count() {
            let inv = self.gens.inv(symbol);
            for u in 0..self.n_vertices {
                match self.act[symbol][u] {
                    Some(v) if v >= self.n_vertices => out.push(Violation::TargetOutOfRange {
                        gen: symbol,
                        vertex: u,
                        target: v,
                    }),
                    Some(v) => {
                        if self.act[inv][v] != Some(u) {
                            out.push(Violation::InverseInconsistency {
                                gen: symbol,
                                vertex: u,
                            });
                        }
                    }
                    None => {
                        if self.complete {
                            out.push(Violation::Incompleteness {
                                gen: symbol,
                                vertex: u,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Underlying undirected simple adjacency: labels, directions,
    /// multiplicities and loops dropped; neighbor lists sorted.
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for symbol in 0..self.gens.count() {
            for u in 0..self.n_vertices {
                if let Some(v) = self.act[symbol][u] {
                    if u != v {
                        adj[u].push(v);
                        adj[v].push(u);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Shortest-path distances from `start` in the underlying undirected
    /// graph; `None` for unreachable vertices.
    pub fn bfs_distances(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n_vertices];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for symbol in 0..self.gens.count() {
                if let Some(v) = self.act[symbol][u] {
                    if dist[v].is_none() {
                        dist[v] = Some(d + 1);
                        queue.push_back(v);
                    }
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices <= 1 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// The same graph under a vertex renumbering: `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n_vertices)?;
        let mut act = vec![vec![None; self.n_vertices]; self.gens.count()];
        for symbol in 0..self.gens.count() {
            for u in 0..self.n_vertices {
                if let Some(v) = self.act[symbol][u] {
                    act[symbol][perm[u]] = Some(perm[v]);
                }
            }
        }
        SchreierGraph::from_maps(self.gens.clone(), self.n_vertices, act, self.complete)
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidInput(format!(
            "permutation length {} does not match vertex count {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Incremental constructor that keeps inverse consistency by construction:
/// adding the edge `u --symbol--> v` also records `v --inv(symbol)--> u`.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    gens: GeneratorSet,
    n_vertices: usize,
    act: Vec<Vec<Option<usize>>>,
}

impl GraphBuilder {
    pub fn new(gens: GeneratorSet, n_vertices: usize) -> Self {
        let act = vec![vec![None; n_vertices]; gens.count()];
        GraphBuilder {
            gens,
            n_vertices,
            act,
        }
    }

    pub fn add_edge(&mut self, symbol: usize, u: usize, v: usize) -> Result<()> {
        if symbol >= self.gens.count() || u >= self.n_vertices || v >= self.n_vertices {
            return Err(Error::InvalidInput(format!(
                "edge ({symbol}, {u} -> {v}) out of range"
            )));
        }
        let inv = self.gens.inv(symbol);
        for (s, a, b) in [(symbol, u, v), (inv, v, u)] {
            match self.act[s][a] {
                Some(existing) if existing != b => {
                    return Err(Error::InvalidInput(format!(
                        "conflicting edge at (generator {s}, vertex {a}): {existing} vs {b}"
                    )))
                }
                _ => self.act[s][a] = Some(b),
            }
        }
        Ok(())
    }

    /// Finishes the graph; the completeness flag is computed, not declared.
    pub fn build(self) -> SchreierGraph {
        let complete = self.act.iter().all(|m| m.iter().all(Option::is_some));
        SchreierGraph {
            gens: self.gens,
            n_vertices: self.n_vertices,
            act: self.act,
            complete,
        }
    }
}

/// A vertex coloring over a fixed alphabet `0..alphabet_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    alphabet_size: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(alphabet_size: u32, colors: Vec<u32>) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidInput("alphabet must be nonempty".into()));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= alphabet_size) {
            return Err(Error::InvalidInput(format!(
                "color {bad} outside alphabet 0..{alphabet_size}"
            )));
        }
        Ok(Coloring {
            alphabet_size,
            colors,
        })
    }

    /// All-zero coloring over a one-letter alphabet.
    pub fn monochrome(n_vertices: usize) -> Self {
        Coloring {
            alphabet_size: 1,
            colors: vec![0; n_vertices],
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, vertex: usize) -> u32 {
        self.colors[vertex]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// A graph with a distinguished root and an optional vertex coloring.
/// Immutable; the root-moving and color-dropping operations return new
/// values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rooted {
    graph: SchreierGraph,
    root: usize,
    coloring: Option<Coloring>,
}

impl Rooted {
    pub fn new(graph: SchreierGraph, root: usize) -> Result<Self> {
        if root >= graph.n_vertices() {
            return Err(Error::InvalidInput(format!(
                "root {root} out of range for {} vertices",
                graph.n_vertices()
            )));
        }
        Ok(Rooted {
            graph,
            root,
            coloring: None,
        })
    }

    pub fn colored(graph: SchreierGraph, root: usize, coloring: Coloring) -> Result<Self> {
        Rooted::new(graph, root)?.with_coloring(coloring)
    }

    pub fn with_coloring(self, coloring: Coloring) -> Result<Self> {
        if coloring.len() != self.graph.n_vertices() {
            return Err(Error::InvalidInput(format!(
                "coloring has {} entries for {} vertices",
                coloring.len(),
                self.graph.n_vertices()
            )));
        }
        Ok(Rooted {
            coloring: Some(coloring),
            ..self
        })
    }

    pub fn with_root(&self, root: usize) -> Result<Self> {
        if root >= self.graph.n_vertices() {
            return Err(Error::InvalidInput(format!("root {root} out of range")));
        }
        Ok(Rooted {
            root,
            ..self.clone()
        })
    }

    pub fn graph(&self) -> &SchreierGraph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        self.coloring.as_ref()
    }

    /// Drops the coloring. Idempotent; an uncolored graph is treated as
    /// monochrome throughout the library.
    pub fn forget_colors(&self) -> Rooted {
        Rooted {
            graph: self.graph.clone(),
            root: self.root,
            coloring: None,
        }
    }

    /// The sub-graph induced on vertices within distance `r` of the root,
    /// renumbered in BFS order (root becomes 0). Edges are retained iff both
    /// endpoints lie inside; maps that led outside become undefined. The
    /// radius-0 ball is a single bare vertex carrying only the root color.
    pub fn ball(&self, radius: usize) -> Rooted {
        let g = &self.graph;
        let gens = g.gens().clone();
        if radius == 0 {
            let graph = SchreierGraph {
                act: vec![vec![None]; gens.count()],
                gens,
                n_vertices: 1,
                complete: false,
            };
            let coloring = self
                .coloring
                .as_ref()
                .map(|c| Coloring::new(c.alphabet_size(), vec![c.color(self.root)]).unwrap());
            return Rooted {
                graph,
                root: 0,
                coloring,
            };
        }

        // BFS discovery order is the new numbering.
        let mut index = vec![usize::MAX; g.n_vertices()];
        let mut dist = vec![0usize; g.n_vertices()];
        let mut order = vec![self.root];
        index[self.root] = 0;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            if dist[u] == radius {
                continue;
            }
            for symbol in 0..gens.count() {
                if let Some(v) = g.target(symbol, u) {
                    if index[v] == usize::MAX {
                        index[v] = order.len();
                        dist[v] = dist[u] + 1;
                        order.push(v);
                    }
                }
            }
        }

        let n = order.len();
        let mut act = vec![vec![None; n]; gens.count()];
        for (new_u, &u) in order.iter().enumerate() {
            for symbol in 0..gens.count() {
                if let Some(v) = g.target(symbol, u) {
                    if index[v] != usize::MAX {
                        act[symbol][new_u] = Some(index[v]);
                    }
                }
            }
        }
        let complete = act.iter().all(|m| m.iter().all(Option::is_some));
        let coloring = self.coloring.as_ref().map(|c| {
            Coloring::new(
                c.alphabet_size(),
                order.iter().map(|&u| c.color(u)).collect(),
            )
            .unwrap()
        });
        Rooted {
            graph: SchreierGraph {
                gens,
                n_vertices: n,
                act,
                complete,
            },
            root: 0,
            coloring,
        }
    }

    /// The same rooted colored graph under a vertex renumbering.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let graph = self.graph.relabeled(perm)?;
        let coloring = match &self.coloring {
            Some(c) => {
                let mut colors = vec![0; c.len()];
                for (u, &p) in perm.iter().enumerate() {
                    colors[p] = c.color(u);
                }
                Some(Coloring::new(c.alphabet_size(), colors)?)
            }
            None => None,
        };
        Ok(Rooted {
            graph,
            root: perm[self.root],
            coloring,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::cycle_graph;

    #[test]
    fn involution_pairing_rejected_when_broken() {
        assert!(GeneratorSet::new(vec![1, 0]).is_ok());
        assert!(GeneratorSet::new(vec![0]).is_ok()); // involutive symbol
        assert!(GeneratorSet::new(vec![1, 2, 0]).is_err());
        assert!(GeneratorSet::new(vec![]).is_err());
    }

    #[test]
    fn pairs_roundtrip() {
        let gens = GeneratorSet::free(2);
        assert_eq!(gens.pairs(), vec![(0, 1), (2, 3)]);
        let back = GeneratorSet::from_pairs(&gens.pairs()).unwrap();
        assert_eq!(gens, back);
    }

    #[test]
    fn validate_accepts_four_cycle() {
        let g = cycle_graph(4).graph().clone();
        assert_eq!(g.maps()[0], vec![Some(1), Some(2), Some(3), Some(0)]);
        assert_eq!(g.maps()[1], vec![Some(3), Some(0), Some(1), Some(2)]);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn validate_reports_inverse_inconsistency() {
        let gens = GeneratorSet::free(1);
        let act = vec![vec![Some(1), None], vec![None, None]];
        let g = SchreierGraph::from_maps(gens, 2, act, false).unwrap();
        let violations = g.validate();
        assert_eq!(
            violations,
            vec![Violation::InverseInconsistency { gen: 0, vertex: 0 }]
        );
        assert!(violations[0].to_string().contains("generator 0"));
    }

    #[test]
    fn validate_reports_incompleteness() {
        let gens = GeneratorSet::free(1);
        let act = vec![vec![Some(0), Some(1)], vec![Some(0), Some(1)]];
        let mut g = SchreierGraph::from_maps(gens, 2, act, true).unwrap();
        g.act[0][1] = None;
        g.act[1][1] = None;
        let violations = g.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::Incompleteness { gen: 0, vertex: 1 })));
    }

    #[test]
    fn builder_rejects_conflicts() {
        let mut b = GraphBuilder::new(GeneratorSet::free(1), 3);
        b.add_edge(0, 0, 1).unwrap();
        assert!(b.add_edge(0, 0, 2).is_err());
        // same edge again is fine
        b.add_edge(0, 0, 1).unwrap();
        let g = b.build();
        assert!(!g.is_complete());
        assert!(g.validate().is_empty());
    }

    #[test]
    fn ball_of_cycle_is_segment() {
        let c8 = cycle_graph(8);
        let ball = c8.ball(2);
        assert_eq!(ball.graph().n_vertices(), 5);
        assert!(!ball.graph().is_complete());
        assert!(ball.graph().validate().is_empty());
        // exactly 4 undirected edges: a path segment
        let edges: usize = ball.graph().simple_adjacency().iter().map(Vec::len).sum();
        assert_eq!(edges / 2, 4);
    }

    #[test]
    fn radius_zero_ball_is_bare_vertex() {
        let c1 = cycle_graph(1);
        let ball = c1.ball(0);
        assert_eq!(ball.graph().n_vertices(), 1);
        assert_eq!(ball.graph().target(0, 0), None);
    }

    #[test]
    fn ball_wraps_whole_small_cycle() {
        let c6 = cycle_graph(6);
        let ball = c6.ball(3);
        assert_eq!(ball.graph().n_vertices(), 6);
        assert!(ball.graph().is_complete());
    }

    #[test]
    fn coloring_bounds_checked() {
        assert!(Coloring::new(2, vec![0, 1, 0]).is_ok());
        assert!(Coloring::new(2, vec![0, 2]).is_err());
        assert!(Coloring::new(0, vec![]).is_err());
    }

    #[test]
    fn forget_colors_is_idempotent() {
        let c4 = cycle_graph(4);
        let colored = c4
            .clone()
            .with_coloring(Coloring::new(4, vec![0, 1, 2, 3]).unwrap())
            .unwrap();
        let forgot = colored.forget_colors();
        assert!(forgot.coloring().is_none());
        assert_eq!(forgot.forget_colors(), forgot);
        assert_eq!(forgot, c4);
    }
}
