//! Nonrepetitive colorings: the repetitive-path predicate, exact witness
//! search, brute-force minimum alphabets, the numeric avoidance constants,
//! and the constructive resampling engine.
//!
//! A path here is a sequence of distinct vertices, consecutive in the
//! underlying undirected simple graph; labels, directions, multiplicities
//! and loops play no role. A path of 2n vertices is repetitive when its
//! first and second color halves coincide pointwise.

mod engine;
mod lll;

pub use engine::{adaptive_color, moser_tardos_color, AdaptiveReport, ResampleReport};
pub use lll::{
    lll_check, lll_threshold, lll_threshold_with, paper_constant, AFamily, Delta, LllParameters,
};

use crate::error::{Error, Result};
use crate::graph::{Coloring, SchreierGraph};

/// Sentinel color for vertices excluded from a search (used by the
/// exhaustive minimizer while a coloring is still partial). `Coloring`
/// never produces this value.
const EXCLUDED: u32 = u32::MAX;

/// A repetitive path witness: 2n distinct vertices, consecutive pairs
/// adjacent, whose color halves match on the coloring it was found for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWitness {
    vertices: Vec<usize>,
}

impl PathWitness {
    pub fn new(vertices: Vec<usize>, graph: &SchreierGraph) -> Result<Self> {
        let w = PathWitness { vertices };
        w.validate_against(graph)?;
        Ok(w)
    }

    pub(crate) fn unchecked(vertices: Vec<usize>) -> Self {
        PathWitness { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn half_length(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn validate_against(&self, graph: &SchreierGraph) -> Result<()> {
        let v = &self.vertices;
        if v.len() < 2 || v.len() % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "witness must have even length >= 2, got {}",
                v.len()
            )));
        }
        let mut seen = vec![false; graph.n_vertices()];
        for &u in v {
            if u >= graph.n_vertices() {
                return Err(Error::InvalidInput(format!("vertex {u} out of range")));
            }
            if seen[u] {
                return Err(Error::InvalidInput(format!("vertex {u} repeats")));
            }
            seen[u] = true;
        }
        let adj = graph.simple_adjacency();
        for pair in v.windows(2) {
            if !adj[pair[0]].contains(&pair[1]) {
                return Err(Error::InvalidInput(format!(
                    "vertices {} and {} are not adjacent",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(())
    }
}

/// True iff the colors along the first half equal those along the second.
pub fn is_repetitive_path(coloring: &Coloring, witness: &PathWitness) -> bool {
    let v = witness.vertices();
    let n = v.len() / 2;
    (0..n).all(|i| coloring.color(v[i]) == coloring.color(v[i + n]))
}

/// Depth-first enumeration of simple paths over a fixed undirected simple
/// adjacency, with a color table. Paths are grown one position at a time;
/// a position in the second half is only filled with a vertex matching the
/// color of its partner in the first half, so every completed sequence is
/// repetitive by construction.
struct Searcher<'a> {
    adj: &'a [Vec<usize>],
    colors: &'a [u32],
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> Searcher<'a> {
    fn new(adj: &'a [Vec<usize>], colors: &'a [u32]) -> Self {
        Searcher { adj, colors }
    }

    /// Shortest repetitive path over the whole graph, lengths 2, 4, ...,
    /// 2*max_half, start vertices and neighbors in ascending order. The
    /// budget counts vertex placements.
    fn shortest_global(&self, max_half: usize, budget: u64) -> Result<Option<Vec<usize>>> {
        let n = self.adj.len();
        let mut remaining = budget;
        let mut seq = Vec::new();
        let mut used = vec![false; n];
        for half in 1..=max_half {
            if 2 * half > n {
                break;
            }
            for start in 0..n {
                if self.colors[start] == EXCLUDED {
                    continue;
                }
                seq.clear();
                seq.push(start);
                used[start] = true;
                let step = self.grow(&mut seq, &mut used, half, &mut remaining);
                used[start] = false;
                match step {
                    Step::Found => return Ok(Some(seq)),
                    Step::Exhausted => {}
                    Step::OutOfBudget => {
                        return Err(Error::BudgetExceeded {
                            expansions: budget - remaining,
                            completed_half: half - 1,
                        })
                    }
                }
            }
        }
        Ok(None)
    }

    /// Shortest repetitive path containing `v`. Only positions in the first
    /// half are tried for `v`; a repetitive path with `v` in the second half
    /// is the reversal of one with `v` in the first half, and
    /// repetitiveness is reversal-invariant.
    fn shortest_through(&self, v: usize, max_half: usize) -> Option<Vec<usize>> {
        if self.colors[v] == EXCLUDED {
            return None;
        }
        let n = self.adj.len();
        let mut used = vec![false; n];
        for half in 1..=max_half {
            if 2 * half > n {
                break;
            }
            for pos in 0..half {
                let mut seq = vec![usize::MAX; 2 * half];
                seq[pos] = v;
                used[v] = true;
                let found = self.grow_down(&mut seq, &mut used, pos, pos + 1, half);
                used[v] = false;
                if found {
                    return Some(seq);
                }
            }
        }
        None
    }

    /// Extends `seq` (already holding positions 0..len) up to 2*half
    /// vertices, ascending positions.
    fn grow(&self, seq: &mut Vec<usize>, used: &mut [bool], half: usize, remaining: &mut u64) -> Step {
        if seq.len() == 2 * half {
            return Step::Found;
        }
        let pos = seq.len();
        let partner = pos.checked_sub(half).map(|i| self.colors[seq[i]]);
        let last = *seq.last().unwrap();
        for &w in &self.adj[last] {
            if used[w] || self.colors[w] == EXCLUDED {
                continue;
            }
            if let Some(color) = partner {
                if self.colors[w] != color {
                    continue;
                }
            }
            if *remaining == 0 {
                return Step::OutOfBudget;
            }
            *remaining -= 1;
            used[w] = true;
            seq.push(w);
            match self.grow(seq, used, half, remaining) {
                Step::Exhausted => {
                    seq.pop();
                    used[w] = false;
                }
                done => return done,
            }
        }
        Step::Exhausted
    }

    /// Fills positions pos-1 down to 0, then hands over to `grow_up` at
    /// `up_start` (one past the anchor position).
    fn grow_down(
        &self,
        seq: &mut [usize],
        used: &mut [bool],
        pos: usize,
        up_start: usize,
        half: usize,
    ) -> bool {
        if pos == 0 {
            return self.grow_up(seq, used, up_start, half);
        }
        let anchor = seq[pos];
        for i in 0..self.adj[anchor].len() {
            let w = self.adj[anchor][i];
            if used[w] || self.colors[w] == EXCLUDED {
                continue;
            }
            used[w] = true;
            seq[pos - 1] = w;
            if self.grow_down(seq, used, pos - 1, up_start, half) {
                return true;
            }
            seq[pos - 1] = usize::MAX;
            used[w] = false;
        }
        false
    }

    /// Fills positions `from` up to 2*half-1, enforcing half-match colors.
    fn grow_up(&self, seq: &mut [usize], used: &mut [bool], from: usize, half: usize) -> bool {
        if from == 2 * half {
            return true;
        }
        let anchor = seq[from - 1];
        for i in 0..self.adj[anchor].len() {
            let w = self.adj[anchor][i];
            if used[w] || self.colors[w] == EXCLUDED {
                continue;
            }
            if from >= half && self.colors[w] != self.colors[seq[from - half]] {
                continue;
            }
            used[w] = true;
            seq[from] = w;
            if self.grow_up(seq, used, from + 1, half) {
                return true;
            }
            seq[from] = usize::MAX;
            used[w] = false;
        }
        false
    }
}

/// Finds a repetitive path of minimal half-length <= `max_half`, or `None`
/// if the coloring is `max_half`-nonrepetitive. The budget caps vertex
/// placements in the underlying exponential path census; exceeding it
/// reports how far the search got.
pub fn find_repetitive_path(
    graph: &SchreierGraph,
    coloring: &Coloring,
    max_half: usize,
    budget: u64,
) -> Result<Option<PathWitness>> {
    if max_half == 0 {
        return Err(Error::InvalidInput("half-length cap must be >= 1".into()));
    }
    if coloring.len() != graph.n_vertices() {
        return Err(Error::InvalidInput(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            graph.n_vertices()
        )));
    }
    let adj = graph.simple_adjacency();
    let found = Searcher::new(&adj, coloring.colors()).shortest_global(max_half, budget)?;
    Ok(found.map(PathWitness::unchecked))
}

/// True iff no repetitive path of half-length <= `max_half` exists.
pub fn is_nonrepetitive(
    graph: &SchreierGraph,
    coloring: &Coloring,
    max_half: usize,
    budget: u64,
) -> Result<bool> {
    Ok(find_repetitive_path(graph, coloring, max_half, budget)?.is_none())
}

pub const DEFAULT_EXHAUSTIVE_VERTEX_CAP: usize = 12;

/// Smallest alphabet size admitting a nonrepetitive coloring, by complete
/// backtracking over all colorings. `max_half = None` means all path
/// lengths the graph can carry. Exact but exponential; refuses graphs
/// larger than the cap.
pub fn exhaustive_min_alphabet(graph: &SchreierGraph, max_half: Option<usize>) -> Result<u32> {
    exhaustive_min_alphabet_with_cap(graph, max_half, DEFAULT_EXHAUSTIVE_VERTEX_CAP)
}

pub fn exhaustive_min_alphabet_with_cap(
    graph: &SchreierGraph,
    max_half: Option<usize>,
    vertex_cap: usize,
) -> Result<u32> {
    let n = graph.n_vertices();
    if n > vertex_cap {
        return Err(Error::CapExceeded(format!(
            "{n} vertices exceed the exhaustive-search cap {vertex_cap}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("empty graph has no coloring".into()));
    }
    let half_cap = max_half.unwrap_or(n / 2).min(n / 2);
    let adj = graph.simple_adjacency();

    // With all n colors distinct no path can be repetitive, so the loop
    // terminates at c = n at the latest.
    for c in 1..=(n as u32) {
        let mut colors = vec![EXCLUDED; n];
        if backtrack(&adj, &mut colors, 0, c, half_cap) {
            return Ok(c);
        }
    }
    unreachable!("distinct colors are always nonrepetitive");
}

/// Assigns vertices in index order; after each assignment only paths
/// through the newly colored vertex can have become repetitive.
fn backtrack(adj: &[Vec<usize>], colors: &mut Vec<u32>, vertex: usize, alphabet: u32, half_cap: usize) -> bool {
    if vertex == colors.len() {
        return true;
    }
    for color in 0..alphabet {
        colors[vertex] = color;
        let clean = half_cap == 0
            || Searcher::new(adj, colors)
                .shortest_through(vertex, half_cap)
                .is_none();
        if clean && backtrack(adj, colors, vertex + 1, alphabet, half_cap) {
            return true;
        }
    }
    colors[vertex] = EXCLUDED;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cycle_graph, path_graph};

    fn coloring(alphabet: u32, colors: Vec<u32>) -> Coloring {
        Coloring::new(alphabet, colors).unwrap()
    }

    /// Independent oracle: every simple path of every even length, tested
    /// directly against the definition.
    fn naive_shortest(graph: &SchreierGraph, c: &Coloring, max_half: usize) -> Option<usize> {
        let adj = graph.simple_adjacency();
        let n = adj.len();
        for half in 1..=max_half {
            if 2 * half > n {
                break;
            }
            let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
            while let Some(p) = stack.pop() {
                if p.len() == 2 * half {
                    let rep = (0..half).all(|i| c.color(p[i]) == c.color(p[i + half]));
                    if rep {
                        return Some(half);
                    }
                    continue;
                }
                for &w in &adj[*p.last().unwrap()] {
                    if !p.contains(&w) {
                        let mut q = p.clone();
                        q.push(w);
                        stack.push(q);
                    }
                }
            }
        }
        None
    }

    #[test]
    fn repetitive_path_definition() {
        let p4 = path_graph(4);
        let w = PathWitness::new(vec![0, 1, 2, 3], p4.graph()).unwrap();
        assert!(is_repetitive_path(&coloring(2, vec![0, 1, 0, 1]), &w));
        assert!(!is_repetitive_path(&coloring(3, vec![0, 1, 0, 2]), &w));
        let edge = PathWitness::new(vec![1, 2], p4.graph()).unwrap();
        assert!(is_repetitive_path(&coloring(2, vec![0, 1, 1, 0]), &edge));
    }

    #[test]
    fn witness_invariants_enforced() {
        let p4 = path_graph(4);
        assert!(PathWitness::new(vec![0, 1, 2], p4.graph()).is_err()); // odd
        assert!(PathWitness::new(vec![0, 1, 0, 1], p4.graph()).is_err()); // repeats
        assert!(PathWitness::new(vec![0, 2, 1, 3], p4.graph()).is_err()); // not adjacent
        assert!(PathWitness::new(vec![], p4.graph()).is_err());
    }

    #[test]
    fn find_examples() {
        let p4 = path_graph(4);
        let found = find_repetitive_path(p4.graph(), &coloring(2, vec![0, 1, 0, 1]), 2, 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(found.vertices(), &[0, 1, 2, 3]);

        assert!(
            find_repetitive_path(p4.graph(), &coloring(3, vec![0, 1, 0, 2]), 2, 1 << 20)
                .unwrap()
                .is_none()
        );

        // constant colorings die on any edge
        let c5 = cycle_graph(5);
        let w = find_repetitive_path(c5.graph(), &Coloring::monochrome(5), 1, 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(w.half_length(), 1);
    }

    #[test]
    fn witness_is_shortest_and_valid() {
        let c6 = cycle_graph(6);
        let c = coloring(2, vec![0, 1, 0, 1, 0, 1]);
        let w = find_repetitive_path(c6.graph(), &c, 3, 1 << 20).unwrap().unwrap();
        w.validate_against(c6.graph()).unwrap();
        assert!(is_repetitive_path(&c, &w));
        assert_eq!(Some(w.half_length()), naive_shortest(c6.graph(), &c, 3));
    }

    #[test]
    fn budget_exhaustion_reports_progress() {
        let c = cycle_graph(12);
        let mono = Coloring::monochrome(12);
        match find_repetitive_path(c.graph(), &mono, 6, 0) {
            Err(Error::BudgetExceeded {
                expansions,
                completed_half,
            }) => {
                assert_eq!(expansions, 0);
                assert_eq!(completed_half, 0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn agreement_with_naive_oracle_on_random_colorings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let graphs = [cycle_graph(6), path_graph(7), cycle_graph(8)];
        for _ in 0..300 {
            for g in &graphs {
                let n = g.graph().n_vertices();
                let colors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                let c = coloring(3, colors);
                let mine = find_repetitive_path(g.graph(), &c, n / 2, u64::MAX).unwrap();
                let naive = naive_shortest(g.graph(), &c, n / 2);
                assert_eq!(mine.as_ref().map(|w| w.half_length()), naive);
                if let Some(w) = mine {
                    assert!(is_repetitive_path(&c, &w));
                    w.validate_against(g.graph()).unwrap();
                }
            }
        }
    }

    #[test]
    fn subpath_closure() {
        let p = path_graph(9);
        let c = coloring(3, vec![0, 1, 0, 2, 0, 1, 0, 2, 1]);
        for cap in 1..=4 {
            let long = is_nonrepetitive(p.graph(), &c, cap, u64::MAX).unwrap();
            for shorter in 1..cap {
                let short = is_nonrepetitive(p.graph(), &c, shorter, u64::MAX).unwrap();
                assert!(!long || short);
            }
        }
    }

    #[test]
    fn thue_minimum_on_small_segments() {
        assert_eq!(exhaustive_min_alphabet(path_graph(1).graph(), None).unwrap(), 1);
        assert_eq!(exhaustive_min_alphabet(path_graph(2).graph(), None).unwrap(), 2);
        assert_eq!(exhaustive_min_alphabet(path_graph(3).graph(), None).unwrap(), 2);
        assert_eq!(exhaustive_min_alphabet(path_graph(5).graph(), None).unwrap(), 3);
    }

    #[test]
    fn exhaustive_cap_enforced() {
        let c = cycle_graph(13);
        assert!(matches!(
            exhaustive_min_alphabet(c.graph(), None),
            Err(Error::CapExceeded(_))
        ));
    }
}
