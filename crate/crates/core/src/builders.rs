//! Constructors for the graph families used as test objects and sofic
//! stages: cycles and segments for the integers, Cayley balls for free
//! groups and lattices, coset graphs from explicit permutation actions, and
//! seeded random stages.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{GeneratorSet, GraphBuilder, Rooted, SchreierGraph};

/// The group families with computable reference balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFamily {
    Cyclic { n: usize },
    Integers,
    IntegerLattice { dim: usize },
    Free { rank: usize },
    /// An explicit permutation action; `inv_pairing[i]` names the generator
    /// acting as the inverse of generator `i`.
    PermutationGroup {
        perms: Vec<Vec<usize>>,
        inv_pairing: Vec<usize>,
    },
}

impl GroupFamily {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupFamily::Cyclic { n } if *n == 0 => {
                Err(Error::InvalidInput("cycle length must be positive".into()))
            }
            GroupFamily::IntegerLattice { dim } if *dim == 0 => {
                Err(Error::InvalidInput("lattice dimension must be positive".into()))
            }
            GroupFamily::Free { rank } if *rank == 0 => {
                Err(Error::InvalidInput("free rank must be positive".into()))
            }
            GroupFamily::PermutationGroup { perms, inv_pairing } => {
                check_permutation_generators(perms, inv_pairing).map(|_| ())
            }
            _ => Ok(()),
        }
    }
}

/// The n-cycle: generator 0 maps i to i+1 mod n, symbol 1 is its inverse.
/// Complete; rooted at 0. n = 1 yields a single vertex with a loop.
pub fn cycle_graph(n: usize) -> Rooted {
    assert!(n >= 1, "cycle length must be positive");
    let mut b = GraphBuilder::new(GeneratorSet::free(1), n);
    for i in 0..n {
        b.add_edge(0, i, (i + 1) % n).unwrap();
    }
    Rooted::new(b.build(), 0).unwrap()
}

/// The n-vertex segment: a truncated integers stage. Rooted at 0.
pub fn path_graph(n: usize) -> Rooted {
    assert!(n >= 1, "segment length must be positive");
    let mut b = GraphBuilder::new(GeneratorSet::free(1), n);
    for i in 0..n.saturating_sub(1) {
        b.add_edge(0, i, i + 1).unwrap();
    }
    Rooted::new(b.build(), 0).unwrap()
}

/// The radius-r ball of the family's Cayley graph rooted at the identity.
/// Maps leaving the ball are absent. Supported families: integers, integer
/// lattices, free groups.
pub fn cayley_ball(family: &GroupFamily, radius: usize) -> Result<Rooted> {
    family.validate()?;
    match family {
        GroupFamily::Integers => free_ball(1, radius),
        GroupFamily::Free { rank } => free_ball(*rank, radius),
        GroupFamily::IntegerLattice { dim } => lattice_ball(*dim, radius),
        other => Err(Error::UnsupportedFamily(format!(
            "no Cayley ball construction for {other:?}"
        ))),
    }
}

/// Vertices are reduced words of length <= radius in length-then-
/// lexicographic order; an edge labeled s goes from w to the reduction of
/// s·w (generators act by left multiplication).
fn free_ball(rank: usize, radius: usize) -> Result<Rooted> {
    let gens = GeneratorSet::free(rank);
    let symbols = gens.count();

    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..symbols {
                if w.last().map_or(true, |&last| s != gens.inv(last)) {
                    let mut ext = w.clone();
                    ext.push(s);
                    next.push(ext);
                }
            }
        }
        next.sort();
        words.extend(next.iter().cloned());
        layer = next;
    }

    let index: HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();

    let mut act = vec![vec![None; words.len()]; symbols];
    for (i, w) in words.iter().enumerate() {
        for s in 0..symbols {
            // left-multiply: prepend s, cancelling against the first letter
            let product: Vec<usize> = if w.first() == Some(&gens.inv(s)) {
                w[1..].to_vec()
            } else {
                let mut p = Vec::with_capacity(w.len() + 1);
                p.push(s);
                p.extend_from_slice(w);
                p
            };
            act[s][i] = index.get(product.as_slice()).copied();
        }
    }

    let complete = act.iter().all(|m| m.iter().all(Option::is_some));
    let graph = SchreierGraph::from_maps(gens, words.len(), act, complete)?;
    Rooted::new(graph, 0)
}

fn lattice_ball(dim: usize, radius: usize) -> Result<Rooted> {
    let gens = GeneratorSet::free(dim);
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut current = vec![0i64; dim];
    collect_lattice_points(&mut points, &mut current, 0, radius as i64);
    points.sort_by_key(|p| (p.iter().map(|x| x.unsigned_abs()).sum::<u64>(), p.clone()));

    let index: HashMap<&[i64], usize> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();

    let mut act = vec![vec![None; points.len()]; gens.count()];
    for (i, p) in points.iter().enumerate() {
        for axis in 0..dim {
            for (symbol, step) in [(2 * axis, 1i64), (2 * axis + 1, -1i64)] {
                let mut q = p.clone();
                q[axis] += step;
                act[symbol][i] = index.get(q.as_slice()).copied();
            }
        }
    }
    let complete = act.iter().all(|m| m.iter().all(Option::is_some));
    let graph = SchreierGraph::from_maps(gens, points.len(), act, complete)?;
    Rooted::new(graph, 0)
}

fn collect_lattice_points(out: &mut Vec<Vec<i64>>, current: &mut Vec<i64>, axis: usize, budget: i64) {
    if axis == current.len() {
        out.push(current.clone());
        return;
    }
    for x in -budget..=budget {
        current[axis] = x;
        collect_lattice_points(out, current, axis + 1, budget - x.abs());
    }
    current[axis] = 0;
}

fn check_permutation_generators(perms: &[Vec<usize>], inv_pairing: &[usize]) -> Result<usize> {
    if perms.is_empty() {
        return Err(Error::InvalidInput("no permutation generators given".into()));
    }
    let m = perms[0].len();
    for (i, p) in perms.iter().enumerate() {
        if p.len() != m {
            return Err(Error::InvalidInput(format!(
                "generator {i} acts on {} points, expected {m}",
                p.len()
            )));
        }
        let mut seen = vec![false; m];
        for &x in p {
            if x >= m || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "generator {i} is not a permutation"
                )));
            }
            seen[x] = true;
        }
    }
    if inv_pairing.len() != perms.len() {
        return Err(Error::InvalidInput(
            "inverse pairing length does not match generator count".into(),
        ));
    }
    for (i, &j) in inv_pairing.iter().enumerate() {
        if j >= perms.len() || inv_pairing[j] != i {
            return Err(Error::InvalidInput(format!(
                "inverse pairing is not an involution at generator {i}"
            )));
        }
        for x in 0..m {
            if perms[j][perms[i][x]] != x {
                return Err(Error::InvalidInput(format!(
                    "generator {j} is not the inverse of generator {i}"
                )));
            }
        }
    }
    Ok(m)
}

/// The connected component of `base` under an explicit permutation action:
/// vertices are the orbit of `base`, numbered in BFS discovery order (so the
/// root is 0), and generator i acts by its permutation. This realizes the
/// coset space of the stabilizer of `base`.
pub fn schreier_from_permutations(
    perms: &[Vec<usize>],
    inv_pairing: &[usize],
    base: usize,
) -> Result<Rooted> {
    let m = check_permutation_generators(perms, inv_pairing)?;
    if base >= m {
        return Err(Error::InvalidInput(format!(
            "base point {base} out of range for {m} points"
        )));
    }

    let mut index = vec![usize::MAX; m];
    let mut orbit = vec![base];
    index[base] = 0;
    let mut head = 0;
    while head < orbit.len() {
        let p = orbit[head];
        head += 1;
        for perm in perms {
            let q = perm[p];
            if index[q] == usize::MAX {
                index[q] = orbit.len();
                orbit.push(q);
            }
        }
    }

    let gens = GeneratorSet::new(inv_pairing.to_vec())?;
    let mut b = GraphBuilder::new(gens, orbit.len());
    for (i, &p) in orbit.iter().enumerate() {
        for (symbol, perm) in perms.iter().enumerate() {
            b.add_edge(symbol, i, index[perm[p]])?;
        }
    }
    Rooted::new(b.build(), 0)
}

fn fisher_yates(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

/// A random complete stage for the rank-k free group: k independent uniform
/// permutations of the vertex set (seeded Fisher-Yates), inverses derived.
pub fn random_schreier(n_vertices: usize, rank: usize, seed: u64) -> SchreierGraph {
    assert!(n_vertices >= 1 && rank >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = GeneratorSet::free(rank);
    let mut act = Vec::with_capacity(gens.count());
    for _ in 0..rank {
        let forward = fisher_yates(n_vertices, &mut rng);
        let mut backward = vec![0usize; n_vertices];
        for (u, &v) in forward.iter().enumerate() {
            backward[v] = u;
        }
        act.push(forward.into_iter().map(Some).collect());
        act.push(backward.into_iter().map(Some).collect());
    }
    SchreierGraph::from_maps(gens, n_vertices, act, true).unwrap()
}

/// A random complete stage with `count` involutive generators, each a
/// uniform fixed-point-free involution (a random perfect matching). With
/// count = 3 this is a random cubic multigraph. Requires an even vertex
/// count.
pub fn random_involution_schreier(
    n_vertices: usize,
    count: usize,
    seed: u64,
) -> Result<SchreierGraph> {
    if n_vertices == 0 || n_vertices % 2 != 0 {
        return Err(Error::InvalidInput(
            "fixed-point-free involutions need a positive even vertex count".into(),
        ));
    }
    if count == 0 {
        return Err(Error::InvalidInput("generator count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = GeneratorSet::involutions(count);
    let mut act = Vec::with_capacity(count);
    for _ in 0..count {
        let order = fisher_yates(n_vertices, &mut rng);
        let mut map = vec![0usize; n_vertices];
        for pair in order.chunks_exact(2) {
            map[pair[0]] = pair[1];
            map[pair[1]] = pair[0];
        }
        act.push(map.into_iter().map(Some).collect());
    }
    SchreierGraph::from_maps(gens, n_vertices, act, true)
}
