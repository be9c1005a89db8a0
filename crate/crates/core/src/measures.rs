//! Per-root ball statistics of finite stages: empirical distributions over
//! ball types, reference-ball vertex fractions, clopen-set frequencies,
//! pushforward invariance defects, and finite coloring windows.
//!
//! All frequencies are exact rationals (counts over the vertex total), so
//! the invariance and concentration equalities can be asserted without
//! tolerances.

use std::collections::BTreeMap;
use std::path::Path;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coloring::find_repetitive_path;
use crate::dynamics::{walk, Word};
use crate::error::{Error, Result};
use crate::graph::{Coloring, GeneratorSet, Rooted, SchreierGraph};
use crate::pattern::{canonical_pattern, BallPattern};

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A probability distribution over ball types at a fixed radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallDistribution {
    radius: usize,
    weights: BTreeMap<BallPattern, BigRational>,
}

impl BallDistribution {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn weights(&self) -> &BTreeMap<BallPattern, BigRational> {
        &self.weights
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn total(&self) -> BigRational {
        self.weights.values().sum()
    }
}

/// The empirical distribution of rooted r-ball types over a uniformly
/// random root.
pub fn empirical_measure(
    graph: &SchreierGraph,
    coloring: Option<&Coloring>,
    radius: usize,
) -> Result<BallDistribution> {
    let n = graph.n_vertices();
    if n == 0 {
        return Err(Error::InvalidInput(
            "empty graph carries no distribution".into(),
        ));
    }
    let mut counts: BTreeMap<BallPattern, usize> = BTreeMap::new();
    for p in 0..n {
        *counts
            .entry(canonical_pattern(graph, coloring, p, radius))
            .or_default() += 1;
    }
    let weights = counts
        .into_iter()
        .map(|(pat, count)| (pat, ratio(count, n)))
        .collect();
    Ok(BallDistribution { radius, weights })
}

/// Total variation distance (1/2)·sum |mu(P) - nu(P)|.
pub fn tv_distance(mu: &BallDistribution, nu: &BallDistribution) -> Result<BigRational> {
    if mu.radius != nu.radius {
        return Err(Error::RadiusMismatch(mu.radius, nu.radius));
    }
    let zero = BigRational::zero();
    let mut sum = BigRational::zero();
    for key in mu.weights.keys().chain(nu.weights.keys()) {
        // keys seen twice contribute twice; halve at the end accounts for it
        // only if we dedupe, so skip the second visit instead
        if nu.weights.contains_key(key) && mu.weights.contains_key(key) {
            continue;
        }
        let a = mu.weights.get(key).unwrap_or(&zero);
        let b = nu.weights.get(key).unwrap_or(&zero);
        sum += (a - b).abs();
    }
    for (key, a) in &mu.weights {
        if let Some(b) = nu.weights.get(key) {
            sum += (a - b).abs();
        }
    }
    Ok(sum / BigRational::from(BigInt::from(2)))
}

fn check_same_gens(g: &SchreierGraph, reference: &Rooted) -> Result<()> {
    if g.gens() != reference.graph().gens() {
        return Err(Error::IncomparableSpaces("generator sets differ".into()));
    }
    Ok(())
}

/// The fraction of vertices whose uncolored r-ball matches the reference
/// ball. The reference must have been built with radius >= r.
pub fn gamma_r_vertex_fraction(
    graph: &SchreierGraph,
    reference: &Rooted,
    radius: usize,
) -> Result<BigRational> {
    check_same_gens(graph, reference)?;
    let n = graph.n_vertices();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let want = canonical_pattern(reference.graph(), None, reference.root(), radius);
    let hits = (0..n)
        .filter(|&p| canonical_pattern(graph, None, p, radius) == want)
        .count();
    Ok(ratio(hits, n))
}

/// True iff at least a (1-eps)-fraction of vertices carry the reference
/// r-ball.
pub fn is_sofic_stage(
    graph: &SchreierGraph,
    reference: &Rooted,
    radius: usize,
    eps: &BigRational,
) -> Result<bool> {
    let fraction = gamma_r_vertex_fraction(graph, reference, radius)?;
    Ok(fraction >= BigRational::one() - eps)
}

/// The fraction of roots whose uncolored r-ball differs from the reference:
/// exactly the complement of the reference-vertex fraction.
pub fn clopen_u_fraction(
    graph: &SchreierGraph,
    reference: &Rooted,
    radius: usize,
) -> Result<BigRational> {
    Ok(BigRational::one() - gamma_r_vertex_fraction(graph, reference, radius)?)
}

/// The fraction of roots whose colored r-ball contains a repetitive path of
/// half-length <= r. Zero at radius 0 (a point carries no path).
pub fn clopen_v_fraction(
    graph: &SchreierGraph,
    coloring: &Coloring,
    radius: usize,
    budget_per_root: u64,
) -> Result<BigRational> {
    let n = graph.n_vertices();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    if radius == 0 {
        return Ok(BigRational::zero());
    }
    let rooted_colored = Rooted::new(graph.clone(), 0)?.with_coloring(coloring.clone())?;
    let mut hits = 0usize;
    let mut unresolved = Vec::new();
    for p in 0..n {
        let ball = rooted_colored.with_root(p)?.ball(radius);
        let ball_coloring = ball.coloring().expect("coloring restricted with the ball");
        match find_repetitive_path(ball.graph(), ball_coloring, radius, budget_per_root) {
            Ok(Some(_)) => hits += 1,
            Ok(None) => {}
            Err(Error::BudgetExceeded { .. }) => unresolved.push(p),
            Err(other) => return Err(other),
        }
    }
    if !unresolved.is_empty() {
        return Err(Error::CensusBudgetExceeded {
            unresolved_roots: unresolved,
        });
    }
    Ok(ratio(hits, n))
}

/// The pushforward comparison for one generator: each root p is replaced by
/// its image under the generator map. Roots with no image contribute to the
/// reported deficiency mass; the defect compares the matched parts only, so
/// it is exactly zero on complete graphs where the map permutes the roots.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceDefect {
    pub defect: BigRational,
    pub deficiency: BigRational,
}

pub fn invariance_defect(
    graph: &SchreierGraph,
    coloring: Option<&Coloring>,
    radius: usize,
    symbol: usize,
) -> Result<InvarianceDefect> {
    let n = graph.n_vertices();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    if symbol >= graph.gens().count() {
        return Err(Error::InvalidInput(format!("generator {symbol} out of range")));
    }
    let mut source: BTreeMap<BallPattern, i64> = BTreeMap::new();
    let mut pushed: BTreeMap<BallPattern, i64> = BTreeMap::new();
    let mut missing = 0usize;
    for p in 0..n {
        match graph.target(symbol, p) {
            Some(q) => {
                *source
                    .entry(canonical_pattern(graph, coloring, p, radius))
                    .or_default() += 1;
                *pushed
                    .entry(canonical_pattern(graph, coloring, q, radius))
                    .or_default() += 1;
            }
            None => missing += 1,
        }
    }
    let mut diff = 0i64;
    for key in source.keys().chain(pushed.keys()) {
        if source.contains_key(key) && pushed.contains_key(key) {
            continue;
        }
        diff += (source.get(key).copied().unwrap_or(0) - pushed.get(key).copied().unwrap_or(0)).abs();
    }
    for (key, a) in &source {
        if let Some(b) = pushed.get(key) {
            diff += (a - b).abs();
        }
    }
    Ok(InvarianceDefect {
        defect: BigRational::new(BigInt::from(diff), BigInt::from(2 * n)),
        deficiency: ratio(missing, n),
    })
}

/// A finite window of the coloring seen from the root: every reduced word
/// of length <= r is assigned the color of the vertex it walks to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowPattern {
    radius: usize,
    assignment: BTreeMap<Word, u32>,
}

impl WindowPattern {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn assignment(&self) -> &BTreeMap<Word, u32> {
        &self.assignment
    }

    pub fn get(&self, word: &Word) -> Option<u32> {
        self.assignment.get(word).copied()
    }

    /// The window seen after moving along `w`: entry u comes from the
    /// reduction of w·u. `None` when the source window is too small.
    pub fn translate(
        &self,
        w: &Word,
        gens: &GeneratorSet,
        new_radius: usize,
    ) -> Option<WindowPattern> {
        let mut assignment = BTreeMap::new();
        for u in reduced_words(gens, new_radius) {
            let source = w.concat(&u).reduced(gens);
            assignment.insert(u, self.get(&source)?);
        }
        Some(WindowPattern {
            radius: new_radius,
            assignment,
        })
    }
}

/// All reduced words of length <= max_len, in length-then-lexicographic
/// order.
pub fn reduced_words(gens: &GeneratorSet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..gens.count() {
                if w.last().map_or(true, |&last| s != gens.inv(last)) {
                    let mut ext = w.clone();
                    ext.push(s);
                    next.push(ext);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned().map(Word::new));
        layer = next;
    }
    out
}

/// The window of radius r around the root. Every reduced word of length
/// <= r must stay inside the graph; leaving it is a boundary-truncation
/// error because the window would be partial. Uncolored graphs yield the
/// monochrome window.
pub fn subshift_window(x: &Rooted, radius: usize) -> Result<WindowPattern> {
    let gens = x.graph().gens();
    let color_of = |v: usize| x.coloring().map_or(0, |c| c.color(v));
    let mut assignment = BTreeMap::new();
    for word in reduced_words(gens, radius) {
        match walk(x.graph(), x.root(), &word) {
            Some(v) => {
                assignment.insert(word, color_of(v));
            }
            None => {
                return Err(Error::BoundaryTruncation { step: word.len() });
            }
        }
    }
    Ok(WindowPattern { radius, assignment })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub pattern: String,
    pub num: u64,
    pub den: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionDocument {
    pub radius: usize,
    pub entries: Vec<DistributionEntry>,
}

pub fn distribution_to_document(d: &BallDistribution) -> DistributionDocument {
    let entries = d
        .weights
        .iter()
        .map(|(pat, w)| DistributionEntry {
            pattern: pat.to_base64(),
            num: u64::try_from(w.numer()).expect("count fits u64"),
            den: u64::try_from(w.denom()).expect("count fits u64"),
        })
        .collect();
    DistributionDocument {
        radius: d.radius,
        entries,
    }
}

pub fn distribution_from_document(doc: &DistributionDocument) -> Result<BallDistribution> {
    let mut weights = BTreeMap::new();
    for e in &doc.entries {
        if e.den == 0 {
            return Err(Error::MalformedDocument("zero denominator".into()));
        }
        let pat = BallPattern::from_base64(doc.radius, &e.pattern)?;
        let w = BigRational::new(BigInt::from(e.num), BigInt::from(e.den));
        if weights.insert(pat, w).is_some() {
            return Err(Error::MalformedDocument("duplicate pattern entry".into()));
        }
    }
    let d = BallDistribution {
        radius: doc.radius,
        weights,
    };
    if !d.total().is_one() {
        return Err(Error::MalformedDocument(
            "weights do not sum to exactly 1".into(),
        ));
    }
    Ok(d)
}

pub fn distribution_to_bytes(d: &BallDistribution) -> Vec<u8> {
    let mut bytes =
        serde_json::to_vec_pretty(&distribution_to_document(d)).expect("serialization is total");
    bytes.push(b'\n');
    bytes
}

pub fn write_distribution(d: &BallDistribution, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, distribution_to_bytes(d)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_distribution(path: impl AsRef<Path>) -> Result<BallDistribution> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let doc: DistributionDocument = serde_json::from_slice(&bytes)
        .map_err(|e| Error::MalformedDocument(e.to_string()))?;
    distribution_from_document(&doc)
}

/// Two-column summary for external plotters: a short content hash of each
/// pattern and its frequency.
pub fn distribution_csv(d: &BallDistribution) -> String {
    let mut out = String::from("pattern_hash,frequency\n");
    for (pat, w) in &d.weights {
        let digest = Sha256::digest(pat.encoding());
        let hash: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        let freq = u64::try_from(w.numer()).unwrap() as f64 / u64::try_from(w.denom()).unwrap() as f64;
        out.push_str(&format!("{hash},{freq}\n"));
    }
    out
}
