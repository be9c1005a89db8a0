//! Canonical forms of rooted colored balls and the ball-agreement metric.
//!
//! Because every generator acts as a deterministic partial map, a BFS from
//! the root in fixed symbol order assigns canonical vertex indices with no
//! search: any rooted-colored-labeled isomorphism must map the k-th
//! discovered vertex to the k-th discovered vertex. Encoding colors and
//! per-symbol targets in that order therefore decides isomorphism of balls
//! by byte equality.

use std::cmp::Ordering;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine as _;

use crate::error::{Error, Result};
use crate::graph::{Coloring, Rooted, SchreierGraph};

const ABSENT: u32 = u32::MAX;

/// Canonical encoding of a rooted, colored, labeled r-ball. Two rooted
/// colored graphs produce equal patterns at radius r iff their r-balls are
/// rooted-colored-labeled isomorphic, independently of vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallPattern {
    radius: usize,
    encoding: Vec<u8>,
}

impl BallPattern {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn encoding(&self) -> &[u8] {
        &self.encoding
    }

    pub fn to_base64(&self) -> String {
        BASE64.encode(&self.encoding)
    }

    pub fn from_base64(radius: usize, data: &str) -> Result<Self> {
        let encoding = BASE64
            .decode(data)
            .map_err(|e| Error::MalformedDocument(format!("bad pattern encoding: {e}")))?;
        Ok(BallPattern { radius, encoding })
    }
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

/// Canonical pattern of the radius-r ball around `root`. Uncolored graphs
/// are encoded as monochrome (color 0 everywhere). The radius-0 pattern
/// carries only the root color.
pub fn canonical_pattern(
    graph: &SchreierGraph,
    coloring: Option<&Coloring>,
    root: usize,
    radius: usize,
) -> BallPattern {
    let color_of = |v: usize| coloring.map_or(0, |c| c.color(v));
    let symbols = graph.gens().count();
    let mut encoding = Vec::new();
    push_u32(&mut encoding, symbols as u32);

    if radius == 0 {
        push_u32(&mut encoding, 1);
        push_u32(&mut encoding, color_of(root));
        return BallPattern { radius, encoding };
    }

    // Single BFS pass: vertices of each layer are fully discovered before
    // any row of the next layer is written, so in-ball targets always have
    // an index by the time they are referenced.
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; graph.n_vertices()];
    let mut dist = vec![0usize; graph.n_vertices()];
    let mut order = vec![root];
    index[root] = 0;
    let mut rows: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        rows.push(color_of(u));
        for symbol in 0..symbols {
            match graph.target(symbol, u) {
                Some(v) => {
                    if index[v] == UNSET && dist[u] < radius {
                        index[v] = order.len();
                        dist[v] = dist[u] + 1;
                        order.push(v);
                    }
                    if index[v] != UNSET {
                        rows.push(index[v] as u32);
                    } else {
                        rows.push(ABSENT);
                    }
                }
                None => rows.push(ABSENT),
            }
        }
    }

    push_u32(&mut encoding, order.len() as u32);
    for v in rows {
        push_u32(&mut encoding, v);
    }
    BallPattern { radius, encoding }
}

fn check_comparable(x: &Rooted, y: &Rooted) -> Result<()> {
    if x.graph().gens() != y.graph().gens() {
        return Err(Error::IncomparableSpaces(
            "generator sets differ".into(),
        ));
    }
    // uncolored graphs live in the monochrome (one-letter) space
    let ax = x.coloring().map_or(1, Coloring::alphabet_size);
    let ay = y.coloring().map_or(1, Coloring::alphabet_size);
    if ax != ay {
        return Err(Error::IncomparableSpaces(format!(
            "alphabets differ: {ax} vs {ay}"
        )));
    }
    Ok(())
}

/// True iff the radius-r balls around the two roots are
/// rooted-colored-labeled isomorphic.
pub fn rooted_isomorphic(x: &Rooted, y: &Rooted, radius: usize) -> Result<bool> {
    check_comparable(x, y)?;
    Ok(x.pattern(radius) == y.pattern(radius))
}

/// The ball-agreement distance, resolution-capped.
///
/// `Two` (the value 2) means the radius-0 balls — the root colors — already
/// disagree. `Pow(r)` is 2^{-r} where r is the largest radius `<= r_max`
/// with isomorphic balls; in particular isomorphic 0-balls with
/// nonisomorphic 1-balls give `Pow(0)` = 1. `Zero` means indistinguishable
/// at every radius up to the cap: finite data cannot certify equality
/// beyond it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BallDistance {
    Zero,
    Pow(usize),
    Two,
}

impl BallDistance {
    pub fn as_f64(&self) -> f64 {
        match self {
            BallDistance::Zero => 0.0,
            BallDistance::Pow(r) => 0.5f64.powi(*r as i32),
            BallDistance::Two => 2.0,
        }
    }
}

impl PartialOrd for BallDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BallDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        use BallDistance::*;
        match (self, other) {
            (Zero, Zero) | (Two, Two) => Ordering::Equal,
            (Zero, _) => Ordering::Less,
            (_, Zero) => Ordering::Greater,
            (Two, _) => Ordering::Greater,
            (_, Two) => Ordering::Less,
            // 2^{-a} < 2^{-b} iff a > b
            (Pow(a), Pow(b)) => b.cmp(a),
        }
    }
}

/// Distance between two rooted (colored) graphs at resolution cap `r_max`.
pub fn distance(x: &Rooted, y: &Rooted, r_max: usize) -> Result<BallDistance> {
    check_comparable(x, y)?;
    if x.pattern(0) != y.pattern(0) {
        return Ok(BallDistance::Two);
    }
    for r in 1..=r_max {
        if x.pattern(r) != y.pattern(r) {
            return Ok(BallDistance::Pow(r - 1));
        }
    }
    Ok(BallDistance::Zero)
}

impl Rooted {
    /// Canonical pattern of this graph's radius-r ball.
    pub fn pattern(&self, radius: usize) -> BallPattern {
        canonical_pattern(self.graph(), self.coloring(), self.root(), radius)
    }

    pub fn is_isomorphic_to(&self, other: &Rooted, radius: usize) -> Result<bool> {
        rooted_isomorphic(self, other, radius)
    }

    pub fn distance(&self, other: &Rooted, r_max: usize) -> Result<BallDistance> {
        distance(self, other, r_max)
    }
}
