//! Constructive resampling: repeatedly locate a violated event (a
//! repetitive path, shortest first) and redraw all colors on it uniformly.
//!
//! The search is incremental. A path can only become repetitive when one of
//! its vertices changes color, so a work queue of dirty vertices — initially
//! all of them, re-enqueued on every resample — is exhaustive: when it
//! drains, no repetitive path of half-length <= the cap remains. A final
//! full sweep re-verifies that invariant before returning.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{find_repetitive_path, PathWitness, Searcher};
use crate::error::{Error, Result};
use crate::graph::{Coloring, SchreierGraph};

#[derive(Debug, Clone)]
pub struct ResampleReport {
    pub coloring: Coloring,
    pub resamples: u64,
}

/// Colors the graph so that no repetitive path of half-length <= `max_half`
/// remains, or fails with the last witness once `max_resamples` redraws have
/// been spent (the sign that the alphabet is too small for this cap).
/// Deterministic for a fixed seed.
pub fn moser_tardos_color(
    graph: &SchreierGraph,
    alphabet_size: u32,
    max_half: usize,
    seed: u64,
    max_resamples: u64,
) -> Result<ResampleReport> {
    if alphabet_size == 0 {
        return Err(Error::InvalidInput("alphabet must be nonempty".into()));
    }
    if max_half == 0 {
        return Err(Error::InvalidInput("half-length cap must be >= 1".into()));
    }
    let n = graph.n_vertices();
    let adj = graph.simple_adjacency();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..alphabet_size)).collect();

    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    let mut resamples = 0u64;

    loop {
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            while let Some(witness) = Searcher::new(&adj, &colors).shortest_through(v, max_half) {
                if resamples == max_resamples {
                    return Err(Error::ResampleCapExceeded {
                        resamples,
                        alphabet_size,
                        last_witness: PathWitness::unchecked(witness),
                    });
                }
                resamples += 1;
                for &u in &witness {
                    colors[u] = rng.gen_range(0..alphabet_size);
                    if !queued[u] {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        // Queue drained: verify with a full sweep. Nothing should surface,
        // but if it does, requeue and keep going rather than trust the
        // incremental bookkeeping.
        let coloring = Coloring::new(alphabet_size, colors.clone())?;
        match find_repetitive_path(graph, &coloring, max_half, u64::MAX)? {
            None => {
                return Ok(ResampleReport {
                    coloring,
                    resamples,
                })
            }
            Some(witness) => {
                for &u in witness.vertices() {
                    if !queued[u] {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdaptiveReport {
    pub coloring: Coloring,
    pub alphabet_size: u32,
    pub resamples: u64,
    pub attempts: u32,
}

/// Doubles the alphabet on every cap failure, starting from
/// `start_alphabet`. Each attempt gets a derived seed, so the whole
/// procedure stays deterministic.
pub fn adaptive_color(
    graph: &SchreierGraph,
    start_alphabet: u32,
    max_half: usize,
    seed: u64,
    max_resamples_per_attempt: u64,
) -> Result<AdaptiveReport> {
    let mut alphabet = start_alphabet.max(1);
    let mut attempts = 0u32;
    loop {
        attempts += 1;
        match moser_tardos_color(
            graph,
            alphabet,
            max_half,
            seed.wrapping_add(attempts as u64 - 1),
            max_resamples_per_attempt,
        ) {
            Ok(report) => {
                return Ok(AdaptiveReport {
                    coloring: report.coloring,
                    alphabet_size: alphabet,
                    resamples: report.resamples,
                    attempts,
                })
            }
            Err(err @ Error::ResampleCapExceeded { .. }) => {
                // an alphabet of n+1 colors cannot fail forever; stop well past it
                if alphabet as u64 > 2 * graph.n_vertices() as u64 {
                    return Err(err);
                }
                alphabet = alphabet.saturating_mul(2);
            }
            Err(other) => return Err(other),
        }
    }
}
