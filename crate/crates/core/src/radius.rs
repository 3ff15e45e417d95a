//! Covering radius: two exact engines and a sampled lower bound.
//!
//! Ambient vectors are indexed in mixed radix, coordinate `j` being the
//! base-`q` digit of weight `q^j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{hamming_distance_raw, odometer_step};
use crate::code::LinearCode;
use crate::error::{check_budget, Result};

pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1 << 26;
pub const DEFAULT_BFS_LIMIT: u64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadiusMethod {
    Exhaustive,
    Bfs,
    SampledLowerBound,
}

impl RadiusMethod {
    pub fn is_exact(self) -> bool {
        !matches!(self, RadiusMethod::SampledLowerBound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusResult {
    pub value: usize,
    pub method: RadiusMethod,
    pub exact: bool,
    pub states_visited: u64,
}

impl RadiusResult {
    fn new(value: usize, method: RadiusMethod, states_visited: u64) -> Self {
        RadiusResult {
            value,
            method,
            exact: method.is_exact(),
            states_visited,
        }
    }
}

/// Distance from `x` to the nearest codeword, giving up as soon as it drops
/// to `floor` (the caller only cares whether it beats `floor`).
fn nearest(x: &[u32], words: &[&[u32]], floor: usize) -> usize {
    let mut best = usize::MAX;
    for w in words {
        let d = hamming_distance_raw(x, w);
        if d < best {
            best = d;
            if best <= floor {
                break;
            }
        }
    }
    best
}

/// `max_x min_c d(x, c)` over all of Z_q^n.
pub fn covering_radius_exhaustive(code: &LinearCode, limit: u64) -> Result<RadiusResult> {
    let q = code.q();
    let n = code.n();
    check_budget("exhaustive covering radius", q as u64, n, limit)?;
    let words: Vec<&[u32]> = code.codewords().iter().map(|c| c.entries()).collect();
    let mut x = vec![0u32; n];
    let mut radius = 0;
    let mut visited = 0u64;
    loop {
        visited += 1;
        radius = radius.max(nearest(&x, &words, radius));
        if odometer_step(&mut x, q).is_none() {
            break;
        }
    }
    Ok(RadiusResult::new(radius, RadiusMethod::Exhaustive, visited))
}

/// Flat bit array over `[0, len)`.
#[derive(Clone, Debug)]
struct BitSet {
    words: Vec<u64>,
    len: u64,
}

impl BitSet {
    fn new(len: u64) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64) as usize],
            len,
        }
    }

    #[inline]
    fn set(&mut self, i: u64) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = (i as u64) << 6;
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(base + t)
            })
        })
    }
}

/// Multi-source ball growth: all codewords start at depth 0 and each level
/// adds every unvisited vector at Hamming distance 1 from the previous level.
/// The depth at which the ambient space is exhausted is the covering radius.
pub fn covering_radius_bfs(code: &LinearCode, limit: u64) -> Result<RadiusResult> {
    let q = code.q() as u64;
    let n = code.n();
    let total = check_budget("BFS covering radius", q, n, limit)?;

    let strides: Vec<u64> = (0..n).map(|j| q.pow(j as u32)).collect();
    // Coordinates whose stride is a whole number of words are expanded with
    // word-wide ORs; the rest go bit by bit.
    let (word_coords, bit_coords): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&j| strides[j].is_multiple_of(64));

    let mut visited = BitSet::new(total);
    let mut frontier = BitSet::new(total);
    let mut next = BitSet::new(total);
    for c in code.codewords() {
        let i = c.to_index();
        visited.set(i);
        frontier.set(i);
    }
    let mut seen = visited.count();
    let mut depth = 0;

    while seen < total {
        next.clear();
        for x in frontier.ones() {
            for &j in &bit_coords {
                let s = strides[j];
                let digit = (x / s) % q;
                let base = x - digit * s;
                for b in 0..q {
                    if b != digit {
                        next.set(base + b * s);
                    }
                }
            }
        }
        for &j in &word_coords {
            let span = (strides[j] / 64) as usize;
            let block = span * q as usize;
            for start in (0..frontier.words.len()).step_by(block) {
                for w in start..start + span {
                    let acc =
                        (0..q as usize).fold(0u64, |acc, a| acc | frontier.words[w + a * span]);
                    if acc != 0 {
                        for a in 0..q as usize {
                            next.words[w + a * span] |= acc;
                        }
                    }
                }
            }
        }
        let mut added = 0u64;
        for (nw, vw) in next.words.iter_mut().zip(visited.words.iter_mut()) {
            *nw &= !*vw;
            *vw |= *nw;
            added += nw.count_ones() as u64;
        }
        debug_assert!(added > 0, "BFS stalled before covering Z_q^n");
        debug_assert!(next.ones().all(|i| i < next.len));
        seen += added;
        depth += 1;
        std::mem::swap(&mut frontier, &mut next);
    }

    Ok(RadiusResult::new(depth, RadiusMethod::Bfs, seen))
}

/// Best of `samples` uniformly random ambient vectors, seeded ChaCha8.
/// Never exceeds the true covering radius.
pub fn sampled_lower_bound(code: &LinearCode, samples: u64, seed: u64) -> RadiusResult {
    let q = code.q();
    let n = code.n();
    let words: Vec<&[u32]> = code.codewords().iter().map(|c| c.entries()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0u32; n];
    let mut best = 0;
    for _ in 0..samples {
        for e in x.iter_mut() {
            *e = rng.gen_range(0..q);
        }
        best = best.max(nearest(&x, &words, best));
    }
    RadiusResult::new(best, RadiusMethod::SampledLowerBound, samples)
}
