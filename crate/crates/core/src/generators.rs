//! Benchmark and extremal graph families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{rat, Delta};

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph edges are valid")
}

/// Parameters of the six-part barrier graph of order `6h + 2`.
///
/// Vertex layout: part `i ∈ 0..6` holds vertices `i·h .. (i+1)·h`; the two
/// apex vertices are `u = 6h` and `v = 6h + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarrierSpec {
    pub h: usize,
}

impl BarrierSpec {
    pub fn new(h: usize) -> Result<Self> {
        if h < 2 {
            return Err(Error::InvalidParameter(format!("barrier part size must be >= 2, got {h}")));
        }
        Ok(BarrierSpec { h })
    }

    pub fn order(&self) -> usize {
        6 * self.h + 2
    }

    pub fn u(&self) -> usize {
        6 * self.h
    }

    pub fn v(&self) -> usize {
        6 * self.h + 1
    }

    pub fn part_vertex(&self, part: usize, index: usize) -> usize {
        part * self.h + index
    }

    /// `δ = (h + 5) / (6h + 2)`.
    pub fn delta(&self) -> Delta {
        let h = self.h as i64;
        Delta::new(rat(h + 5, 6 * h + 2)).expect("barrier delta lies in (0, 1)")
    }

    pub fn edge_count(&self) -> usize {
        let h = self.h;
        15 * h * h - 3 * h + 1
    }

    pub fn triangle_count(&self) -> usize {
        let h = self.h;
        2 * h * (10 * h * h - 15 * h + 8)
    }

    pub fn build(&self) -> Graph {
        let h = self.h;
        let n = self.order();
        let mut edges = Vec::new();
        for x in 0..6 * h {
            edges.push((x, self.u()));
            edges.push((x, self.v()));
        }
        edges.push((self.u(), self.v()));
        // Between two parts: K_{h,h} minus the aligned matching (i,k)–(j,k).
        for i in 0..6 {
            for j in i + 1..6 {
                for k in 0..h {
                    for l in (0..h).filter(|&l| l != k) {
                        edges.push((self.part_vertex(i, k), self.part_vertex(j, l)));
                    }
                }
            }
        }
        Graph::from_edges(n, edges).expect("barrier edges are valid")
    }
}

pub fn dross_barrier(h: usize) -> Result<Graph> {
    Ok(BarrierSpec::new(h)?.build())
}

/// `C4·K_h`: four cliques of order `h` around a 4-cycle, vertex `p·h + k`
/// being the `k`-th vertex of part `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    pub h: usize,
}

impl BlowupSpec {
    pub fn new(h: usize) -> Result<Self> {
        if h < 1 {
            return Err(Error::InvalidParameter("blow-up part size must be >= 1".into()));
        }
        Ok(BlowupSpec { h })
    }

    /// Divisibility holds exactly when `h ≡ 3 (mod 6)`.
    pub fn k3_divisible(&self) -> bool {
        self.h % 6 == 3
    }

    pub fn part_of(&self, v: usize) -> usize {
        v / self.h
    }

    pub fn build(&self) -> Graph {
        let h = self.h;
        let mut edges = Vec::new();
        for p in 0..4 {
            for k in 0..h {
                for l in k + 1..h {
                    edges.push((p * h + k, p * h + l));
                }
                let q = (p + 1) % 4;
                for l in 0..h {
                    edges.push((p * h + k, q * h + l));
                }
            }
        }
        Graph::from_edges(4 * h, edges).expect("blow-up edges are valid")
    }
}

pub fn c4_blowup(h: usize) -> Result<Graph> {
    Ok(BlowupSpec::new(h)?.build())
}

/// Seeded random graph whose complement has maximum degree `⌊δn⌋ − 1`,
/// so every degree is at least `n − ⌊δn⌋ ≥ (1 − δ)n`.
///
/// Pairs are visited in a seeded random order and each one is added to the
/// complement with probability 1/2 when both endpoints still have room.
pub fn random_dense(n: usize, delta: &Delta, seed: u64) -> Result<Graph> {
    let slack = delta.deficiency(n).floor().to_integer();
    let slack: i64 = num_traits::ToPrimitive::to_i64(&slack).unwrap_or(i64::MAX);
    if n == 0 || slack < 1 {
        return Err(Error::InvalidParameter(format!(
            "random_dense: no complement degree budget for n={n}, delta={delta}"
        )));
    }
    let max_missing = (slack - 1) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut missing_deg = vec![0usize; n];
    let mut keep = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let room = missing_deg[u] < max_missing && missing_deg[v] < max_missing;
        if room && rng.gen_bool(0.5) {
            missing_deg[u] += 1;
            missing_deg[v] += 1;
        } else {
            keep.push((u, v));
        }
    }
    Graph::from_edges(n, keep)
}
