//! Edge cuts `A ⊆ E(G)` and their statistics.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{and_into, bits, popcount_and, t_average, Graph};
use crate::rational::{int, rat, Delta, Rational};

/// Adjacency rows restricted to the edges of `A` and of `B = E ∖ A`.
pub struct CutAdjacency {
    words: usize,
    in_a: Vec<u64>,
    in_b: Vec<u64>,
}

impl CutAdjacency {
    pub fn new(g: &Graph, mask: &[bool]) -> Self {
        assert_eq!(mask.len(), g.m(), "mask length must equal the edge count");
        let words = g.words();
        let mut in_a = vec![0u64; g.n() * words];
        let mut in_b = vec![0u64; g.n() * words];
        for (e, (u, v)) in g.edges().enumerate() {
            let rows = if mask[e] { &mut in_a } else { &mut in_b };
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        CutAdjacency { words, in_a, in_b }
    }

    fn row<'a>(&self, rows: &'a [u64], v: usize) -> &'a [u64] {
        &rows[v * self.words..(v + 1) * self.words]
    }

    /// Number of `A`-edges (or `B`-edges) with both ends in `set`.
    fn edges_within(&self, set: &[u64], side_a: bool) -> usize {
        let rows = if side_a { &self.in_a } else { &self.in_b };
        let twice: usize = bits(set).map(|w| popcount_and(set, self.row(rows, w))).sum();
        twice / 2
    }

    pub fn a_edges_within(&self, set: &[u64]) -> usize {
        self.edges_within(set, true)
    }

    pub fn b_edges_within(&self, set: &[u64]) -> usize {
        self.edges_within(set, false)
    }
}

/// `κ_A`: rooted pairs with exactly one edge in `A`.
///
/// Each separated pair `{e, f}` with `e ∈ A` is a `B`-edge inside `G[T_e]`,
/// so the count is a sum of bitset intersections over `A`.
pub fn separated_pairs(g: &Graph, mask: &[bool]) -> u64 {
    let adj = CutAdjacency::new(g, mask);
    (0..g.m())
        .into_par_iter()
        .filter(|&e| mask[e])
        .map_init(
            || vec![0u64; g.words()],
            |t, e| {
                let (u, v) = g.edge(e);
                and_into(t, g.row(u), g.row(v));
                adj.b_edges_within(t) as u64
            },
        )
        .sum()
}

/// `e_A(u)`: edges of `G[N(u)]` lying in `A`, for every vertex.
pub fn neighbourhood_cut_edges(g: &Graph, mask: &[bool]) -> Vec<usize> {
    let adj = CutAdjacency::new(g, mask);
    (0..g.n()).into_par_iter().map(|u| adj.a_edges_within(g.row(u))).collect()
}

/// A subset of edges together with its exact statistics.
#[derive(Clone, Debug, Serialize)]
pub struct CutSet {
    #[serde(skip)]
    pub member: Vec<bool>,
    pub size: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub alpha: Rational,
    /// `None` for the empty cut, where `t_A` is undefined.
    #[serde(serialize_with = "serialize_opt")]
    pub t_a: Option<Rational>,
    /// `Σ_{e∈A} t_e`, kept so callers can avoid dividing.
    pub t_sum: u64,
    pub kappa: u64,
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda: Rational,
}

fn serialize_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&crate::rational::fmt_rational(r)),
        None => s.serialize_none(),
    }
}

impl CutSet {
    /// Computes `α`, `t_A`, `κ_A` and `λ_A` exactly.
    pub fn new(g: &Graph, mask: Vec<bool>, delta: &Delta) -> CutSet {
        let t = g.t_values();
        Self::with_t_values(g, mask, delta, &t, &t_average(g.triangle_count(), g.m()))
    }

    /// As [`CutSet::new`], reusing precomputed `t_e` and `t_av`.
    pub fn with_t_values(
        g: &Graph,
        mask: Vec<bool>,
        delta: &Delta,
        t_values: &[usize],
        t_av: &Rational,
    ) -> CutSet {
        assert_eq!(mask.len(), g.m(), "mask length must equal the edge count");
        let size = mask.iter().filter(|&&x| x).count();
        let m = g.m();
        let alpha = if m == 0 { Rational::zero() } else { rat(size as i64, m as i64) };
        if size == 0 {
            return CutSet {
                member: mask,
                size,
                alpha,
                t_a: None,
                t_sum: 0,
                kappa: 0,
                lambda: Rational::zero(),
            };
        }
        let t_sum: u64 = mask.iter().zip(t_values).filter(|(&a, _)| a).map(|(_, &t)| t as u64).sum();
        let t_a = rat(t_sum as i64, size as i64);
        let kappa = if size == m { 0 } else { separated_pairs(g, &mask) };
        // λ_A = (3/2)|A|⌈(1−δ)n−1⌉(t_A − t_av) = (3/2)⌈…⌉(Σ_A t_e − |A| t_av)
        let cap = int(delta.k4_cap(g.n()));
        let lambda = rat(3, 2) * cap * (int(t_sum) - int(size) * t_av);
        CutSet { member: mask, size, alpha, t_a: Some(t_a), t_sum, kappa, lambda }
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_full(&self) -> bool {
        self.size == self.member.len()
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        self.member.iter().enumerate().filter(|(_, &a)| a).map(|(e, _)| e).collect()
    }

    pub fn complement(&self) -> Vec<bool> {
        self.member.iter().map(|&a| !a).collect()
    }
}

pub fn mask_from_ids(m: usize, ids: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut mask = vec![false; m];
    for e in ids {
        mask[e] = true;
    }
    mask
}
