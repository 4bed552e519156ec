//! Dense simple graphs stored as packed adjacency rows.
//!
//! Edges are indexed lexicographically by `(u, v)` with `u < v`; every mask,
//! report and certificate in the crate refers to these indices.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, rat, Delta, Rational};

const NO_EDGE: u32 = u32::MAX;

/// Iterates the set bits of a packed row, in increasing order.
pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let bit = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + bit)
        })
    })
}

pub(crate) fn and_into(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for ((d, x), y) in dst.iter_mut().zip(a).zip(b) {
        *d = x & y;
    }
}

pub(crate) fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

pub(crate) fn popcount(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

/// Clears every bit at position `<= pos`.
pub(crate) fn clear_upto(row: &mut [u64], pos: usize) {
    let word = pos / 64;
    for w in row.iter_mut().take(word) {
        *w = 0;
    }
    if word < row.len() {
        let keep = pos % 64 + 1;
        row[word] &= if keep == 64 { 0 } else { !0u64 << keep };
    }
}

/// A triangle `a < b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle(pub [u32; 3]);

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let mut v = [a as u32, b as u32, c as u32];
        v.sort_unstable();
        Triangle(v)
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.0[0] as usize, self.0[1] as usize, self.0[2] as usize]
    }

    /// The key used in weight files, `"a,b,c"`.
    pub fn key(&self) -> String {
        format!("{},{},{}", self.0[0], self.0[1], self.0[2])
    }

    pub fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.vertices();
        [(a, b), (a, c), (b, c)]
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Two vertex-disjoint edges spanning a K4, `e1 < e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootedPair {
    pub e1: u32,
    pub e2: u32,
}

impl RootedPair {
    pub fn new(a: usize, b: usize) -> Self {
        let (e1, e2) = if a < b { (a, b) } else { (b, a) };
        RootedPair { e1: e1 as u32, e2: e2 as u32 }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edges: Vec<(u32, u32)>,
    edge_ids: Vec<u32>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("m", &self.m()).finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Endpoint order within a pair does
    /// not matter; self-loops, duplicates and out-of-range ids are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            if rows[u * words + v / 64] >> (v % 64) & 1 == 1 {
                return Err(Error::DuplicateEdge(u, v));
            }
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        Ok(Self::from_rows(n, words, rows))
    }

    fn from_rows(n: usize, words: usize, rows: Vec<u64>) -> Graph {
        let mut edges = Vec::new();
        let mut edge_ids = vec![NO_EDGE; n * n];
        for u in 0..n {
            let row = &rows[u * words..(u + 1) * words];
            for v in bits(row).filter(|&v| v > u) {
                let id = edges.len() as u32;
                edge_ids[u * n + v] = id;
                edge_ids[v * n + u] = id;
                edges.push((u as u32, v as u32));
            }
        }
        Graph { n, words, rows, edges, edge_ids }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.edge_ids[u * self.n + v] {
            NO_EDGE => None,
            id => Some(id as usize),
        }
    }

    /// Endpoints of edge `e`, smaller first.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn degree(&self, v: usize) -> usize {
        popcount(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    /// `T_e`: the common neighbours of the endpoints of `e`.
    pub fn common_neighbourhood(&self, e: usize) -> Vec<usize> {
        let (u, v) = self.edge(e);
        let mut t = vec![0u64; self.words];
        and_into(&mut t, self.row(u), self.row(v));
        bits(&t).collect()
    }

    /// `t_e = |T_e|`.
    pub fn t_e(&self, e: usize) -> usize {
        let (u, v) = self.edge(e);
        popcount_and(self.row(u), self.row(v))
    }

    pub fn t_values(&self) -> Vec<usize> {
        (0..self.m()).into_par_iter().map(|e| self.t_e(e)).collect()
    }

    /// All triangles, each once, sorted lexicographically.
    pub fn triangles(&self) -> Vec<Triangle> {
        let per_vertex: Vec<Vec<Triangle>> = (0..self.n)
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::new();
                let mut ab = vec![0u64; self.words];
                for b in self.neighbours(a).filter(|&b| b > a) {
                    and_into(&mut ab, self.row(a), self.row(b));
                    clear_upto(&mut ab, b);
                    out.extend(bits(&ab).map(|c| Triangle([a as u32, b as u32, c as u32])));
                }
                out
            })
            .collect();
        per_vertex.concat()
    }

    pub fn triangle_count(&self) -> usize {
        (0..self.n)
            .into_par_iter()
            .map(|a| {
                let mut ab = vec![0u64; self.words];
                self.neighbours(a)
                    .filter(|&b| b > a)
                    .map(|b| {
                        and_into(&mut ab, self.row(a), self.row(b));
                        clear_upto(&mut ab, b);
                        popcount(&ab)
                    })
                    .sum::<usize>()
            })
            .sum()
    }

    /// Visits every K4 `a < b < c < d` rooted at vertex `a`.
    fn for_each_k4_at(&self, a: usize, mut visit: impl FnMut([usize; 4])) {
        let mut ab = vec![0u64; self.words];
        let mut abc = vec![0u64; self.words];
        for b in self.neighbours(a).filter(|&b| b > a) {
            and_into(&mut ab, self.row(a), self.row(b));
            clear_upto(&mut ab, b);
            for c in bits(&ab) {
                and_into(&mut abc, &ab, self.row(c));
                clear_upto(&mut abc, c);
                for d in bits(&abc) {
                    visit([a, b, c, d]);
                }
            }
        }
    }

    pub fn k4_count(&self) -> usize {
        (0..self.n)
            .into_par_iter()
            .map(|a| {
                let mut count = 0;
                self.for_each_k4_at(a, |_| count += 1);
                count
            })
            .sum()
    }

    /// All rooted pairs, three per K4, sorted by `(e1, e2)`.
    pub fn rooted_pairs(&self) -> Vec<RootedPair> {
        let id = |x: usize, y: usize| self.edge_ids[x * self.n + y] as usize;
        let mut pairs: Vec<RootedPair> = (0..self.n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let mut out = Vec::new();
                self.for_each_k4_at(a, |[a, b, c, d]| {
                    out.push(RootedPair::new(id(a, b), id(c, d)));
                    out.push(RootedPair::new(id(a, c), id(b, d)));
                    out.push(RootedPair::new(id(a, d), id(b, c)));
                });
                out
            })
            .collect();
        pairs.par_sort_unstable();
        pairs
    }

    /// True iff all degrees are even and `3 | m`.
    pub fn is_k3_divisible(&self) -> bool {
        self.m().is_multiple_of(3) && (0..self.n).all(|v| self.degree(v).is_multiple_of(2))
    }

    /// A copy of the graph with the listed edges removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut rows = self.rows.clone();
        let w = self.words;
        for &(u, v) in removed {
            rows[u * w + v / 64] &= !(1 << (v % 64));
            rows[v * w + u / 64] &= !(1 << (u % 64));
        }
        Self::from_rows(self.n, w, rows)
    }

    pub fn stats(&self) -> GraphStats {
        let t_e = self.t_values();
        let triangle_count = self.triangle_count();
        GraphStats {
            n: self.n,
            m: self.m(),
            triangle_count,
            t_av: t_average(triangle_count, self.m()),
            min_degree: self.min_degree(),
            t_e,
        }
    }

    /// Checks whether the graph is `(n, δ)`-reduced, returning the smallest
    /// witness when it is not.
    pub fn reducedness(&self, delta: &Delta) -> Reducedness {
        let n = self.n;
        let degrees = self.degrees();
        if let Some(v) = (0..n).find(|&v| !delta.admits_min_degree(n, degrees[v])) {
            return Reducedness::LowDegree { vertex: v, degree: degrees[v] };
        }
        let cap = delta.reduced_degree_cap(n);
        let heavy = |v: usize| degrees[v] as i64 > cap;
        let mut ab = vec![0u64; self.words];
        for a in (0..n).filter(|&a| heavy(a)) {
            for b in self.neighbours(a).filter(|&b| b > a && heavy(b)) {
                and_into(&mut ab, self.row(a), self.row(b));
                clear_upto(&mut ab, b);
                if let Some(c) = bits(&ab).find(|&c| heavy(c)) {
                    return Reducedness::HeavyTriangle { triangle: Triangle::new(a, b, c) };
                }
            }
        }
        Reducedness::Reduced
    }

    pub fn is_reduced(&self, delta: &Delta) -> bool {
        self.reducedness(delta).is_reduced()
    }

    /// Peels the lexicographically smallest triangle whose three vertices
    /// all have degree above `⌈(1−δ)n+1⌉` until none is left. Returns the
    /// reduced graph and the removed triangles in removal order.
    pub fn reduce(&self, delta: &Delta) -> Result<(Graph, Vec<Triangle>)> {
        let n = self.n;
        let min_degree = self.min_degree();
        if n > 0 && !delta.admits_min_degree(n, min_degree) {
            return Err(Error::NotDenseEnough {
                min_degree,
                bound: crate::rational::fmt_rational(&delta.min_degree_bound(n)),
            });
        }
        let cap = delta.reduced_degree_cap(n);
        let w = self.words;
        let mut rows = self.rows.clone();
        let mut degrees = self.degrees();
        let mut removed = Vec::new();
        let mut ab = vec![0u64; w];
        // Removals only shrink the set of violating triangles, so the scan
        // never has to revisit an earlier (a, b).
        for a in 0..n {
            let mut b = a + 1;
            while b < n && degrees[a] as i64 > cap {
                let has_ab = rows[a * w + b / 64] >> (b % 64) & 1 == 1;
                if has_ab && degrees[b] as i64 > cap {
                    and_into(&mut ab, &rows[a * w..(a + 1) * w], &rows[b * w..(b + 1) * w]);
                    clear_upto(&mut ab, b);
                    if let Some(c) = bits(&ab).find(|&c| degrees[c] as i64 > cap) {
                        for (x, y) in [(a, b), (a, c), (b, c)] {
                            rows[x * w + y / 64] &= !(1 << (y % 64));
                            rows[y * w + x / 64] &= !(1 << (x % 64));
                        }
                        for v in [a, b, c] {
                            degrees[v] -= 2;
                        }
                        removed.push(Triangle::new(a, b, c));
                    }
                }
                b += 1;
            }
        }
        Ok((Self::from_rows(n, w, rows), removed))
    }
}

/// `t_av = 3·|triangles| / m`, zero for the empty graph.
pub fn t_average(triangle_count: usize, m: usize) -> Rational {
    if m == 0 {
        int(0)
    } else {
        rat(3 * triangle_count as i64, m as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub triangle_count: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub t_av: Rational,
    pub min_degree: usize,
    #[serde(skip)]
    pub t_e: Vec<usize>,
}

/// Outcome of the reducedness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reducedness {
    Reduced,
    /// Vertex below the minimum degree `(1−δ)n`.
    LowDegree { vertex: usize, degree: usize },
    /// Triangle whose three vertices all exceed `⌈(1−δ)n+1⌉`.
    HeavyTriangle { triangle: Triangle },
}

impl Reducedness {
    pub fn is_reduced(&self) -> bool {
        matches!(self, Reducedness::Reduced)
    }
}

impl fmt::Display for Reducedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reducedness::Reduced => f.write_str("reduced"),
            Reducedness::LowDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} below (1-delta)n")
            }
            Reducedness::HeavyTriangle { triangle: t } => {
                write!(f, "triangle {t} has all degrees above ceil((1-delta)n+1)")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_graph;

    #[test]
    fn k4_basics() {
        let g = complete_graph(4);
        assert_eq!(g.m(), 6);
        assert_eq!(g.triangles().len(), 4);
        assert_eq!(g.rooted_pairs().len(), 3);
        assert_eq!(g.edge(0), (0, 1));
        assert_eq!(g.edge(5), (2, 3));
        assert_eq!(g.edge_id(3, 2), Some(5));
    }

    #[test]
    fn single_edge_has_no_triangles() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.triangle_count(), 0);
        assert_eq!(g.t_e(0), 0);
        assert_eq!(g.stats().t_av, int(0));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn k5_common_neighbourhood() {
        let g = complete_graph(5);
        let e = g.edge_id(1, 3).unwrap();
        assert_eq!(g.common_neighbourhood(e), vec![0, 2, 4]);
        assert_eq!(g.t_e(e), 3);
        assert_eq!(g.rooted_pairs().len(), 15);
    }

    #[test]
    fn clear_upto_boundaries() {
        let mut row = vec![!0u64; 2];
        clear_upto(&mut row, 63);
        assert_eq!(row, vec![0, !0]);
        let mut row = vec![!0u64; 2];
        clear_upto(&mut row, 64);
        assert_eq!(row, vec![0, !1]);
        let mut row = vec![!0u64; 2];
        clear_upto(&mut row, 127);
        assert_eq!(row, vec![0, 0]);
    }

    #[test]
    fn reducedness_examples() {
        let d: Delta = "0.148".parse().unwrap();
        assert!(complete_graph(7).is_reduced(&d));
        // ⌈0.852·10+1⌉ = 10 ≥ 9, so K10 is reduced at δ = 0.148 ...
        assert!(complete_graph(10).is_reduced(&d));
        // ... but at δ = 0.01 its minimum degree 9 < 9.9.
        let tiny: Delta = "0.01".parse().unwrap();
        assert_eq!(
            complete_graph(10).reducedness(&tiny),
            Reducedness::LowDegree { vertex: 0, degree: 9 }
        );
        let d3: Delta = "0.3".parse().unwrap();
        assert_eq!(
            complete_graph(10).reducedness(&d3),
            Reducedness::HeavyTriangle { triangle: Triangle::new(0, 1, 2) }
        );
    }

    #[test]
    fn reduce_fixed_point_and_peeling() {
        let d: Delta = "0.148".parse().unwrap();
        let k7 = complete_graph(7);
        let (g, removed) = k7.reduce(&d).unwrap();
        assert_eq!(g, k7);
        assert!(removed.is_empty());

        let d3: Delta = "0.3".parse().unwrap();
        let k10 = complete_graph(10);
        let (g, removed) = k10.reduce(&d3).unwrap();
        assert!(!removed.is_empty());
        assert_eq!(removed[0], Triangle::new(0, 1, 2));
        assert!(g.is_reduced(&d3));
        assert_eq!(g.m() + 3 * removed.len(), k10.m());
        for t in &removed {
            for (u, v) in t.edges() {
                assert!(k10.has_edge(u, v) && !g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn reduce_refuses_sparse_input() {
        let d: Delta = "0.1".parse().unwrap();
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(matches!(g.reduce(&d), Err(Error::NotDenseEnough { .. })));
    }
}
