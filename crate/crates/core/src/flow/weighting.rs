use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::graph::{Graph, RootedPair, Triangle};
use crate::rational::{fmt_rational, lcm_all, rat, Rational};

/// Exact weights on the triangles of a graph, stored in lexicographic
/// triangle order.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleWeighting {
    triangles: Vec<Triangle>,
    weights: Vec<Rational>,
}

impl TriangleWeighting {
    pub fn new(mut entries: Vec<(Triangle, Rational)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let (triangles, weights) = entries.into_iter().unzip();
        TriangleWeighting { triangles, weights }
    }

    pub fn uniform(g: &Graph, weight: Rational) -> Self {
        let triangles = g.triangles();
        let weights = vec![weight; triangles.len()];
        TriangleWeighting { triangles, weights }
    }

    pub(crate) fn from_parts(triangles: Vec<Triangle>, weights: Vec<Rational>) -> Self {
        debug_assert!(triangles.windows(2).all(|w| w[0] < w[1]));
        TriangleWeighting { triangles, weights }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triangle, &Rational)> {
        self.triangles.iter().zip(&self.weights)
    }

    pub fn index_of(&self, t: &Triangle) -> Option<usize> {
        self.triangles.binary_search(t).ok()
    }

    pub fn get(&self, t: &Triangle) -> Option<&Rational> {
        self.index_of(t).map(|i| &self.weights[i])
    }

    fn add(&mut self, t: Triangle, delta: &Rational) {
        let i = self.index_of(&t).expect("triangle of the host graph");
        self.weights[i] += delta;
    }

    /// `ω(e)` for every edge, via one common denominator.
    pub fn edge_sums(&self, g: &Graph) -> Vec<Rational> {
        let common = lcm_all(self.weights.iter().map(|w| w.denom()));
        let mut sums = vec![BigInt::zero(); g.m()];
        for (t, w) in self.iter() {
            let scaled = w.numer() * (&common / w.denom());
            for (u, v) in t.edges() {
                let e = g.edge_id(u, v).expect("triangle edge belongs to the graph");
                sums[e] += &scaled;
            }
        }
        sums.into_iter().map(|s| Rational::new(s, common.clone())).collect()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn min_weight(&self) -> Option<&Rational> {
        self.weights.iter().min()
    }

    /// `"a,b,c" → "p/q"` map, ordered by key.
    pub fn to_key_map(&self) -> BTreeMap<String, String> {
        self.iter().map(|(t, w)| (t.key(), fmt_rational(w))).collect()
    }
}

/// Sends weight `eps` from `e1` to `e2` across the K4 of a rooted pair:
/// with `e1 = ab` and `e2 = cd`, triangles `abc`, `abd` lose `eps/2` and
/// `acd`, `bcd` gain `eps/2`. Only `ω(ab)` and `ω(cd)` change, by `∓eps`.
pub fn apply_switch(
    g: &Graph,
    w: &TriangleWeighting,
    pair: RootedPair,
    eps: &Rational,
) -> TriangleWeighting {
    let mut out = w.clone();
    if eps.is_zero() {
        return out;
    }
    let (a, b) = g.edge(pair.e1 as usize);
    let (c, d) = g.edge(pair.e2 as usize);
    let half = eps * rat(1, 2);
    out.add(Triangle::new(a, b, c), &-&half);
    out.add(Triangle::new(a, b, d), &-&half);
    out.add(Triangle::new(a, c, d), &half);
    out.add(Triangle::new(b, c, d), &half);
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DecompositionCheck {
    pub valid: bool,
    /// The weighting is not defined on exactly the triangles of the graph.
    pub support_mismatch: bool,
    /// Triangles with negative weight.
    pub negative: Vec<(Triangle, String)>,
    /// Edges whose weight sum differs from 1, with the sum.
    pub bad_edges: Vec<(usize, String)>,
}

/// Exact check that all weights are nonnegative and every edge sums to 1.
pub fn verify_decomposition(g: &Graph, w: &TriangleWeighting) -> DecompositionCheck {
    let triangles = g.triangles();
    if triangles != w.triangles {
        return DecompositionCheck { support_mismatch: true, ..Default::default() };
    }
    let negative: Vec<_> = w
        .iter()
        .filter(|(_, x)| x.is_negative())
        .map(|(t, x)| (*t, fmt_rational(x)))
        .collect();
    let one = Rational::one();
    let bad_edges: Vec<_> = w
        .edge_sums(g)
        .into_iter()
        .enumerate()
        .filter(|(_, s)| *s != one)
        .map(|(e, s)| (e, fmt_rational(&s)))
        .collect();
    DecompositionCheck {
        valid: negative.is_empty() && bad_edges.is_empty(),
        support_mismatch: false,
        negative,
        bad_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, dross_barrier};
    use crate::rational::int;

    #[test]
    fn uniform_on_complete_graph_is_valid() {
        let g = complete_graph(7);
        let w = TriangleWeighting::uniform(&g, rat(1, 5));
        assert!(verify_decomposition(&g, &w).valid);
    }

    #[test]
    fn uniform_on_irregular_graph_flags_exactly_the_off_average_edges() {
        let g = dross_barrier(2).unwrap();
        let stats = g.stats();
        let w = TriangleWeighting::uniform(&g, stats.t_av.recip());
        let check = verify_decomposition(&g, &w);
        assert!(!check.valid);
        let flagged: Vec<usize> = check.bad_edges.iter().map(|(e, _)| *e).collect();
        let expected: Vec<usize> =
            (0..g.m()).filter(|&e| int(stats.t_e[e]) != stats.t_av).collect();
        assert_eq!(flagged, expected);
    }

    #[test]
    fn k4_switch_table() {
        let g = complete_graph(4);
        let w = TriangleWeighting::uniform(&g, rat(1, 2));
        let ab = g.edge_id(0, 1).unwrap();
        let cd = g.edge_id(2, 3).unwrap();
        let out = apply_switch(&g, &w, RootedPair::new(ab, cd), &rat(1, 2));
        let sums = out.edge_sums(&g);
        for (e, s) in sums.iter().enumerate() {
            let expected = if e == ab {
                rat(1, 2)
            } else if e == cd {
                rat(3, 2)
            } else {
                int(1)
            };
            assert_eq!(s, &expected, "edge {e}");
        }
        assert_eq!(apply_switch(&g, &w, RootedPair::new(ab, cd), &int(0)), w);
        let back = apply_switch(&g, &out, RootedPair::new(ab, cd), &rat(-1, 2));
        assert_eq!(back, w);
    }

    #[test]
    fn support_mismatch_is_reported() {
        let g = complete_graph(5);
        let w = TriangleWeighting::uniform(&complete_graph(4), rat(1, 3));
        assert!(verify_decomposition(&g, &w).support_mismatch);
    }
}
