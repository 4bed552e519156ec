use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::maxflow::{max_flow, FlowResult};
use super::network::{build_network, FlowNetwork};
use super::weighting::{verify_decomposition, TriangleWeighting};
use crate::cut::CutSet;
use crate::error::Result;
use crate::graph::{Graph, Triangle};
use crate::rational::{fmt_rational, int, Delta, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureStage {
    /// The maximum flow is smaller than the total excess `z`.
    FlowShortfall,
    /// A reconstructed triangle weight is negative.
    NegativeWeight,
    /// The reduced graph has edges but no triangles.
    NoTriangles,
    /// Final exact verification failed.
    Verification,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureReport {
    pub stage: FailureStage,
    /// Source side of the minimum cut, as edge ids of the input graph.
    pub min_cut_edges: Vec<usize>,
    /// `z − max flow`.
    #[serde(serialize_with = "opt_rational")]
    pub shortfall: Option<Rational>,
    #[serde(serialize_with = "opt_rational")]
    pub demand: Option<Rational>,
    pub negative_triangle: Option<(Triangle, String)>,
    /// Statistics of the minimum cut on the reduced graph, where
    /// `κ_A < λ_A` must hold.
    pub cut: Option<CutSet>,
    pub peeled_triangles: usize,
}

fn opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug)]
pub enum Decomposition {
    Success {
        weighting: TriangleWeighting,
        /// Triangles peeled during reduction (weight 1 each).
        peeled: Vec<Triangle>,
        flow_value: Rational,
    },
    Failure(Box<FailureReport>),
}

impl Decomposition {
    pub fn is_success(&self) -> bool {
        matches!(self, Decomposition::Success { .. })
    }

    pub fn weighting(&self) -> Option<&TriangleWeighting> {
        match self {
            Decomposition::Success { weighting, .. } => Some(weighting),
            Decomposition::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&FailureReport> {
        match self {
            Decomposition::Failure(r) => Some(r),
            Decomposition::Success { .. } => None,
        }
    }
}

/// Per-triangle switch totals, in units of `1 / (2·scale)`.
///
/// For a pair `{ab, cd}` with net flow `f` from `ab` to `cd`, triangles
/// `abc`, `abd` receive `−f` and `acd`, `bcd` receive `+f`; summing the
/// switches in any order gives the same result.
pub(crate) fn switch_totals(
    g: &Graph,
    triangles: &[Triangle],
    net: &FlowNetwork,
    flow: &FlowResult,
) -> Vec<i128> {
    let mut acc = vec![0i128; triangles.len()];
    let idx = |t: Triangle| triangles.binary_search(&t).expect("K4 triangle present");
    for (pair, &f) in net.pairs.iter().zip(&flow.pair_flow) {
        if f == 0 {
            continue;
        }
        let (a, b) = g.edge(pair.e1 as usize);
        let (c, d) = g.edge(pair.e2 as usize);
        let f = f as i128;
        acc[idx(Triangle::new(a, b, c))] -= f;
        acc[idx(Triangle::new(a, b, d))] -= f;
        acc[idx(Triangle::new(a, c, d))] += f;
        acc[idx(Triangle::new(b, c, d))] += f;
    }
    acc
}

/// Reduce, route the excess through rooted pairs, switch, and add the peeled
/// triangles back at weight 1. Never returns an invalid weighting: any
/// failure is reported with the stage and its witness.
pub fn decompose(g: &Graph, delta: &Delta) -> Result<Decomposition> {
    let (reduced, peeled) = g.reduce(delta)?;
    let failure = |stage| FailureReport {
        stage,
        min_cut_edges: Vec::new(),
        shortfall: None,
        demand: None,
        negative_triangle: None,
        cut: None,
        peeled_triangles: peeled.len(),
    };

    let (reduced_weights, flow_value) = if reduced.m() == 0 {
        (TriangleWeighting::new(Vec::new()), Rational::zero())
    } else {
        let net = match build_network(&reduced, delta) {
            Ok(net) => net,
            Err(crate::Error::NoTriangles) => {
                return Ok(Decomposition::Failure(Box::new(failure(FailureStage::NoTriangles))))
            }
            Err(e) => return Err(e),
        };
        let flow = max_flow(&net);
        if let Some(side) = &flow.min_cut {
            let min_cut_edges = side
                .iter()
                .enumerate()
                .filter(|(_, &s)| s)
                .map(|(e, _)| {
                    let (u, v) = reduced.edge(e);
                    g.edge_id(u, v).expect("reduced edge exists in the input")
                })
                .collect();
            let cut = CutSet::with_t_values(&reduced, side.clone(), delta, &net.t_values, &net.t_av);
            return Ok(Decomposition::Failure(Box::new(FailureReport {
                min_cut_edges,
                shortfall: Some(flow.shortfall.clone()),
                demand: Some(net.demand.clone()),
                cut: Some(cut),
                ..failure(FailureStage::FlowShortfall)
            })));
        }

        let triangles = reduced.triangles();
        let acc = switch_totals(&reduced, &triangles, &net, &flow);
        // ω'(X) = w_av + acc / (2·scale) = (2·scale·m + 3T·acc) / (6T·scale)
        let two_scale = BigInt::from(2) * &net.scale;
        let three_t = BigInt::from(3 * net.triangle_count);
        let base = &two_scale * BigInt::from(net.edge_count);
        let den = &three_t * &two_scale;
        let weights: Vec<Rational> = acc
            .iter()
            .map(|&a| Rational::new(&base + &three_t * BigInt::from(a), den.clone()))
            .collect();
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Ok(Decomposition::Failure(Box::new(FailureReport {
                negative_triangle: Some((triangles[i], fmt_rational(&weights[i]))),
                ..failure(FailureStage::NegativeWeight)
            })));
        }
        (TriangleWeighting::from_parts(triangles, weights), flow.value_exact)
    };

    // Lift to the input graph: peeled triangles get 1, triangles destroyed
    // by peeling get 0.
    let all = g.triangles();
    let mut peeled_sorted = peeled.clone();
    peeled_sorted.sort_unstable();
    let weights = all
        .iter()
        .map(|t| {
            if let Some(w) = reduced_weights.get(t) {
                w.clone()
            } else if peeled_sorted.binary_search(t).is_ok() {
                int(1)
            } else {
                Rational::zero()
            }
        })
        .collect();
    let weighting = TriangleWeighting::from_parts(all, weights);
    let check = verify_decomposition(g, &weighting);
    if !check.valid {
        return Ok(Decomposition::Failure(Box::new(failure(FailureStage::Verification))));
    }
    Ok(Decomposition::Success { weighting, peeled, flow_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::weighting::apply_switch;
    use crate::generators::{c4_blowup, complete_graph, BarrierSpec};
    use crate::rational::rat;

    #[test]
    fn complete_graphs_get_uniform_weights() {
        let d: Delta = "0.148".parse().unwrap();
        for n in [7usize, 9, 13] {
            let g = complete_graph(n);
            let dec = decompose(&g, &d).unwrap();
            let w = dec.weighting().expect("complete graph decomposes");
            let expected = rat(1, n as i64 - 2);
            assert!(w.weights().iter().all(|x| *x == expected), "n={n}");
        }
    }

    #[test]
    fn barrier_fails_with_shortfall() {
        let spec = BarrierSpec::new(2).unwrap();
        let g = spec.build();
        let dec = decompose(&g, &spec.delta()).unwrap();
        let report = dec.failure().expect("barrier defeats the flow method");
        assert_eq!(report.stage, FailureStage::FlowShortfall);
        assert!(report.shortfall.as_ref().unwrap().is_positive());
        let cut = report.cut.as_ref().unwrap();
        assert!(int(cut.kappa) < cut.lambda);
        let uv = g.edge_id(spec.u(), spec.v()).unwrap();
        assert!(report.min_cut_edges.contains(&uv));
    }

    #[test]
    fn blowup_does_not_decompose() {
        let g = c4_blowup(3).unwrap();
        let dec = decompose(&g, &"1/3".parse().unwrap()).unwrap();
        assert!(!dec.is_success());
    }

    #[test]
    fn switch_totals_match_sequential_switches() {
        // Random dense graph small enough for rational switching.
        let d: Delta = "0.3".parse().unwrap();
        let g = crate::generators::random_dense(12, &d, 5).unwrap();
        let (reduced, _) = g.reduce(&d).unwrap();
        let net = build_network(&reduced, &d).unwrap();
        let flow = max_flow(&net);
        let triangles = reduced.triangles();
        let acc = switch_totals(&reduced, &triangles, &net, &flow);
        let scale = Rational::from_integer(net.scale.clone());
        let mut w = TriangleWeighting::uniform(&reduced, net.w_av.clone());
        for (pair, &f) in net.pairs.iter().zip(&flow.pair_flow) {
            w = apply_switch(&reduced, &w, *pair, &(int(f) / &scale));
        }
        for (i, x) in w.weights().iter().enumerate() {
            assert_eq!(*x, &net.w_av + int(acc[i] as i64) / (int(2) * &scale));
        }
    }
}
