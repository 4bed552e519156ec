use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{t_average, Graph, Reducedness, RootedPair};
use crate::rational::{fmt_rational, int, lcm_all, rat, Delta, Rational};

/// The auxiliary network over edge-nodes `0..m` plus a source and a sink.
///
/// Every rooted pair carries capacity `c_max` in both directions; edges with
/// `t_e > t_av` are fed from the source with their excess `t_e·w_av − 1`,
/// edges with `t_e < t_av` drain `1 − t_e·w_av` into the sink. All capacities
/// are multiplied by `scale` so that they become integers.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    pub n: usize,
    pub edge_count: usize,
    pub pairs: Vec<RootedPair>,
    pub t_values: Vec<usize>,
    pub triangle_count: usize,
    pub t_av: Rational,
    pub w_av: Rational,
    /// `⌈(1−δ)n − 1⌉`.
    pub k4_cap: i64,
    pub c_max: Rational,
    pub scale: BigInt,
    pub pair_capacity: i64,
    /// `(edge, scaled capacity)` for arcs `s → e`.
    pub source_arcs: Vec<(u32, i64)>,
    /// `(edge, scaled capacity)` for arcs `e → t`.
    pub sink_arcs: Vec<(u32, i64)>,
    /// `z`, the total excess.
    pub demand: Rational,
    pub demand_scaled: i64,
}

impl FlowNetwork {
    pub fn source(&self) -> usize {
        self.edge_count
    }

    pub fn sink(&self) -> usize {
        self.edge_count + 1
    }

    pub fn node_count(&self) -> usize {
        self.edge_count + 2
    }

    /// `t_e·w_av − 1`, positive on `E⁺` and negative on `E⁻`.
    pub fn excess(&self, e: usize) -> Rational {
        int(self.t_values[e]) * &self.w_av - Rational::one()
    }
}

fn scaled(value: &Rational, scale: &BigInt) -> Result<i64> {
    let v = value * Rational::from_integer(scale.clone());
    debug_assert!(v.is_integer());
    v.to_integer().to_i64().ok_or_else(|| Error::CapacityOverflow(fmt_rational(&v)))
}

/// Builds the network for an `(n, δ)`-reduced graph.
pub fn build_network(g: &Graph, delta: &Delta) -> Result<FlowNetwork> {
    match g.reducedness(delta) {
        Reducedness::Reduced => {}
        witness => return Err(Error::NotReduced(witness)),
    }
    let m = g.m();
    let triangle_count = g.triangle_count();
    if m > 0 && triangle_count == 0 {
        return Err(Error::NoTriangles);
    }
    let t_values = g.t_values();
    let k4_cap = delta.k4_cap(g.n());
    let (t_av, w_av, c_max) = if m == 0 {
        (Rational::zero(), Rational::zero(), Rational::zero())
    } else {
        let t_av = t_average(triangle_count, m);
        let w_av = t_av.recip();
        // c_max = 2 / (3 t_av ⌈(1−δ)n−1⌉)
        let c_max = rat(2, 3) / (&t_av * int(k4_cap));
        (t_av, w_av, c_max)
    };

    // Excess t_e·w_av − 1 only depends on t_e; evaluate once per distinct value.
    let mut distinct: Vec<usize> = t_values.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let excess_of: Vec<(usize, Rational)> = distinct
        .iter()
        .map(|&t| (t, int(t) * &w_av - Rational::one()))
        .collect();
    let lookup = |t: usize| -> &Rational {
        let i = excess_of.binary_search_by_key(&t, |(v, _)| *v).expect("t value present");
        &excess_of[i].1
    };

    let mut dens: Vec<&BigInt> = excess_of.iter().map(|(_, r)| r.denom()).collect();
    dens.push(c_max.denom());
    let scale = lcm_all(dens);

    let pair_capacity = scaled(&c_max, &scale)?;
    let mut source_arcs = Vec::new();
    let mut sink_arcs = Vec::new();
    let mut z_plus = Rational::zero();
    let mut z_minus = Rational::zero();
    for (e, &t) in t_values.iter().enumerate() {
        let x = lookup(t);
        if x.is_positive() {
            source_arcs.push((e as u32, scaled(x, &scale)?));
            z_plus += x;
        } else if x.is_negative() {
            sink_arcs.push((e as u32, scaled(&-x, &scale)?));
            z_minus -= x;
        }
    }
    assert_eq!(z_plus, z_minus, "total excess must equal total deficit");
    let demand_scaled = scaled(&z_plus, &scale)?;
    let pairs = g.rooted_pairs();
    // Residual capacities reach 2·c_max on pair arcs.
    pair_capacity
        .checked_mul(2)
        .ok_or_else(|| Error::CapacityOverflow(fmt_rational(&c_max)))?;

    Ok(FlowNetwork {
        n: g.n(),
        edge_count: m,
        pairs,
        t_values,
        triangle_count,
        t_av,
        w_av,
        k4_cap,
        c_max,
        scale,
        pair_capacity,
        source_arcs,
        sink_arcs,
        demand: z_plus,
        demand_scaled,
    })
}

/// `1 + (210h² − 269h + 89) / (3(5h − 4)(10h² − 15h + 8))`: the least
/// final weight the apex edge `uv` of the barrier graph can reach when every
/// rooted pair carries at most `c_max`.
pub fn barrier_weight_lower_bound(h: usize) -> Result<Rational> {
    if h < 2 {
        return Err(Error::InvalidParameter(format!("barrier part size must be >= 2, got {h}")));
    }
    let h = BigInt::from(h);
    let num = BigInt::from(210) * &h * &h - BigInt::from(269) * &h + 89;
    let den = BigInt::from(3)
        * (BigInt::from(5) * &h - 4)
        * (BigInt::from(10) * &h * &h - BigInt::from(15) * &h + 8);
    Ok(Rational::one() + Rational::new(num, den))
}

/// Number of rooted pairs at each edge-node.
#[cfg(test)]
fn pair_degree(net: &FlowNetwork) -> Vec<u64> {
    let mut deg = vec![0u64; net.edge_count];
    for p in &net.pairs {
        deg[p.e1 as usize] += 1;
        deg[p.e2 as usize] += 1;
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, BarrierSpec};

    #[test]
    fn complete_graph_has_no_terminal_arcs() {
        let net = build_network(&complete_graph(7), &"0.148".parse().unwrap()).unwrap();
        assert!(net.source_arcs.is_empty() && net.sink_arcs.is_empty());
        assert_eq!(net.demand, int(0));
        assert_eq!(net.t_av, int(5));
    }

    #[test]
    fn k5_c_max() {
        let net = build_network(&complete_graph(5), &"0.3".parse().unwrap()).unwrap();
        assert_eq!(net.k4_cap, 3);
        assert_eq!(net.c_max, rat(2, 27));
        assert_eq!(net.demand, int(0));
        assert_eq!(net.pairs.len(), 15);
    }

    #[test]
    fn barrier_network_has_positive_demand() {
        let spec = BarrierSpec::new(2).unwrap();
        let g = spec.build();
        let net = build_network(&g, &spec.delta()).unwrap();
        assert_eq!(net.t_av, rat(216, 55));
        let uv = g.edge_id(spec.u(), spec.v()).unwrap();
        assert!(net.source_arcs.iter().any(|&(e, _)| e as usize == uv));
        assert!(net.demand > int(0));
        assert_eq!(int(net.demand_scaled), &net.demand * Rational::from_integer(net.scale.clone()));
        let deg = pair_degree(&net);
        assert_eq!(deg[uv], 30);
    }

    #[test]
    fn refuses_unreduced_graph() {
        let err = build_network(&complete_graph(10), &"0.3".parse().unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotReduced(Reducedness::HeavyTriangle { .. })));
    }

    #[test]
    fn barrier_bound_values() {
        assert_eq!(barrier_weight_lower_bound(2).unwrap(), int(1) + rat(391, 324));
        assert_eq!(barrier_weight_lower_bound(10).unwrap(), int(1) + rat(18399, 118404));
    }
}
