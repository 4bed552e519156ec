//! Dinic's algorithm on a compressed adjacency layout, exact in `i64`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::Serialize;

use super::network::FlowNetwork;
use crate::rational::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct FlowResult {
    /// Flow value at network scale.
    pub value: i64,
    #[serde(with = "crate::rational::serde_rational")]
    pub value_exact: Rational,
    /// Net flow from `e1` to `e2` for every rooted pair (negative means the
    /// flow runs from `e2` to `e1`). Antiparallel flow is cancelled.
    #[serde(skip)]
    pub pair_flow: Vec<i64>,
    #[serde(skip)]
    pub source_flow: Vec<i64>,
    #[serde(skip)]
    pub sink_flow: Vec<i64>,
    /// `z − value`, zero when the demand is met.
    #[serde(with = "crate::rational::serde_rational")]
    pub shortfall: Rational,
    /// Source side of a minimum cut, as a mask over edge-nodes; present only
    /// when the demand is not met.
    #[serde(skip)]
    pub min_cut: Option<Vec<bool>>,
}

impl FlowResult {
    pub fn meets_demand(&self) -> bool {
        self.min_cut.is_none()
    }

    /// Flow on the arc `e1 → e2` (`forward`) or `e2 → e1`.
    pub fn arc_flow(&self, pair: usize, forward: bool) -> i64 {
        let f = self.pair_flow[pair];
        if forward {
            f.max(0)
        } else {
            (-f).max(0)
        }
    }
}

struct Residual {
    head: Vec<u32>,
    cap: Vec<i64>,
    start: Vec<usize>,
    adj: Vec<u32>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Residual {
    /// `arcs` are `(tail, head, cap, reverse_cap)`; arc `2i` is the forward
    /// arc and `2i + 1` its reverse.
    fn new(nodes: usize, arcs: &[(u32, u32, i64, i64)]) -> Self {
        let mut head = Vec::with_capacity(2 * arcs.len());
        let mut cap = Vec::with_capacity(2 * arcs.len());
        let mut out_deg = vec![0usize; nodes + 1];
        for &(u, v, c, rc) in arcs {
            head.push(v);
            cap.push(c);
            head.push(u);
            cap.push(rc);
            out_deg[u as usize] += 1;
            out_deg[v as usize] += 1;
        }
        let mut start = vec![0usize; nodes + 1];
        for v in 0..nodes {
            start[v + 1] = start[v] + out_deg[v];
        }
        let mut fill = start.clone();
        let mut adj = vec![0u32; 2 * arcs.len()];
        for (i, &(u, v, _, _)) in arcs.iter().enumerate() {
            adj[fill[u as usize]] = (2 * i) as u32;
            fill[u as usize] += 1;
            adj[fill[v as usize]] = (2 * i + 1) as u32;
            fill[v as usize] += 1;
        }
        Residual { head, cap, start, adj, level: vec![-1; nodes], cursor: vec![0; nodes] }
    }

    fn tail(&self, arc: u32) -> usize {
        self.head[(arc ^ 1) as usize] as usize
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.adj[self.start[v]..self.start[v + 1]] {
                let w = self.head[a as usize] as usize;
                if self.cap[a as usize] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] >= 0
    }

    /// One blocking flow in the current level graph.
    fn blocking_flow(&mut self, s: usize, t: usize) -> i64 {
        self.cursor.copy_from_slice(&self.start[..self.level.len()]);
        let mut total = 0i64;
        let mut path: Vec<u32> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let push = path.iter().map(|&a| self.cap[a as usize]).min().unwrap_or(0);
                for &a in &path {
                    self.cap[a as usize] -= push;
                    self.cap[(a ^ 1) as usize] += push;
                }
                total += push;
                // Retreat to the tail of the first saturated arc.
                let cut = path.iter().position(|&a| self.cap[a as usize] == 0).unwrap_or(0);
                path.truncate(cut);
                v = path.last().map_or(s, |&a| self.head[a as usize] as usize);
                continue;
            }
            let end = self.start[v + 1];
            let mut advanced = false;
            while self.cursor[v] < end {
                let a = self.adj[self.cursor[v]];
                let w = self.head[a as usize] as usize;
                if self.cap[a as usize] > 0 && self.level[w] == self.level[v] + 1 {
                    path.push(a);
                    v = w;
                    advanced = true;
                    break;
                }
                self.cursor[v] += 1;
            }
            if advanced {
                continue;
            }
            if v == s {
                return total;
            }
            self.level[v] = -1;
            let a = path.pop().expect("non-source node has an incoming path arc");
            v = self.tail(a);
            self.cursor[v] += 1;
        }
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.level.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.adj[self.start[v]..self.start[v + 1]] {
                let w = self.head[a as usize] as usize;
                if self.cap[a as usize] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Exact maximum flow from the source to the sink.
pub fn max_flow(net: &FlowNetwork) -> FlowResult {
    let (s, t) = (net.source(), net.sink());
    let c = net.pair_capacity;
    let mut arcs = Vec::with_capacity(net.pairs.len() + net.source_arcs.len() + net.sink_arcs.len());
    // A rooted pair is one undirected arc: residual c each way initially.
    arcs.extend(net.pairs.iter().map(|p| (p.e1, p.e2, c, c)));
    arcs.extend(net.source_arcs.iter().map(|&(e, cap)| (s as u32, e, cap, 0)));
    arcs.extend(net.sink_arcs.iter().map(|&(e, cap)| (e, t as u32, cap, 0)));
    let mut r = Residual::new(net.node_count(), &arcs);
    drop(arcs);

    let mut value = 0i64;
    while value < net.demand_scaled && r.bfs(s, t) {
        value += r.blocking_flow(s, t);
    }

    let p = net.pairs.len();
    let pair_flow: Vec<i64> = (0..p).map(|k| c - r.cap[2 * k]).collect();
    let source_flow: Vec<i64> = net
        .source_arcs
        .iter()
        .enumerate()
        .map(|(i, &(_, cap))| cap - r.cap[2 * (p + i)])
        .collect();
    let q = p + net.source_arcs.len();
    let sink_flow: Vec<i64> = net
        .sink_arcs
        .iter()
        .enumerate()
        .map(|(i, &(_, cap))| cap - r.cap[2 * (q + i)])
        .collect();
    debug_assert_eq!(source_flow.iter().sum::<i64>(), value);

    let scale = Rational::from_integer(net.scale.clone());
    let value_exact = Rational::from_integer(BigInt::from(value)) / &scale;
    let shortfall = &net.demand - &value_exact;
    let min_cut = (value < net.demand_scaled).then(|| {
        let seen = r.reachable_from(s);
        seen[..net.edge_count].to_vec()
    });
    FlowResult { value, value_exact, pair_flow, source_flow, sink_flow, shortfall, min_cut }
}
