//! Exact evaluators for the inequalities relating `κ_A`, `λ_A`, `m`, `t_av`
//! and `e_A` on concrete graphs, and the normalised threshold expressions.
//!
//! Every evaluator returns a [`BoundReport`] whose `holds` flag is
//! `lhs ≥ rhs` (or `lhs > rhs` / `lhs = rhs`, as recorded in `relation`).
//! Upper bounds are therefore reported with the bound on the left.

pub mod audit;
pub mod corollary;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cut::{neighbourhood_cut_edges, CutAdjacency, CutSet};
use crate::error::{Error, Result};
use crate::graph::{and_into, Graph, Reducedness};
use crate::rational::{fmt_rational, int, rat, to_f64, Delta, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtLeast,
    GreaterThan,
    Equal,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub bound_name: String,
    /// Human-readable orientation, e.g. `"kappa_A >= rhs"`.
    pub statement: String,
    pub relation: Relation,
    pub lhs: String,
    pub rhs: String,
    pub lhs_approx: f64,
    pub rhs_approx: f64,
    /// False for the leading-order floating-point evaluations.
    pub exact: bool,
    pub holds: bool,
    pub context: String,
}

impl BoundReport {
    pub fn exact(
        name: &str,
        statement: &str,
        relation: Relation,
        lhs: &Rational,
        rhs: &Rational,
        context: impl Into<String>,
    ) -> Self {
        let holds = match relation {
            Relation::AtLeast => lhs >= rhs,
            Relation::GreaterThan => lhs > rhs,
            Relation::Equal => lhs == rhs,
        };
        BoundReport {
            bound_name: name.to_string(),
            statement: statement.to_string(),
            relation,
            lhs: fmt_rational(lhs),
            rhs: fmt_rational(rhs),
            lhs_approx: to_f64(lhs),
            rhs_approx: to_f64(rhs),
            exact: true,
            holds,
            context: context.into(),
        }
    }

    pub fn approx(
        name: &str,
        statement: &str,
        relation: Relation,
        lhs: f64,
        rhs: f64,
        context: impl Into<String>,
    ) -> Self {
        let holds = match relation {
            Relation::AtLeast => lhs >= rhs,
            Relation::GreaterThan => lhs > rhs,
            Relation::Equal => lhs == rhs,
        };
        BoundReport {
            bound_name: name.to_string(),
            statement: statement.to_string(),
            relation,
            lhs: format!("{lhs:.12e}"),
            rhs: format!("{rhs:.12e}"),
            lhs_approx: lhs,
            rhs_approx: rhs,
            exact: false,
            holds,
            context: context.into(),
        }
    }
}

fn require_reduced(g: &Graph, delta: &Delta) -> Result<()> {
    match g.reducedness(delta) {
        Reducedness::Reduced => Ok(()),
        w => Err(Error::NotReduced(w)),
    }
}

/// `(1 − 2δ)n`, the minimum possible `t_e`.
fn min_codegree(n: usize, delta: &Delta) -> Rational {
    (Rational::one() - int(2) * delta.value()) * int(n)
}

/// Graph-wide quantities shared by the per-cut evaluators.
#[derive(Clone, Debug)]
pub struct GraphContext {
    pub n: usize,
    pub m: usize,
    pub t_values: Vec<usize>,
    pub t_av: Rational,
    pub delta: Delta,
}

impl GraphContext {
    pub fn new(g: &Graph, delta: &Delta) -> Self {
        let stats = g.stats();
        GraphContext { n: g.n(), m: g.m(), t_values: stats.t_e, t_av: stats.t_av, delta: delta.clone() }
    }

    pub fn cut(&self, g: &Graph, mask: Vec<bool>) -> CutSet {
        CutSet::with_t_values(g, mask, &self.delta, &self.t_values, &self.t_av)
    }

    fn k4_cap(&self) -> Rational {
        int(self.delta.k4_cap(self.n))
    }
}

/// Upper bounds (i) and (ii) on `λ_A`:
/// `(3/2)α(1−α)m⌈(1−δ)n−1⌉(t_A − (1−2δ)n)` and
/// `(3/2)(1−α)m⌈(1−δ)n−1⌉(t_av − (1−2δ)n)`. `None` for the empty cut.
pub fn lambda_upper_bounds(ctx: &GraphContext, cut: &CutSet) -> Option<(Rational, Rational)> {
    let t_a = cut.t_a.as_ref()?;
    let m = int(ctx.m);
    let one_minus = Rational::one() - &cut.alpha;
    let floor_t = min_codegree(ctx.n, &ctx.delta);
    let common = rat(3, 2) * &m * ctx.k4_cap();
    let first = &common * &cut.alpha * &one_minus * (t_a - &floor_t);
    let second = &common * &one_minus * (&ctx.t_av - &floor_t);
    Some((first, second))
}

pub fn lambda_bound_reports(ctx: &GraphContext, cut: &CutSet, context: &str) -> Vec<BoundReport> {
    match lambda_upper_bounds(ctx, cut) {
        Some((first, second)) => vec![
            BoundReport::exact("lambda_upper_i", "bound_i >= lambda_A", Relation::AtLeast, &first, &cut.lambda, context),
            BoundReport::exact("lambda_upper_ii", "bound_ii >= lambda_A", Relation::AtLeast, &second, &cut.lambda, context),
        ],
        None => Vec::new(),
    }
}

/// `Σ_{v∈U} deg(v) < |U|((1−δ)n + 2) + ½(δn − 2)²`.
pub fn degree_sum_bound(g: &Graph, vertices: &[usize], delta: &Delta) -> Result<BoundReport> {
    require_reduced(g, delta)?;
    let n = g.n();
    let sum: usize = vertices.iter().map(|&v| g.degree(v)).sum();
    let slack = delta.deficiency(n) - int(2);
    let rhs = int(vertices.len()) * (delta.min_degree_bound(n) + int(2)) + rat(1, 2) * &slack * &slack;
    Ok(BoundReport::exact(
        "degree_sum",
        "bound > sum_{v in U} deg(v)",
        Relation::GreaterThan,
        &rhs,
        &int(sum),
        format!("|U|={}", vertices.len()),
    ))
}

/// `((2 − 2δ + δ²)/4)n² + (1−δ)n + 1`.
pub fn edge_count_limit(n: usize, delta: &Delta) -> Rational {
    let d = delta.value();
    let n_r = int(n);
    (int(2) - int(2) * d + d * d) / int(4) * &n_r * &n_r + delta.min_degree_bound(n) + Rational::one()
}

pub fn edge_count_bound(g: &Graph, delta: &Delta) -> Result<BoundReport> {
    require_reduced(g, delta)?;
    Ok(BoundReport::exact(
        "edge_count",
        "bound > m",
        Relation::GreaterThan,
        &edge_count_limit(g.n(), delta),
        &int(g.m()),
        "graph",
    ))
}

/// `3(1−δ)n − ((2n − 3δn + 2)/m)·C(n,2)`.
pub fn tav_limit(n: usize, m: usize, delta: &Delta) -> Rational {
    let n_r = int(n);
    let pairs = int(n * n.saturating_sub(1) / 2);
    int(3) * delta.min_degree_bound(n)
        - (int(2) * &n_r - int(3) * delta.deficiency(n) + int(2)) / int(m) * pairs
}

pub fn tav_upper_bound(g: &Graph, delta: &Delta) -> Result<BoundReport> {
    require_reduced(g, delta)?;
    let stats = g.stats();
    if stats.m == 0 {
        return Err(Error::InvalidParameter("t_av bound needs at least one edge".into()));
    }
    Ok(BoundReport::exact(
        "tav_upper",
        "bound >= t_av",
        Relation::AtLeast,
        &tav_limit(g.n(), stats.m, delta),
        &stats.t_av,
        "graph",
    ))
}

/// `½|S|t_S(t_S − δn) − |S|(|S| − 1)`, written with `Σ_S t_e` to stay exact.
pub fn dross_kappa_floor(cut: &CutSet, n: usize, delta: &Delta) -> Option<Rational> {
    let t_s = cut.t_a.as_ref()?;
    let s = int(cut.size);
    Some(rat(1, 2) * &s * t_s * (t_s - delta.deficiency(n)) - &s * (&s - Rational::one()))
}

pub fn kappa_lower_dross(ctx: &GraphContext, cut: &CutSet, context: &str) -> Option<BoundReport> {
    let rhs = dross_kappa_floor(cut, ctx.n, &ctx.delta)?;
    Some(BoundReport::exact("kappa_lower_dross", "kappa_S >= rhs", Relation::AtLeast, &int(cut.kappa), &rhs, context))
}

/// `½α(1−α)m(t_A − 2δn)(t_A − 3δn)`, zero for the empty cut.
pub fn window_kappa_floor(ctx: &GraphContext, cut: &CutSet) -> Rational {
    let Some(t_a) = cut.t_a.as_ref() else { return Rational::zero() };
    let dn = ctx.delta.deficiency(ctx.n);
    rat(1, 2) * &cut.alpha * (Rational::one() - &cut.alpha) * int(ctx.m)
        * (t_a - int(2) * &dn)
        * (t_a - int(3) * &dn)
}

/// `None` when `t_A < 3δn`: both factors of the floor can then be negative
/// and the product no longer bounds anything. Since `t_A ≥ (1−2δ)n`, this
/// only happens for `δ > 1/5`.
pub fn kappa_lower_window(ctx: &GraphContext, cut: &CutSet, context: &str) -> Option<BoundReport> {
    if let Some(t_a) = &cut.t_a {
        if *t_a < int(3) * ctx.delta.deficiency(ctx.n) {
            return None;
        }
    }
    Some(BoundReport::exact(
        "kappa_lower_window",
        "kappa_A >= rhs",
        Relation::AtLeast,
        &int(cut.kappa),
        &window_kappa_floor(ctx, cut),
        context,
    ))
}

/// The four `e_A` checks: per-vertex range, the sum identity, the per-edge
/// intersection bound on `B`, and the aggregate `κ_A` bound.
pub fn ea_bounds_audit(g: &Graph, ctx: &GraphContext, cut: &CutSet, context: &str) -> Vec<BoundReport> {
    let n = ctx.n;
    let a = int(cut.size);
    let b_size = ctx.m - cut.size;
    let e_a = neighbourhood_cut_edges(g, &cut.member);
    let d = ctx.delta.value();
    let mut out = Vec::with_capacity(5);

    // ½(1−δ)(1−2δ)n² − (1−α)m ≤ e_A(u) ≤ αm
    let lower = rat(1, 2) * (Rational::one() - d) * (Rational::one() - int(2) * d) * int(n * n) - int(b_size);
    if let Some(&lo) = e_a.iter().min() {
        out.push(BoundReport::exact("ea_range_lower", "min_u e_A(u) >= bound", Relation::AtLeast, &int(lo), &lower, context));
    }
    if let Some(&hi) = e_a.iter().max() {
        out.push(BoundReport::exact("ea_range_upper", "alpha m >= max_u e_A(u)", Relation::AtLeast, &a, &int(hi), context));
    }

    let total: usize = e_a.iter().sum();
    out.push(BoundReport::exact(
        "ea_sum_identity",
        "sum_u e_A(u) == |A| t_A",
        Relation::Equal,
        &int(total),
        &int(cut.t_sum),
        context,
    ));

    // |E_A(u) ∩ E_A(v)| ≥ e_A(u) + e_A(v) − αm for uv ∈ B; report the tightest edge.
    let adj = CutAdjacency::new(g, &cut.member);
    let mut t = vec![0u64; g.words()];
    let mut worst: Option<(i64, usize, usize)> = None;
    let mut sum_b: i64 = 0;
    for (e, (u, v)) in g.edges().enumerate() {
        if cut.member[e] {
            continue;
        }
        and_into(&mut t, g.row(u), g.row(v));
        let common = adj.a_edges_within(&t) as i64;
        let floor = e_a[u] as i64 + e_a[v] as i64 - cut.size as i64;
        sum_b += e_a[u] as i64 + e_a[v] as i64;
        if worst.is_none_or(|(slack, _, _)| common - floor < slack) {
            worst = Some((common - floor, common as usize, e));
        }
    }
    if let Some((slack, common, e)) = worst {
        let floor = common as i64 - slack;
        out.push(BoundReport::exact(
            "ea_intersection_edge",
            "|E_A(u) ∩ E_A(v)| >= e_A(u) + e_A(v) - alpha m",
            Relation::AtLeast,
            &int(common),
            &int(floor),
            format!("{context}; tightest B-edge {e}"),
        ));
    }

    // κ_A ≥ Σ_{uv∈B}(e_A(u) + e_A(v)) − α(1−α)m² = Σ − |A||B|
    let rhs = int(sum_b) - &a * int(b_size);
    out.push(BoundReport::exact(
        "ea_intersection_kappa",
        "kappa_A >= sum_B(e_A(u)+e_A(v)) - alpha(1-alpha)m^2",
        Relation::AtLeast,
        &int(cut.kappa),
        &rhs,
        context,
    ));
    out
}

/// `κ_A ≥ λ_A` whenever `t_A ≤ threshold·n` (the window corollary's
/// conclusion). `None` if the cut is outside the window or empty.
pub fn window_conclusion(ctx: &GraphContext, cut: &CutSet, threshold: &Rational, context: &str) -> Option<BoundReport> {
    let t_a = cut.t_a.as_ref()?;
    if *t_a > threshold * int(ctx.n) {
        return None;
    }
    Some(BoundReport::exact("kappa_vs_lambda_window", "kappa_A >= lambda_A", Relation::AtLeast, &int(cut.kappa), &cut.lambda, context))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::mask_from_ids;
    use crate::generators::{complete_graph, BarrierSpec};

    fn k5_setup() -> (Graph, GraphContext, CutSet) {
        let g = complete_graph(5);
        let ctx = GraphContext::new(&g, &"0.3".parse().unwrap());
        let ids = [(0, 1), (0, 2), (1, 2)].map(|(u, v)| g.edge_id(u, v).unwrap());
        let cut = ctx.cut(&g, mask_from_ids(g.m(), ids));
        (g, ctx, cut)
    }

    #[test]
    fn k5_triangle_bounds() {
        let (g, ctx, cut) = k5_setup();
        let (first, second) = lambda_upper_bounds(&ctx, &cut).unwrap();
        assert_eq!(cut.lambda, int(0));
        assert!(first >= int(0) && second >= int(0));
        // ½·3·3·(3 − 1.5) − 6 = 0.75
        assert_eq!(dross_kappa_floor(&cut, 5, &ctx.delta).unwrap(), rat(3, 4));
        assert!(kappa_lower_dross(&ctx, &cut, "k5").unwrap().holds);
        // t_A = 3 = 2δn·… : (3 − 3)(3 − 4.5) = 0
        assert_eq!(window_kappa_floor(&ctx, &cut), int(0));
        let reports = ea_bounds_audit(&g, &ctx, &cut, "k5");
        assert!(reports.iter().all(|r| r.holds), "{reports:#?}");
        let edge = reports.iter().find(|r| r.bound_name == "ea_intersection_edge").unwrap();
        assert_eq!(edge.lhs, edge.rhs);
    }

    #[test]
    fn single_edge_dross_floor() {
        let g = complete_graph(7);
        let ctx = GraphContext::new(&g, &"0.148".parse().unwrap());
        let cut = ctx.cut(&g, mask_from_ids(g.m(), [0]));
        // ½·5·(5 − 1.036) = 9.91; the edge lies in C(5,2) = 10 rooted pairs.
        assert_eq!(cut.kappa, 10);
        assert!(kappa_lower_dross(&ctx, &cut, "edge").unwrap().holds);
    }

    #[test]
    fn window_floor_needs_nonnegative_factors() {
        let spec = BarrierSpec::new(2).unwrap();
        let g = spec.build();
        let ctx = GraphContext::new(&g, &spec.delta());
        let cut = ctx.cut(&g, mask_from_ids(g.m(), [0]));
        assert!(kappa_lower_window(&ctx, &cut, "").is_none());
        // The unguarded floor exceeds κ here.
        assert!(window_kappa_floor(&ctx, &cut) > int(cut.kappa));
    }

    #[test]
    fn graph_level_bounds() {
        let d: Delta = "0.148".parse().unwrap();
        let k7 = complete_graph(7);
        let all: Vec<usize> = (0..7).collect();
        let r = degree_sum_bound(&k7, &all, &d).unwrap();
        assert!(r.holds && r.rhs == "42/1");
        assert!(degree_sum_bound(&k7, &[], &d).unwrap().holds);
        assert!(edge_count_bound(&k7, &d).unwrap().holds);
        let t = tav_upper_bound(&k7, &d).unwrap();
        assert!(t.holds && t.lhs == t.rhs && t.rhs == "5/1");

        let spec = BarrierSpec::new(5).unwrap();
        let g = spec.build();
        let parts: Vec<usize> = (0..30).collect();
        assert!(degree_sum_bound(&g, &parts, &spec.delta()).unwrap().holds);

        let b10 = BarrierSpec::new(10).unwrap();
        assert!(edge_count_bound(&b10.build(), &b10.delta()).unwrap().holds);
        let b2 = BarrierSpec::new(2).unwrap();
        let t = tav_upper_bound(&b2.build(), &b2.delta()).unwrap();
        assert!(t.holds && t.rhs == "216/55");
    }

    #[test]
    fn tav_bound_is_tight_on_complete_graphs() {
        let d: Delta = "0.148".parse().unwrap();
        for n in [7usize, 9, 13, 19] {
            let r = tav_upper_bound(&complete_graph(n), &d).unwrap();
            assert_eq!(r.lhs, r.rhs, "n={n}");
        }
    }

    #[test]
    fn graph_level_bounds_refuse_unreduced() {
        let d: Delta = "0.3".parse().unwrap();
        let g = complete_graph(10);
        assert!(edge_count_bound(&g, &d).is_err());
        assert!(tav_upper_bound(&g, &d).is_err());
        assert!(degree_sum_bound(&g, &[0], &d).is_err());
    }

    #[test]
    fn empty_and_full_window() {
        let g = complete_graph(7);
        let ctx = GraphContext::new(&g, &"0.148".parse().unwrap());
        for mask in [vec![false; g.m()], vec![true; g.m()]] {
            let cut = ctx.cut(&g, mask);
            let r = kappa_lower_window(&ctx, &cut, "").unwrap();
            assert_eq!(r.rhs, "0/1");
            assert_eq!(r.lhs, "0/1");
        }
    }
}
