//! Corpus audits: every exact evaluator on a graph and a sample of cuts.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::*;
use crate::flow::{build_network, max_flow};

/// `t_A ≤ 0.7619n` window in which `κ_A ≥ λ_A` is checked directly.
pub fn window_cutoff() -> Rational {
    rat(7619, 10000)
}

/// The only `δ` for which the window conclusion is asserted.
pub fn window_delta() -> Delta {
    Delta::new(rat(37, 250)).expect("0.148 is a valid delta")
}

#[derive(Clone, Debug)]
pub struct SampledCut {
    pub label: String,
    pub mask: Vec<bool>,
}

/// Seeded random cuts followed by structured ones: a uniform half, random
/// densities, the star of a vertex, a triangle, a single edge, the edges
/// with `t_e > t_av`, and the empty and full cuts.
pub fn sample_cuts(g: &Graph, count: usize, seed: u64) -> Vec<SampledCut> {
    let m = g.m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts = Vec::with_capacity(count + 8);
    for i in 0..count {
        let p = if i % 2 == 0 { 0.5 } else { rng.gen_range(0.02..0.98) };
        let mask = (0..m).map(|_| rng.gen_bool(p)).collect();
        cuts.push(SampledCut { label: format!("random-{i}-p{p:.3}"), mask });
    }
    if m == 0 {
        cuts.push(SampledCut { label: "empty".into(), mask: Vec::new() });
        return cuts;
    }

    let v = rng.gen_range(0..g.n());
    let star = g.edges().map(|(a, b)| a == v || b == v).collect();
    cuts.push(SampledCut { label: format!("star-{v}"), mask: star });

    let triangles = g.triangles();
    if let Some(t) = triangles.choose(&mut rng) {
        let mut mask = vec![false; m];
        for (a, b) in t.edges() {
            mask[g.edge_id(a, b).expect("triangle edge")] = true;
        }
        cuts.push(SampledCut { label: format!("triangle-{}", t.key()), mask });
    }

    let e = rng.gen_range(0..m);
    cuts.push(SampledCut { label: format!("edge-{e}"), mask: crate::cut::mask_from_ids(m, [e]) });

    let t = g.t_values();
    let t_sum: usize = t.iter().sum();
    // t_e > t_av ⇔ m·t_e > Σ t
    let above = t.iter().map(|&te| te * m > t_sum).collect();
    cuts.push(SampledCut { label: "above-average".into(), mask: above });

    cuts.push(SampledCut { label: "empty".into(), mask: vec![false; m] });
    cuts.push(SampledCut { label: "full".into(), mask: vec![true; m] });
    cuts
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub cuts: usize,
    pub seed: u64,
    /// Also audit the minimum cut when the flow network falls short.
    pub min_cut: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { cuts: 100, seed: 0, min_cut: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub m: usize,
    pub peeled_triangles: usize,
    pub cuts_checked: usize,
    pub window_cuts: usize,
    pub violations: usize,
    pub reports: Vec<BoundReport>,
}

impl AuditReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| !r.holds)
    }
}

fn cut_reports(g: &Graph, ctx: &GraphContext, sampled: &SampledCut, window: bool) -> (Vec<BoundReport>, bool) {
    let label = sampled.label.as_str();
    let cut = ctx.cut(g, sampled.mask.clone());
    let mut out = lambda_bound_reports(ctx, &cut, label);
    out.extend(kappa_lower_dross(ctx, &cut, &format!("{label}; S=A")));
    if !cut.is_full() {
        let other = ctx.cut(g, cut.complement());
        debug_assert_eq!(other.kappa, cut.kappa);
        out.extend(kappa_lower_dross(ctx, &other, &format!("{label}; S=B")));
    }
    out.extend(kappa_lower_window(ctx, &cut, label));
    out.extend(ea_bounds_audit(g, ctx, &cut, label));
    let mut in_window = false;
    if window {
        if let Some(r) = window_conclusion(ctx, &cut, &window_cutoff(), label) {
            in_window = true;
            out.push(r);
        }
    }
    (out, in_window)
}

/// Reduces `g`, then evaluates the graph-level bounds and every cut-level
/// bound on the sampled cuts of the reduced graph. Cuts are evaluated in
/// parallel; reports keep the sampling order.
pub fn audit_graph(g: &Graph, delta: &Delta, opts: &AuditOptions) -> Result<AuditReport> {
    let (reduced, peeled) = g.reduce(delta)?;
    let g = &reduced;
    let ctx = GraphContext::new(g, delta);
    let mut reports = Vec::new();

    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    reports.push(degree_sum_bound(g, &all, delta)?);
    let high = delta.min_degree_bound(n) + int(2);
    let u_star: Vec<usize> = all.iter().copied().filter(|&v| int(g.degree(v)) >= high).collect();
    let mut r = degree_sum_bound(g, &u_star, delta)?;
    r.context = format!("U*: {} vertices of degree >= (1-delta)n+2", u_star.len());
    reports.push(r);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let subset: Vec<usize> = all.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    reports.push(degree_sum_bound(g, &subset, delta)?);
    reports.push(edge_count_bound(g, delta)?);
    if g.m() > 0 {
        reports.push(tav_upper_bound(g, delta)?);
    }

    let mut cuts = sample_cuts(g, opts.cuts, opts.seed);
    if opts.min_cut && g.m() > 0 {
        if let Ok(net) = build_network(g, delta) {
            if let Some(side) = max_flow(&net).min_cut {
                cuts.push(SampledCut { label: "min-cut".into(), mask: side });
            }
        }
    }
    let window = *delta == window_delta();
    let per_cut: Vec<(Vec<BoundReport>, bool)> =
        cuts.par_iter().map(|c| cut_reports(g, &ctx, c, window)).collect();
    let window_cuts = per_cut.iter().filter(|(_, w)| *w).count();
    reports.extend(per_cut.into_iter().flat_map(|(r, _)| r));
    let violations = reports.iter().filter(|r| !r.holds).count();
    Ok(AuditReport {
        n,
        m: g.m(),
        peeled_triangles: peeled.len(),
        cuts_checked: cuts.len(),
        window_cuts,
        violations,
        reports,
    })
}
