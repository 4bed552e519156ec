//! Brute-force oracles and invariant checks shared by the property suites
//! and the acceptance target.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::Zero;
use tridecomp::cut::neighbourhood_cut_edges;
use tridecomp::flow::{apply_switch, TriangleWeighting};
use tridecomp::grid::{evaluate_f64, finite_difference, gradient, FnId, ParamPoint};
use tridecomp::rational::{rat, Rational};
use tridecomp::{CutSet, Delta, Graph, RootedPair, Triangle};

pub type Check = Result<(), String>;

/// Graph on `n ≤ 8` vertices from the low bits of `code`, one bit per pair.
pub fn graph_from_code(n: usize, code: u32) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).expect("valid edge list")
}

pub fn brute_triangles(g: &Graph) -> Vec<Triangle> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                    out.push(Triangle::new(a, b, c));
                }
            }
        }
    }
    out
}

/// Pairs of vertex-disjoint edges whose endpoints are pairwise adjacent.
pub fn brute_rooted_pairs(g: &Graph) -> Vec<RootedPair> {
    let mut out = BTreeSet::new();
    for e in 0..g.m() {
        for f in e + 1..g.m() {
            let (a, b) = g.edge(e);
            let (c, d) = g.edge(f);
            if [c, d].contains(&a) || [c, d].contains(&b) {
                continue;
            }
            if g.has_edge(a, c) && g.has_edge(a, d) && g.has_edge(b, c) && g.has_edge(b, d) {
                out.insert(RootedPair::new(e, f));
            }
        }
    }
    out.into_iter().collect()
}

pub fn brute_kappa(pairs: &[RootedPair], mask: &[bool]) -> u64 {
    pairs.iter().filter(|p| mask[p.e1 as usize] != mask[p.e2 as usize]).count() as u64
}

pub fn brute_t(g: &Graph, e: usize) -> usize {
    let (u, v) = g.edge(e);
    (0..g.n()).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count()
}

/// Triangles, rooted pairs, `t_e` and `κ_A` against brute force, plus the
/// identities `Σ t_e = 3T`, `κ_A = κ_B`, `λ_A + λ_B = 0` and
/// `Σ_u e_A(u) = Σ_{e∈A} t_e`.
pub fn check_oracles(g: &Graph, mask: &[bool], delta: &Delta) -> Check {
    let tri = brute_triangles(g);
    if g.triangles() != tri {
        return Err(format!("triangles differ on {g:?}"));
    }
    let pairs = brute_rooted_pairs(g);
    if g.rooted_pairs() != pairs {
        return Err(format!("rooted pairs differ on {g:?}"));
    }
    if g.k4_count() * 3 != pairs.len() {
        return Err(format!("k4 count {} vs {} pairs", g.k4_count(), pairs.len()));
    }
    let t = g.t_values();
    for (e, &te) in t.iter().enumerate() {
        if te != brute_t(g, e) {
            return Err(format!("t_{e} = {te}, brute {}", brute_t(g, e)));
        }
    }
    if t.iter().sum::<usize>() != 3 * tri.len() {
        return Err("sum of t_e differs from 3T".into());
    }
    let a = CutSet::new(g, mask.to_vec(), delta);
    let b = CutSet::new(g, a.complement(), delta);
    let expected = brute_kappa(&pairs, mask);
    if a.kappa != expected || b.kappa != expected {
        return Err(format!("kappa_A {} kappa_B {} brute {expected}", a.kappa, b.kappa));
    }
    if g.m() > 0 && !(a.lambda.clone() + b.lambda.clone()).is_zero() {
        return Err(format!("lambda_A + lambda_B = {}", a.lambda + b.lambda));
    }
    let ea: usize = neighbourhood_cut_edges(g, mask).iter().sum();
    if ea as u64 != a.t_sum {
        return Err(format!("sum of e_A(u) = {ea}, sum over A of t_e = {}", a.t_sum));
    }
    Ok(())
}

/// Applies the same switches in two orders; the weightings must agree, and
/// each switch may only move weight between its two edges.
pub fn check_switches(g: &Graph, moves: &[(usize, i64, i64)], order: &[usize]) -> Check {
    let pairs = g.rooted_pairs();
    if pairs.is_empty() {
        return Ok(());
    }
    let start = TriangleWeighting::uniform(g, rat(1, 1));
    let moves: Vec<(RootedPair, Rational)> =
        moves.iter().map(|&(p, num, den)| (pairs[p % pairs.len()], rat(num, den))).collect();

    let mut forward = start.clone();
    for (pair, eps) in &moves {
        let before = forward.edge_sums(g);
        let after_w = apply_switch(g, &forward, *pair, eps);
        let after = after_w.edge_sums(g);
        for e in 0..g.m() {
            let expected = if e == pair.e1 as usize {
                &before[e] - eps
            } else if e == pair.e2 as usize {
                &before[e] + eps
            } else {
                before[e].clone()
            };
            if after[e] != expected {
                return Err(format!("edge {e} sum {} after switch, expected {expected}", after[e]));
            }
        }
        forward = after_w;
    }

    let mut shuffled = start;
    for &i in order {
        let (pair, eps) = &moves[i % moves.len()];
        shuffled = apply_switch(g, &shuffled, *pair, eps);
    }
    let mut counts = vec![0usize; moves.len()];
    for &i in order {
        counts[i % moves.len()] += 1;
    }
    if counts.iter().any(|&c| c != 1) {
        return Err("order is not a permutation".into());
    }
    if forward.weights() != shuffled.weights() || forward.triangles() != shuffled.triangles() {
        return Err("switch order changed the weighting".into());
    }
    Ok(())
}

/// Component-wise agreement of the forward-mode gradient with a central
/// difference, for every function smooth at `p`. The active piece `g` and
/// `g − k` are skipped when a case threshold lies within the stencil.
pub fn check_gradient(p: &ParamPoint, step: f64, tol: f64) -> Check {
    let centre = evaluate_f64(p).map_err(|e| e.to_string())?;
    let mut same_case = true;
    for axis in 0..3 {
        for s in [-step, step] {
            let mut c = p.coords();
            c[axis] += s;
            let q = evaluate_f64(&p.with_coords(c)).map_err(|e| e.to_string())?;
            same_case &= q.case_id == centre.case_id;
        }
    }
    for which in FnId::ALL {
        if !same_case && matches!(which, FnId::G | FnId::Diff) {
            continue;
        }
        let ana = gradient(p, which).map_err(|e| e.to_string())?;
        let fd = finite_difference(p, which, step).map_err(|e| e.to_string())?;
        for i in 0..3 {
            if (ana[i] - fd[i]).abs() > tol * (1.0 + ana[i].abs()) {
                return Err(format!("{which:?} axis {i} at {:?}: analytic {} fd {}", p.coords(), ana[i], fd[i]));
            }
        }
    }
    Ok(())
}

/// Bisects along `axis` between two points in different cases until the
/// bracket is below `width`, then compares `g` on both sides.
pub fn check_continuity(lo: &ParamPoint, hi: &ParamPoint, axis: usize, width: f64, tol: f64) -> Check {
    let case = |p: &ParamPoint| evaluate_f64(p).map(|s| s.case_id).map_err(|e| e.to_string());
    let lo_case = case(lo)?;
    let (mut a, mut b) = (lo.coords(), hi.coords());
    if lo_case == case(hi)? {
        return Err("bracket does not straddle a case boundary".into());
    }
    while (b[axis] - a[axis]).abs() > width {
        let mut mid = a;
        mid[axis] = 0.5 * (a[axis] + b[axis]);
        if mid[axis] == a[axis] || mid[axis] == b[axis] {
            break;
        }
        if case(&lo.with_coords(mid))? == lo_case {
            a = mid;
        } else {
            b = mid;
        }
    }
    let ga = evaluate_f64(&lo.with_coords(a)).map_err(|e| e.to_string())?;
    let gb = evaluate_f64(&lo.with_coords(b)).map_err(|e| e.to_string())?;
    if (ga.g - gb.g).abs() > tol {
        return Err(format!(
            "g jumps by {:e} between cases {} and {} near {:?}",
            (ga.g - gb.g).abs(),
            ga.case_id,
            gb.case_id,
            a
        ));
    }
    Ok(())
}

/// Scans the segment from `start` along `axis` to `end` in `steps` pieces
/// and returns the brackets where the case changes.
pub fn case_brackets(start: &ParamPoint, axis: usize, end: f64, steps: usize) -> Vec<(ParamPoint, ParamPoint)> {
    let c0 = start.coords()[axis];
    let at = |i: usize| {
        let mut c = start.coords();
        c[axis] = c0 + (end - c0) * i as f64 / steps as f64;
        start.with_coords(c)
    };
    let mut out = Vec::new();
    let mut prev = at(0);
    let mut prev_case = evaluate_f64(&prev).ok().map(|s| s.case_id);
    for i in 1..=steps {
        let p = at(i);
        let case = evaluate_f64(&p).ok().map(|s| s.case_id);
        if case.is_some() && prev_case.is_some() && case != prev_case {
            out.push((prev, p));
        }
        prev = p;
        prev_case = case;
    }
    out
}
