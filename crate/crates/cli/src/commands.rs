use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use serde::Serialize;
use tridecomp::bounds::audit::{audit_graph, AuditOptions};
use tridecomp::bounds::corollary::{summary, CorollarySummary};
use tridecomp::bounds::{edge_count_bound, tav_upper_bound, BoundReport};
use tridecomp::generators::{c4_blowup, complete_graph, random_dense, BarrierSpec, BlowupSpec};
use tridecomp::grid::{certificate, compare_with_published, sweep_with_progress, Certificate, GridParams, SweepReport, TableEntry};
use tridecomp::io::{read_edge_list, write_edge_list};
use tridecomp::rational::fmt_rational;
use tridecomp::{decompose, Decomposition, Delta, Error, FailureReport, Graph, GraphStats, Reducedness, Triangle};

use crate::output::{emit, progress, Status};
use crate::{AuditArgs, Cli, Command, DecomposeArgs, Family, GenArgs, GridArgs, ReportArgs};

pub fn dispatch(cli: &Cli) -> anyhow::Result<Status> {
    match &cli.command {
        Command::Gen(a) => gen(a, cli.quiet),
        Command::Decompose(a) => run_decompose(a, cli.quiet),
        Command::Audit(a) => audit(a, cli.quiet),
        Command::GridVerify(a) => grid_verify(a, cli.quiet),
        Command::Report(a) => report(a),
    }
}

fn load(path: &Path) -> anyhow::Result<Graph> {
    read_edge_list(path).with_context(|| format!("reading {}", path.display()))
}

#[derive(Serialize)]
struct Refusal {
    reason: String,
    witness: Option<Reducedness>,
}

/// Hypothesis failures become a `refused` report (exit 1); anything else is
/// a usage or I/O error (exit 2).
fn refusal(e: Error) -> anyhow::Result<Refusal> {
    match e {
        Error::NotDenseEnough { .. } => Ok(Refusal { reason: e.to_string(), witness: None }),
        Error::NotReduced(w) => Ok(Refusal { reason: format!("graph is not reduced: {w}"), witness: Some(w) }),
        other => Err(other.into()),
    }
}

#[derive(Serialize)]
struct GenResult {
    family: &'static str,
    n: usize,
    m: usize,
    triangle_count: usize,
    min_degree: usize,
    k3_divisible: bool,
    /// The `δ` the family is built for, when it has one.
    delta: Option<String>,
}

fn gen(a: &GenArgs, quiet: bool) -> anyhow::Result<Status> {
    let started = Instant::now();
    let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("--{flag} is required for this family"));
    let (family, g, delta) = match a.family {
        Family::Complete => ("complete", complete_graph(need(a.n, "n")?), None),
        Family::Barrier => {
            let spec = BarrierSpec::new(need(a.h, "h")?)?;
            ("barrier", spec.build(), Some(spec.delta().to_string()))
        }
        Family::Blowup => {
            let h = need(a.h, "h")?;
            BlowupSpec::new(h)?;
            ("blowup", c4_blowup(h)?, None)
        }
        Family::Random => {
            let d = a.delta.clone().context("--delta is required for the random family")?;
            let g = random_dense(need(a.n, "n")?, &d, a.seed)?;
            ("random", g, Some(d.to_string()))
        }
    };
    std::fs::write(&a.out, write_edge_list(&g)).with_context(|| format!("writing {}", a.out.display()))?;
    progress(quiet, format!("wrote {family} graph: n={} m={}", g.n(), g.m()));
    let result = GenResult {
        family,
        n: g.n(),
        m: g.m(),
        triangle_count: g.triangle_count(),
        min_degree: if g.n() == 0 { 0 } else { g.min_degree() },
        k3_divisible: g.is_k3_divisible(),
        delta,
    };
    emit("gen", Status::Success, &result, started, a.report.as_deref())
}

#[derive(Serialize)]
struct WeightEntry {
    triangle: Triangle,
    weight: String,
}

#[derive(Serialize)]
struct DecomposeSuccess {
    n: usize,
    m: usize,
    triangle_count: usize,
    peeled_triangles: Vec<Triangle>,
    flow_value: String,
    min_weight: Option<String>,
    verified: bool,
    weights: Option<Vec<WeightEntry>>,
}

#[derive(Serialize)]
struct DecomposeFailure<'a> {
    n: usize,
    m: usize,
    failure: &'a FailureReport,
}

fn run_decompose(a: &DecomposeArgs, quiet: bool) -> anyhow::Result<Status> {
    let started = Instant::now();
    let g = load(&a.input)?;
    progress(quiet, format!("decomposing n={} m={} at delta={}", g.n(), g.m(), a.delta));
    let dec = match decompose(&g, &a.delta) {
        Ok(d) => d,
        Err(e) => return emit("decompose", Status::Refused, &refusal(e)?, started, a.report.as_deref()),
    };
    match &dec {
        Decomposition::Success { weighting, peeled, flow_value } => {
            let entries: Vec<WeightEntry> =
                weighting.iter().map(|(t, w)| WeightEntry { triangle: *t, weight: fmt_rational(w) }).collect();
            let weights = match &a.weights {
                Some(path) => {
                    let mut text = String::from("# a b c weight\n");
                    for e in &entries {
                        let [x, y, z] = e.triangle.vertices();
                        text.push_str(&format!("{x} {y} {z} {}\n", e.weight));
                    }
                    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                    None
                }
                None => Some(entries),
            };
            let result = DecomposeSuccess {
                n: g.n(),
                m: g.m(),
                triangle_count: weighting.len(),
                peeled_triangles: peeled.clone(),
                flow_value: fmt_rational(flow_value),
                min_weight: weighting.min_weight().map(fmt_rational),
                verified: true,
                weights,
            };
            progress(quiet, "decomposition verified");
            emit("decompose", Status::Success, &result, started, a.report.as_deref())
        }
        Decomposition::Failure(report) => {
            progress(quiet, format!("flow method failed at stage {:?}", report.stage));
            let result = DecomposeFailure { n: g.n(), m: g.m(), failure: report };
            emit("decompose", Status::Failure, &result, started, a.report.as_deref())
        }
    }
}

fn audit(a: &AuditArgs, quiet: bool) -> anyhow::Result<Status> {
    let started = Instant::now();
    let g = load(&a.input)?;
    progress(quiet, format!("auditing n={} m={} with {} random cuts", g.n(), g.m(), a.cuts));
    let opts = AuditOptions { cuts: a.cuts, seed: a.seed, min_cut: a.min_cut };
    let report = match audit_graph(&g, &a.delta, &opts) {
        Ok(r) => r,
        Err(e) => return emit("audit", Status::Refused, &refusal(e)?, started, a.report.as_deref()),
    };
    progress(quiet, format!("{} reports, {} violations", report.reports.len(), report.violations));
    let status = if report.violations == 0 { Status::Success } else { Status::Failure };
    emit("audit", status, &report, started, a.report.as_deref())
}

/// Kept points listed in the JSON report; the CSV carries all of them.
const JSON_SMALLEST: usize = 10;

#[derive(Serialize)]
struct GridResult {
    sweep: SweepReport,
    table: Option<Vec<TableEntry>>,
    table_holds: Option<bool>,
    certificate: Option<Certificate>,
}

fn grid_verify(a: &GridArgs, quiet: bool) -> anyhow::Result<Status> {
    let started = Instant::now();
    if !(a.rho > 0.0) {
        bail!("--rho must be positive");
    }
    let mut params = GridParams::new(a.h, a.rho);
    params.delta = a.delta.clone();
    if let Some(b) = a.bounds {
        params.bounds = b;
    }
    params.keep = a.keep;
    params.table = !a.no_table;
    params.spot_check = !a.no_spot_check;
    let total = params.point_count()?;
    progress(quiet, format!("sweeping {total} points at h={}", a.h));

    let step = std::sync::atomic::AtomicUsize::new(0);
    let mut sweep = sweep_with_progress(&params, |done, rows| {
        let decile = done * 10 / rows;
        if step.fetch_max(decile, std::sync::atomic::Ordering::Relaxed) < decile {
            progress(quiet, format!("  {}%", decile * 10));
        }
    })?;

    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(["alpha", "tau", "mu", "case", "g", "k", "diff"])?;
        for s in &sweep.smallest {
            w.write_record([
                s.alpha.to_string(),
                s.tau.to_string(),
                s.mu.to_string(),
                s.case_id.to_string(),
                format!("{:e}", s.g),
                format!("{:e}", s.k),
                format!("{:e}", s.diff),
            ])?;
        }
        w.flush()?;
    }

    let (table, table_holds, cert) = match &sweep.table {
        Some(t) => {
            let entries = compare_with_published(t);
            let holds = entries.iter().all(|e| e.holds);
            (Some(entries), Some(holds), Some(certificate(&sweep, t)))
        }
        None => (None, None, None),
    };
    sweep.smallest.truncate(JSON_SMALLEST);
    progress(quiet, format!("min diff {:.8e} over {} points", sweep.min_diff, sweep.points_checked));
    let status = if sweep.holds { Status::Success } else { Status::Failure };
    let result = GridResult { sweep, table, table_holds, certificate: cert };
    emit("grid-verify", status, &result, started, a.report.as_deref())
}

#[derive(Serialize)]
struct GraphSummary {
    #[serde(flatten)]
    stats: GraphStats,
    k3_divisible: bool,
    reducedness: Reducedness,
    /// `(1−δ)n`
    min_degree_bound: String,
    edge_count: Option<BoundReport>,
    tav: Option<BoundReport>,
}

#[derive(Serialize)]
struct Summary {
    delta: String,
    graph: Option<GraphSummary>,
    thresholds: CorollarySummary,
}

fn graph_summary(g: &Graph, delta: &Delta) -> GraphSummary {
    let reducedness = g.reducedness(delta);
    let reduced = reducedness.is_reduced();
    GraphSummary {
        stats: g.stats(),
        k3_divisible: g.is_k3_divisible(),
        reducedness,
        min_degree_bound: fmt_rational(&delta.min_degree_bound(g.n())),
        edge_count: reduced.then(|| edge_count_bound(g, delta).ok()).flatten(),
        tav: (reduced && g.m() > 0).then(|| tav_upper_bound(g, delta).ok()).flatten(),
    }
}

fn report(a: &ReportArgs) -> anyhow::Result<Status> {
    let started = Instant::now();
    let graph = match &a.input {
        Some(p) => Some(graph_summary(&load(p)?, &a.delta)),
        None => None,
    };
    if !(a.n0 > 1.0) {
        bail!("--n0 must exceed 1");
    }
    let result = Summary { delta: a.delta.to_string(), graph, thresholds: summary(a.delta.to_f64(), a.n0) };
    emit("report", Status::Success, &result, started, a.report.as_deref())
}
