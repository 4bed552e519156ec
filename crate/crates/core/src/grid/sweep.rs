//! Exhaustive evaluation of `g − k` over a lattice in a box.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use super::scalar::Scalar;
use super::state::{evaluate, evaluate_dual, Evaluated, ParamPoint};
use super::table::TableMaxima;
use crate::error::{Error, Result};
use crate::rational::Delta;

/// Grid coordinates are integers in units of `10⁻⁹`, so lattices with
/// commensurate steps share their points exactly.
pub const QUANTUM: i64 = 1_000_000_000;

fn quantise(x: f64, what: &str) -> Result<i64> {
    let q = (x * QUANTUM as f64).round();
    if !x.is_finite() || ((q / QUANTUM as f64) - x).abs() > 1e-12 * x.abs().max(1.0) {
        return Err(Error::InvalidParameter(format!("{what} = {x} is not a multiple of 1e-9")));
    }
    Ok(q as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridBox {
    pub alpha: (f64, f64),
    pub tau: (f64, f64),
    pub mu: (f64, f64),
}

impl Default for GridBox {
    /// `Ξ = [0.446, 0.692] × [0.761, 0.814] × [0.852, 0.863]`.
    fn default() -> Self {
        GridBox { alpha: (0.446, 0.692), tau: (0.761, 0.814), mu: (0.852, 0.863) }
    }
}

impl GridBox {
    pub fn axes(&self) -> [(f64, f64); 3] {
        [self.alpha, self.tau, self.mu]
    }
}

/// One lattice axis: `lo, lo + h, …` with `hi` appended if it is off-lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Axis {
    pub lo: i64,
    pub hi: i64,
    pub step: i64,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, h: f64) -> Result<Self> {
        let (lo, hi, step) = (quantise(lo, "box bound")?, quantise(hi, "box bound")?, quantise(h, "h")?);
        if step <= 0 || hi < lo {
            return Err(Error::InvalidParameter(format!("empty axis or non-positive h: [{lo}, {hi}] step {step}")));
        }
        Ok(Axis { lo, hi, step })
    }

    pub fn len(&self) -> usize {
        let span = self.hi - self.lo;
        (span / self.step) as usize + 1 + usize::from(span % self.step != 0)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, i: usize) -> i64 {
        (self.lo + i as i64 * self.step).min(self.hi)
    }

    pub fn value(&self, i: usize) -> f64 {
        f64::ratio(self.at(i), QUANTUM)
    }
}

#[derive(Clone, Debug)]
pub struct GridParams {
    pub h: f64,
    pub rho: f64,
    pub delta: Delta,
    pub bounds: GridBox,
    /// Number of smallest-diff points kept for the CSV and the spot check.
    pub keep: usize,
    /// Also accumulate the gradient-norm maxima (one dual evaluation per point).
    pub table: bool,
    /// Re-evaluate the kept points in double-double precision.
    pub spot_check: bool,
}

impl GridParams {
    pub fn new(h: f64, rho: f64) -> Self {
        GridParams {
            h,
            rho,
            delta: Delta::new(crate::rational::rat(37, 250)).expect("0.148 is valid"),
            bounds: GridBox::default(),
            keep: 1000,
            table: true,
            spot_check: true,
        }
    }

    pub fn axes(&self) -> Result<[Axis; 3]> {
        if !(self.h > 0.0) {
            return Err(Error::InvalidParameter(format!("h must be positive, got {}", self.h)));
        }
        let [a, t, m] = self.bounds.axes();
        Ok([Axis::new(a.0, a.1, self.h)?, Axis::new(t.0, t.1, self.h)?, Axis::new(m.0, m.1, self.h)?])
    }

    pub fn point_count(&self) -> Result<u64> {
        Ok(self.axes()?.iter().map(|a| a.len() as u64).product())
    }

    fn delta_ratio(&self) -> (i64, i64) {
        let v = self.delta.value();
        (v.numer().to_i64().expect("delta numerator fits"), v.denom().to_i64().expect("delta denominator fits"))
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridSample {
    pub index: [u32; 3],
    pub alpha: f64,
    pub tau: f64,
    pub mu: f64,
    pub case_id: u8,
    pub g: f64,
    pub k: f64,
    pub diff: f64,
}

impl PartialEq for GridSample {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for GridSample {}

impl PartialOrd for GridSample {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Smallest diff first; ties go to the lexicographically smallest index.
impl Ord for GridSample {
    fn cmp(&self, o: &Self) -> Ordering {
        self.diff.total_cmp(&o.diff).then(self.index.cmp(&o.index))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpotCheck {
    pub points: usize,
    /// `max |diff_f64 − diff_dd|` over the re-evaluated points.
    pub max_abs_deviation: f64,
    pub min_diff_extended: f64,
    pub case_mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub h: f64,
    pub rho: f64,
    pub delta: f64,
    pub bounds: GridBox,
    pub axis_points: [usize; 3],
    pub points_checked: u64,
    pub min_diff: f64,
    pub argmin: Option<GridSample>,
    /// Points per case 1..=4.
    pub case_histogram: [u64; 4],
    /// Points where `0 < e0 < e1 < e2`, `2e1 > e0 + e2` fails.
    pub sign_violations: u64,
    pub domain_errors: u64,
    pub below_rho: u64,
    /// `min_diff ≥ ρ`, no sign violations and no domain errors.
    pub holds: bool,
    pub smallest: Vec<GridSample>,
    pub spot_check: Option<SpotCheck>,
    pub table: Option<TableMaxima>,
}

#[derive(Default)]
struct Acc {
    points: u64,
    hist: [u64; 4],
    sign_violations: u64,
    domain_errors: u64,
    below_rho: u64,
    top: BinaryHeap<GridSample>,
    table: Option<TableMaxima>,
}

impl Acc {
    fn new(table: bool) -> Self {
        Acc { table: table.then(TableMaxima::empty), ..Acc::default() }
    }

    fn push(&mut self, sample: GridSample, keep: usize) {
        if self.top.len() < keep {
            self.top.push(sample);
        } else if let Some(worst) = self.top.peek() {
            if sample < *worst {
                self.top.pop();
                self.top.push(sample);
            }
        }
    }

    fn observe<S: Scalar>(&mut self, e: &Evaluated<S>, index: [u32; 3], coords: [f64; 3], rho: f64, keep: usize) {
        self.points += 1;
        self.hist[(e.case_id - 1) as usize] += 1;
        if !e.sign_conditions_hold() {
            self.sign_violations += 1;
        }
        let diff = e.diff.value();
        if diff < rho {
            self.below_rho += 1;
        }
        let sample = GridSample {
            index,
            alpha: coords[0],
            tau: coords[1],
            mu: coords[2],
            case_id: e.case_id,
            g: e.g.value(),
            k: e.k.value(),
            diff,
        };
        self.push(sample, keep.max(1));
    }

    fn merge(mut self, other: Acc, keep: usize) -> Acc {
        self.points += other.points;
        for i in 0..4 {
            self.hist[i] += other.hist[i];
        }
        self.sign_violations += other.sign_violations;
        self.domain_errors += other.domain_errors;
        self.below_rho += other.below_rho;
        for s in other.top {
            self.push(s, keep.max(1));
        }
        self.table = match (self.table, other.table) {
            (Some(a), Some(b)) => Some(a.merge(&b)),
            (a, b) => a.or(b),
        };
        self
    }
}

fn sweep_row(params: &GridParams, axes: &[Axis; 3], i: usize) -> Acc {
    let mut acc = Acc::new(params.table);
    let delta = params.delta.to_f64();
    let alpha = axes[0].value(i);
    for j in 0..axes[1].len() {
        let tau = axes[1].value(j);
        for l in 0..axes[2].len() {
            let mu = axes[2].value(l);
            let index = [i as u32, j as u32, l as u32];
            let coords = [alpha, tau, mu];
            if let Some(table) = acc.table.as_mut() {
                match evaluate_dual(&ParamPoint { alpha, tau, mu, delta }) {
                    Ok(e) => {
                        table.observe(&e);
                        acc.observe(&e, index, coords, params.rho, params.keep);
                    }
                    Err(_) => acc.domain_errors += 1,
                }
            } else {
                match evaluate(alpha, tau, mu, delta) {
                    Ok(e) => acc.observe(&e, index, coords, params.rho, params.keep),
                    Err(_) => acc.domain_errors += 1,
                }
            }
        }
    }
    acc
}

/// Re-evaluates samples in double-double arithmetic from the exact lattice
/// coordinates and the exact `δ`.
pub fn spot_check(params: &GridParams, axes: &[Axis; 3], samples: &[GridSample]) -> SpotCheck {
    let (dn, dd) = params.delta_ratio();
    let delta = TwoFloat::ratio(dn, dd);
    let mut out = SpotCheck { points: 0, max_abs_deviation: 0.0, min_diff_extended: f64::INFINITY, case_mismatches: 0 };
    for s in samples {
        let c = [0, 1, 2].map(|a| TwoFloat::ratio(axes[a].at(s.index[a] as usize), QUANTUM));
        let Ok(e) = evaluate(c[0], c[1], c[2], delta) else { continue };
        out.points += 1;
        let diff = e.diff.value();
        out.max_abs_deviation = out.max_abs_deviation.max((diff - s.diff).abs());
        out.min_diff_extended = out.min_diff_extended.min(diff);
        if e.case_id != s.case_id {
            out.case_mismatches += 1;
        }
    }
    out
}

pub fn sweep(params: &GridParams) -> Result<SweepReport> {
    sweep_with_progress(params, |_, _| {})
}

/// As [`sweep`], calling `progress(rows_done, rows_total)` after each
/// `α`-row. Rows are evaluated in parallel and merged in a fixed order.
pub fn sweep_with_progress(params: &GridParams, progress: impl Fn(usize, usize) + Sync) -> Result<SweepReport> {
    let axes = params.axes()?;
    let rows = axes[0].len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let acc = (0..rows)
        .into_par_iter()
        .map(|i| {
            let acc = sweep_row(params, &axes, i);
            let d = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            progress(d, rows);
            acc
        })
        .reduce(|| Acc::new(params.table), |a, b| a.merge(b, params.keep));

    let smallest = acc.top.into_sorted_vec();
    let argmin = smallest.first().copied();
    let min_diff = argmin.map_or(f64::INFINITY, |s| s.diff);
    let spot = params.spot_check.then(|| spot_check(params, &axes, &smallest));
    let kept = params.keep.min(smallest.len());
    Ok(SweepReport {
        h: params.h,
        rho: params.rho,
        delta: params.delta.to_f64(),
        bounds: params.bounds,
        axis_points: [axes[0].len(), axes[1].len(), axes[2].len()],
        points_checked: acc.points,
        min_diff,
        argmin,
        case_histogram: acc.hist,
        sign_violations: acc.sign_violations,
        domain_errors: acc.domain_errors,
        below_rho: acc.below_rho,
        holds: min_diff >= params.rho && acc.sign_violations == 0 && acc.domain_errors == 0,
        smallest: smallest[..kept].to_vec(),
        spot_check: spot,
        table: acc.table,
    })
}
