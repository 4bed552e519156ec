use serde::{Deserialize, Serialize};

use super::scalar::{Dual3, Scalar};
use crate::error::{Error, Result};

/// A point `(α, τ, μ)` with `t_A = τn` and `m = μ·C(n, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub alpha: f64,
    pub tau: f64,
    pub mu: f64,
    pub delta: f64,
}

impl ParamPoint {
    pub fn new(alpha: f64, tau: f64, mu: f64) -> Self {
        ParamPoint { alpha, tau, mu, delta: super::DEFAULT_DELTA }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.alpha, self.tau, self.mu]
    }

    pub fn with_coords(&self, c: [f64; 3]) -> Self {
        ParamPoint { alpha: c[0], tau: c[1], mu: c[2], delta: self.delta }
    }
}

/// Every constituent of `g − k` at one point, in any [`Scalar`].
#[derive(Clone, Copy, Debug)]
pub struct Evaluated<S> {
    pub e0: S,
    pub e1: S,
    pub e2: S,
    pub n0: S,
    pub n1: S,
    pub n2: S,
    /// `½αμ(1−δ−τ)`
    pub n0_num_linear: S,
    /// `¼δ²√(αμ)`
    pub n0_num_sqrt: S,
    pub n0_num: S,
    pub n0_den: S,
    pub b: S,
    /// `½n0²`, `n0(½n0 + n1)`, `n0(½n0 + n1 + n2)`
    pub thresholds: [S; 3],
    pub pieces: [S; 4],
    pub case_id: u8,
    pub g: S,
    pub k: S,
    pub diff: S,
}

impl<S: Scalar> Evaluated<S> {
    /// `0 < e0 < e1 < e2` and `2e1 > e0 + e2`.
    pub fn sign_conditions_hold(&self) -> bool {
        let (e0, e1, e2) = (self.e0.value(), self.e1.value(), self.e2.value());
        0.0 < e0 && e0 < e1 && e1 < e2 && 2.0 * e1 > e0 + e2
    }
}

/// Normalised (`n = 1`) objective. Fails when `e1 ≤ e0`, where `n0` is
/// undefined.
pub fn evaluate<S: Scalar>(alpha: S, tau: S, mu: S, delta: S) -> Result<Evaluated<S>> {
    let one = S::cst(1.0);
    let half = S::cst(0.5);
    let two = S::cst(2.0);
    let am = alpha * mu;
    let s = am.sqrt();

    let e2 = half * am;
    let e1 = e2 - half * delta * s;
    let e0 = half * (one - delta) * (one - two * delta) - half * (one - alpha) * mu;
    let n2 = one + half * delta - s;
    let n0_num_linear = half * am * (one - delta - tau);
    let n0_num_sqrt = S::cst(0.25) * delta * delta * s;
    let n0_num = n0_num_linear + n0_num_sqrt;
    let n0_den = e1 - e0;
    if !(n0_den.value() > 0.0) {
        return Err(Error::Domain(format!(
            "e1 - e0 = {} <= 0 at (alpha, tau, mu) = ({}, {}, {})",
            n0_den.value(),
            alpha.value(),
            tau.value(),
            mu.value()
        )));
    }
    let n0 = n0_num / n0_den;
    let n1 = one - n0 - n2;
    let b = half * (one - alpha) * mu;

    let t1 = half * n0 * n0;
    let t2 = n0 * (half * n0 + n1);
    let t3 = n0 * (half * n0 + n1 + n2);
    let base2 = n0 * n0 * e0;
    let base3 = base2 + n0 * n1 * (e0 + e1);
    let base4 = base3 + n0 * n2 * (e0 + e2);
    let g1 = two * b * e0;
    let g2 = base2 + (b - t1) * (e0 + e1);
    let g3 = base3 + (b - t2) * (e0 + e2);
    let g4 = base4 + two * (b - t3) * e1;

    let bv = b.value();
    let (case_id, g) = if bv <= t1.value() {
        (1, g1)
    } else if bv <= t2.value() {
        (2, g2)
    } else if bv <= t3.value() {
        (3, g3)
    } else {
        (4, g4)
    };

    let hm = half * mu;
    let k = alpha * (one - alpha) * hm * (hm + S::cst(1.5) * (one - delta) * (tau - (one - two * delta)));
    Ok(Evaluated {
        e0,
        e1,
        e2,
        n0,
        n1,
        n2,
        n0_num_linear,
        n0_num_sqrt,
        n0_num,
        n0_den,
        b,
        thresholds: [t1, t2, t3],
        pieces: [g1, g2, g3, g4],
        case_id,
        g,
        k,
        diff: g - k,
    })
}

/// Plain-`f64` snapshot of [`Evaluated`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedState {
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub n0: f64,
    pub n1: f64,
    pub n2: f64,
    pub b: f64,
    pub case_id: u8,
    pub g: f64,
    pub k: f64,
    pub diff: f64,
}

impl From<&Evaluated<f64>> for NormalizedState {
    fn from(s: &Evaluated<f64>) -> Self {
        NormalizedState {
            e0: s.e0,
            e1: s.e1,
            e2: s.e2,
            n0: s.n0,
            n1: s.n1,
            n2: s.n2,
            b: s.b,
            case_id: s.case_id,
            g: s.g,
            k: s.k,
            diff: s.diff,
        }
    }
}

pub fn evaluate_f64(p: &ParamPoint) -> Result<Evaluated<f64>> {
    evaluate(p.alpha, p.tau, p.mu, p.delta)
}

pub fn normalized_state(p: &ParamPoint) -> Result<NormalizedState> {
    Ok(NormalizedState::from(&evaluate_f64(p)?))
}

pub fn evaluate_dual(p: &ParamPoint) -> Result<Evaluated<Dual3>> {
    evaluate(
        Dual3::variable(p.alpha, 0),
        Dual3::variable(p.tau, 1),
        Dual3::variable(p.mu, 2),
        Dual3::cst(p.delta),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FnId {
    E0,
    E1,
    E2,
    N0,
    N1,
    N2,
    N0Num,
    N0NumLinear,
    N0NumSqrt,
    N0Den,
    B,
    G1,
    G2,
    G3,
    G4,
    /// The active piece.
    G,
    K,
    Diff,
}

impl FnId {
    pub const ALL: [FnId; 18] = [
        FnId::E0,
        FnId::E1,
        FnId::E2,
        FnId::N0,
        FnId::N1,
        FnId::N2,
        FnId::N0Num,
        FnId::N0NumLinear,
        FnId::N0NumSqrt,
        FnId::N0Den,
        FnId::B,
        FnId::G1,
        FnId::G2,
        FnId::G3,
        FnId::G4,
        FnId::G,
        FnId::K,
        FnId::Diff,
    ];

    pub fn get<S: Copy>(self, s: &Evaluated<S>) -> S {
        match self {
            FnId::E0 => s.e0,
            FnId::E1 => s.e1,
            FnId::E2 => s.e2,
            FnId::N0 => s.n0,
            FnId::N1 => s.n1,
            FnId::N2 => s.n2,
            FnId::N0Num => s.n0_num,
            FnId::N0NumLinear => s.n0_num_linear,
            FnId::N0NumSqrt => s.n0_num_sqrt,
            FnId::N0Den => s.n0_den,
            FnId::B => s.b,
            FnId::G1 => s.pieces[0],
            FnId::G2 => s.pieces[1],
            FnId::G3 => s.pieces[2],
            FnId::G4 => s.pieces[3],
            FnId::G => s.g,
            FnId::K => s.k,
            FnId::Diff => s.diff,
        }
    }
}

/// Analytic gradient in `(α, τ, μ)`.
pub fn gradient(p: &ParamPoint, which: FnId) -> Result<[f64; 3]> {
    Ok(which.get(&evaluate_dual(p)?).d)
}

/// Central finite-difference gradient, for cross-checking.
pub fn finite_difference(p: &ParamPoint, which: FnId, step: f64) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (axis, slot) in out.iter_mut().enumerate() {
        let mut hi = p.coords();
        let mut lo = p.coords();
        hi[axis] += step;
        lo[axis] -= step;
        let f_hi = which.get(&evaluate_f64(&p.with_coords(hi))?);
        let f_lo = which.get(&evaluate_f64(&p.with_coords(lo))?);
        *slot = (f_hi - f_lo) / (2.0 * step);
    }
    Ok(out)
}
