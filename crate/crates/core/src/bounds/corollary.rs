//! Leading-order (`n²`-normalised) forms of the three threshold expressions,
//! with `τ = t_A/n` and `m = c·n²`.

use serde::Serialize;

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let f_lo = f(lo);
    assert!(f_lo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `m/n²` at the edge-count limit: `(2 − 2δ + δ²)/4`.
pub fn max_edge_ratio(delta: f64) -> f64 {
    (2.0 - 2.0 * delta + delta * delta) / 4.0
}

/// Window expression `/n²`: `(τ − 2δ)(τ − 3δ) − 3(1−δ)(τ − (1−2δ))`.
pub fn window_expression(delta: f64, tau: f64) -> f64 {
    (tau - 2.0 * delta) * (tau - 3.0 * delta) - 3.0 * (1.0 - delta) * (tau - (1.0 - 2.0 * delta))
}

/// Largest `τ ∈ [0, 1]` keeping the window expression nonnegative.
pub fn window_threshold(delta: f64) -> f64 {
    bisect(|t| window_expression(delta, t), 0.0, 1.0, 1e-14)
}

/// Smaller root of `τ² − (5δ + 3(1−δ))τ + 6δ² + 3(1−δ)(1−2δ)`.
pub fn window_threshold_closed_form(delta: f64) -> f64 {
    let b = 5.0 * delta + 3.0 * (1.0 - delta);
    let c = 6.0 * delta * delta + 3.0 * (1.0 - delta) * (1.0 - 2.0 * delta);
    (b - (b * b - 4.0 * c).sqrt()) / 2.0
}

/// Forward expression `/n²`:
/// `τ(τ − δ) − 2αc − 3(1−α)(1−δ)(τ − (1−2δ))`.
pub fn forward_expression(delta: f64, alpha: f64, tau: f64, edge_ratio: f64) -> f64 {
    tau * (tau - delta) - 2.0 * alpha * edge_ratio
        - 3.0 * (1.0 - alpha) * (1.0 - delta) * (tau - (1.0 - 2.0 * delta))
}

/// Minimiser of the forward expression in `τ`: `½(3 − 3α(1−δ) − 2δ)`.
pub fn forward_critical_tau(delta: f64, alpha: f64) -> f64 {
    0.5 * (3.0 - 3.0 * alpha * (1.0 - delta) - 2.0 * delta)
}

/// `α` at which the critical `τ` reaches 1; below it the boundary `τ = 1` binds.
pub fn forward_branch_boundary(delta: f64) -> f64 {
    (1.0 - 2.0 * delta) / (3.0 * (1.0 - delta))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForwardBranch {
    /// Critical point inside `τ ≤ 1`.
    Critical,
    /// Critical point beyond 1; evaluated at `τ = 1`.
    Boundary,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ForwardValue {
    pub alpha: f64,
    pub tau: f64,
    pub value: f64,
    pub branch: ForwardBranch,
}

/// Leading coefficient of the forward expression at its worst `τ ≤ 1` and
/// the maximum edge count.
pub fn forward_leading_coefficient(delta: f64, alpha: f64) -> ForwardValue {
    let crit = forward_critical_tau(delta, alpha);
    let (tau, branch) = if crit > 1.0 { (1.0, ForwardBranch::Boundary) } else { (crit, ForwardBranch::Critical) };
    ForwardValue { alpha, tau, value: forward_expression(delta, alpha, tau, max_edge_ratio(delta)), branch }
}

/// The published polynomial for δ = 0.148.
pub fn forward_published_polynomial(alpha: f64) -> f64 {
    -0.02848 + 0.793336 * alpha - 1.633284 * alpha * alpha
}

/// Upper end of the range of `α` on which the critical-branch coefficient
/// stays positive.
pub fn forward_threshold(delta: f64) -> f64 {
    let f = |a: f64| forward_expression(delta, a, forward_critical_tau(delta, a), max_edge_ratio(delta));
    bisect(f, forward_branch_boundary(delta), 1.0, 1e-14)
}

/// Reverse expression `/n²` with `s = t_av/n`:
/// `(1−2δ)(1−3δ) − 2(1−α)c − 3(1−δ)(s − (1−2δ))`.
pub fn reverse_expression(delta: f64, alpha: f64, tav_ratio: f64, edge_ratio: f64) -> f64 {
    (1.0 - 2.0 * delta) * (1.0 - 3.0 * delta) - 2.0 * (1.0 - alpha) * edge_ratio
        - 3.0 * (1.0 - delta) * (tav_ratio - (1.0 - 2.0 * delta))
}

/// Leading-order `t_av/n` limit at `m = c·n²`: `3(1−δ) − (2 − 3δ)/(2c)`.
pub fn tav_ratio_limit(delta: f64, edge_ratio: f64) -> f64 {
    3.0 * (1.0 - delta) - (2.0 - 3.0 * delta) / (2.0 * edge_ratio)
}

/// Reverse expression after substituting, in order, the `t_av` limit, the
/// given `α`, and the maximum edge ratio. Each substitution moves in the
/// decreasing direction: the expression decreases in `t_av`, increases in
/// `α`, and (after the `t_av` substitution) decreases in `c`.
pub fn reverse_leading_coefficient(delta: f64, alpha: f64) -> f64 {
    let c = max_edge_ratio(delta);
    reverse_expression(delta, alpha, tav_ratio_limit(delta, c), c)
}

/// `∂/∂c` of the reverse expression after the `t_av` substitution.
pub fn reverse_edge_ratio_slope(delta: f64, alpha: f64, edge_ratio: f64) -> f64 {
    -2.0 * (1.0 - alpha) - 3.0 * (1.0 - delta) * (2.0 - 3.0 * delta) / (2.0 * edge_ratio * edge_ratio)
}

/// Smallest `α` at which the reverse leading coefficient is nonnegative.
pub fn reverse_threshold(delta: f64) -> f64 {
    bisect(|a| reverse_leading_coefficient(delta, a), 0.0, 1.0, 1e-14)
}

/// Upper limit on `τ` from `t_av ≥ α₀τ + (1−α₀)(1−2δ)` and the leading
/// `t_av` bound `(2 − 6δ + 9δ² − 3δ³)/(2 − 2δ + δ²)`.
pub fn tau_upper_limit(delta: f64, alpha_lo: f64) -> f64 {
    let d = delta;
    let tav = (2.0 - 6.0 * d + 9.0 * d * d - 3.0 * d * d * d) / (2.0 - 2.0 * d + d * d);
    (tav - (1.0 - alpha_lo) * (1.0 - 2.0 * d)) / alpha_lo
}

/// The three expressions at a finite `n`, including the lower-order terms,
/// evaluated at the same normalised points as the leading-order checks.
/// Informational: no pass/fail is attached.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FiniteValues {
    pub n: f64,
    pub window: f64,
    pub forward: f64,
    pub reverse: f64,
}

pub fn finite_values(delta: f64, n: f64) -> FiniteValues {
    let d = delta;
    let m = max_edge_ratio(d) * n * n + (1.0 - d) * n + 1.0;
    let t_a = window_threshold(d) * n;
    let window = (t_a - 2.0 * d * n) * (t_a - 3.0 * d * n) - 3.0 * n * (1.0 - d) * (t_a - (1.0 - 2.0 * d) * n);

    let alpha = 0.446;
    let t_a = forward_critical_tau(d, alpha).min(1.0) * n;
    let forward = t_a * (t_a - d * n) - 2.0 * (alpha * m - 1.0)
        - 3.0 * n * (1.0 - alpha) * (1.0 - d) * (t_a - (1.0 - 2.0 * d) * n);

    let alpha = 0.692;
    let pairs = n * (n - 1.0) / 2.0;
    let t_av = 3.0 * (1.0 - d) * n - (2.0 * n - 3.0 * d * n + 2.0) / m * pairs;
    let reverse = (1.0 - 2.0 * d) * (1.0 - 3.0 * d) * n * n - 2.0 * ((1.0 - alpha) * m - 1.0)
        - 3.0 * n * (1.0 - d) * (t_av - (1.0 - 2.0 * d) * n);
    FiniteValues { n, window, forward, reverse }
}

pub const DEFAULT_N0: f64 = 1e4;

#[derive(Clone, Debug, Serialize)]
pub struct CorollarySummary {
    pub delta: f64,
    pub window_threshold: f64,
    pub window_threshold_closed_form: f64,
    pub forward_branch_boundary: f64,
    pub forward_threshold: f64,
    pub forward_at_0_446: ForwardValue,
    pub reverse_threshold: f64,
    pub reverse_at_0_692: f64,
    pub tau_upper_limit: f64,
    pub finite: FiniteValues,
}

pub fn summary(delta: f64, n0: f64) -> CorollarySummary {
    CorollarySummary {
        delta,
        window_threshold: window_threshold(delta),
        window_threshold_closed_form: window_threshold_closed_form(delta),
        forward_branch_boundary: forward_branch_boundary(delta),
        forward_threshold: forward_threshold(delta),
        forward_at_0_446: forward_leading_coefficient(delta, 0.446),
        reverse_threshold: reverse_threshold(delta),
        reverse_at_0_692: reverse_leading_coefficient(delta, 0.692),
        tau_upper_limit: tau_upper_limit(delta, 0.446),
        finite: finite_values(delta, n0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: f64 = 0.148;

    #[test]
    fn window_root() {
        let root = window_threshold(D);
        assert!((root - 0.76197).abs() < 1e-5, "{root}");
        assert!((root - window_threshold_closed_form(D)).abs() < 1e-9);
        // τ² − 3.296τ + 1.930848
        for tau in [0.5, 0.7, 0.9] {
            let poly = tau * tau - 3.296 * tau + 1.930848;
            assert!((window_expression(D, tau) - poly).abs() < 1e-12);
        }
        assert!(window_expression(D, 0.7619) >= 0.0);
    }

    #[test]
    fn forward_matches_published_polynomial() {
        for i in 0..=100 {
            let alpha = 0.28 + 0.0017 * i as f64;
            let v = forward_leading_coefficient(D, alpha);
            assert_eq!(v.branch, ForwardBranch::Critical);
            assert!((v.value - forward_published_polynomial(alpha)).abs() < 1e-12, "{alpha}");
        }
        let at = forward_leading_coefficient(D, 0.446).value;
        assert!(at > 0.0 && (at - 4.5e-4).abs() < 2e-5, "{at}");
        assert!((forward_branch_boundary(D) - 0.2754).abs() < 1e-4);
        assert_eq!(forward_leading_coefficient(D, 0.2).branch, ForwardBranch::Boundary);
        assert!(forward_threshold(D) > 0.446);
    }

    #[test]
    fn reverse_positive_at_upper_alpha() {
        assert!(reverse_leading_coefficient(D, 0.692) > 0.0);
        assert!(reverse_threshold(D) < 0.692);
        // Substitution directions hold across the relevant range.
        for c in [0.40, 0.42, max_edge_ratio(D)] {
            assert!(reverse_edge_ratio_slope(D, 0.692, c) < 0.0);
        }
    }

    #[test]
    fn finite_values_approach_leading_order() {
        let n = 1e6;
        let f = finite_values(D, n);
        assert!((f.forward / (n * n) - forward_leading_coefficient(D, 0.446).value).abs() < 1e-5);
        assert!((f.reverse / (n * n) - reverse_leading_coefficient(D, 0.692)).abs() < 1e-5);
        assert!(f.window.abs() / (n * n) < 1e-5);
    }

    #[test]
    fn tau_box_edge() {
        assert!((tau_upper_limit(D, 0.446) - 0.814).abs() < 1e-3);
    }
}
