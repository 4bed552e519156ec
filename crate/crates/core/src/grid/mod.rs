//! Verification of `g − k > 0` over the box `Ξ` in normalised
//! (`n = 1`, `m = μ/2`, `t_A = τ`) form: pointwise evaluation, exhaustive
//! lattice sweeps, gradient-norm tables and the mean-value certificate.

pub mod scalar;
pub mod state;
pub mod sweep;
pub mod table;

pub use scalar::{Dual3, Scalar};
pub use state::{
    evaluate, evaluate_dual, evaluate_f64, finite_difference, gradient, normalized_state, Evaluated, FnId,
    NormalizedState, ParamPoint,
};
pub use sweep::{spot_check, sweep, sweep_with_progress, Axis, GridBox, GridParams, GridSample, SpotCheck, SweepReport};
pub use table::{certificate, compare_with_published, Certificate, Constituents, TableEntry, TableMaxima, PUBLISHED_TABLE};

pub const DEFAULT_DELTA: f64 = 0.148;
