//! Fixed inputs shared by the benchmarks.

use tridecomp::generators::random_dense;
use tridecomp::grid::{GridBox, GridParams};
use tridecomp::{Delta, Graph};

pub fn delta() -> Delta {
    "0.148".parse().expect("valid delta")
}

pub fn dense_graph(n: usize) -> Graph {
    random_dense(n, &delta(), 7).expect("random dense graph")
}

/// A slab of the parameter box: all of `α` and `μ`, a narrow band of `τ`.
pub fn sweep_chunk(h: f64) -> GridParams {
    let mut params = GridParams::new(h, 0.00022);
    params.bounds = GridBox { tau: (0.78, 0.785), ..GridBox::default() };
    params.spot_check = false;
    params
}
