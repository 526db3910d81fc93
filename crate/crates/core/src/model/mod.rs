//! Edge-colored complete graphs, linear-forest patterns and rainbow witnesses.
//!
//! Vertices are `0..n`. The edge `(u, v)` with `u < v` is stored at index
//! `u*n - u(u+1)/2 + (v - u - 1)`, i.e. pairs are listed in lexicographic
//! order. Colors are dense ids `0..color_count`.

mod coloring;
mod embedding;
mod forest;
mod graph;
mod io;

pub use coloring::{normalize_labels, EdgeColoring};
pub use embedding::Embedding;
pub use forest::LinearForest;
pub use graph::{representative_subgraph, SimpleGraph};
pub use io::{read_coloring, write_coloring, COLORING_HEADER};

use crate::error::{Error, Result};

/// Number of edges of `K_n`.
#[inline]
pub const fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
pub(crate) const fn edge_index_unchecked(n: usize, u: usize, v: usize) -> usize {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Index of the edge `(u, v)` of `K_n`, requiring `u < v < n`.
pub fn edge_index(n: usize, u: usize, v: usize) -> Result<usize> {
    if u >= v {
        return Err(Error::domain(format!("edge ({u},{v}) requires u < v")));
    }
    if v >= n {
        return Err(Error::domain(format!("vertex {v} out of range for n = {n}")));
    }
    Ok(edge_index_unchecked(n, u, v))
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(n: usize, index: usize) -> Result<(usize, usize)> {
    if index >= edge_count(n) {
        return Err(Error::domain(format!("edge index {index} out of range for n = {n}")));
    }
    // Row u holds n-1-u edges.
    let mut u = 0;
    let mut start = 0;
    loop {
        let row = n - 1 - u;
        if index < start + row {
            return Ok((u, u + 1 + (index - start)));
        }
        start += row;
        u += 1;
    }
}

/// Iterates over all pairs `(u, v)` of `K_n` in edge-index order.
pub fn edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}
