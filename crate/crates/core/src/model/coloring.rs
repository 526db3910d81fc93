use std::collections::HashMap;
use std::hash::Hash;

use super::{edge_count, edge_index, edge_index_unchecked, edges};
use crate::error::{Error, Result};

/// A surjective edge coloring of `K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColoring {
    n: usize,
    colors: Vec<u32>,
    color_count: u32,
}

/// Relabels arbitrary labels by order of first occurrence.
///
/// The result is a restricted-growth string: label `c + 1` first appears
/// after label `c`.
pub fn normalize_labels<T: Eq + Hash + Copy>(labels: &[T]) -> Vec<u32> {
    let mut ids: HashMap<T, u32> = HashMap::new();
    labels
        .iter()
        .map(|label| {
            let next = ids.len() as u32;
            *ids.entry(*label).or_insert(next)
        })
        .collect()
}

impl EdgeColoring {
    /// Builds a coloring from dense color ids, checking every invariant.
    ///
    /// `color_count` is taken to be `max + 1`, and every id below it must be
    /// used at least once.
    pub fn new(n: usize, colors: Vec<u32>) -> Result<Self> {
        let color_count = colors.iter().max().map_or(0, |&c| c + 1);
        Self::with_color_count(n, colors, color_count)
    }

    /// Builds a coloring with an explicitly declared palette size.
    pub fn with_color_count(n: usize, colors: Vec<u32>, color_count: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidColoring("n must be at least 1".into()));
        }
        if colors.len() != edge_count(n) {
            return Err(Error::InvalidColoring(format!(
                "expected {} edge colors for n = {n}, got {}",
                edge_count(n),
                colors.len()
            )));
        }
        let mut seen = vec![false; color_count as usize];
        for (idx, &c) in colors.iter().enumerate() {
            if c >= color_count {
                return Err(Error::InvalidColoring(format!(
                    "edge {idx} has color {c}, palette has {color_count} colors"
                )));
            }
            seen[c as usize] = true;
        }
        if let Some(unused) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidColoring(format!("color {unused} unused")));
        }
        Ok(Self { n, colors, color_count })
    }

    /// Builds a normalized coloring from arbitrary labels.
    pub fn from_labels<T: Eq + Hash + Copy>(n: usize, labels: &[T]) -> Result<Self> {
        Self::new(n, normalize_labels(labels))
    }

    /// Builds a coloring from a function of the endpoints `(u, v)`, `u < v`.
    pub fn from_fn<T, F>(n: usize, mut label: F) -> Result<Self>
    where
        T: Eq + Hash + Copy,
        F: FnMut(usize, usize) -> T,
    {
        let labels: Vec<T> = edges(n).map(|(u, v)| label(u, v)).collect();
        Self::from_labels(n, &labels)
    }

    /// Every edge of `K_n` gets color 0.
    pub fn monochromatic(n: usize) -> Result<Self> {
        Self::new(n, vec![0; edge_count(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_count(&self) -> u32 {
        self.color_count
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    /// Color of the edge `uv`; the endpoints may be given in either order.
    pub fn color(&self, u: usize, v: usize) -> Result<u32> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        Ok(self.colors[edge_index(self.n, a, b)?])
    }

    #[inline]
    pub(crate) fn color_unchecked(&self, u: usize, v: usize) -> u32 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index_unchecked(self.n, a, b)]
    }

    /// Relabels colors by first occurrence in edge-index order.
    pub fn normalize(&self) -> Self {
        Self {
            n: self.n,
            colors: normalize_labels(&self.colors),
            color_count: self.color_count,
        }
    }

    pub fn is_normalized(&self) -> bool {
        let mut next = 0;
        for &c in &self.colors {
            if c > next {
                return false;
            }
            if c == next {
                next += 1;
            }
        }
        true
    }

    /// Edge indices of each color class, classes in color order.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.color_count as usize];
        for (idx, &c) in self.colors.iter().enumerate() {
            classes[c as usize].push(idx);
        }
        classes
    }

    pub fn into_colors(self) -> Vec<u32> {
        self.colors
    }
}
