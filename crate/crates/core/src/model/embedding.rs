use serde::{Deserialize, Serialize};

use super::{EdgeColoring, LinearForest};
use crate::error::{Error, Result};

/// A placement of a linear forest in `K_n`: one vertex sequence per path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub paths: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        Self { paths }
    }

    /// Checks that this is a rainbow copy of `forest` under `coloring`.
    pub fn validate(&self, coloring: &EdgeColoring, forest: &LinearForest) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidEmbedding(msg));
        let n = coloring.n();

        let mut got: Vec<usize> = self.paths.iter().map(Vec::len).collect();
        got.sort_unstable_by(|a, b| b.cmp(a));
        if got != forest.component_orders() {
            return bad(format!("path orders {got:?} do not match forest {forest}"));
        }

        let mut seen = vec![false; n];
        for path in &self.paths {
            for &v in path {
                if v >= n {
                    return bad(format!("vertex {v} out of range for n = {n}"));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return bad(format!("vertex {v} used twice"));
                }
            }
        }

        let mut used = vec![false; coloring.color_count() as usize];
        for path in &self.paths {
            for pair in path.windows(2) {
                let c = coloring.color_unchecked(pair[0], pair[1]) as usize;
                if std::mem::replace(&mut used[c], true) {
                    return bad(format!("color {c} repeats"));
                }
            }
        }
        Ok(())
    }

    /// The edges of the first/second and third/fourth vertices of each path,
    /// and so on: a matching contained in the embedded forest.
    pub fn matching_shadow(&self) -> Embedding {
        Embedding {
            paths: self
                .paths
                .iter()
                .flat_map(|p| p.chunks_exact(2).map(<[usize]>::to_vec))
                .collect(),
        }
    }
}
