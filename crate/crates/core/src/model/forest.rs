use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A vertex-disjoint union of paths, stored as `(order, count)` parts.
///
/// Parts are kept sorted by descending order with one entry per order, so two
/// forests are equal exactly when they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForest {
    parts: Vec<(usize, usize)>,
}

impl LinearForest {
    pub fn new(parts: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut merged: Vec<(usize, usize)> = Vec::new();
        for (order, count) in parts {
            if order < 2 {
                return Err(Error::domain("path order must be ≥ 2"));
            }
            if count < 1 {
                return Err(Error::domain("component count must be ≥ 1"));
            }
            match merged.iter_mut().find(|(o, _)| *o == order) {
                Some(part) => part.1 += count,
                None => merged.push((order, count)),
            }
        }
        if merged.is_empty() {
            return Err(Error::domain("a forest needs at least one component"));
        }
        merged.sort_by_key(|part| std::cmp::Reverse(part.0));
        Ok(Self { parts: merged })
    }

    /// The matching `tP2`.
    pub fn matching(t: usize) -> Result<Self> {
        Self::new([(2, t)])
    }

    /// `kP4 + tP2`; either count may be zero but not both.
    pub fn p4_p2(k: usize, t: usize) -> Result<Self> {
        Self::new([(4, k), (2, t)].into_iter().filter(|&(_, c)| c > 0))
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn total_vertices(&self) -> usize {
        self.parts.iter().map(|&(o, c)| o * c).sum()
    }

    pub fn total_edges(&self) -> usize {
        self.parts.iter().map(|&(o, c)| (o - 1) * c).sum()
    }

    pub fn component_count(&self) -> usize {
        self.parts.iter().map(|&(_, c)| c).sum()
    }

    /// Component orders, longest first.
    pub fn component_orders(&self) -> Vec<usize> {
        self.parts
            .iter()
            .flat_map(|&(o, c)| std::iter::repeat_n(o, c))
            .collect()
    }

    pub fn is_matching(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].0 == 2
    }

    /// Size of the largest matching inside the forest.
    pub fn matching_number(&self) -> usize {
        self.parts.iter().map(|&(o, c)| (o / 2) * c).sum()
    }
}

impl fmt::Display for LinearForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(order, count)) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if count == 1 {
                write!(f, "P{order}")?;
            } else {
                write!(f, "{count}xP{order}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LinearForest {
    type Err = Error;

    /// Parses `TERM ("+" TERM)*` with `TERM := [COUNT "x"] "P" ORDER`.
    fn from_str(spec: &str) -> Result<Self> {
        let syntax = |msg: &str| Error::parse(1, format!("forest spec {spec:?}: {msg}"));
        let mut parts = Vec::new();
        for term in spec.split('+') {
            let term = term.trim();
            let (count, path) = match term.split_once('x') {
                Some((count, path)) => {
                    let count: usize = count
                        .trim()
                        .parse()
                        .map_err(|_| syntax("count must be a positive integer"))?;
                    (count, path.trim())
                }
                None => (1, term),
            };
            let order = path
                .strip_prefix('P')
                .ok_or_else(|| syntax("expected a term of the form [COUNTx]P<ORDER>"))?;
            let order: usize = order.parse().map_err(|_| syntax("path order must be an integer"))?;
            if order < 2 {
                return Err(syntax("path order must be ≥ 2"));
            }
            if count < 1 {
                return Err(syntax("count must be ≥ 1"));
            }
            parts.push((order, count));
        }
        Self::new(parts)
    }
}
