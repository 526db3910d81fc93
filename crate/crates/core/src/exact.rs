//! Exact `AR(n, F)` for small hosts by complete search.
//!
//! Colorings are enumerated up to renaming of colors as restricted-growth
//! strings over the edges in index order: edge `e` takes a color already
//! used or the next fresh one. A branch is cut when
//!
//! - the colored prefix already contains a rainbow copy of `F` (checked
//!   whenever a new color appears and every [`CHECK_INTERVAL`] assignments
//!   otherwise; copies never disappear as more edges are colored), or
//! - fewer edges remain than colors still unused.
//!
//! The subtrees below the first [`SPLIT_DEPTH`] edges are searched in
//! parallel. The witness returned is the lexicographically least one, which
//! does not depend on the number of worker threads.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::construct::construct_matching;
use crate::detect::{find_rainbow, search_grid, DetectBudget, DetectOutcome, Flow, Grid, NONE};
use crate::error::{Error, Result};
use crate::formulas::ar_matching;
use crate::model::{edge_count, edges, EdgeColoring, LinearForest};

/// Assignments between two rainbow checks when no new color appears.
pub const CHECK_INTERVAL: usize = 3;
const SPLIT_DEPTH: usize = 6;
const FLUSH_EVERY: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactBudget {
    /// One node is one attempted edge assignment.
    pub max_nodes: Option<u64>,
    pub wall_limit: Option<Duration>,
}

impl Default for ExactBudget {
    fn default() -> Self {
        Self {
            max_nodes: Some(1_000_000_000),
            wall_limit: None,
        }
    }
}

impl ExactBudget {
    pub fn unlimited() -> Self {
        Self {
            max_nodes: None,
            wall_limit: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_nodes == Some(0) || self.wall_limit == Some(Duration::ZERO) {
            return Err(Error::domain("exact-search budgets must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A surjective coloring with the requested number of colors and no
    /// rainbow copy.
    Found(EdgeColoring),
    /// No such coloring exists.
    Infeasible,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionReport {
    pub decision: Decision,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactStatus {
    Exact,
    /// The budget ran out; `value` is only a lower bound.
    LowerBoundOnly,
}

impl ExactStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExactStatus::Exact => "exact",
            ExactStatus::LowerBoundOnly => "lower-bound-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    /// `AR(n, F)`, or a lower bound for it when `status` says so. Zero when
    /// every coloring contains a rainbow copy (single-edge forests).
    pub value: u64,
    /// A coloring with `value` colors and no rainbow copy; `None` iff
    /// `value == 0`.
    pub witness: Option<EdgeColoring>,
    pub nodes: u64,
    pub status: ExactStatus,
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Shared {
    fn over_budget(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
            || self.nodes.load(Ordering::Relaxed) > self.max_nodes
            || self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

enum TaskEnd {
    Found(Vec<u32>),
    Budget,
}

struct Task<'a> {
    n: usize,
    target: usize,
    forest: &'a LinearForest,
    endpoints: &'a [(usize, usize)],
    grid: Grid,
    colors: Vec<u32>,
    pending: u64,
    shared: &'a Shared,
}

enum Walk {
    Found,
    Exhausted,
    Budget,
}

impl Task<'_> {
    fn has_rainbow(&self) -> bool {
        matches!(search_grid(&self.grid, self.forest, None, false), Flow::Found(_))
    }

    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed);
            self.pending = 0;
            if self.shared.over_budget() {
                self.shared.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    fn walk(&mut self, e: usize, used: usize, since_check: usize) -> Walk {
        let m = self.endpoints.len();
        if e == m {
            if used < self.target {
                return Walk::Exhausted;
            }
            if since_check > 0 && self.has_rainbow() {
                return Walk::Exhausted;
            }
            return Walk::Found;
        }
        let remaining = m - e - 1;
        let top = used.min(self.target - 1);
        let (u, v) = self.endpoints[e];
        for color in 0..=top {
            let fresh = color == used;
            let now_used = used + usize::from(fresh);
            if remaining < self.target - now_used {
                continue;
            }
            if !self.tick() {
                return Walk::Budget;
            }
            self.colors[e] = color as u32;
            self.grid.set(u, v, color as u32);
            let mut since = since_check + 1;
            let mut pruned = false;
            if fresh || since >= CHECK_INTERVAL {
                pruned = self.has_rainbow();
                since = 0;
            }
            if !pruned {
                match self.walk(e + 1, now_used, since) {
                    Walk::Exhausted => {}
                    other => return other,
                }
            }
            self.grid.set(u, v, NONE);
        }
        Walk::Exhausted
    }
}

/// Restricted-growth prefixes of length `depth` with colors below `target`
/// that can still reach `target` colors over `m` edges.
fn prefixes(depth: usize, m: usize, target: usize) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, used: usize, depth: usize, m: usize, target: usize, out: &mut Vec<Vec<u32>>) {
        let e = prefix.len();
        if e == depth {
            out.push(prefix.clone());
            return;
        }
        for color in 0..=used.min(target - 1) {
            let now_used = used + usize::from(color == used);
            if m - e - 1 < target - now_used {
                continue;
            }
            prefix.push(color as u32);
            rec(prefix, now_used, depth, m, target, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, depth, m, target, &mut out);
    out
}

/// Decides whether some surjective `colors`-coloring of `K_n` has no rainbow
/// `forest`, returning the lexicographically least such coloring.
pub fn exists_avoiding_coloring(
    n: usize,
    forest: &LinearForest,
    colors: usize,
    budget: ExactBudget,
) -> Result<DecisionReport> {
    budget.validate()?;
    let m = edge_count(n);
    if colors < 1 || colors > m {
        return Err(Error::domain(format!(
            "target color count {colors} must lie in [1, {m}] for n = {n}"
        )));
    }
    if forest.total_vertices() > n {
        return Err(Error::domain(format!("forest {forest} does not fit in K_{n}")));
    }
    let endpoints: Vec<(usize, usize)> = edges(n).collect();
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
        deadline: budget.wall_limit.map(|w| Instant::now() + w),
    };
    let depth = SPLIT_DEPTH.min(m);
    let tasks = prefixes(depth, m, colors);

    let run = |prefix: &Vec<u32>| -> Option<TaskEnd> {
        if shared.stop.load(Ordering::Relaxed) {
            return Some(TaskEnd::Budget);
        }
        let mut grid = Grid::empty(n, colors);
        for (e, &c) in prefix.iter().enumerate() {
            let (u, v) = endpoints[e];
            grid.set(u, v, c);
        }
        let used = prefix.iter().max().map_or(0, |&c| c as usize + 1);
        let mut task = Task {
            n,
            target: colors,
            forest,
            endpoints: &endpoints,
            grid,
            colors: {
                let mut all = vec![0; m];
                all[..depth].copy_from_slice(prefix);
                all
            },
            pending: depth as u64,
            shared: &shared,
        };
        let _ = task.n;
        if task.has_rainbow() {
            shared.nodes.fetch_add(task.pending, Ordering::Relaxed);
            return None;
        }
        let outcome = task.walk(depth, used, 0);
        shared.nodes.fetch_add(task.pending, Ordering::Relaxed);
        match outcome {
            Walk::Found => Some(TaskEnd::Found(task.colors)),
            Walk::Exhausted => None,
            Walk::Budget => Some(TaskEnd::Budget),
        }
    };

    let first = tasks.par_iter().find_map_first(run);
    let nodes = shared.nodes.load(Ordering::Relaxed);
    let decision = match first {
        Some(TaskEnd::Found(colors)) => Decision::Found(EdgeColoring::new(n, colors)?),
        Some(TaskEnd::Budget) => Decision::BudgetExceeded,
        None if shared.stop.load(Ordering::Relaxed) => Decision::BudgetExceeded,
        None => Decision::Infeasible,
    };
    Ok(DecisionReport { decision, nodes })
}

/// Computes `AR(n, forest)` by deciding `c = L+1, L+2, …` until a target is
/// infeasible, where `L` is the matching construction's count for matchings
/// and the best value found so far otherwise.
pub fn ar_exact(n: usize, forest: &LinearForest, budget: ExactBudget) -> Result<ExactResult> {
    budget.validate()?;
    if forest.total_vertices() > n {
        return Err(Error::domain(format!(
            "forest {forest} needs {} vertices, host has {n}",
            forest.total_vertices()
        )));
    }
    let m = edge_count(n);
    let started = Instant::now();
    let mut nodes = 0u64;

    let t = forest.matching_number();
    let mut best: Option<EdgeColoring> = None;
    if forest.is_matching() && t >= 2 && ar_matching(&BigInt::from(n), &BigInt::from(t)).is_ok() {
        let start = construct_matching(n, t)?;
        if find_rainbow(&start, forest, DetectBudget::unlimited())? == DetectOutcome::Absent {
            best = Some(start);
        }
    }

    let mut next = best.as_ref().map_or(1, |c| c.color_count() as usize + 1);
    while next <= m {
        let remaining = ExactBudget {
            max_nodes: budget.max_nodes.map(|cap| cap.saturating_sub(nodes).max(1)),
            wall_limit: match budget.wall_limit {
                Some(w) => match w.checked_sub(started.elapsed()) {
                    Some(left) if !left.is_zero() => Some(left),
                    _ => return Ok(lower_bound_only(best, nodes)),
                },
                None => None,
            },
        };
        let report = exists_avoiding_coloring(n, forest, next, remaining)?;
        nodes += report.nodes;
        match report.decision {
            Decision::Found(witness) => {
                best = Some(witness);
                next += 1;
            }
            Decision::Infeasible => break,
            Decision::BudgetExceeded => return Ok(lower_bound_only(best, nodes)),
        }
    }
    Ok(ExactResult {
        value: best.as_ref().map_or(0, |c| u64::from(c.color_count())),
        witness: best,
        nodes,
        status: ExactStatus::Exact,
    })
}

fn lower_bound_only(best: Option<EdgeColoring>, nodes: u64) -> ExactResult {
    ExactResult {
        value: best.as_ref().map_or(0, |c| u64::from(c.color_count())),
        witness: best,
        nodes,
        status: ExactStatus::LowerBoundOnly,
    }
}

/// Merges the two highest color classes of a coloring with at least two
/// colors. Merging never creates a rainbow copy, so an avoiding coloring
/// with `c` colors yields one with `c - 1`.
pub fn merge_top_classes(coloring: &EdgeColoring) -> Result<EdgeColoring> {
    let c = coloring.color_count();
    if c < 2 {
        return Err(Error::domain("need at least two colors to merge"));
    }
    let merged: Vec<u32> = coloring
        .colors()
        .iter()
        .map(|&x| if x == c - 1 { c - 2 } else { x })
        .collect();
    EdgeColoring::new(coloring.n(), merged).map(|m| m.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(s: &str) -> LinearForest {
        s.parse().unwrap()
    }

    #[test]
    fn decision_examples() {
        let budget = ExactBudget::default();
        let r = exists_avoiding_coloring(5, &forest("2xP2"), 1, budget).unwrap();
        assert_eq!(r.decision, Decision::Found(EdgeColoring::monochromatic(5).unwrap()));

        let r = exists_avoiding_coloring(5, &forest("2xP2"), 2, budget).unwrap();
        assert_eq!(r.decision, Decision::Infeasible);

        let r = exists_avoiding_coloring(5, &forest("P3+P2"), 2, budget).unwrap();
        let Decision::Found(w) = r.decision else {
            panic!("expected a witness")
        };
        assert_eq!(w.color_count(), 2);
        assert!(find_rainbow(&w, &forest("P3+P2"), DetectBudget::unlimited())
            .unwrap()
            .is_absent());
    }

    #[test]
    fn ar_exact_small_values() {
        let r = ar_exact(5, &forest("2xP2"), ExactBudget::default()).unwrap();
        assert_eq!((r.value, r.status), (1, ExactStatus::Exact));
        let r = ar_exact(5, &forest("P3+P2"), ExactBudget::default()).unwrap();
        assert_eq!((r.value, r.status), (2, ExactStatus::Exact));
    }

    #[test]
    fn single_edge_forest_has_value_zero() {
        let r = ar_exact(4, &forest("P2"), ExactBudget::default()).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.witness.is_none());
        assert_eq!(r.status, ExactStatus::Exact);
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let budget = ExactBudget {
            max_nodes: Some(5),
            wall_limit: None,
        };
        let r = ar_exact(6, &forest("P3+P2"), budget).unwrap();
        assert_eq!(r.status, ExactStatus::LowerBoundOnly);
        assert!(r.value <= 2);
    }

    #[test]
    fn domain_errors() {
        let b = ExactBudget::default();
        assert!(exists_avoiding_coloring(4, &forest("2xP2"), 0, b).is_err());
        assert!(exists_avoiding_coloring(4, &forest("2xP2"), 7, b).is_err());
        assert!(exists_avoiding_coloring(4, &forest("3xP2"), 2, b).is_err());
        assert!(ar_exact(4, &forest("3xP2"), b).is_err());
        let zero = ExactBudget {
            max_nodes: Some(0),
            wall_limit: None,
        };
        assert!(ar_exact(4, &forest("2xP2"), zero).is_err());
    }

    #[test]
    fn prefixes_are_restricted_growth() {
        assert_eq!(prefixes(4, 10, 4).len(), 15); // Bell(4)
        assert_eq!(prefixes(4, 10, 2).len(), 8); // 2^3
                                                 // Six colors over six edges leaves only the rainbow prefix.
        assert_eq!(prefixes(4, 6, 6), vec![vec![0, 1, 2, 3]]);
        assert_eq!(prefixes(4, 4, 4), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn merge_reduces_by_one() {
        let c = EdgeColoring::new(4, vec![0, 1, 2, 3, 4, 5]).unwrap();
        let m = merge_top_classes(&c).unwrap();
        assert_eq!(m.colors(), &[0, 1, 2, 3, 4, 4]);
        assert!(merge_top_classes(&EdgeColoring::monochromatic(4).unwrap()).is_err());
    }
}
