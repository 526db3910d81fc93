//! Rainbow linear-forest detection in edge-colored complete graphs.
//!
//! [`find_rainbow`] is a backtracking search that places the longest paths
//! first, one vertex at a time, rejecting any extension whose edge color is
//! already used. Two symmetries are broken: a path is only accepted with its
//! first endpoint below its last, and consecutive paths of equal order are
//! placed with strictly increasing minimum vertex.
//!
//! At the start of every component two bounds are tested against the
//! remaining demand:
//! - the number of distinct unused colors on edges among free vertices must
//!   cover the edges still needed;
//! - a rainbow matching of the remaining matching number must fit. For any
//!   vertex set `X` and color set `C`, a rainbow matching has at most `|X|`
//!   edges touching `X`, at most `|C|` edges colored from `C`, and the rest
//!   lie in the graph `H` of other edges, bounded by
//!   `min(colors(H), |V(H)| / 2)`. `C` is taken from the largest color
//!   classes and `X` is grown greedily by vertices whose removal kills the
//!   most colors.

use crate::error::{Error, Result};
use crate::model::{EdgeColoring, Embedding, LinearForest};

/// Marks an edge that may not be used (uncolored in a partial coloring).
pub(crate) const NONE: u32 = u32::MAX;

/// Node limit for a detection run; one node is one attempted vertex placement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DetectBudget {
    max_nodes: Option<u64>,
}

impl DetectBudget {
    pub fn unlimited() -> Self {
        Self { max_nodes: None }
    }

    pub fn nodes(max_nodes: u64) -> Result<Self> {
        if max_nodes == 0 {
            return Err(Error::domain("node budget must be at least 1"));
        }
        Ok(Self {
            max_nodes: Some(max_nodes),
        })
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetectOutcome {
    Found(Embedding),
    /// The search was complete and no rainbow copy exists.
    Absent,
    BudgetExceeded {
        nodes: u64,
    },
}

impl DetectOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, DetectOutcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, DetectOutcome::Absent)
    }
}

/// Dense symmetric color matrix; [`NONE`] on the diagonal and on unusable edges.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    n: usize,
    cells: Vec<u32>,
    palette: usize,
}

impl Grid {
    pub(crate) fn empty(n: usize, palette: usize) -> Self {
        Self {
            n,
            cells: vec![NONE; n * n],
            palette,
        }
    }

    pub(crate) fn from_coloring(coloring: &EdgeColoring) -> Self {
        let n = coloring.n();
        let mut grid = Self::empty(n, coloring.color_count() as usize);
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                grid.set(u, v, coloring.colors()[idx]);
                idx += 1;
            }
        }
        grid
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize, c: u32) {
        self.cells[u * self.n + v] = c;
        self.cells[v * self.n + u] = c;
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> u32 {
        self.cells[u * self.n + v]
    }
}

pub(crate) enum Flow {
    Found(Vec<Vec<usize>>),
    Exhausted,
    Budget(u64),
}

struct Searcher<'a> {
    grid: &'a Grid,
    orders: Vec<usize>,
    used_vertex: Vec<bool>,
    used_color: Vec<bool>,
    paths: Vec<Vec<usize>>,
    nodes: u64,
    limit: u64,
    seen_color: Vec<bool>,
    touched: Vec<u32>,
    cover_bound: bool,
}

impl<'a> Searcher<'a> {
    fn new(grid: &'a Grid, orders: Vec<usize>, limit: Option<u64>, cover_bound: bool) -> Self {
        let comps = orders.len();
        Self {
            grid,
            orders,
            used_vertex: vec![false; grid.n],
            used_color: vec![false; grid.palette],
            paths: vec![Vec::new(); comps],
            nodes: 0,
            limit: limit.unwrap_or(u64::MAX),
            seen_color: vec![false; grid.palette],
            touched: Vec::new(),
            cover_bound,
        }
    }

    fn run(mut self) -> Flow {
        match self.place(0) {
            Step::Found => Flow::Found(self.paths),
            Step::Exhausted => Flow::Exhausted,
            Step::Budget => Flow::Budget(self.nodes),
        }
    }

    fn place(&mut self, ci: usize) -> Step {
        if ci == self.orders.len() {
            return Step::Found;
        }
        if !self.demand_fits(ci) {
            return Step::Exhausted;
        }
        let lower = if ci > 0 && self.orders[ci - 1] == self.orders[ci] {
            self.paths[ci - 1].iter().min().map_or(0, |m| m + 1)
        } else {
            0
        };
        self.extend(ci, lower)
    }

    fn extend(&mut self, ci: usize, lower: usize) -> Step {
        let order = self.orders[ci];
        let len = self.paths[ci].len();
        if len == order {
            return self.place(ci + 1);
        }
        let n = self.grid.n;
        let last = self.paths[ci].last().copied();
        let first = self.paths[ci].first().copied();
        for w in lower..n {
            if self.used_vertex[w] {
                continue;
            }
            // Orientation: the last endpoint must exceed the first.
            if len + 1 == order && first.is_some_and(|a| w < a) {
                continue;
            }
            let color = match last {
                Some(u) => {
                    let c = self.grid.get(u, w);
                    if c == NONE || self.used_color[c as usize] {
                        continue;
                    }
                    Some(c as usize)
                }
                None => None,
            };
            self.nodes += 1;
            if self.nodes > self.limit {
                return Step::Budget;
            }
            self.used_vertex[w] = true;
            if let Some(c) = color {
                self.used_color[c] = true;
            }
            self.paths[ci].push(w);
            let step = self.extend(ci, lower);
            if matches!(step, Step::Found) {
                return step;
            }
            self.paths[ci].pop();
            self.used_vertex[w] = false;
            if let Some(c) = color {
                self.used_color[c] = false;
            }
            if matches!(step, Step::Budget) {
                return step;
            }
        }
        Step::Exhausted
    }

    /// Necessary conditions for placing components `ci..`. The matching bound
    /// is costly, so it is only tried before anything is placed and only when
    /// enabled.
    fn demand_fits(&mut self, ci: usize) -> bool {
        let rest = &self.orders[ci..];
        let need_vertices: usize = rest.iter().sum();
        let need_edges: usize = rest.iter().map(|o| o - 1).sum();
        let need_matching: usize = rest.iter().map(|o| o / 2).sum();
        let n = self.grid.n;

        if self.used_vertex.iter().filter(|&&u| !u).count() < need_vertices {
            return false;
        }
        if ci == 0 && need_matching >= 2 && self.cover_bound {
            let mut edges: Vec<(usize, usize, u32)> = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let c = self.grid.get(u, v);
                    if c != NONE && !self.used_color[c as usize] {
                        edges.push((u, v, c));
                    }
                }
            }
            let distinct = self.count_distinct(edges.iter().map(|e| e.2));
            return distinct >= need_edges && rainbow_matching_bound(&edges, n, self.grid.palette) >= need_matching;
        }
        let grid = self.grid;
        let used_vertex = &self.used_vertex;
        let used_color = &self.used_color;
        let free_colors = (0..n).filter(|&u| !used_vertex[u]).flat_map(|u| {
            (u + 1..n).filter(move |&v| !used_vertex[v]).filter_map(move |v| {
                let c = grid.get(u, v);
                (c != NONE && !used_color[c as usize]).then_some(c)
            })
        });
        let mut distinct = 0usize;
        let seen = &mut self.seen_color;
        let touched = &mut self.touched;
        for c in free_colors {
            if !std::mem::replace(&mut seen[c as usize], true) {
                touched.push(c);
                distinct += 1;
                if distinct >= need_edges {
                    break;
                }
            }
        }
        for c in touched.drain(..) {
            seen[c as usize] = false;
        }
        distinct >= need_edges
    }

    fn count_distinct(&mut self, colors: impl Iterator<Item = u32>) -> usize {
        let mut distinct = 0;
        for c in colors {
            if !std::mem::replace(&mut self.seen_color[c as usize], true) {
                self.touched.push(c);
                distinct += 1;
            }
        }
        for c in self.touched.drain(..) {
            self.seen_color[c as usize] = false;
        }
        distinct
    }
}

enum Step {
    Found,
    Exhausted,
    Budget,
}

/// Upper bound on the largest rainbow matching in `edges`.
fn rainbow_matching_bound(edges: &[(usize, usize, u32)], n: usize, palette: usize) -> usize {
    let mut size = vec![0usize; palette];
    for e in edges {
        size[e.2 as usize] += 1;
    }
    // Largest classes first, ties by color id.
    let mut classes: Vec<u32> = (0..palette as u32).filter(|&c| size[c as usize] > 0).collect();
    classes.sort_by(|a, b| size[*b as usize].cmp(&size[*a as usize]).then(a.cmp(b)));

    let mut best = usize::MAX;
    for excluded in 0..=classes.len().min(2) {
        let skip = &classes[..excluded];
        let work: Vec<(usize, usize, u32)> = edges.iter().copied().filter(|e| !skip.contains(&e.2)).collect();
        best = best.min(excluded + greedy_cover_bound(&work, n, palette));
    }
    best
}

/// `min over X` of `|X| + min(colors(H - X), |V(H - X)| / 2)` along a greedy
/// chain of vertex sets `X`.
fn greedy_cover_bound(edges: &[(usize, usize, u32)], n: usize, palette: usize) -> usize {
    let mut alive = vec![true; edges.len()];
    let mut removed = vec![false; n];
    let mut degree = vec![0usize; n];
    let mut mult = vec![0u32; palette];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut colors = 0usize;
    for (i, &(u, v, c)) in edges.iter().enumerate() {
        degree[u] += 1;
        degree[v] += 1;
        incident[u].push(i);
        incident[v].push(i);
        if mult[c as usize] == 0 {
            colors += 1;
        }
        mult[c as usize] += 1;
    }

    let mut local = vec![0u32; palette];
    let mut touched: Vec<u32> = Vec::new();
    let mut best = usize::MAX;
    let mut x_size = 0usize;
    loop {
        let covered = degree.iter().filter(|&&d| d > 0).count();
        best = best.min(x_size + colors.min(covered / 2));
        if colors == 0 {
            break;
        }
        // The vertex whose removal kills the most colors, then highest degree.
        let mut pick: Option<(usize, usize, usize)> = None;
        for v in 0..n {
            if removed[v] || degree[v] == 0 {
                continue;
            }
            touched.clear();
            for &ei in &incident[v] {
                if alive[ei] {
                    let c = edges[ei].2 as usize;
                    if local[c] == 0 {
                        touched.push(c as u32);
                    }
                    local[c] += 1;
                }
            }
            let mut killed = 0;
            for &c in &touched {
                if local[c as usize] == mult[c as usize] {
                    killed += 1;
                }
                local[c as usize] = 0;
            }
            if pick.is_none_or(|(k, d, _)| (killed, degree[v]) > (k, d)) {
                pick = Some((killed, degree[v], v));
            }
        }
        let Some((_, _, v)) = pick else { break };
        removed[v] = true;
        x_size += 1;
        for &ei in &incident[v] {
            if std::mem::replace(&mut alive[ei], false) {
                let (a, b, c) = edges[ei];
                degree[a] -= 1;
                degree[b] -= 1;
                mult[c as usize] -= 1;
                if mult[c as usize] == 0 {
                    colors -= 1;
                }
            }
        }
    }
    best
}

/// `cover_bound` enables the rainbow-matching bound at the root, which pays
/// off on large hosts and costs more than it saves on tiny ones.
pub(crate) fn search_grid(grid: &Grid, forest: &LinearForest, limit: Option<u64>, cover_bound: bool) -> Flow {
    Searcher::new(grid, forest.component_orders(), limit, cover_bound).run()
}

/// Searches `coloring` for a rainbow copy of `forest`.
///
/// With an unlimited budget the answer is exact: `Absent` means no rainbow
/// copy exists. Results are deterministic.
pub fn find_rainbow(coloring: &EdgeColoring, forest: &LinearForest, budget: DetectBudget) -> Result<DetectOutcome> {
    check_fits(coloring, forest)?;
    let grid = Grid::from_coloring(coloring);
    Ok(match search_grid(&grid, forest, budget.max_nodes, true) {
        Flow::Found(paths) => DetectOutcome::Found(Embedding::new(paths)),
        Flow::Exhausted => DetectOutcome::Absent,
        Flow::Budget(nodes) => DetectOutcome::BudgetExceeded { nodes },
    })
}

fn check_fits(coloring: &EdgeColoring, forest: &LinearForest) -> Result<()> {
    if forest.total_vertices() > coloring.n() {
        return Err(Error::domain(format!(
            "forest {forest} needs {} vertices, host has {}",
            forest.total_vertices(),
            coloring.n()
        )));
    }
    Ok(())
}

/// Largest host accepted by [`find_rainbow_oracle`].
pub const ORACLE_MAX_N: usize = 12;

/// Brute-force reference: tries every injective vertex assignment,
/// component by component, and tests the rainbow property only once all
/// vertices are placed. Intended for cross-checking on small hosts.
pub fn find_rainbow_oracle(coloring: &EdgeColoring, forest: &LinearForest) -> Result<Option<Embedding>> {
    if coloring.n() > ORACLE_MAX_N {
        return Err(Error::domain(format!(
            "oracle refused: n = {} exceeds {ORACLE_MAX_N}",
            coloring.n()
        )));
    }
    check_fits(coloring, forest)?;
    let orders = forest.component_orders();
    let mut assignment: Vec<usize> = Vec::with_capacity(forest.total_vertices());
    let mut used = vec![false; coloring.n()];
    Ok(oracle_rec(coloring, &orders, &mut assignment, &mut used))
}

fn oracle_rec(
    coloring: &EdgeColoring,
    orders: &[usize],
    assignment: &mut Vec<usize>,
    used: &mut [bool],
) -> Option<Embedding> {
    let total: usize = orders.iter().sum();
    if assignment.len() == total {
        let mut paths = Vec::with_capacity(orders.len());
        let mut rest = assignment.as_slice();
        for &o in orders {
            let (head, tail) = rest.split_at(o);
            paths.push(head.to_vec());
            rest = tail;
        }
        let mut seen = std::collections::HashSet::new();
        let rainbow = paths
            .iter()
            .flat_map(|p| p.windows(2))
            .all(|w| seen.insert(coloring.color_unchecked(w[0], w[1])));
        return rainbow.then(|| Embedding::new(paths));
    }
    for v in 0..coloring.n() {
        if used[v] {
            continue;
        }
        used[v] = true;
        assignment.push(v);
        let found = oracle_rec(coloring, orders, assignment, used);
        assignment.pop();
        used[v] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// The matching `sP2` with `s` the matching number of `forest`. A rainbow
/// copy of `forest` always contains a rainbow copy of its shadow.
pub fn matching_shadow(forest: &LinearForest) -> LinearForest {
    LinearForest::matching(forest.matching_number()).expect("every forest has an edge")
}
