//! Randomized lower-bound search by splitting and merging color classes.
//!
//! Every state visited is an avoiding coloring: a split is kept only when the
//! detector proves the new coloring still has no rainbow copy, and merging two
//! classes can never create one. Restart `r` draws from a ChaCha stream seeded
//! with `seed ^ r`, so results do not depend on the number of threads.

use num_bigint::BigInt;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::best_known_avoider;
use crate::detect::{find_rainbow, DetectBudget, DetectOutcome, ORACLE_MAX_N};
use crate::error::{Error, Result};
use crate::formulas::ar_matching;
use crate::model::{EdgeColoring, LinearForest};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    pub moves_per_restart: usize,
    /// Budget for each detector call made while judging a move.
    pub detect_budget: DetectBudget,
    /// Consecutive rejections before a merge; `None` means `moves_per_restart / 10`.
    pub stagnation: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 8,
            moves_per_restart: 400,
            detect_budget: DetectBudget::nodes(2_000_000).expect("positive budget"),
            stagnation: None,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.moves_per_restart == 0 {
            return Err(Error::domain("restarts and moves per restart must be at least 1"));
        }
        if self.stagnation == Some(0) {
            return Err(Error::domain("stagnation threshold must be at least 1"));
        }
        Ok(())
    }

    fn stagnation_limit(&self) -> usize {
        self.stagnation.unwrap_or(self.moves_per_restart / 10).max(1)
    }
}

/// A coloring verified to contain no rainbow copy of `forest`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    coloring: EdgeColoring,
    forest: LinearForest,
}

impl Certificate {
    /// Verifies `coloring` with an unlimited detector when `n ≤ 12` and with
    /// `budget` otherwise. An exhausted budget is an error.
    pub fn new(coloring: EdgeColoring, forest: LinearForest, budget: DetectBudget) -> Result<Self> {
        let budget = if coloring.n() <= ORACLE_MAX_N {
            DetectBudget::unlimited()
        } else {
            budget
        };
        match find_rainbow(&coloring, &forest, budget)? {
            DetectOutcome::Absent => Ok(Self { coloring, forest }),
            DetectOutcome::Found(e) => Err(Error::InvalidColoring(format!(
                "coloring contains a rainbow {forest}: {:?}",
                e.paths
            ))),
            DetectOutcome::BudgetExceeded { nodes } => Err(Error::InvalidColoring(format!(
                "could not verify certificate within {nodes} detector nodes"
            ))),
        }
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    pub fn forest(&self) -> &LinearForest {
        &self.forest
    }

    pub fn colors(&self) -> u32 {
        self.coloring.color_count()
    }

    pub fn into_coloring(self) -> EdgeColoring {
        self.coloring
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub best_colors: u32,
    pub start_colors: u32,
    pub restarts: usize,
    pub best_restart: usize,
    pub moves_tried: u64,
    pub moves_accepted: u64,
    pub merges: u64,
    /// Splits rejected because the detector ran out of budget.
    pub budget_rejections: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub certificate: Certificate,
    pub stats: SearchStats,
}

struct RestartOutcome {
    best: EdgeColoring,
    moves_tried: u64,
    moves_accepted: u64,
    merges: u64,
    budget_rejections: u64,
}

fn split(coloring: &EdgeColoring, rng: &mut ChaCha8Rng) -> Option<EdgeColoring> {
    let classes = coloring.color_classes();
    let splittable: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() >= 2).collect();
    let class = splittable.choose(rng)?;
    let side = loop {
        let side: Vec<bool> = class.iter().map(|_| rng.random_bool(0.5)).collect();
        if side.iter().any(|&s| s) && side.iter().any(|&s| !s) {
            break side;
        }
    };
    let fresh = coloring.color_count();
    let mut colors = coloring.colors().to_vec();
    for (&edge, moved) in class.iter().zip(side) {
        if moved {
            colors[edge] = fresh;
        }
    }
    Some(
        EdgeColoring::new(coloring.n(), colors)
            .expect("split keeps colors in range")
            .normalize(),
    )
}

fn merge(coloring: &EdgeColoring, rng: &mut ChaCha8Rng) -> EdgeColoring {
    let c = coloring.color_count();
    let a = rng.random_range(0..c);
    let mut b = rng.random_range(0..c - 1);
    if b >= a {
        b += 1;
    }
    let (keep, drop) = (a.min(b), a.max(b));
    let labels: Vec<u32> = coloring
        .colors()
        .iter()
        .map(|&x| if x == drop { keep } else { x })
        .collect();
    EdgeColoring::from_labels(coloring.n(), &labels).expect("merge keeps the edge count")
}

fn run_restart(start: &EdgeColoring, forest: &LinearForest, config: &SearchConfig, r: usize) -> Result<RestartOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ r as u64);
    let stagnation = config.stagnation_limit();
    let mut state = start.clone();
    let mut out = RestartOutcome {
        best: start.clone(),
        moves_tried: 0,
        moves_accepted: 0,
        merges: 0,
        budget_rejections: 0,
    };
    let mut rejections = 0;
    for _ in 0..config.moves_per_restart {
        let Some(candidate) = split(&state, &mut rng) else {
            break;
        };
        out.moves_tried += 1;
        match find_rainbow(&candidate, forest, config.detect_budget)? {
            DetectOutcome::Absent => {
                state = candidate;
                out.moves_accepted += 1;
                rejections = 0;
                if state.color_count() > out.best.color_count() {
                    out.best = state.clone();
                }
                continue;
            }
            DetectOutcome::Found(_) => {}
            DetectOutcome::BudgetExceeded { .. } => out.budget_rejections += 1,
        }
        rejections += 1;
        if rejections >= stagnation && state.color_count() >= 2 {
            state = merge(&state, &mut rng);
            out.merges += 1;
            rejections = 0;
        }
    }
    Ok(out)
}

/// Searches for an avoiding coloring of `K_n` with as many colors as
/// possible, starting from [`best_known_avoider`].
pub fn search_lower_bound(n: usize, forest: &LinearForest, config: &SearchConfig) -> Result<SearchReport> {
    config.validate()?;
    if forest.total_vertices() > n {
        return Err(Error::domain(format!(
            "forest {forest} needs {} vertices, host has {n}",
            forest.total_vertices()
        )));
    }
    let start = best_known_avoider(n, forest)?
        .ok_or_else(|| Error::domain(format!("every coloring of K_{n} contains a rainbow {forest}")))?;
    let start = start.normalize();

    let outcomes: Vec<RestartOutcome> = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(&start, forest, config, r))
        .collect::<Result<_>>()?;

    let mut stats = SearchStats {
        start_colors: start.color_count(),
        restarts: config.restarts,
        ..SearchStats::default()
    };
    let mut best_index = 0;
    for (r, o) in outcomes.iter().enumerate() {
        stats.moves_tried += o.moves_tried;
        stats.moves_accepted += o.moves_accepted;
        stats.merges += o.merges;
        stats.budget_rejections += o.budget_rejections;
        if o.best.color_count() > outcomes[best_index].best.color_count() {
            best_index = r;
        }
    }
    let best = outcomes.into_iter().nth(best_index).expect("at least one restart").best;
    stats.best_colors = best.color_count();
    stats.best_restart = best_index;
    let certificate = Certificate::new(best, forest.clone(), config.detect_budget)?;
    Ok(SearchReport { certificate, stats })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub k: usize,
    pub t: usize,
    pub n: usize,
    pub forest: SearchReport,
    pub matching: SearchReport,
    /// `AR(n, (2k+t)P2)` when the closed form applies.
    pub matching_formula: Option<BigInt>,
    /// The forest certificate beats the matching formula.
    pub flagged: bool,
}

/// Compares search lower bounds for `kP4 + tP2` and `(2k+t)P2` in `K_n`.
pub fn conjecture_probe(k: usize, t: usize, n: usize, config: &SearchConfig) -> Result<ProbeReport> {
    if k < 1 {
        return Err(Error::domain("probe needs k ≥ 1"));
    }
    if n < 4 * k + 2 * t {
        return Err(Error::domain(format!(
            "probe needs n ≥ 4k + 2t = {}, got {n}",
            4 * k + 2 * t
        )));
    }
    let s = 2 * k + t;
    let forest = search_lower_bound(n, &LinearForest::p4_p2(k, t)?, config)?;
    let matching = search_lower_bound(n, &LinearForest::matching(s)?, config)?;
    let matching_formula = ar_matching(&BigInt::from(n), &BigInt::from(s)).ok();
    let flagged = matching_formula
        .as_ref()
        .is_some_and(|f| BigInt::from(forest.certificate.colors()) > *f);
    Ok(ProbeReport {
        k,
        t,
        n,
        forest,
        matching,
        matching_formula,
        flagged,
    })
}
