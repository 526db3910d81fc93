//! Extremal colorings for matchings.
//!
//! Two colorings of `K_n` have no rainbow `tP2`:
//!
//! - *star cover*: the `t - 2` lowest vertices form a set `S`; every edge
//!   meeting `S` gets its own color and all other edges share one color. A
//!   `t`-matching has at most `t - 2` edges meeting `S`, so at least two of
//!   its edges carry the shared color.
//! - *clique plus one*: the edges inside `{0, …, 2t-4}` all get distinct
//!   colors and every other edge shares one color. A `t`-matching has at most
//!   `t - 2` edges inside a set of `2t - 3` vertices.
//!
//! Their color counts are the two branches of the matching formula.

use num_bigint::BigInt;

use crate::detect::matching_shadow;
use crate::error::{Error, Result};
use crate::formulas::{ar_linear_forest, ParamTriple};
use crate::model::{EdgeColoring, LinearForest};

/// Star-cover coloring for `tP2`; rainbow-free whenever `n ≥ 2t`.
pub fn star_cover(n: usize, t: usize) -> Result<EdgeColoring> {
    check_matching_host(n, t, 2 * t)?;
    let special = t - 2;
    EdgeColoring::from_fn(n, |u, v| if u < special { Some((u, v)) } else { None })
}

/// Clique-plus-one coloring for `tP2`; rainbow-free whenever `n ≥ 2t`.
pub fn clique_plus_one(n: usize, t: usize) -> Result<EdgeColoring> {
    check_matching_host(n, t, 2 * t)?;
    let clique = 2 * t - 3;
    EdgeColoring::from_fn(n, |u, v| if v < clique { Some((u, v)) } else { None })
}

fn check_matching_host(n: usize, t: usize, min_n: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::OutOfRegion(format!(
            "matching construction needs t ≥ 2, got t = {t}"
        )));
    }
    if n < min_n {
        return Err(Error::OutOfRegion(format!(
            "matching construction needs n ≥ {min_n}, got n = {n}"
        )));
    }
    Ok(())
}

/// The extremal coloring for `tP2` on `K_n`, `t ≥ 2`, `n ≥ 2t + 1`.
///
/// Uses the star cover when `2n ≥ 5t - 7` and the clique-plus-one coloring
/// otherwise; at `2n = 5t - 7` both have the same number of colors and the
/// star cover is returned. The result is normalized.
pub fn construct_matching(n: usize, t: usize) -> Result<EdgeColoring> {
    check_matching_host(n, t, 2 * t + 1)?;
    if 2 * n + 7 >= 5 * t {
        star_cover(n, t)
    } else {
        clique_plus_one(n, t)
    }
}

/// A coloring of `K_n` with no rainbow `kP4 + tP2` whose color count equals
/// [`ar_linear_forest`].
///
/// It is the extremal matching coloring for `(2k+t)P2`: a rainbow `kP4 + tP2`
/// would contain a rainbow `(2k+t)P2`.
pub fn construct_forest_avoider(p: &ParamTriple) -> Result<EdgeColoring> {
    let expected = ar_linear_forest(p)?;
    let to_usize = |v: &BigInt, what: &str| {
        usize::try_from(v).map_err(|_| Error::domain(format!("{what} = {v} is too large to construct")))
    };
    let n = to_usize(&p.n, "n")?;
    let s = to_usize(&p.matching_size(), "2k + t")?;
    let coloring = construct_matching(n, s)?;
    assert_eq!(
        BigInt::from(coloring.color_count()),
        expected,
        "construction matches the formula"
    );
    Ok(coloring)
}

/// The richest constructive coloring of `K_n` known to avoid a rainbow
/// `forest`: the better matching coloring for the forest's matching shadow
/// when one exists, else the monochromatic coloring. `None` when even the
/// monochromatic coloring contains a rainbow copy (single-edge forests).
pub fn best_known_avoider(n: usize, forest: &LinearForest) -> Result<Option<EdgeColoring>> {
    if forest.total_edges() < 2 {
        return Ok(None);
    }
    let s = matching_shadow(forest).matching_number();
    let mut best = EdgeColoring::monochromatic(n)?;
    if s >= 2 && n >= 2 * s {
        for candidate in [star_cover(n, s)?, clique_plus_one(n, s)?] {
            if candidate.color_count() > best.color_count() {
                best = candidate;
            }
        }
    }
    Ok(Some(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{find_rainbow, DetectBudget, DetectOutcome};
    use crate::formulas::ar_matching;

    fn absent(c: &EdgeColoring, f: &str) -> bool {
        find_rainbow(c, &f.parse().unwrap(), DetectBudget::unlimited()).unwrap() == DetectOutcome::Absent
    }

    #[test]
    fn matching_examples() {
        let c = construct_matching(10, 3).unwrap();
        assert_eq!(c.color_count(), 10);
        assert!(absent(&c, "3xP2"));

        let c = construct_matching(5, 2).unwrap();
        assert_eq!(c.color_count(), 1);

        let star = star_cover(19, 9).unwrap();
        let clique = clique_plus_one(19, 9).unwrap();
        assert_eq!(star.color_count(), 106);
        assert_eq!(clique.color_count(), 106);
        assert_eq!(construct_matching(19, 9).unwrap(), star);
        assert!(absent(&star, "9xP2"));
        assert!(absent(&clique, "9xP2"));
    }

    #[test]
    fn outputs_are_normalized() {
        for (n, t) in [(10, 3), (12, 5), (9, 4), (19, 9)] {
            assert!(construct_matching(n, t).unwrap().is_normalized());
        }
    }

    #[test]
    fn matching_region_errors() {
        assert!(construct_matching(6, 3).is_err());
        assert!(construct_matching(6, 1).is_err());
    }

    #[test]
    fn forest_avoider_examples() {
        let p = ParamTriple::new(2, 2, 20).unwrap();
        let c = construct_forest_avoider(&p).unwrap();
        assert_eq!(c.color_count(), 71);
        assert!(absent(&c, "2xP4+2xP2"));

        let p = ParamTriple::new(2, 2, 16).unwrap();
        assert_eq!(construct_forest_avoider(&p).unwrap().color_count(), 55);

        let p = ParamTriple::new(1, 2, 12).unwrap();
        let c = construct_forest_avoider(&p).unwrap();
        assert_eq!(c.color_count(), 22);
        assert!(absent(&c, "P4+2xP2"));

        assert!(construct_forest_avoider(&ParamTriple::new(2, 0, 8).unwrap()).is_err());
        assert!(construct_forest_avoider(&ParamTriple::new(1, 2, 8).unwrap()).is_err());
    }

    #[test]
    fn perfect_matching_host_still_has_avoiders() {
        let c = star_cover(8, 4).unwrap();
        assert_eq!(c.color_count(), 14);
        assert!(absent(&c, "P4+2xP2"));
        assert_eq!(clique_plus_one(8, 4).unwrap().color_count(), 11);
    }

    #[test]
    fn counts_match_formula_small_grid() {
        for t in 2..=6usize {
            for n in 2 * t + 1..=20 {
                let c = construct_matching(n, t).unwrap();
                let ar = ar_matching(&BigInt::from(n), &BigInt::from(t)).unwrap();
                assert_eq!(BigInt::from(c.color_count()), ar, "n = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn best_known_avoider_prefers_constructions() {
        let f: LinearForest = "P3+2xP2".parse().unwrap();
        assert_eq!(best_known_avoider(7, &f).unwrap().unwrap().color_count(), 7);
        let f: LinearForest = "P2".parse().unwrap();
        assert!(best_known_avoider(7, &f).unwrap().is_none());
        let f: LinearForest = "P3+P2".parse().unwrap();
        assert_eq!(best_known_avoider(5, &f).unwrap().unwrap().color_count(), 1);
    }
}
