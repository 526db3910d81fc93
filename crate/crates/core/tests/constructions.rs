use antiramsey::construct::{clique_plus_one, construct_forest_avoider, construct_matching, star_cover};
use antiramsey::detect::{find_rainbow, DetectBudget};
use antiramsey::formulas::{ar_linear_forest, ar_matching, ParamTriple};
use antiramsey::LinearForest;
use num_bigint::BigInt;

#[test]
fn matching_construction_counts_follow_the_formula() {
    for t in 2..=12usize {
        for n in 2 * t + 1..=60 {
            let c = construct_matching(n, t).unwrap();
            let f = ar_matching(&BigInt::from(n), &BigInt::from(t)).unwrap();
            assert_eq!(BigInt::from(c.color_count()), f, "n={n} t={t}");
        }
    }
}

#[test]
fn both_matching_constructions_avoid_rainbow_matchings() {
    for t in 2..=5usize {
        let forest = LinearForest::matching(t).unwrap();
        for n in 2 * t..=14 {
            for c in [star_cover(n, t).unwrap(), clique_plus_one(n, t).unwrap()] {
                assert!(
                    find_rainbow(&c, &forest, DetectBudget::unlimited())
                        .unwrap()
                        .is_absent(),
                    "n={n} t={t}"
                );
            }
        }
    }
}

#[test]
fn one_more_color_than_the_formula_is_rainbow_somewhere() {
    // Splitting any class of the extremal coloring must create a rainbow copy
    // when the formula is sharp. Check the single-color class of the star cover.
    for (n, t) in [(7usize, 3usize), (9, 3), (9, 4)] {
        let c = construct_matching(n, t).unwrap();
        let forest = LinearForest::matching(t).unwrap();
        let classes = c.color_classes();
        let big = classes.iter().max_by_key(|cl| cl.len()).unwrap();
        let mut colors = c.colors().to_vec();
        colors[big[0]] = c.color_count();
        let split = antiramsey::EdgeColoring::new(n, colors).unwrap();
        assert!(
            find_rainbow(&split, &forest, DetectBudget::unlimited())
                .unwrap()
                .is_found(),
            "n={n} t={t}"
        );
    }
}

#[test]
fn forest_avoider_small_theorem_points() {
    for (k, t, n) in [(1u32, 2u32, 9u32), (1, 2, 12), (1, 3, 11)] {
        let p = ParamTriple::new(k, t, n).unwrap();
        let c = construct_forest_avoider(&p).unwrap();
        assert_eq!(BigInt::from(c.color_count()), ar_linear_forest(&p).unwrap());
        let forest = LinearForest::p4_p2(k as usize, t as usize).unwrap();
        assert!(find_rainbow(&c, &forest, DetectBudget::unlimited())
            .unwrap()
            .is_absent());
    }
}
