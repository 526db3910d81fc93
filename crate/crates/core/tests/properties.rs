use antiramsey::detect::{find_rainbow, find_rainbow_oracle, DetectBudget, DetectOutcome};
use antiramsey::model::{edge_count, edge_endpoints, edge_index, read_coloring, write_coloring};
use antiramsey::{EdgeColoring, LinearForest};
use proptest::prelude::*;

fn coloring_strategy(max_n: usize, max_colors: u32) -> impl Strategy<Value = EdgeColoring> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..max_colors, edge_count(n))
            .prop_map(move |labels| EdgeColoring::from_labels(n, &labels).unwrap())
    })
}

fn forest_strategy() -> impl Strategy<Value = LinearForest> {
    proptest::collection::vec((2usize..=5, 1usize..=2), 1..=2).prop_map(|parts| LinearForest::new(parts).unwrap())
}

proptest! {
    #[test]
    fn edge_index_round_trips(n in 2usize..40, seed in any::<u64>()) {
        let idx = (seed as usize) % edge_count(n);
        let (u, v) = edge_endpoints(n, idx).unwrap();
        prop_assert!(u < v && v < n);
        prop_assert_eq!(edge_index(n, u, v).unwrap(), idx);
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_classes(c in coloring_strategy(8, 6)) {
        let once = c.normalize();
        prop_assert!(once.is_normalized());
        prop_assert_eq!(once.normalize(), once.clone());
        prop_assert_eq!(once.color_count(), c.color_count());
        for i in 0..c.edge_count() {
            for j in 0..c.edge_count() {
                prop_assert_eq!(c.colors()[i] == c.colors()[j], once.colors()[i] == once.colors()[j]);
            }
        }
    }

    #[test]
    fn coloring_file_round_trips(c in coloring_strategy(9, 12)) {
        let mut buf = Vec::new();
        write_coloring(&c, &mut buf).unwrap();
        let back = read_coloring(buf.as_slice()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn forest_text_round_trips(f in forest_strategy()) {
        let text = f.to_string();
        prop_assert_eq!(text.parse::<LinearForest>().unwrap(), f);
    }

    #[test]
    fn detector_matches_oracle(c in coloring_strategy(7, 7), f in forest_strategy()) {
        prop_assume!(f.total_vertices() <= c.n());
        let fast = find_rainbow(&c, &f, DetectBudget::unlimited()).unwrap();
        let slow = find_rainbow_oracle(&c, &f).unwrap();
        match &fast {
            DetectOutcome::Found(e) => {
                prop_assert!(slow.is_some());
                e.validate(&c, &f).unwrap();
            }
            DetectOutcome::Absent => prop_assert!(slow.is_none()),
            DetectOutcome::BudgetExceeded { .. } => prop_assert!(false, "unlimited budget"),
        }
    }

    #[test]
    fn merging_classes_never_creates_rainbow(c in coloring_strategy(7, 6), f in forest_strategy()) {
        prop_assume!(f.total_vertices() <= c.n() && c.color_count() >= 2);
        let before = find_rainbow(&c, &f, DetectBudget::unlimited()).unwrap();
        let merged = antiramsey::exact::merge_top_classes(&c).unwrap();
        prop_assert_eq!(merged.color_count() + 1, c.color_count());
        let after = find_rainbow(&merged, &f, DetectBudget::unlimited()).unwrap();
        if before.is_absent() {
            prop_assert!(after.is_absent());
        }
    }
}
