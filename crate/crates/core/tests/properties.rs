mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use saberpro_cart::splitter::{candidate_questions, partition};
use saberpro_cart::{best_split, deserialize, serialize, Dataset, Model, Value};

fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        (-1e6f64..1e6).prop_map(Value::Numeric),
        "[a-z ]{1,6}".prop_map(Value::categorical),
        Just(Value::Missing),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_then_get_is_identity(
        n_rows in 1usize..30,
        n_cols in 1usize..8,
        cells in proptest::collection::vec(value(), 240),
    ) {
        let mut d = Dataset::create(n_rows, n_cols).unwrap();
        for i in 0..n_rows {
            let row: Vec<Value> = (0..n_cols).map(|j| cells[i * n_cols + j].clone()).collect();
            d.set_row(i, row).unwrap();
        }
        for i in 0..n_rows {
            for j in 0..n_cols {
                prop_assert_eq!(d.get(i, j).unwrap(), &cells[i * n_cols + j]);
            }
        }
        prop_assert!(d.get(n_rows, 0).is_err());
        prop_assert!(d.get(0, n_cols).is_err());
    }

    #[test]
    fn find_column_inverts_header(names in proptest::collection::hash_set("[a-z_]{1,8}", 1..10)) {
        let names: Vec<String> = names.into_iter().collect();
        let mut d = Dataset::create(1, names.len()).unwrap();
        d.set_header(names.clone()).unwrap();
        for (j, name) in names.iter().enumerate() {
            prop_assert_eq!(d.find_column(name).unwrap(), j);
        }
        prop_assert!(d.find_column("NOT A COLUMN").is_err());
    }

    #[test]
    fn partition_conserves_rows(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labeled = common::random_dataset(&mut rng, 20, 4);
        let rows = labeled.all_rows();
        for (col, _) in labeled.schema().features() {
            for q in candidate_questions(&rows, col, &labeled) {
                let (t, f) = partition(&rows, &q, &labeled);
                prop_assert_eq!(t.len() + f.len(), rows.len());
                prop_assert!(t.iter().all(|&i| q.matches(i, &labeled)));
                prop_assert!(f.iter().all(|&i| !q.matches(i, &labeled)));
            }
        }
    }

    #[test]
    fn best_split_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labeled = common::random_dataset(&mut rng, 12, 4);
        let rows = labeled.all_rows();
        let got = best_split(&rows, &labeled);
        let want = common::brute_force_best_split(&rows, &labeled);
        prop_assert_eq!(got.is_some(), want.is_some());
        if let (Some(g), Some(w)) = (got, want) {
            prop_assert_eq!(g.gain, w.gain);
            prop_assert_eq!(g.question.col, w.col);
            prop_assert_eq!(g.question.predicate, w.predicate);
        }
    }

    #[test]
    fn training_is_deterministic_and_bounded(seed in any::<u64>(), max_depth in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labeled = common::random_dataset(&mut rng, 40, 4);
        let rows = labeled.all_rows();
        let a = Model::fit(&labeled, &rows, max_depth).unwrap();
        let b = Model::fit(&labeled, &rows, max_depth).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.root.depth() <= max_depth);
        let deepest = common::check_conservation(&a.root, &rows, &labeled, 0).unwrap();
        prop_assert!(deepest <= max_depth);
    }

    #[test]
    fn serialization_is_stable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = common::random_model(&mut rng);
        let text = serialize(&model);
        let back = deserialize(&text).unwrap();
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(serialize(&back), text);
    }
}
