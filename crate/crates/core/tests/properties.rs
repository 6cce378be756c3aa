//! Cross-module property tests: the exact miner against exhaustive
//! enumeration, closure laws of mined families, loader round trips, rule
//! algebra, and GA soundness.

use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

use gamine_core::apriori::{self, brute_force_mine, maximal_frequent_sets, reconstruct_from_maximal};
use gamine_core::ga::{self, GaConfig};
use gamine_core::io::{load_binary_matrix, load_transaction_list, to_dense_text, to_sparse_text};
use gamine_core::rules::{self, RuleParams};
use gamine_core::{Itemset, MiningParams, TransactionDatabase};

fn db_from_bools(rows: &[Vec<bool>]) -> TransactionDatabase {
    let d = rows[0].len();
    let itemsets: Vec<Itemset> = rows
        .iter()
        .map(|bits| {
            let items: Vec<u16> = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| (i + 1) as u16)
                .collect();
            Itemset::from_items(d, &items).unwrap()
        })
        .collect();
    TransactionDatabase::new(itemsets, "generated").unwrap()
}

prop_compose! {
    fn arb_db(max_rows: usize, max_items: usize)
        (d in 1..=max_items)
        (rows in prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.45), d), 1..=max_rows))
        -> TransactionDatabase {
        db_from_bools(&rows)
    }
}

prop_compose! {
    fn arb_mining_instance()
        (db in arb_db(64, 12), sigma in 0.01f64..=1.0)
        -> (TransactionDatabase, MiningParams) {
        let params = MiningParams::for_database(sigma, &db).unwrap();
        (db, params)
    }
}

fn family_of(db: &TransactionDatabase, params: &MiningParams) -> BTreeMap<Itemset, u64> {
    apriori::mine(db, params).family()
}

proptest! {
    // The level-wise miner and exhaustive enumeration agree exactly,
    // itemsets and counts both.
    #[test]
    fn level_wise_equals_brute_force((db, params) in arb_mining_instance()) {
        let mut mined: Vec<(Itemset, u64)> = family_of(&db, &params).into_iter().collect();
        apriori::sort_by_size_then_lex(&mut mined);
        let exhaustive = brute_force_mine(&db, &params).unwrap();
        prop_assert_eq!(mined, exhaustive);
    }

    // Every nonempty subset of a frequent set is frequent and carries a
    // count no smaller than its superset's.
    #[test]
    fn family_is_downward_closed((db, params) in arb_mining_instance()) {
        let family = family_of(&db, &params);
        for (set, &count) in &family {
            for item in set.iter_items() {
                let subset = set.without_item(item).unwrap();
                if subset.is_empty() {
                    continue;
                }
                let sub_count = family.get(&subset);
                prop_assert!(sub_count.is_some(), "missing subset {} of {}", subset, set);
                prop_assert!(*sub_count.unwrap() >= count);
            }
        }
        // Upward closure of infrequency is the contrapositive: nothing
        // outside the family has a superset inside it.
        for item in 1..=db.item_count() as u16 {
            let single = Itemset::single(db.item_count(), item).unwrap();
            if !family.contains_key(&single) {
                prop_assert!(family.keys().all(|s| !single.is_subset_of(s)));
            }
        }
    }

    #[test]
    fn maximal_reconstruction_round_trips((db, params) in arb_mining_instance()) {
        let mut family: Vec<Itemset> = family_of(&db, &params).into_keys().collect();
        family.sort_unstable_by_key(|s| (s.cardinality(), *s));
        let maximal = maximal_frequent_sets(&family);
        let rebuilt = reconstruct_from_maximal(&maximal).unwrap();
        prop_assert_eq!(rebuilt, family);
    }

    #[test]
    fn support_is_anti_monotone(db in arb_db(40, 10), bits in prop::collection::vec(any::<bool>(), 10)) {
        let d = db.item_count();
        let items: Vec<u16> = bits.iter().take(d).enumerate()
            .filter(|(_, &b)| b).map(|(i, _)| (i + 1) as u16).collect();
        let superset = Itemset::from_items(d, &items).unwrap();
        let super_count = db.support_count(&superset).unwrap();
        for item in superset.iter_items() {
            let subset = superset.without_item(item).unwrap();
            prop_assert!(db.support_count(&subset).unwrap() >= super_count);
        }
        // The fraction always recovers the exact count.
        let n = db.transaction_count() as f64;
        let recovered = (db.support(&superset).unwrap() * n).round() as u64;
        prop_assert_eq!(recovered, super_count);
    }

    #[test]
    fn dense_text_round_trips(db in arb_db(30, 12)) {
        let text = to_dense_text(&db);
        let reloaded = load_binary_matrix(&text, "reload").unwrap();
        prop_assert_eq!(reloaded, db);
    }

    #[test]
    fn sparse_and_dense_loaders_agree(db in arb_db(30, 12)) {
        let dense = load_binary_matrix(&to_dense_text(&db), "dense").unwrap();
        let sparse =
            load_transaction_list(&to_sparse_text(&db), Some(db.item_count()), "sparse").unwrap();
        prop_assert_eq!(dense, sparse);
    }

    // Rule support is the support of the union, symmetric in the two sides,
    // and confidence never drops below it.
    #[test]
    fn rule_support_and_confidence_laws((db, params) in arb_mining_instance()) {
        let family = family_of(&db, &params);
        let tau = RuleParams::new(1e-9).unwrap();
        let n = db.transaction_count() as u64;
        let generated = rules::generate_rules(&family, n, &tau).unwrap();
        let expected: u64 = family.keys()
            .map(|z| z.cardinality() as u64)
            .filter(|&m| m >= 2)
            .map(|m| (1u64 << m) - 2)
            .sum();
        prop_assert_eq!(generated.len() as u64, expected);
        for rule in generated.iter().take(200) {
            let union = rule.antecedent.union(&rule.consequent);
            prop_assert_eq!(rule.support_count(), db.support_count(&union).unwrap());
            let mirrored = rules::confidence(&db, &rule.consequent, &rule.antecedent).unwrap();
            if let rules::ConfidenceOutcome::Ratio { union_count, .. } = mirrored {
                prop_assert_eq!(union_count, rule.support_count());
            }
            prop_assert!(rule.confidence() >= rule.support());
            prop_assert!(rule.confidence() <= 1.0);
        }
    }

    // Growing the consequent at the antecedent's expense never increases
    // confidence.
    #[test]
    fn confidence_shrinks_as_antecedent_shrinks((db, params) in arb_mining_instance()) {
        let family = family_of(&db, &params);
        for whole in family.keys().filter(|z| z.cardinality() >= 2).take(50) {
            let mut antecedent = *whole;
            let mut last = 1.0f64;
            for item in whole.items() {
                antecedent = antecedent.without_item(item).unwrap();
                if antecedent.is_empty() {
                    break;
                }
                let consequent = whole.difference(&antecedent);
                let outcome = rules::confidence(&db, &antecedent, &consequent).unwrap();
                let value = outcome.value().expect("antecedent is frequent");
                prop_assert!(value <= last + 1e-12);
                last = value;
            }
        }
    }

    // Crossover preserves the multiset of bits at every position.
    #[test]
    fn crossover_conserves_positions(
        a_bits in prop::collection::vec(any::<bool>(), 9),
        b_bits in prop::collection::vec(any::<bool>(), 9),
        locus in 1usize..9,
    ) {
        let to_set = |bits: &[bool]| {
            let items: Vec<u16> = bits.iter().enumerate()
                .filter(|(_, &b)| b).map(|(i, _)| (i + 1) as u16).collect();
            Itemset::from_items(9, &items).unwrap()
        };
        let a = to_set(&a_bits);
        let b = to_set(&b_bits);
        let (c1, c2) = ga::crossover_at(&a, &b, locus).unwrap();
        for item in 1..=9u16 {
            let parents = [a.contains_item(item), b.contains_item(item)];
            let mut children = [c1.contains_item(item), c2.contains_item(item)];
            let mut sorted_parents = parents;
            sorted_parents.sort();
            children.sort();
            prop_assert_eq!(children, sorted_parents);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The GA archive never contains anything the exact miner would reject,
    // for any seed, any small database, any threshold.
    #[test]
    fn ga_archive_is_sound(db in arb_db(32, 9), sigma in 0.05f64..=0.9, seed in any::<u64>()) {
        let params = MiningParams::for_database(sigma, &db).unwrap();
        let exact: BTreeSet<Itemset> = family_of(&db, &params).into_keys().collect();
        let mut config = GaConfig::new(sigma, seed);
        config.max_generations = 25;
        let result = ga::mine(&db, &config).unwrap();
        for (set, count) in &result.archive {
            prop_assert!(exact.contains(set), "{} is not frequent", set);
            prop_assert_eq!(db.support_count(set).unwrap(), *count);
        }
        // Archive size per generation never shrinks.
        for w in result.stats.windows(2) {
            prop_assert!(w[0].archive_size <= w[1].archive_size);
        }
    }

    #[test]
    fn ga_runs_are_seed_deterministic(db in arb_db(24, 8), seed in any::<u64>()) {
        let mut config = GaConfig::new(0.25, seed);
        config.max_generations = 15;
        let a = ga::mine(&db, &config).unwrap();
        let b = ga::mine(&db, &config).unwrap();
        prop_assert_eq!(a, b);
    }
}
