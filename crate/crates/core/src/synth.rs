//! Seeded synthetic transaction generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::itemset::{Itemset, MAX_ITEMS};
use crate::TransactionDatabase;

/// How synthetic transactions are drawn.
#[derive(Clone, Debug, PartialEq)]
pub enum SyntheticModel {
    /// Every item is present independently with the same probability.
    IndependentBernoulli { item_probability: f64 },
    /// Background noise plus planted itemsets: each transaction first draws
    /// every item at `background_probability`, then each planted itemset is
    /// inserted whole with probability `occurrence_probability`. Every
    /// planted itemset therefore has expected support of at least the
    /// occurrence probability.
    Planted {
        itemsets: Vec<Vec<u16>>,
        occurrence_probability: f64,
        background_probability: f64,
    },
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::usage(format!("{name} must be in [0, 1], got {p}")));
    }
    Ok(())
}

/// Draws `transaction_count` rows over `item_count` items, deterministically
/// from the seed.
pub fn generate_synthetic(
    transaction_count: usize,
    item_count: usize,
    model: &SyntheticModel,
    seed: u64,
) -> Result<TransactionDatabase> {
    if transaction_count == 0 {
        return Err(Error::usage("transaction count must be positive"));
    }
    if item_count == 0 || item_count > MAX_ITEMS {
        return Err(Error::usage(format!(
            "item count must be in 1..={MAX_ITEMS}, got {item_count}"
        )));
    }
    let label = match model {
        SyntheticModel::IndependentBernoulli { item_probability } => {
            check_probability("item probability", *item_probability)?;
            format!(
                "synthetic:bernoulli(p={item_probability},n={transaction_count},d={item_count},seed={seed})"
            )
        }
        SyntheticModel::Planted {
            itemsets,
            occurrence_probability,
            background_probability,
        } => {
            check_probability("occurrence probability", *occurrence_probability)?;
            check_probability("background probability", *background_probability)?;
            if itemsets.is_empty() {
                return Err(Error::usage("planted model needs at least one itemset"));
            }
            for planted in itemsets {
                if planted.is_empty() {
                    return Err(Error::usage("planted itemsets must be nonempty"));
                }
                for &item in planted {
                    if item == 0 || item as usize > item_count {
                        return Err(Error::usage(format!(
                            "planted item {item} outside universe 1..={item_count}"
                        )));
                    }
                }
            }
            format!(
                "synthetic:planted({} itemsets,q={occurrence_probability},p={background_probability},n={transaction_count},d={item_count},seed={seed})",
                itemsets.len()
            )
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(transaction_count);
    for _ in 0..transaction_count {
        let mut row = Itemset::empty(item_count)?;
        match model {
            SyntheticModel::IndependentBernoulli { item_probability } => {
                for bit in 0..item_count {
                    if rng.random::<f64>() < *item_probability {
                        row.set_bit(bit);
                    }
                }
            }
            SyntheticModel::Planted {
                itemsets,
                occurrence_probability,
                background_probability,
            } => {
                for bit in 0..item_count {
                    if rng.random::<f64>() < *background_probability {
                        row.set_bit(bit);
                    }
                }
                for planted in itemsets {
                    if rng.random::<f64>() < *occurrence_probability {
                        for &item in planted {
                            row.set_bit(item as usize - 1);
                        }
                    }
                }
            }
        }
        rows.push(row);
    }
    TransactionDatabase::new(rows, label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apriori;
    use crate::database::MiningParams;

    #[test]
    fn deterministic_from_seed() {
        let model = SyntheticModel::IndependentBernoulli {
            item_probability: 0.3,
        };
        let a = generate_synthetic(500, 8, &model, 99).unwrap();
        let b = generate_synthetic(500, 8, &model, 99).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(500, 8, &model, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_probability_gives_empty_transactions() {
        let model = SyntheticModel::IndependentBernoulli {
            item_probability: 0.0,
        };
        let db = generate_synthetic(50, 6, &model, 1).unwrap();
        assert!(db.rows().iter().all(|r| r.is_empty()));
        let params = MiningParams::for_database(0.1, &db).unwrap();
        assert!(apriori::mine(&db, &params).family().is_empty());
    }

    #[test]
    fn planted_itemset_is_mined_as_frequent() {
        let model = SyntheticModel::Planted {
            itemsets: vec![vec![1, 2, 3]],
            occurrence_probability: 0.5,
            background_probability: 0.05,
        };
        let target = Itemset::from_items(8, &[1, 2, 3]).unwrap();
        for seed in 0..20 {
            let db = generate_synthetic(1000, 8, &model, seed).unwrap();
            let params = MiningParams::for_database(0.3, &db).unwrap();
            assert!(
                db.is_frequent(&target, &params).unwrap(),
                "seed {seed}: planted itemset fell below threshold"
            );
            assert!(apriori::mine(&db, &params).family().contains_key(&target));
        }
    }

    #[test]
    fn invalid_arguments_rejected() {
        let bad_p = SyntheticModel::IndependentBernoulli {
            item_probability: 1.5,
        };
        assert!(generate_synthetic(10, 4, &bad_p, 0).is_err());
        let bad_item = SyntheticModel::Planted {
            itemsets: vec![vec![9]],
            occurrence_probability: 0.5,
            background_probability: 0.0,
        };
        assert!(generate_synthetic(10, 4, &bad_item, 0).is_err());
        let ok = SyntheticModel::IndependentBernoulli {
            item_probability: 0.5,
        };
        assert!(generate_synthetic(0, 4, &ok, 0).is_err());
        assert!(generate_synthetic(10, 0, &ok, 0).is_err());
    }
}
