//! Frequent-itemset mining toolkit.
//!
//! The crate provides two miners over binary transaction databases — an exact
//! level-wise miner ([`apriori::mine`]) and a genetic-algorithm miner
//! ([`ga::mine`]) that accumulates every frequent itemset its population ever
//! visits — plus association-rule generation ([`rules::generate_rules`]),
//! synthetic dataset generation ([`synth::generate_synthetic`]) and
//! repeated-run measurement campaigns ([`perf::run_campaign`]).
//!
//! Itemsets are fixed-width bitmasks (up to [`itemset::MAX_ITEMS`] items);
//! all supports are counted exactly as integers, with fractions derived from
//! the counts.

pub mod apriori;
pub mod database;
pub mod error;
pub mod ga;
pub mod io;
pub mod itemset;
pub mod perf;
pub mod report;
pub mod rules;
pub mod synth;

pub use database::{MiningParams, TransactionDatabase};
pub use error::{Error, Result};
pub use itemset::Itemset;
