//! Transaction databases and support counting.
//!
//! A [`TransactionDatabase`] is an immutable `n x d` binary matrix: one row
//! per transaction, one column per item. Rows are stored as itemsets for
//! containment scans; columns are stored as transaction-id bitmaps so that
//! the support of a single itemset can be counted by intersecting the
//! columns of its items instead of walking every row.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::itemset::Itemset;

/// Immutable binary transaction database.
///
/// Safe to share across threads: every operation is a pure read.
#[derive(Clone)]
pub struct TransactionDatabase {
    item_count: usize,
    rows: Vec<Itemset>,
    /// One bitmap per item: bit `t` of `columns[i]` is set iff transaction
    /// `t` contains item `i + 1`. Blocks of 64 transactions.
    columns: Vec<Vec<u64>>,
    source_label: String,
}

impl TransactionDatabase {
    /// Builds a database from one itemset per transaction.
    ///
    /// All rows must share the same width; at least one row is required.
    /// Duplicate rows and empty rows are allowed.
    pub fn new(rows: Vec<Itemset>, source_label: impl Into<String>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::usage("a database needs at least one transaction"));
        };
        let item_count = first.width();
        if let Some(bad) = rows.iter().position(|r| r.width() != item_count) {
            return Err(Error::usage(format!(
                "row {} has width {}, expected {}",
                bad + 1,
                rows[bad].width(),
                item_count
            )));
        }

        let blocks = rows.len().div_ceil(64);
        let mut columns = vec![vec![0u64; blocks]; item_count];
        for (t, row) in rows.iter().enumerate() {
            for item in row.iter_items() {
                columns[item as usize - 1][t / 64] |= 1u64 << (t % 64);
            }
        }

        Ok(TransactionDatabase {
            item_count,
            rows,
            columns,
            source_label: source_label.into(),
        })
    }

    /// Number of transactions (`n`).
    pub fn transaction_count(&self) -> usize {
        self.rows.len()
    }

    /// Number of items (`d`).
    pub fn item_count(&self) -> usize {
        self.item_count
    }

    pub fn rows(&self) -> &[Itemset] {
        &self.rows
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    /// Number of transactions containing `x`. The empty itemset is contained
    /// in every transaction.
    pub fn support_count(&self, x: &Itemset) -> Result<u64> {
        self.check_width(x)?;
        Ok(self.count_rows_containing(x))
    }

    /// Support as a fraction of the transaction count. The fraction is the
    /// correctly rounded f64 of `support_count / n`; counts remain the
    /// exact ground truth.
    pub fn support(&self, x: &Itemset) -> Result<f64> {
        Ok(self.support_count(x)? as f64 / self.transaction_count() as f64)
    }

    /// Whether `support_count(x) >= params.min_count()`.
    pub fn is_frequent(&self, x: &Itemset, params: &MiningParams) -> Result<bool> {
        Ok(self.support_count(x)? >= params.min_count())
    }

    fn check_width(&self, x: &Itemset) -> Result<()> {
        if x.width() != self.item_count {
            return Err(Error::usage(format!(
                "itemset width {} does not match database item count {}",
                x.width(),
                self.item_count
            )));
        }
        Ok(())
    }

    /// Column-intersection support count. Width must already be validated.
    pub(crate) fn count_rows_containing(&self, x: &Itemset) -> u64 {
        debug_assert_eq!(x.width(), self.item_count);
        let mut items = x.iter_items();
        let Some(first) = items.next() else {
            return self.rows.len() as u64;
        };
        let mut acc = self.columns[first as usize - 1].clone();
        for item in items {
            let mut any = 0u64;
            for (a, c) in acc.iter_mut().zip(&self.columns[item as usize - 1]) {
                *a &= c;
                any |= *a;
            }
            if any == 0 {
                return 0;
            }
        }
        acc.iter().map(|b| b.count_ones() as u64).sum()
    }
}

impl PartialEq for TransactionDatabase {
    /// Equality on the logical data (dimensions and rows); the source label
    /// is provenance, not data.
    fn eq(&self, other: &Self) -> bool {
        self.item_count == other.item_count && self.rows == other.rows
    }
}

impl std::fmt::Debug for TransactionDatabase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransactionDatabase")
            .field("transactions", &self.rows.len())
            .field("items", &self.item_count)
            .field("source", &self.source_label)
            .finish()
    }
}

/// Minimum-support threshold, kept both as the requested fraction and as the
/// derived integer count actually used in comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MiningParams {
    min_support: f64,
    min_count: u64,
}

impl MiningParams {
    /// `min_support` must lie in (0, 1]. The derived count is the smallest
    /// integer `c` with `c / n >= min_support` under f64 division, which for
    /// a 15-transaction database at 20% gives 3.
    pub fn new(min_support: f64, transaction_count: usize) -> Result<Self> {
        if !min_support.is_finite() || min_support <= 0.0 || min_support > 1.0 {
            return Err(Error::usage(format!(
                "minimum support must be in (0, 1], got {min_support}"
            )));
        }
        if transaction_count == 0 {
            return Err(Error::usage("transaction count must be positive"));
        }
        let n = transaction_count as f64;
        let mut count = (min_support * n).ceil() as u64;
        count = count.clamp(1, transaction_count as u64);
        // The float product can land on either side of the exact threshold;
        // settle on the smallest count whose fraction reaches min_support.
        while count > 1 && (count - 1) as f64 / n >= min_support {
            count -= 1;
        }
        while (count as f64) / n < min_support {
            count += 1;
        }
        Ok(MiningParams {
            min_support,
            min_count: count,
        })
    }

    pub fn for_database(min_support: f64, db: &TransactionDatabase) -> Result<Self> {
        Self::new(min_support, db.transaction_count())
    }

    pub fn min_support(&self) -> f64 {
        self.min_support
    }

    pub fn min_count(&self) -> u64 {
        self.min_count
    }
}
