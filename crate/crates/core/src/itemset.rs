//! Fixed-width bitmask itemsets.
//!
//! An [`Itemset`] is a subset of an item universe of size `width`, stored as
//! a bitmask. Items are 1-based in every public interface (`1..=width`),
//! matching the labels used in dataset files; bit positions are 0-based
//! internally. The universe is capped at [`MAX_ITEMS`] items.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum supported item universe. Four 64-bit words per itemset.
pub const MAX_ITEMS: usize = 256;

const WORDS: usize = MAX_ITEMS / 64;

/// A set of items over a fixed universe of `width` items.
///
/// Invariants: no bit at position `>= width` is ever set, and two itemsets
/// may only be combined when their widths match (set-algebra methods panic
/// on width mismatch; database-level operations report usage errors).
///
/// Ordering is lexicographic on the ascending list of item ids, so
/// `{2} < {2,3} < {3,5} < {3,7}`; ties are broken by width.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Itemset {
    words: [u64; WORDS],
    width: u16,
}

impl Itemset {
    /// The empty itemset over a universe of `width` items.
    pub fn empty(width: usize) -> Result<Self> {
        if width == 0 || width > MAX_ITEMS {
            return Err(Error::usage(format!(
                "item universe must have between 1 and {MAX_ITEMS} items, got {width}"
            )));
        }
        Ok(Itemset {
            words: [0; WORDS],
            width: width as u16,
        })
    }

    /// The itemset containing every item of the universe.
    pub fn full(width: usize) -> Result<Self> {
        Ok(Self::empty(width)?.complement())
    }

    /// A single-item set. `item` is 1-based.
    pub fn single(width: usize, item: u16) -> Result<Self> {
        Self::empty(width)?.with_item(item)
    }

    /// Builds an itemset from 1-based item ids. Duplicates collapse.
    pub fn from_items(width: usize, items: &[u16]) -> Result<Self> {
        let mut set = Self::empty(width)?;
        for &item in items {
            set = set.with_item(item)?;
        }
        Ok(set)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Number of items in the set.
    pub fn cardinality(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Whether the 1-based `item` is present. Items outside `1..=width`
    /// are never present.
    pub fn contains_item(&self, item: u16) -> bool {
        if item == 0 || item as usize > self.width() {
            return false;
        }
        self.bit(item as usize - 1)
    }

    /// Copy of `self` with the 1-based `item` added.
    pub fn with_item(&self, item: u16) -> Result<Self> {
        self.check_item(item)?;
        let mut out = *self;
        out.set_bit(item as usize - 1);
        Ok(out)
    }

    /// Copy of `self` with the 1-based `item` removed.
    pub fn without_item(&self, item: u16) -> Result<Self> {
        self.check_item(item)?;
        let mut out = *self;
        out.clear_bit(item as usize - 1);
        Ok(out)
    }

    fn check_item(&self, item: u16) -> Result<()> {
        if item == 0 || item as usize > self.width() {
            return Err(Error::usage(format!(
                "item {item} outside universe 1..={}",
                self.width()
            )));
        }
        Ok(())
    }

    /// Subset test: every item of `self` is in `other`.
    ///
    /// Panics if the widths differ.
    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        assert_eq!(self.width, other.width, "itemset width mismatch");
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == *a)
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        assert_eq!(self.width, other.width, "itemset width mismatch");
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
        out
    }

    pub fn intersection(&self, other: &Itemset) -> Itemset {
        assert_eq!(self.width, other.width, "itemset width mismatch");
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w &= o;
        }
        out
    }

    /// Items of `self` that are not in `other`.
    pub fn difference(&self, other: &Itemset) -> Itemset {
        assert_eq!(self.width, other.width, "itemset width mismatch");
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
        out
    }

    pub fn is_disjoint_from(&self, other: &Itemset) -> bool {
        assert_eq!(self.width, other.width, "itemset width mismatch");
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Complement within the universe: exactly the items not in `self`.
    pub fn complement(&self) -> Itemset {
        let mask = width_mask(self.width());
        let mut out = *self;
        for (w, m) in out.words.iter_mut().zip(mask.iter()) {
            *w = !*w & m;
        }
        out
    }

    /// Ascending 1-based item ids.
    pub fn items(&self) -> Vec<u16> {
        self.iter_items().collect()
    }

    /// Iterates the 1-based item ids in ascending order.
    pub fn iter_items(&self) -> ItemIter {
        ItemIter {
            words: self.words,
            word_index: 0,
        }
    }

    pub(crate) fn bit(&self, bit: usize) -> bool {
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub(crate) fn set_bit(&mut self, bit: usize) {
        debug_assert!(bit < self.width());
        self.words[bit / 64] |= 1u64 << (bit % 64);
    }

    pub(crate) fn clear_bit(&mut self, bit: usize) {
        self.words[bit / 64] &= !(1u64 << (bit % 64));
    }

    pub(crate) fn toggle_bit(&mut self, bit: usize) {
        debug_assert!(bit < self.width());
        self.words[bit / 64] ^= 1u64 << (bit % 64);
    }

    /// Mask over the first `count` bit positions of a `width`-item universe.
    pub(crate) fn prefix_mask(width: usize, count: usize) -> Itemset {
        debug_assert!(count <= width && width <= MAX_ITEMS);
        let mut out = Itemset {
            words: [0; WORDS],
            width: width as u16,
        };
        let full = count / 64;
        for w in out.words.iter_mut().take(full) {
            *w = u64::MAX;
        }
        let rest = count % 64;
        if rest > 0 {
            out.words[full] = (1u64 << rest) - 1;
        }
        out
    }
}

fn width_mask(width: usize) -> [u64; WORDS] {
    let mut mask = [0u64; WORDS];
    let full = width / 64;
    for m in mask.iter_mut().take(full) {
        *m = u64::MAX;
    }
    let rest = width % 64;
    if rest > 0 {
        mask[full] = (1u64 << rest) - 1;
    }
    mask
}

pub struct ItemIter {
    words: [u64; WORDS],
    word_index: usize,
}

impl Iterator for ItemIter {
    type Item = u16;

    fn next(&mut self) -> Option<u16> {
        while self.word_index < WORDS {
            let word = self.words[self.word_index];
            if word == 0 {
                self.word_index += 1;
                continue;
            }
            let bit = word.trailing_zeros() as usize;
            self.words[self.word_index] &= word - 1;
            return Some((self.word_index * 64 + bit + 1) as u16);
        }
        None
    }
}

impl Ord for Itemset {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter_items();
        let mut b = other.iter_items();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return self.width.cmp(&other.width),
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    unequal => return unequal,
                },
            }
        }
    }
}

impl PartialOrd for Itemset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, item) in self.iter_items().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
