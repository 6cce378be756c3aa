//! Exact level-wise frequent-itemset mining.
//!
//! Level k joins the frequent (k-1)-itemsets into candidates, prunes every
//! candidate with an infrequent (k-1)-subset, then counts the survivors in a
//! single pass over the transactions. Mining stops at the first level that
//! yields no frequent itemsets. A trace records per-level candidate counts,
//! scan times and the number of database passes.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use crate::database::{MiningParams, TransactionDatabase};
use crate::error::{Error, Result};
use crate::itemset::Itemset;

/// Candidate ceiling for the exhaustive miner and for power-set expansion.
pub const BRUTE_FORCE_MAX_ITEMS: usize = 20;

/// Candidates and surviving frequent itemsets of one level.
#[derive(Clone, Debug)]
pub struct LevelSets {
    /// Itemset size at this level.
    pub size: usize,
    /// Pruned candidates that were support-counted, in lexicographic order.
    pub candidates: Vec<Itemset>,
    /// Frequent itemsets with their support counts, in lexicographic order.
    pub frequents: Vec<(Itemset, u64)>,
}

/// Per-level bookkeeping for complexity verification.
#[derive(Clone, Debug)]
pub struct LevelTrace {
    pub size: usize,
    /// Number of candidates support-counted at this level.
    pub candidate_count: u64,
    pub frequent_count: u64,
    /// Wall-clock of the support scan, in seconds.
    pub scan_seconds: f64,
}

/// Whole-run trace: candidate totals and database passes.
#[derive(Clone, Debug, Default)]
pub struct MiningTrace {
    pub levels: Vec<LevelTrace>,
    /// Sum of candidate counts over all levels.
    pub total_candidates: u64,
    /// Full passes over the transaction rows; exactly one per level.
    pub database_scans: u64,
}

/// Result of a level-wise mining run.
#[derive(Clone, Debug)]
pub struct AprioriResult {
    pub levels: Vec<LevelSets>,
    pub trace: MiningTrace,
}

impl AprioriResult {
    /// All frequent itemsets with counts, keyed for subset lookups.
    pub fn family(&self) -> BTreeMap<Itemset, u64> {
        family_from_levels(&self.levels)
    }
}

/// Flattens per-level results into one itemset -> count map.
pub fn family_from_levels(levels: &[LevelSets]) -> BTreeMap<Itemset, u64> {
    levels
        .iter()
        .flat_map(|lv| lv.frequents.iter().copied())
        .collect()
}

/// Joins frequent (k-1)-itemsets into k-item candidates.
///
/// Two itemsets join when they agree on their first k-2 items and the last
/// item of the first precedes the last item of the second. The output is
/// sorted and duplicate-free. Mixed input cardinalities are a usage error.
pub fn join_level(previous: &[Itemset]) -> Result<Vec<Itemset>> {
    if previous.is_empty() {
        return Ok(Vec::new());
    }
    let k = previous[0].cardinality() as usize;
    if k == 0 {
        return Err(Error::usage("cannot join a level of empty itemsets"));
    }
    if let Some(bad) = previous.iter().find(|s| s.cardinality() as usize != k) {
        return Err(Error::usage(format!(
            "mixed cardinalities in join input: expected {k}, found {} in {bad}",
            bad.cardinality()
        )));
    }

    let mut members: Vec<Vec<u16>> = previous.iter().map(|s| s.items()).collect();
    members.sort_unstable();
    members.dedup();

    let width = previous[0].width();
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            // Sorted input keeps equal prefixes adjacent; stop extending as
            // soon as the prefix changes.
            if members[i][..k - 1] != members[j][..k - 1] {
                break;
            }
            let mut joined = members[i].clone();
            joined.push(members[j][k - 1]);
            out.push(Itemset::from_items(width, &joined)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Drops every candidate that has a (k-1)-subset missing from `previous`.
/// Single-item candidates pass unchanged: their only proper subset is the
/// empty set, which is contained in every transaction.
pub fn prune_candidates(candidates: &[Itemset], previous: &[Itemset]) -> Result<Vec<Itemset>> {
    let Some(first) = candidates.first() else {
        return Ok(Vec::new());
    };
    let k = first.cardinality();
    if let Some(bad) = candidates.iter().find(|s| s.cardinality() != k) {
        return Err(Error::usage(format!(
            "mixed cardinalities in prune input: expected {k}, found {} in {bad}",
            bad.cardinality()
        )));
    }
    if k <= 1 {
        return Ok(candidates.to_vec());
    }
    if let Some(bad) = previous.iter().find(|s| s.cardinality() != k - 1) {
        return Err(Error::usage(format!(
            "prune reference level must hold {}-itemsets, found {bad}",
            k - 1
        )));
    }

    let known: HashSet<&Itemset> = previous.iter().collect();
    let kept = candidates
        .iter()
        .filter(|cand| {
            cand.iter_items().all(|item| {
                let subset = cand.without_item(item).expect("item is present");
                known.contains(&subset)
            })
        })
        .copied()
        .collect();
    Ok(kept)
}

/// Runs the full level-wise miner.
///
/// Level 1 takes all `d` single items as candidates; no pre-filtering.
/// The returned levels cover every level whose candidate set was nonempty,
/// including a final level with no frequent itemsets when that is how the
/// run terminated.
pub fn mine(db: &TransactionDatabase, params: &MiningParams) -> AprioriResult {
    let d = db.item_count();
    let mut levels: Vec<LevelSets> = Vec::new();
    let mut trace = MiningTrace::default();

    let mut candidates: Vec<Itemset> = (1..=d as u16)
        .map(|item| Itemset::single(d, item).expect("item within width"))
        .collect();
    let mut size = 1usize;

    while !candidates.is_empty() {
        let scan_started = Instant::now();
        let counts = scan_support(db, &candidates);
        let scan_seconds = scan_started.elapsed().as_secs_f64();
        trace.database_scans += 1;

        let frequents: Vec<(Itemset, u64)> = candidates
            .iter()
            .copied()
            .zip(counts)
            .filter(|&(_, count)| count >= params.min_count())
            .collect();

        trace.levels.push(LevelTrace {
            size,
            candidate_count: candidates.len() as u64,
            frequent_count: frequents.len() as u64,
            scan_seconds,
        });
        trace.total_candidates += candidates.len() as u64;

        let survivors: Vec<Itemset> = frequents.iter().map(|&(s, _)| s).collect();
        levels.push(LevelSets {
            size,
            candidates: std::mem::take(&mut candidates),
            frequents,
        });

        if survivors.is_empty() {
            break;
        }
        let joined = join_level(&survivors).expect("level members share a cardinality");
        candidates = prune_candidates(&joined, &survivors).expect("join output is uniform");
        size += 1;
    }

    AprioriResult { levels, trace }
}

/// One pass over the rows, counting how many contain each candidate.
fn scan_support(db: &TransactionDatabase, candidates: &[Itemset]) -> Vec<u64> {
    let mut counts = vec![0u64; candidates.len()];
    for row in db.rows() {
        for (count, candidate) in counts.iter_mut().zip(candidates) {
            if candidate.is_subset_of(row) {
                *count += 1;
            }
        }
    }
    counts
}

/// Exhaustive miner: enumerates every nonempty itemset of the universe and
/// keeps the frequent ones. Independent of the join/prune path, so it serves
/// as its oracle in tests. Refuses universes beyond
/// [`BRUTE_FORCE_MAX_ITEMS`] items.
pub fn brute_force_mine(
    db: &TransactionDatabase,
    params: &MiningParams,
) -> Result<Vec<(Itemset, u64)>> {
    let d = db.item_count();
    if d > BRUTE_FORCE_MAX_ITEMS {
        return Err(Error::usage(format!(
            "exhaustive enumeration is limited to {BRUTE_FORCE_MAX_ITEMS} items, got {d}"
        )));
    }
    let mut found = Vec::new();
    for mask in 1u32..(1u32 << d) {
        let mut set = Itemset::empty(d)?;
        for bit in 0..d {
            if mask >> bit & 1 == 1 {
                set.set_bit(bit);
            }
        }
        let count = db.rows().iter().filter(|row| set.is_subset_of(row)).count() as u64;
        if count >= params.min_count() {
            found.push((set, count));
        }
    }
    sort_by_size_then_lex(&mut found);
    Ok(found)
}

/// Members of `family` that have no proper superset inside `family`.
pub fn maximal_frequent_sets(family: &[Itemset]) -> Vec<Itemset> {
    let mut maximal: Vec<Itemset> = family
        .iter()
        .filter(|set| {
            !family
                .iter()
                .any(|other| *set != other && set.is_subset_of(other))
        })
        .copied()
        .collect();
    maximal.sort_unstable_by_key(|s| (s.cardinality(), *s));
    maximal.dedup();
    maximal
}

/// Every itemset that is infrequent while all of its proper subsets are
/// frequent. Computed from the candidate structure of a mining run: the
/// pruned candidates that failed the support test are exactly those sets,
/// level by level.
pub fn border_sets(db: &TransactionDatabase, params: &MiningParams) -> Vec<Itemset> {
    let result = mine(db, params);
    let mut border = Vec::new();
    for level in &result.levels {
        let frequent: HashSet<&Itemset> = level.frequents.iter().map(|(s, _)| s).collect();
        border.extend(
            level
                .candidates
                .iter()
                .filter(|c| !frequent.contains(c))
                .copied(),
        );
    }
    border.sort_unstable_by_key(|s| (s.cardinality(), *s));
    border
}

/// Expands an antichain of maximal sets into the full downward-closed
/// family: the union of all nonempty subsets of each member.
pub fn reconstruct_from_maximal(maximal: &[Itemset]) -> Result<Vec<Itemset>> {
    for (i, a) in maximal.iter().enumerate() {
        for b in maximal.iter().skip(i + 1) {
            if a.is_subset_of(b) || b.is_subset_of(a) {
                return Err(Error::usage(format!(
                    "input is not an antichain: {a} and {b} are nested"
                )));
            }
        }
    }

    let mut family = HashSet::new();
    for set in maximal {
        let items = set.items();
        let m = items.len();
        if m > BRUTE_FORCE_MAX_ITEMS {
            return Err(Error::usage(format!(
                "power-set expansion is limited to {BRUTE_FORCE_MAX_ITEMS} items per set, got {m}"
            )));
        }
        for mask in 1u32..(1u32 << m) {
            let chosen: Vec<u16> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| items[b]).collect();
            family.insert(Itemset::from_items(set.width(), &chosen)?);
        }
    }
    let mut out: Vec<Itemset> = family.into_iter().collect();
    out.sort_unstable_by_key(|s| (s.cardinality(), *s));
    Ok(out)
}

/// Orders report output: smaller itemsets first, lexicographic within a size.
pub fn sort_by_size_then_lex(family: &mut [(Itemset, u64)]) {
    family.sort_unstable_by_key(|&(s, _)| (s.cardinality(), s));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::load_binary_matrix;

    const DEMO: &str = include_str!("../../../data/demo_transactions.csv");

    fn demo_db() -> TransactionDatabase {
        load_binary_matrix(DEMO, "demo").unwrap()
    }

    fn set(items: &[u16]) -> Itemset {
        Itemset::from_items(9, items).unwrap()
    }

    fn sets(lists: &[&[u16]]) -> Vec<Itemset> {
        lists.iter().map(|l| set(l)).collect()
    }

    fn demo_level2() -> Vec<Itemset> {
        sets(&[&[2, 3], &[2, 4], &[3, 5], &[3, 7], &[5, 6], &[5, 7], &[6, 7]])
    }

    #[test]
    fn join_of_level_two() {
        let joined = join_level(&demo_level2()).unwrap();
        assert_eq!(joined, sets(&[&[2, 3, 4], &[3, 5, 7], &[5, 6, 7]]));
    }

    #[test]
    fn join_trivia() {
        let joined = join_level(&sets(&[&[2], &[3]])).unwrap();
        assert_eq!(joined, sets(&[&[2, 3]]));
        assert!(join_level(&sets(&[&[5]])).unwrap().is_empty());
        assert!(join_level(&[]).unwrap().is_empty());
    }

    #[test]
    fn join_rejects_mixed_cardinalities() {
        let err = join_level(&sets(&[&[2], &[2, 3]])).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn join_accepts_unsorted_input() {
        let mut shuffled = demo_level2();
        shuffled.reverse();
        assert_eq!(join_level(&shuffled).unwrap(), join_level(&demo_level2()).unwrap());
    }

    #[test]
    fn prune_drops_candidates_with_missing_subsets() {
        let candidates = sets(&[&[2, 3, 4], &[3, 5, 7], &[5, 6, 7]]);
        let kept = prune_candidates(&candidates, &demo_level2()).unwrap();
        // {2,3,4} goes: {3,4} is not frequent.
        assert_eq!(kept, sets(&[&[3, 5, 7], &[5, 6, 7]]));
    }

    #[test]
    fn prune_trivia() {
        assert!(prune_candidates(&[], &demo_level2()).unwrap().is_empty());
        let singles = sets(&[&[1], &[4]]);
        assert_eq!(prune_candidates(&singles, &[]).unwrap(), singles);
    }

    #[test]
    fn demo_mining_matches_known_family() {
        let db = demo_db();
        let params = MiningParams::for_database(0.20, &db).unwrap();
        let result = mine(&db, &params);

        assert_eq!(result.levels.len(), 3);
        let l1: Vec<Itemset> = result.levels[0].frequents.iter().map(|&(s, _)| s).collect();
        assert_eq!(l1, sets(&[&[2], &[3], &[4], &[5], &[6], &[7], &[8]]));
        let l2: Vec<Itemset> = result.levels[1].frequents.iter().map(|&(s, _)| s).collect();
        assert_eq!(l2, demo_level2());
        assert_eq!(result.levels[2].frequents, vec![(set(&[3, 5, 7]), 3)]);
        assert_eq!(result.family().len(), 15);
    }

    #[test]
    fn demo_trace_counts() {
        let db = demo_db();
        let params = MiningParams::for_database(0.20, &db).unwrap();
        let result = mine(&db, &params);
        let t = &result.trace;
        assert_eq!(t.levels[0].candidate_count, 9);
        assert_eq!(t.levels[1].candidate_count, 21); // all pairs of 7 frequent items
        assert_eq!(t.levels[2].candidate_count, 2); // after pruning {2,3,4}
        assert_eq!(t.total_candidates, 32);
        assert_eq!(t.database_scans, 3);
        assert_eq!(t.database_scans, t.levels.len() as u64);
    }

    #[test]
    fn full_support_threshold_yields_nothing() {
        let db = demo_db();
        let params = MiningParams::for_database(1.0, &db).unwrap();
        let result = mine(&db, &params);
        assert!(result.family().is_empty());
        assert_eq!(result.levels.len(), 1);
        assert_eq!(result.trace.database_scans, 1);
    }

    #[test]
    fn single_transaction_database() {
        let db = load_binary_matrix("1,1", "two items").unwrap();
        let params = MiningParams::for_database(1.0, &db).unwrap();
        let result = mine(&db, &params);
        let family = result.family();
        let w = |items: &[u16]| Itemset::from_items(2, items).unwrap();
        assert_eq!(family.len(), 3);
        assert_eq!(family[&w(&[1])], 1);
        assert_eq!(family[&w(&[2])], 1);
        assert_eq!(family[&w(&[1, 2])], 1);
    }

    #[test]
    fn brute_force_agrees_on_demo() {
        let db = demo_db();
        let params = MiningParams::for_database(0.20, &db).unwrap();
        let mut from_levels: Vec<(Itemset, u64)> = mine(&db, &params)
            .family()
            .into_iter()
            .collect();
        sort_by_size_then_lex(&mut from_levels);
        assert_eq!(brute_force_mine(&db, &params).unwrap(), from_levels);
    }

    #[test]
    fn brute_force_refuses_wide_universes() {
        let row = Itemset::single(BRUTE_FORCE_MAX_ITEMS + 1, 1).unwrap();
        let db = TransactionDatabase::new(vec![row], "wide").unwrap();
        let params = MiningParams::for_database(0.5, &db).unwrap();
        assert!(matches!(
            brute_force_mine(&db, &params),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn maximal_sets_of_demo_family() {
        let db = demo_db();
        let params = MiningParams::for_database(0.20, &db).unwrap();
        let family: Vec<Itemset> = mine(&db, &params).family().into_keys().collect();
        let maximal = maximal_frequent_sets(&family);
        assert_eq!(
            maximal,
            sets(&[&[8], &[2, 3], &[2, 4], &[5, 6], &[6, 7], &[3, 5, 7]])
        );
    }

    #[test]
    fn maximal_trivia() {
        let single = sets(&[&[1]]);
        assert_eq!(maximal_frequent_sets(&single), single);
        assert!(maximal_frequent_sets(&[]).is_empty());
    }

    #[test]
    fn border_sets_of_demo() {
        let db = demo_db();
        let params = MiningParams::for_database(0.20, &db).unwrap();
        let border = border_sets(&db, &params);
        assert!(border.contains(&set(&[2, 5])));
        assert!(border.contains(&set(&[5, 6, 7])));
        assert!(border.contains(&set(&[1])));
        assert!(border.contains(&set(&[9])));

        // Oracle: definition applied over the whole lattice.
        let family: HashSet<Itemset> = mine(&db, &params).family().into_keys().collect();
        let mut expected = Vec::new();
        for mask in 1u32..(1 << 9) {
            let mut cand = Itemset::empty(9).unwrap();
            for bit in 0..9 {
                if mask >> bit & 1 == 1 {
                    cand.set_bit(bit);
                }
            }
            let infrequent = !family.contains(&cand);
            let subsets_frequent = cand.iter_items().all(|item| {
                let sub = cand.without_item(item).unwrap();
                sub.is_empty() || family.contains(&sub)
            });
            if infrequent && subsets_frequent {
                expected.push(cand);
            }
        }
        expected.sort_unstable_by_key(|s| (s.cardinality(), *s));
        assert_eq!(border, expected);
        assert_eq!(border.len(), 17);
    }

    #[test]
    fn border_empty_when_everything_is_frequent() {
        let db = load_binary_matrix("1,1\n1,1\n", "all ones").unwrap();
        let params = MiningParams::for_database(0.5, &db).unwrap();
        assert!(border_sets(&db, &params).is_empty());
    }

    #[test]
    fn reconstruct_power_set() {
        let family = reconstruct_from_maximal(&sets(&[&[3, 5, 7]])).unwrap();
        assert_eq!(
            family,
            sets(&[&[3], &[5], &[7], &[3, 5], &[3, 7], &[5, 7], &[3, 5, 7]])
        );
        assert!(reconstruct_from_maximal(&[]).unwrap().is_empty());
    }

    #[test]
    fn reconstruct_demo_family_round_trip() {
        let db = demo_db();
        let params = MiningParams::for_database(0.20, &db).unwrap();
        let mut family: Vec<Itemset> = mine(&db, &params).family().into_keys().collect();
        family.sort_unstable_by_key(|s| (s.cardinality(), *s));
        let maximal = maximal_frequent_sets(&family);
        assert_eq!(reconstruct_from_maximal(&maximal).unwrap(), family);
    }

    #[test]
    fn reconstruct_rejects_nested_input() {
        let err = reconstruct_from_maximal(&sets(&[&[3, 5], &[3, 5, 7]])).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn level_two_candidates_are_all_pairs_when_every_item_survives() {
        // Every item occurs in both rows, so |L1| = d and the level-2
        // candidate count is d(d-1)/2.
        let db = load_binary_matrix("1,1,1,1,1,1\n1,1,1,1,1,1\n", "dense").unwrap();
        let params = MiningParams::for_database(0.5, &db).unwrap();
        let result = mine(&db, &params);
        let d = db.item_count() as u64;
        assert_eq!(result.trace.levels[0].candidate_count, d);
        assert_eq!(result.trace.levels[1].candidate_count, d * (d - 1) / 2);
    }
}
