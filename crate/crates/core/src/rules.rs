//! Association-rule generation from a mined frequent family.

use std::collections::BTreeMap;

use crate::apriori::BRUTE_FORCE_MAX_ITEMS;
use crate::database::TransactionDatabase;
use crate::error::{Error, Result};
use crate::itemset::Itemset;

/// Minimum-confidence threshold for rule generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RuleParams {
    min_confidence: f64,
}

impl RuleParams {
    pub fn new(min_confidence: f64) -> Result<Self> {
        if !min_confidence.is_finite() || min_confidence <= 0.0 || min_confidence > 1.0 {
            return Err(Error::usage(format!(
                "minimum confidence must be in (0, 1], got {min_confidence}"
            )));
        }
        Ok(RuleParams { min_confidence })
    }

    pub fn min_confidence(&self) -> f64 {
        self.min_confidence
    }
}

/// A rule `antecedent => consequent` with its exact counts.
///
/// The two sides are nonempty and disjoint; support is the support of their
/// union, confidence divides that by the antecedent's support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AssociationRule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub union_count: u64,
    pub antecedent_count: u64,
    pub transaction_count: u64,
}

impl AssociationRule {
    pub fn support_count(&self) -> u64 {
        self.union_count
    }

    pub fn support(&self) -> f64 {
        self.union_count as f64 / self.transaction_count as f64
    }

    pub fn confidence(&self) -> f64 {
        self.union_count as f64 / self.antecedent_count as f64
    }
}

/// Confidence of `antecedent => consequent`, or the distinguished
/// no-support outcome when the antecedent never occurs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConfidenceOutcome {
    Ratio {
        union_count: u64,
        antecedent_count: u64,
    },
    /// The antecedent has zero support, so the ratio is undefined.
    NoSupport,
}

impl ConfidenceOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            ConfidenceOutcome::Ratio {
                union_count,
                antecedent_count,
            } => Some(*union_count as f64 / *antecedent_count as f64),
            ConfidenceOutcome::NoSupport => None,
        }
    }
}

/// Computes rule confidence directly against the database.
///
/// The antecedent must be nonempty and disjoint from the consequent.
pub fn confidence(
    db: &TransactionDatabase,
    antecedent: &Itemset,
    consequent: &Itemset,
) -> Result<ConfidenceOutcome> {
    if antecedent.is_empty() {
        return Err(Error::usage("rule antecedent must be nonempty"));
    }
    if antecedent.width() != consequent.width() {
        return Err(Error::usage(format!(
            "antecedent width {} does not match consequent width {}",
            antecedent.width(),
            consequent.width()
        )));
    }
    if !antecedent.is_disjoint_from(consequent) {
        return Err(Error::usage(
            "rule antecedent and consequent must be disjoint",
        ));
    }
    let antecedent_count = db.support_count(antecedent)?;
    if antecedent_count == 0 {
        return Ok(ConfidenceOutcome::NoSupport);
    }
    let union_count = db.support_count(&antecedent.union(consequent))?;
    Ok(ConfidenceOutcome::Ratio {
        union_count,
        antecedent_count,
    })
}

/// Emits every rule `X => Z \ X` over the frequent family that reaches the
/// confidence threshold. `family` must be downward-closed with counts (as
/// produced by mining); all supports are read from it without touching the
/// database. Consequents of any size are allowed.
///
/// Output order: support descending, then confidence descending, then
/// lexicographic antecedent and consequent.
pub fn generate_rules(
    family: &BTreeMap<Itemset, u64>,
    transaction_count: u64,
    params: &RuleParams,
) -> Result<Vec<AssociationRule>> {
    let mut rules = Vec::new();
    for (&whole, &union_count) in family {
        let items = whole.items();
        let m = items.len();
        if m < 2 {
            continue;
        }
        if m > BRUTE_FORCE_MAX_ITEMS {
            return Err(Error::usage(format!(
                "rule expansion is limited to {BRUTE_FORCE_MAX_ITEMS} items per itemset, got {m}"
            )));
        }
        // Every nonempty proper subset of `whole` as the antecedent.
        for mask in 1u32..((1u32 << m) - 1) {
            let chosen: Vec<u16> = (0..m)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| items[b])
                .collect();
            let antecedent = Itemset::from_items(whole.width(), &chosen)?;
            let antecedent_count = *family.get(&antecedent).ok_or_else(|| {
                Error::Integrity(format!(
                    "family is not downward-closed: missing count for {antecedent} \u{2286} {whole}"
                ))
            })?;
            let rule = AssociationRule {
                antecedent,
                consequent: whole.difference(&antecedent),
                union_count,
                antecedent_count,
                transaction_count,
            };
            if rule.confidence() >= params.min_confidence() {
                rules.push(rule);
            }
        }
    }

    rules.sort_unstable_by(|a, b| {
        b.union_count
            .cmp(&a.union_count)
            .then_with(|| {
                b.confidence()
                    .partial_cmp(&a.confidence())
                    .expect("confidence is never NaN")
            })
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    Ok(rules)
}
