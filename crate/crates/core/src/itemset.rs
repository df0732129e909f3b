//! Level-wise Apriori mining, maximal itemsets and strong rules.
//!
//! Items are plain strings ordered byte-wise. Internally every distinct
//! item is interned to a `u32` whose order matches the string order, so
//! the join condition `l1[k-1] < l2[k-1]` can be checked on ids.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::combin::{binomial, for_each_combination};
use crate::num::ceil_count;
use crate::{Error, Result};

pub type Item = String;

/// A transaction: an identifier and its sorted, distinct items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub tid: String,
    items: Vec<Item>,
}

impl Transaction {
    pub fn new<I, S>(tid: impl Into<String>, items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Item>,
    {
        let mut items: Vec<Item> = items.into_iter().map(Into::into).collect();
        items.sort();
        items.dedup();
        Transaction {
            tid: tid.into(),
            items,
        }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }
}

/// A set of items with its support count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itemset {
    pub items: Vec<Item>,
    pub count: usize,
}

impl Itemset {
    pub fn new<I, S>(items: I, count: usize) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Item>,
    {
        let mut items: Vec<Item> = items.into_iter().map(Into::into).collect();
        items.sort();
        items.dedup();
        Itemset { items, count }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl AsRef<[Item]> for Itemset {
    fn as_ref(&self) -> &[Item] {
        &self.items
    }
}

/// Minimum support, either relative to the number of transactions or as
/// an absolute count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinSupport {
    Fraction(f64),
    Count(usize),
}

impl MinSupport {
    /// The support count a set needs among `total` transactions.
    /// Fractions are rounded up.
    pub fn resolve(self, total: usize) -> Result<usize> {
        match self {
            MinSupport::Fraction(f) if f > 0.0 && f <= 1.0 => {
                Ok(ceil_count(f * total as f64).max(1))
            }
            MinSupport::Fraction(f) => Err(Error::InvalidMinSupport(f)),
            MinSupport::Count(0) => Err(Error::InvalidMinSupport(0.0)),
            MinSupport::Count(c) => Ok(c),
        }
    }
}

/// The frequent-itemset lattice L1, L2, ... Levels stop before the first
/// empty one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemsetLevels {
    levels: Vec<Vec<Itemset>>,
    total_transactions: usize,
    min_support_count: usize,
}

impl ItemsetLevels {
    /// Frequent k-itemsets, sorted by items. Empty for `k == 0` or beyond the
    /// last level.
    pub fn level(&self, k: usize) -> &[Itemset] {
        if k == 0 {
            return &[];
        }
        self.levels.get(k - 1).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of non-empty levels.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<Itemset>] {
        &self.levels
    }

    pub fn total_transactions(&self) -> usize {
        self.total_transactions
    }

    pub fn min_support_count(&self) -> usize {
        self.min_support_count
    }

    /// All frequent itemsets ordered by (size, items).
    pub fn iter(&self) -> impl Iterator<Item = &Itemset> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Support count of a frequent itemset, `None` if it is not frequent.
    pub fn count_of(&self, items: &[Item]) -> Option<usize> {
        let level = self.level(items.len());
        level
            .binary_search_by(|s| s.items.as_slice().cmp(items))
            .ok()
            .map(|i| level[i].count)
    }
}

/// A rule `antecedent => consequent` over a frequent itemset.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationRule {
    pub antecedent: Vec<Item>,
    pub consequent: Vec<Item>,
    /// Support count of `antecedent ∪ consequent`.
    pub count: usize,
    pub support: f64,
    pub confidence: f64,
}

fn is_sorted_subset<T: Ord>(small: &[T], big: &[T]) -> bool {
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                core::cmp::Ordering::Less => continue,
                core::cmp::Ordering::Equal => continue 'outer,
                core::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Number of transactions containing every item of `items` (sorted, distinct).
pub fn support_count(items: &[Item], transactions: &[Transaction]) -> usize {
    transactions
        .iter()
        .filter(|t| is_sorted_subset(items, &t.items))
        .count()
}

/// True iff some (k-1)-subset of `candidate` is missing from `prev_level`.
pub fn has_infrequent_subset<S: AsRef<[Item]>>(candidate: &[Item], prev_level: &[S]) -> bool {
    let lookup: BTreeSet<&[Item]> = prev_level.iter().map(AsRef::as_ref).collect();
    has_infrequent_subset_in(candidate, &lookup)
}

fn has_infrequent_subset_in<T: Ord + Clone>(candidate: &[T], lookup: &BTreeSet<&[T]>) -> bool {
    let mut sub: Vec<T> = Vec::with_capacity(candidate.len().saturating_sub(1));
    (0..candidate.len()).any(|skip| {
        sub.clear();
        sub.extend(
            candidate
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, x)| x.clone()),
        );
        !lookup.contains(sub.as_slice())
    })
}

/// Join and prune: builds the k-candidates from the frequent (k-1)-itemsets.
///
/// Two sets join when they agree on their first k-2 items and the last item
/// of the first is smaller than the last item of the second. A joined
/// candidate survives only if all of its (k-1)-subsets are in `prev_level`.
/// Output is sorted.
pub fn generate_candidates<S: AsRef<[Item]>>(prev_level: &[S]) -> Vec<Vec<Item>> {
    let mut prev: Vec<&[Item]> = prev_level.iter().map(AsRef::as_ref).collect();
    prev.sort();
    prev.dedup();
    let lookup: BTreeSet<&[Item]> = prev.iter().copied().collect();
    let mut out = Vec::new();
    join_sorted(&prev, |c| {
        if !has_infrequent_subset_in(&c, &lookup) {
            out.push(c);
        }
    });
    out
}

/// Joins a sorted, deduplicated level. Sets sharing a (k-2)-prefix are
/// contiguous, so only pairs inside a run need checking.
fn join_sorted<T: Ord + Clone>(prev: &[&[T]], mut emit: impl FnMut(Vec<T>)) {
    let Some(first) = prev.first() else { return };
    let k1 = first.len();
    if k1 == 0 {
        return;
    }
    let mut start = 0;
    while start < prev.len() {
        let prefix = &prev[start][..k1 - 1];
        let mut end = start + 1;
        while end < prev.len() && &prev[end][..k1 - 1] == prefix {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                let (l1, l2) = (prev[i], prev[j]);
                if l1[k1 - 1] < l2[k1 - 1] {
                    let mut c = Vec::with_capacity(k1 + 1);
                    c.extend_from_slice(l1);
                    c.push(l2[k1 - 1].clone());
                    emit(c);
                }
            }
        }
        start = end;
    }
}

/// Apriori. Runs the join/prune/count loop until a level comes out empty.
pub fn find_frequent_itemsets(
    transactions: &[Transaction],
    min_support: MinSupport,
) -> Result<ItemsetLevels> {
    if transactions.is_empty() {
        return Err(Error::EmptyTransactions);
    }
    let total = transactions.len();
    let min_count = min_support.resolve(total)?;

    // intern items; ids follow string order
    let vocab: Vec<&Item> = {
        let set: BTreeSet<&Item> = transactions.iter().flat_map(|t| t.items.iter()).collect();
        set.into_iter().collect()
    };
    let id_of: BTreeMap<&Item, u32> = vocab
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i as u32))
        .collect();
    let encoded: Vec<Vec<u32>> = transactions
        .iter()
        .map(|t| {
            // items are sorted and distinct, so ids come out sorted
            t.items.iter().map(|s| id_of[s]).collect()
        })
        .collect();

    let mut singles = alloc::vec![0usize; vocab.len()];
    for t in &encoded {
        for &id in t {
            singles[id as usize] += 1;
        }
    }
    let mut current: Vec<(Vec<u32>, usize)> = singles
        .iter()
        .enumerate()
        .filter(|(_, c)| **c >= min_count)
        .map(|(id, c)| (alloc::vec![id as u32], *c))
        .collect();

    let mut levels: Vec<Vec<(Vec<u32>, usize)>> = Vec::new();
    while !current.is_empty() {
        let k = current[0].0.len() + 1;
        let prev: Vec<&[u32]> = current.iter().map(|(s, _)| s.as_slice()).collect();
        let lookup: BTreeSet<&[u32]> = prev.iter().copied().collect();
        let mut candidates: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        join_sorted(&prev, |c| {
            if !has_infrequent_subset_in(&c, &lookup) {
                candidates.insert(c, 0);
            }
        });
        count_candidates(&mut candidates, &encoded, k);
        let next: Vec<(Vec<u32>, usize)> = candidates
            .into_iter()
            .filter(|(_, c)| *c >= min_count)
            .collect();
        levels.push(core::mem::replace(&mut current, next));
    }

    let levels = levels
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .map(|(ids, count)| Itemset {
                    items: ids.iter().map(|&i| vocab[i as usize].clone()).collect(),
                    count,
                })
                .collect()
        })
        .collect();
    Ok(ItemsetLevels {
        levels,
        total_transactions: total,
        min_support_count: min_count,
    })
}

/// Adds the support of every candidate. A transaction's k-subsets are
/// enumerated when there are fewer of them than candidates; otherwise each
/// candidate is tested for containment. Both paths give the same counts.
fn count_candidates(
    candidates: &mut BTreeMap<Vec<u32>, usize>,
    transactions: &[Vec<u32>],
    k: usize,
) {
    if candidates.is_empty() {
        return;
    }
    let mut buf: Vec<u32> = Vec::with_capacity(k);
    for t in transactions {
        if t.len() < k {
            continue;
        }
        if binomial(t.len(), k) <= candidates.len() {
            for_each_combination(t.len(), k, |idx| {
                buf.clear();
                buf.extend(idx.iter().map(|&i| t[i]));
                if let Some(c) = candidates.get_mut(buf.as_slice()) {
                    *c += 1;
                }
            });
        } else {
            for (cand, c) in candidates.iter_mut() {
                if is_sorted_subset(cand, t) {
                    *c += 1;
                }
            }
        }
    }
}

/// Frequent itemsets with no frequent proper superset, ordered by (size, items).
pub fn maximal_itemsets(levels: &ItemsetLevels) -> Vec<Itemset> {
    // A frequent superset of any size implies a frequent superset one
    // item larger, so checking the next level is enough.
    let mut out = Vec::new();
    for k in 1..=levels.depth() {
        let above = levels.level(k + 1);
        for set in levels.level(k) {
            if !above
                .iter()
                .any(|sup| is_sorted_subset(&set.items, &sup.items))
            {
                out.push(set.clone());
            }
        }
    }
    out
}

/// Strong rules `A => F - A` for every frequent `F` with at least two
/// items and every non-empty proper subset `A` whose confidence
/// `count(F) / count(A)` reaches `min_confidence`.
pub fn generate_rules(levels: &ItemsetLevels, min_confidence: f64) -> Result<Vec<AssociationRule>> {
    if !(min_confidence > 0.0 && min_confidence <= 1.0) {
        return Err(Error::InvalidFraction {
            name: "min_confidence",
            range: "(0, 1]",
            value: min_confidence,
        });
    }
    let total = levels.total_transactions() as f64;
    let mut rules = Vec::new();
    for k in 2..=levels.depth() {
        for set in levels.level(k) {
            for a_len in 1..k {
                for_each_combination(k, a_len, |idx| {
                    let antecedent: Vec<Item> = idx.iter().map(|&i| set.items[i].clone()).collect();
                    let consequent: Vec<Item> = set
                        .items
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !idx.contains(i))
                        .map(|(_, s)| s.clone())
                        .collect();
                    // every subset of a frequent set is frequent
                    let a_count = levels.count_of(&antecedent).unwrap_or(set.count);
                    let confidence = set.count as f64 / a_count as f64;
                    if confidence >= min_confidence {
                        rules.push(AssociationRule {
                            antecedent,
                            consequent,
                            count: set.count,
                            support: set.count as f64 / total,
                            confidence,
                        });
                    }
                });
            }
        }
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn baskets() -> Vec<Transaction> {
        [
            ("T100", "I1 I2 I5"),
            ("T200", "I2 I4"),
            ("T300", "I2 I3"),
            ("T400", "I1 I2 I4"),
            ("T500", "I1 I3"),
            ("T600", "I2 I3"),
            ("T700", "I1 I3"),
            ("T800", "I1 I2 I3 I5"),
            ("T900", "I1 I2 I3"),
        ]
        .iter()
        .map(|(tid, items)| Transaction::new(*tid, items.split(' ')))
        .collect()
    }

    fn set(s: &str) -> Vec<Item> {
        s.split(' ')
            .filter(|x| !x.is_empty())
            .map(ToString::to_string)
            .collect()
    }

    fn sets(spec: &[(&str, usize)]) -> Vec<Itemset> {
        spec.iter().map(|(s, c)| Itemset::new(set(s), *c)).collect()
    }

    #[test]
    fn support_counts() {
        let db = baskets();
        assert_eq!(support_count(&set("I1 I2"), &db), 4);
        assert_eq!(support_count(&[], &db), 9);
        assert_eq!(support_count(&set("I3 I4"), &db), 0);
        assert_eq!(support_count(&set("I1 I2 I3 I5"), &db), 1);
    }

    #[test]
    fn worked_trace() {
        let levels = find_frequent_itemsets(&baskets(), MinSupport::Fraction(2.0 / 9.0)).unwrap();
        assert_eq!(levels.min_support_count(), 2);
        assert_eq!(
            levels.level(1),
            sets(&[("I1", 6), ("I2", 7), ("I3", 6), ("I4", 2), ("I5", 2)])
        );
        assert_eq!(
            levels.level(2),
            sets(&[
                ("I1 I2", 4),
                ("I1 I3", 4),
                ("I1 I5", 2),
                ("I2 I3", 4),
                ("I2 I4", 2),
                ("I2 I5", 2)
            ])
        );
        assert_eq!(levels.level(3), sets(&[("I1 I2 I3", 2), ("I1 I2 I5", 2)]));
        assert!(levels.level(4).is_empty());
        assert_eq!(levels.depth(), 3);
        assert_eq!(levels.len(), 13);
        assert_eq!(levels.count_of(&set("I2 I4")), Some(2));
        assert_eq!(levels.count_of(&set("I3 I4")), None);
    }

    #[test]
    fn candidate_generation() {
        let levels = find_frequent_itemsets(&baskets(), MinSupport::Count(2)).unwrap();
        assert_eq!(
            generate_candidates(levels.level(2)),
            vec![set("I1 I2 I3"), set("I1 I2 I5")]
        );
        assert!(generate_candidates(levels.level(3)).is_empty());
        let l1 = vec![set("a"), set("b"), set("c")];
        assert_eq!(
            generate_candidates(&l1),
            vec![set("a b"), set("a c"), set("b c")]
        );
        assert!(generate_candidates::<Vec<Item>>(&[]).is_empty());
    }

    #[test]
    fn infrequent_subsets() {
        let levels = find_frequent_itemsets(&baskets(), MinSupport::Count(2)).unwrap();
        assert!(has_infrequent_subset(&set("I1 I2 I3 I5"), levels.level(3)));
        assert!(!has_infrequent_subset(&set("I1 I2 I3"), levels.level(2)));
        assert!(!has_infrequent_subset(&set("I1 I4"), levels.level(1)));
        assert!(has_infrequent_subset(&set("I1 I2 I4"), levels.level(2)));
    }

    #[test]
    fn single_transaction_full_support() {
        let db = vec![Transaction::new("t", ["b", "a"])];
        let levels = find_frequent_itemsets(&db, MinSupport::Fraction(1.0)).unwrap();
        assert_eq!(levels.level(1), sets(&[("a", 1), ("b", 1)]));
        assert_eq!(levels.level(2), sets(&[("a b", 1)]));
        assert_eq!(levels.depth(), 2);
    }

    #[test]
    fn mining_errors() {
        assert_eq!(
            find_frequent_itemsets(&[], MinSupport::Fraction(0.5)),
            Err(Error::EmptyTransactions)
        );
        let db = baskets();
        assert!(matches!(
            find_frequent_itemsets(&db, MinSupport::Fraction(0.0)),
            Err(Error::InvalidMinSupport(_))
        ));
        assert!(matches!(
            find_frequent_itemsets(&db, MinSupport::Fraction(1.5)),
            Err(Error::InvalidMinSupport(_))
        ));
        assert!(matches!(
            find_frequent_itemsets(&db, MinSupport::Count(0)),
            Err(Error::InvalidMinSupport(_))
        ));
    }

    #[test]
    fn empty_transactions_support_nothing() {
        let db = vec![
            Transaction::new("a", Vec::<String>::new()),
            Transaction::new("b", ["x"]),
        ];
        let levels = find_frequent_itemsets(&db, MinSupport::Count(1)).unwrap();
        assert_eq!(levels.level(1), sets(&[("x", 1)]));
        let levels = find_frequent_itemsets(&db, MinSupport::Fraction(1.0)).unwrap();
        assert!(levels.is_empty());
    }

    #[test]
    fn full_support_on_worked_data_is_empty() {
        let levels = find_frequent_itemsets(&baskets(), MinSupport::Fraction(1.0)).unwrap();
        assert!(levels.is_empty());
    }

    #[test]
    fn maximal_sets() {
        let levels = find_frequent_itemsets(&baskets(), MinSupport::Count(2)).unwrap();
        assert_eq!(
            maximal_itemsets(&levels),
            sets(&[("I2 I4", 2), ("I1 I2 I3", 2), ("I1 I2 I5", 2)])
        );

        let db = vec![
            Transaction::new("1", ["a"]),
            Transaction::new("2", ["a"]),
            Transaction::new("3", ["a"]),
        ];
        let levels = find_frequent_itemsets(&db, MinSupport::Count(1)).unwrap();
        assert_eq!(maximal_itemsets(&levels), sets(&[("a", 3)]));

        let db = vec![
            Transaction::new("1", ["a", "b"]),
            Transaction::new("2", ["c", "d"]),
        ];
        let levels = find_frequent_itemsets(&db, MinSupport::Count(1)).unwrap();
        assert_eq!(maximal_itemsets(&levels), levels.level(2).to_vec());
    }

    #[test]
    fn rules_respect_confidence() {
        let levels = find_frequent_itemsets(&baskets(), MinSupport::Count(2)).unwrap();
        let find = |rules: &[AssociationRule], a: &str, c: &str| {
            rules
                .iter()
                .find(|r| r.antecedent == set(a) && r.consequent == set(c))
                .cloned()
        };
        let loose = generate_rules(&levels, 0.5).unwrap();
        let r = find(&loose, "I1 I2", "I5").expect("emitted at 0.5");
        assert_eq!(r.confidence, 0.5);
        assert_eq!(r.support, 2.0 / 9.0);
        let strict = generate_rules(&levels, 0.75).unwrap();
        assert!(find(&strict, "I1 I2", "I5").is_none());
        // {I5} => {I1, I2}: 2/2
        assert_eq!(find(&strict, "I5", "I1 I2").unwrap().confidence, 1.0);
        for r in &loose {
            let union: Vec<Item> =
                Itemset::new(r.antecedent.iter().chain(&r.consequent).cloned(), 0).items;
            let expect = support_count(&union, &baskets()) as f64
                / support_count(&r.antecedent, &baskets()) as f64;
            assert!((r.confidence - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn rules_need_pairs() {
        let db = vec![Transaction::new("1", ["a"]), Transaction::new("2", ["b"])];
        let levels = find_frequent_itemsets(&db, MinSupport::Count(1)).unwrap();
        assert!(generate_rules(&levels, 0.1).unwrap().is_empty());
        assert!(generate_rules(&levels, 0.0).is_err());
    }
}
