//! Exhaustive parameter search.
//!
//! Every construction assigns each word of the space to exactly one
//! parameter class (its syndrome vector), so the classes partition the
//! space and the largest class beats the pigeonhole average. The search
//! buckets all `q^n` words by syndrome vector and reports the largest
//! bucket, breaking ties toward the lexicographically smallest vector.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::codes::{BurstCode, Family};
use crate::error::{CodeError, Result};
use crate::verify::unpack;
use crate::word::Word;

/// Result of [`param_search`]: the winning instance and how the space
/// split into classes.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// The code of the largest parameter class.
    pub code: BurstCode,
    /// Number of codewords in that class.
    pub size: u64,
    /// Number of classes that contain at least one word.
    pub nonempty_classes: u64,
}

/// Finds the largest parameter class of `family` at dimensions
/// `(n, q, t, s, P)` by enumerating all `q^n` words. `cap` bounds the
/// space size that will be enumerated.
pub fn param_search(
    family: Family,
    n: usize,
    q: u64,
    t: usize,
    s: usize,
    p: Option<usize>,
    cap: u128,
) -> Result<SearchOutcome> {
    if n == 0 || q < 2 {
        return Err(CodeError::InvalidParams("search needs n >= 1 and q >= 2".into()));
    }
    let total = (q as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| CodeError::InvalidParams("word space overflows u128".into()))?;
    if total > cap {
        return Err(CodeError::EnumerationCapExceeded { needed: total, cap });
    }
    let total = u64::try_from(total)
        .map_err(|_| CodeError::EnumerationCapExceeded { needed: total, cap: u64::MAX as u128 })?;

    // bucket key -> (class size, packed form of the smallest member)
    let buckets: BTreeMap<Vec<u64>, (u64, u64)> = (0..total)
        .into_par_iter()
        .try_fold(BTreeMap::new, |mut map: BTreeMap<Vec<u64>, (u64, u64)>, packed| {
            let x = Word::new(q, unpack(packed, q, n))?;
            let code = BurstCode::for_word(family, &x, t, s, p)?;
            let entry = map.entry(code.residue_vec()).or_insert((0, packed));
            entry.0 += 1;
            entry.1 = entry.1.min(packed);
            Ok::<_, CodeError>(map)
        })
        .try_reduce(BTreeMap::new, |mut left, right| {
            for (key, (count, rep)) in right {
                let entry = left.entry(key).or_insert((0, rep));
                entry.0 += count;
                entry.1 = entry.1.min(rep);
            }
            Ok(left)
        })?;

    let mut best: Option<(&[u64], u64, u64)> = None;
    for (key, &(count, rep)) in &buckets {
        // ascending key order makes the first strict maximum the
        // lexicographically smallest tie-winner
        if best.is_none_or(|(_, best_count, _)| count > best_count) {
            best = Some((key, count, rep));
        }
    }
    let (key, size, rep) =
        best.ok_or_else(|| CodeError::InvalidParams("empty word space".into()))?;
    let code = BurstCode::for_word(family, &Word::new(q, unpack(rep, q, n))?, t, s, p)?;
    debug_assert_eq!(code.residue_vec(), key);
    debug_assert!(
        u128::from(size).saturating_mul(code.space_size()) >= u128::from(total),
        "largest class fell below the pigeonhole average"
    );
    Ok(SearchOutcome { code, size, nonempty_classes: buckets.len() as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{enumerate_words, DEFAULT_ENUMERATION_CAP};

    fn search(
        family: Family,
        n: usize,
        q: u64,
        t: usize,
        s: usize,
        p: Option<usize>,
    ) -> SearchOutcome {
        param_search(family, n, q, t, s, p, DEFAULT_ENUMERATION_CAP).unwrap()
    }

    #[test]
    fn best_class_beats_the_pigeonhole_average() {
        let cases = [
            (Family::C22, 6, 2, 2, 2, None),
            (Family::Ctt, 6, 2, 3, 3, None),
            (Family::BinTT1, 8, 2, 2, 1, Some(8)),
            (Family::QaryTT1, 5, 3, 2, 1, None),
            (Family::Cts, 6, 2, 3, 1, None),
        ];
        for (family, n, q, t, s, p) in cases {
            let outcome = search(family, n, q, t, s, p);
            let total = (q as u128).pow(n as u32);
            assert!(
                u128::from(outcome.size) * outcome.code.space_size() >= total,
                "{family}: {} * {} < {total}",
                outcome.size,
                outcome.code.space_size()
            );
            assert!(outcome.nonempty_classes >= 1);
        }
    }

    #[test]
    fn reported_size_matches_the_membership_count() {
        for (family, n, q, t, s, p) in [
            (Family::C22, 6, 2, 2, 2, None),
            (Family::BinTT1, 7, 2, 2, 1, Some(4)),
            (Family::Cts, 6, 2, 2, 0, None),
        ] {
            let outcome = search(family, n, q, t, s, p);
            let counted =
                enumerate_words(q, n).filter(|x| outcome.code.is_member(x).unwrap()).count() as u64;
            assert_eq!(outcome.size, counted, "{family}");
        }
    }

    #[test]
    fn classes_partition_the_word_space() {
        // every word lies in the class built from its own residues, and
        // class sizes over distinct residue vectors add up to q^n
        for (family, n, q, t, s, p) in [
            (Family::C22, 4, 3, 2, 2, None),
            (Family::Ctt, 6, 2, 3, 3, None),
            (Family::BinTT1, 6, 2, 2, 1, Some(4)),
            (Family::QaryTT1, 5, 3, 2, 1, None),
            (Family::Cts, 6, 2, 3, 1, None),
        ] {
            let mut sizes: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
            for x in enumerate_words(q, n) {
                let code = BurstCode::for_word(family, &x, t, s, p).unwrap();
                assert!(code.is_member(&x).unwrap(), "{family}: {x} not in its own class");
                *sizes.entry(code.residue_vec()).or_insert(0) += 1;
            }
            assert_eq!(sizes.values().sum::<u64>(), q.pow(n as u32));
            // spot-check three classes: the counted size equals the
            // number of members, so distinct classes cannot overlap
            for (key, expected) in sizes.iter().take(3) {
                let members = enumerate_words(q, n)
                    .filter(|x| {
                        let code = BurstCode::for_word(family, x, t, s, p).unwrap();
                        code.residue_vec() == *key
                    })
                    .count() as u64;
                assert_eq!(members, *expected);
            }
        }
    }

    #[test]
    fn search_is_deterministic() {
        let a = search(Family::C22, 6, 2, 2, 2, None);
        let b = search(Family::C22, 6, 2, 2, 2, None);
        assert_eq!(a.code, b.code);
        assert_eq!(a.size, b.size);
        assert_eq!(a.nonempty_classes, b.nonempty_classes);
    }

    #[test]
    fn cap_is_enforced() {
        let err = param_search(Family::C22, 30, 3, 2, 2, None, DEFAULT_ENUMERATION_CAP);
        assert!(matches!(err, Err(CodeError::EnumerationCapExceeded { .. })));
    }

    #[test]
    fn degenerate_dimensions_still_terminate() {
        // n = t: the whole word is one block
        let outcome = search(Family::Ctt, 3, 2, 3, 3, None);
        assert!(outcome.size >= 1);
        let outcome = search(Family::Cts, 2, 2, 2, 0, None);
        assert!(outcome.size >= 1);
    }
}
