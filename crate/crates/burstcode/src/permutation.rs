//! Permutations, projection, lexicographic ranking, overlapping ranking
//! sequences, and the burst-stable-deletion (BSD) correcting permutation
//! codes built on them.
//!
//! A stable deletion removes coordinates from a permutation without
//! renumbering the surviving values. The length-`(t+1)` windows of a
//! permutation project to patterns in `S_{t+1}`, and the sequence of
//! their lexicographic ranks (the *t-overlapping ranking sequence*) turns
//! a burst of `t` stable deletions into a `(2t, t)`-burst over the
//! alphabet `(t+1)!` — so a [`CtsCode`] over that alphabet does the heavy
//! lifting, and the permutation is rebuilt from the surviving values.

use std::collections::HashMap;
use std::fmt;

use crate::channel::is_burst_outcome;
use crate::codes::cts::CtsCode;
use crate::error::{CodeError, Result};
use crate::verify::Check;
use crate::word::Word;

/// An arrangement of the values `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u64>,
}

impl Permutation {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n as u64 {
                return Err(CodeError::NotAPermutation(format!("value {v} outside [1, {n}]")));
            }
            if seen[(v - 1) as usize] {
                return Err(CodeError::NotAPermutation(format!("value {v} repeats")));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n as u64).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Parses comma-separated 1-based values, e.g. `"3,1,2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(|part| {
                part.trim().parse::<u64>().map_err(|e| CodeError::ParseError {
                    input: text.into(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        Permutation::new(values)
    }

    /// 1-based rank in the lexicographic order of `S_n`; the identity has
    /// rank 1 and the reversal has rank `n!`.
    pub fn lex_rank(&self) -> u64 {
        let n = self.values.len();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller_right =
                self.values[i + 1..].iter().filter(|&&v| v < self.values[i]).count() as u64;
            rank += smaller_right * factorial((n - 1 - i) as u64);
        }
        rank + 1
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(rank: u64, n: usize) -> Result<Self> {
        let total = checked_factorial(n as u64)?;
        if rank == 0 || rank > total {
            return Err(CodeError::InvalidParams(format!(
                "rank {rank} outside [1, {n}!] = [1, {total}]"
            )));
        }
        let mut remainder = rank - 1;
        let mut pool: Vec<u64> = (1..=n as u64).collect();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let block = factorial((n - 1 - i) as u64);
            let idx = (remainder / block) as usize;
            remainder %= block;
            values.push(pool.remove(idx));
        }
        Ok(Permutation { values })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn factorial(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

pub fn checked_factorial(n: u64) -> Result<u64> {
    if n > 20 {
        return Err(CodeError::InvalidParams(format!("{n}! overflows 64 bits")));
    }
    Ok(factorial(n))
}

/// The permutation projection: replaces each entry by its rank within the
/// sequence, breaking ties by index, so any integer sequence maps to a
/// permutation of `1..=len` and permutations map to themselves.
pub fn projection(seq: &[u64]) -> Permutation {
    let values = seq
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let below = seq.iter().filter(|&&v| v < u).count() as u64;
            let ties = seq[..=i].iter().filter(|&&v| v == u).count() as u64;
            below + ties
        })
        .collect();
    Permutation { values }
}

/// The t-overlapping ranking sequence: for each of the `len - t` windows
/// of length `t+1`, the lexicographic rank of its projection, encoded
/// 0-based as a [`Word`] over the alphabet `(t+1)!`.
pub fn overlapping_ranks(seq: &[u64], t: usize) -> Result<Word> {
    if t == 0 || seq.len() <= t {
        return Err(CodeError::InvalidParams(format!(
            "ranking sequence needs 1 <= t < len, got t={t} len={}",
            seq.len()
        )));
    }
    let alphabet = checked_factorial(t as u64 + 1)?;
    let ranks = seq.windows(t + 1).map(|window| projection(window).lex_rank() - 1).collect();
    Word::new(alphabet, ranks)
}

/// Removes coordinates `i..i+t-1` from the permutation, keeping the
/// surviving values as they are.
pub fn apply_stable_burst_deletion(sigma: &Permutation, i: usize, t: usize) -> Result<Vec<u64>> {
    let n = sigma.len();
    if t > n {
        return Err(CodeError::InvalidParams(format!(
            "cannot delete {t} coordinates from a permutation of length {n}"
        )));
    }
    if i == 0 || i + t - 1 > n {
        return Err(CodeError::PositionOutOfRange { pos: i, lo: 1, hi: n - t + 1 });
    }
    let mut values = sigma.values.clone();
    values.drain(i - 1..i + t - 1);
    Ok(values)
}

/// All permutations of `values` in lexicographic order. `values` must be
/// sorted ascending; intended for the tiny blocks of missing values
/// during reconstruction.
fn orderings(values: &[u64]) -> Vec<Vec<u64>> {
    if values.len() <= 1 {
        return vec![values.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let mut rest = values.to_vec();
        rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

/// Shared reconstruction step: given the surviving values `z` and the
/// recovered ranking sequence of the original permutation, reinsert the
/// missing values at every position in every order and keep the
/// candidates whose ranking sequence matches. Exactly one distinct
/// candidate may survive.
fn reconstruct(n: usize, t: usize, z: &[u64], ranks: &Word) -> Result<Permutation> {
    let missing = missing_values(n, z)?;
    let mut survivors: Vec<Vec<u64>> = Vec::new();
    for pos in 1..=z.len() + 1 {
        for order in orderings(&missing) {
            let mut candidate = Vec::with_capacity(n);
            candidate.extend_from_slice(&z[..pos - 1]);
            candidate.extend_from_slice(&order);
            candidate.extend_from_slice(&z[pos - 1..]);
            if overlapping_ranks(&candidate, t)? == *ranks && !survivors.contains(&candidate) {
                survivors.push(candidate);
            }
        }
    }
    match survivors.len() {
        0 => Err(CodeError::DecodeFailure(
            "no reinsertion reproduces the recovered ranking sequence".into(),
        )),
        1 => Permutation::new(survivors.pop().expect("one survivor")),
        k => Err(CodeError::AmbiguousDecode(format!(
            "{k} distinct permutations reproduce the recovered ranking sequence"
        ))),
    }
}

fn missing_values(n: usize, z: &[u64]) -> Result<Vec<u64>> {
    let mut present = vec![false; n];
    for &v in z {
        if v == 0 || v > n as u64 || present[(v - 1) as usize] {
            return Err(CodeError::NotAPermutation(format!(
                "surviving values must be distinct and within [1, {n}]"
            )));
        }
        present[(v - 1) as usize] = true;
    }
    Ok((1..=n as u64).filter(|&v| !present[(v - 1) as usize]).collect())
}

/// A permutation code correcting one burst of exactly `t` stable
/// deletions: membership constrains the t-overlapping ranking sequence to
/// a `(2t, t)`-burst code over the alphabet `(t+1)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbsdCode {
    n: usize,
    t: usize,
    inner: CtsCode,
}

impl TbsdCode {
    pub fn for_permutation(sigma: &Permutation, t: usize) -> Result<Self> {
        let ranks = overlapping_ranks(sigma.values(), t)?;
        let inner = CtsCode::for_word(&ranks, 2 * t, t, None)?;
        Ok(TbsdCode { n: sigma.len(), t, inner })
    }

    /// Wraps an existing `(2t, t)`-burst code over `(t+1)!` of length
    /// `n - t` (e.g. one rebuilt from stored residues).
    pub fn from_inner(n: usize, t: usize, inner: CtsCode) -> Result<Self> {
        let expected_q = checked_factorial(t as u64 + 1)?;
        if inner.n() + t != n
            || inner.q() != expected_q
            || inner.t() != 2 * t
            || inner.s() != t
            || inner.p().is_some()
        {
            return Err(CodeError::InvalidParams(format!(
                "inner code must be an unbounded ({},{})-burst code over q={} of length {}",
                2 * t,
                t,
                expected_q,
                n - t.min(n)
            )));
        }
        Ok(TbsdCode { n, t, inner })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The burst code constraining the ranking sequence.
    pub fn inner(&self) -> &CtsCode {
        &self.inner
    }

    pub fn is_member(&self, sigma: &Permutation) -> Result<bool> {
        if sigma.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got: sigma.len() });
        }
        self.inner.is_member(&overlapping_ranks(sigma.values(), self.t)?)
    }

    /// Decodes the surviving values of a codeword that lost `t`
    /// consecutive coordinates to one stable burst deletion.
    pub fn decode(&self, z: &[u64]) -> Result<Permutation> {
        if z.len() + self.t != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n - self.t, got: z.len() });
        }
        let ranks_z = overlapping_ranks(z, self.t)?;
        let ranks_x = self.inner.decode(&ranks_z, None)?;
        reconstruct(self.n, self.t, z, &ranks_x)
    }
}

/// A permutation code correcting one burst of at most `t` stable
/// deletions: for every strength `i` in `[1, t]`, the i-overlapping
/// ranking sequence lies in a `P+i`-bounded `(2i, i)`-burst code over
/// `(i+1)!`. A window of length `P` on the permutation (from an external
/// locator) inflates to one of length `P+i` on the ranking sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeqTbsdCode {
    n: usize,
    t: usize,
    p: Option<usize>,
    inners: Vec<CtsCode>,
}

impl LeqTbsdCode {
    pub fn for_permutation(sigma: &Permutation, t: usize, p: Option<usize>) -> Result<Self> {
        let n = sigma.len();
        let inners = (1..=t)
            .map(|i| {
                let ranks = overlapping_ranks(sigma.values(), i)?;
                // a window of length P + i that covers the whole ranking
                // sequence is just unbounded; clamping keeps short
                // sequences valid and only strengthens the constraint
                CtsCode::for_word(&ranks, 2 * i, i, p.map(|p| (p + i).min(n - i)))
            })
            .collect::<Result<Vec<CtsCode>>>()?;
        Ok(LeqTbsdCode { n, t, p, inners })
    }

    /// Wraps existing burst codes, one per deletion strength: the `i`-th
    /// entry must be a `(2i, i)`-burst code over `(i+1)!` of length
    /// `n - i`, `P`-bounded at `P + i` when a window length is given.
    pub fn from_inners(n: usize, t: usize, p: Option<usize>, inners: Vec<CtsCode>) -> Result<Self> {
        if inners.len() != t || t == 0 {
            return Err(CodeError::InvalidParams(format!(
                "expected one inner code per strength 1..={t}, got {}",
                inners.len()
            )));
        }
        for (idx, inner) in inners.iter().enumerate() {
            let i = idx + 1;
            if inner.n() + i != n
                || inner.q() != checked_factorial(i as u64 + 1)?
                || inner.t() != 2 * i
                || inner.s() != i
                || inner.p() != p.map(|p| (p + i).min(n - i))
            {
                return Err(CodeError::InvalidParams(format!(
                    "inner code {i} does not match strength {i} at n={n}, P={p:?}"
                )));
            }
        }
        Ok(LeqTbsdCode { n, t, p, inners })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn p(&self) -> Option<usize> {
        self.p
    }

    /// The burst code constraining the i-overlapping ranking sequence.
    pub fn inner(&self, i: usize) -> Option<&CtsCode> {
        self.inners.get(i - 1)
    }

    pub fn is_member(&self, sigma: &Permutation) -> Result<bool> {
        if sigma.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got: sigma.len() });
        }
        for (i, inner) in self.inners.iter().enumerate() {
            if !inner.is_member(&overlapping_ranks(sigma.values(), i + 1)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decodes the surviving values after a burst of at most `t` stable
    /// deletions; the strength is inferred from the length. `window`
    /// (1-based, inclusive, on the original permutation) comes from a
    /// locator; `None` searches everywhere.
    pub fn decode(&self, z: &[u64], window: Option<(usize, usize)>) -> Result<Permutation> {
        let n = self.n;
        if z.len() > n || n - z.len() > self.t {
            return Err(CodeError::LengthMismatch { expected: n - self.t, got: z.len() });
        }
        let i = n - z.len();
        if i == 0 {
            return Permutation::new(z.to_vec());
        }
        let inner_window = match window {
            Some((lo, hi)) => {
                if lo < 1 || hi > n || lo > hi {
                    return Err(CodeError::InvalidWindow(format!(
                        "window [{lo},{hi}] must lie in [1,{n}]"
                    )));
                }
                Some((lo.saturating_sub(i).max(1), hi.min(n - i)))
            }
            None => None,
        };
        let ranks_z = overlapping_ranks(z, i)?;
        let ranks_x = self.inners[i - 1].decode(&ranks_z, inner_window)?;
        reconstruct(n, i, z, &ranks_x)
    }
}

/// Brute-force check of the projection's burst confinement: for every
/// permutation of `S_n` and every burst of `t` stable deletions, the
/// t-overlapping ranking sequence of the output is a `(2t, t)`-burst
/// outcome of the input's sequence.
pub fn projection_ball_check(n: usize, t: usize) -> Result<Check> {
    let name = format!("projection-ball-confinement n={n} t={t}");
    if t == 0 || n < 3 * t {
        return Err(CodeError::InvalidParams(format!(
            "hosting a (2t,t)-burst on the ranking sequence needs n >= 3t, got n={n}, t={t}"
        )));
    }
    for rank in 1..=checked_factorial(n as u64)? {
        let sigma = Permutation::from_lex_rank(rank, n)?;
        let px = overlapping_ranks(sigma.values(), t)?;
        for i in 1..=n - t + 1 {
            let z = apply_stable_burst_deletion(&sigma, i, t)?;
            let pz = overlapping_ranks(&z, t)?;
            if !is_burst_outcome(&px, &pz, 2 * t, t) {
                return Ok(Check::fail(name, format!("sigma={sigma} deletion at i={i}")));
            }
        }
    }
    Ok(Check::pass(name))
}

/// Brute-force check that the projection separates confusable
/// permutations: distinct members of `S_n` sharing a descendant under a
/// burst of `t` stable deletions have distinct t-overlapping ranking
/// sequences (so correcting the sequence pins down the permutation).
pub fn projection_distinguishability_check(n: usize, t: usize) -> Result<Check> {
    let name = format!("projection-distinguishability n={n} t={t}");
    if t == 0 || n < 2 * t + 1 {
        return Err(CodeError::InvalidParams(format!(
            "comparing ranking sequences needs n >= 2t+1, got n={n}, t={t}"
        )));
    }
    let mut by_descendant: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    for rank in 1..=checked_factorial(n as u64)? {
        let sigma = Permutation::from_lex_rank(rank, n)?;
        for i in 1..=n - t + 1 {
            let z = apply_stable_burst_deletion(&sigma, i, t)?;
            let bucket = by_descendant.entry(z).or_default();
            if bucket.last() != Some(&rank) {
                bucket.push(rank);
            }
        }
    }
    for ranks in by_descendant.values() {
        for (a_idx, &a) in ranks.iter().enumerate() {
            let sigma = Permutation::from_lex_rank(a, n)?;
            let pa = overlapping_ranks(sigma.values(), t)?;
            for &b in &ranks[a_idx + 1..] {
                let pi = Permutation::from_lex_rank(b, n)?;
                let pb = overlapping_ranks(pi.values(), t)?;
                if pa == pb {
                    return Ok(Check::fail(name, format!("sigma={sigma} pi={pi}")));
                }
            }
        }
    }
    Ok(Check::pass(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_permutations(n: usize) -> Vec<Permutation> {
        (1..=factorial(n as u64)).map(|r| Permutation::from_lex_rank(r, n).unwrap()).collect()
    }

    #[test]
    fn projection_follows_the_definition() {
        assert_eq!(projection(&[5, 2, 5]).values(), &[2, 1, 3]);
        assert_eq!(projection(&[7, 7, 7]).values(), &[1, 2, 3]);
        assert_eq!(projection(&[3, 1, 4, 2]).values(), &[3, 1, 4, 2]);
    }

    #[test]
    fn projection_is_idempotent() {
        for seq in [vec![5, 2, 5], vec![9, 1, 4, 4, 2], vec![1, 1, 1, 1]] {
            let once = projection(&seq);
            assert_eq!(projection(once.values()), once);
        }
    }

    #[test]
    fn lex_rank_matches_lexicographic_enumeration() {
        assert_eq!(Permutation::new(vec![1, 2, 3]).unwrap().lex_rank(), 1);
        assert_eq!(Permutation::new(vec![3, 2, 1]).unwrap().lex_rank(), 6);
        // ranks 1..n! enumerate S_n in lexicographic order
        let mut seen = all_permutations(5);
        let sorted = {
            let mut v = seen.clone();
            v.sort_by(|a, b| a.values().cmp(b.values()));
            v
        };
        assert_eq!(seen, sorted);
        // and unrank inverts rank
        seen.iter_mut().for_each(|p| {
            assert_eq!(Permutation::from_lex_rank(p.lex_rank(), 5).unwrap(), *p);
        });
    }

    #[test]
    fn overlapping_ranks_examples() {
        let ranks = |vals: &[u64], t: usize| -> Vec<u64> {
            overlapping_ranks(vals, t).unwrap().symbols().to_vec()
        };
        // semantic ranks are 1-based; the stored word is 0-based
        assert_eq!(ranks(&[1, 2, 3, 4], 1), vec![0, 0, 0]);
        assert_eq!(ranks(&[2, 1, 3], 1), vec![1, 0]);
        assert_eq!(overlapping_ranks(&[3, 1, 4, 2], 2).unwrap().q(), 6);
        assert!(overlapping_ranks(&[1, 2], 2).is_err());
    }

    #[test]
    fn stable_deletion_examples() {
        let sigma = Permutation::new(vec![1, 2, 3, 4, 5]).unwrap();
        assert_eq!(apply_stable_burst_deletion(&sigma, 2, 2).unwrap(), vec![1, 4, 5]);
        let sigma = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert_eq!(apply_stable_burst_deletion(&sigma, 1, 1).unwrap(), vec![1, 4, 2]);
        assert_eq!(apply_stable_burst_deletion(&sigma, 1, 4).unwrap(), Vec::<u64>::new());
        assert!(apply_stable_burst_deletion(&sigma, 4, 2).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let sigma = Permutation::parse("3,1,2").unwrap();
        assert_eq!(sigma.values(), &[3, 1, 2]);
        assert_eq!(sigma.to_string(), "3,1,2");
        assert!(Permutation::parse("3,1,3").is_err());
        assert!(Permutation::parse("0,1,2").is_err());
        assert!(Permutation::parse("a,b").is_err());
    }

    #[test]
    fn tbsd_round_trips_for_single_bursts() {
        let n = 6;
        for sigma in all_permutations(n) {
            let code = TbsdCode::for_permutation(&sigma, 1).unwrap();
            assert!(code.is_member(&sigma).unwrap());
            for pos in 1..=n {
                let z = apply_stable_burst_deletion(&sigma, pos, 1).unwrap();
                assert_eq!(code.decode(&z).unwrap(), sigma, "sigma={sigma} pos={pos}");
            }
        }
    }

    #[test]
    fn tbsd_round_trips_for_length_two_bursts() {
        // subsample S_7; the acceptance suite runs the exhaustive version
        let n = 7;
        for (idx, sigma) in all_permutations(n).into_iter().enumerate() {
            if idx % 23 != 0 {
                continue;
            }
            let code = TbsdCode::for_permutation(&sigma, 2).unwrap();
            for pos in 1..=n - 1 {
                let z = apply_stable_burst_deletion(&sigma, pos, 2).unwrap();
                assert_eq!(code.decode(&z).unwrap(), sigma, "sigma={sigma} pos={pos}");
            }
        }
    }

    #[test]
    fn leq_tbsd_round_trips_with_windows() {
        let (n, t, p) = (8, 2usize, 4usize);
        for (idx, sigma) in all_permutations(n).into_iter().enumerate() {
            if idx % 257 != 0 {
                continue;
            }
            let code = LeqTbsdCode::for_permutation(&sigma, t, Some(p)).unwrap();
            assert!(code.is_member(&sigma).unwrap());
            for i in 1..=t {
                for pos in 1..=n - i + 1 {
                    let lo = pos.min(n - p + 1).max(1);
                    let hi = lo + p - 1;
                    let z = apply_stable_burst_deletion(&sigma, pos, i).unwrap();
                    assert_eq!(
                        code.decode(&z, Some((lo, hi))).unwrap(),
                        sigma,
                        "sigma={sigma} i={i} pos={pos}"
                    );
                    assert_eq!(code.decode(&z, None).unwrap(), sigma);
                }
            }
        }
    }

    #[test]
    fn projection_checks_pass_at_small_scale() {
        assert!(projection_ball_check(5, 1).unwrap().pass);
        assert!(projection_ball_check(6, 2).unwrap().pass);
        assert!(projection_distinguishability_check(5, 1).unwrap().pass);
        assert!(projection_distinguishability_check(5, 2).unwrap().pass);
        assert!(projection_ball_check(5, 2).is_err());
    }

    #[test]
    fn codes_rebuild_from_inner_parts() {
        let sigma = Permutation::parse("3,1,4,2,6,5,7").unwrap();
        let code = TbsdCode::for_permutation(&sigma, 2).unwrap();
        let rebuilt = TbsdCode::from_inner(7, 2, code.inner().clone()).unwrap();
        assert_eq!(rebuilt, code);
        assert!(TbsdCode::from_inner(8, 2, code.inner().clone()).is_err());

        let code = LeqTbsdCode::for_permutation(&sigma, 2, Some(4)).unwrap();
        let inners = vec![code.inner(1).unwrap().clone(), code.inner(2).unwrap().clone()];
        let rebuilt = LeqTbsdCode::from_inners(7, 2, Some(4), inners.clone()).unwrap();
        assert_eq!(rebuilt, code);
        assert!(LeqTbsdCode::from_inners(7, 2, None, inners).is_err());
    }

    #[test]
    fn leq_tbsd_accepts_undeleted_input() {
        let sigma = Permutation::parse("2,4,1,3,6,5,8,7").unwrap();
        let code = LeqTbsdCode::for_permutation(&sigma, 2, None).unwrap();
        assert_eq!(code.decode(sigma.values(), None).unwrap(), sigma);
    }
}
