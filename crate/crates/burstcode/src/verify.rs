//! Brute-force verification: code enumeration, ball-disjointness proofs,
//! exhaustive decode roundtrips, and redundancy-vs-bound reporting.
//!
//! Everything here is exact. A check either passes or carries a concrete
//! counterexample (a pair of codewords sharing a ball element, or a decode
//! mismatch triple). Heavy sweeps run in parallel with a deterministic
//! reduction, so reports are reproducible byte-for-byte.

use crate::bounds;
use crate::channel::{self, ball};
use crate::codes::{param_search, Family};
use crate::error::{CodeError, Result};
use crate::word::Word;
use rayon::prelude::*;
use serde::Serialize;

/// Default cap on the number of words enumerated by [`enumerate_code`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

/// All words of `Σ_q^n` in lexicographic order.
pub fn enumerate_words(q: u64, n: usize) -> impl Iterator<Item = Word> {
    WordsIter { q, n, next: Some(vec![0; n]) }
}

struct WordsIter {
    q: u64,
    n: usize,
    next: Option<Vec<u64>>,
}

impl Iterator for WordsIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let word = Word::new(self.q, cur.clone()).expect("odometer stays in range");
        let mut sym = cur;
        for i in (0..self.n).rev() {
            if sym[i] + 1 < self.q {
                sym[i] += 1;
                self.next = Some(sym);
                return Some(word);
            }
            sym[i] = 0;
        }
        // n = 0 yields exactly the empty word
        self.next = None;
        Some(word)
    }
}

/// Packs a word into an integer, big-endian base `q` (first symbol most
/// significant). Requires `q^len` to fit in `u64`.
pub fn pack(symbols: &[u64], q: u64) -> u64 {
    symbols.iter().fold(0, |acc, &v| acc * q + v)
}

/// Inverse of [`pack`] for a known length.
pub fn unpack(mut packed: u64, q: u64, n: usize) -> Vec<u64> {
    let mut symbols = vec![0; n];
    for i in (0..n).rev() {
        symbols[i] = packed % q;
        packed /= q;
    }
    symbols
}

/// Exactly the words of `Σ_q^n` satisfying `member`, in lexicographic
/// order. Fails if `q^n` exceeds `cap`.
pub fn enumerate_code<F>(member: F, n: usize, q: u64, cap: u128) -> Result<Vec<Word>>
where
    F: Fn(&Word) -> bool,
{
    let space = (q as u128)
        .checked_pow(n as u32)
        .ok_or(CodeError::EnumerationCapExceeded { needed: u128::MAX, cap })?;
    if space > cap {
        return Err(CodeError::EnumerationCapExceeded { needed: space, cap });
    }
    Ok(enumerate_words(q, n).filter(|x| member(x)).collect())
}

/// Outcome of one named exhaustive check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check { name: name.into(), pass: true, counterexample: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check { name: name.into(), pass: false, counterexample: Some(witness.into()) }
    }
}

/// Verifies that the `(t, s)`-balls of all codewords are pairwise
/// disjoint. The witness on failure is `(x, y, z)` with `z` in both balls;
/// the lexicographically first offending `z` wins.
pub fn check_disjoint_balls(code: &[Word], t: usize, s: usize) -> Result<Check> {
    let name = format!("disjoint-balls t={t} s={s}");
    let mut owned: Vec<(Word, usize)> = Vec::new();
    for (idx, x) in code.iter().enumerate() {
        for member in ball(x, t, s)?.members().iter().cloned() {
            owned.push((member, idx));
        }
    }
    owned.sort();
    for pair in owned.windows(2) {
        let ((z, i), (z2, j)) = (&pair[0], &pair[1]);
        if z == z2 && i != j {
            return Ok(Check::fail(
                name,
                format!("x={} y={} share z={}", code[*i.min(j)], code[*i.max(j)], z),
            ));
        }
    }
    Ok(Check::pass(name))
}

/// The cited duality: a `(t, s)`-burst code is also an `(s, t)`-burst
/// code. Checked directly as `(s, t)` ball-disjointness.
pub fn dual_burst_check(code: &[Word], t: usize, s: usize) -> Result<Check> {
    let inner = check_disjoint_balls(code, s, t)?;
    Ok(Check {
        name: format!("dual-balls s={s} t={t}"),
        pass: inner.pass,
        counterexample: inner.counterexample,
    })
}

/// Exhaustive decode roundtrip: for every codeword `x` and every
/// `(label, z)` produced by `events(x)`, asserts `decode(z) = x`.
/// Parallel over codewords; the witness is the first failure in
/// (codeword, event) order.
pub fn roundtrip<D, G>(name: &str, code: &[Word], decode: D, events: G) -> Check
where
    D: Fn(&Word) -> Result<Word> + Sync,
    G: Fn(&Word) -> Vec<(String, Word)> + Sync,
{
    let witness = code
        .par_iter()
        .enumerate()
        .filter_map(|(idx, x)| {
            for (label, z) in events(x) {
                match decode(&z) {
                    Ok(got) if &got == x => {}
                    Ok(got) => {
                        return Some((idx, format!("x={x} event={label} decoded={got}")));
                    }
                    Err(e) => {
                        return Some((idx, format!("x={x} event={label} error={e}")));
                    }
                }
            }
            None
        })
        .min_by_key(|(idx, _)| *idx);
    match witness {
        None => Check::pass(name),
        Some((_, w)) => Check::fail(name, w),
    }
}

/// Exhaustive ball-size sweep: for every center of every configuration
/// in the grid, the enumerated ball size must equal
/// `q^{s-1}((q-1)(n-t+1)+1)`. Iterates packed words for speed and
/// cross-checks the packed enumeration against [`channel::ball`] on the
/// first and last center of each configuration.
pub fn ball_size_grid_check(qs: &[u64], n_max: usize, t_max: usize, s_max: usize) -> Check {
    let name = format!("ball-size-grid q={qs:?} n<={n_max} t<={t_max} s<={s_max}");
    for &q in qs {
        for t in 1..=t_max.min(n_max) {
            for s in 1..=s_max {
                for n in t..=n_max {
                    let expect = bounds::ball_size_formula(n, q, t, s)
                        .expect("grid parameters are valid")
                        as usize;
                    let total = q.pow(n as u32);
                    let bad = (0..total)
                        .into_par_iter()
                        .filter(|&w| packed_ball_size(w, q, n, t, s) != expect)
                        .min();
                    if let Some(w) = bad {
                        let x = Word::new(q, unpack(w, q, n)).expect("packed center");
                        let got = packed_ball_size(w, q, n, t, s);
                        return Check::fail(
                            name,
                            format!(
                                "q={q} n={n} t={t} s={s} x={x}: |ball|={got} expected {expect}"
                            ),
                        );
                    }
                    for probe in [0, total - 1] {
                        let x = Word::new(q, unpack(probe, q, n)).expect("probe center");
                        let via_words =
                            ball(&x, t, s).expect("grid parameters are valid").members().len();
                        if via_words != expect {
                            return Check::fail(
                                name,
                                format!(
                                    "q={q} n={n} t={t} s={s} x={x}: word-level ball {via_words} != {expect}"
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    Check::pass(name)
}

fn packed_ball_size(w: u64, q: u64, n: usize, t: usize, s: usize) -> usize {
    let mut out = Vec::with_capacity((n - t + 1) * (q as usize).pow(s as u32));
    let ins_count = q.pow(s as u32);
    for i in 1..=(n - t + 1) as u64 {
        let keep = q.pow((n as u64 - i + 1 - t as u64) as u32);
        let cut = keep * q.pow(t as u32);
        let prefix = w / cut;
        let suffix = w % keep;
        let base = prefix * ins_count;
        for ins in 0..ins_count {
            out.push((base + ins) * keep + suffix);
        }
    }
    out.sort_unstable();
    out.dedup();
    out.len()
}

/// Exhaustive partition sweep on the same grid: the ball must split into
/// pairwise-disjoint cells of size `(q-1)q^{s-1}` (one cell per burst
/// position) plus a final cell of size `q^{s-1}`, and their union must
/// equal the enumerated ball.
pub fn partition_grid_check(qs: &[u64], n_max: usize, t_max: usize, s_max: usize) -> Check {
    let name = format!("ball-partition-grid q={qs:?} n<={n_max} t<={t_max} s<={s_max}");
    for &q in qs {
        for t in 1..=t_max.min(n_max) {
            for s in 1..=s_max {
                for n in t..=n_max {
                    let total = q.pow(n as u32);
                    let bad = (0..total)
                        .into_par_iter()
                        .filter_map(|w| packed_partition_issue(w, q, n, t, s).map(|m| (w, m)))
                        .min_by_key(|(w, _)| *w);
                    if let Some((w, msg)) = bad {
                        let x = Word::new(q, unpack(w, q, n)).expect("packed center");
                        return Check::fail(name, format!("q={q} n={n} t={t} s={s} x={x}: {msg}"));
                    }
                    // the word-level partition must tile the word-level ball
                    let x = Word::new(q, unpack(total - 1, q, n)).expect("probe center");
                    let cells = channel::ball_partition(&x, t, s).expect("grid parameters");
                    let mut union: Vec<Word> =
                        cells.iter().flat_map(|c| c.members.iter().cloned()).collect();
                    let before = union.len();
                    union.sort();
                    union.dedup();
                    let b = ball(&x, t, s).expect("grid parameters").members().to_vec();
                    if union.len() != before || union != b {
                        return Check::fail(
                            name,
                            format!("q={q} n={n} t={t} s={s} x={x}: word-level cells do not tile"),
                        );
                    }
                }
            }
        }
    }
    Check::pass(name)
}

/// Returns a failure description if the packed partition of `w`'s ball is
/// not a tiling with the exact cell sizes.
fn packed_partition_issue(w: u64, q: u64, n: usize, t: usize, s: usize) -> Option<String> {
    let free = q.pow(s as u32 - 1);
    let mut cells: Vec<u64> = Vec::new();
    // cell i: prefix x_{[1,i-1]}, then y_i != x_i, then s-1 free symbols,
    // then the suffix x_{[i+t,n]}
    for i in 1..=(n - t + 1) as u64 {
        let keep = q.pow((n as u64 - i + 1 - t as u64) as u32);
        let cut = keep * q.pow(t as u32);
        let prefix = w / cut;
        let suffix = w % keep;
        let xi = (w / (cut / q)) % q;
        let mut count = 0;
        for yi in 0..q {
            if yi == xi {
                continue;
            }
            for f in 0..free {
                cells.push((((prefix * q + yi) * free) + f) * keep + suffix);
                count += 1;
            }
        }
        if count != (q - 1) * free {
            return Some(format!("cell {i} has size {count}"));
        }
    }
    // final cell: y_{[1, n-t+1]} = x_{[1, n-t+1]}, remaining s-1 symbols free
    let head = w / q.pow(t as u32 - 1);
    for f in 0..free {
        cells.push(head * free + f);
    }
    let total = cells.len();
    cells.sort_unstable();
    cells.dedup();
    if cells.len() != total {
        return Some("cells are not pairwise disjoint".into());
    }
    let mut b = Vec::new();
    let ins_count = q.pow(s as u32);
    for i in 1..=(n - t + 1) as u64 {
        let keep = q.pow((n as u64 - i + 1 - t as u64) as u32);
        let cut = keep * q.pow(t as u32);
        let (prefix, suffix) = (w / cut, w % keep);
        for ins in 0..ins_count {
            b.push((prefix * ins_count + ins) * keep + suffix);
        }
    }
    b.sort_unstable();
    b.dedup();
    if cells != b {
        return Some(format!("union has {} members, ball has {}", cells.len(), b.len()));
    }
    None
}

/// One row of a redundancy-vs-bound table: the best parameter class of a
/// family at one length, against the sphere-packing floor and the
/// family's closed-form redundancy guarantee.
#[derive(Debug, Clone, Serialize)]
pub struct RedundancyRow {
    pub family: String,
    pub n: usize,
    pub q: u64,
    pub t: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    pub best_size: u64,
    pub redundancy_bits: f64,
    /// Sphere-packing floor; absent for `s = 0`, where ball sizes are
    /// center-dependent and the closed form does not apply.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_bits: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_bits: Option<f64>,
    pub guarantee_bits: f64,
}

impl RedundancyRow {
    pub fn csv_header() -> &'static str {
        "family,n,q,t,s,P,best_size,redundancy_bits,bound_bits,gap_bits,guarantee_bits"
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.6}"));
        format!(
            "{},{},{},{},{},{},{},{:.6},{},{},{:.6}",
            self.family,
            self.n,
            self.q,
            self.t,
            self.s,
            self.p.map_or(String::new(), |p| p.to_string()),
            self.best_size,
            self.redundancy_bits,
            opt(self.bound_bits),
            opt(self.gap_bits),
            self.guarantee_bits,
        )
    }
}

/// Builds one table row per length: best code size by exhaustive
/// parameter search, its redundancy, the sphere-packing bound, the gap
/// between the two, and the family's closed-form guarantee.
pub fn redundancy_table(
    family: Family,
    ns: &[usize],
    q: u64,
    t: usize,
    s: usize,
    p: Option<usize>,
    cap: u128,
) -> Result<Vec<RedundancyRow>> {
    if ns.is_empty() {
        return Err(CodeError::InvalidParams("need at least one length n".into()));
    }
    ns.iter()
        .map(|&n| {
            let outcome = param_search(family, n, q, t, s, p, cap)?;
            let redundancy = bounds::code_redundancy(n, q, outcome.size.into())?;
            let bound =
                if s >= 1 { Some(bounds::sphere_packing_redundancy(n, q, t, s)?) } else { None };
            Ok(RedundancyRow {
                family: family.name().into(),
                n,
                q,
                t,
                s,
                p,
                best_size: outcome.size,
                redundancy_bits: redundancy,
                bound_bits: bound,
                gap_bits: bound.map(|b| redundancy - b),
                guarantee_bits: bounds::redundancy_guarantee(&outcome.code),
            })
        })
        .collect()
}

/// Outcome of verifying one code instance end to end.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub n: usize,
    pub q: u64,
    pub t: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    pub code_size: usize,
    pub redundancy_bits: f64,
    pub bound_bits: f64,
    pub checks: Vec<Check>,
    /// Wall time is reported on stderr only, so serialized reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn csv_header() -> &'static str {
        "family,n,q,t,s,P,code_size,redundancy_bits,bound_bits,check,pass,counterexample"
    }

    pub fn csv_rows(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{},{},{},{},{},{},{},{:.6},{:.6},{},{},{}",
                    self.family,
                    self.n,
                    self.q,
                    self.t,
                    self.s,
                    self.p.map_or(String::new(), |p| p.to_string()),
                    self.code_size,
                    self.redundancy_bits,
                    self.bound_bits,
                    c.name,
                    c.pass,
                    c.counterexample.clone().unwrap_or_default(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_enumerate_in_lexicographic_order() {
        let all: Vec<Word> = enumerate_words(2, 3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Word::parse("000", 2).unwrap());
        assert_eq!(all[7], Word::parse("111", 2).unwrap());
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        // n = 0 still yields the single empty word
        assert_eq!(enumerate_words(3, 0).count(), 1);
    }

    #[test]
    fn pack_unpack_roundtrip() {
        for w in 0..81u64 {
            assert_eq!(pack(&unpack(w, 3, 4), 3), w);
        }
    }

    #[test]
    fn enumerate_code_respects_cap() {
        let all = enumerate_code(|_| true, 3, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 8);
        let err = enumerate_code(|_| true, 30, 2, 1 << 10);
        assert!(matches!(err, Err(CodeError::EnumerationCapExceeded { .. })));
        // empty codes are fine
        let none = enumerate_code(|_| false, 3, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn redundancy_table_rows_are_sandwiched() {
        let rows =
            redundancy_table(Family::C22, &[6, 8], 2, 2, 2, None, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            let bound = row.bound_bits.unwrap();
            assert!(bound <= row.redundancy_bits + 1e-9);
            assert!(row.redundancy_bits <= row.guarantee_bits + 1e-9);
            assert!((row.gap_bits.unwrap() - (row.redundancy_bits - bound)).abs() < 1e-12);
        }
        // the sphere-packing floor is nondecreasing in n
        assert!(rows[0].bound_bits.unwrap() <= rows[1].bound_bits.unwrap() + 1e-12);
        assert_eq!(
            rows[0].csv_row().split(',').count(),
            RedundancyRow::csv_header().split(',').count()
        );
        // s = 0 rows omit the bound columns
        let rows =
            redundancy_table(Family::Cts, &[6], 2, 2, 0, None, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(rows[0].bound_bits.is_none() && rows[0].gap_bits.is_none());
        assert!(redundancy_table(Family::C22, &[], 2, 2, 2, None, DEFAULT_ENUMERATION_CAP).is_err());
    }

    #[test]
    fn singleton_code_has_disjoint_balls() {
        let code = vec![Word::parse("0101", 2).unwrap()];
        assert!(check_disjoint_balls(&code, 2, 2).unwrap().pass);
    }

    #[test]
    fn full_space_fails_disjointness_with_witness() {
        let code: Vec<Word> = enumerate_words(2, 5).collect();
        let check = check_disjoint_balls(&code, 2, 2).unwrap();
        assert!(!check.pass);
        assert!(check.counterexample.is_some());
    }

    #[test]
    fn roundtrip_flags_a_corrupted_decoder() {
        let code: Vec<Word> = vec![Word::parse("000", 2).unwrap()];
        let ok =
            roundtrip("identity", &code, |z| Ok(z.clone()), |x| vec![("noop".into(), x.clone())]);
        assert!(ok.pass);
        let bad = roundtrip(
            "always-wrong",
            &code,
            |_| Ok(Word::parse("111", 2).unwrap()),
            |x| vec![("noop".into(), x.clone())],
        );
        assert!(!bad.pass);
        assert!(bad.counterexample.unwrap().contains("decoded=111"));
    }

    #[test]
    fn small_grid_checks_pass() {
        assert!(ball_size_grid_check(&[2, 3], 5, 2, 2).pass);
        assert!(partition_grid_check(&[2, 3], 5, 2, 2).pass);
    }
}
