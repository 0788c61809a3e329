//! The burst channel: a `(t, s)`-burst deletes `t` consecutive symbols at
//! some coordinate and inserts `s` arbitrary symbols in their place. This
//! module applies events, enumerates error balls and their canonical
//! partition into cells, and models the application-level corruptions
//! (substring inversion, absorption, localized deletions) that embed into
//! burst events.

use crate::error::{CodeError, Result};
use crate::word::Word;

/// A single `(t, s)`-burst: at coordinate `pos`, delete `t` symbols and
/// insert `ins` (so `s = ins.len()`). For `t >= 1` the coordinate ranges
/// over `[1, n-t+1]`; pure insertions (`t = 0`) use `[1, n+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurstEvent {
    pub pos: usize,
    pub t: usize,
    pub ins: Vec<u64>,
}

impl BurstEvent {
    pub fn s(&self) -> usize {
        self.ins.len()
    }
}

/// The ball of all outcomes of a `(t, s)`-burst applied to `center`,
/// stored sorted and deduplicated.
#[derive(Debug, Clone)]
pub struct ErrorBall {
    pub center: Word,
    pub t: usize,
    pub s: usize,
    members: Vec<Word>,
}

impl ErrorBall {
    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, y: &Word) -> bool {
        self.members.binary_search(y).is_ok()
    }
}

/// One cell of the canonical ball partition. Cells `1..=n-t+1` collect the
/// outcomes whose first divergence from the center is at the cell index;
/// the final cell (index `n-t+2`) holds the outcomes agreeing with the
/// center on the whole prefix `[1, n-t+1]`.
#[derive(Debug, Clone)]
pub struct BallCell {
    pub index: usize,
    pub members: Vec<Word>,
}

fn position_range(n: usize, t: usize) -> (usize, usize) {
    if t == 0 {
        (1, n + 1)
    } else {
        (1, n - t + 1)
    }
}

/// Applies a burst event, validating the coordinate range and the inserted
/// symbols. The result is `x_1..x_{pos-1} ins x_{pos+t}..x_n`.
pub fn apply_burst(x: &Word, event: &BurstEvent) -> Result<Word> {
    let n = x.len();
    if event.t + event.s() == 0 {
        return Err(CodeError::InvalidParams("a burst must delete or insert something".into()));
    }
    if event.t > n {
        return Err(CodeError::InvalidParams(format!(
            "cannot delete {} symbols from a word of length {n}",
            event.t
        )));
    }
    let (lo, hi) = position_range(n, event.t);
    if event.pos < lo || event.pos > hi {
        return Err(CodeError::PositionOutOfRange { pos: event.pos, lo, hi });
    }
    for &s in &event.ins {
        if s >= x.q() {
            return Err(CodeError::SymbolOutOfRange { symbol: s, q: x.q() });
        }
    }
    let mut out = Vec::with_capacity(n - event.t + event.s());
    out.extend_from_slice(&x.symbols()[..event.pos - 1]);
    out.extend_from_slice(&event.ins);
    out.extend_from_slice(&x.symbols()[event.pos - 1 + event.t..]);
    Word::new(x.q(), out)
}

/// Whether the event is an exact burst: the first inserted symbol differs
/// from the first deleted one and the last inserted differs from the last
/// deleted. Only defined for `t >= 1` and `s >= 1`.
pub fn is_exact_burst(x: &Word, event: &BurstEvent) -> Result<bool> {
    if event.t == 0 || event.s() == 0 {
        return Err(CodeError::InvalidParams("exactness requires t >= 1 and s >= 1".into()));
    }
    let n = x.len();
    let (lo, hi) = position_range(n, event.t);
    if event.pos < lo || event.pos > hi {
        return Err(CodeError::PositionOutOfRange { pos: event.pos, lo, hi });
    }
    let first_deleted = x.sym(event.pos as i64);
    let last_deleted = x.sym((event.pos + event.t - 1) as i64);
    Ok(event.ins[0] != first_deleted && event.ins[event.s() - 1] != last_deleted)
}

fn for_each_insertion(q: u64, s: usize, mut f: impl FnMut(&[u64])) {
    let mut ins = vec![0u64; s];
    loop {
        f(&ins);
        let mut idx = s;
        loop {
            if idx == 0 {
                return;
            }
            idx -= 1;
            ins[idx] += 1;
            if ins[idx] < q {
                break;
            }
            ins[idx] = 0;
        }
    }
}

/// Enumerates the full `(t, s)`-burst ball of `x` (sorted, deduplicated).
pub fn ball(x: &Word, t: usize, s: usize) -> Result<ErrorBall> {
    let n = x.len();
    if t + s == 0 {
        return Err(CodeError::InvalidParams("a burst must delete or insert something".into()));
    }
    if t > n {
        return Err(CodeError::InvalidParams(format!(
            "cannot delete {t} symbols from a word of length {n}"
        )));
    }
    let (lo, hi) = position_range(n, t);
    let mut members = Vec::new();
    for pos in lo..=hi {
        for_each_insertion(x.q(), s, |ins| {
            let mut out = Vec::with_capacity(n - t + s);
            out.extend_from_slice(&x.symbols()[..pos - 1]);
            out.extend_from_slice(ins);
            out.extend_from_slice(&x.symbols()[pos - 1 + t..]);
            members.push(Word::new(x.q(), out).expect("symbols already validated"));
        });
    }
    members.sort();
    members.dedup();
    Ok(ErrorBall { center: x.clone(), t, s, members })
}

/// Enumerates the canonical partition of the `(t, s)`-ball into cells,
/// built directly from the cell definitions rather than by filtering the
/// ball. Requires `s >= 1`.
pub fn ball_partition(x: &Word, t: usize, s: usize) -> Result<Vec<BallCell>> {
    if s == 0 {
        return Err(CodeError::InvalidParams("the cell partition requires s >= 1".into()));
    }
    let n = x.len();
    if t > n {
        return Err(CodeError::InvalidParams(format!(
            "cannot delete {t} symbols from a word of length {n}"
        )));
    }
    let (lo, hi) = position_range(n, t);
    let q = x.q();
    let mut cells = Vec::with_capacity(hi - lo + 2);
    for i in lo..=hi {
        // y_i != x_i, the rest of the inserted block free, prefix/suffix fixed
        let mut members = Vec::new();
        for_each_insertion(q, s, |ins| {
            if ins[0] == x.sym(i as i64) {
                return;
            }
            let mut out = Vec::with_capacity(n - t + s);
            out.extend_from_slice(&x.symbols()[..i - 1]);
            out.extend_from_slice(ins);
            out.extend_from_slice(&x.symbols()[i - 1 + t..]);
            members.push(Word::new(q, out).expect("symbols already validated"));
        });
        members.sort();
        members.dedup();
        cells.push(BallCell { index: i, members });
    }
    // final cell: agree with the center on the whole prefix [1, n-t+1]
    // (coordinates past the end read as 0), trailing s-1 symbols free
    let prefix: Vec<u64> = (1..=hi as i64).map(|j| x.sym(j)).collect();
    let mut members = Vec::new();
    for_each_insertion(q, s - 1, |tail| {
        let mut out = Vec::with_capacity(n - t + s);
        out.extend_from_slice(&prefix);
        out.extend_from_slice(tail);
        members.push(Word::new(q, out).expect("symbols already validated"));
    });
    members.sort();
    members.dedup();
    cells.push(BallCell { index: hi + 1, members });
    Ok(cells)
}

/// Structural test for `z` being a possible `(t, s)`-burst outcome of `x`:
/// some coordinate admits a matching prefix and suffix around the event.
pub fn is_burst_outcome(x: &Word, z: &Word, t: usize, s: usize) -> bool {
    let n = x.len();
    if t > n || z.len() + t != n + s || x.q() != z.q() {
        return false;
    }
    let xs = x.symbols();
    let zs = z.symbols();
    let mut pre = 0usize;
    while pre < xs.len() && pre < zs.len() && xs[pre] == zs[pre] {
        pre += 1;
    }
    let mut suf = 0usize;
    while suf < xs.len() && suf < zs.len() && xs[xs.len() - 1 - suf] == zs[zs.len() - 1 - suf] {
        suf += 1;
    }
    let (lo, hi) = position_range(n, t);
    // event at pos needs pos-1 <= pre and n-(pos+t)+1 <= suf
    let need_lo = if n + 1 >= t + suf { n + 1 - t - suf } else { lo };
    need_lo.max(lo) <= hi.min(pre + 1)
}

/// Reverses the substring `x_i .. x_{i+len-1}` in place.
pub fn apply_inversion(x: &Word, i: usize, len: usize) -> Result<Word> {
    let n = x.len();
    if len == 0 {
        return Err(CodeError::InvalidParams("inversion length must be >= 1".into()));
    }
    if i == 0 || i + len - 1 > n {
        return Err(CodeError::PositionOutOfRange {
            pos: i,
            lo: 1,
            hi: if n >= len { n - len + 1 } else { 0 },
        });
    }
    let mut symbols = x.symbols().to_vec();
    symbols[i - 1..i + len - 1].reverse();
    Word::new(x.q(), symbols)
}

/// Type-A absorption at coordinate `i`: delete `x_i` and raise the next
/// symbol to `min(x_i + x_{i+1}, q-1)`; at `i = n` the last symbol is
/// simply deleted. Always a `(2, 1)`-burst outcome.
pub fn apply_absorption_a(x: &Word, i: usize) -> Result<Word> {
    let n = x.len();
    if i == 0 || i > n {
        return Err(CodeError::PositionOutOfRange { pos: i, lo: 1, hi: n });
    }
    let mut symbols = x.symbols().to_vec();
    if i < n {
        let merged = (symbols[i - 1] + symbols[i]).min(x.q() - 1);
        symbols[i] = merged;
    }
    symbols.remove(i - 1);
    Word::new(x.q(), symbols)
}

/// Type-B absorption at coordinate `i`: lower `x_i` to `new_val < x_i` and
/// raise the next symbol by the difference, capped at `q-1`; at `i = n`
/// only the lowering happens. Always a `(2, 2)`-burst outcome.
pub fn apply_absorption_b(x: &Word, i: usize, new_val: u64) -> Result<Word> {
    let n = x.len();
    if i == 0 || i > n {
        return Err(CodeError::PositionOutOfRange { pos: i, lo: 1, hi: n });
    }
    let old = x.sym(i as i64);
    if new_val >= old {
        return Err(CodeError::InvalidParams(format!(
            "absorption must lower the symbol: {new_val} >= {old}"
        )));
    }
    let mut symbols = x.symbols().to_vec();
    symbols[i - 1] = new_val;
    if i < n {
        symbols[i] = (symbols[i] + old - new_val).min(x.q() - 1);
    }
    Word::new(x.q(), symbols)
}

/// Deletes the symbols at `window_start + offset` for each offset in
/// `offsets`, all within a window of length `t`. Equivalent to a
/// `(t, t - offsets.len())`-burst at the window start.
pub fn apply_localized_deletions(
    x: &Word,
    window_start: usize,
    t: usize,
    offsets: &[usize],
) -> Result<Word> {
    let n = x.len();
    if t == 0 || t > n {
        return Err(CodeError::InvalidParams(format!("window length {t} outside [1, {n}]")));
    }
    if window_start == 0 || window_start + t - 1 > n {
        return Err(CodeError::PositionOutOfRange { pos: window_start, lo: 1, hi: n - t + 1 });
    }
    if offsets.is_empty() {
        return Err(CodeError::InvalidParams("at least one deletion offset required".into()));
    }
    let mut seen = vec![false; t];
    for &o in offsets {
        if o >= t {
            return Err(CodeError::InvalidParams(format!(
                "offset {o} outside window of length {t}"
            )));
        }
        if seen[o] {
            return Err(CodeError::InvalidParams(format!("duplicate offset {o}")));
        }
        seen[o] = true;
    }
    let symbols = x
        .symbols()
        .iter()
        .enumerate()
        .filter(|(idx, _)| {
            let coord = idx + 1;
            !(coord >= window_start && coord < window_start + t && seen[coord - window_start])
        })
        .map(|(_, &v)| v)
        .collect();
    Word::new(x.q(), symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ball_size_formula;
    use proptest::prelude::*;

    fn w(s: &str, q: u64) -> Word {
        Word::parse(s, q).unwrap()
    }

    #[test]
    fn apply_burst_examples() {
        let x = w("011110", 2);
        let z = apply_burst(&x, &BurstEvent { pos: 2, t: 4, ins: vec![1, 0, 1] }).unwrap();
        assert_eq!(z.to_string(), "01010");
        let z2 = apply_burst(&x, &BurstEvent { pos: 3, t: 2, ins: vec![0] }).unwrap();
        assert_eq!(z2.to_string(), "01010");
        // pure insertion may land after the last symbol
        let z3 = apply_burst(&w("00", 2), &BurstEvent { pos: 3, t: 0, ins: vec![1] }).unwrap();
        assert_eq!(z3.to_string(), "001");
        assert!(apply_burst(&x, &BurstEvent { pos: 4, t: 4, ins: vec![] }).is_err());
        assert!(apply_burst(&x, &BurstEvent { pos: 1, t: 0, ins: vec![] }).is_err());
        assert!(apply_burst(&w("00", 2), &BurstEvent { pos: 1, t: 3, ins: vec![] }).is_err());
    }

    #[test]
    fn exact_burst_examples() {
        let x = w("011110", 2);
        // first inserted symbol equals the first deleted one -> not exact
        assert!(!is_exact_burst(&x, &BurstEvent { pos: 2, t: 4, ins: vec![1, 0, 1] }).unwrap());
        assert!(is_exact_burst(&x, &BurstEvent { pos: 3, t: 2, ins: vec![0] }).unwrap());
        assert!(is_exact_burst(&x, &BurstEvent { pos: 1, t: 1, ins: vec![1] }).unwrap());
        // last inserted equals last deleted -> not exact either
        assert!(!is_exact_burst(&x, &BurstEvent { pos: 2, t: 4, ins: vec![0, 1, 1] }).unwrap());
        assert!(is_exact_burst(&x, &BurstEvent { pos: 1, t: 0, ins: vec![1] }).is_err());
    }

    #[test]
    fn ball_examples() {
        let b = ball(&w("00000", 2), 2, 1).unwrap();
        assert_eq!(b.size(), 5);
        let b2 = ball(&w("012", 3), 1, 1).unwrap();
        assert_eq!(b2.size(), 7);
        assert!(b2.contains(&w("011", 3)));
        assert!(!b2.contains(&w("000", 3)));
        // deleting more symbols than the word has is rejected
        assert!(ball(&w("01", 2), 3, 1).is_err());
    }

    #[test]
    fn ball_matches_closed_form_small() {
        for q in [2u64, 3] {
            for n in 1..=5usize {
                for t in 0..=n.min(3) {
                    for s in 1..=3usize {
                        if t + s == 0 {
                            continue;
                        }
                        let x = Word::zeros(q, n).unwrap();
                        let b = ball(&x, t, s).unwrap();
                        let expected = ball_size_formula(n, q, t, s).unwrap();
                        assert_eq!(b.size() as u128, expected, "q={q} n={n} t={t} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn partition_cells_tile_the_ball() {
        for (word, t, s) in [("0110", 2, 2), ("0120", 2, 1), ("00000", 1, 3), ("012", 3, 2)] {
            let x = w(word, 3);
            let cells = ball_partition(&x, t, s).unwrap();
            let b = ball(&x, t, s).unwrap();
            let n = x.len();
            let q = x.q() as usize;
            let mut all: Vec<Word> = Vec::new();
            for cell in &cells {
                let expected = if cell.index == n - t + 2 {
                    q.pow(s as u32 - 1)
                } else {
                    (q - 1) * q.pow(s as u32 - 1)
                };
                assert_eq!(cell.members.len(), expected, "cell {}", cell.index);
                all.extend(cell.members.iter().cloned());
            }
            let total = all.len();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), total, "cells overlap");
            assert_eq!(all, b.members(), "cells do not tile the ball");
        }
    }

    #[test]
    fn burst_outcome_structural_check() {
        let x = w("011110", 2);
        let z = apply_burst(&x, &BurstEvent { pos: 2, t: 3, ins: vec![0, 1] }).unwrap();
        assert!(is_burst_outcome(&x, &z, 3, 2));
        assert!(!is_burst_outcome(&x, &w("11111", 2), 3, 2));
        assert!(!is_burst_outcome(&x, &z, 2, 2));
        assert!(is_burst_outcome(&x, &x, 2, 2));
    }

    #[test]
    fn inversion_examples() {
        let x = w("012301230123", 4);
        assert_eq!(apply_inversion(&x, 1, 4).unwrap().to_string(), "321001230123");
        assert_eq!(apply_inversion(&w("010", 2), 1, 3).unwrap().to_string(), "010");
        assert!(apply_inversion(&x, 10, 4).is_err());
    }

    #[test]
    fn absorption_a_examples() {
        let x = w("01231113", 4);
        assert_eq!(apply_absorption_a(&x, 6).unwrap().to_string(), "0123123");
        assert_eq!(apply_absorption_a(&x, 7).unwrap().to_string(), "0123113");
        assert_eq!(apply_absorption_a(&x, 8).unwrap().to_string(), "0123111");
        assert!(apply_absorption_a(&x, 9).is_err());
    }

    #[test]
    fn absorption_b_examples() {
        let x = w("01231312", 4);
        assert_eq!(apply_absorption_b(&x, 4, 0).unwrap().to_string(), "01203312");
        assert_eq!(apply_absorption_b(&x, 4, 2).unwrap().to_string(), "01222312");
        assert_eq!(apply_absorption_b(&x, 8, 1).unwrap().to_string(), "01231311");
        assert!(apply_absorption_b(&x, 4, 3).is_err());
        assert!(apply_absorption_b(&x, 2, 1).is_err());
    }

    #[test]
    fn localized_deletion_examples() {
        let x = w("0123456", 8);
        let z = apply_localized_deletions(&x, 2, 3, &[0, 2]).unwrap();
        assert_eq!(z.to_string(), "02456");
        assert_eq!(apply_localized_deletions(&x, 5, 3, &[1]).unwrap().to_string(), "012346");
        assert!(apply_localized_deletions(&x, 6, 3, &[0]).is_err());
        assert!(apply_localized_deletions(&x, 2, 3, &[3]).is_err());
        assert!(apply_localized_deletions(&x, 2, 3, &[]).is_err());
    }

    #[test]
    fn corruptions_land_in_their_bursts() {
        // every absorption outcome sits in the promised burst ball
        let x = w("0213", 4);
        for i in 1..=4usize {
            let z = apply_absorption_a(&x, i).unwrap();
            assert!(is_burst_outcome(&x, &z, 2, 1), "absorption A at {i}");
        }
        for i in 1..=4usize {
            let old = x.sym(i as i64);
            for nv in 0..old {
                let z = apply_absorption_b(&x, i, nv).unwrap();
                assert!(is_burst_outcome(&x, &z, 2, 2), "absorption B at {i}");
            }
        }
    }

    proptest! {
        #[test]
        fn ball_size_is_center_independent(
            symbols in proptest::collection::vec(0u64..3, 4..7),
            t in 1usize..3,
            s in 1usize..3,
        ) {
            let x = Word::new(3, symbols).unwrap();
            let zero = Word::zeros(3, x.len()).unwrap();
            prop_assert_eq!(ball(&x, t, s).unwrap().size(), ball(&zero, t, s).unwrap().size());
        }

        #[test]
        fn burst_outcomes_are_ball_members(
            symbols in proptest::collection::vec(0u64..3, 4..8),
            pos_seed in 0usize..16,
            ins in proptest::collection::vec(0u64..3, 0..3),
            t in 0usize..3,
        ) {
            prop_assume!(t + ins.len() >= 1);
            let x = Word::new(3, symbols).unwrap();
            prop_assume!(t <= x.len());
            let hi = if t == 0 { x.len() + 1 } else { x.len() - t + 1 };
            let pos = 1 + pos_seed % hi;
            let event = BurstEvent { pos, t, ins };
            let z = apply_burst(&x, &event).unwrap();
            prop_assert!(ball(&x, t, event.s()).unwrap().contains(&z));
            prop_assert!(is_burst_outcome(&x, &z, t, event.s()));
        }

        #[test]
        fn inversions_embed_in_bursts(
            symbols in proptest::collection::vec(0u64..4, 4..8),
            i_seed in 0usize..16,
            len in 2usize..4,
        ) {
            let x = Word::new(4, symbols).unwrap();
            prop_assume!(len <= x.len());
            let i = 1 + i_seed % (x.len() - len + 1);
            let z = apply_inversion(&x, i, len).unwrap();
            for t in len..=x.len().min(len + 1) {
                prop_assert!(is_burst_outcome(&x, &z, t, t));
            }
        }
    }
}
