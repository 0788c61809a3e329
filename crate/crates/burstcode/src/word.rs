//! Words over a finite alphabet and the transforms the code constructions
//! are built from: weights, VT syndromes, array rows, the base-q lifting
//! map, signatures, monotone segments, marker sequences, and indicators.
//!
//! Coordinates are 1-based in all public APIs, matching the usual
//! coding-theory conventions; `x_i` reads as 0 whenever `i` is outside
//! `[1, n]`.

use crate::error::{CodeError, Result};
use std::fmt;

/// A word over the alphabet `{0, 1, ..., q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    q: u64,
    symbols: Vec<u64>,
}

/// Which side of a segment a context block is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextSide {
    Left,
    Right,
}

impl Word {
    /// Builds a word, validating that every symbol fits the alphabet.
    pub fn new(q: u64, symbols: Vec<u64>) -> Result<Self> {
        if q < 2 {
            return Err(CodeError::AlphabetTooSmall(q));
        }
        for &s in &symbols {
            if s >= q {
                return Err(CodeError::SymbolOutOfRange { symbol: s, q });
            }
        }
        Ok(Word { q, symbols })
    }

    /// The all-zero word of length `n`.
    pub fn zeros(q: u64, n: usize) -> Result<Self> {
        Word::new(q, vec![0; n])
    }

    /// Parses the text form: a digit string for `q <= 10` (e.g. `01021`),
    /// comma-separated decimal symbols for larger alphabets (e.g. `12,0,33`).
    pub fn parse(input: &str, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(CodeError::AlphabetTooSmall(q));
        }
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Word::new(q, Vec::new());
        }
        let symbols: Vec<u64> = if q <= 10 {
            trimmed
                .chars()
                .map(|ch| {
                    ch.to_digit(10).map(u64::from).ok_or_else(|| CodeError::ParseError {
                        input: input.to_string(),
                        reason: format!("invalid digit {ch:?}"),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            trimmed
                .split(',')
                .map(|part| {
                    part.trim().parse::<u64>().map_err(|e| CodeError::ParseError {
                        input: input.to_string(),
                        reason: format!("invalid symbol {part:?}: {e}"),
                    })
                })
                .collect::<Result<_>>()?
        };
        Word::new(q, symbols)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u64> {
        self.symbols
    }

    /// 1-based symbol access; positions outside `[1, n]` read as 0.
    pub fn sym(&self, i: i64) -> u64 {
        if i >= 1 && (i as usize) <= self.symbols.len() {
            self.symbols[i as usize - 1]
        } else {
            0
        }
    }

    /// `Sum(x)`: the sum of all symbols as an integer.
    pub fn sum_weight(&self) -> u64 {
        self.symbols.iter().sum()
    }

    /// `VT(x) = sum_i i * x_i`, the position-weighted syndrome.
    pub fn vt_syndrome(&self) -> u64 {
        self.symbols.iter().enumerate().map(|(idx, &v)| (idx as u64 + 1) * v).sum()
    }

    /// Row `i` of the `t`-row array arrangement: symbols
    /// `x_i, x_{t+i}, x_{2t+i}, ...`. Rows may be empty when `t > n`.
    pub fn array_row(&self, t: usize, i: usize) -> Result<Word> {
        if t == 0 || i == 0 || i > t {
            return Err(CodeError::InvalidParams(format!("array row index {i} outside [1, {t}]")));
        }
        let row = self.symbols.iter().skip(i - 1).step_by(t).copied().collect();
        Word::new(self.q, row)
    }

    /// The lifting map: groups symbols into blocks of `d` (the final block
    /// may be shorter) and encodes each block as a single base-`q` value,
    /// least-significant symbol first. The result is a word over `q^d`.
    pub fn lift(&self, d: usize) -> Result<Word> {
        if d == 0 {
            return Err(CodeError::InvalidParams("lift block size must be >= 1".into()));
        }
        let qd = self.q.checked_pow(d as u32).ok_or_else(|| {
            CodeError::InvalidParams(format!("alphabet {}^{d} overflows", self.q))
        })?;
        let mut out = Vec::with_capacity(self.symbols.len().div_ceil(d));
        for block in self.symbols.chunks(d) {
            let mut value = 0u64;
            for (k, &s) in block.iter().enumerate() {
                value += self.q.pow(k as u32) * s;
            }
            out.push(value);
        }
        Word::new(qd, out)
    }

    /// Inverts [`Word::lift`]: decodes a word over `q^d` back to a length-`n`
    /// word over `q`. Fails when the input cannot arise as a lift of any
    /// length-`n` word.
    pub fn unlift(lifted: &Word, d: usize, q: u64, n: usize) -> Result<Word> {
        if d == 0 {
            return Err(CodeError::InvalidParams("lift block size must be >= 1".into()));
        }
        let qd = q
            .checked_pow(d as u32)
            .ok_or_else(|| CodeError::InvalidParams(format!("alphabet {q}^{d} overflows")))?;
        if lifted.q != qd {
            return Err(CodeError::AlphabetMismatch { expected: qd, got: lifted.q });
        }
        let cols = n.div_ceil(d);
        if lifted.len() != cols {
            return Err(CodeError::LengthMismatch { expected: cols, got: lifted.len() });
        }
        let mut out = Vec::with_capacity(n);
        for (j, &value) in lifted.symbols.iter().enumerate() {
            let width = if (j + 1) * d <= n { d } else { n - (cols - 1) * d };
            if value >= q.pow(width as u32) {
                return Err(CodeError::NotInLiftImage(format!(
                    "column {} holds {value}, which needs more than {width} base-{q} digits",
                    j + 1
                )));
            }
            let mut v = value;
            for _ in 0..width {
                out.push(v % q);
                v /= q;
            }
        }
        Word::new(q, out)
    }

    /// The binary signature: bit `i` is 1 exactly when `x_i >= x_{i-1}`,
    /// with `x_0 = 0` (so the first bit is always 1 for nonempty words).
    pub fn signature(&self) -> Word {
        let mut prev = 0u64;
        let bits = self
            .symbols
            .iter()
            .map(|&v| {
                let bit = u64::from(v >= prev);
                prev = v;
                bit
            })
            .collect();
        Word { q: 2, symbols: bits }
    }

    /// Splits `(0, x)` into maximal monotone segments and returns the
    /// segment start coordinates. Segments alternate between nondecreasing
    /// and strictly decreasing, starting nondecreasing; consecutive segments
    /// share their boundary coordinate.
    pub fn segment_starts(&self) -> SegmentStarts {
        let n = self.symbols.len();
        let mut starts = vec![0usize];
        let mut ascending = true;
        let mut prev = 0u64;
        for (idx, &v) in self.symbols.iter().enumerate() {
            let keeps = if ascending { v >= prev } else { v < prev };
            if !keeps {
                starts.push(idx);
                ascending = !ascending;
            }
            prev = v;
        }
        starts.push(n);
        SegmentStarts { starts }
    }

    /// The length-`(t-1)` context block on one side of segment `j`: the
    /// symbols just left of the segment start (`Left`) or just right of the
    /// segment end (`Right`). Out-of-range coordinates contribute 0.
    pub fn segment_context(&self, j: usize, t: usize, side: ContextSide) -> Result<Word> {
        if t == 0 {
            return Err(CodeError::InvalidParams("context width requires t >= 1".into()));
        }
        let starts = self.segment_starts();
        let m = starts.count();
        if j == 0 || j > m {
            return Err(CodeError::PositionOutOfRange { pos: j, lo: 1, hi: m });
        }
        let block: Vec<u64> = match side {
            ContextSide::Left => {
                let anchor = starts.start(j) as i64;
                (1..t as i64).map(|c| self.sym(anchor - t as i64 + c)).collect()
            }
            ContextSide::Right => {
                let anchor = starts.start(j + 1) as i64;
                (1..t as i64).map(|c| self.sym(anchor + c)).collect()
            }
        };
        Word::new(self.q, block)
    }

    /// The marker sequence of a binary word: the coordinates of its ones,
    /// in increasing order.
    pub fn marker(&self) -> Result<MarkerSequence> {
        self.require_binary()?;
        let positions = self
            .symbols
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(idx, _)| idx as u64 + 1)
            .collect();
        Ok(MarkerSequence { positions })
    }

    /// Bitwise complement of a binary word.
    pub fn complement(&self) -> Result<Word> {
        self.require_binary()?;
        Ok(Word { q: 2, symbols: self.symbols.iter().map(|&v| 1 - v).collect() })
    }

    /// The parity indicator: bit `i` is 1 exactly when `x_i` is odd.
    pub fn indicator(&self) -> Word {
        Word { q: 2, symbols: self.symbols.iter().map(|&v| v % 2).collect() }
    }

    /// Appends zeros until the length is a multiple of `d`.
    pub fn pad_to_multiple(&self, d: usize) -> Result<Word> {
        if d == 0 {
            return Err(CodeError::InvalidParams("pad block size must be >= 1".into()));
        }
        let mut symbols = self.symbols.clone();
        symbols.resize(self.symbols.len() + (d - self.symbols.len() % d) % d, 0);
        Ok(Word { q: self.q, symbols })
    }

    fn require_binary(&self) -> Result<()> {
        if self.q != 2 {
            return Err(CodeError::AlphabetMismatch { expected: 2, got: self.q });
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else {
            for (idx, &s) in self.symbols.iter().enumerate() {
                if idx > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

/// Start coordinates of the maximal monotone segments of `(0, x)`:
/// `0 = S_1 < S_2 < ... < S_{m+1} = n` for a word with `m` segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentStarts {
    starts: Vec<usize>,
}

impl SegmentStarts {
    /// Number of segments `m`.
    pub fn count(&self) -> usize {
        self.starts.len() - 1
    }

    /// `S_j` for `j` in `[1, m+1]`.
    pub fn start(&self, j: usize) -> usize {
        self.starts[j - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.starts
    }

    /// Rebuilds the signature word from the segment run-lengths: segment `j`
    /// contributes `S_{j+1} - S_j` copies of bit `j mod 2` (1 for odd `j`).
    pub fn to_signature(&self) -> Word {
        let mut bits = Vec::with_capacity(*self.starts.last().unwrap_or(&0));
        for j in 1..=self.count() {
            let bit = u64::from(j % 2 == 1);
            bits.extend(std::iter::repeat_n(bit, self.start(j + 1) - self.start(j)));
        }
        Word { q: 2, symbols: bits }
    }

    /// Recovers segment starts from a signature word (the inverse of
    /// [`SegmentStarts::to_signature`] on valid signatures, which always
    /// begin with 1).
    pub fn from_signature(signature: &Word) -> Result<SegmentStarts> {
        if signature.q() != 2 {
            return Err(CodeError::AlphabetMismatch { expected: 2, got: signature.q() });
        }
        let bits = signature.symbols();
        if let Some(&first) = bits.first() {
            if first != 1 {
                return Err(CodeError::InvalidParams("a signature always starts with 1".into()));
            }
        }
        let mut starts = vec![0usize];
        for i in 1..bits.len() {
            if bits[i] != bits[i - 1] {
                starts.push(i);
            }
        }
        starts.push(bits.len());
        Ok(SegmentStarts { starts })
    }
}

/// The marker sequence of a binary word: coordinates of its ones. Its
/// length always equals the weight of the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerSequence {
    positions: Vec<u64>,
}

impl MarkerSequence {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[u64] {
        &self.positions
    }
}

/// Sum of row `i` (1-based) of the `k`-row array arrangement of an
/// arbitrary integer sequence. Empty rows sum to zero, which matters when
/// the sequence is shorter than `k`.
pub fn array_row_sum(seq: &[u64], k: usize, i: usize) -> u64 {
    seq.iter().skip(i - 1).step_by(k).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str, q: u64) -> Word {
        Word::parse(s, q).unwrap()
    }

    #[test]
    fn rejects_bad_symbols_and_alphabets() {
        assert!(matches!(Word::new(2, vec![0, 2]), Err(CodeError::SymbolOutOfRange { .. })));
        assert!(matches!(Word::new(1, vec![]), Err(CodeError::AlphabetTooSmall(1))));
        assert!(Word::parse("012", 2).is_err());
    }

    #[test]
    fn parses_and_formats_both_text_forms() {
        let small = w("01021", 3);
        assert_eq!(small.to_string(), "01021");
        let large = Word::parse("12, 0, 33", 36).unwrap();
        assert_eq!(large.symbols(), &[12, 0, 33]);
        assert_eq!(large.to_string(), "12,0,33");
        assert_eq!(Word::parse("", 5).unwrap().len(), 0);
    }

    #[test]
    fn sum_weight_examples() {
        assert_eq!(w("132434412132", 5).sum_weight(), 30);
        assert_eq!(w("0000", 2).sum_weight(), 0);
        assert_eq!(w("1111", 2).sum_weight(), 4);
    }

    #[test]
    fn vt_syndrome_examples() {
        assert_eq!(w("01010011", 2).vt_syndrome(), 21);
        assert_eq!(w("1111", 2).vt_syndrome(), 10);
        assert_eq!(Word::parse("", 2).unwrap().vt_syndrome(), 0);
    }

    #[test]
    fn array_rows_interleave() {
        let x = w("123456", 7);
        assert_eq!(x.array_row(2, 1).unwrap().symbols(), &[1, 3, 5]);
        assert_eq!(x.array_row(2, 2).unwrap().symbols(), &[2, 4, 6]);
        let odd = w("12345", 7);
        assert_eq!(odd.array_row(2, 1).unwrap().symbols(), &[1, 3, 5]);
        assert_eq!(odd.array_row(2, 2).unwrap().symbols(), &[2, 4]);
        assert!(odd.array_row(2, 3).is_err());
        // rows beyond the word length are empty
        assert_eq!(w("101", 2).array_row(8, 5).unwrap().len(), 0);
    }

    #[test]
    fn lift_packs_blocks_least_significant_first() {
        let x = w("0111", 2);
        let lifted = x.lift(2).unwrap();
        assert_eq!(lifted.q(), 4);
        assert_eq!(lifted.symbols(), &[2, 3]);
        let y = w("01011", 2).lift(2).unwrap();
        assert_eq!(y.symbols(), &[2, 2, 1]);
    }

    #[test]
    fn unlift_round_trips_and_rejects_non_images() {
        let x = w("01011", 2);
        let lifted = x.lift(2).unwrap();
        assert_eq!(Word::unlift(&lifted, 2, 2, 5).unwrap(), x);
        // final column must fit in the short block width
        let bad = Word::new(4, vec![2, 2, 2]).unwrap();
        assert!(matches!(Word::unlift(&bad, 2, 2, 5), Err(CodeError::NotInLiftImage(_))));
        let wrong_len = Word::new(4, vec![2, 2]).unwrap();
        assert!(Word::unlift(&wrong_len, 2, 2, 5).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(w("132434412132", 5).signature().to_string(), "110101101010");
        assert_eq!(w("2213123121", 4).signature().to_string(), "1101011010");
        assert_eq!(w("00", 2).signature().to_string(), "11");
        assert_eq!(w("30", 4).signature().to_string(), "10");
    }

    #[test]
    fn segment_starts_examples() {
        assert_eq!(
            w("132434412132", 5).segment_starts().as_slice(),
            &[0, 2, 3, 4, 5, 7, 8, 9, 10, 11, 12]
        );
        assert_eq!(w("0123", 4).segment_starts().as_slice(), &[0, 4]);
        assert_eq!(w("30", 4).segment_starts().as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn segment_starts_and_signature_runs_agree() {
        // the run-length identity, checked both ways on a worked example
        let x = w("132434412132", 5);
        let starts = x.segment_starts();
        assert_eq!(starts.to_signature(), x.signature());
        assert_eq!(SegmentStarts::from_signature(&x.signature()).unwrap(), starts);
    }

    #[test]
    fn segment_context_examples() {
        let x = w("132434412132", 5);
        assert_eq!(x.segment_context(1, 2, ContextSide::Left).unwrap().symbols(), &[0]);
        assert_eq!(x.segment_context(5, 2, ContextSide::Left).unwrap().symbols(), &[4]);
        assert_eq!(x.segment_context(5, 2, ContextSide::Right).unwrap().symbols(), &[1]);
        // right context of the final segment runs past the end -> zeros
        assert_eq!(x.segment_context(10, 2, ContextSide::Right).unwrap().symbols(), &[0]);
        assert!(x.segment_context(11, 2, ContextSide::Left).is_err());
    }

    #[test]
    fn marker_and_complement_examples() {
        let x = w("01010011", 2);
        assert_eq!(x.marker().unwrap().positions(), &[2, 4, 7, 8]);
        assert_eq!(x.complement().unwrap().to_string(), "10101100");
        assert_eq!(w("0000", 2).marker().unwrap().len(), 0);
        assert!(w("012", 3).marker().is_err());
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(w("0123", 4).indicator().to_string(), "0101");
        assert_eq!(w("132434412132", 5).indicator().to_string(), "110010010110");
    }

    #[test]
    fn pad_to_multiple_examples() {
        assert_eq!(w("011", 2).pad_to_multiple(2).unwrap().to_string(), "0110");
        assert_eq!(w("0110", 2).pad_to_multiple(2).unwrap().to_string(), "0110");
        assert_eq!(Word::parse("", 2).unwrap().pad_to_multiple(3).unwrap().len(), 0);
    }

    #[test]
    fn empty_array_rows_sum_to_zero() {
        assert_eq!(array_row_sum(&[], 4, 2), 0);
        assert_eq!(array_row_sum(&[5, 6], 4, 3), 0);
        assert_eq!(array_row_sum(&[1, 2, 3, 4, 5], 2, 1), 9);
    }

    proptest! {
        #[test]
        fn lift_unlift_round_trip(symbols in proptest::collection::vec(0u64..3, 0..20), d in 1usize..4) {
            let x = Word::new(3, symbols).unwrap();
            let lifted = x.lift(d).unwrap();
            prop_assert_eq!(Word::unlift(&lifted, d, 3, x.len()).unwrap(), x);
        }

        #[test]
        fn vt_complement_identity(symbols in proptest::collection::vec(0u64..2, 0..30)) {
            let x = Word::new(2, symbols).unwrap();
            let n = x.len() as u64;
            prop_assert_eq!(
                x.vt_syndrome() + x.complement().unwrap().vt_syndrome(),
                n * (n + 1) / 2
            );
        }

        #[test]
        fn marker_length_equals_weight(symbols in proptest::collection::vec(0u64..2, 0..30)) {
            let x = Word::new(2, symbols).unwrap();
            prop_assert_eq!(x.marker().unwrap().len() as u64, x.sum_weight());
        }

        #[test]
        fn signature_equals_segment_run_lengths(symbols in proptest::collection::vec(0u64..4, 1..24)) {
            let x = Word::new(4, symbols).unwrap();
            let starts = x.segment_starts();
            prop_assert_eq!(starts.to_signature(), x.signature());
            prop_assert_eq!(SegmentStarts::from_signature(&x.signature()).unwrap(), starts);
        }

        #[test]
        fn segments_strictly_increase_and_cover(symbols in proptest::collection::vec(0u64..4, 0..24)) {
            let x = Word::new(4, symbols).unwrap();
            let s = x.segment_starts();
            let sl = s.as_slice();
            prop_assert_eq!(sl[0], 0);
            prop_assert_eq!(*sl.last().unwrap(), x.len());
            for w in sl.windows(2) {
                prop_assert!(w[0] < w[1] || (x.is_empty() && w[0] == w[1]));
            }
        }
    }
}
