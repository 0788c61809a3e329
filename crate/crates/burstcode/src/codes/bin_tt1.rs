//! The binary `P`-bounded `(t, t-1)`-burst correcting code. Membership is
//! five constraint families with `k = ⌊t²/2⌋`:
//!
//! * `VT(x) ≡ a1 (mod tP)` and `Sum(x) ≡ a2 (mod 2t)`;
//! * row sums of the `k`-row array of `x` modulo 2;
//! * row sums of the `k`-row arrays of the marker sequences of `x` and of
//!   its complement, modulo `t`.
//!
//! The construction has a uniqueness proof but no closed-form decoder, so
//! decoding is a bounded exhaustive search: all burst positions inside the
//! window times all `2^t` replacement blocks, filtered by membership. At
//! most one distinct survivor can exist; two survivors would contradict
//! the code's correctness and are reported as [`CodeError::AmbiguousDecode`].

use crate::error::{CodeError, Result};
use crate::word::{array_row_sum, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinTT1Code {
    pub n: usize,
    pub t: usize,
    /// Window bound: the decoder is guaranteed correct whenever all
    /// erroneous coordinates lie in a known interval of length `P`.
    /// `P = n` is the unbounded case.
    pub p: usize,
    pub a1: u64,
    pub a2: u64,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub c_prime: Vec<u64>,
}

/// The five residue families of a word under Construction-2 constraints.
pub type BinResidues = (u64, u64, Vec<u64>, Vec<u64>, Vec<u64>);

impl BinTT1Code {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        t: usize,
        p: usize,
        a1: u64,
        a2: u64,
        b: Vec<u64>,
        c: Vec<u64>,
        c_prime: Vec<u64>,
    ) -> Result<Self> {
        if t < 2 {
            return Err(CodeError::InvalidParams(format!(
                "the binary (t,t-1) construction needs t >= 2, got {t}"
            )));
        }
        if p < t || p > n {
            return Err(CodeError::InvalidParams(format!(
                "window bound must satisfy t <= P <= n, got P={p} t={t} n={n}"
            )));
        }
        let k = t * t / 2;
        let code = BinTT1Code { n, t, p, a1, a2, b, c, c_prime };
        if code.b.len() != k || code.c.len() != k || code.c_prime.len() != k {
            return Err(CodeError::InvalidParams(format!(
                "residue vectors must have k = {k} entries"
            )));
        }
        let tp = (t * p) as u64;
        if code.a1 >= tp
            || code.a2 >= 2 * t as u64
            || code.b.iter().any(|&v| v >= 2)
            || code.c.iter().any(|&v| v >= t as u64)
            || code.c_prime.iter().any(|&v| v >= t as u64)
        {
            return Err(CodeError::InvalidParams(
                "residues must be reduced modulo their moduli".into(),
            ));
        }
        Ok(code)
    }

    /// The parameter class containing `x`, for a given `t` and window
    /// bound `P`.
    pub fn for_word(x: &Word, t: usize, p: usize) -> Result<Self> {
        let (a1, a2, b, c, c_prime) = Self::residues_raw(x, t, p)?;
        BinTT1Code::new(x.len(), t, p, a1, a2, b, c, c_prime)
    }

    pub fn k(&self) -> usize {
        self.t * self.t / 2
    }

    /// Number of parameter classes.
    pub fn space_size(&self) -> u128 {
        let k = self.k() as u32;
        (self.t as u128 * self.p as u128)
            * (2 * self.t as u128)
            * (1u128 << k)
            * (self.t as u128).pow(k)
            * (self.t as u128).pow(k)
    }

    fn residues_raw(x: &Word, t: usize, p: usize) -> Result<BinResidues> {
        let k = t * t / 2;
        let marker = x.marker()?;
        let co_marker = x.complement()?.marker()?;
        let rows = |seq: &[u64], m: u64| -> Vec<u64> {
            (1..=k).map(|i| array_row_sum(seq, k, i) % m).collect()
        };
        Ok((
            x.vt_syndrome() % (t * p) as u64,
            x.sum_weight() % (2 * t) as u64,
            rows(x.symbols(), 2),
            rows(marker.positions(), t as u64),
            rows(co_marker.positions(), t as u64),
        ))
    }

    pub fn residues(&self, x: &Word) -> Result<BinResidues> {
        self.check_shape(x)?;
        Self::residues_raw(x, self.t, self.p)
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        let (a1, a2, b, c, c_prime) = self.residues(x)?;
        Ok(a1 == self.a1 && a2 == self.a2 && b == self.b && c == self.c && c_prime == self.c_prime)
    }

    fn check_shape(&self, x: &Word) -> Result<()> {
        if x.q() != 2 {
            return Err(CodeError::AlphabetMismatch { expected: 2, got: x.q() });
        }
        if x.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    /// Decodes a received word that arose from a codeword by a
    /// `(t, t-1)`-burst whose erroneous coordinates lie in `window`
    /// (1-based, inclusive; `None` searches the whole word). The window may
    /// be shorter than `t`; it is widened to fit one full burst, which
    /// stays inside a single length-`P` interval and so preserves the
    /// uniqueness guarantee.
    pub fn decode(&self, z: &Word, window: Option<(usize, usize)>) -> Result<Word> {
        if z.q() != 2 {
            return Err(CodeError::AlphabetMismatch { expected: 2, got: z.q() });
        }
        if z.len() + 1 != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n - 1, got: z.len() });
        }
        let n = self.n;
        let t = self.t;
        let (mut lo, mut hi) = match window {
            Some((lo, hi)) => {
                if lo < 1 || hi > n || lo > hi {
                    return Err(CodeError::InvalidWindow(format!(
                        "window [{lo},{hi}] must lie in [1,{n}]"
                    )));
                }
                (lo, hi)
            }
            None => (1, n),
        };
        while hi - lo + 1 < t && hi < n {
            hi += 1;
        }
        while hi - lo + 1 < t && lo > 1 {
            lo -= 1;
        }

        let mut survivors: Vec<Word> = Vec::new();
        let zs = z.symbols();
        for i in lo..=hi.saturating_sub(t - 1).min(n - t + 1) {
            for block in 0..(1u64 << t) {
                let mut symbols = Vec::with_capacity(n);
                symbols.extend_from_slice(&zs[..i - 1]);
                symbols.extend((0..t).map(|j| (block >> (t - 1 - j)) & 1));
                symbols.extend_from_slice(&zs[i + t - 2..]);
                let candidate = Word::new(2, symbols).expect("binary candidate");
                if self.is_member(&candidate)? && !survivors.contains(&candidate) {
                    survivors.push(candidate);
                }
            }
        }
        match survivors.len() {
            0 => Err(CodeError::DecodeFailure(
                "no codeword explains the received word within the window".into(),
            )),
            1 => Ok(survivors.pop().expect("one survivor")),
            k => Err(CodeError::AmbiguousDecode(format!(
                "{k} distinct codewords explain the received word"
            ))),
        }
    }
}
