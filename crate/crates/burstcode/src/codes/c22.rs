//! The `(2, 2)`-burst correcting code over `Σ_q^n`. A codeword is pinned
//! down by three congruences on its two-row array arrangement: each row sum
//! modulo `2q`, and a weighted VT syndrome modulo `q(q-1)(n-1) + 1`.
//!
//! A `(2, 2)`-burst rewrites two adjacent symbols, which always land in
//! different array rows. The row-sum residues reveal the per-row error
//! magnitudes, and the weighted syndrome then locates the affected column.

use crate::channel::is_burst_outcome;
use crate::error::{CodeError, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C22Code {
    pub n: usize,
    pub q: u64,
    pub a1: u64,
    pub a2: u64,
    pub a3: u64,
}

impl C22Code {
    pub fn new(n: usize, q: u64, a1: u64, a2: u64, a3: u64) -> Result<Self> {
        if q < 2 {
            return Err(CodeError::AlphabetTooSmall(q));
        }
        if n < 2 {
            return Err(CodeError::InvalidParams(format!(
                "a (2,2)-burst needs words of length >= 2, got {n}"
            )));
        }
        let code = C22Code { n, q, a1, a2, a3 };
        if a1 >= 2 * q || a2 >= 2 * q || a3 >= code.modulus() {
            return Err(CodeError::InvalidParams(
                "residues must be reduced modulo their moduli".into(),
            ));
        }
        Ok(code)
    }

    /// The parameter class containing `x`.
    pub fn for_word(x: &Word) -> Result<Self> {
        let (a1, a2, a3) = Self::syndrome_raw(x)?;
        C22Code::new(x.len(), x.q(), a1, a2, a3)
    }

    /// Modulus of the weighted VT syndrome: `q(q-1)(n-1) + 1`.
    pub fn modulus(&self) -> u64 {
        self.q * (self.q - 1) * (self.n as u64 - 1) + 1
    }

    /// Number of parameter classes; the pigeonhole guarantee is that the
    /// best class has at least `q^n / space_size()` codewords.
    pub fn space_size(&self) -> u128 {
        4 * (self.q as u128) * (self.q as u128) * self.modulus() as u128
    }

    fn syndrome_raw(x: &Word) -> Result<(u64, u64, u64)> {
        let n = x.len();
        if n < 2 {
            return Err(CodeError::InvalidParams("need length >= 2".into()));
        }
        let q = x.q();
        let modulus = q * (q - 1) * (n as u64 - 1) + 1;
        let row1 = x.array_row(2, 1)?;
        let row2 = x.array_row(2, 2)?;
        let wvt = row1.vt_syndrome() + (2 * q - 1) * row2.vt_syndrome();
        Ok((row1.sum_weight() % (2 * q), row2.sum_weight() % (2 * q), wvt % modulus))
    }

    /// The three residues of `x` under this code's moduli.
    pub fn syndrome(&self, x: &Word) -> Result<(u64, u64, u64)> {
        self.check_shape(x)?;
        Self::syndrome_raw(x)
    }

    pub fn residue_vec(&self) -> Vec<u64> {
        vec![self.a1, self.a2, self.a3]
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        Ok(self.syndrome(x)? == (self.a1, self.a2, self.a3))
    }

    fn check_shape(&self, x: &Word) -> Result<()> {
        if x.q() != self.q {
            return Err(CodeError::AlphabetMismatch { expected: self.q, got: x.q() });
        }
        if x.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    /// Decodes a received word that arose from a codeword by a
    /// `(2, 2)`-burst (possibly rewriting nothing). Returns the unique
    /// codeword, or a decode failure when the word is in no codeword's ball.
    pub fn decode(&self, z: &Word) -> Result<Word> {
        self.check_shape(z)?;
        let q = self.q as i64;
        let modulus = self.modulus() as i64;
        let (s1, s2, s3) = Self::syndrome_raw(z)?;

        // per-row error magnitudes, each in [-(q-1), q-1]
        let delta = |obs: u64, target: u64| -> Option<i64> {
            let r = (obs as i64 - target as i64).rem_euclid(2 * q);
            if r < q {
                Some(r)
            } else if r > q {
                Some(r - 2 * q)
            } else {
                None // residue exactly q cannot come from a (2,2)-burst
            }
        };
        let d1 = delta(s1, self.a1)
            .ok_or_else(|| CodeError::DecodeFailure("row-1 residue inconsistent".into()))?;
        let d2 = delta(s2, self.a2)
            .ok_or_else(|| CodeError::DecodeFailure("row-2 residue inconsistent".into()))?;

        // candidate syndrome offsets with the sign fixed by (d1, d2); the
        // offset magnitude never exceeds q(q-1)n, which allows at most two
        // candidates per sign
        let base = (s3 as i64 - self.a3 as i64).rem_euclid(modulus);
        let dmax = q * (q - 1) * self.n as i64;
        let positive = d2 > 0 || (d2 == 0 && d1 >= 0);
        let mut offsets = Vec::new();
        if positive {
            let mut v = base;
            while v <= dmax {
                offsets.push(v);
                v += modulus;
            }
        } else {
            let mut v = base - modulus;
            while v >= -dmax {
                offsets.push(v);
                v -= modulus;
            }
            if base == 0 {
                offsets.push(0);
            }
        }

        let mut candidates: Vec<Word> = Vec::new();
        let mut push_fix = |cells: &[(usize, i64)]| {
            let mut symbols = z.symbols().to_vec();
            for &(pos, d) in cells {
                let v = symbols[pos - 1] as i64 - d;
                if v < 0 || v >= q {
                    return;
                }
                symbols[pos - 1] = v as u64;
            }
            let fixed = Word::new(self.q, symbols).expect("fix stays in alphabet");
            if Self::syndrome_raw(&fixed).ok() == Some((self.a1, self.a2, self.a3))
                && !candidates.contains(&fixed)
            {
                candidates.push(fixed);
            }
        };

        for &off in &offsets {
            match (d1, d2) {
                (0, 0) => {
                    if off == 0 {
                        push_fix(&[]);
                    }
                }
                (_, 0) => {
                    // only the odd-position row changed: column j = off / d1
                    if off % d1 == 0 {
                        let j = off / d1;
                        if j >= 1 && 2 * j as usize - 1 <= self.n {
                            push_fix(&[(2 * j as usize - 1, d1)]);
                        }
                    }
                }
                (0, _) => {
                    let den = (2 * q - 1) * d2;
                    if off % den == 0 {
                        let j = off / den;
                        if j >= 1 && 2 * j as usize <= self.n {
                            push_fix(&[(2 * j as usize, d2)]);
                        }
                    }
                }
                _ => {
                    let den = d1 + (2 * q - 1) * d2;
                    // burst at an odd coordinate i: both rows share column (i+1)/2
                    if den != 0 && (2 * off) % den == 0 {
                        let i = (2 * off) / den - 1;
                        if i >= 1 && i % 2 == 1 && (i as usize) < self.n {
                            push_fix(&[(i as usize, d1), (i as usize + 1, d2)]);
                        }
                    }
                    // burst at an even coordinate i: row 2 in column i/2,
                    // row 1 in column i/2 + 1
                    if den != 0 && (2 * (off - d1)) % den == 0 {
                        let i = (2 * (off - d1)) / den;
                        if i >= 2 && i % 2 == 0 && (i as usize) < self.n {
                            push_fix(&[(i as usize + 1, d1), (i as usize, d2)]);
                        }
                    }
                }
            }
        }

        match candidates.len() {
            0 => Err(CodeError::DecodeFailure("no codeword explains the received word".into())),
            1 => {
                let x = candidates.pop().expect("one candidate");
                debug_assert!(is_burst_outcome(&x, z, 2, 2));
                Ok(x)
            }
            _ => Err(CodeError::AmbiguousDecode(format!(
                "{} distinct codewords explain the received word",
                candidates.len()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_burst, BurstEvent};
    use crate::verify::enumerate_words;

    #[test]
    fn membership_example() {
        let code = C22Code::new(4, 2, 0, 0, 0).unwrap();
        let x = Word::parse("0101", 2).unwrap();
        // row 2 is (1, 1): its sum 2 misses the residue 0 mod 4
        assert!(!code.is_member(&x).unwrap());
        let zero = Word::zeros(2, 4).unwrap();
        assert!(code.is_member(&zero).unwrap());
    }

    #[test]
    #[allow(clippy::identity_op, clippy::erasing_op)] // spelled-out row terms
    fn syndrome_matches_row_arithmetic() {
        let x = Word::parse("120210", 3).unwrap();
        let code = C22Code::for_word(&x).unwrap();
        // rows: (1, 0, 1) and (2, 2, 0)
        assert_eq!(code.a1, (1 + 0 + 1) % 6);
        assert_eq!(code.a2, (2 + 2 + 0) % 6);
        let wvt = (1 + 2 * 0 + 3 * 1) + 5 * (2 + 2 * 2 + 3 * 0);
        assert_eq!(code.a3, wvt % code.modulus());
        assert!(code.is_member(&x).unwrap());
    }

    #[test]
    fn rejects_malformed_parameters() {
        assert!(C22Code::new(4, 2, 4, 0, 0).is_err());
        assert!(C22Code::new(1, 2, 0, 0, 0).is_err());
        let code = C22Code::new(4, 2, 0, 0, 0).unwrap();
        assert!(code.is_member(&Word::parse("01010", 2).unwrap()).is_err());
        assert!(code.is_member(&Word::parse("012", 3).unwrap()).is_err());
    }

    #[test]
    fn decode_round_trips_exhaustively_small() {
        // every word decoded within its own class, over every (2,2)-burst;
        // odd lengths exercise the short final column
        for (q, n) in [(2u64, 6usize), (2, 7), (3, 4), (3, 5)] {
            for x in enumerate_words(q, n) {
                let code = C22Code::for_word(&x).unwrap();
                for pos in 1..n {
                    for b0 in 0..q {
                        for b1 in 0..q {
                            let event = BurstEvent { pos, t: 2, ins: vec![b0, b1] };
                            let z = apply_burst(&x, &event).unwrap();
                            assert_eq!(
                                code.decode(&z).unwrap(),
                                x,
                                "q={q} n={n} x={x} pos={pos} ins={b0}{b1}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn decode_reports_failure_for_garbage() {
        // a class with residues no word of the class's shape attains via a
        // burst of an actual codeword
        let code = C22Code::new(6, 2, 1, 1, 7).unwrap();
        let z = Word::zeros(2, 6).unwrap();
        assert!(matches!(code.decode(&z), Err(CodeError::DecodeFailure(_))));
    }
}
