//! The `(t, t)`-burst correcting code, obtained by lifting. A word over
//! `Σ_q` is split into columns of `t-1` symbols (zero-padded at the end),
//! each column is read as one integer symbol over `Σ_{q^{t-1}}`, and the
//! lifted word must lie in a `(2, 2)`-burst code over the larger alphabet:
//! a `(t, t)`-burst on the original word touches at most two adjacent
//! columns, i.e. becomes a `(2, 2)`-burst after lifting.

use crate::codes::c22::C22Code;
use crate::error::{CodeError, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CttCode {
    n: usize,
    q: u64,
    t: usize,
    inner: C22Code,
}

impl CttCode {
    /// Residues `a1, a2, a3` parameterize the inner `(2, 2)`-burst code
    /// over `Σ_{q^{t-1}}` on `⌈n/(t-1)⌉` columns.
    pub fn new(n: usize, q: u64, t: usize, a1: u64, a2: u64, a3: u64) -> Result<Self> {
        if q < 2 {
            return Err(CodeError::AlphabetTooSmall(q));
        }
        if t < 2 || t > n {
            return Err(CodeError::InvalidParams(format!(
                "a (t,t)-burst code needs 2 <= t <= n, got t={t} n={n}"
            )));
        }
        let d = t - 1;
        let lifted_q = q
            .checked_pow(d as u32)
            .ok_or_else(|| CodeError::InvalidParams(format!("alphabet q^{d} overflows")))?;
        let cols = n.div_ceil(d);
        let inner = C22Code::new(cols, lifted_q, a1, a2, a3)?;
        Ok(CttCode { n, q, t, inner })
    }

    /// The parameter class containing `x`.
    pub fn for_word(x: &Word, t: usize) -> Result<Self> {
        if t < 2 || t > x.len() {
            return Err(CodeError::InvalidParams(format!(
                "a (t,t)-burst code needs 2 <= t <= n, got t={t} n={}",
                x.len()
            )));
        }
        let lifted = x.pad_to_multiple(t - 1)?.lift(t - 1)?;
        let inner = C22Code::for_word(&lifted)?;
        Ok(CttCode { n: x.len(), q: x.q(), t, inner })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn inner(&self) -> &C22Code {
        &self.inner
    }

    pub fn space_size(&self) -> u128 {
        self.inner.space_size()
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        self.check_shape(x)?;
        let lifted = x.pad_to_multiple(self.t - 1)?.lift(self.t - 1)?;
        self.inner.is_member(&lifted)
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
    /// `(t, t)`-burst: lift, decode the induced `(2, 2)`-burst, unlift.
    /// The zero padding is protected — a decoded word whose tail beyond
    /// position `n` is nonzero is reported as a decode failure.
    pub fn decode(&self, z: &Word) -> Result<Word> {
        self.check_shape(z)?;
        let d = self.t - 1;
        let lifted = z.pad_to_multiple(d)?.lift(d)?;
        let decoded = self.inner.decode(&lifted)?;
        let padded_len = self.n.div_ceil(d) * d;
        let full = Word::unlift(&decoded, d, self.q, padded_len).map_err(|_| {
            CodeError::DecodeFailure("decoded columns are outside the lift image".into())
        })?;
        if full.symbols()[self.n..].iter().any(|&v| v != 0) {
            return Err(CodeError::DecodeFailure(
                "decoded word has nonzero symbols in the padding tail".into(),
            ));
        }
        Word::new(self.q, full.symbols()[..self.n].to_vec())
    }
}
