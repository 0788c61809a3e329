//! The q-ary `P`-bounded `(t, t-1)`-burst correcting code. A burst that
//! deletes a window of `t` symbols and writes back `t-1` leaves three
//! traces, each pinned down by one constraint family:
//!
//! * the binary signature of `x` suffers a `(t+1, t)`-burst, so the
//!   signature is required to lie in a binary [`BinTT1Code`] class with
//!   parameters `t+1` and `P+1`;
//! * per-symbol counts shift by at most `t` in absolute value, so counts
//!   of each nonzero symbol are fixed modulo `2t` (`beta`);
//! * within the one monotone segment that the burst disturbs, the symbol
//!   multiset is known from the counts but its boundary alignment is not;
//!   class sums of length-`(t-1)` context blocks just outside every
//!   `2t`-th segment (`gamma` on the left, `gamma_prime` on the right)
//!   recover the alignment.
//!
//! Decoding replays those stages: recover the signature, classify the
//! error, rebuild the disturbed segment's surroundings from the gamma
//! sums, then refill the segment from the count deficits in the order the
//! signature dictates.

use crate::channel::is_burst_outcome;
use crate::codes::bin_tt1::{BinResidues, BinTT1Code};
use crate::error::{CodeError, Result};
use crate::word::{ContextSide, SegmentStarts, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QaryTT1Code {
    n: usize,
    q: u64,
    t: usize,
    p: Option<usize>,
    inner: BinTT1Code,
    beta: Vec<u64>,
    gamma: Vec<Vec<u64>>,
    gamma_prime: Vec<Vec<u64>>,
}

/// Residues of a word: the signature's binary residues, then `beta`,
/// `gamma`, `gamma_prime`.
pub type QaryResidues = (BinResidues, Vec<u64>, Vec<Vec<u64>>, Vec<Vec<u64>>);

impl QaryTT1Code {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        q: u64,
        t: usize,
        p: Option<usize>,
        a1: u64,
        a2: u64,
        b: Vec<u64>,
        c: Vec<u64>,
        c_prime: Vec<u64>,
        beta: Vec<u64>,
        gamma: Vec<Vec<u64>>,
        gamma_prime: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if q < 2 {
            return Err(CodeError::AlphabetTooSmall(q));
        }
        if t < 2 || n < t + 1 {
            return Err(CodeError::InvalidParams(format!(
                "the q-ary (t,t-1) construction needs 2 <= t and n >= t+1, got t={t} n={n}"
            )));
        }
        if let Some(p) = p {
            if p < t || p > n {
                return Err(CodeError::InvalidParams(format!(
                    "window bound must satisfy t <= P <= n, got P={p} t={t} n={n}"
                )));
            }
        }
        let pin = p.map_or(n, |p| (p + 1).min(n));
        let inner = BinTT1Code::new(n, t + 1, pin, a1, a2, b, c, c_prime)?;
        if beta.len() != (q - 1) as usize || beta.iter().any(|&v| v >= 2 * t as u64) {
            return Err(CodeError::InvalidParams(format!(
                "beta must hold q-1 = {} residues modulo 2t = {}",
                q - 1,
                2 * t
            )));
        }
        for table in [&gamma, &gamma_prime] {
            if table.len() != 2 * t
                || table.iter().any(|row| row.len() != t - 1 || row.iter().any(|&v| v >= q))
            {
                return Err(CodeError::InvalidParams(format!(
                    "gamma tables must hold 2t = {} rows of t-1 = {} residues modulo q = {q}",
                    2 * t,
                    t - 1
                )));
            }
        }
        Ok(QaryTT1Code { n, q, t, p, inner, beta, gamma, gamma_prime })
    }

    /// The parameter class containing `x`.
    pub fn for_word(x: &Word, t: usize, p: Option<usize>) -> Result<Self> {
        let (bin, beta, gamma, gamma_prime) = Self::residues_raw(x, t, p)?;
        let (a1, a2, b, c, c_prime) = bin;
        QaryTT1Code::new(x.len(), x.q(), t, p, a1, a2, b, c, c_prime, beta, gamma, gamma_prime)
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

    pub fn p(&self) -> Option<usize> {
        self.p
    }

    /// The binary code constraining the signature.
    pub fn inner(&self) -> &BinTT1Code {
        &self.inner
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    pub fn gamma(&self) -> &[Vec<u64>] {
        &self.gamma
    }

    pub fn gamma_prime(&self) -> &[Vec<u64>] {
        &self.gamma_prime
    }

    /// Number of parameter classes.
    pub fn space_size(&self) -> u128 {
        let classes = (2 * self.t as u128).pow((self.q - 1) as u32);
        let contexts = (self.q as u128).pow((2 * self.t * (self.t - 1)) as u32);
        self.inner
            .space_size()
            .saturating_mul(classes)
            .saturating_mul(contexts)
            .saturating_mul(contexts)
    }

    fn residues_raw(x: &Word, t: usize, p: Option<usize>) -> Result<QaryResidues> {
        let n = x.len();
        let q = x.q();
        let pin = p.map_or(n, |p| (p + 1).min(n));
        let bin = BinTT1Code::for_word(&x.signature(), t + 1, pin)?;
        let beta = (1..q)
            .map(|sym| x.symbols().iter().filter(|&&v| v == sym).count() as u64 % (2 * t as u64))
            .collect();
        let starts = x.segment_starts();
        let m = starts.count();
        let mut gamma = vec![vec![0u64; t - 1]; 2 * t];
        let mut gamma_prime = vec![vec![0u64; t - 1]; 2 * t];
        for j0 in 1..=2 * t {
            for l in (j0..=m).step_by(2 * t) {
                let left = x.segment_context(l, t, ContextSide::Left)?;
                let right = x.segment_context(l, t, ContextSide::Right)?;
                for c in 0..t - 1 {
                    gamma[j0 - 1][c] = (gamma[j0 - 1][c] + left.symbols()[c]) % q;
                    gamma_prime[j0 - 1][c] = (gamma_prime[j0 - 1][c] + right.symbols()[c]) % q;
                }
            }
        }
        Ok(((bin.a1, bin.a2, bin.b, bin.c, bin.c_prime), beta, gamma, gamma_prime))
    }

    pub fn residues(&self, x: &Word) -> Result<QaryResidues> {
        self.check_shape(x)?;
        Self::residues_raw(x, self.t, self.p)
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        let (bin, beta, gamma, gamma_prime) = self.residues(x)?;
        Ok(bin
            == (
                self.inner.a1,
                self.inner.a2,
                self.inner.b.clone(),
                self.inner.c.clone(),
                self.inner.c_prime.clone(),
            )
            && beta == self.beta
            && gamma == self.gamma
            && gamma_prime == self.gamma_prime)
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
    /// `(t, t-1)`-burst whose erroneous coordinates lie in `window`
    /// (1-based, inclusive; `None` searches the whole word).
    pub fn decode(&self, z: &Word, window: Option<(usize, usize)>) -> Result<Word> {
        let n = self.n;
        let t = self.t;
        let q = self.q;
        if z.q() != q {
            return Err(CodeError::AlphabetMismatch { expected: q, got: z.q() });
        }
        if z.len() + 1 != n {
            return Err(CodeError::LengthMismatch { expected: n - 1, got: z.len() });
        }
        let (wl, wh) = match window {
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

        let fail = |what: &str| CodeError::DecodeFailure(what.into());

        // Stage 1: recover the signature of the codeword. A (t, t-1)-burst
        // on x is a (t+1, t)-burst on its signature, one position wider on
        // the right.
        let sig_z = z.signature();
        let ax = match self.inner.decode(&sig_z, Some((wl, (wh + 1).min(n)))) {
            Ok(word) => word,
            Err(CodeError::DecodeFailure(_)) | Err(CodeError::AmbiguousDecode(_)) => {
                return Err(fail("the signature stage found no unique candidate"));
            }
            Err(other) => return Err(other),
        };
        if ax.symbols()[0] != 1 {
            return Err(fail("recovered signature does not start with 1"));
        }
        let starts = SegmentStarts::from_signature(&ax)?;
        let m = starts.count();
        let az = sig_z.symbols();
        let axs = ax.symbols();

        // Stage 2: locate the disturbed segment. Scan matching prefixes
        // and suffixes of the two signatures; the leftover span is either a
        // pure deletion or an exact burst of length in [2, t+1].
        let mut pre = 0usize;
        while pre < n - 1 && axs[pre] == az[pre] {
            pre += 1;
        }
        let mut suf = 0usize;
        while suf < n - 1 && axs[n - 1 - suf] == az[n - 2 - suf] {
            suf += 1;
        }
        let i = if n - suf <= pre + 1 {
            n - suf
        } else {
            let burst_len = (n - suf) - (pre + 1) + 1;
            if !(2..=t + 1).contains(&burst_len) {
                return Err(fail("signature disagreement is wider than one burst"));
            }
            pre + 1
        };
        let l = (1..=m)
            .rev()
            .find(|&j| starts.start(j) < i)
            .ok_or_else(|| fail("no segment lies left of the disturbed coordinate"))?;

        // Stage 3: copy coordinates that the burst provably did not touch.
        let mut xh: Vec<Option<u64>> = vec![None; n];
        let zs = z.symbols();
        let s_lo = starts.start(l);
        let s_hi = starts.start(l + 1);
        for pos in 1..=s_lo.saturating_sub(t) {
            xh[pos - 1] = Some(zs[pos - 1]);
        }
        for pos in s_hi + t..=n {
            xh[pos - 1] = Some(zs[pos - 2]);
        }

        // Stage 4: recover the context blocks around segment l from the
        // gamma class sums; every other segment in its class is known.
        let j0 = (l - 1) % (2 * t) + 1;
        for c in 0..t - 1 {
            let mut sum_left = 0u64;
            let mut sum_right = 0u64;
            for lp in (j0..=m).step_by(2 * t) {
                if lp == l {
                    continue;
                }
                let pos_left = starts.start(lp) as i64 - t as i64 + 1 + c as i64;
                let pos_right = starts.start(lp + 1) as i64 + 1 + c as i64;
                for (pos, sum) in [(pos_left, &mut sum_left), (pos_right, &mut sum_right)] {
                    if (1..=n as i64).contains(&pos) {
                        match xh[pos as usize - 1] {
                            Some(v) => *sum = (*sum + v) % q,
                            None => return Err(fail("context overlaps the disturbed span")),
                        }
                    }
                }
            }
            for (pos, sum, table) in [
                (s_lo as i64 - t as i64 + 1 + c as i64, sum_left, &self.gamma),
                (s_hi as i64 + 1 + c as i64, sum_right, &self.gamma_prime),
            ] {
                let value = (table[j0 - 1][c] + q - sum) % q;
                if (1..=n as i64).contains(&pos) {
                    xh[pos as usize - 1] = Some(value);
                } else if value != 0 {
                    return Err(fail("context sum charges a coordinate outside the word"));
                }
            }
        }

        // Stage 5: refill segment l from the count deficits, ordered by its
        // signature phase (ascending for odd l, strictly descending for
        // even l).
        let mut count_z = vec![0i64; q as usize];
        for &v in zs {
            count_z[v as usize] += 1;
        }
        let mut count_x = vec![0i64; q as usize];
        for sym in 1..q as usize {
            let mut delta = (count_z[sym] - self.beta[sym - 1] as i64).rem_euclid(2 * t as i64);
            if delta >= t as i64 {
                delta -= 2 * t as i64;
            }
            count_x[sym] = count_z[sym] - delta;
            if count_x[sym] < 0 {
                return Err(fail("count residue demands a negative multiplicity"));
            }
        }
        count_x[0] = n as i64 - count_x[1..].iter().sum::<i64>();
        if count_x[0] < 0 {
            return Err(fail("count residue demands a negative multiplicity"));
        }
        let mut known = vec![0i64; q as usize];
        for v in xh.iter().flatten() {
            known[*v as usize] += 1;
        }
        let mut refill = Vec::new();
        for sym in 0..q as usize {
            let deficit = count_x[sym] - known[sym];
            if deficit < 0 {
                return Err(fail("known coordinates exceed the recovered counts"));
            }
            refill.extend(std::iter::repeat_n(sym as u64, deficit as usize));
        }
        let fill_lo = s_lo.max(1);
        let fill_hi = s_hi;
        if refill.len() != fill_hi - fill_lo + 1 {
            return Err(fail("count deficits do not fit the disturbed segment"));
        }
        if l % 2 == 1 {
            refill.sort_unstable();
        } else {
            refill.sort_unstable_by(|a, b| b.cmp(a));
            if refill.windows(2).any(|w| w[0] == w[1]) {
                return Err(fail("a strictly decreasing segment needs distinct symbols"));
            }
        }
        for (offset, pos) in (fill_lo..=fill_hi).enumerate() {
            xh[pos - 1] = Some(refill[offset]);
        }

        let symbols: Option<Vec<u64>> = xh.into_iter().collect();
        let candidate = Word::new(q, symbols.ok_or_else(|| fail("a coordinate stayed unknown"))?)?;
        if !self.is_member(&candidate)? || !is_burst_outcome(&candidate, z, t, t - 1) {
            return Err(fail("reconstruction is inconsistent with the received word"));
        }
        Ok(candidate)
    }
}
