//! The general `(t, s)`-burst correcting code for `t > s`, built by
//! lifting. With `d = t - s` net deletions, group coordinates into blocks
//! of `d`: a `(t, s)`-burst on the word becomes a `(t', t'-1)`-burst on
//! the lifted word over the alphabet `q^d`, where `t' = ⌈t/d⌉ + 1`, so a
//! [`QaryTT1Code`] over `q^d` does the real work.
//!
//! The word is first padded with zeros to `d · max(⌈n/d⌉, t'+1)` symbols:
//! this makes the length divisible by `d` and guarantees the lifted word
//! is long enough for the q-ary construction (which needs at least
//! `t'+1` columns). Burst positions never reach into the padding, so
//! padding commutes with the channel.

use crate::channel::is_burst_outcome;
use crate::codes::qary_tt1::{QaryResidues, QaryTT1Code};
use crate::error::{CodeError, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtsCode {
    n: usize,
    q: u64,
    t: usize,
    s: usize,
    p: Option<usize>,
    inner: QaryTT1Code,
}

impl CtsCode {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        q: u64,
        t: usize,
        s: usize,
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
        let geom = CtsGeometry::derive(n, q, t, s, p)?;
        let inner = QaryTT1Code::new(
            geom.inner_n,
            geom.lifted_q,
            geom.t_prime,
            geom.inner_p,
            a1,
            a2,
            b,
            c,
            c_prime,
            beta,
            gamma,
            gamma_prime,
        )?;
        Ok(CtsCode { n, q, t, s, p, inner })
    }

    /// The parameter class containing `x`.
    pub fn for_word(x: &Word, t: usize, s: usize, p: Option<usize>) -> Result<Self> {
        let geom = CtsGeometry::derive(x.len(), x.q(), t, s, p)?;
        let lifted = geom.lift_padded(x)?;
        let inner = QaryTT1Code::for_word(&lifted, geom.t_prime, geom.inner_p)?;
        Ok(CtsCode { n: x.len(), q: x.q(), t, s, p, inner })
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

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn p(&self) -> Option<usize> {
        self.p
    }

    /// Block width `d = t - s`.
    pub fn d(&self) -> usize {
        self.t - self.s
    }

    /// The q-ary code over `q^d` that decoding delegates to.
    pub fn inner(&self) -> &QaryTT1Code {
        &self.inner
    }

    fn geometry(&self) -> CtsGeometry {
        CtsGeometry::derive(self.n, self.q, self.t, self.s, self.p)
            .expect("parameters were validated at construction")
    }

    /// Number of parameter classes.
    pub fn space_size(&self) -> u128 {
        self.inner.space_size()
    }

    pub fn residues(&self, x: &Word) -> Result<QaryResidues> {
        self.check_shape(x)?;
        self.inner.residues(&self.geometry().lift_padded(x)?)
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        self.check_shape(x)?;
        self.inner.is_member(&self.geometry().lift_padded(x)?)
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
    /// `(t, s)`-burst whose erroneous coordinates lie in `window`
    /// (1-based, inclusive; `None` searches the whole word).
    pub fn decode(&self, z: &Word, window: Option<(usize, usize)>) -> Result<Word> {
        let n = self.n;
        let geom = self.geometry();
        let d = geom.d;
        if z.q() != self.q {
            return Err(CodeError::AlphabetMismatch { expected: self.q, got: z.q() });
        }
        if z.len() + d != n {
            return Err(CodeError::LengthMismatch { expected: n - d, got: z.len() });
        }
        let fail = |what: &str| CodeError::DecodeFailure(what.into());

        let mut symbols = z.symbols().to_vec();
        symbols.resize(geom.padded_n - d, 0);
        let lifted_z = Word::new(self.q, symbols)?.lift(d)?;

        let inner_window = match window {
            Some((lo, hi)) => {
                if lo < 1 || hi > n || lo > hi {
                    return Err(CodeError::InvalidWindow(format!(
                        "window [{lo},{hi}] must lie in [1,{n}]"
                    )));
                }
                let mut wl = lo.div_ceil(d);
                let mut wh = hi.div_ceil(d).min(geom.inner_n);
                while wh - wl + 1 < geom.t_prime && wh < geom.inner_n {
                    wh += 1;
                }
                while wh - wl + 1 < geom.t_prime && wl > 1 {
                    wl -= 1;
                }
                Some((wl, wh))
            }
            None => None,
        };

        let lifted_x = self.inner.decode(&lifted_z, inner_window)?;
        let padded = Word::unlift(&lifted_x, d, self.q, geom.padded_n)
            .map_err(|_| fail("recovered columns are not liftings of base-q blocks"))?;
        if padded.symbols()[n..].iter().any(|&v| v != 0) {
            return Err(fail("reconstruction spills into the zero padding"));
        }
        let candidate = Word::new(self.q, padded.symbols()[..n].to_vec())?;
        if !is_burst_outcome(&candidate, z, self.t, self.s) {
            return Err(fail("reconstruction is inconsistent with the received word"));
        }
        Ok(candidate)
    }
}

/// Derived lifting geometry shared by construction, membership, and
/// decoding.
struct CtsGeometry {
    d: usize,
    t_prime: usize,
    lifted_q: u64,
    padded_n: usize,
    inner_n: usize,
    inner_p: Option<usize>,
}

impl CtsGeometry {
    fn derive(n: usize, q: u64, t: usize, s: usize, p: Option<usize>) -> Result<CtsGeometry> {
        if q < 2 {
            return Err(CodeError::AlphabetTooSmall(q));
        }
        if s >= t {
            return Err(CodeError::InvalidParams(format!(
                "the lifting construction needs t > s, got t={t} s={s}"
            )));
        }
        if t > n {
            return Err(CodeError::InvalidParams(format!(
                "burst length t={t} exceeds the word length n={n}"
            )));
        }
        if let Some(p) = p {
            if p < t || p > n {
                return Err(CodeError::InvalidParams(format!(
                    "window bound must satisfy t <= P <= n, got P={p} t={t} n={n}"
                )));
            }
        }
        let d = t - s;
        let t_prime = t.div_ceil(d) + 1;
        let lifted_q = q.checked_pow(d as u32).ok_or_else(|| {
            CodeError::InvalidParams(format!("lifted alphabet {q}^{d} overflows"))
        })?;
        let inner_n = n.div_ceil(d).max(t_prime + 1);
        let padded_n = inner_n * d;
        // a length-P interval meets at most ceil(P/d)+1 consecutive blocks;
        // cap at inner_n, where the bound degenerates to the unbounded case
        let inner_p = p.map(|p| (p.div_ceil(d) + 1).min(inner_n));
        Ok(CtsGeometry { d, t_prime, lifted_q, padded_n, inner_n, inner_p })
    }

    fn lift_padded(&self, x: &Word) -> Result<Word> {
        let mut symbols = x.symbols().to_vec();
        symbols.resize(self.padded_n, 0);
        Word::new(x.q(), symbols)?.lift(self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_burst, ball, BurstEvent};
    use crate::verify::enumerate_words;

    #[test]
    fn lifting_geometry_is_padded_for_short_words() {
        // (3,1) over q=2 at n=6: d=2, t'=3, so the inner word needs 4
        // columns even though 6/2 = 3
        let x = Word::parse("010011", 2).unwrap();
        let code = CtsCode::for_word(&x, 3, 1, None).unwrap();
        assert_eq!(code.d(), 2);
        assert_eq!(code.inner().n(), 4);
        assert_eq!(code.inner().q(), 4);
        assert_eq!(code.inner().t(), 3);
        assert!(code.is_member(&x).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        let x = Word::parse("0102", 3).unwrap();
        assert!(CtsCode::for_word(&x, 2, 2, None).is_err());
        assert!(CtsCode::for_word(&x, 2, 3, None).is_err());
        assert!(CtsCode::for_word(&x, 5, 2, None).is_err());
        assert!(CtsCode::for_word(&x, 3, 1, Some(2)).is_err());
        assert!(CtsCode::for_word(&x, 3, 1, Some(5)).is_err());
    }

    #[test]
    fn decode_round_trips_exhaustively_a_burst_deletion_code() {
        // (2,0) over q=3: pure deletion of two adjacent symbols
        let (q, t, s, n) = (3u64, 2usize, 0usize, 5usize);
        for x in enumerate_words(q, n) {
            let code = CtsCode::for_word(&x, t, s, None).unwrap();
            for z in ball(&x, t, s).unwrap().members() {
                assert_eq!(code.decode(z, None).unwrap(), x, "x={x} z={z}");
            }
        }
    }

    #[test]
    fn decode_round_trips_exhaustively_with_padding() {
        // (3,1) over q=2 at n in {6,7}: both lengths pad up to 8 symbols
        for n in [6usize, 7] {
            for x in enumerate_words(2, n) {
                let code = CtsCode::for_word(&x, 3, 1, None).unwrap();
                for z in ball(&x, 3, 1).unwrap().members() {
                    assert_eq!(code.decode(z, None).unwrap(), x, "n={n} x={x} z={z}");
                }
            }
        }
    }

    #[test]
    fn decode_round_trips_when_blocks_are_trivial() {
        // (2,1) over q=2: d=1, the lift is the identity and the inner code
        // is a plain (3,2) code on the same word
        let (t, s, n) = (2usize, 1usize, 6usize);
        for x in enumerate_words(2, n) {
            let code = CtsCode::for_word(&x, t, s, None).unwrap();
            assert_eq!(code.d(), 1);
            for z in ball(&x, t, s).unwrap().members() {
                assert_eq!(code.decode(z, None).unwrap(), x, "x={x} z={z}");
            }
        }
    }

    #[test]
    fn decode_round_trips_with_genie_windows() {
        let (q, t, s, n, p) = (2u64, 2usize, 0usize, 8usize, 4usize);
        for x in enumerate_words(q, n) {
            let code = CtsCode::for_word(&x, t, s, Some(p)).unwrap();
            for pos in 1..=n - t + 1 {
                let lo = pos.min(n - p + 1).max(1);
                let hi = lo + p - 1;
                let event = BurstEvent { pos, t, ins: vec![] };
                let z = apply_burst(&x, &event).unwrap();
                assert_eq!(
                    code.decode(&z, Some((lo, hi))).unwrap(),
                    x,
                    "x={x} pos={pos} window=({lo},{hi})"
                );
            }
        }
    }

    #[test]
    fn decode_round_trips_on_a_sampled_four_two_code() {
        // (4,2) over q=4: d=2, t'=3, inner alphabet 16; subsample centers
        let (q, t, s, n) = (4u64, 4usize, 2usize, 6usize);
        for (idx, x) in enumerate_words(q, n).enumerate() {
            if idx % 41 != 0 {
                continue;
            }
            let code = CtsCode::for_word(&x, t, s, None).unwrap();
            for z in ball(&x, t, s).unwrap().members() {
                assert_eq!(code.decode(z, None).unwrap(), x, "x={x} z={z}");
            }
        }
    }
}
