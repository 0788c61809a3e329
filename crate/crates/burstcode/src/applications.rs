//! Code families for derived error models, each reduced to one of the
//! burst constructions:
//!
//! * an inversion (substring reversal) of length at most `t` is a
//!   `(t, t)`-burst;
//! * a Type-A absorption is a `(2, 1)`-burst, a Type-B absorption a
//!   `(2, 2)`-burst (the end-of-word cases embed as shorter bursts);
//! * a burst of at most `t` deletions is handled by intersecting
//!   `(i, 0)`-burst codes for `i` in `[1, t]`;
//! * at most `t` deletions localized in a window of length `t` are
//!   handled by intersecting `(t, t-i)`-burst codes.
//!
//! The two composite families take the error window from a
//! [`LocatorOracle`]: published locator constructions are out of scope
//! here, so the oracle either knows the window (a [`GenieLocator`], for
//! simulation) or gives up the whole word (the [`TrivialLocator`]).

use crate::codes::{BinTT1Code, C22Code, CtsCode, CttCode, QaryTT1Code};
use crate::error::{CodeError, Result};
use crate::word::Word;

/// Supplies the interval guaranteed to contain every erroneous
/// coordinate, standing in for whatever outer mechanism localizes the
/// error. `member_hook` is the membership constraint such a locator
/// would impose on codewords; the bundled locators impose none.
pub trait LocatorOracle {
    /// A 1-based inclusive window within `[1, n]` containing all
    /// erroneous coordinates of the word `z` was received for.
    fn locate(&self, n: usize, z: &Word) -> Result<(usize, usize)>;

    fn member_hook(&self, _x: &Word) -> Result<bool> {
        Ok(true)
    }
}

/// Locator that never narrows anything: the window is the whole word.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialLocator;

impl LocatorOracle for TrivialLocator {
    fn locate(&self, n: usize, _z: &Word) -> Result<(usize, usize)> {
        Ok((1, n))
    }
}

/// Locator that already knows the window, e.g. because the simulation
/// harness planted the error. Carries per-event context: construct one
/// per decode call.
#[derive(Debug, Clone, Copy)]
pub struct GenieLocator {
    pub window: (usize, usize),
}

impl GenieLocator {
    /// A window of length `min(p, n)` containing `[err_lo, err_hi]`,
    /// roughly centered on it and clamped to `[1, n]`.
    pub fn covering(n: usize, p: usize, err_lo: usize, err_hi: usize) -> Result<GenieLocator> {
        if err_lo < 1 || err_hi > n || err_lo > err_hi {
            return Err(CodeError::InvalidWindow(format!(
                "error span [{err_lo},{err_hi}] must lie in [1,{n}]"
            )));
        }
        let len = p.min(n);
        if err_hi - err_lo + 1 > len {
            return Err(CodeError::InvalidWindow(format!(
                "error span [{err_lo},{err_hi}] exceeds window length {len}"
            )));
        }
        let slack = len - (err_hi - err_lo + 1);
        let lo_min = err_hi.saturating_sub(len - 1).max(1);
        let lo_max = err_lo.min(n - len + 1);
        let lo = err_lo.saturating_sub(slack / 2).clamp(lo_min, lo_max);
        Ok(GenieLocator { window: (lo, lo + len - 1) })
    }
}

impl LocatorOracle for GenieLocator {
    fn locate(&self, n: usize, _z: &Word) -> Result<(usize, usize)> {
        let (lo, hi) = self.window;
        if lo < 1 || hi > n || lo > hi {
            return Err(CodeError::InvalidWindow(format!(
                "window [{lo},{hi}] must lie in [1,{n}]"
            )));
        }
        Ok((lo, hi))
    }
}

/// Corrects one inversion (substring reversal) of length at most `t` by
/// treating it as a `(t, t)`-burst.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionCode {
    inner: CttCode,
}

impl InversionCode {
    pub fn for_word(x: &Word, t: usize) -> Result<Self> {
        Ok(InversionCode { inner: CttCode::for_word(x, t)? })
    }

    pub fn from_inner(inner: CttCode) -> Self {
        InversionCode { inner }
    }

    pub fn t(&self) -> usize {
        self.inner.t()
    }

    /// The `(t, t)`-burst code doing the work.
    pub fn inner(&self) -> &CttCode {
        &self.inner
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        self.inner.is_member(x)
    }

    pub fn decode(&self, z: &Word) -> Result<Word> {
        self.inner.decode(z)
    }
}

/// Corrects one Type-A absorption (a symbol deleted, its mass
/// saturate-added into the successor; plain deletion at the last
/// coordinate) via a `(2, 1)`-burst code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorptionACode {
    inner: CtsCode,
}

impl AbsorptionACode {
    pub fn for_word(x: &Word) -> Result<Self> {
        Ok(AbsorptionACode { inner: CtsCode::for_word(x, 2, 1, None)? })
    }

    pub fn from_inner(inner: CtsCode) -> Result<Self> {
        if inner.t() != 2 || inner.s() != 1 {
            return Err(CodeError::InvalidParams(
                "absorption-A correction needs a (2,1)-burst code".into(),
            ));
        }
        Ok(AbsorptionACode { inner })
    }

    pub fn inner(&self) -> &CtsCode {
        &self.inner
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        self.inner.is_member(x)
    }

    pub fn decode(&self, z: &Word) -> Result<Word> {
        self.inner.decode(z, None)
    }
}

/// Corrects one Type-B absorption (a symbol lowered, the difference
/// saturate-added into the successor; plain lowering at the last
/// coordinate) via a `(2, 2)`-burst code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorptionBCode {
    inner: C22Code,
}

impl AbsorptionBCode {
    pub fn for_word(x: &Word) -> Result<Self> {
        Ok(AbsorptionBCode { inner: C22Code::for_word(x)? })
    }

    pub fn from_inner(inner: C22Code) -> Self {
        AbsorptionBCode { inner }
    }

    pub fn inner(&self) -> &C22Code {
        &self.inner
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        self.inner.is_member(x)
    }

    pub fn decode(&self, z: &Word) -> Result<Word> {
        self.inner.decode(z)
    }
}

/// Corrects a burst of at most `t` consecutive deletions: the word lies
/// in a `P`-bounded `(i, 0)`-burst code for every `i` in `[1, t]`, and a
/// locator narrows the search window before the `i`-th decoder runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeqBurstDelCode {
    n: usize,
    q: u64,
    t: usize,
    p: Option<usize>,
    inners: Vec<CtsCode>,
}

impl LeqBurstDelCode {
    pub fn for_word(x: &Word, t: usize, p: Option<usize>) -> Result<Self> {
        if t == 0 {
            return Err(CodeError::InvalidParams("deletion budget t must be >= 1".into()));
        }
        let inners = (1..=t)
            .map(|i| CtsCode::for_word(x, i, 0, p.map(|p| p.max(i))))
            .collect::<Result<Vec<CtsCode>>>()?;
        Ok(LeqBurstDelCode { n: x.len(), q: x.q(), t, p, inners })
    }

    /// Wraps existing burst codes, one per deletion count: the `i`-th
    /// entry must be an `(i, 0)`-burst code at the shared dimensions.
    pub fn from_inners(p: Option<usize>, inners: Vec<CtsCode>) -> Result<Self> {
        let t = inners.len();
        let first = inners.first().ok_or_else(|| {
            CodeError::InvalidParams("need at least the (1,0)-burst inner code".into())
        })?;
        let (n, q) = (first.n(), first.q());
        for (idx, inner) in inners.iter().enumerate() {
            let i = idx + 1;
            if inner.n() != n
                || inner.q() != q
                || inner.t() != i
                || inner.s() != 0
                || inner.p() != p.map(|p| p.max(i))
            {
                return Err(CodeError::InvalidParams(format!(
                    "inner code {i} is not an ({i},0)-burst code at n={n}, q={q}, P={p:?}"
                )));
            }
        }
        Ok(LeqBurstDelCode { n, q, t, p, inners })
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

    /// The `(i, 0)`-burst code for deletion count `i`.
    pub fn inner(&self, i: usize) -> Option<&CtsCode> {
        self.inners.get(i - 1)
    }

    pub fn is_member(&self, x: &Word, locator: &dyn LocatorOracle) -> Result<bool> {
        if !locator.member_hook(x)? {
            return Ok(false);
        }
        for inner in &self.inners {
            if !inner.is_member(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decodes after a burst of `i = n - |z|` consecutive deletions,
    /// `i <= t`; `i = 0` returns the word unchanged.
    pub fn decode(&self, z: &Word, locator: &dyn LocatorOracle) -> Result<Word> {
        if z.q() != self.q {
            return Err(CodeError::AlphabetMismatch { expected: self.q, got: z.q() });
        }
        if z.len() > self.n || self.n - z.len() > self.t {
            return Err(CodeError::LengthMismatch { expected: self.n, got: z.len() });
        }
        let i = self.n - z.len();
        if i == 0 {
            return Ok(z.clone());
        }
        let window = locator.locate(self.n, z)?;
        self.inners[i - 1].decode(z, Some(window))
    }
}

/// One `(t, t-i)` constraint of the localized-deletion composite; which
/// construction realizes it depends on `i` and the alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalizedInner {
    Binary(BinTT1Code),
    Qary(QaryTT1Code),
    Lifted(CtsCode),
}

impl LocalizedInner {
    pub fn is_member(&self, x: &Word) -> Result<bool> {
        match self {
            LocalizedInner::Binary(code) => code.is_member(x),
            LocalizedInner::Qary(code) => code.is_member(x),
            LocalizedInner::Lifted(code) => code.is_member(x),
        }
    }

    pub fn decode(&self, z: &Word, window: (usize, usize)) -> Result<Word> {
        match self {
            LocalizedInner::Binary(code) => code.decode(z, Some(window)),
            LocalizedInner::Qary(code) => code.decode(z, Some(window)),
            LocalizedInner::Lifted(code) => code.decode(z, Some(window)),
        }
    }

    fn dims(&self) -> (usize, u64, usize, usize, Option<usize>) {
        match self {
            LocalizedInner::Binary(code) => (code.n, 2, code.t, code.t - 1, Some(code.p)),
            LocalizedInner::Qary(code) => (code.n(), code.q(), code.t(), code.t() - 1, code.p()),
            LocalizedInner::Lifted(code) => (code.n(), code.q(), code.t(), code.s(), code.p()),
        }
    }
}

/// Corrects at most `t` deletions localized in a window of length `t`:
/// the word lies in a `P`-bounded `(t, t-i)`-burst code for every
/// deletion count `i` in `[1, t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedCode {
    n: usize,
    q: u64,
    t: usize,
    p: Option<usize>,
    inners: Vec<LocalizedInner>,
}

impl LocalizedCode {
    pub fn for_word(x: &Word, t: usize, p: Option<usize>) -> Result<Self> {
        if t == 0 {
            return Err(CodeError::InvalidParams("window length t must be >= 1".into()));
        }
        let n = x.len();
        let q = x.q();
        let inners = (1..=t)
            .map(|i| {
                // the (t, t-1) member has dedicated constructions; every
                // other deficit goes through the lifting construction
                Ok(if i == 1 && t >= 2 {
                    if q == 2 {
                        LocalizedInner::Binary(BinTT1Code::for_word(x, t, p.unwrap_or(n))?)
                    } else {
                        LocalizedInner::Qary(QaryTT1Code::for_word(x, t, p)?)
                    }
                } else {
                    LocalizedInner::Lifted(CtsCode::for_word(x, t, t - i, p)?)
                })
            })
            .collect::<Result<Vec<LocalizedInner>>>()?;
        Ok(LocalizedCode { n, q, t, p, inners })
    }

    /// Wraps existing burst codes, one per deletion count: the `i`-th
    /// entry must be a `(t, t-i)`-burst code at the shared dimensions,
    /// using the dedicated `(t, t-1)` construction for `i = 1`.
    pub fn from_inners(p: Option<usize>, inners: Vec<LocalizedInner>) -> Result<Self> {
        let t = inners.len();
        let first = inners.first().ok_or_else(|| {
            CodeError::InvalidParams("need at least the (t,t-1)-burst inner code".into())
        })?;
        let (n, q, ..) = first.dims();
        for (idx, inner) in inners.iter().enumerate() {
            let i = idx + 1;
            let construction_fits = match inner {
                LocalizedInner::Binary(_) => i == 1 && t >= 2 && q == 2,
                LocalizedInner::Qary(_) => i == 1 && t >= 2 && q >= 3,
                LocalizedInner::Lifted(_) => i >= 2 || t == 1,
            };
            let expected_p = match inner {
                LocalizedInner::Binary(_) => Some(p.unwrap_or(n)),
                _ => p,
            };
            if !construction_fits || inner.dims() != (n, q, t, t - i, expected_p) {
                return Err(CodeError::InvalidParams(format!(
                    "inner code {i} is not a ({t},{})-burst code at n={n}, q={q}, P={p:?}",
                    t - i
                )));
            }
        }
        Ok(LocalizedCode { n, q, t, p, inners })
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

    /// The `(t, t-i)`-burst constraint for deletion count `i`.
    pub fn inner(&self, i: usize) -> Option<&LocalizedInner> {
        self.inners.get(i - 1)
    }

    pub fn is_member(&self, x: &Word, locator: &dyn LocatorOracle) -> Result<bool> {
        if !locator.member_hook(x)? {
            return Ok(false);
        }
        for inner in &self.inners {
            if !inner.is_member(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decodes after `i = n - |z|` deletions confined to one window of
    /// length `t`; `i = 0` returns the word unchanged.
    pub fn decode(&self, z: &Word, locator: &dyn LocatorOracle) -> Result<Word> {
        if z.q() != self.q {
            return Err(CodeError::AlphabetMismatch { expected: self.q, got: z.q() });
        }
        if z.len() > self.n || self.n - z.len() > self.t {
            return Err(CodeError::LengthMismatch { expected: self.n, got: z.len() });
        }
        let i = self.n - z.len();
        if i == 0 {
            return Ok(z.clone());
        }
        let window = locator.locate(self.n, z)?;
        self.inners[i - 1].decode(z, window)
    }
}
