//! The burst-correcting code constructions and a family-dispatching
//! wrapper around them.

pub mod bin_tt1;
pub mod c22;
pub mod cts;
pub mod ctt;
pub mod qary_tt1;
pub mod search;

pub use bin_tt1::BinTT1Code;
pub use c22::C22Code;
pub use cts::CtsCode;
pub use ctt::CttCode;
pub use qary_tt1::QaryTT1Code;
pub use search::{param_search, SearchOutcome};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CodeError, Result};
use crate::word::Word;

/// Identifies one of the code constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// The `(2, 2)`-burst code over an arbitrary alphabet.
    #[serde(rename = "c22")]
    C22,
    /// The `(t, t)`-burst code obtained by lifting into `C22`.
    #[serde(rename = "ctt")]
    Ctt,
    /// The binary `P`-bounded `(t, t-1)`-burst code.
    #[serde(rename = "bin_tt1")]
    BinTT1,
    /// The `q`-ary `(t, t-1)`-burst code built on a binary signature stage.
    #[serde(rename = "qary_tt1")]
    QaryTT1,
    /// The general `(t, s)`-burst code, `t > s`, obtained by lifting into
    /// a `(t', t'-1)` code.
    #[serde(rename = "cts")]
    Cts,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::C22, Family::Ctt, Family::BinTT1, Family::QaryTT1, Family::Cts];

    pub fn name(self) -> &'static str {
        match self {
            Family::C22 => "c22",
            Family::Ctt => "ctt",
            Family::BinTT1 => "bin_tt1",
            Family::QaryTT1 => "qary_tt1",
            Family::Cts => "cts",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "c22" => Ok(Family::C22),
            "ctt" => Ok(Family::Ctt),
            "bin_tt1" => Ok(Family::BinTT1),
            "qary_tt1" => Ok(Family::QaryTT1),
            "cts" => Ok(Family::Cts),
            other => Err(CodeError::ParseError {
                input: other.into(),
                reason: "expected one of c22, ctt, bin_tt1, qary_tt1, cts".into(),
            }),
        }
    }
}

/// A code instance of any family, dispatching the shared operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BurstCode {
    C22(C22Code),
    Ctt(CttCode),
    BinTT1(BinTT1Code),
    QaryTT1(QaryTT1Code),
    Cts(CtsCode),
}

impl BurstCode {
    /// The code of `family` with parameters `(t, s, P)` containing `x`.
    /// `C22` fixes `(t, s) = (2, 2)` and `Ctt` forces `s = t`; the
    /// `(t, t-1)` families force `s = t - 1`.
    pub fn for_word(
        family: Family,
        x: &Word,
        t: usize,
        s: usize,
        p: Option<usize>,
    ) -> Result<BurstCode> {
        let check_ts = |want_t: Option<usize>, want_s: usize| -> Result<()> {
            if want_t.is_some_and(|want| want != t) || s != want_s {
                return Err(CodeError::InvalidParams(format!(
                    "family {family} does not correct ({t},{s})-bursts"
                )));
            }
            Ok(())
        };
        let reject_p = || -> Result<()> {
            if p.is_some() {
                return Err(CodeError::InvalidParams(format!(
                    "family {family} has no P-bounded variant"
                )));
            }
            Ok(())
        };
        Ok(match family {
            Family::C22 => {
                check_ts(Some(2), 2)?;
                reject_p()?;
                BurstCode::C22(C22Code::for_word(x)?)
            }
            Family::Ctt => {
                check_ts(None, t)?;
                reject_p()?;
                BurstCode::Ctt(CttCode::for_word(x, t)?)
            }
            Family::BinTT1 => {
                check_ts(None, t.saturating_sub(1))?;
                if x.q() != 2 {
                    return Err(CodeError::InvalidParams(
                        "family bin_tt1 is binary-only; use qary_tt1 or cts".into(),
                    ));
                }
                BurstCode::BinTT1(BinTT1Code::for_word(x, t, p.unwrap_or(x.len()))?)
            }
            Family::QaryTT1 => {
                check_ts(None, t.saturating_sub(1))?;
                BurstCode::QaryTT1(QaryTT1Code::for_word(x, t, p)?)
            }
            Family::Cts => BurstCode::Cts(CtsCode::for_word(x, t, s, p)?),
        })
    }

    pub fn family(&self) -> Family {
        match self {
            BurstCode::C22(_) => Family::C22,
            BurstCode::Ctt(_) => Family::Ctt,
            BurstCode::BinTT1(_) => Family::BinTT1,
            BurstCode::QaryTT1(_) => Family::QaryTT1,
            BurstCode::Cts(_) => Family::Cts,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            BurstCode::C22(code) => code.n,
            BurstCode::Ctt(code) => code.n(),
            BurstCode::BinTT1(code) => code.n,
            BurstCode::QaryTT1(code) => code.n(),
            BurstCode::Cts(code) => code.n(),
        }
    }

    pub fn q(&self) -> u64 {
        match self {
            BurstCode::C22(code) => code.q,
            BurstCode::Ctt(code) => code.q(),
            BurstCode::BinTT1(_) => 2,
            BurstCode::QaryTT1(code) => code.q(),
            BurstCode::Cts(code) => code.q(),
        }
    }

    pub fn t(&self) -> usize {
        match self {
            BurstCode::C22(_) => 2,
            BurstCode::Ctt(code) => code.t(),
            BurstCode::BinTT1(code) => code.t,
            BurstCode::QaryTT1(code) => code.t(),
            BurstCode::Cts(code) => code.t(),
        }
    }

    pub fn s(&self) -> usize {
        match self {
            BurstCode::C22(_) => 2,
            BurstCode::Ctt(code) => code.t(),
            BurstCode::BinTT1(code) => code.t - 1,
            BurstCode::QaryTT1(code) => code.t() - 1,
            BurstCode::Cts(code) => code.s(),
        }
    }

    pub fn p(&self) -> Option<usize> {
        match self {
            BurstCode::C22(_) | BurstCode::Ctt(_) => None,
            BurstCode::BinTT1(code) => Some(code.p),
            BurstCode::QaryTT1(code) => code.p(),
            BurstCode::Cts(code) => code.p(),
        }
    }

    /// Length of a received word: `n - (t - s)`.
    pub fn received_len(&self) -> usize {
        self.n() - (self.t() - self.s())
    }

    /// Number of distinct parameter classes of the family at these
    /// dimensions (the product of all syndrome moduli).
    pub fn space_size(&self) -> u128 {
        match self {
            BurstCode::C22(code) => code.space_size(),
            BurstCode::Ctt(code) => code.space_size(),
            BurstCode::BinTT1(code) => code.space_size(),
            BurstCode::QaryTT1(code) => code.space_size(),
            BurstCode::Cts(code) => code.space_size(),
        }
    }

    /// All residues of the instance flattened into one vector, in a
    /// fixed per-family order; two instances of the same family and
    /// dimensions are the same code iff these agree.
    pub fn residue_vec(&self) -> Vec<u64> {
        match self {
            BurstCode::C22(code) => code.residue_vec(),
            BurstCode::Ctt(code) => code.inner().residue_vec(),
            BurstCode::BinTT1(code) => flatten_bin(code),
            BurstCode::QaryTT1(code) => flatten_qary(code),
            BurstCode::Cts(code) => flatten_qary(code.inner()),
        }
    }

    pub fn is_member(&self, x: &Word) -> Result<bool> {
        match self {
            BurstCode::C22(code) => code.is_member(x),
            BurstCode::Ctt(code) => code.is_member(x),
            BurstCode::BinTT1(code) => code.is_member(x),
            BurstCode::QaryTT1(code) => code.is_member(x),
            BurstCode::Cts(code) => code.is_member(x),
        }
    }

    pub fn decode(&self, z: &Word, window: Option<(usize, usize)>) -> Result<Word> {
        match self {
            BurstCode::C22(code) => {
                reject_window(window, "c22")?;
                code.decode(z)
            }
            BurstCode::Ctt(code) => {
                reject_window(window, "ctt")?;
                code.decode(z)
            }
            BurstCode::BinTT1(code) => code.decode(z, window),
            BurstCode::QaryTT1(code) => code.decode(z, window),
            BurstCode::Cts(code) => code.decode(z, window),
        }
    }
}

fn reject_window(window: Option<(usize, usize)>, family: &str) -> Result<()> {
    if window.is_some() {
        return Err(CodeError::InvalidWindow(format!(
            "family {family} decodes whole words; it takes no window"
        )));
    }
    Ok(())
}

fn flatten_bin(code: &BinTT1Code) -> Vec<u64> {
    let mut v = vec![code.a1, code.a2];
    v.extend_from_slice(&code.b);
    v.extend_from_slice(&code.c);
    v.extend_from_slice(&code.c_prime);
    v
}

fn flatten_qary(code: &QaryTT1Code) -> Vec<u64> {
    let mut v = flatten_bin(code.inner());
    v.extend_from_slice(code.beta());
    for row in code.gamma() {
        v.extend_from_slice(row);
    }
    for row in code.gamma_prime() {
        v.extend_from_slice(row);
    }
    v
}
