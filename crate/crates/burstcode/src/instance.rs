//! JSON code-instance files.
//!
//! An instance file pins down one concrete code: the family, the
//! dimensions `(n, q, t, s, P)`, every residue, and — for the composite
//! families that consult a locator — which locator to use. Residues are
//! keyed by their construction names (`a1`, `a2`, `a3`, `b`, `c`,
//! `c_prime`, `beta`, `gamma`, `gamma_prime`); composite families carry
//! one residue object per deletion strength.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::applications::{
    AbsorptionACode, AbsorptionBCode, GenieLocator, InversionCode, LeqBurstDelCode, LocalizedCode,
    LocalizedInner, LocatorOracle, TrivialLocator,
};
use crate::codes::{BinTT1Code, BurstCode, C22Code, CtsCode, CttCode, QaryTT1Code};
use crate::error::{CodeError, Result};
use crate::permutation::{checked_factorial, LeqTbsdCode, Permutation, TbsdCode};
use crate::word::Word;

/// Residues of one constraint set. Which keys are required depends on
/// the family; unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueSet {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a3: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c_prime: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma_prime: Option<Vec<Vec<u64>>>,
}

/// One residue object for simple families, one per deletion strength
/// `i = 1..=t` for composite families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residues {
    One(ResidueSet),
    PerStrength(Vec<ResidueSet>),
}

/// Locator named by a composite instance: a genie is handed the error
/// window at decode time, the trivial locator searches the whole word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocatorKind {
    #[serde(rename = "genie")]
    Genie,
    #[serde(rename = "trivial")]
    Trivial,
}

impl LocatorKind {
    /// Turns the named locator and an optional decode-time window into a
    /// locator object. A genie requires the window; the trivial locator
    /// must not be given one.
    pub fn with_window(self, window: Option<(usize, usize)>) -> Result<Box<dyn LocatorOracle>> {
        match (self, window) {
            (LocatorKind::Genie, Some(window)) => Ok(Box::new(GenieLocator { window })),
            (LocatorKind::Genie, None) => {
                Err(CodeError::InvalidWindow("the genie locator needs a window (lo,hi)".into()))
            }
            (LocatorKind::Trivial, None) => Ok(Box::new(TrivialLocator)),
            (LocatorKind::Trivial, Some(_)) => {
                Err(CodeError::InvalidWindow("the trivial locator takes no window".into()))
            }
        }
    }
}

/// A code instance as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub family: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    pub residues: Residues,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locator: Option<LocatorKind>,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance> {
        serde_json::from_str(text).map_err(|e| CodeError::ParseError {
            input: "instance JSON".into(),
            reason: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("an instance always serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| CodeError::ParseError {
            input: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Instance::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json() + "\n").map_err(|e| CodeError::ParseError {
            input: path.display().to_string(),
            reason: e.to_string(),
        })
    }

    /// Builds the code the file describes.
    pub fn build(&self) -> Result<AnyCode> {
        AnyCode::from_instance(self)
    }
}

/// A buildable code of any family, simple or composite.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyCode {
    Burst(BurstCode),
    Inversion(InversionCode),
    AbsorptionA(AbsorptionACode),
    AbsorptionB(AbsorptionBCode),
    LeqBurstDel(LeqBurstDelCode, LocatorKind),
    Localized(LocalizedCode, LocatorKind),
    Tbsd(TbsdCode),
    LeqTbsd(LeqTbsdCode),
}

fn req<T: Copy>(value: Option<T>, key: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| CodeError::InvalidParams(format!("family {family} requires \"{key}\"")))
}

fn req_vec<T: Clone>(value: &Option<Vec<T>>, key: &str, family: &str) -> Result<Vec<T>> {
    value
        .clone()
        .ok_or_else(|| CodeError::InvalidParams(format!("family {family} requires residues.{key}")))
}

fn check_absent<T>(value: Option<T>, key: &str, family: &str) -> Result<()> {
    if value.is_some() {
        return Err(CodeError::InvalidParams(format!("family {family} does not take \"{key}\"")));
    }
    Ok(())
}

fn one<'a>(residues: &'a Residues, family: &str) -> Result<&'a ResidueSet> {
    match residues {
        Residues::One(rs) => Ok(rs),
        Residues::PerStrength(_) => Err(CodeError::InvalidParams(format!(
            "family {family} takes a single residue object, not a list"
        ))),
    }
}

fn per_strength<'a>(residues: &'a Residues, t: usize, family: &str) -> Result<&'a [ResidueSet]> {
    match residues {
        Residues::PerStrength(list) if list.len() == t => Ok(list),
        Residues::PerStrength(list) => Err(CodeError::InvalidParams(format!(
            "family {family} needs one residue object per strength 1..={t}, got {}",
            list.len()
        ))),
        Residues::One(_) => Err(CodeError::InvalidParams(format!(
            "family {family} takes a list of residue objects, one per strength 1..={t}"
        ))),
    }
}

fn build_c22(n: usize, q: u64, rs: &ResidueSet, family: &str) -> Result<C22Code> {
    C22Code::new(
        n,
        q,
        req(rs.a1, "residues.a1", family)?,
        req(rs.a2, "residues.a2", family)?,
        req(rs.a3, "residues.a3", family)?,
    )
}

fn build_bin(n: usize, t: usize, p: usize, rs: &ResidueSet, family: &str) -> Result<BinTT1Code> {
    BinTT1Code::new(
        n,
        t,
        p,
        req(rs.a1, "residues.a1", family)?,
        req(rs.a2, "residues.a2", family)?,
        req_vec(&rs.b, "b", family)?,
        req_vec(&rs.c, "c", family)?,
        req_vec(&rs.c_prime, "c_prime", family)?,
    )
}

fn build_qary(
    n: usize,
    q: u64,
    t: usize,
    p: Option<usize>,
    rs: &ResidueSet,
    family: &str,
) -> Result<QaryTT1Code> {
    QaryTT1Code::new(
        n,
        q,
        t,
        p,
        req(rs.a1, "residues.a1", family)?,
        req(rs.a2, "residues.a2", family)?,
        req_vec(&rs.b, "b", family)?,
        req_vec(&rs.c, "c", family)?,
        req_vec(&rs.c_prime, "c_prime", family)?,
        req_vec(&rs.beta, "beta", family)?,
        req_vec(&rs.gamma, "gamma", family)?,
        req_vec(&rs.gamma_prime, "gamma_prime", family)?,
    )
}

fn build_cts(
    n: usize,
    q: u64,
    t: usize,
    s: usize,
    p: Option<usize>,
    rs: &ResidueSet,
    family: &str,
) -> Result<CtsCode> {
    CtsCode::new(
        n,
        q,
        t,
        s,
        p,
        req(rs.a1, "residues.a1", family)?,
        req(rs.a2, "residues.a2", family)?,
        req_vec(&rs.b, "b", family)?,
        req_vec(&rs.c, "c", family)?,
        req_vec(&rs.c_prime, "c_prime", family)?,
        req_vec(&rs.beta, "beta", family)?,
        req_vec(&rs.gamma, "gamma", family)?,
        req_vec(&rs.gamma_prime, "gamma_prime", family)?,
    )
}

fn residues_of_c22(code: &C22Code) -> ResidueSet {
    ResidueSet { a1: Some(code.a1), a2: Some(code.a2), a3: Some(code.a3), ..ResidueSet::default() }
}

fn residues_of_bin(code: &BinTT1Code) -> ResidueSet {
    ResidueSet {
        a1: Some(code.a1),
        a2: Some(code.a2),
        b: Some(code.b.clone()),
        c: Some(code.c.clone()),
        c_prime: Some(code.c_prime.clone()),
        ..ResidueSet::default()
    }
}

fn residues_of_qary(code: &QaryTT1Code) -> ResidueSet {
    ResidueSet {
        beta: Some(code.beta().to_vec()),
        gamma: Some(code.gamma().to_vec()),
        gamma_prime: Some(code.gamma_prime().to_vec()),
        ..residues_of_bin(code.inner())
    }
}

fn parse_values(text: &str) -> Result<Vec<u64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|e| CodeError::ParseError {
                input: text.to_string(),
                reason: format!("invalid value {part:?}: {e}"),
            })
        })
        .collect()
}

impl AnyCode {
    pub fn from_instance(inst: &Instance) -> Result<AnyCode> {
        let f = inst.family.as_str();
        let check_ts = |want_t: Option<usize>, want_s: Option<usize>| -> Result<()> {
            if inst.t.is_some() && want_t.is_some() && inst.t != want_t
                || inst.s.is_some() && want_s.is_some() && inst.s != want_s
            {
                return Err(CodeError::InvalidParams(format!(
                    "family {f} fixes (t,s); the file disagrees"
                )));
            }
            Ok(())
        };
        let no_locator = || check_absent(inst.locator, "locator", f);
        let no_p = || check_absent(inst.p, "P", f);
        Ok(match f {
            "c22" => {
                check_ts(Some(2), Some(2))?;
                no_p()?;
                no_locator()?;
                let q = req(inst.q, "q", f)?;
                AnyCode::Burst(BurstCode::C22(build_c22(inst.n, q, one(&inst.residues, f)?, f)?))
            }
            "ctt" => {
                let t = req(inst.t, "t", f)?;
                check_ts(None, Some(t))?;
                no_p()?;
                no_locator()?;
                let q = req(inst.q, "q", f)?;
                let rs = one(&inst.residues, f)?;
                AnyCode::Burst(BurstCode::Ctt(CttCode::new(
                    inst.n,
                    q,
                    t,
                    req(rs.a1, "residues.a1", f)?,
                    req(rs.a2, "residues.a2", f)?,
                    req(rs.a3, "residues.a3", f)?,
                )?))
            }
            "bin_tt1" => {
                let t = req(inst.t, "t", f)?;
                check_ts(None, Some(t - 1))?;
                no_locator()?;
                if inst.q.is_some_and(|q| q != 2) {
                    return Err(CodeError::InvalidParams("family bin_tt1 is binary-only".into()));
                }
                let rs = one(&inst.residues, f)?;
                AnyCode::Burst(BurstCode::BinTT1(build_bin(
                    inst.n,
                    t,
                    inst.p.unwrap_or(inst.n),
                    rs,
                    f,
                )?))
            }
            "qary_tt1" => {
                let t = req(inst.t, "t", f)?;
                check_ts(None, Some(t - 1))?;
                no_locator()?;
                let q = req(inst.q, "q", f)?;
                let rs = one(&inst.residues, f)?;
                AnyCode::Burst(BurstCode::QaryTT1(build_qary(inst.n, q, t, inst.p, rs, f)?))
            }
            "cts" => {
                let t = req(inst.t, "t", f)?;
                let s = req(inst.s, "s", f)?;
                no_locator()?;
                let q = req(inst.q, "q", f)?;
                let rs = one(&inst.residues, f)?;
                AnyCode::Burst(BurstCode::Cts(build_cts(inst.n, q, t, s, inst.p, rs, f)?))
            }
            "inversion" => {
                let t = req(inst.t, "t", f)?;
                check_ts(None, Some(t))?;
                no_p()?;
                no_locator()?;
                let q = req(inst.q, "q", f)?;
                let rs = one(&inst.residues, f)?;
                AnyCode::Inversion(InversionCode::from_inner(CttCode::new(
                    inst.n,
                    q,
                    t,
                    req(rs.a1, "residues.a1", f)?,
                    req(rs.a2, "residues.a2", f)?,
                    req(rs.a3, "residues.a3", f)?,
                )?))
            }
            "absorption_a" => {
                check_ts(Some(2), Some(1))?;
                no_p()?;
                no_locator()?;
                let q = req(inst.q, "q", f)?;
                let rs = one(&inst.residues, f)?;
                AnyCode::AbsorptionA(AbsorptionACode::from_inner(build_cts(
                    inst.n, q, 2, 1, None, rs, f,
                )?)?)
            }
            "absorption_b" => {
                check_ts(Some(2), Some(2))?;
                no_p()?;
                no_locator()?;
                let q = req(inst.q, "q", f)?;
                AnyCode::AbsorptionB(AbsorptionBCode::from_inner(build_c22(
                    inst.n,
                    q,
                    one(&inst.residues, f)?,
                    f,
                )?))
            }
            "leq_burst_del" => {
                let t = req(inst.t, "t", f)?;
                let q = req(inst.q, "q", f)?;
                let list = per_strength(&inst.residues, t, f)?;
                let inners = list
                    .iter()
                    .enumerate()
                    .map(|(idx, rs)| {
                        let i = idx + 1;
                        build_cts(inst.n, q, i, 0, inst.p.map(|p| p.max(i)), rs, f)
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnyCode::LeqBurstDel(
                    LeqBurstDelCode::from_inners(inst.p, inners)?,
                    inst.locator.unwrap_or(LocatorKind::Trivial),
                )
            }
            "localized" => {
                let t = req(inst.t, "t", f)?;
                let q = req(inst.q, "q", f)?;
                let list = per_strength(&inst.residues, t, f)?;
                let inners = list
                    .iter()
                    .enumerate()
                    .map(|(idx, rs)| {
                        let i = idx + 1;
                        Ok(if i == 1 && t >= 2 {
                            if q == 2 {
                                LocalizedInner::Binary(build_bin(
                                    inst.n,
                                    t,
                                    inst.p.unwrap_or(inst.n),
                                    rs,
                                    f,
                                )?)
                            } else {
                                LocalizedInner::Qary(build_qary(inst.n, q, t, inst.p, rs, f)?)
                            }
                        } else {
                            LocalizedInner::Lifted(build_cts(inst.n, q, t, t - i, inst.p, rs, f)?)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnyCode::Localized(
                    LocalizedCode::from_inners(inst.p, inners)?,
                    inst.locator.unwrap_or(LocatorKind::Trivial),
                )
            }
            "tbsd" => {
                let t = req(inst.t, "t", f)?;
                check_absent(inst.q, "q", f)?;
                no_p()?;
                no_locator()?;
                let rs = one(&inst.residues, f)?;
                let inner_q = checked_factorial(t as u64 + 1)?;
                let inner = build_cts(inst.n - t, inner_q, 2 * t, t, None, rs, f)?;
                AnyCode::Tbsd(TbsdCode::from_inner(inst.n, t, inner)?)
            }
            "leq_tbsd" => {
                let t = req(inst.t, "t", f)?;
                check_absent(inst.q, "q", f)?;
                no_locator()?;
                let list = per_strength(&inst.residues, t, f)?;
                let inners = list
                    .iter()
                    .enumerate()
                    .map(|(idx, rs)| {
                        let i = idx + 1;
                        build_cts(
                            inst.n - i,
                            checked_factorial(i as u64 + 1)?,
                            2 * i,
                            i,
                            inst.p.map(|p| (p + i).min(inst.n - i)),
                            rs,
                            f,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnyCode::LeqTbsd(LeqTbsdCode::from_inners(inst.n, t, inst.p, inners)?)
            }
            other => {
                return Err(CodeError::ParseError {
                    input: other.into(),
                    reason: "unknown family; expected c22, ctt, bin_tt1, qary_tt1, cts, \
                             inversion, absorption_a, absorption_b, leq_burst_del, localized, \
                             tbsd, or leq_tbsd"
                        .into(),
                })
            }
        })
    }

    /// The file form of this code.
    pub fn to_instance(&self) -> Instance {
        let base = |family: &str, n, q, t, s, p, residues| Instance {
            family: family.into(),
            n,
            q,
            t,
            s,
            p,
            residues,
            locator: None,
        };
        match self {
            AnyCode::Burst(code) => {
                let rs = match code {
                    BurstCode::C22(c) => residues_of_c22(c),
                    BurstCode::Ctt(c) => residues_of_c22(c.inner()),
                    BurstCode::BinTT1(c) => residues_of_bin(c),
                    BurstCode::QaryTT1(c) => residues_of_qary(c),
                    BurstCode::Cts(c) => residues_of_qary(c.inner()),
                };
                base(
                    code.family().name(),
                    code.n(),
                    Some(code.q()),
                    Some(code.t()),
                    Some(code.s()),
                    code.p(),
                    Residues::One(rs),
                )
            }
            AnyCode::Inversion(code) => {
                let inner = code.inner();
                base(
                    "inversion",
                    inner.n(),
                    Some(inner.q()),
                    Some(inner.t()),
                    Some(inner.t()),
                    None,
                    Residues::One(residues_of_c22(inner.inner())),
                )
            }
            AnyCode::AbsorptionA(code) => {
                let inner = code.inner();
                base(
                    "absorption_a",
                    inner.n(),
                    Some(inner.q()),
                    Some(2),
                    Some(1),
                    None,
                    Residues::One(residues_of_qary(inner.inner())),
                )
            }
            AnyCode::AbsorptionB(code) => {
                let inner = code.inner();
                base(
                    "absorption_b",
                    inner.n,
                    Some(inner.q),
                    Some(2),
                    Some(2),
                    None,
                    Residues::One(residues_of_c22(inner)),
                )
            }
            AnyCode::LeqBurstDel(code, locator) => {
                let list = (1..=code.t())
                    .map(|i| residues_of_qary(code.inner(i).expect("strength exists").inner()))
                    .collect();
                let mut inst = base(
                    "leq_burst_del",
                    code.n(),
                    Some(code.q()),
                    Some(code.t()),
                    None,
                    code.p(),
                    Residues::PerStrength(list),
                );
                inst.locator = Some(*locator);
                inst
            }
            AnyCode::Localized(code, locator) => {
                let list = (1..=code.t())
                    .map(|i| match code.inner(i).expect("strength exists") {
                        LocalizedInner::Binary(c) => residues_of_bin(c),
                        LocalizedInner::Qary(c) => residues_of_qary(c),
                        LocalizedInner::Lifted(c) => residues_of_qary(c.inner()),
                    })
                    .collect();
                let mut inst = base(
                    "localized",
                    code.n(),
                    Some(code.q()),
                    Some(code.t()),
                    None,
                    code.p(),
                    Residues::PerStrength(list),
                );
                inst.locator = Some(*locator);
                inst
            }
            AnyCode::Tbsd(code) => base(
                "tbsd",
                code.n(),
                None,
                Some(code.t()),
                None,
                None,
                Residues::One(residues_of_qary(code.inner().inner())),
            ),
            AnyCode::LeqTbsd(code) => {
                let list = (1..=code.t())
                    .map(|i| residues_of_qary(code.inner(i).expect("strength exists").inner()))
                    .collect();
                base(
                    "leq_tbsd",
                    code.n(),
                    None,
                    Some(code.t()),
                    None,
                    code.p(),
                    Residues::PerStrength(list),
                )
            }
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            AnyCode::Burst(code) => code.family().name(),
            AnyCode::Inversion(_) => "inversion",
            AnyCode::AbsorptionA(_) => "absorption_a",
            AnyCode::AbsorptionB(_) => "absorption_b",
            AnyCode::LeqBurstDel(..) => "leq_burst_del",
            AnyCode::Localized(..) => "localized",
            AnyCode::Tbsd(_) => "tbsd",
            AnyCode::LeqTbsd(_) => "leq_tbsd",
        }
    }

    /// The simple burst code, if this is one.
    pub fn as_burst(&self) -> Option<&BurstCode> {
        match self {
            AnyCode::Burst(code) => Some(code),
            _ => None,
        }
    }

    /// Decodes a received word given in text form (digit string for
    /// `q <= 10`, comma-separated otherwise; permutation families take
    /// comma-separated surviving values) and returns the decoded word in
    /// the same text form.
    pub fn decode_text(&self, z: &str, window: Option<(usize, usize)>) -> Result<String> {
        let parse = |q: u64| Word::parse(z, q);
        let reject_window = |family: &str| -> Result<()> {
            if window.is_some() {
                return Err(CodeError::InvalidWindow(format!("family {family} takes no window")));
            }
            Ok(())
        };
        Ok(match self {
            AnyCode::Burst(code) => code.decode(&parse(code.q())?, window)?.to_string(),
            AnyCode::Inversion(code) => {
                reject_window("inversion")?;
                code.decode(&parse(code.inner().q())?)?.to_string()
            }
            AnyCode::AbsorptionA(code) => {
                reject_window("absorption_a")?;
                code.decode(&parse(code.inner().q())?)?.to_string()
            }
            AnyCode::AbsorptionB(code) => {
                reject_window("absorption_b")?;
                code.decode(&parse(code.inner().q)?)?.to_string()
            }
            AnyCode::LeqBurstDel(code, locator) => {
                let locator = locator.with_window(window)?;
                code.decode(&parse(code.q())?, locator.as_ref())?.to_string()
            }
            AnyCode::Localized(code, locator) => {
                let locator = locator.with_window(window)?;
                code.decode(&parse(code.q())?, locator.as_ref())?.to_string()
            }
            AnyCode::Tbsd(code) => {
                reject_window("tbsd")?;
                code.decode(&parse_values(z)?)?.to_string()
            }
            AnyCode::LeqTbsd(code) => code.decode(&parse_values(z)?, window)?.to_string(),
        })
    }

    /// Tests membership of a word given in text form.
    pub fn member_text(&self, x: &str) -> Result<bool> {
        match self {
            AnyCode::Burst(code) => code.is_member(&Word::parse(x, code.q())?),
            AnyCode::Inversion(code) => code.is_member(&Word::parse(x, code.inner().q())?),
            AnyCode::AbsorptionA(code) => code.is_member(&Word::parse(x, code.inner().q())?),
            AnyCode::AbsorptionB(code) => code.is_member(&Word::parse(x, code.inner().q)?),
            AnyCode::LeqBurstDel(code, _) => {
                code.is_member(&Word::parse(x, code.q())?, &TrivialLocator)
            }
            AnyCode::Localized(code, _) => {
                code.is_member(&Word::parse(x, code.q())?, &TrivialLocator)
            }
            AnyCode::Tbsd(code) => code.is_member(&Permutation::new(parse_values(x)?)?),
            AnyCode::LeqTbsd(code) => code.is_member(&Permutation::new(parse_values(x)?)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_burst, BurstEvent};

    fn roundtrip(code: AnyCode) -> AnyCode {
        let inst = code.to_instance();
        let text = inst.to_json();
        let parsed = Instance::from_json(&text).unwrap();
        assert_eq!(parsed, inst);
        let rebuilt = parsed.build().unwrap();
        assert_eq!(rebuilt, code);
        rebuilt
    }

    #[test]
    fn simple_families_round_trip_through_json() {
        let bin = Word::parse("01001101", 2).unwrap();
        let q4 = Word::parse("12030121", 4).unwrap();
        roundtrip(AnyCode::Burst(BurstCode::C22(C22Code::for_word(&q4).unwrap())));
        roundtrip(AnyCode::Burst(BurstCode::Ctt(CttCode::for_word(&q4, 3).unwrap())));
        roundtrip(AnyCode::Burst(BurstCode::BinTT1(BinTT1Code::for_word(&bin, 2, 5).unwrap())));
        roundtrip(AnyCode::Burst(BurstCode::QaryTT1(
            QaryTT1Code::for_word(&q4, 2, Some(4)).unwrap(),
        )));
        roundtrip(AnyCode::Burst(BurstCode::Cts(CtsCode::for_word(&q4, 3, 1, None).unwrap())));
        roundtrip(AnyCode::Inversion(InversionCode::for_word(&q4, 3).unwrap()));
        roundtrip(AnyCode::AbsorptionA(AbsorptionACode::for_word(&q4).unwrap()));
        roundtrip(AnyCode::AbsorptionB(AbsorptionBCode::for_word(&q4).unwrap()));
    }

    #[test]
    fn composite_families_round_trip_through_json() {
        let bin = Word::parse("010011010", 2).unwrap();
        roundtrip(AnyCode::LeqBurstDel(
            LeqBurstDelCode::for_word(&bin, 3, None).unwrap(),
            LocatorKind::Trivial,
        ));
        roundtrip(AnyCode::Localized(
            LocalizedCode::for_word(&bin, 3, Some(5)).unwrap(),
            LocatorKind::Genie,
        ));
        let sigma = Permutation::parse("3,1,4,2,6,5,7").unwrap();
        roundtrip(AnyCode::Tbsd(TbsdCode::for_permutation(&sigma, 2).unwrap()));
        roundtrip(AnyCode::LeqTbsd(LeqTbsdCode::for_permutation(&sigma, 2, Some(4)).unwrap()));
    }

    #[test]
    fn decode_text_round_trips_a_burst() {
        let x = Word::parse("12030121", 4).unwrap();
        let code = AnyCode::Burst(BurstCode::C22(C22Code::for_word(&x).unwrap()));
        let event = BurstEvent { pos: 3, t: 2, ins: vec![3, 3] };
        let z = apply_burst(&x, &event).unwrap();
        assert_eq!(code.decode_text(&z.to_string(), None).unwrap(), "12030121");
        assert!(code.member_text("12030121").unwrap());
        assert!(code.decode_text("123", None).is_err());
    }

    #[test]
    fn locator_kinds_gate_the_window() {
        let bin = Word::parse("010011010", 2).unwrap();
        let code = LeqBurstDelCode::for_word(&bin, 2, None).unwrap();
        let genie = AnyCode::LeqBurstDel(code.clone(), LocatorKind::Genie);
        let trivial = AnyCode::LeqBurstDel(code, LocatorKind::Trivial);
        let event = BurstEvent { pos: 4, t: 2, ins: vec![] };
        let z = apply_burst(&bin, &event).unwrap().to_string();
        assert_eq!(genie.decode_text(&z, Some((3, 6))).unwrap(), bin.to_string());
        assert_eq!(trivial.decode_text(&z, None).unwrap(), bin.to_string());
        assert!(genie.decode_text(&z, None).is_err());
        assert!(trivial.decode_text(&z, Some((3, 6))).is_err());
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(Instance::from_json("{").is_err());
        // unknown family
        let bad = r#"{"family":"vt","n":5,"q":2,"residues":{"a1":0,"a2":0,"a3":0}}"#;
        assert!(Instance::from_json(bad).unwrap().build().is_err());
        // unknown top-level key
        let bad = r#"{"family":"c22","n":5,"q":2,"rho":1,"residues":{"a1":0,"a2":0,"a3":0}}"#;
        assert!(Instance::from_json(bad).is_err());
        // missing residue key
        let bad = r#"{"family":"c22","n":5,"q":2,"residues":{"a1":0,"a2":0}}"#;
        assert!(Instance::from_json(bad).unwrap().build().is_err());
        // residues out of range for the moduli
        let bad = r#"{"family":"c22","n":5,"q":2,"residues":{"a1":9,"a2":0,"a3":0}}"#;
        assert!(Instance::from_json(bad).unwrap().build().is_err());
    }

    #[test]
    fn files_survive_a_disk_round_trip() {
        let dir = std::env::temp_dir().join("burstcode-instance-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c22.json");
        let x = Word::parse("0110", 2).unwrap();
        let inst = AnyCode::Burst(BurstCode::C22(C22Code::for_word(&x).unwrap())).to_instance();
        inst.save(&path).unwrap();
        assert_eq!(Instance::load(&path).unwrap(), inst);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
