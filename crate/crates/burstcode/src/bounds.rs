//! Closed-form ball sizes, the sphere-packing redundancy lower bound, and
//! redundancy accounting for enumerated codes.

use crate::codes::{BurstCode, Family};
use crate::error::{CodeError, Result};
use serde::Serialize;

/// Size of a `(t, s)`-burst ball for `s >= 1`:
/// `q^(s-1) * ((q-1)(n-t+1) + 1)`. The size does not depend on the center.
/// For `s = 0` the ball size is center-dependent and has no closed form
/// here, so that case is rejected.
pub fn ball_size_formula(n: usize, q: u64, t: usize, s: usize) -> Result<u128> {
    if q < 2 {
        return Err(CodeError::AlphabetTooSmall(q));
    }
    if s == 0 {
        return Err(CodeError::InvalidParams(
            "ball sizes with s = 0 are center-dependent; enumerate instead".into(),
        ));
    }
    if t > n {
        return Err(CodeError::InvalidParams(format!(
            "cannot delete {t} symbols from a word of length {n}"
        )));
    }
    let q = q as u128;
    let positions = (n - t + 1) as u128;
    Ok(q.pow(s as u32 - 1) * ((q - 1) * positions + 1))
}

/// Sphere-packing lower bound on the redundancy (in bits) of any
/// `(t, s)`-burst correcting code with `s >= 1`:
/// `log2((q-1)(n-t+1) + 1) + (t-1) log2 q`.
pub fn sphere_packing_redundancy(n: usize, q: u64, t: usize, s: usize) -> Result<f64> {
    if q < 2 {
        return Err(CodeError::AlphabetTooSmall(q));
    }
    if s == 0 {
        return Err(CodeError::InvalidParams("the sphere-packing bound applies to s >= 1".into()));
    }
    if t == 0 || t > n {
        return Err(CodeError::InvalidParams(format!("t = {t} outside [1, {n}]")));
    }
    let qf = q as f64;
    Ok((((q - 1) as f64) * ((n - t + 1) as f64) + 1.0).log2() + ((t - 1) as f64) * qf.log2())
}

/// Redundancy in bits of a code of the given size inside the full space:
/// `n log2 q - log2 size`.
pub fn code_redundancy(n: usize, q: u64, size: u128) -> Result<f64> {
    if q < 2 {
        return Err(CodeError::AlphabetTooSmall(q));
    }
    if size == 0 {
        return Err(CodeError::InvalidParams("a code must have at least one word".into()));
    }
    let space = (q as f64).log2() * n as f64;
    let r = space - (size as f64).log2();
    if r < -1e-9 {
        return Err(CodeError::InvalidParams(format!(
            "size {size} exceeds the space of {n} symbols over q={q}"
        )));
    }
    Ok(r.max(0.0))
}

/// Closed-form upper bound (in bits) on the redundancy of the best
/// parameter class of `code`'s family at its dimensions. Each family
/// has at least as many words as `q^n / (number of classes)` in its
/// largest class, so the guarantee is `log2(number of classes)`; where
/// the construction has a published closed form, that form is used (it
/// upper-bounds the class count), otherwise the class count is taken
/// directly.
pub fn redundancy_guarantee(code: &BurstCode) -> f64 {
    let q = code.q() as f64;
    let t = code.t();
    match code.family() {
        // 4q^2 (q(q-1)(n-1) + 1) <= 4 q^4 n classes
        Family::C22 => (code.n() as f64).log2() + 4.0 * q.log2() + 2.0,
        // the same count over alphabet q^(t-1) and ceil(n/(t-1)) blocks
        Family::Ctt => {
            let d = (t - 1).max(1);
            let blocks = code.n().div_ceil(d) as f64;
            blocks.log2() + 4.0 * d as f64 * q.log2() + 2.0
        }
        // exactly tP * 2t * (2t^2)^k classes with k = floor(t^2/2)
        Family::BinTT1 => {
            let p = code.p().unwrap_or(code.n()) as f64;
            let tf = t as f64;
            let k = (t * t / 2) as f64;
            (tf * p).log2() + (2.0 * tf).log2() + k * (1.0 + 2.0 * tf.log2())
        }
        // log n + O(1): take the class count of the instance itself
        Family::QaryTT1 | Family::Cts => (code.space_size() as f64).log2(),
    }
}

/// One row of a bound table.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub q: u64,
    pub t: usize,
    pub s: usize,
    pub ball_size: u128,
    pub min_redundancy_bits: f64,
}

impl BoundReport {
    pub fn csv_header() -> &'static str {
        "n,q,t,s,ball_size,min_redundancy_bits"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.6}",
            self.n, self.q, self.t, self.s, self.ball_size, self.min_redundancy_bits
        )
    }
}

/// Builds bound-table rows for a list of lengths at fixed `q, t, s`.
pub fn bound_table(ns: &[usize], q: u64, t: usize, s: usize) -> Result<Vec<BoundReport>> {
    ns.iter()
        .map(|&n| {
            Ok(BoundReport {
                n,
                q,
                t,
                s,
                ball_size: ball_size_formula(n, q, t, s)?,
                min_redundancy_bits: sphere_packing_redundancy(n, q, t, s)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_size_examples() {
        assert_eq!(ball_size_formula(5, 2, 2, 1).unwrap(), 5);
        assert_eq!(ball_size_formula(3, 3, 1, 1).unwrap(), 7);
        assert_eq!(ball_size_formula(6, 2, 2, 2).unwrap(), 12);
        // t = n leaves a single position: q^s outcomes
        assert_eq!(ball_size_formula(3, 3, 3, 2).unwrap(), 9);
        assert!(ball_size_formula(5, 2, 2, 0).is_err());
        assert!(ball_size_formula(3, 2, 4, 1).is_err());
    }

    #[test]
    fn sphere_packing_examples() {
        let r = sphere_packing_redundancy(5, 2, 1, 1).unwrap();
        assert!((r - 6f64.log2()).abs() < 1e-12);
        let r2 = sphere_packing_redundancy(8, 3, 2, 2).unwrap();
        assert!((r2 - ((15f64).log2() + 3f64.log2())).abs() < 1e-12);
        assert!(sphere_packing_redundancy(5, 2, 0, 1).is_err());
    }

    #[test]
    fn code_redundancy_examples() {
        let r = code_redundancy(5, 2, 6).unwrap();
        assert!((r - (5.0 - 6f64.log2())).abs() < 1e-12);
        // the whole space has zero redundancy
        assert!(code_redundancy(4, 2, 16).unwrap().abs() < 1e-12);
        assert!(code_redundancy(4, 2, 17).is_err());
        assert!(code_redundancy(4, 2, 0).is_err());
    }

    #[test]
    fn redundancy_guarantee_dominates_the_class_count() {
        use crate::codes::param_search;
        use crate::verify::DEFAULT_ENUMERATION_CAP;

        let cases = [
            (Family::C22, 6, 2, 2, 2, None),
            (Family::C22, 4, 3, 2, 2, None),
            (Family::Ctt, 9, 2, 3, 3, None),
            (Family::BinTT1, 8, 2, 2, 1, Some(6)),
            (Family::QaryTT1, 5, 3, 2, 1, None),
            (Family::Cts, 6, 2, 3, 1, None),
        ];
        for (family, n, q, t, s, p) in cases {
            let outcome = param_search(family, n, q, t, s, p, DEFAULT_ENUMERATION_CAP).unwrap();
            let guarantee = redundancy_guarantee(&outcome.code);
            let classes = (outcome.code.space_size() as f64).log2();
            assert!(
                guarantee >= classes - 1e-9,
                "{family}: guarantee {guarantee} below class count {classes}"
            );
            // sphere packing <= achieved redundancy <= guarantee
            let achieved = code_redundancy(n, q, outcome.size.into()).unwrap();
            assert!(achieved <= guarantee + 1e-9, "{family}: {achieved} > {guarantee}");
            if s >= 1 && s == t {
                let floor = sphere_packing_redundancy(n, q, t, s).unwrap();
                assert!(floor <= achieved + 1e-9, "{family}: {floor} > {achieved}");
            }
        }
    }

    #[test]
    fn bound_table_rows() {
        let rows = bound_table(&[8, 12], 2, 3, 3).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].ball_size, 4 * 7);
        assert!(rows[0].csv_row().starts_with("8,2,3,3,"));
        assert_eq!(BoundReport::csv_header().split(',').count(), 6);
    }
}
