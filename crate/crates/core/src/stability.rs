//! Eventual constancy in κ of filtered data of the fusion quotients, compared
//! with the generic Temperley–Lieb values.

use crate::braidcenter::{predicted_center_fusion, CenterKind};
use crate::error::{Error, Result};
use crate::fusiondata::fusion;
use crate::tlcat::multiplicity_profile;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const DEFAULT_KAPPA_MAX: u32 = 40;

const NOTE: &str = "constancy for all tested κ ≥ threshold is the checkable stand-in for a statement \
                    holding in the limit; nothing is claimed beyond κ_max";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub quantity: String,
    pub window: BTreeMap<String, usize>,
    /// `(κ, value)` for `3 ≤ κ ≤ κ_max`.
    pub values: Vec<(u32, u64)>,
    /// Least κ from which every value equals the generic one.
    pub threshold: Option<u32>,
    pub generic: u64,
    pub verdict: String,
    pub note: String,
}

impl StabilizationReport {
    fn new(quantity: &str, window: &[(&str, usize)], values: Vec<(u32, u64)>, generic: u64) -> StabilizationReport {
        let mut threshold = None;
        for &(k, v) in values.iter().rev() {
            if v != generic {
                break;
            }
            threshold = Some(k);
        }
        let verdict = if threshold.is_some() { "stable" } else { "not stable" };
        StabilizationReport {
            quantity: quantity.into(),
            window: window.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            values,
            threshold,
            generic,
            verdict: verdict.into(),
            note: NOTE.into(),
        }
    }

    pub fn is_stable(&self) -> bool {
        self.threshold.is_some()
    }

    /// Values are constant (and generic) beyond the threshold, with no
    /// oscillation; the threshold is the least such κ.
    pub fn eventually_constant(&self) -> bool {
        let Some(t) = self.threshold else { return false };
        let after = self.values.iter().filter(|(k, _)| *k >= t).all(|&(_, v)| v == self.generic);
        let before = self.values.iter().find(|(k, _)| *k + 1 == t).is_none_or(|&(_, v)| v != self.generic);
        after && before
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn to_text(&self) -> String {
        let window = self.window.iter().map(|(k, v)| format!("{k}={v}")).join(", ");
        let mut s = format!("{} ({window})\n", self.quantity);
        s.push_str("kappa  value  generic\n");
        for &(k, v) in &self.values {
            let mark = if v == self.generic { "" } else { "  *" };
            let _ = writeln!(s, "{k:>5}  {v:>5}  {:>7}{mark}", self.generic);
        }
        match self.threshold {
            Some(t) => {
                let _ = writeln!(s, "stable from kappa = {t}");
            }
            None => s.push_str("not stable within the window\n"),
        }
        s
    }
}

fn kappas(kappa_max: u32) -> Result<Vec<u32>> {
    if !(3..=DEFAULT_KAPPA_MAX.max(64)).contains(&kappa_max) {
        return Err(Error::Invalid(format!("κ_max = {kappa_max} must lie in 3..=64")));
    }
    Ok((3..=kappa_max).collect())
}

/// `dim End(n)` in the quotient at level κ, `Σ_i c_i(κ)²`, against the
/// Catalan number.
pub fn hom_dim_profile(n: usize, kappa_max: u32) -> Result<StabilizationReport> {
    if n > 7 {
        return Err(Error::Invalid(format!("n = {n} exceeds 7")));
    }
    let sq = |m: BTreeMap<usize, u64>| m.values().map(|c| c * c).sum::<u64>();
    let generic = sq(multiplicity_profile(n, 0)?);
    let values = kappas(kappa_max)?
        .into_par_iter()
        .map(|k| Ok((k, sq(multiplicity_profile(n, k)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilizationReport::new("dim End(X^n) in the quotient", &[("n", n), ("kappa_max", kappa_max as usize)], values, generic))
}

/// Number of pairs `i + j ≤ r` whose fusion at level κ equals the generic rule.
pub fn fusion_stability(r: usize, kappa_max: u32) -> Result<StabilizationReport> {
    if r > 6 {
        return Err(Error::Invalid(format!("r = {r} exceeds 6")));
    }
    let pairs: Vec<(usize, usize)> = (0..=r).flat_map(|i| (0..=r - i).map(move |j| (i, j))).collect();
    let generic = pairs.len() as u64;
    let values = kappas(kappa_max)?
        .into_par_iter()
        .map(|k| {
            let agree = pairs
                .iter()
                .filter(|&&(i, j)| fusion(i, j, k).is_ok_and(|f| f == fusion(i, j, 0).unwrap()))
                .count();
            (k, agree as u64)
        })
        .collect();
    Ok(StabilizationReport::new("fusion rules agreeing with the generic rule", &[("r", r), ("kappa_max", kappa_max as usize)], values, generic))
}

/// Label pair of a center simple at level κ: `M(i,j) ↦ (i, j)`,
/// `W(i,j) ↦ (κ−2−i, κ−2−j)`.
fn level_labels(kind: CenterKind, i: usize, j: usize, kappa: u32) -> Option<(usize, usize)> {
    let top = kappa as usize - 2;
    match kind {
        CenterKind::M => (i <= top && j <= top).then_some((i, j)),
        CenterKind::W => (i <= top && j <= top).then(|| (top - i, top - j)),
    }
}

/// Does the product of the two label pairs in the quotient at level κ, fused
/// factorwise, reproduce the center fusion table translated to level-κ labels?
fn product_agrees(x: (CenterKind, usize, usize), y: (CenterKind, usize, usize), kappa: u32) -> bool {
    let (Some(a), Some(b)) = (level_labels(x.0, x.1, x.2, kappa), level_labels(y.0, y.1, y.2, kappa)) else {
        return false;
    };
    let (Ok(left), Ok(right)) = (fusion(a.0, b.0, kappa), fusion(a.1, b.1, kappa)) else {
        return false;
    };
    let mut got: Vec<(usize, usize)> = left.iter().flat_map(|&l| right.iter().map(move |&r| (l, r))).collect();
    let want: Option<Vec<(usize, usize)>> = predicted_center_fusion(x, y)
        .into_iter()
        .flat_map(|s| {
            let m = s.mult;
            std::iter::repeat_n(s, m)
        })
        .map(|s| level_labels(s.kind, s.i, s.j, kappa))
        .collect();
    let Some(mut want) = want else { return false };
    got.sort_unstable();
    want.sort_unstable();
    got == want
}

/// Products `X ⊗ Y` of center simples with total weight `i+j+i′+j′ ≤ r`
/// (all four kind combinations) whose level-κ fusion reproduces the center
/// fusion table.
pub fn center_label_agree(r: usize, kappa_max: u32) -> Result<StabilizationReport> {
    if r > 4 {
        return Err(Error::Invalid(format!("r = {r} exceeds 4")));
    }
    let mut products = Vec::new();
    for kx in [CenterKind::M, CenterKind::W] {
        for ky in [CenterKind::M, CenterKind::W] {
            for i in 0..=r {
                for j in 0..=r - i {
                    for i2 in 0..=r - i - j {
                        for j2 in 0..=r - i - j - i2 {
                            products.push(((kx, i, j), (ky, i2, j2)));
                        }
                    }
                }
            }
        }
    }
    let generic = products.len() as u64;
    let values = kappas(kappa_max)?
        .into_par_iter()
        .map(|k| (k, products.iter().filter(|&&(x, y)| product_agrees(x, y, k)).count() as u64))
        .collect();
    Ok(StabilizationReport::new(
        "center products matching factorwise fusion",
        &[("r", r), ("kappa_max", kappa_max as usize)],
        values,
        generic,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_dims() {
        let r = hom_dim_profile(3, 10).unwrap();
        assert_eq!(&r.values[..3], &[(3, 1), (4, 4), (5, 5)]);
        assert_eq!((r.threshold, r.generic), (Some(5), 5));
        let r = hom_dim_profile(2, 10).unwrap();
        assert_eq!((r.threshold, r.generic), (Some(4), 2));
        let r = hom_dim_profile(0, 10).unwrap();
        assert!(r.values.iter().all(|&(_, v)| v == 1));
    }

    #[test]
    fn fusion_window() {
        let r = fusion_stability(4, 20).unwrap();
        assert_eq!(r.threshold, Some(6));
        assert!(r.eventually_constant());
    }

    #[test]
    fn center_labels() {
        assert!(product_agrees((CenterKind::M, 1, 0), (CenterKind::M, 1, 0), 4));
        assert!(!product_agrees((CenterKind::M, 1, 0), (CenterKind::M, 1, 0), 3));
        assert_eq!(level_labels(CenterKind::W, 0, 0, 7), Some((5, 5)));
        let r = center_label_agree(3, 20).unwrap();
        assert_eq!(r.threshold, Some(5));
    }
}
