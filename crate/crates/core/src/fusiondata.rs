//! Fusion rules and modular data of the semisimple quotients at roots of unity.

use crate::error::{Error, Result};
use crate::linalg;
use crate::qarith::{check_braiding_unit, qint, Scalar, ScalarDomain};
use itertools::Itertools;
use serde_json::{json, Value};

/// Labels appearing in `m ⊗ n`; `kappa = 0` means generic `q`.
pub fn fusion(m: usize, n: usize, kappa: u32) -> Result<Vec<usize>> {
    let lo = m.abs_diff(n);
    let hi = if kappa == 0 {
        m + n
    } else {
        if kappa < 3 {
            return Err(Error::Invalid(format!("κ={kappa}: need κ ≥ 3")));
        }
        let top = kappa as usize - 2;
        if m > top || n > top {
            return Err(Error::Invalid(format!("labels {m}, {n} exceed κ−2 = {top}")));
        }
        (m + n).min(2 * top - (m + n))
    };
    if hi < lo {
        return Ok(Vec::new());
    }
    Ok((lo..=hi).step_by(2).collect())
}

/// Fusion coefficients `N[m][n][k]` of the quotient with simple labels `0..=κ−2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    pub kappa: u32,
    pub labels: Vec<usize>,
    pub n: Vec<Vec<Vec<u8>>>,
}

impl FusionRing {
    pub fn new(kappa: u32) -> Result<FusionRing> {
        if kappa < 3 {
            return Err(Error::Invalid(format!("κ={kappa}: need κ ≥ 3")));
        }
        let r = kappa as usize - 1;
        let mut n = vec![vec![vec![0u8; r]; r]; r];
        for (a, row) in n.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                for k in fusion(a, b, kappa)? {
                    cell[k] += 1;
                }
            }
        }
        Ok(FusionRing { kappa, labels: (0..r).collect(), n })
    }

    /// Generic rule restricted to labels `0..=max_label` (products may leave the range).
    pub fn generic(max_label: usize) -> FusionRing {
        let r = max_label + 1;
        let mut n = vec![vec![vec![0u8; 2 * r]; r]; r];
        for (a, row) in n.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                for k in fusion(a, b, 0).unwrap() {
                    cell[k] += 1;
                }
            }
        }
        FusionRing { kappa: 0, labels: (0..r).collect(), n }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `Σ_k N[m][n][k] N[k][l][r] = Σ_k N[n][l][k] N[m][k][r]` for all labels.
    pub fn is_associative(&self) -> bool {
        let r = self.rank();
        for m in 0..r {
            for n in 0..r {
                for l in 0..r {
                    for t in 0..r {
                        let lhs: u32 = (0..r).map(|k| self.n[m][n][k] as u32 * self.n[k][l][t] as u32).sum();
                        let rhs: u32 = (0..r).map(|k| self.n[n][l][k] as u32 * self.n[m][k][t] as u32).sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,n,k,N\n");
        for m in 0..self.rank() {
            for n in 0..self.rank() {
                for (k, &c) in self.n[m][n].iter().enumerate() {
                    if c != 0 {
                        s.push_str(&format!("{m},{n},{k},{c}\n"));
                    }
                }
            }
        }
        s
    }
}

/// The domain hosting modular data at level `κ`: `q` a primitive `2κ`-th root
/// of unity inside `Q(ζ_{4κ})`, so that all four braiding units are present.
pub fn modular_domain(kappa: u32) -> Result<ScalarDomain> {
    if kappa < 3 {
        return Err(Error::Invalid(format!("κ={kappa}: need κ ≥ 3")));
    }
    ScalarDomain::root_of_unity(2 * kappa)
}

#[derive(Clone, Debug)]
pub struct ModularData {
    pub kappa: u32,
    pub dom: ScalarDomain,
    pub a: Scalar,
    pub s: Vec<Vec<Scalar>>,
    /// Twists `θ_n`.
    pub t: Vec<Scalar>,
    /// `s_{0,n} / s_{0,0}`.
    pub dims: Vec<Scalar>,
}

/// `s_{m,n} = (−1)^{m+n} [(m+1)(n+1)]_q` and `θ_n = (−a)^{n(n+2)}`.
pub fn modular_data(kappa: u32, dom: &ScalarDomain, a: &Scalar) -> Result<ModularData> {
    if dom.kappa() != Some(kappa) {
        return Err(Error::DomainMismatch(format!("{} does not have κ={kappa}", dom)));
    }
    check_braiding_unit(dom, a)?;
    let r = kappa as usize - 1;
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let s: Vec<Vec<Scalar>> = (0..r)
        .map(|m| (0..r).map(|n| qint(((m + 1) * (n + 1)) as i64, dom).scale_int(sign(m + n))).collect())
        .collect();
    let ma = a.neg();
    let t = (0..r).map(|n| ma.pow((n * (n + 2)) as i64)).collect::<Result<Vec<_>>>()?;
    let s00 = s[0][0].clone();
    let dims = (0..r).map(|n| s[0][n].div(&s00)).collect::<Result<Vec<_>>>()?;
    Ok(ModularData { kappa, dom: dom.clone(), a: a.clone(), s, t, dims })
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.s.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.s[i][j] == self.s[j][i]))
    }

    pub fn determinant(&self) -> Result<Scalar> {
        linalg::det_bareiss(&self.s)
    }

    /// Columns of `S` diagonalize every fusion matrix:
    /// `s_{0,j} Σ_k N[m][n][k] s_{k,j} = s_{m,j} s_{n,j}`.
    pub fn verlinde_holds(&self, ring: &FusionRing) -> bool {
        let r = self.rank();
        for m in 0..r {
            for n in 0..r {
                for j in 0..r {
                    let mut acc = self.dom.zero();
                    for k in 0..r {
                        if ring.n[m][n][k] != 0 {
                            acc = acc.add(&self.s[k][j].scale_int(ring.n[m][n][k] as i64));
                        }
                    }
                    if acc.mul(&self.s[0][j]) != self.s[m][j].mul(&self.s[n][j]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self, ring: &FusionRing, transparent: &[usize]) -> Result<Value> {
        let rm = |m: &Vec<Vec<Scalar>>| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(|x| x.render()).collect()).collect()
        };
        Ok(json!({
            "kappa": self.kappa,
            "domain": self.dom.fingerprint(),
            "a": self.a.render(),
            "labels": ring.labels,
            "dims": self.dims.iter().map(|x| x.render()).collect::<Vec<_>>(),
            "fusion": ring.n,
            "S": rm(&self.s),
            "T": self.t.iter().map(|x| x.render()).collect::<Vec<_>>(),
            "modular": check_modular(self)?,
            "transparent": transparent,
        }))
    }

    pub fn s_csv(&self) -> String {
        self.s
            .iter()
            .map(|r| r.iter().map(|x| format!("\"{}\"", x.render())).join(","))
            .join("\n")
            + "\n"
    }
}

/// Non-degeneracy of `S` by an exact determinant.
pub fn check_modular(md: &ModularData) -> Result<bool> {
    Ok(!md.determinant()?.is_zero())
}

/// Labels `m` with `θ_k = θ_m θ_n` whenever `k` occurs in `m ⊗ n`.
pub fn transparent_simples(md: &ModularData) -> Result<Vec<usize>> {
    let ring = FusionRing::new(md.kappa)?;
    let r = md.rank();
    let mut out = Vec::new();
    'label: for m in 0..r {
        for n in 0..r {
            let tmn = md.t[m].mul(&md.t[n]);
            for k in 0..r {
                if ring.n[m][n][k] != 0 && md.t[k] != tmn {
                    continue 'label;
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Alternative test through the S-matrix: `s_{m,n} s_{0,0} = s_{0,m} s_{0,n}` for all `n`.
/// Not used by [`transparent_simples`]; provided as a cross-check.
pub fn transparent_simples_by_s(md: &ModularData) -> Vec<usize> {
    let r = md.rank();
    (0..r)
        .filter(|&m| (0..r).all(|n| md.s[m][n].mul(&md.s[0][0]) == md.s[0][m].mul(&md.s[0][n])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fusion_examples() {
        assert_eq!(fusion(2, 3, 0).unwrap(), vec![1, 3, 5]);
        for k in 3..10 {
            assert_eq!(fusion(1, k as usize - 2, k).unwrap(), vec![k as usize - 3]);
            assert_eq!(fusion(0, 1, k).unwrap(), vec![1]);
        }
        assert_eq!(fusion(2, 2, 4).unwrap(), vec![0]);
        assert_eq!(fusion(1, 1, 3).unwrap(), vec![0]);
        assert!(fusion(3, 0, 4).is_err());
    }

    #[test]
    fn kappa_three() {
        let dom = modular_domain(3).unwrap();
        let md = modular_data(3, &dom, &dom.v().unwrap()).unwrap();
        let want = vec![vec![dom.int(1), dom.int(-1)], vec![dom.int(-1), dom.int(-1)]];
        assert_eq!(md.s, want);
        assert_eq!(md.determinant().unwrap(), dom.int(-2));
        assert!(md.t[0].is_one());
        assert_eq!(transparent_simples(&md).unwrap(), vec![0]);
    }
}
