//! Exact linear algebra over [`Scalar`] fields and fast elimination modulo
//! word-sized primes.

use crate::error::{Error, Result};
use crate::qarith::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for k in c..cols {
                if !m[r][k].is_zero() {
                    m[r][k] = m[r][k].mul(&inv);
                }
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..cols {
                if !m[r][k].is_zero() {
                    let t = f.mul(&m[r][k]);
                    m[i][k] = m[i][k].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Scalar>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of `{x : m·x = 0}`.
pub fn nullspace(m: &[Vec<Scalar>], cols: usize, zero: &Scalar) -> Vec<Vec<Scalar>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let one = zero.one_like();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![zero.clone(); cols];
        x[free] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = a[r][free].neg();
        }
        out.push(x);
    }
    out
}

/// Some solution of `a·x = b`, if one exists.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let zero = b.first()?.zero_like();
    let mut x = vec![zero; cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][cols].clone();
    }
    Some(x)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Err(Error::Invalid("determinant of an empty matrix has no domain".into()));
    }
    let mut a = m.to_vec();
    let mut sign = false;
    let mut prev = a[0][0].one_like();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return Ok(a[0][0].zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].zero_like();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&row[k].mul(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Montgomery arithmetic modulo an odd prime below `2^63`.
#[derive(Clone, Copy, Debug)]
pub struct Mont {
    pub p: u64,
    pinv: u64,
    r2: u64,
}

impl Mont {
    pub fn new(p: u64) -> Mont {
        assert!(p % 2 == 1 && p < (1 << 63));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont { p, pinv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a Montgomery-form element.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Rank of a row-major matrix whose entries are already in Montgomery form.
pub fn rank_mont(a: &mut [u64], rows: usize, cols: usize, m: &Mont) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
        if p != r {
            for k in 0..cols {
                a.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = m.inv(a[r * cols + c]);
        let (head, tail) = a.split_at_mut((r + 1) * cols);
        let prow = &head[r * cols..];
        for row in tail.chunks_mut(cols) {
            if row[c] == 0 {
                continue;
            }
            let f = m.mul(row[c], inv);
            for k in c..cols {
                if prow[k] != 0 {
                    row[k] = m.sub(row[k], m.mul(f, prow[k]));
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of a matrix of plain residues modulo the odd prime `p`.
pub fn rank_mod(a: &[u64], rows: usize, cols: usize, p: u64) -> usize {
    let m = Mont::new(p);
    let mut b: Vec<u64> = a.iter().map(|&x| m.to_mont(x)).collect();
    rank_mont(&mut b, rows, cols, &m)
}

/// Nullspace basis modulo `p` of a row-major matrix of plain residues.
pub fn nullspace_mod(a: &[u64], rows: usize, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let m = Mont::new(p);
    let mut b: Vec<u64> = a.iter().map(|&x| m.to_mont(x)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| b[i * cols + c] != 0) else { continue };
        for k in 0..cols {
            b.swap(pr * cols + k, r * cols + k);
        }
        let inv = m.inv(b[r * cols + c]);
        for k in 0..cols {
            b[r * cols + k] = m.mul(b[r * cols + k], inv);
        }
        for i in 0..rows {
            if i == r || b[i * cols + c] == 0 {
                continue;
            }
            let f = b[i * cols + c];
            for k in c..cols {
                let t = m.mul(f, b[r * cols + k]);
                b[i * cols + k] = m.sub(b[i * cols + k], t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u64; cols];
        x[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            let v = m.from_mont(b[i * cols + free]);
            x[pc] = (p - v) % p;
        }
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::ScalarDomain;

    #[test]
    fn montgomery_matches_plain() {
        let p = (1u64 << 61) - 1;
        let m = Mont::new(p);
        let (a, b) = (123456789012345678u64, 987654321098765432u64 % p);
        let plain = ((a as u128 * b as u128) % p as u128) as u64;
        assert_eq!(m.from_mont(m.mul(m.to_mont(a), m.to_mont(b))), plain);
        assert_eq!(m.from_mont(m.mul(m.inv(m.to_mont(a)), m.to_mont(a))), 1);
    }

    #[test]
    fn modular_rank_and_kernel() {
        let a = [1, 2, 3, 2, 4, 6, 1, 0, 1];
        assert_eq!(rank_mod(&a, 3, 3, 7), 2);
        let k = nullspace_mod(&a, 3, 3, 7);
        assert_eq!(k.len(), 1);
        for row in a.chunks(3) {
            let s: u64 = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert_eq!(s % 7, 0);
        }
    }

    #[test]
    fn exact_elimination() {
        let g = ScalarDomain::generic();
        let q = g.q();
        let m = vec![vec![g.one(), q.clone()], vec![q.clone(), q.mul(&q)]];
        assert_eq!(rank(&m), 1);
        assert!(det_bareiss(&m).unwrap().is_zero());
        let ns = nullspace(&m, 2, &g.zero());
        assert_eq!(ns.len(), 1);
        let s = [vec![g.int(2), g.int(1)], vec![g.int(1), g.int(3)]];
        assert_eq!(det_bareiss(&s).unwrap(), g.int(5));
        let x = solve(&s, &[g.int(3), g.int(4)]).unwrap();
        assert_eq!(x, vec![g.one(), g.one()]);
    }
}
