//! Cyclotomic fields `Q(ζ_N)` with elements reduced modulo `Φ_N`.

use super::int::Int;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Integer coefficients of `Φ_n`, lowest degree first, by exact division of
/// `x^n − 1` by `Φ_d` for the proper divisors `d` of `n`.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1);
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic_poly(d);
            num = div_monic_exact(&num, &phi);
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn div_monic_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (i, &y) in b.iter().enumerate() {
            r[k + i] -= c * y;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    cyclotomic_poly(n).len() as u32 - 1
}

#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    n: u32,
    phi: Vec<Int>,
}

impl CycloField {
    pub fn new(n: u32) -> Arc<CycloField> {
        let phi = cyclotomic_poly(n).into_iter().map(Int::from).collect();
        Arc::new(CycloField { n, phi })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

/// `(Σ c_i ζ^i) / den` with `deg < φ(N)`, `den > 0` and `gcd(content, den) = 1`.
#[derive(Clone, Debug)]
pub struct CycloElem {
    field: Arc<CycloField>,
    c: Vec<Int>,
    den: Int,
}

impl PartialEq for CycloElem {
    fn eq(&self, o: &CycloElem) -> bool {
        self.field.n == o.field.n && self.c == o.c && self.den == o.den
    }
}

impl Eq for CycloElem {}

impl CycloElem {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn from_int(field: &Arc<CycloField>, v: i64) -> CycloElem {
        let mut c = vec![Int::ZERO; field.degree()];
        c[0] = Int::from(v);
        CycloElem::build(field, c, Int::ONE)
    }

    pub fn from_rational(field: &Arc<CycloField>, r: &BigRational) -> CycloElem {
        let mut c = vec![Int::ZERO; field.degree()];
        c[0] = Int::from(r.numer().clone());
        CycloElem::build(field, c, Int::from(r.denom().clone()))
    }

    /// `ζ^e` for any integer exponent.
    pub fn zeta_pow(field: &Arc<CycloField>, e: i64) -> CycloElem {
        let n = field.n as i64;
        let e = e.rem_euclid(n) as usize;
        let mut c = vec![Int::ZERO; e.max(field.degree() - 1) + 1];
        c[e] = Int::ONE;
        CycloElem::build(field, c, Int::ONE)
    }

    /// Reduce an arbitrary-length coefficient vector modulo `Φ_N`.
    pub fn build(field: &Arc<CycloField>, mut c: Vec<Int>, den: Int) -> CycloElem {
        let d = field.degree();
        for k in (d..c.len()).rev() {
            let top = std::mem::replace(&mut c[k], Int::ZERO);
            if top.is_zero() {
                continue;
            }
            for i in 0..d {
                let pi = &field.phi[i];
                if !pi.is_zero() {
                    c[k - d + i] -= &(&top * pi);
                }
            }
        }
        c.resize(d, Int::ZERO);
        let mut e = CycloElem { field: field.clone(), c, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for x in self.c.iter_mut() {
                *x = -&*x;
            }
        }
        let mut g = self.den.clone();
        for x in &self.c {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if self.c.iter().all(|x| x.is_zero()) {
            self.den = Int::ONE;
            return;
        }
        if !g.is_one() {
            self.den = self.den.div_exact(&g);
            for x in self.c.iter_mut() {
                *x = x.div_exact(&g);
            }
        }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.c
    }

    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn rational_coeffs(&self) -> Vec<BigRational> {
        self.c.iter().map(|x| BigRational::new(x.to_big(), self.den.to_big())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &CycloElem) -> CycloElem {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &CycloElem) -> CycloElem {
        self.combine(o, true)
    }

    fn combine(&self, o: &CycloElem, negate: bool) -> CycloElem {
        assert_eq!(self.field.n, o.field.n, "cyclotomic field mismatch");
        let (c, den) = if self.den == o.den {
            let c = self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (c, self.den.clone())
        } else {
            let c = self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| {
                    let (x, y) = (a * &o.den, b * &self.den);
                    if negate {
                        &x - &y
                    } else {
                        &x + &y
                    }
                })
                .collect();
            (c, &self.den * &o.den)
        };
        let mut e = CycloElem { field: self.field.clone(), c, den };
        e.normalize();
        e
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &CycloElem) -> CycloElem {
        assert_eq!(self.field.n, o.field.n, "cyclotomic field mismatch");
        if self.is_zero() || o.is_zero() {
            return CycloElem::from_int(&self.field, 0);
        }
        let d = self.field.degree();
        let mut c = vec![Int::ZERO; 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        CycloElem::build(&self.field, c, &self.den * &o.den)
    }

    pub fn scale_int(&self, s: &Int) -> CycloElem {
        let mut e = CycloElem { field: self.field.clone(), c: self.c.iter().map(|x| x * s).collect(), den: self.den.clone() };
        e.normalize();
        e
    }

    /// Inverse by solving the linear system `self · x = 1` over the rationals.
    pub fn inv(&self) -> Option<CycloElem> {
        if self.is_zero() {
            return None;
        }
        let d = self.field.degree();
        // column j of the multiplication matrix is self·ζ^j
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        let mut cur = self.clone();
        let zeta = CycloElem::zeta_pow(&self.field, 1);
        for _ in 0..d {
            cols.push(cur.rational_coeffs());
            cur = cur.mul(&zeta);
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let pinv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x = &*x * &pinv;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=d {
                        let t = &m[col][k] * &f;
                        m[r][k] = &m[r][k] - t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.iter().map(|row| row[d].clone()).collect();
        Some(CycloElem::from_rationals(&self.field, &sol))
    }

    pub fn from_rationals(field: &Arc<CycloField>, v: &[BigRational]) -> CycloElem {
        let mut den = BigInt::one();
        for x in v {
            den = num_integer::lcm(den, x.denom().clone());
        }
        let c = v.iter().map(|x| Int::from(x.numer() * (&den / x.denom()))).collect();
        CycloElem::build(field, c, Int::from(den))
    }

    /// Polynomial in `z = ζ_N` with rational coefficients, lowest degree
    /// first, e.g. `-1`, `z^3`, `1/2 - z^2`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, r) in self.rational_coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let a = r.abs();
            let coef = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            let mono = match k {
                0 => coef,
                _ => {
                    let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if a.is_one() { z } else { format!("{coef}*{z}") }
                }
            };
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&mono),
                (true, true) => out.push_str(&format!("-{mono}")),
                (false, false) => out.push_str(&format!(" + {mono}")),
                (false, true) => out.push_str(&format!(" - {mono}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in 1..=24u32 {
            let f = CycloField::new(n);
            let z = CycloElem::zeta_pow(&f, 1);
            let mut acc = z.clone();
            let mut k = 1;
            while !acc.is_one() {
                acc = acc.mul(&z);
                k += 1;
            }
            assert_eq!(k, n);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = CycloField::new(12);
        let a = CycloElem::zeta_pow(&f, 1).add(&CycloElem::from_int(&f, 3));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
        assert!(CycloElem::from_int(&f, 0).inv().is_none());
    }
}
