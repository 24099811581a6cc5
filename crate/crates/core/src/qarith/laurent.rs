//! Laurent polynomials in one variable with integer coefficients.

use super::int::Int;
use std::fmt;

/// `Σ c[i] v^(low + i)`, trimmed so that the first and last coefficients are
/// nonzero. The zero polynomial has an empty coefficient vector and `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LPoly {
    low: i32,
    c: Vec<Int>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly { low: 0, c: Vec::new() }
    }

    pub fn one() -> LPoly {
        LPoly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> LPoly {
        LPoly::monomial(c, 0)
    }

    pub fn monomial(c: Int, e: i32) -> LPoly {
        if c.is_zero() {
            LPoly::zero()
        } else {
            LPoly { low: e, c: vec![c] }
        }
    }

    /// Build from a coefficient vector starting at exponent `low`, trimming zeros.
    pub fn from_coeffs(low: i32, c: Vec<Int>) -> LPoly {
        let mut p = LPoly { low, c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.low += lead as i32;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.c.len() == 1)
    }

    /// Constant term when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Int> {
        if self.is_zero() {
            Some(Int::ZERO)
        } else if self.is_constant() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.c.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.c
    }

    pub fn coeff(&self, e: i32) -> Int {
        let i = e - self.low;
        if i < 0 || i as usize >= self.c.len() {
            Int::ZERO
        } else {
            self.c[i as usize].clone()
        }
    }

    pub fn lead(&self) -> &Int {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Int)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (self.low + i as i32, x))
    }

    pub fn shift(&self, k: i32) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        LPoly { low: self.low + k, c: self.c.clone() }
    }

    pub fn scale(&self, s: &Int) -> LPoly {
        if s.is_zero() {
            return LPoly::zero();
        }
        LPoly { low: self.low, c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn neg(&self) -> LPoly {
        LPoly { low: self.low, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &LPoly) -> LPoly {
        self.add_scaled(o, false)
    }

    pub fn sub(&self, o: &LPoly) -> LPoly {
        self.add_scaled(o, true)
    }

    fn add_scaled(&self, o: &LPoly, negate: bool) -> LPoly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        let mut c = vec![Int::ZERO; (high - low + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + i] = x.clone();
        }
        for (i, x) in o.c.iter().enumerate() {
            let slot = &mut c[(o.low - low) as usize + i];
            if negate {
                *slot -= x;
            } else {
                *slot += x;
            }
        }
        LPoly::from_coeffs(low, c)
    }

    /// In-place `self += s · v^k · o`.
    pub fn add_assign_scaled(&mut self, o: &LPoly, s: &Int, k: i32) {
        if o.is_zero() || s.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = o.scale(s).shift(k);
            return;
        }
        let olow = o.low + k;
        let low = self.low.min(olow);
        let high = self.high().max(o.high() + k);
        if low < self.low {
            let pad = (self.low - low) as usize;
            self.c.splice(0..0, std::iter::repeat_n(Int::ZERO, pad));
            self.low = low;
        }
        let need = (high - self.low + 1) as usize;
        if self.c.len() < need {
            self.c.resize(need, Int::ZERO);
        }
        let base = (olow - self.low) as usize;
        for (i, x) in o.c.iter().enumerate() {
            if s.is_one() {
                self.c[base + i] += x;
            } else {
                self.c[base + i] += &(x * s);
            }
        }
        self.trim();
    }

    pub fn mul(&self, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::zero();
        }
        let mut c = vec![Int::ZERO; self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += &(x * y);
            }
        }
        LPoly::from_coeffs(self.low + o.low, c)
    }

    /// In-place `self += a · b`.
    pub fn add_mul_assign(&mut self, a: &LPoly, b: &LPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let low = a.low + b.low;
        let high = a.high() + b.high();
        if self.is_zero() {
            self.low = low;
            self.c.clear();
        }
        if low < self.low {
            let pad = (self.low - low) as usize;
            self.c.splice(0..0, std::iter::repeat_n(Int::ZERO, pad));
            self.low = low;
        }
        let need = (high - self.low + 1) as usize;
        if self.c.len() < need {
            self.c.resize(need, Int::ZERO);
        }
        let base = (low - self.low) as usize;
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    self.c[base + i + j] += &(x * y);
                }
            }
        }
        self.trim();
    }

    /// Least common multiple of two ordinary polynomials, up to sign.
    pub fn poly_lcm(a: &LPoly, b: &LPoly) -> LPoly {
        if LPoly::poly_div_exact(a, b).is_some() {
            return a.clone();
        }
        let g = LPoly::poly_gcd(a, b);
        a.mul(&LPoly::poly_div_exact(b, &g).expect("gcd divides"))
    }

    pub fn pow(&self, e: u32) -> LPoly {
        let mut acc = LPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, d: &Int) -> LPoly {
        LPoly { low: self.low, c: self.c.iter().map(|x| x.div_exact(d)).collect() }
    }

    /// Substitute `v ↦ -v`.
    pub fn negate_variable(&self) -> LPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| if (self.low + i as i32) % 2 != 0 { -x } else { x.clone() })
            .collect();
        LPoly { low: self.low, c }
    }

    /// Substitute `v ↦ v^-1`.
    pub fn invert_variable(&self) -> LPoly {
        let mut c = self.c.clone();
        c.reverse();
        LPoly { low: -self.high(), c }.normalized()
    }

    fn normalized(mut self) -> LPoly {
        self.trim();
        self
    }

    /// Evaluate at `x` modulo the prime `p`; `x` must be invertible mod `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        if self.is_zero() {
            return 0;
        }
        let mut acc: u64 = 0;
        for co in self.c.iter().rev() {
            acc = ((acc as u128 * x as u128 + co.rem_u64(p) as u128) % p as u128) as u64;
        }
        let e = self.low;
        let xe = if e >= 0 { pow_mod(x, e as u64, p) } else { pow_mod(inv_mod(x, p), (-e) as u64, p) };
        (acc as u128 * xe as u128 % p as u128) as u64
    }

    /// Ordinary-polynomial view (`low` shifted to 0): returns the shift and the polynomial.
    pub fn split_monomial(&self) -> (i32, LPoly) {
        if self.is_zero() {
            return (0, LPoly::zero());
        }
        (self.low, LPoly { low: 0, c: self.c.clone() })
    }

    /// Degree as an ordinary polynomial (requires `low >= 0`).
    pub fn degree(&self) -> i32 {
        self.high()
    }

    /// Pseudo-remainder of ordinary polynomials: `lc(b)^(deg a - deg b + 1) a mod b`.
    fn pseudo_rem(a: &LPoly, b: &LPoly) -> LPoly {
        debug_assert!(a.low >= 0 && b.low >= 0);
        let mut r = a.to_dense();
        let bd = b.to_dense();
        let db = bd.len() - 1;
        let lb = bd[db].clone();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for x in r.iter_mut() {
                *x = &*x * &lb;
            }
            for (i, y) in bd.iter().enumerate() {
                let idx = dr - db + i;
                r[idx] -= &(&lr * y);
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        LPoly::from_coeffs(0, r)
    }

    fn to_dense(&self) -> Vec<Int> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut d = vec![Int::ZERO; self.low.max(0) as usize];
        d.extend(self.c.iter().cloned());
        d
    }

    pub fn primitive_part(&self) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        let c = self.content();
        let mut p = self.div_int_exact(&c);
        if p.lead().is_negative() {
            p = p.neg();
        }
        p
    }

    /// gcd of ordinary polynomials in Z[v], primitive with positive leading coefficient.
    pub fn poly_gcd(a: &LPoly, b: &LPoly) -> LPoly {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        let (mut x, mut y) = (a.primitive_part(), b.primitive_part());
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.degree() == 0 {
                return LPoly::one();
            }
            let r = LPoly::pseudo_rem(&x, &y);
            x = y;
            y = r.primitive_part();
        }
        x
    }

    /// Exact division of ordinary polynomials in Z[v]; `None` if `d` does not divide.
    pub fn poly_div_exact(a: &LPoly, d: &LPoly) -> Option<LPoly> {
        if a.is_zero() {
            return Some(LPoly::zero());
        }
        let mut r = a.to_dense();
        let dd = d.to_dense();
        let db = dd.len() - 1;
        if r.len() < dd.len() {
            return None;
        }
        let ld = dd[db].clone();
        let mut q = vec![Int::ZERO; r.len() - db];
        for k in (0..q.len()).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_mod_floor(&ld);
            if !rem.is_zero() {
                return None;
            }
            for (i, y) in dd.iter().enumerate() {
                r[k + i] -= &(&qq * y);
            }
            q[k] = qq;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(LPoly::from_coeffs(0, q))
    }

    /// Format in the variable `name`; when `halve` is set every exponent is even
    /// and printed divided by two.
    pub fn fmt_var(&self, name: &str, halve: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, co) in self.terms() {
            let e = if halve { e / 2 } else { e };
            let neg = co.is_negative();
            let mag = co.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(name);
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    /// True when every exponent is even (the polynomial lies in Z[q, q^-1] with q = v²).
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("v", false))
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat; `x` must be nonzero mod `p`.
pub fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i32, c: &[i64]) -> LPoly {
        LPoly::from_coeffs(low, c.iter().map(|&x| Int::from(x)).collect())
    }

    #[test]
    fn arithmetic_and_trim() {
        let a = lp(-1, &[1, 0, 1]);
        let b = lp(-1, &[1, 0, -1]);
        assert_eq!(a.add(&b), lp(-1, &[2]));
        assert_eq!(a.sub(&a), LPoly::zero());
        assert_eq!(a.mul(&b), lp(-2, &[1, 0, 0, 0, -1]));
        assert_eq!(a.pow(2), lp(-2, &[1, 0, 2, 0, 1]));
    }

    #[test]
    fn gcd_of_products() {
        let f = lp(0, &[1, 1]);
        let g = lp(0, &[-1, 1]);
        let h = lp(0, &[2, 0, 1]);
        let a = f.mul(&g).mul(&lp(0, &[6]));
        let b = f.mul(&h).mul(&lp(0, &[4]));
        assert_eq!(LPoly::poly_gcd(&a, &b), f);
        assert_eq!(LPoly::poly_div_exact(&a, &f), Some(g.mul(&lp(0, &[6]))));
        assert_eq!(LPoly::poly_div_exact(&h, &f), None);
    }

    #[test]
    fn eval_and_substitution() {
        let a = lp(-2, &[1, 0, 1, 0, 1]);
        assert_eq!(a.eval_mod(2, 7), 0); // 1/4 + 1 + 4 with 1/4 = 2 mod 7

        assert_eq!(a.invert_variable(), a);
        assert_eq!(lp(1, &[3]).negate_variable(), lp(1, &[-3]));
        assert_eq!(a.fmt_var("q", true), "q^-1 + 1 + q");
    }
}
