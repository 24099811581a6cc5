//! Finite fields `GF(p^d) = F_p[y]/(m(y))` with `m` the least monic irreducible.

use super::fpoly::{self, addm, invm, mulm, subm};
use smallvec::SmallVec;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct GfField {
    p: u64,
    d: u32,
    modulus: Vec<u64>,
}

impl GfField {
    /// `p` must be prime (checked by the caller) and below `2^62`.
    pub fn new(p: u64, d: u32) -> Arc<GfField> {
        assert!(d >= 1 && p >= 2 && p < (1 << 62));
        let modulus = fpoly::least_irreducible(p, d);
        Arc::new(GfField { p, d, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^d` when it fits in 128 bits.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.d)
    }
}

pub type Coeffs = SmallVec<[u64; 4]>;

#[derive(Clone, Debug)]
pub struct GfElem {
    field: Arc<GfField>,
    c: Coeffs,
}

impl PartialEq for GfElem {
    fn eq(&self, o: &GfElem) -> bool {
        self.field.p == o.field.p && self.field.d == o.field.d && self.c == o.c
    }
}

impl Eq for GfElem {}

impl GfElem {
    pub fn field(&self) -> &Arc<GfField> {
        &self.field
    }

    pub fn from_int(field: &Arc<GfField>, v: i64) -> GfElem {
        let p = field.p as i128;
        let mut c: Coeffs = SmallVec::from_elem(0, field.d as usize);
        c[0] = (v as i128).rem_euclid(p) as u64;
        GfElem { field: field.clone(), c }
    }

    /// From a residue vector (lowest power of `y` first); reduced modulo the field polynomial.
    pub fn from_coeffs(field: &Arc<GfField>, v: &[u64]) -> GfElem {
        let p = field.p;
        let mut poly: Vec<u64> = v.iter().map(|&x| x % p).collect();
        fpoly::trim(&mut poly);
        let r = fpoly::rem(&poly, &field.modulus, p);
        GfElem::from_reduced(field, &r)
    }

    fn from_reduced(field: &Arc<GfField>, r: &[u64]) -> GfElem {
        let mut c: Coeffs = SmallVec::from_elem(0, field.d as usize);
        c[..r.len()].copy_from_slice(r);
        GfElem { field: field.clone(), c }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    fn poly(&self) -> Vec<u64> {
        let mut v = self.c.to_vec();
        fpoly::trim(&mut v);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &GfElem) -> GfElem {
        let p = self.field.p;
        let c = self.c.iter().zip(&o.c).map(|(&a, &b)| addm(a, b, p)).collect();
        GfElem { field: self.field.clone(), c }
    }

    pub fn sub(&self, o: &GfElem) -> GfElem {
        let p = self.field.p;
        let c = self.c.iter().zip(&o.c).map(|(&a, &b)| subm(a, b, p)).collect();
        GfElem { field: self.field.clone(), c }
    }

    pub fn neg(&self) -> GfElem {
        let p = self.field.p;
        let c = self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        GfElem { field: self.field.clone(), c }
    }

    pub fn mul(&self, o: &GfElem) -> GfElem {
        let p = self.field.p;
        if self.field.d == 1 {
            let mut c = self.c.clone();
            c[0] = mulm(self.c[0], o.c[0], p);
            return GfElem { field: self.field.clone(), c };
        }
        let r = fpoly::mulmod(&self.poly(), &o.poly(), &self.field.modulus, p);
        GfElem::from_reduced(&self.field, &r)
    }

    pub fn inv(&self) -> Option<GfElem> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.p;
        if self.field.d == 1 {
            return Some(GfElem::from_int(&self.field, invm(self.c[0], p) as i64));
        }
        let (g, s, _) = fpoly::xgcd(&self.poly(), &self.field.modulus, p);
        debug_assert_eq!(g, vec![1]);
        Some(GfElem::from_reduced(&self.field, &fpoly::rem(&s, &self.field.modulus, p)))
    }

    /// `self^e` for an exponent given as little-endian `u64` limbs.
    pub fn pow_limbs(&self, e: &[u64]) -> GfElem {
        let p = self.field.p;
        let r = fpoly::powmod_big(&self.poly(), e, &self.field.modulus, p);
        GfElem::from_reduced(&self.field, &r)
    }

    pub fn pow(&self, e: u64) -> GfElem {
        self.pow_limbs(&[e])
    }

    pub fn render(&self) -> String {
        let body: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        format!("gf({}^{})[{}]", self.field.p, self.field.d, body.join(", "))
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_of_nine_elements() {
        let f = GfField::new(3, 2);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let y = GfElem::from_coeffs(&f, &[0, 1]);
        assert_eq!(y.mul(&y), GfElem::from_int(&f, -1));
        let a = GfElem::from_coeffs(&f, &[2, 1]);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        // the multiplicative group has order 8
        assert!(a.pow(8).is_one());
    }

    #[test]
    fn prime_field() {
        let f = GfField::new(7, 1);
        let two = GfElem::from_int(&f, 2);
        assert_eq!(two.pow(3), GfElem::from_int(&f, 1));
        assert_eq!(two.inv().unwrap(), GfElem::from_int(&f, 4));
    }
}
