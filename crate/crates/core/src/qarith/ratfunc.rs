//! Rational functions in `v` over the rationals.

use super::int::Int;
use super::laurent::LPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// `num / den` with `den` an ordinary polynomial, `den(0) ≠ 0`, positive
/// leading coefficient, and `gcd(num, den) = 1` in `Z[v]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: LPoly,
    den: LPoly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: LPoly::one(), den: LPoly::one() }
    }

    pub fn from_laurent(p: LPoly) -> RatFunc {
        RatFunc { num: p, den: LPoly::one() }
    }

    pub fn from_int(c: i64) -> RatFunc {
        RatFunc::from_laurent(LPoly::constant(Int::from(c)))
    }

    pub fn from_rational(r: &BigRational) -> RatFunc {
        RatFunc::new(
            LPoly::constant(Int::from(r.numer().clone())),
            LPoly::constant(Int::from(r.denom().clone())),
        )
    }

    /// `v^e`.
    pub fn var_pow(e: i32) -> RatFunc {
        RatFunc::from_laurent(LPoly::monomial(Int::ONE, e))
    }

    pub fn new(num: LPoly, den: LPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (shift, dpoly) = den.split_monomial();
        let num = num.shift(-shift);
        if dpoly.is_constant() {
            let d = dpoly.as_constant().unwrap();
            let g = num.content().gcd(&d);
            let (mut n, mut d) = (num.div_int_exact(&g), d.div_exact(&g));
            if d.is_negative() {
                n = n.neg();
                d = -d;
            }
            return RatFunc { num: n, den: LPoly::constant(d) };
        }
        let (nshift, npoly) = num.split_monomial();
        let g = LPoly::poly_gcd(&npoly, &dpoly);
        let (npoly, dpoly) = if g.degree() > 0 {
            (
                LPoly::poly_div_exact(&npoly, &g).expect("gcd divides"),
                LPoly::poly_div_exact(&dpoly, &g).expect("gcd divides"),
            )
        } else {
            (npoly, dpoly)
        };
        let c = npoly.content().gcd(&dpoly.content());
        let (mut n, mut d) = (npoly.div_int_exact(&c).shift(nshift), dpoly.div_int_exact(&c));
        if d.lead().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        RatFunc { num: n, den: d }
    }

    pub fn num(&self) -> &LPoly {
        &self.num
    }

    pub fn den(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number when it does not depend on `v`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n.to_big(), d.to_big()))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc::from_laurent(self.num.add(&o.num));
            }
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_laurent(self.num.mul(&o.num));
        }
        // cross-cancel before multiplying to keep degrees small
        let (a, b) = cancel(&self.num, &o.den);
        let (c, d) = cancel(&o.num, &self.den);
        RatFunc::new(a.mul(&c), d.mul(&b))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        Some(self.mul(&o.inv()?))
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> RatFunc {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_int(&self, s: &Int) -> RatFunc {
        if s.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() {
            return RatFunc::from_laurent(self.num.scale(s));
        }
        RatFunc::new(self.num.scale(s), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Option<RatFunc> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Some(RatFunc { num: self.num.pow(e), den: self.den.pow(e) })
    }

    /// Evaluate at `v = x` modulo `p`; `None` when the denominator vanishes there.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let d = self.den.eval_mod(x, p);
        if d == 0 {
            return None;
        }
        let n = self.num.eval_mod(x, p);
        Some((n as u128 * super::laurent::inv_mod(d, p) as u128 % p as u128) as u64)
    }

    pub fn negate_variable(&self) -> RatFunc {
        RatFunc::new(self.num.negate_variable(), self.den.negate_variable())
    }

    pub fn invert_variable(&self) -> RatFunc {
        RatFunc::new(self.num.invert_variable(), self.den.invert_variable())
    }

    /// Format with `v`, or with `q = v²` when every exponent is even.
    pub fn render(&self) -> String {
        let even = self.num.is_even() && self.den.is_even();
        let (name, halve) = if even { ("q", true) } else { ("v", false) };
        let n = self.num.fmt_var(name, halve);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.fmt_var(name, halve);
        let wrap = |s: String, p: &LPoly| if p.terms().count() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

fn cancel(a: &LPoly, b: &LPoly) -> (LPoly, LPoly) {
    if b.is_one() || a.is_zero() {
        return (a.clone(), b.clone());
    }
    let (sa, pa) = a.split_monomial();
    if b.is_constant() {
        let g = pa.content().gcd(&b.as_constant().unwrap());
        return (pa.div_int_exact(&g).shift(sa), b.div_int_exact(&g));
    }
    let g = LPoly::poly_gcd(&pa, b);
    if g.degree() == 0 {
        return (a.clone(), b.clone());
    }
    (
        LPoly::poly_div_exact(&pa, &g).unwrap().shift(sa),
        LPoly::poly_div_exact(b, &g).unwrap(),
    )
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl From<BigInt> for RatFunc {
    fn from(b: BigInt) -> RatFunc {
        RatFunc::from_laurent(LPoly::constant(Int::from(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i32, c: &[i64]) -> LPoly {
        LPoly::from_coeffs(low, c.iter().map(|&x| Int::from(x)).collect())
    }

    #[test]
    fn normal_form_is_canonical() {
        // (v^2 - 1)/(v - 1) = v + 1
        let r = RatFunc::new(lp(0, &[-1, 0, 1]), lp(0, &[-1, 1]));
        assert_eq!(r, RatFunc::from_laurent(lp(0, &[1, 1])));
        // 2v/(4v^2) = 1/(2v)
        let r = RatFunc::new(lp(1, &[2]), lp(2, &[4]));
        assert_eq!(r.num(), &lp(-1, &[1]));
        assert_eq!(r.den(), &lp(0, &[2]));
        // sign moves to the numerator
        let r = RatFunc::new(lp(0, &[1]), lp(0, &[-1, -1]));
        assert_eq!(r.den(), &lp(0, &[1, 1]));
    }

    #[test]
    fn field_operations() {
        let two = RatFunc::from_laurent(lp(-1, &[1, 0, 1]));
        let inv = two.inv().unwrap();
        assert!(two.mul(&inv).is_one());
        let x = inv.add(&RatFunc::one()).sub(&RatFunc::one());
        assert_eq!(x, inv);
        assert_eq!(inv.render(), "v/(1 + v^2)");
    }
}
