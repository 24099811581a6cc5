//! Exact coefficient domains and q-integers.
//!
//! Three kinds of field are supported: the rational function field `Q(v)`
//! with `q = v²`, cyclotomic fields, and finite fields `GF(p^d)`. Every
//! domain carries a distinguished invertible `q`, and (when available) a
//! square root `v`.

pub mod cyclo;
pub mod fpoly;
pub mod gf;
pub mod int;
pub mod laurent;
mod parse;
pub mod ratfunc;

use crate::error::{Error, Result};
use cyclo::{CycloElem, CycloField};
use gf::{GfElem, GfField};
use int::Int;
use laurent::LPoly;
use num_rational::BigRational;
use ratfunc::RatFunc;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainKind {
    /// `Q(v)`, `v` transcendental.
    GenericV,
    /// `q` a primitive `order`-th root of unity inside `Q(ζ_conductor)`.
    Cyclotomic { order: u32, conductor: u32 },
    Finite { p: u64, d: u32 },
}

#[derive(Debug)]
enum Field {
    Rat,
    Cyc(Arc<CycloField>),
    Gf(Arc<GfField>),
}

#[derive(Debug)]
struct DomainInner {
    kind: DomainKind,
    field: Field,
    q: Scalar,
    v: Option<Scalar>,
    fingerprint: String,
}

/// A coefficient field with its distinguished `q` (and `v` with `v² = q`).
#[derive(Clone, Debug)]
pub struct ScalarDomain(Arc<DomainInner>);

impl PartialEq for ScalarDomain {
    fn eq(&self, o: &ScalarDomain) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.fingerprint == o.0.fingerprint
    }
}

impl Eq for ScalarDomain {}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(RatFunc),
    Cyc(CycloElem),
    Gf(GfElem),
}

impl ScalarDomain {
    /// `Q(v)` with `q = v²`.
    pub fn generic() -> ScalarDomain {
        let v = Scalar::Rat(RatFunc::var_pow(1));
        let q = Scalar::Rat(RatFunc::var_pow(2));
        ScalarDomain(Arc::new(DomainInner {
            kind: DomainKind::GenericV,
            field: Field::Rat,
            q,
            v: Some(v),
            fingerprint: "generic".into(),
        }))
    }

    /// `q` a primitive `n`-th root of unity with square root `v = ζ_{2n}`,
    /// realized in `Q(ζ_{2n})`.
    pub fn root_of_unity(n: u32) -> Result<ScalarDomain> {
        if n == 0 {
            return Err(Error::Invalid("root of unity of order 0".into()));
        }
        let conductor = 2 * n;
        let f = CycloField::new(conductor);
        let v = Scalar::Cyc(CycloElem::zeta_pow(&f, 1));
        let q = Scalar::Cyc(CycloElem::zeta_pow(&f, 2));
        Ok(ScalarDomain(Arc::new(DomainInner {
            kind: DomainKind::Cyclotomic { order: n, conductor },
            field: Field::Cyc(f),
            q,
            v: Some(v),
            fingerprint: format!("root:{n}"),
        })))
    }

    /// `GF(p^d)` with `v` given by its residue vector and `q = v²`.
    pub fn finite(p: u64, d: u32, v: &[u64]) -> Result<ScalarDomain> {
        if !is_prime_u64(p) || p >= (1 << 62) {
            return Err(Error::Invalid(format!("{p} is not a prime below 2^62")));
        }
        if d == 0 || d > 16 {
            return Err(Error::Invalid(format!("extension degree {d} outside 1..=16")));
        }
        let f = GfField::new(p, d);
        let ve = GfElem::from_coeffs(&f, v);
        if ve.is_zero() {
            return Err(Error::Invalid("v must be nonzero".into()));
        }
        let q = ve.mul(&ve);
        let fp: Vec<String> = ve.coeffs().iter().map(|x| x.to_string()).collect();
        Ok(ScalarDomain(Arc::new(DomainInner {
            kind: DomainKind::Finite { p, d },
            field: Field::Gf(f),
            q: Scalar::Gf(q),
            v: Some(Scalar::Gf(ve)),
            fingerprint: format!("finite:{p}:{d}:{}", fp.join(",")),
        })))
    }

    /// Parse `generic`, `root:N` or `finite:p:d:c0,c1,…` (the residues of `v`).
    pub fn from_spec(spec: &str) -> Result<ScalarDomain> {
        let s = spec.trim();
        if s == "generic" {
            return Ok(ScalarDomain::generic());
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad number {t:?} in {spec:?}")));
        match parts.as_slice() {
            ["root", n] => ScalarDomain::root_of_unity(num(n)? as u32),
            ["finite", p, d, poly] => {
                let v: Vec<u64> = poly.split(',').map(num).collect::<Result<_>>()?;
                ScalarDomain::finite(num(p)?, num(d)? as u32, &v)
            }
            _ => Err(Error::Parse(format!("unrecognized q specification {spec:?}"))),
        }
    }

    pub fn kind(&self) -> &DomainKind {
        &self.0.kind
    }

    pub fn fingerprint(&self) -> &str {
        &self.0.fingerprint
    }

    pub fn is_generic(&self) -> bool {
        self.0.kind == DomainKind::GenericV
    }

    /// The `κ` with `q` a primitive `2κ`-th root of unity, if any.
    pub fn kappa(&self) -> Option<u32> {
        match self.0.kind {
            DomainKind::Cyclotomic { order, .. } if order % 2 == 0 => Some(order / 2),
            _ => None,
        }
    }

    pub fn q(&self) -> Scalar {
        self.0.q.clone()
    }

    pub fn v(&self) -> Option<Scalar> {
        self.0.v.clone()
    }

    pub fn v_or_err(&self) -> Result<Scalar> {
        self.v().ok_or_else(|| Error::Invalid(format!("domain {} has no square root of q", self.fingerprint())))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, c: i64) -> Scalar {
        match &self.0.field {
            Field::Rat => Scalar::Rat(RatFunc::from_int(c)),
            Field::Cyc(f) => Scalar::Cyc(CycloElem::from_int(f, c)),
            Field::Gf(f) => Scalar::Gf(GfElem::from_int(f, c)),
        }
    }

    pub fn rational(&self, r: &BigRational) -> Result<Scalar> {
        Ok(match &self.0.field {
            Field::Rat => Scalar::Rat(RatFunc::from_rational(r)),
            Field::Cyc(f) => Scalar::Cyc(CycloElem::from_rational(f, r)),
            Field::Gf(f) => {
                let p = f.p();
                let n = Int::from(r.numer().clone()).rem_u64(p);
                let d = Int::from(r.denom().clone()).rem_u64(p);
                if d == 0 {
                    return Err(Error::DivisionByZero(format!("denominator of {r} vanishes mod {p}")));
                }
                Scalar::Gf(GfElem::from_coeffs(f, &[fpoly::mulm(n, fpoly::invm(d, p), p)]))
            }
        })
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(&self, e: i64) -> Scalar {
        if let Field::Rat = self.0.field {
            return Scalar::Rat(RatFunc::var_pow(2 * e as i32));
        }
        self.q().pow(e).expect("q is invertible")
    }

    /// `v^e`; requires `v`.
    pub fn v_pow(&self, e: i64) -> Result<Scalar> {
        if let Field::Rat = self.0.field {
            return Ok(Scalar::Rat(RatFunc::var_pow(e as i32)));
        }
        self.v_or_err()?.pow(e)
    }

    /// Cyclotomic field of the domain, when there is one.
    pub fn cyclo_field(&self) -> Option<&Arc<CycloField>> {
        match &self.0.field {
            Field::Cyc(f) => Some(f),
            _ => None,
        }
    }

    pub fn gf_field(&self) -> Option<&Arc<GfField>> {
        match &self.0.field {
            Field::Gf(f) => Some(f),
            _ => None,
        }
    }

    /// Parse a scalar printed by [`Scalar::render`].
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        match &self.0.field {
            Field::Rat => parse::parse_ratfunc(s).map(Scalar::Rat),
            Field::Cyc(f) => parse::parse_cyclo(s, f).map(Scalar::Cyc),
            Field::Gf(f) => parse::parse_gf(s, f).map(Scalar::Gf),
        }
    }

    /// Short human description, e.g. `κ=3` for a primitive 6th root.
    pub fn describe_q(&self) -> String {
        match self.0.kind {
            DomainKind::GenericV => "generic q".into(),
            DomainKind::Cyclotomic { order, .. } if order % 2 == 0 => format!("κ={}", order / 2),
            DomainKind::Cyclotomic { order, .. } => format!("q of order {order}"),
            DomainKind::Finite { p, d } => format!("q in GF({p}^{d})"),
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.fingerprint)
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = laurent::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = fpoly::mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Cyc(a) => a.is_zero(),
            Scalar::Gf(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_one(),
            Scalar::Cyc(a) => a.is_one(),
            Scalar::Gf(a) => a.is_one(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.int_like(0)
    }

    pub fn one_like(&self) -> Scalar {
        self.int_like(1)
    }

    pub fn int_like(&self, c: i64) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(RatFunc::from_int(c)),
            Scalar::Cyc(a) => Scalar::Cyc(CycloElem::from_int(a.field(), c)),
            Scalar::Gf(a) => Scalar::Gf(GfElem::from_int(a.field(), c)),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.add(b)),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(a.add(b)),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.sub(b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.sub(b)),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(a.sub(b)),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.mul(b)),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(a.mul(b)),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.neg()),
            Scalar::Cyc(a) => Scalar::Cyc(a.neg()),
            Scalar::Gf(a) => Scalar::Gf(a.neg()),
        }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.scale_int(&Int::from(c))),
            Scalar::Cyc(a) => Scalar::Cyc(a.scale_int(&Int::from(c))),
            Scalar::Gf(_) => self.mul(&self.int_like(c)),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        let r = match self {
            Scalar::Rat(a) => a.inv().map(Scalar::Rat),
            Scalar::Cyc(a) => a.inv().map(Scalar::Cyc),
            Scalar::Gf(a) => a.inv().map(Scalar::Gf),
        };
        r.ok_or_else(|| Error::DivisionByZero("inverse of zero".into()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if let Scalar::Rat(a) = self {
            return Ok(Scalar::Rat(a.pow(e as i32).expect("nonnegative power")));
        }
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element, if finite and at most `bound`.
    pub fn order_up_to(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Image under the specialization sending the field generator (`v` for
    /// `Q(v)`, `ζ` for cyclotomic fields) to `x` modulo the prime `p`.
    /// `None` when a denominator vanishes or the field is finite.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        match self {
            Scalar::Rat(a) => a.eval_mod(x, p),
            Scalar::Cyc(a) => {
                let d = a.denom().rem_u64(p);
                if d == 0 {
                    return None;
                }
                let mut acc = 0u64;
                for c in a.coeffs().iter().rev() {
                    acc = fpoly::addm(fpoly::mulm(acc, x, p), c.rem_u64(p), p);
                }
                Some(fpoly::mulm(acc, fpoly::invm(d, p), p))
            }
            Scalar::Gf(_) => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            Scalar::Rat(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_cyclo(&self) -> Option<&CycloElem> {
        match self {
            Scalar::Cyc(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_gf(&self) -> Option<&GfElem> {
        match self {
            Scalar::Gf(a) => Some(a),
            _ => None,
        }
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(a) => a.as_rational(),
            Scalar::Cyc(a) => {
                let r = a.rational_coeffs();
                if r[1..].iter().all(|x| x == &BigRational::from_integer(0.into())) {
                    Some(r[0].clone())
                } else {
                    None
                }
            }
            Scalar::Gf(_) => None,
        }
    }

    /// Canonical string form (see [`ScalarDomain::parse`]).
    pub fn render(&self) -> String {
        match self {
            Scalar::Rat(a) => a.render(),
            Scalar::Cyc(a) => a.render(),
            Scalar::Gf(a) => a.render(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// `[n]_q = q^{n−1} + q^{n−3} + ⋯ + q^{1−n}`, with `[−n]_q = −[n]_q`.
pub fn qint(n: i64, dom: &ScalarDomain) -> Scalar {
    if n < 0 {
        return qint(-n, dom).neg();
    }
    if n == 0 {
        return dom.zero();
    }
    if dom.is_generic() {
        // in terms of v: exponents 2(n−1), 2(n−3), …
        let len = (4 * (n - 1) + 1) as usize;
        let mut c = vec![Int::ZERO; len];
        for k in 0..n {
            c[(4 * k) as usize] = Int::ONE;
        }
        return Scalar::Rat(RatFunc::from_laurent(LPoly::from_coeffs(-2 * (n as i32 - 1), c)));
    }
    let q2 = dom.q_pow(2);
    let mut term = dom.q_pow(1 - n);
    let mut acc = dom.zero();
    for _ in 0..n {
        acc = acc.add(&term);
        term = term.mul(&q2);
    }
    acc
}

/// The designated primitive `n`-th root of unity `ζ_n ∈ Q(ζ_n)`, in a domain
/// whose `q` is that root. A square root `v` of `q` lies in the same field
/// exactly when `n` is odd (`v = ζ_n^{(n+1)/2}`); otherwise `v` is absent and
/// [`ScalarDomain::root_of_unity`] should be used for braiding data.
pub fn primitive_root(n: u32) -> Result<(ScalarDomain, Scalar)> {
    if n == 0 {
        return Err(Error::Invalid("primitive root of order 0".into()));
    }
    let f = CycloField::new(n);
    let z = Scalar::Cyc(CycloElem::zeta_pow(&f, 1));
    let v = (n % 2 == 1).then(|| Scalar::Cyc(CycloElem::zeta_pow(&f, (n as i64 + 1) / 2)));
    let dom = ScalarDomain(Arc::new(DomainInner {
        kind: DomainKind::Cyclotomic { order: n, conductor: n },
        field: Field::Cyc(f),
        q: z.clone(),
        v,
        fingerprint: format!("cyclotomic:{n}"),
    }));
    Ok((dom, z))
}

/// The distinct solutions `{v, −v, v^{-1}, −v^{-1}}` of `a² + a^{-2} = [2]_q`.
pub fn braiding_units(dom: &ScalarDomain) -> Result<Vec<Scalar>> {
    let v = dom.v_or_err()?;
    let vi = v.inv()?;
    let mut out: Vec<Scalar> = Vec::new();
    for a in [v.clone(), v.neg(), vi.clone(), vi.neg()] {
        if !out.contains(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Check that `a` is one of the braiding units of `dom`.
pub fn check_braiding_unit(dom: &ScalarDomain, a: &Scalar) -> Result<()> {
    if braiding_units(dom)?.contains(a) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{} is not a braiding unit of {}", a.render(), dom.fingerprint())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_examples() {
        let g = ScalarDomain::generic();
        assert!(qint(1, &g).is_one());
        assert_eq!(qint(2, &g).render(), "q^-1 + q");
        assert_eq!(qint(-2, &g), qint(2, &g).neg());
        let r = ScalarDomain::root_of_unity(6).unwrap();
        assert!(qint(3, &r).is_zero());
        assert!(!qint(2, &r).is_zero());
    }

    #[test]
    fn primitive_roots() {
        let (d, x) = primitive_root(4).unwrap();
        assert_eq!(x.mul(&x), d.int(-1));
        let (d8, z8) = primitive_root(8).unwrap();
        assert_eq!(d8.cyclo_field().unwrap().degree(), 4);
        assert_eq!(z8.order_up_to(100), Some(8));
        let (_, one) = primitive_root(1).unwrap();
        assert!(one.is_one());
        assert!(primitive_root(0).is_err());
    }

    #[test]
    fn unit_counts() {
        assert_eq!(braiding_units(&ScalarDomain::generic()).unwrap().len(), 4);
        let q1 = ScalarDomain::root_of_unity(1).unwrap();
        assert_eq!(braiding_units(&q1).unwrap().len(), 2);
        let qm1 = ScalarDomain::root_of_unity(2).unwrap();
        let units = braiding_units(&qm1).unwrap();
        assert!(units.iter().all(|a| a.mul(a) == qm1.int(-1)));
    }

    #[test]
    fn finite_domain() {
        let d = ScalarDomain::finite(7, 1, &[3]).unwrap();
        assert_eq!(d.q(), d.int(2));
        assert!(ScalarDomain::finite(8, 1, &[1]).is_err());
        assert!(is_prime_u64(2305843009213693951));
        assert!(!is_prime_u64(3215031751));
    }
}
