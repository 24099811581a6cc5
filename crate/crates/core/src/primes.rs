//! Prime towers: primes `p_k` carrying a root of a given polynomial of
//! multiplicative order exactly `2^{k+1}`.

use crate::error::{Error, Result};
use crate::qarith::fpoly;
use crate::qarith::gf::GfField;
use crate::qarith::is_prime_u64;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// Largest tower index accepted.
pub const MAX_K: u32 = 40;
/// Primes must fit the prime-field arithmetic.
const MAX_PRIME: u64 = 1 << 62;

// ---------------------------------------------------------------------------
// integer polynomials and resultants

fn trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn deg(a: &[BigInt]) -> usize {
    a.len() - 1
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `lc(b)^{deg a − deg b + 1} · a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    let db = deg(b);
    let mut e = deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && r.len() > db {
        let s = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        if !lb.is_one() {
            for c in r.iter_mut() {
                *c *= &lb;
            }
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &s * c;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !lb.is_one() {
        let f = num_traits::pow(lb, e as usize);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two integer polynomials (coefficients lowest degree first)
/// by the subresultant remainder sequence.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (ca, cb) = (content(&a), content(&b));
    a.iter_mut().for_each(|c| *c /= &ca);
    b.iter_mut().for_each(|c| *c /= &cb);
    let t = num_traits::pow(ca, deg(&b)) * num_traits::pow(cb, deg(&a));
    let mut s = 1i32;
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
    }
    let (mut g, mut h) = (BigInt::one(), BigInt::one());
    while deg(&b) > 0 {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|c| c / &div).collect();
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1);
        }
    }
    let da = deg(&a);
    let lb = b[0].clone();
    let h = if da == 0 { BigInt::one() } else { num_traits::pow(lb, da) / num_traits::pow(h, da - 1) };
    t * h * s
}

/// `x^{2^k} + 1`.
fn cyclo_2power(k: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); (1usize << k) + 1];
    v[0] = BigInt::one();
    v[1 << k] = BigInt::one();
    v
}

/// Parse a univariate integer polynomial in `x`, such as `x^2 - x - 1` or `3*x^4 + 2x`.
pub fn parse_int_poly(s: &str) -> Result<Vec<BigInt>> {
    let err = |m: &str| Error::Parse(format!("polynomial {s:?}: {m}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let mut out: Vec<BigInt> = Vec::new();
    let bytes = compact.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut neg = false;
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            neg ^= bytes[pos] == b'-';
            pos += 1;
        }
        let end = (pos..bytes.len()).find(|&k| bytes[k] == b'+' || bytes[k] == b'-').unwrap_or(bytes.len());
        let term = &compact[pos..end];
        if term.is_empty() {
            return Err(err("dangling sign"));
        }
        let (coef, e) = match term.find('x') {
            None => (term, 0usize),
            Some(i) => {
                let c = term[..i].trim_end_matches('*');
                let e = match &term[i + 1..] {
                    "" => 1,
                    rest => rest.strip_prefix('^').and_then(|r| r.parse().ok()).ok_or_else(|| err("bad exponent"))?,
                };
                (c, e)
            }
        };
        let mut c: BigInt = if coef.is_empty() { BigInt::one() } else { coef.parse().map_err(|_| err("bad coefficient"))? };
        if neg {
            c = -c;
        }
        if e > 4096 {
            return Err(err("degree too large"));
        }
        if out.len() <= e {
            out.resize(e + 1, BigInt::zero());
        }
        out[e] += c;
        pos = end;
    }
    trim(&mut out);
    if out.is_empty() {
        return Err(Error::Invalid("zero polynomial".into()));
    }
    Ok(out)
}

pub fn render_int_poly(f: &[BigInt]) -> String {
    let mut s = String::new();
    for (e, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match e {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{e}"),
        };
        if e == 0 || !a.is_one() {
            s.push_str(&a.to_string());
        }
        s.push_str(&mono);
    }
    s
}

// ---------------------------------------------------------------------------
// factoring

/// Deterministic for `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

fn probable_prime_big(n: &BigUint) -> bool {
    if let Some(x) = n.to_u64() {
        return is_prime_u64(x);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Modular arithmetic used by the rho iteration.
trait ModRing {
    type E: Clone + PartialEq;
    fn from_small(&self, c: u64) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn abs_diff(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn to_big(&self, a: &Self::E) -> BigUint;
}

/// Montgomery arithmetic modulo an odd `n < 2^{64N}`.
struct Mont<const N: usize> {
    n: [u64; N],
    ninv: u64,
    r_mod: BigUint,
    big_n: BigUint,
}

impl<const N: usize> Mont<N> {
    fn new(n: &BigUint) -> Mont<N> {
        let mut limbs = [0u64; N];
        for (i, d) in n.to_u64_digits().into_iter().enumerate() {
            limbs[i] = d;
        }
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(limbs[0].wrapping_mul(inv)));
        }
        let r_mod = (BigUint::one() << (64 * N)) % n;
        Mont { n: limbs, ninv: inv.wrapping_neg(), r_mod, big_n: n.clone() }
    }

    fn geq_n(&self, t: &[u64; N]) -> bool {
        for i in (0..N).rev() {
            if t[i] != self.n[i] {
                return t[i] > self.n[i];
            }
        }
        true
    }

    fn sub_n(&self, t: &mut [u64; N]) {
        let mut borrow = 0u64;
        for i in 0..N {
            let (d1, b1) = t[i].overflowing_sub(self.n[i]);
            let (d2, b2) = d1.overflowing_sub(borrow);
            t[i] = d2;
            borrow = (b1 | b2) as u64;
        }
    }

    fn from_big(&self, x: &BigUint) -> [u64; N] {
        let y = (x * &self.r_mod) % &self.big_n;
        let mut out = [0u64; N];
        for (i, d) in y.to_u64_digits().into_iter().enumerate() {
            out[i] = d;
        }
        out
    }
}

impl<const N: usize> ModRing for Mont<N> {
    type E = [u64; N];

    fn from_small(&self, c: u64) -> [u64; N] {
        self.from_big(&BigUint::from(c))
    }

    fn mul(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        let mut t = [0u64; N];
        let (mut tn, mut tn1);
        tn = 0u64;
        for &bi in b.iter() {
            let mut c = 0u128;
            for j in 0..N {
                let s = t[j] as u128 + a[j] as u128 * bi as u128 + c;
                t[j] = s as u64;
                c = s >> 64;
            }
            let s = tn as u128 + c;
            tn = s as u64;
            tn1 = (s >> 64) as u64;
            let m = t[0].wrapping_mul(self.ninv);
            let mut c = (t[0] as u128 + m as u128 * self.n[0] as u128) >> 64;
            for j in 1..N {
                let s = t[j] as u128 + m as u128 * self.n[j] as u128 + c;
                t[j - 1] = s as u64;
                c = s >> 64;
            }
            let s = tn as u128 + c;
            t[N - 1] = s as u64;
            tn = tn1 + (s >> 64) as u64;
        }
        if tn != 0 || self.geq_n(&t) {
            self.sub_n(&mut t);
        }
        t
    }

    fn add(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        let mut t = [0u64; N];
        let mut carry = 0u64;
        for i in 0..N {
            let (s1, c1) = a[i].overflowing_add(b[i]);
            let (s2, c2) = s1.overflowing_add(carry);
            t[i] = s2;
            carry = (c1 | c2) as u64;
        }
        if carry != 0 || self.geq_n(&t) {
            self.sub_n(&mut t);
        }
        t
    }

    fn abs_diff(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        let (x, y) = if (0..N).rev().find(|&i| a[i] != b[i]).is_some_and(|i| a[i] < b[i]) { (b, a) } else { (a, b) };
        let mut t = [0u64; N];
        let mut borrow = 0u64;
        for i in 0..N {
            let (d1, b1) = x[i].overflowing_sub(y[i]);
            let (d2, b2) = d1.overflowing_sub(borrow);
            t[i] = d2;
            borrow = (b1 | b2) as u64;
        }
        t
    }

    fn to_big(&self, a: &[u64; N]) -> BigUint {
        BigUint::new(a.iter().flat_map(|&d| [d as u32, (d >> 32) as u32]).collect())
    }
}

struct BigMod(BigUint);

impl ModRing for BigMod {
    type E = BigUint;

    fn from_small(&self, c: u64) -> BigUint {
        BigUint::from(c) % &self.0
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b % &self.0
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.0
    }

    fn abs_diff(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            b - a
        }
    }

    fn to_big(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

/// Brent's variant of Pollard rho with the map `y ↦ y^{2^s} + c`.
/// Returns a proper factor or `None` once `budget` steps are spent.
fn brent_rho<R: ModRing>(r: &R, n: &BigUint, s: u32, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut spent = 0u64;
    for c in 1u64..=8 {
        let cc = r.from_small(c);
        let f = |y: &R::E| {
            let mut y = y.clone();
            for _ in 0..s {
                y = r.mul(&y, &y);
            }
            r.add(&y, &cc)
        };
        let mut y = r.from_small(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = r.from_small(1);
        let mut g = one.clone();
        let mut len = 1u64;
        const BATCH: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..len {
                y = f(&y);
            }
            let mut k = 0;
            while k < len && g == one {
                ys = y.clone();
                for _ in 0..BATCH.min(len - k) {
                    y = f(&y);
                    q = r.mul(&q, &r.abs_diff(&x, &y));
                }
                g = r.to_big(&q).gcd(n);
                k += BATCH;
            }
            spent += len;
            len *= 2;
            if spent > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = r.to_big(&r.abs_diff(&x, &ys)).gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn rho_split(n: &BigUint, s: u32, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    macro_rules! run {
        ($($k:literal),*) => {
            match n.to_u64_digits().len() {
                $($k => brent_rho(&Mont::<$k>::new(n), n, s, budget),)*
                _ => brent_rho(&BigMod(n.clone()), n, s, budget),
            }
        };
    }
    run!(1, 2, 3, 4, 5, 6, 7, 8)
}

#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    /// Trial division bound.
    pub trial_limit: u64,
    /// Rho steps per composite before giving up.
    pub rho_steps: u64,
    /// The rho map is `y^{2^s} + c`; `s > 1` helps when all prime factors
    /// are `≡ 1 mod 2^s`.
    pub rho_power: u32,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { trial_limit: 1 << 16, rho_steps: 1 << 26, rho_power: 1 }
    }
}

/// Prime factors below `2^64` (certified) and residues that could not be
/// split or certified.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(u64, u32)>,
    pub unfactored: Vec<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    fn push(&mut self, p: u64) {
        match self.primes.iter_mut().find(|(q, _)| *q == p) {
            Some(e) => e.1 += 1,
            None => self.primes.push((p, 1)),
        }
    }
}

pub fn factor(n: &BigUint, opts: FactorOptions) -> Factorization {
    let mut out = Factorization::default();
    if n.is_zero() {
        out.unfactored.push(n.clone());
        return out;
    }
    let mut n = n.clone();
    let mut d = 2u64;
    while d <= opts.trial_limit && BigUint::from(d) * BigUint::from(d) <= n {
        while (&n % d).is_zero() {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut work = Vec::new();
    if !n.is_one() {
        work.push(n);
    }
    while let Some(m) = work.pop() {
        if let Some(x) = m.to_u64() {
            if is_prime_u64(x) {
                out.push(x);
                continue;
            }
        } else if probable_prime_big(&m) {
            out.unfactored.push(m);
            continue;
        }
        match rho_split(&m, opts.rho_power, opts.rho_steps) {
            Some(f) => {
                let g = &m / &f;
                work.push(f);
                work.push(g);
            }
            None => out.unfactored.push(m),
        }
    }
    out.primes.sort_unstable();
    out.unfactored.sort();
    out
}

// ---------------------------------------------------------------------------
// multiplicative orders

/// `x^e` in `F_p[t]/(modulus)`.
fn pow_in(x: &[u64], e: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    fpoly::powmod_big(x, &e.to_u64_digits(), modulus, p)
}

/// Exact order of a nonzero `x` in `F_p[t]/(modulus)` (a field of `p^d` elements).
fn order_in(x: &[u64], modulus: &[u64], p: u64) -> Result<BigUint> {
    let x = fpoly::rem(x, modulus, p);
    if x.is_empty() {
        return Err(Error::Invalid("zero has no multiplicative order".into()));
    }
    let d = fpoly::degree(modulus) as u32;
    let group = num_traits::pow(BigUint::from(p), d as usize) - 1u32;
    let fac = factor(&group, FactorOptions::default());
    if !fac.is_complete() {
        return Err(Error::Resource(format!("could not factor p^d − 1 = {group}")));
    }
    let mut ord = group;
    for (l, _) in fac.primes {
        while (&ord % l).is_zero() {
            let cand = &ord / l;
            if pow_in(&x, &cand, modulus, p) == [1] {
                ord = cand;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

/// Multiplicative order of `x` (coefficients lowest first) in `F_{p^d}`,
/// presented with the least irreducible modulus of degree `d`.
pub fn mult_order(x: &[u64], p: u64, d: u32) -> Result<BigUint> {
    if !is_prime_u64(p) || p >= MAX_PRIME || d == 0 {
        return Err(Error::Invalid(format!("F_{{{p}^{d}}} is not a supported field")));
    }
    let field = GfField::new(p, d);
    let x: Vec<u64> = x.iter().map(|c| c % p).collect();
    order_in(&x, field.modulus(), p)
}

// ---------------------------------------------------------------------------
// towers

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerEntry {
    pub k: u32,
    pub p: u64,
    /// Degree of the residue field over `F_p`.
    pub d: u32,
    /// The residue field is `F_p[t]/(modulus)`; coefficients lowest first.
    pub modulus: Vec<u64>,
    /// The root as a polynomial in `t`.
    pub root: Vec<u64>,
    /// Verified multiplicative order, `2^{k+1}`.
    pub order: u64,
    /// No smaller qualifying prime exists (the factorization used was complete
    /// up to the chosen prime).
    pub smallest_certified: bool,
    /// How the prime was found.
    pub method: String,
}

impl TowerEntry {
    pub fn root_string(&self) -> String {
        if self.d == 1 {
            return self.root.first().copied().unwrap_or(0).to_string();
        }
        format!("{} mod {}", render_fp_poly(&self.root, "t"), render_fp_poly(&self.modulus, "t"))
    }
}

fn render_fp_poly(a: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (e, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && e > 0 { String::new() } else { c.to_string() };
        parts.push(match e {
            0 => coef,
            1 => format!("{coef}{var}"),
            _ => format!("{coef}{var}^{e}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MissReason {
    /// Factoring limits were reached before a qualifying prime appeared.
    NotFoundWithinLimits,
    /// Every prime factor is known and none qualifies.
    ProvablyNone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerMiss {
    pub k: u32,
    pub reason: MissReason,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub polynomial: String,
    pub k_max: u32,
    pub entries: Vec<TowerEntry>,
    pub misses: Vec<TowerMiss>,
    /// `(k, R_k)` in decimal, for the algebraic tower.
    pub resultants: Vec<(u32, String)>,
}

impl TowerReport {
    pub fn primes(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.p).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,p,d,root,order\n");
        for e in &self.entries {
            let root = e.root_string();
            let root = if root.contains(',') || root.contains(' ') { format!("\"{root}\"") } else { root };
            s.push_str(&format!("{},{},{},{},{}\n", e.k, e.p, e.d, root, e.order));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": self.polynomial,
            "k_max": self.k_max,
            "entries": self.entries,
            "misses": self.misses,
            "resultants": self.resultants.iter().map(|(k, r)| json!({"k": k, "R": r})).collect::<Vec<_>>(),
        })
    }
}

/// Independent re-verification of an entry against `f`: `f(r) = 0`,
/// `r^{2^k} = −1` and the order is `2^{k+1}`.
pub fn verify_entry(f: &[BigInt], e: &TowerEntry) -> bool {
    let p = e.p;
    let fp = reduce_mod(f, p);
    let f_at_root = fpoly::rem(&compose_fp(&fp, &e.root, &e.modulus, p), &e.modulus, p);
    let half = BigUint::one() << e.k;
    let minus_one = pow_in(&e.root, &half, &e.modulus, p) == [p - 1];
    f_at_root.is_empty() && minus_one && e.order == 1u64 << (e.k + 1) && fpoly::is_irreducible(&e.modulus, p)
}

/// `f(r)` in `F_p[t]/(m)` by Horner.
fn compose_fp(f: &[u64], r: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for &c in f.iter().rev() {
        acc = fpoly::add(&fpoly::mulmod(&acc, r, m, p), &[c], p);
    }
    acc
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    fpoly::trim(&mut v);
    v
}

/// Split a squarefree product of degree-`d` irreducibles into its factors.
fn equal_degree_split(h: &[u64], d: u32, p: u64, out: &mut Vec<Vec<u64>>) {
    let n = fpoly::degree(h) as u32;
    if n == d {
        out.push(fpoly::monic(h, p));
        return;
    }
    let e = (num_traits::pow(BigUint::from(p), d as usize) - 1u32) >> 1;
    for c in 0..p {
        let t = fpoly::sub(&pow_in(&[c, 1], &e, h, p), &[1], p);
        let g = fpoly::gcd(h, &t, p);
        let dg = fpoly::degree(&g);
        if dg > 0 && (dg as u32) < n {
            let (q, _) = fpoly::divrem(h, &g, p);
            equal_degree_split(&g, d, p, out);
            equal_degree_split(&q, d, p, out);
            return;
        }
    }
    out.push(fpoly::monic(h, p));
}

/// The least-degree irreducible factor of `gcd(f mod p, x^{2^k} + 1)`,
/// least in reversed-coefficient order among those of that degree.
fn root_factor(f: &[BigInt], k: u32, p: u64) -> Option<Vec<u64>> {
    let fp = reduce_mod(f, p);
    if fpoly::degree(&fp) < 1 || fp.len() != f.len() {
        return None;
    }
    let fp = fpoly::monic(&fp, p);
    let e = BigUint::one() << k;
    let xk = pow_in(&[0, 1], &e, &fp, p);
    let g = fpoly::gcd(&fp, &fpoly::add(&xk, &[1], p), p);
    if fpoly::degree(&g) < 1 {
        return None;
    }
    let mut xp = vec![0, 1];
    for d in 1..=fpoly::degree(&g) as u32 {
        xp = fpoly::powmod(&xp, p, &g, p);
        let hd = fpoly::gcd(&g, &fpoly::sub(&xp, &[0, 1], p), p);
        if fpoly::degree(&hd) >= 1 {
            let mut facs = Vec::new();
            equal_degree_split(&hd, d, p, &mut facs);
            facs.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
            return facs.into_iter().next();
        }
    }
    None
}

/// The tower entry for `(k, p)` if `p` qualifies.
fn entry_at(f: &[BigInt], k: u32, p: u64, method: &str, smallest_certified: bool) -> Option<TowerEntry> {
    if p == 2 || p >= MAX_PRIME {
        return None;
    }
    let h = root_factor(f, k, p)?;
    let d = fpoly::degree(&h) as u32;
    let root = fpoly::rem(&[0, 1], &h, p);
    let e = TowerEntry {
        k,
        p,
        d,
        modulus: h,
        root,
        order: 1u64 << (k + 1),
        smallest_certified,
        method: method.into(),
    };
    verify_entry(f, &e).then_some(e)
}

#[derive(Clone, Copy, Debug)]
pub struct TowerOptions {
    pub factor: FactorOptions,
    /// Integer towers scan `p ≡ 1 mod 2^{k+1}` below this bound before factoring.
    pub scan_limit: u64,
    /// Numbers with more bits are not factored.
    pub max_bits: u64,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions { factor: FactorOptions::default(), scan_limit: 1 << 22, max_bits: 1 << 14 }
    }
}

enum Found {
    Entry(TowerEntry),
    Miss(MissReason, String),
}

fn merge(f: &[BigInt], polynomial: String, k_max: u32, found: Vec<(u32, Vec<Found>)>) -> TowerReport {
    let mut used = BTreeSet::new();
    let mut entries = Vec::new();
    let mut misses = Vec::new();
    for (k, cands) in found {
        let mut hit = false;
        let mut miss = None;
        for c in cands {
            match c {
                Found::Entry(e) if !used.contains(&e.p) => {
                    used.insert(e.p);
                    debug_assert!(verify_entry(f, &e));
                    entries.push(e);
                    hit = true;
                    break;
                }
                Found::Entry(_) => {}
                Found::Miss(r, d) => miss = Some((r, d)),
            }
        }
        if !hit {
            let (reason, detail) = miss.unwrap_or((MissReason::ProvablyNone, "every qualifying prime was used".into()));
            misses.push(TowerMiss { k, reason, detail });
        }
    }
    TowerReport { polynomial, k_max, entries, misses, resultants: Vec::new() }
}

/// Tower for an integer `q ∉ {−1, 0, 1}` from the prime divisors of
/// `A_k = q^{2^k} + 1`, `1 ≤ k ≤ k_max`.
pub fn integer_tower(q: i64, k_max: u32) -> Result<TowerReport> {
    integer_tower_with(q, k_max, TowerOptions::default())
}

pub fn integer_tower_with(q: i64, k_max: u32, opts: TowerOptions) -> Result<TowerReport> {
    if (-1..=1).contains(&q) {
        return Err(Error::Invalid(format!("q = {q} is zero or a root of unity")));
    }
    if k_max > MAX_K {
        return Err(Error::Resource(format!("k_max = {k_max} exceeds {MAX_K}")));
    }
    let f = vec![BigInt::from(-q), BigInt::one()];
    let found: Vec<(u32, Vec<Found>)> = (1..=k_max)
        .into_par_iter()
        .map(|k| (k, integer_level(q, k, &f, opts)))
        .collect();
    Ok(merge(&f, format!("x - {q}").replace("- -", "+ "), k_max, found))
}

fn integer_level(q: i64, k: u32, f: &[BigInt], opts: TowerOptions) -> Vec<Found> {
    // every odd prime divisor of A_k is 1 mod 2^{k+1}
    let step = 1u64 << (k + 1);
    let mut p = step + 1;
    while p < opts.scan_limit {
        if is_prime_u64(p) {
            let r = (q % p as i64 + p as i64) as u64 % p;
            if fpoly::powm(r, 1 << k, p) == p - 1 {
                return entry_at(f, k, p, "scan", true).into_iter().map(Found::Entry).collect();
            }
        }
        p += step;
    }
    let bits = (q.unsigned_abs() as f64).log2() * (1u64 << k) as f64;
    if bits > opts.max_bits as f64 {
        return vec![Found::Miss(
            MissReason::NotFoundWithinLimits,
            format!("no prime below {} and A_{k} has about {bits:.0} bits", opts.scan_limit),
        )];
    }
    let a: BigInt = num_traits::pow(BigInt::from(q), 1usize << k) + 1;
    let mut a = a.magnitude().clone();
    while a.is_even() {
        a >>= 1;
    }
    let fo = FactorOptions { rho_power: k + 1, ..opts.factor };
    let fac = factor(&a, fo);
    let complete = fac.is_complete();
    let mut out: Vec<Found> = fac
        .primes
        .iter()
        .filter_map(|&(p, _)| entry_at(f, k, p, "rho", complete))
        .map(Found::Entry)
        .collect();
    out.push(if complete {
        Found::Miss(MissReason::ProvablyNone, format!("A_{k} is fully factored"))
    } else {
        Found::Miss(
            MissReason::NotFoundWithinLimits,
            format!("{} residue(s) of A_{k} left unfactored", fac.unfactored.len()),
        )
    });
    // the least prime found only certifies minimality when nothing is left over
    if let Some(Found::Entry(e)) = out.first_mut() {
        e.smallest_certified = complete;
    }
    out
}

/// Tower for a root of `f`: primes dividing `R_k = |Res(f, x^{2^k} + 1)|`.
pub fn algebraic_tower(f: &[BigInt], k_max: u32) -> Result<TowerReport> {
    algebraic_tower_with(f, k_max, TowerOptions::default())
}

pub fn algebraic_tower_with(f: &[BigInt], k_max: u32, opts: TowerOptions) -> Result<TowerReport> {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return Err(Error::Invalid("need a polynomial of degree at least 1".into()));
    }
    if f[0].is_zero() {
        return Err(Error::Invalid("f(0) = 0: the root would be zero".into()));
    }
    if k_max > MAX_K.min(16) {
        return Err(Error::Resource(format!("k_max = {k_max} exceeds 16 for algebraic towers")));
    }
    if f.len() > 2 {
        let fr: Vec<BigRational> = f.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        if let Some((r, _)) = crate::polysolve::rational_roots(&fr).first() {
            return Err(Error::Invalid(format!("f has the rational root {r}, so it is reducible")));
        }
    }
    let results: Vec<(u32, BigInt, Vec<Found>)> = (1..=k_max)
        .into_par_iter()
        .map(|k| -> Result<(u32, BigInt, Vec<Found>)> {
            let r = resultant(&f, &cyclo_2power(k)).abs();
            if r.is_zero() {
                return Err(Error::Invalid(format!(
                    "Res(f, x^{} + 1) = 0: a root of f is a root of unity",
                    1u64 << k
                )));
            }
            if r.bits() > opts.max_bits {
                return Ok((
                    k,
                    r,
                    vec![Found::Miss(MissReason::NotFoundWithinLimits, "resultant too large to factor".into())],
                ));
            }
            let fac = factor(r.magnitude(), opts.factor);
            let complete = fac.is_complete();
            let mut out: Vec<Found> = Vec::new();
            for &(p, _) in &fac.primes {
                if let Some(e) = entry_at(&f, k, p, "resultant", complete) {
                    // the prime must divide R_k
                    debug_assert!((&r % p).is_zero());
                    out.push(Found::Entry(e));
                }
            }
            out.push(if complete {
                Found::Miss(MissReason::ProvablyNone, format!("R_{k} is fully factored"))
            } else {
                Found::Miss(
                    MissReason::NotFoundWithinLimits,
                    format!("{} residue(s) of R_{k} left unfactored", fac.unfactored.len()),
                )
            });
            Ok((k, r, out))
        })
        .collect::<Result<_>>()?;
    let resultants = results.iter().map(|(k, r, _)| (*k, r.to_string())).collect();
    let found = results.into_iter().map(|(k, _, c)| (k, c)).collect();
    let mut rep = merge(&f, render_int_poly(&f), k_max, found);
    rep.resultants = resultants;
    Ok(rep)
}

/// `R_k` for one `k`.
pub fn tower_resultant(f: &[BigInt], k: u32) -> BigInt {
    resultant(f, &cyclo_2power(k)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&ints(&[-2, 1]), &ints(&[1, 0, 1])), BigInt::from(5));
        assert_eq!(resultant(&ints(&[-1, -1, 1]), &ints(&[1, 0, 1])), BigInt::from(5));
        assert_eq!(resultant(&ints(&[1, 0, 1]), &ints(&[1, 0, 1])), BigInt::zero());
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(&[2], 7, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(mult_order(&[1], 13, 1).unwrap(), BigUint::one());
        assert_eq!(mult_order(&[3], 5, 1).unwrap(), BigUint::from(4u32));
        assert!(mult_order(&[0], 5, 1).is_err());
    }

    #[test]
    fn factoring() {
        let f = factor(&BigUint::from(641u64 * 6700417), FactorOptions::default());
        assert_eq!(f.primes, vec![(641, 1), (6700417, 1)]);
        let n = BigUint::from(4294967291u64) * BigUint::from(4294967279u64);
        let f = factor(&n, FactorOptions { trial_limit: 100, ..Default::default() });
        assert_eq!(f.primes, vec![(4294967279, 1), (4294967291, 1)]);
    }

    #[test]
    fn small_towers() {
        let t = integer_tower(2, 4).unwrap();
        assert_eq!(t.primes(), vec![5, 17, 257, 65537]);
        assert!(integer_tower(1, 3).is_err());
        let f = ints(&[-1, -1, 1]);
        let t = algebraic_tower(&f, 1).unwrap();
        assert_eq!(t.entries[0].p, 5);
        assert_eq!(t.entries[0].root, vec![3]);
        assert!(algebraic_tower(&ints(&[1, 0, 1]), 2).is_err());
    }
}
