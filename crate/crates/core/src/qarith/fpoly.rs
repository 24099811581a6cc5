//! Dense univariate polynomials over a prime field `F_p` (`p < 2^63`).
//!
//! Coefficients are stored lowest degree first and kept trimmed; the zero
//! polynomial is the empty vector.

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powm(b: u64, e: u64, p: u64) -> u64 {
    super::laurent::pow_mod(b, e, p)
}

pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    super::laurent::inv_mod(a, p)
}

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut r);
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut r);
    r
}

pub fn scale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|&x| mulm(x, s, p)).collect();
    trim(&mut r);
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = addm(r[i + j], mulm(x, y, p), p);
        }
    }
    trim(&mut r);
    r
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let linv = invm(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + db], linv, p);
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (i, &y) in b.iter().enumerate() {
            r[k + i] = subm(r[k + i], mulm(c, y, p), p);
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, invm(l, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(&l) = r0.last() {
        let li = invm(l, p);
        (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
    } else {
        (r0, s0, t0)
    }
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m` for an arbitrary-precision exponent given as little-endian `u64` limbs.
pub fn powmod_big(base: &[u64], e: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let base = rem(base, m, p);
    for limb in e.iter().rev() {
        for bit in (0..64).rev() {
            acc = mulmod(&acc, &acc, m, p);
            if (limb >> bit) & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
        }
    }
    acc
}

pub fn powmod(base: &[u64], e: u64, m: &[u64], p: u64) -> Vec<u64> {
    powmod_big(base, &[e], m, p)
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| addm(mulm(acc, x, p), c, p))
}

pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p, p)).collect();
    trim(&mut r);
    r
}

/// `x^(p^k) mod m`, by repeated p-th powering.
pub fn frobenius_power(m: &[u64], k: u32, p: u64) -> Vec<u64> {
    let mut x = rem(&[0, 1], m, p);
    for _ in 0..k {
        x = powmod(&x, p, m, p);
    }
    x
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree `d ≥ 1`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = degree(f);
    if d < 1 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let d = d as u32;
    let x = vec![0, 1];
    if sub(&frobenius_power(f, d, p), &rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_divisors(d as u64) {
        let h = sub(&frobenius_power(f, d / r as u32, p), &x, p);
        if degree(&gcd(f, &h, p)) != 0 {
            return false;
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `d` over `F_p`, in the
/// order that reads the coefficient vector `(c_{d-1}, …, c_0)` lexicographically.
pub fn least_irreducible(p: u64, d: u32) -> Vec<u64> {
    assert!(d >= 1);
    let mut digits = vec![0u64; d as usize];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment with c_0 as the least significant digit
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < digits.len(), "no irreducible polynomial found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let p = 7;
        let a = mul(&[1, 1], &[2, 0, 1], p); // (x+1)(x^2+2)
        let b = mul(&[1, 1], &[3, 1], p);
        assert_eq!(gcd(&a, &b, p), vec![1, 1]);
        let (q, r) = divrem(&a, &[1, 1], p);
        assert!(r.is_empty());
        assert_eq!(q, vec![2, 0, 1]);
        let (g, s, t) = xgcd(&[2, 0, 1], &[3, 1], p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &[2, 0, 1], p), &mul(&t, &[3, 1], p), p), vec![1]);
    }

    #[test]
    fn irreducibles() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(5, 1), vec![0, 1]);
        assert!(!is_irreducible(&[6, 0, 1], 7));
        assert!(is_irreducible(&[1, 0, 1], 7));
        // x^2 + 1 is reducible mod 5
        assert!(!is_irreducible(&[1, 0, 1], 5));
    }
}
