//! Parsers for the canonical scalar string forms.

use super::cyclo::{CycloElem, CycloField};
use super::gf::{GfElem, GfField};
use super::int::Int;
use super::laurent::LPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::Arc;

fn perr(s: &str, what: &str) -> Error {
    Error::Parse(format!("{what} in {s:?}"))
}

/// Split at a top-level `/` (outside parentheses).
fn split_fraction(s: &str) -> (&str, Option<&str>) {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return (&s[..i], Some(&s[i + 1..])),
            _ => {}
        }
    }
    (s, None)
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        &t[1..t.len() - 1]
    } else {
        t
    }
}

/// Parse a Laurent polynomial written in `q` or `v` (`q = v²`).
pub fn parse_laurent(s: &str) -> Result<LPoly> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(perr(s, "empty polynomial"));
    }
    let b = t.as_bytes();
    let mut i = 0;
    let mut acc = LPoly::zero();
    while i < b.len() {
        let mut sign = 1i64;
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let coef = if i > start {
            let n: BigInt = t[start..i].parse().map_err(|_| perr(s, "bad coefficient"))?;
            Int::from(n)
        } else {
            Int::ONE
        };
        if i < b.len() && b[i] == b'*' {
            i += 1;
        }
        let mut exp = 0i32;
        if i < b.len() && (b[i] == b'q' || b[i] == b'v') {
            let scale = if b[i] == b'q' { 2 } else { 1 };
            i += 1;
            let mut e = 1i32;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                let es = i;
                if i < b.len() && b[i] == b'-' {
                    i += 1;
                }
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                e = t[es..i].parse().map_err(|_| perr(s, "bad exponent"))?;
            }
            exp = scale * e;
        } else if i == start {
            return Err(perr(s, "expected a term"));
        }
        acc = acc.add(&LPoly::monomial(&coef * &Int::from(sign), exp));
        if i < b.len() && b[i] != b'+' && b[i] != b'-' {
            return Err(perr(s, "unexpected character"));
        }
    }
    Ok(acc)
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let (n, d) = split_fraction(s.trim());
    let num = parse_laurent(strip_parens(n))?;
    match d {
        None => Ok(RatFunc::from_laurent(num)),
        Some(d) => {
            let den = parse_laurent(strip_parens(d))?;
            if den.is_zero() {
                return Err(perr(s, "zero denominator"));
            }
            Ok(RatFunc::new(num, den))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (n, d) = split_fraction(t);
    let n: BigInt = n.trim().parse().map_err(|_| perr(s, "bad rational"))?;
    let d: BigInt = match d {
        Some(d) => d.trim().parse().map_err(|_| perr(s, "bad rational"))?,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return Err(perr(s, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn bracket_body<'a>(s: &'a str, prefix_end: usize) -> Result<&'a str> {
    let rest = &s[prefix_end..];
    let rest = rest.trim();
    if !rest.starts_with('[') || !rest.ends_with(']') {
        return Err(perr(s, "expected [..]"));
    }
    Ok(&rest[1..rest.len() - 1])
}

/// Either a polynomial in `z = ζ_N` with rational coefficients (the
/// rendered form) or the coordinate form `cycN[c0, …, c_{φ(N)−1}]`.
pub fn parse_cyclo(s: &str, field: &Arc<CycloField>) -> Result<CycloElem> {
    let t = s.trim();
    let Some(rest) = t.strip_prefix("cyc") else {
        return parse_zpoly(s, field);
    };
    let open = rest.find('[').ok_or_else(|| perr(s, "expected ["))?;
    let n: u32 = rest[..open].parse().map_err(|_| perr(s, "bad conductor"))?;
    if n != field.conductor() {
        return Err(Error::DomainMismatch(format!("conductor {n} vs {}", field.conductor())));
    }
    let body = bracket_body(rest, open)?;
    let coeffs: Vec<BigRational> = body.split(',').map(parse_rational).collect::<Result<_>>()?;
    if coeffs.len() != field.degree() {
        return Err(perr(s, "wrong number of coefficients"));
    }
    Ok(CycloElem::from_rationals(field, &coeffs))
}

fn parse_zpoly(s: &str, field: &Arc<CycloField>) -> Result<CycloElem> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(perr(s, "empty polynomial"));
    }
    let mut acc = CycloElem::from_int(field, 0);
    let mut terms = Vec::new();
    let mut begin = 0;
    for (i, ch) in t.char_indices() {
        if (ch == '+' || ch == '-') && i > begin && !t[..i].ends_with('^') {
            terms.push(&t[begin..i]);
            begin = i;
        }
    }
    terms.push(&t[begin..]);
    for term in terms {
        let (neg, body) = match term.as_bytes()[0] {
            b'-' => (true, &term[1..]),
            b'+' => (false, &term[1..]),
            _ => (false, term),
        };
        let (coef, exp) = match body.find('z') {
            None => (body, 0i64),
            Some(zi) => {
                let coef = body[..zi].trim_end_matches('*');
                let e = &body[zi + 1..];
                let exp = match e.strip_prefix('^') {
                    Some(e) => e.parse().map_err(|_| perr(s, "bad exponent"))?,
                    None if e.is_empty() => 1,
                    None => return Err(perr(s, "unexpected character")),
                };
                (coef, exp)
            }
        };
        let mut c = if coef.is_empty() { BigRational::from_integer(1.into()) } else { parse_rational(coef)? };
        if neg {
            c = -c;
        }
        let m = CycloElem::zeta_pow(field, exp).mul(&CycloElem::from_rational(field, &c));
        acc = acc.add(&m);
    }
    Ok(acc)
}

pub fn parse_gf(s: &str, field: &Arc<GfField>) -> Result<GfElem> {
    let t = s.trim();
    let rest = t.strip_prefix("gf(").ok_or_else(|| perr(s, "expected gf( prefix"))?;
    let close = rest.find(')').ok_or_else(|| perr(s, "expected )"))?;
    let (p, d) = rest[..close].split_once('^').ok_or_else(|| perr(s, "expected p^d"))?;
    let p: u64 = p.parse().map_err(|_| perr(s, "bad characteristic"))?;
    let d: u32 = d.parse().map_err(|_| perr(s, "bad degree"))?;
    if p != field.p() || d != field.d() {
        return Err(Error::DomainMismatch(format!("GF({p}^{d}) vs GF({}^{})", field.p(), field.d())));
    }
    let body = bracket_body(rest, close + 1)?;
    let v: Vec<u64> = body
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| perr(s, "bad residue")))
        .collect::<Result<_>>()?;
    if v.len() != d as usize || v.iter().any(|&x| x >= p) {
        return Err(perr(s, "residues out of range"));
    }
    Ok(GfElem::from_coeffs(field, &v))
}

#[cfg(test)]
mod tests {
    use super::super::{qint, ScalarDomain};
    use super::*;

    #[test]
    fn round_trips() {
        let g = ScalarDomain::generic();
        let x = qint(3, &g).inv().unwrap().add(&g.v().unwrap());
        assert_eq!(g.parse(&x.render()).unwrap(), x);
        assert_eq!(parse_laurent("q^-2 + 1 + q^2").unwrap(), parse_laurent("v^-4+1+v^4").unwrap());
        assert_eq!(g.parse("-3").unwrap(), g.int(-3));
        let r = ScalarDomain::root_of_unity(5).unwrap();
        let y = qint(2, &r).inv().unwrap();
        assert_eq!(r.parse(&y.render()).unwrap(), y);
        let f = ScalarDomain::finite(7, 2, &[1, 1]).unwrap();
        let z = f.q().inv().unwrap();
        assert_eq!(f.parse(&z.render()).unwrap(), z);
        assert!(g.parse("q^").is_err());
        assert!(r.parse("cyc7[1]").is_err());
        assert_eq!(r.parse("z^10").unwrap(), r.int(1));
        assert_eq!(r.parse("-1/2 + 3*z^2 - z").unwrap().render(), "-1/2 - z + 3*z^2");
        assert!(r.parse("2*w").is_err());
    }
}
