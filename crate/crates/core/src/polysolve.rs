//! Gröbner bases of small polynomial systems over the rationals and
//! extraction of their solution sets.
//!
//! Polynomials are stored as content-free integer polynomials with a positive
//! leading coefficient; Buchberger's algorithm runs with the normal selection
//! strategy and both of Buchberger's criteria.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Hard limit on the number of variables a monomial can carry.
pub const MAX_VARS: usize = 32;
/// Default variable guard for [`groebner`].
pub const DEFAULT_MAX_VARS: usize = 20;
const MAX_DEGREE: u32 = 512;
const MAX_BASIS: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonoOrder {
    #[default]
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono {
    deg: u32,
    e: [u16; MAX_VARS],
}

impl Mono {
    pub fn one() -> Mono {
        Mono { deg: 0, e: [0; MAX_VARS] }
    }

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::one();
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Mono {
        let mut m = Mono::one();
        for (i, &x) in exps.iter().enumerate() {
            m.e[i] = x;
            m.deg += x as u32;
        }
        m
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.e[i] += o.e[i];
        }
        m.deg += o.deg;
        m
    }

    fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    fn div(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.e[i] -= o.e[i];
        }
        m.deg -= o.deg;
        m
    }

    fn lcm(&self, o: &Mono) -> Mono {
        let mut m = Mono::one();
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].max(o.e[i]);
            m.deg += m.e[i] as u32;
        }
        m
    }

    fn coprime(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    /// The variable index if this is a pure power `x_i^k`, `k ≥ 1`.
    fn pure_power(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&i| self.e[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    pub fn cmp_in(&self, o: &Mono, ord: MonoOrder) -> Ordering {
        match ord {
            MonoOrder::Lex => self.e.cmp(&o.e),
            MonoOrder::Grevlex => self.deg.cmp(&o.deg).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if self.e[i] != o.e[i] {
                        return o.e[i].cmp(&self.e[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &x) in self.e.iter().enumerate() {
            match x {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{x}", names[i])),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|i| format!("x{i}")).collect();
        write!(f, "{}", if self.is_one() { "1".into() } else { self.render(&names) })
    }
}

/// A polynomial with integer coefficients, terms sorted by decreasing
/// monomial in the order it was built with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: i64) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: vec![(Mono::one(), BigInt::from(c))] }
    }

    /// Clears denominators, merges repeated monomials and sorts.
    pub fn from_rational_terms(terms: Vec<(Mono, BigRational)>, ord: MonoOrder) -> Poly {
        let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints = terms.into_iter().map(|(m, c)| (m, c.numer() * (&den / c.denom()))).collect();
        Poly::from_int_terms(ints, ord)
    }

    pub fn from_int_terms(mut terms: Vec<(Mono, BigInt)>, ord: MonoOrder) -> Poly {
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, ord));
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg).max().unwrap_or(0)
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive(mut self) -> Poly {
        if self.terms.is_empty() {
            return self;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
        self
    }

    pub fn resort(&self, ord: MonoOrder) -> Poly {
        Poly::from_int_terms(self.terms.clone(), ord)
    }

    /// `a·self − b·m·g`.
    fn lin_comb(&self, a: &BigInt, b: &BigInt, m: &Mono, g: &Poly, ord: MonoOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |k: usize| g.terms[k].0.mul(m);
        while i < self.terms.len() || j < g.terms.len() {
            let take = if i == self.terms.len() {
                Ordering::Less
            } else if j == g.terms.len() {
                Ordering::Greater
            } else {
                self.terms[i].0.cmp_in(&shifted(j), ord)
            };
            match take {
                Ordering::Greater => {
                    out.push((self.terms[i].0, &self.terms[i].1 * a));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted(j), -(&g.terms[j].1 * b)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 * a - &g.terms[j].1 * b;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, xi) in x.iter().enumerate() {
                if m.e[i] > 0 {
                    t *= num_traits::pow(xi.clone(), m.e[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&m.render(names));
            } else {
                s.push_str(&format!("{a}*{}", m.render(names)));
            }
        }
        s
    }
}

/// A polynomial system in named variables.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub names: Vec<String>,
    pub gens: Vec<Poly>,
}

impl PolySystem {
    /// Variables `x0..x{n−1}`.
    pub fn new(nvars: usize, gens: Vec<Poly>) -> PolySystem {
        let names = (0..nvars).map(|i| format!("x{i}")).collect();
        PolySystem { names, gens: gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.primitive()).collect() }
    }

    /// Parse generators written in `x0..xk`, e.g. `"x0^2*x1 - 3/2*x2 + 1"`.
    pub fn parse(gens: &[&str]) -> Result<PolySystem> {
        let polys: Vec<(usize, Poly)> = gens.iter().map(|s| parse_poly(s)).collect::<Result<_>>()?;
        let nvars = polys.iter().map(|(n, _)| *n).max().unwrap_or(0);
        Ok(PolySystem::new(nvars, polys.into_iter().map(|(_, p)| p).collect()))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn render(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render(&self.names)).collect()
    }
}

/// Parses one polynomial; returns it with `1 + largest variable index`.
pub fn parse_poly(s: &str) -> Result<(usize, Poly)> {
    let err = |m: &str| Error::Parse(format!("polynomial {s:?}: {m}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let mut terms = Vec::new();
    let mut nvars = 0;
    let bytes = compact.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = BigRational::one();
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        }
        let end = (pos..bytes.len()).find(|&k| bytes[k] == b'+' || bytes[k] == b'-').unwrap_or(bytes.len());
        if end == pos {
            return Err(err("dangling sign"));
        }
        let mut coeff = sign;
        let mut mono = Mono::one();
        for factor in compact[pos..end].split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, pw) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u16>().map_err(|_| err("bad exponent"))?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                if i >= MAX_VARS {
                    return Err(err("variable index too large"));
                }
                nvars = nvars.max(i + 1);
                let mut m = Mono::one();
                m.e[i] = pw;
                m.deg = pw as u32;
                mono = mono.mul(&m);
            } else {
                let c: BigRational = match factor.split_once('/') {
                    Some((a, b)) => {
                        let a: BigInt = a.parse().map_err(|_| err("bad numerator"))?;
                        let b: BigInt = b.parse().map_err(|_| err("bad denominator"))?;
                        if b.is_zero() {
                            return Err(err("zero denominator"));
                        }
                        BigRational::new(a, b)
                    }
                    None => BigRational::from_integer(factor.parse().map_err(|_| err("bad coefficient"))?),
                };
                coeff *= c;
            }
        }
        terms.push((mono, coeff));
        pos = end;
    }
    Ok((nvars, Poly::from_rational_terms(terms, MonoOrder::Grevlex)))
}

/// Options for [`groebner_with`].
#[derive(Clone, Copy, Debug)]
pub struct GroebnerOptions {
    pub order: MonoOrder,
    pub max_vars: usize,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions { order: MonoOrder::Grevlex, max_vars: DEFAULT_MAX_VARS }
    }
}

/// Reduced Gröbner basis under grevlex with the default variable guard.
pub fn groebner(sys: &PolySystem) -> Result<Vec<Poly>> {
    groebner_with(sys, GroebnerOptions::default())
}

/// Full reduction of `f` modulo `g`, returned primitive.
pub fn reduce(f: &Poly, g: &[Poly], ord: MonoOrder) -> Poly {
    let mut f = f.clone();
    let mut rem: Vec<(Mono, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while !f.is_zero() {
        let lm = *f.lm();
        match g.iter().find(|p| p.lm().divides(&lm)) {
            Some(p) => {
                let gg = f.lc().gcd(p.lc());
                let a = p.lc() / &gg;
                let b = f.lc() / &gg;
                let m = lm.div(p.lm());
                f = f.lin_comb(&a, &b, &m, p, ord);
                if !a.is_one() {
                    for (_, c) in &mut rem {
                        *c *= &a;
                    }
                }
                steps += 1;
                if steps % 16 == 0 {
                    shrink(&mut f, &mut rem);
                }
            }
            None => {
                let t = f.terms.remove(0);
                rem.push(t);
            }
        }
    }
    Poly { terms: rem }.primitive()
}

fn shrink(f: &mut Poly, rem: &mut [(Mono, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in f.terms.iter().chain(rem.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, c) in f.terms.iter_mut().chain(rem.iter_mut()) {
        *c /= &g;
    }
}

fn s_poly(f: &Poly, g: &Poly, ord: MonoOrder) -> Poly {
    let l = f.lm().lcm(g.lm());
    let gg = f.lc().gcd(g.lc());
    let a = g.lc() / &gg;
    let b = f.lc() / &gg;
    let fm = Poly { terms: f.terms.iter().map(|(m, c)| (m.mul(&l.div(f.lm())), c.clone())).collect() };
    fm.lin_comb(&a, &b, &l.div(g.lm()), g, ord)
}

pub fn groebner_with(sys: &PolySystem, opts: GroebnerOptions) -> Result<Vec<Poly>> {
    if sys.nvars() > opts.max_vars || sys.nvars() > MAX_VARS {
        return Err(Error::Resource(format!(
            "{} variables exceed the guard of {}",
            sys.nvars(),
            opts.max_vars.min(MAX_VARS)
        )));
    }
    let ord = opts.order;
    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let one = vec![Poly::constant(1)];
    let add = |p: Poly, basis: &mut Vec<Poly>, pairs: &mut BTreeSet<(usize, usize)>| {
        let k = basis.len();
        for i in 0..k {
            pairs.insert((i, k));
        }
        basis.push(p);
    };
    for g in &sys.gens {
        let r = reduce(&g.resort(ord), &basis, ord);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(one);
        }
        add(r, &mut basis, &mut pairs);
    }
    while !pairs.is_empty() {
        // normal strategy: least lcm, ties by index
        let &(i, j) = pairs
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].lm().lcm(basis[b].lm());
                let l2 = basis[c].lm().lcm(basis[d].lm());
                l1.cmp_in(&l2, ord).then((b, a).cmp(&(d, c)))
            })
            .unwrap();
        pairs.remove(&(i, j));
        let (li, lj) = (*basis[i].lm(), *basis[j].lm());
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        if l.deg > MAX_DEGREE {
            return Err(Error::Resource(format!("S-polynomial degree {} above {MAX_DEGREE}", l.deg)));
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], ord);
        let r = reduce(&s, &basis, ord);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(one);
        }
        if basis.len() >= MAX_BASIS {
            return Err(Error::Resource(format!("intermediate basis exceeds {MAX_BASIS} elements")));
        }
        add(r, &mut basis, &mut pairs);
    }
    Ok(interreduce(basis, ord))
}

fn interreduce(basis: Vec<Poly>, ord: MonoOrder) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, q)| {
            k != i && q.lm().divides(p.lm()) && (q.lm() != p.lm() || k < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> =
            minimal.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, q)| q.clone()).collect();
        out.push(reduce(&minimal[i], &others, ord));
    }
    out.sort_by(|a, b| a.lm().cmp_in(b.lm(), ord));
    out
}

/// `true` iff `1` lies in the ideal generated by `basis`.
pub fn is_unit_ideal(basis: &[Poly]) -> bool {
    basis.iter().any(|p| p.is_constant())
}

/// Reduce every S-polynomial of the basis to zero.
pub fn satisfies_buchberger(basis: &[Poly], ord: MonoOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !reduce(&s_poly(&basis[i], &basis[j], ord), basis, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub enum Variety {
    Empty,
    /// Zero-dimensional. `points` lists every rational solution; `complete`
    /// is false when some solutions are irrational, in which case the lex
    /// basis describes them as a triangular set.
    Finite { points: Vec<Vec<BigRational>>, complete: bool, lex_basis: Vec<Poly> },
    PositiveDimensional { basis: Vec<Poly> },
}

impl Variety {
    pub fn kind(&self) -> &'static str {
        match self {
            Variety::Empty => "empty",
            Variety::Finite { .. } => "finite",
            Variety::PositiveDimensional { .. } => "positive-dimensional",
        }
    }
}

pub fn variety(sys: &PolySystem) -> Result<Variety> {
    variety_with(sys, GroebnerOptions::default())
}

pub fn variety_with(sys: &PolySystem, opts: GroebnerOptions) -> Result<Variety> {
    let g = groebner_with(sys, GroebnerOptions { order: MonoOrder::Grevlex, ..opts })?;
    if is_unit_ideal(&g) {
        return Ok(Variety::Empty);
    }
    let n = sys.nvars();
    let covered: BTreeSet<usize> = g.iter().filter_map(|p| p.lm().pure_power()).collect();
    if covered.len() < n {
        return Ok(Variety::PositiveDimensional { basis: g });
    }
    let lex_sys = PolySystem { names: sys.names.clone(), gens: g };
    let lex = groebner_with(&lex_sys, GroebnerOptions { order: MonoOrder::Lex, ..opts })?;
    let mut points = Vec::new();
    let mut complete = true;
    let mut partial = vec![BigRational::zero(); n];
    solve_triangular(&lex, n, n, &mut partial, &mut points, &mut complete);
    points.sort();
    Ok(Variety::Finite { points, complete, lex_basis: lex })
}

/// Assign `x_{k−1}` given `x_k..x_{n−1}` in `partial`.
fn solve_triangular(
    lex: &[Poly],
    n: usize,
    k: usize,
    partial: &mut Vec<BigRational>,
    out: &mut Vec<Vec<BigRational>>,
    complete: &mut bool,
) {
    if k == 0 {
        out.push(partial.clone());
        return;
    }
    let v = k - 1;
    // polynomials in x_v..x_{n−1} only, specialized to univariates in x_v
    let mut g: Option<Vec<BigRational>> = None;
    for p in lex {
        if p.terms.iter().any(|(m, _)| (0..v).any(|i| m.e[i] > 0)) {
            continue;
        }
        let u = specialize(p, v, n, partial);
        if u.iter().all(|c| c.is_zero()) {
            continue;
        }
        g = Some(match g {
            None => u,
            Some(h) => upoly_gcd(h, u),
        });
    }
    let Some(g) = g else {
        *complete = false;
        return;
    };
    let roots = rational_roots(&g);
    let found: usize = roots.iter().map(|(_, mult)| mult).sum();
    if found + 1 < g.len() {
        *complete = false;
    }
    for (r, _) in roots {
        partial[v] = r;
        solve_triangular(lex, n, v, partial, out, complete);
    }
    partial[v] = BigRational::zero();
}

/// Coefficients (low to high) of `p` as a polynomial in `x_v` after
/// substituting `x_{v+1..n}`.
fn specialize(p: &Poly, v: usize, n: usize, partial: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    for (m, c) in &p.terms {
        let mut t = BigRational::from_integer(c.clone());
        for (i, val) in partial.iter().enumerate().take(n).skip(v + 1) {
            if m.e[i] > 0 {
                t *= num_traits::pow(val.clone(), m.e[i] as usize);
            }
        }
        let d = m.e[v] as usize;
        if out.len() <= d {
            out.resize(d + 1, BigRational::zero());
        }
        out[d] += t;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn upoly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn upoly_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    while !b.is_empty() {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().unwrap().clone();
    a.into_iter().map(|c| c / &lead).collect()
}

/// Rational roots with multiplicities, by the rational root theorem.
/// Polynomials whose end coefficients are too large to factor are skipped.
pub fn rational_roots(p: &[BigRational]) -> Vec<(BigRational, usize)> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut out = Vec::new();
    let mut zero_mult = 0;
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((BigRational::zero(), zero_mult));
    }
    if ints.len() <= 1 {
        return out;
    }
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return out;
    };
    if a0 > 1 << 40 || an > 1 << 40 {
        return out;
    }
    let divisors = |n: u64| -> Vec<u64> {
        let mut d: Vec<u64> = (1..).take_while(|k| k * k <= n).filter(|k| n % k == 0).flat_map(|k| [k, n / k]).collect();
        d.sort();
        d.dedup();
        d
    };
    let mut cands = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            for s in [1i64, -1] {
                cands.push(BigRational::new(BigInt::from(s) * BigInt::from(num), BigInt::from(den)));
            }
        }
    }
    cands.sort();
    cands.dedup();
    let mut cur: Vec<BigRational> = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    for r in cands {
        let mut mult = 0;
        loop {
            let (q, rem) = synthetic_div(&cur, &r);
            if !rem.is_zero() {
                break;
            }
            cur = q;
            mult += 1;
            if cur.len() <= 1 {
                break;
            }
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out.sort();
    out
}

fn synthetic_div(p: &[BigRational], r: &BigRational) -> (Vec<BigRational>, BigRational) {
    let n = p.len();
    let mut q = vec![BigRational::zero(); n - 1];
    let mut acc = BigRational::zero();
    for i in (0..n).rev() {
        acc = &acc * r + &p[i];
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    (q, acc)
}

/// Equality of ideals, compared through reduced Gröbner bases.
pub fn same_ideal(a: &PolySystem, b: &PolySystem, opts: GroebnerOptions) -> Result<bool> {
    Ok(groebner_with(a, opts)? == groebner_with(b, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn basis_strings(gens: &[&str]) -> Vec<String> {
        let s = PolySystem::parse(gens).unwrap();
        groebner(&s).unwrap().iter().map(|p| p.render(&s.names)).collect()
    }

    #[test]
    fn small_bases() {
        assert_eq!(basis_strings(&["x0^2 - 1"]), vec!["x0^2 - 1"]);
        assert_eq!(basis_strings(&["x0^2", "x0 - 1"]), vec!["1"]);
        assert_eq!(basis_strings(&["x0*x1 - 1", "x0"]), vec!["1"]);
        assert_eq!(basis_strings(&["2*x0 - 1", "x1 + 1/3"]), vec!["3*x1 + 1", "2*x0 - 1"]);
    }

    #[test]
    fn varieties() {
        let s = PolySystem::parse(&["x0^2 - 1"]).unwrap();
        match variety(&s).unwrap() {
            Variety::Finite { points, complete, .. } => {
                assert!(complete);
                assert_eq!(points, vec![vec![rat(-1)], vec![rat(1)]]);
            }
            v => panic!("{v:?}"),
        }
        assert!(matches!(variety(&PolySystem::parse(&["x0^2", "x0 - 1"]).unwrap()).unwrap(), Variety::Empty));
        assert!(matches!(
            variety(&PolySystem::parse(&["x0 - x1"]).unwrap()).unwrap(),
            Variety::PositiveDimensional { .. }
        ));
        let s = PolySystem::parse(&["x0^2 - 2"]).unwrap();
        match variety(&s).unwrap() {
            Variety::Finite { points, complete, .. } => assert!(points.is_empty() && !complete),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn circle_meets_line() {
        let s = PolySystem::parse(&["x0^2 + x1^2 - 25", "x0 - x1 - 1"]).unwrap();
        let g = groebner(&s).unwrap();
        assert!(satisfies_buchberger(&g, MonoOrder::Grevlex));
        for p in &s.gens {
            assert!(reduce(p, &g, MonoOrder::Grevlex).is_zero());
        }
        match variety(&s).unwrap() {
            Variety::Finite { points, complete: true, .. } => {
                assert_eq!(points, vec![vec![rat(-3), rat(-4)], vec![rat(4), rat(3)]]);
                for pt in &points {
                    for p in &s.gens {
                        assert!(p.eval(pt).is_zero());
                    }
                }
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn guard_and_parse_errors() {
        let gens: Vec<String> = (0..25).map(|i| format!("x{i} - 1")).collect();
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let s = PolySystem::parse(&refs).unwrap();
        assert!(matches!(groebner(&s), Err(Error::Resource(_))));
        assert!(PolySystem::parse(&["x0 +"]).is_err());
        assert!(PolySystem::parse(&["y1"]).is_err());
    }
}
