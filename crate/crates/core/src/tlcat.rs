//! The linear Temperley–Lieb category: morphisms, traces, Gram forms,
//! Jones–Wenzl projectors and the graded fiber functor.

use crate::diagram::{self, Basis, Diagram};
use crate::error::{Error, Result};
use crate::linalg::{self, Mont};
use crate::qarith::laurent::LPoly;
use crate::qarith::ratfunc::RatFunc;
use crate::qarith::{is_prime_u64, qint, DomainKind, Scalar, ScalarDomain};
use num_bigint::BigUint;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Circles evaluate to `δ = −[2]_q`, zigzags straighten.
    Generic,
    /// Circles evaluate to 1, zigzags vanish.
    Crystal,
}

/// Which of the two pivotal structures is used to report traces.
///
/// `Negative` gives `dim T_n = (−1)^n [n+1]_q`, matching the circle value
/// `δ = −[2]_q`; `Positive` reports `[n+1]_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SphericalConvention {
    #[default]
    Negative,
    Positive,
}

impl SphericalConvention {
    pub fn sign(self, n: usize) -> i64 {
        match self {
            SphericalConvention::Negative => 1,
            SphericalConvention::Positive => {
                if n % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// The value of a closed loop.
pub fn delta(dom: &ScalarDomain, mode: Mode) -> Scalar {
    match mode {
        Mode::Generic => qint(2, dom).neg(),
        Mode::Crystal => dom.one(),
    }
}

/// A finite linear combination of diagrams in `Hom(n, m)`.
#[derive(Clone)]
pub struct Morphism {
    dom: ScalarDomain,
    mode: Mode,
    basis: Arc<Basis>,
    terms: Vec<(u32, Scalar)>,
}

impl PartialEq for Morphism {
    fn eq(&self, o: &Morphism) -> bool {
        self.mode == o.mode
            && self.dom == o.dom
            && self.basis.n == o.basis.n
            && self.basis.m == o.basis.m
            && self.terms == o.terms
    }
}

impl Eq for Morphism {}

impl Morphism {
    pub fn zero(dom: &ScalarDomain, mode: Mode, n: usize, m: usize) -> Morphism {
        Morphism { dom: dom.clone(), mode, basis: diagram::basis(n, m), terms: Vec::new() }
    }

    pub fn from_diagram(dom: &ScalarDomain, mode: Mode, d: &Diagram) -> Morphism {
        Morphism::from_terms(dom, mode, d.n_bottom(), d.n_top(), vec![(d.clone(), dom.one())])
    }

    pub fn identity(dom: &ScalarDomain, mode: Mode, n: usize) -> Morphism {
        Morphism::from_diagram(dom, mode, &Diagram::identity(n))
    }

    pub fn cup(dom: &ScalarDomain, mode: Mode) -> Morphism {
        Morphism::from_diagram(dom, mode, &Diagram::cup())
    }

    pub fn cap(dom: &ScalarDomain, mode: Mode) -> Morphism {
        Morphism::from_diagram(dom, mode, &Diagram::cap())
    }

    /// Sum of `coefficient · diagram`; repeated diagrams are combined.
    pub fn from_terms(
        dom: &ScalarDomain,
        mode: Mode,
        n: usize,
        m: usize,
        terms: Vec<(Diagram, Scalar)>,
    ) -> Morphism {
        let basis = diagram::basis(n, m);
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (d, c) in terms {
            assert_eq!((d.n_bottom(), d.n_top()), (n, m), "diagram arity");
            let i = basis.index_of(&d) as u32;
            match acc.get_mut(&i) {
                Some(x) => *x = x.add(&c),
                None => {
                    acc.insert(i, c);
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Morphism { dom: dom.clone(), mode, basis, terms }
    }

    /// From a dense coefficient vector over the basis of `Hom(n, m)`.
    pub fn from_vector(dom: &ScalarDomain, mode: Mode, n: usize, m: usize, v: &[Scalar]) -> Morphism {
        let basis = diagram::basis(n, m);
        assert_eq!(v.len(), basis.len());
        let terms = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c.clone())).collect();
        Morphism { dom: dom.clone(), mode, basis, terms }
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = vec![self.dom.zero(); self.basis.len()];
        for (i, c) in &self.terms {
            v[*i as usize] = c.clone();
        }
        v
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.dom
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Source arity.
    pub fn source(&self) -> usize {
        self.basis.n
    }

    /// Target arity.
    pub fn target(&self) -> usize {
        self.basis.m
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(basis index, coefficient)` pairs in index order.
    pub fn terms(&self) -> &[(u32, Scalar)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> + '_ {
        self.terms.iter().map(|(i, c)| (self.basis.get(*i as usize), c))
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        let i = self.basis.index_of(d) as u32;
        match self.terms.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => self.dom.zero(),
        }
    }

    fn check_same(&self, o: &Morphism) -> Result<()> {
        if self.dom != o.dom {
            return Err(Error::DomainMismatch(format!("{} vs {}", self.dom, o.dom)));
        }
        if self.mode != o.mode {
            return Err(Error::DomainMismatch(format!("{:?} vs {:?} mode", self.mode, o.mode)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism> {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Morphism) -> Result<Morphism> {
        self.combine(o, true)
    }

    fn combine(&self, o: &Morphism, negate: bool) -> Result<Morphism> {
        self.check_same(o)?;
        if (self.source(), self.target()) != (o.source(), o.target()) {
            return Err(Error::Arity(format!(
                "cannot add {}→{} and {}→{}",
                self.source(),
                self.target(),
                o.source(),
                o.target()
            )));
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), o.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let c = if negate { x.1.sub(&y.1) } else { x.1.add(&y.1) };
                    if !c.is_zero() {
                        out.push((x.0, c));
                    }
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    out.push((*x).clone());
                    a.next();
                }
                (_, Some(y)) => {
                    out.push((y.0, if negate { y.1.neg() } else { y.1.clone() }));
                    b.next();
                }
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, None) => break,
            }
        }
        Ok(Morphism { dom: self.dom.clone(), mode: self.mode, basis: self.basis.clone(), terms: out })
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        if s.is_zero() {
            return Morphism { terms: Vec::new(), ..self.clone() };
        }
        let terms = self.terms.iter().map(|(i, c)| (*i, c.mul(s))).collect();
        Morphism { terms, ..self.clone() }
    }

    pub fn neg(&self) -> Morphism {
        let terms = self.terms.iter().map(|(i, c)| (*i, c.neg())).collect();
        Morphism { terms, ..self.clone() }
    }

    /// Horizontal juxtaposition `self ⊗ o`.
    pub fn tensor(&self, o: &Morphism) -> Result<Morphism> {
        self.check_same(o)?;
        let basis = diagram::basis(self.source() + o.source(), self.target() + o.target());
        let mut acc: Vec<Option<Scalar>> = vec![None; basis.len()];
        for (d1, c1) in self.iter() {
            for (d2, c2) in o.iter() {
                let k = basis.index_of(&d1.tensor(d2));
                let t = c1.mul(c2);
                acc[k] = Some(match acc[k].take() {
                    Some(x) => x.add(&t),
                    None => t,
                });
            }
        }
        let terms = collect_terms(acc);
        Ok(Morphism { dom: self.dom.clone(), mode: self.mode, basis, terms })
    }
}

fn collect_terms(acc: Vec<Option<Scalar>>) -> Vec<(u32, Scalar)> {
    acc.into_iter()
        .enumerate()
        .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (i as u32, c)))
        .collect()
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(d, c)| if c.is_one() { format!("[{d}]") } else { format!("({})·[{d}]", c.render()) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({}→{}, {:?}, {}: {})", self.source(), self.target(), self.mode, self.dom, self)
    }
}

/// `f ∘ g` (first `g`, then `f`).
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    f.check_same(g)?;
    if g.target() != f.source() {
        return Err(Error::Arity(format!(
            "cannot compose {}→{} after {}→{}",
            f.source(),
            f.target(),
            g.source(),
            g.target()
        )));
    }
    let basis = diagram::basis(g.source(), f.target());
    if f.is_zero() || g.is_zero() {
        return Ok(Morphism { dom: f.dom.clone(), mode: f.mode, basis, terms: Vec::new() });
    }
    let terms = if f.dom.is_generic() { compose_laurent(f, g, &basis) } else { compose_scalar(f, g, &basis) };
    Ok(Morphism { dom: f.dom.clone(), mode: f.mode, basis, terms })
}

fn compose_scalar(f: &Morphism, g: &Morphism, basis: &Basis) -> Vec<(u32, Scalar)> {
    let d = delta(&f.dom, f.mode);
    let mut dpow = vec![f.dom.one()];
    let mut acc: Vec<Option<Scalar>> = vec![None; basis.len()];
    for (dg, cg) in g.iter() {
        for (df, cf) in f.iter() {
            let (p, loops, zz) = diagram::glue_raw(df, dg);
            if zz && f.mode == Mode::Crystal {
                continue;
            }
            let k = basis.index_of_pairing(&p);
            while dpow.len() <= loops as usize {
                let next = dpow.last().unwrap().mul(&d);
                dpow.push(next);
            }
            let mut t = cf.mul(cg);
            if loops > 0 {
                t = t.mul(&dpow[loops as usize]);
            }
            acc[k] = Some(match acc[k].take() {
                Some(x) => x.add(&t),
                None => t,
            });
        }
    }
    collect_terms(acc)
}

/// Write every coefficient over one common polynomial denominator.
fn common_denominator(m: &Morphism) -> (LPoly, Vec<LPoly>) {
    let mut den = LPoly::one();
    for (_, c) in &m.terms {
        let r = c.as_ratfunc().expect("rational function coefficients");
        if !r.den().is_one() {
            den = LPoly::poly_lcm(&den, r.den());
        }
    }
    let nums = m
        .terms
        .iter()
        .map(|(_, c)| {
            let r = c.as_ratfunc().unwrap();
            if r.den() == &den {
                r.num().clone()
            } else {
                r.num().mul(&LPoly::poly_div_exact(&den, r.den()).expect("lcm is a multiple"))
            }
        })
        .collect();
    (den, nums)
}

fn compose_laurent(f: &Morphism, g: &Morphism, basis: &Basis) -> Vec<(u32, Scalar)> {
    let (df_den, f_nums) = common_denominator(f);
    let (dg_den, g_nums) = common_denominator(g);
    let delta_poly = match f.mode {
        Mode::Generic => delta(&f.dom, Mode::Generic).as_ratfunc().unwrap().num().clone(),
        Mode::Crystal => LPoly::one(),
    };
    let mut acc: Vec<Option<LPoly>> = vec![None; basis.len()];
    // f's numerators multiplied by powers of δ, filled lazily
    let mut scaled: Vec<Vec<LPoly>> = f_nums.iter().map(|x| vec![x.clone()]).collect();
    for (j, (_, _)) in g.terms.iter().enumerate() {
        let dg = g.basis.get(g.terms[j].0 as usize);
        for (i, (fi, _)) in f.terms.iter().enumerate() {
            let df = f.basis.get(*fi as usize);
            let (p, loops, zz) = diagram::glue_raw(df, dg);
            if zz && f.mode == Mode::Crystal {
                continue;
            }
            let k = basis.index_of_pairing(&p);
            let l = loops as usize;
            while scaled[i].len() <= l {
                let next = scaled[i].last().unwrap().mul(&delta_poly);
                scaled[i].push(next);
            }
            acc[k].get_or_insert_with(LPoly::zero).add_mul_assign(&scaled[i][l], &g_nums[j]);
        }
    }
    let den = df_den.mul(&dg_den);
    acc.into_iter()
        .enumerate()
        .filter_map(|(k, c)| {
            let c = c?;
            if c.is_zero() {
                return None;
            }
            Some((k as u32, Scalar::Rat(RatFunc::new(c, den.clone()))))
        })
        .collect()
}

/// Quantum trace: close every strand around the right.
pub fn qtrace(f: &Morphism, conv: SphericalConvention) -> Result<Scalar> {
    if f.source() != f.target() {
        return Err(Error::Arity(format!("trace of a non-square morphism {}→{}", f.source(), f.target())));
    }
    let d = delta(&f.dom, f.mode);
    let mut acc = f.dom.zero();
    for (dg, c) in f.iter() {
        let loops = diagram::trace_close(dg)?;
        acc = acc.add(&c.mul(&d.pow(loops as i64)?));
    }
    Ok(acc.scale_int(conv.sign(f.source())))
}

/// `dim_q T_n` under the chosen convention.
pub fn dim_tn(n: usize, dom: &ScalarDomain, conv: SphericalConvention) -> Scalar {
    let s = if n % 2 == 0 { 1 } else { -1 };
    qint(n as i64 + 1, dom).scale_int(s * conv.sign(n))
}

/// Loop counts `c_ij` with `G_ij = δ^{c_ij}` for `End(n)`.
pub fn gram_exponents(n: usize) -> Arc<Vec<Vec<u8>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<u8>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(&n) {
        return g.clone();
    }
    let b = diagram::basis(n, n);
    let mut g = vec![vec![0u8; b.len()]; b.len()];
    for i in 0..b.len() {
        for j in i..b.len() {
            let r = diagram::glue(b.get(j), b.get(i)).expect("square");
            let c = r.loops + diagram::trace_close(&r.matching).expect("square");
            g[i][j] = c as u8;
            g[j][i] = c as u8;
        }
    }
    let g = Arc::new(g);
    cache.lock().unwrap().insert(n, g.clone());
    g
}

/// `G_ij = qtrace(b_j ∘ b_i)` over the diagram basis of `End(n)`.
pub fn gram_matrix(n: usize, dom: &ScalarDomain) -> Vec<Vec<Scalar>> {
    let e = gram_exponents(n);
    let d = delta(dom, Mode::Generic);
    let mut pw = vec![dom.one()];
    for _ in 0..=n {
        let next = pw.last().unwrap().mul(&d);
        pw.push(next);
    }
    e.iter().map(|row| row.iter().map(|&c| pw[c as usize].clone()).collect()).collect()
}

/// Rank of the trace form on `End(n)` and, when computed, the negligible morphisms.
#[derive(Clone, Debug)]
pub struct NegligibleRank {
    pub n: usize,
    pub dim: usize,
    pub rank: usize,
    /// Basis of the radical; present when `n` is within the exact-elimination limit.
    pub radical: Option<Vec<Morphism>>,
    /// Primes used by the modular certificate (0 for direct exact elimination).
    pub primes_used: usize,
}

/// Largest `n` for which the radical basis is computed by exact elimination.
pub const EXACT_RADICAL_LIMIT: usize = 5;

pub fn negligible_rank(n: usize, dom: &ScalarDomain) -> Result<NegligibleRank> {
    negligible_rank_with(n, dom, EXACT_RADICAL_LIMIT)
}

pub fn negligible_rank_with(n: usize, dom: &ScalarDomain, radical_limit: usize) -> Result<NegligibleRank> {
    let exps = gram_exponents(n);
    let dim = exps.len();
    let (rank, primes_used) = match dom.kind() {
        DomainKind::GenericV => generic_gram_rank(&exps, dom)?,
        DomainKind::Cyclotomic { conductor, .. } => cyclotomic_gram_rank(&exps, dom, *conductor)?,
        DomainKind::Finite { .. } => (linalg::rank(&gram_matrix(n, dom)), 0),
    };
    let radical = if n <= radical_limit {
        let g = gram_matrix(n, dom);
        let ns = linalg::nullspace(&g, dim, &dom.zero());
        debug_assert_eq!(ns.len(), dim - rank);
        Some(ns.iter().map(|v| Morphism::from_vector(dom, Mode::Generic, n, n, v)).collect())
    } else {
        None
    };
    Ok(NegligibleRank { n, dim, rank, radical, primes_used })
}

fn gram_residues(exps: &[Vec<u8>], delta: u64, m: &Mont) -> Vec<u64> {
    let dm = m.to_mont(delta);
    let mut pw = vec![m.one()];
    for _ in 0..64 {
        let next = m.mul(*pw.last().unwrap(), dm);
        pw.push(next);
    }
    exps.iter().flat_map(|row| row.iter().map(|&c| pw[c as usize]).collect::<Vec<_>>()).collect()
}

/// A prime below `2^61` with residue 1 modulo `conductor`, and a primitive
/// `conductor`-th root of unity modulo it. `skip` selects later primes.
pub fn split_prime(conductor: u64, skip: usize) -> (u64, u64) {
    let top = (1u64 << 61) - 1;
    let mut p = top - (top - 1) % conductor;
    let mut seen = 0;
    loop {
        if p % 2 == 1 && is_prime_u64(p) {
            if seen == skip {
                break;
            }
            seen += 1;
        }
        p -= conductor;
    }
    let mut factors = Vec::new();
    let mut c = conductor;
    let mut d = 2;
    while c > 1 {
        if c % d == 0 {
            factors.push(d);
            while c % d == 0 {
                c /= d;
            }
        }
        d += 1;
    }
    let m = Mont::new(p);
    for g in 2.. {
        let r = m.pow(m.to_mont(g), (p - 1) / conductor);
        if factors.iter().all(|&l| m.pow(r, conductor / l) != m.one()) {
            return (p, m.from_mont(r));
        }
    }
    unreachable!()
}

fn generic_gram_rank(exps: &[Vec<u8>], dom: &ScalarDomain) -> Result<(usize, usize)> {
    let dim = exps.len();
    let p = (1u64 << 61) - 1;
    let m = Mont::new(p);
    let v0 = 1_000_003u64;
    let d = delta(dom, Mode::Generic).eval_mod(v0, p).expect("δ has no denominator");
    let mut a = gram_residues(exps, d, &m);
    let r = linalg::rank_mont(&mut a, dim, dim, &m);
    if r == dim {
        return Ok((r, 1));
    }
    // a specialization can only lower the rank; fall back to exact elimination
    let g: Vec<Vec<Scalar>> = {
        let dl = delta(dom, Mode::Generic);
        exps.iter().map(|row| row.iter().map(|&c| dl.pow(c as i64).unwrap()).collect()).collect()
    };
    Ok((linalg::rank(&g), 0))
}

/// Rank over a cyclotomic field, certified by reduction modulo split primes.
///
/// Every reduction bounds the rank from below. Conversely, each `(r+1)`-minor
/// is an algebraic integer `P(δ)` whose conjugates are bounded by the Hadamard
/// bound `H` (all conjugates of `δ` have absolute value at most 2). If the
/// rank is at most `r` at every prime above each of several split primes with
/// product exceeding `H`, the norm of any such minor is divisible by a number
/// larger than its absolute value, so the minor vanishes.
fn cyclotomic_gram_rank(exps: &[Vec<u8>], dom: &ScalarDomain, conductor: u32) -> Result<(usize, usize)> {
    let dim = exps.len();
    let dl = delta(dom, Mode::Generic);
    let mut norms: Vec<BigUint> = exps
        .iter()
        .map(|row| row.iter().map(|&c| BigUint::from(1u8) << (2 * c as usize)).sum())
        .collect();
    norms.sort_by(|a, b| b.cmp(a));
    let hadamard_sq = |r: usize| -> BigUint { norms.iter().take(r + 1).product() };
    let mut rank = 0usize;
    let mut bound = hadamard_sq(0);
    let mut prod_sq = BigUint::from(1u8);
    let mut used = 0usize;
    let n = conductor as u64;
    loop {
        if rank == dim {
            break;
        }
        let (p, root) = split_prime(n, used);
        used += 1;
        let m = Mont::new(p);
        let mut deltas: Vec<u64> = Vec::new();
        for j in 1..n {
            if num_integer::Integer::gcd(&j, &n) != 1 {
                continue;
            }
            let z = linalg::Mont::new(p);
            let zj = z.from_mont(z.pow(z.to_mont(root), j));
            let d = dl.eval_mod(zj, p).ok_or_else(|| Error::Invalid("δ not integral".into()))?;
            if !deltas.contains(&d) {
                deltas.push(d);
            }
        }
        for d in deltas {
            let mut a = gram_residues(exps, d, &m);
            let r = linalg::rank_mont(&mut a, dim, dim, &m);
            if r > rank {
                rank = r;
                bound = hadamard_sq(rank);
            }
        }
        prod_sq *= BigUint::from(p) * BigUint::from(p);
        if prod_sq > bound {
            break;
        }
    }
    Ok((rank, used))
}

fn jw_cache() -> &'static Mutex<HashMap<(usize, String), Arc<Morphism>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, String), Arc<Morphism>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// First `k` in `2..=n` with `[k]_q = 0`.
pub fn first_vanishing_qint(n: usize, dom: &ScalarDomain) -> Option<usize> {
    (2..=n).find(|&k| qint(k as i64, dom).is_zero())
}

/// The Jones–Wenzl projector in `End(n)`, via
/// `JW_{k+1} = JW_k⊗1 + ([k]/[k+1]) (JW_k⊗1) U_k (JW_k⊗1)`.
pub fn jones_wenzl(n: usize, dom: &ScalarDomain) -> Result<Arc<Morphism>> {
    if let Some(k) = first_vanishing_qint(n, dom) {
        return Err(Error::VanishingQInt { k: k as i64, at: dom.describe_q() });
    }
    let key = |k: usize| (k, dom.fingerprint().to_string());
    if let Some(j) = jw_cache().lock().unwrap().get(&key(n)) {
        return Ok(j.clone());
    }
    if n <= 1 {
        let j = Arc::new(Morphism::identity(dom, Mode::Generic, n));
        jw_cache().lock().unwrap().insert(key(n), j.clone());
        return Ok(j);
    }
    let prev = jones_wenzl(n - 1, dom)?;
    let k = n - 1;
    let p1 = prev.tensor(&Morphism::identity(dom, Mode::Generic, 1))?;
    let u = Morphism::from_diagram(dom, Mode::Generic, &Diagram::u_at(n, n - 2));
    let c = qint(k as i64, dom).div(&qint(n as i64, dom))?;
    let t = compose(&compose(&p1, &u)?, &p1)?;
    let j = Arc::new(p1.add(&t.scale(&c))?);
    jw_cache().lock().unwrap().insert(key(n), j.clone());
    Ok(j)
}

/// Search for `g` with `f∘g∘f = f`; the condition is linear in `g`.
pub fn is_split(f: &Morphism) -> Result<(bool, Option<Morphism>)> {
    let (n, m) = (f.source(), f.target());
    if f.is_zero() {
        return Ok((true, Some(Morphism::zero(&f.dom, f.mode, m, n))));
    }
    if n == m && compose(&compose(f, f)?, f)? == *f {
        return Ok((true, Some(f.clone())));
    }
    let gb = diagram::basis(m, n);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(gb.len());
    for d in &gb.diagrams {
        let g = Morphism::from_diagram(&f.dom, f.mode, d);
        cols.push(compose(&compose(f, &g)?, f)?.to_vector());
    }
    let rows = f.basis.len();
    let a: Vec<Vec<Scalar>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    match linalg::solve(&a, &f.to_vector()) {
        Some(x) => Ok((true, Some(Morphism::from_vector(&f.dom, f.mode, m, n, &x)))),
        None => Ok((false, None)),
    }
}

/// Multiplicities of the simple summands of the `n`-th tensor power of the
/// generating object; `kappa = 0` means generic `q`.
pub fn multiplicity_profile(n: usize, kappa: u32) -> Result<BTreeMap<usize, u64>> {
    if kappa == 1 || kappa == 2 {
        return Err(Error::Invalid(format!("κ={kappa} is not allowed; use κ=0 (generic) or κ≥3")));
    }
    let mut cur: BTreeMap<usize, u64> = BTreeMap::from([(0, 1)]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&l, &c) in &cur {
            for k in crate::fusiondata::fusion(l, 1, kappa)? {
                *next.entry(k).or_insert(0) += c;
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Image under the graded fiber functor sending the generator to the plane
/// with basis `u, v`: `cup ↦ −q·u⊗v + v⊗u`, `cap(u⊗v) = 1`, `cap(v⊗u) = −q^{-1}`.
///
/// Rows are indexed by output states, columns by input states; a state is a
/// word in `{u, v}` read with the leftmost strand as the most significant bit
/// (`u = 0`, `v = 1`).
pub fn fiber_eval(f: &Morphism) -> Result<Vec<Vec<Scalar>>> {
    if f.mode != Mode::Generic {
        return Err(Error::DomainMismatch("fiber functor needs generic mode".into()));
    }
    let (n, m) = (f.source(), f.target());
    if n + m > 20 {
        return Err(Error::Resource(format!("fiber matrix of size 2^{m}×2^{n}")));
    }
    let dom = &f.dom;
    let cup_uv = dom.q().neg();
    let cap_vu = dom.q().inv()?.neg();
    let mut out = vec![vec![dom.zero(); 1 << n]; 1 << m];
    for (d, c) in f.iter() {
        for (y, row) in out.iter_mut().enumerate() {
            for (x, slot) in row.iter_mut().enumerate() {
                let bit = |i: usize| -> u8 {
                    if i < n {
                        ((x >> (n - 1 - i)) & 1) as u8
                    } else {
                        let j = n + m - 1 - i;
                        ((y >> (m - 1 - j)) & 1) as u8
                    }
                };
                let mut val = c.clone();
                for a in 0..n + m {
                    let b = d.partner(a);
                    if b < a {
                        continue;
                    }
                    let (sa, sb) = (bit(a), bit(b));
                    if a < n && b < n {
                        match (sa, sb) {
                            (0, 1) => {}
                            (1, 0) => val = val.mul(&cap_vu),
                            _ => val = dom.zero(),
                        }
                    } else if a >= n {
                        // both on top; b is further left
                        match (sb, sa) {
                            (0, 1) => val = val.mul(&cup_uv),
                            (1, 0) => {}
                            _ => val = dom.zero(),
                        }
                    } else if sa != sb {
                        val = dom.zero();
                    }
                    if val.is_zero() {
                        break;
                    }
                }
                if !val.is_zero() {
                    *slot = slot.add(&val);
                }
            }
        }
    }
    Ok(out)
}

/// The pivotal weight `∏ w(x_i)` with `w(u) = −q`, `w(v) = −q^{-1}`, used to
/// compare [`qtrace`] with the trace of [`fiber_eval`].
pub fn fiber_weight(state: usize, n: usize, dom: &ScalarDomain) -> Result<Scalar> {
    let wu = dom.q().neg();
    let wv = dom.q().inv()?.neg();
    let mut acc = dom.one();
    for i in 0..n {
        acc = acc.mul(if (state >> i) & 1 == 0 { &wu } else { &wv });
    }
    Ok(acc)
}

/// An idempotent-cut object `(n, e)`.
#[derive(Clone, Debug)]
pub struct Cut {
    pub n: usize,
    pub e: Morphism,
}

impl Cut {
    pub fn full(n: usize, dom: &ScalarDomain, mode: Mode) -> Cut {
        Cut { n, e: Morphism::identity(dom, mode, n) }
    }

    pub fn new(e: Morphism) -> Result<Cut> {
        if e.source() != e.target() {
            return Err(Error::Arity("an idempotent must be an endomorphism".into()));
        }
        if compose(&e, &e)? != e {
            return Err(Error::Invalid("cut morphism is not idempotent".into()));
        }
        Ok(Cut { n: e.source(), e })
    }
}

/// A basis of `e_b ∘ Hom(a.n, b.n) ∘ e_a`.
pub fn hom_space(a: &Cut, b: &Cut) -> Result<Vec<Morphism>> {
    let dom = a.e.domain().clone();
    let mode = a.e.mode();
    let hb = diagram::basis(a.n, b.n);
    let mut cands = Vec::new();
    for d in &hb.diagrams {
        let x = compose(&compose(&b.e, &Morphism::from_diagram(&dom, mode, d))?, &a.e)?;
        if !x.is_zero() {
            cands.push(x);
        }
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut out = Vec::new();
    for c in cands {
        rows.push(c.to_vector());
        if linalg::rank(&rows) == rows.len() {
            out.push(c);
        } else {
            rows.pop();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ScalarDomain {
        ScalarDomain::generic()
    }

    #[test]
    fn circle_and_zigzag() {
        let d = g();
        let c = compose(&Morphism::cap(&d, Mode::Generic), &Morphism::cup(&d, Mode::Generic)).unwrap();
        assert_eq!(c.coeff(&Diagram::identity(0)), qint(2, &d).neg());
        let c = compose(&Morphism::cap(&d, Mode::Crystal), &Morphism::cup(&d, Mode::Crystal)).unwrap();
        assert!(c.coeff(&Diagram::identity(0)).is_one());
        for mode in [Mode::Generic, Mode::Crystal] {
            let up = Morphism::from_diagram(&d, mode, &Diagram::cap_at(3, 1));
            let lo = Morphism::from_diagram(&d, mode, &Diagram::cup_at(1, 0));
            let z = compose(&up, &lo).unwrap();
            match mode {
                Mode::Generic => assert_eq!(z, Morphism::identity(&d, mode, 1)),
                Mode::Crystal => assert!(z.is_zero()),
            }
        }
    }

    #[test]
    fn traces_and_gram() {
        let d = g();
        let conv = SphericalConvention::Negative;
        assert_eq!(qtrace(&Morphism::identity(&d, Mode::Generic, 1), conv).unwrap(), qint(2, &d).neg());
        let two = qint(2, &d);
        assert_eq!(qtrace(&Morphism::identity(&d, Mode::Generic, 2), conv).unwrap(), two.mul(&two));
        let gm = gram_matrix(2, &d);
        let dl = delta(&d, Mode::Generic);
        // basis order: cup∘cap first, then id
        assert_eq!(gm[0][1], dl);
        assert_eq!(gm[0][0], dl.mul(&dl));
        assert_eq!(gram_matrix(0, &d), vec![vec![d.one()]]);
    }

    #[test]
    fn jones_wenzl_small() {
        let d = g();
        let j2 = jones_wenzl(2, &d).unwrap();
        let u = Diagram::u_at(2, 0);
        assert_eq!(j2.coeff(&u), qint(2, &d).inv().unwrap());
        assert!(j2.coeff(&Diagram::identity(2)).is_one());
        let r = ScalarDomain::root_of_unity(6).unwrap();
        match jones_wenzl(3, &r) {
            Err(e) => assert_eq!(e.to_string(), "[3]_q = 0 at κ=3"),
            Ok(_) => panic!("expected obstruction"),
        }
    }

    #[test]
    fn profiles() {
        assert_eq!(multiplicity_profile(3, 0).unwrap(), BTreeMap::from([(1, 2), (3, 1)]));
        assert_eq!(multiplicity_profile(0, 5).unwrap(), BTreeMap::from([(0, 1)]));
        assert_eq!(multiplicity_profile(3, 4).unwrap(), BTreeMap::from([(1, 2)]));
        assert!(multiplicity_profile(3, 2).is_err());
    }

    #[test]
    fn fiber_basics() {
        let d = g();
        let id = fiber_eval(&Morphism::identity(&d, Mode::Generic, 1)).unwrap();
        assert_eq!(id, vec![vec![d.one(), d.zero()], vec![d.zero(), d.one()]]);
        let cup = fiber_eval(&Morphism::cup(&d, Mode::Generic)).unwrap();
        // states uu, uv, vu, vv
        assert_eq!(cup[1][0], d.q().neg());
        assert!(cup[2][0].is_one());
        let cc = compose(&Morphism::cap(&d, Mode::Generic), &Morphism::cup(&d, Mode::Generic)).unwrap();
        assert_eq!(fiber_eval(&cc).unwrap(), vec![vec![qint(2, &d).neg()]]);
    }

    #[test]
    fn negligible_small() {
        let r = ScalarDomain::root_of_unity(8).unwrap();
        let nr = negligible_rank(3, &r).unwrap();
        assert_eq!((nr.rank, nr.radical.as_ref().unwrap().len()), (4, 1));
        let r3 = ScalarDomain::root_of_unity(6).unwrap();
        assert_eq!(negligible_rank(3, &r3).unwrap().rank, 1);
        assert_eq!(negligible_rank(4, &g()).unwrap().rank, 14);
    }
}
