//! Braidings on the Temperley–Lieb category, half-braidings, the simple
//! objects `M(i,j)` and `W(i,j)` of its Drinfeld center, center hom spaces
//! and fusion, and twists by abelian 3-cocycles.

use crate::diagram::{self, Diagram};
use crate::error::{Error, Result};
use crate::fusiondata::fusion;
use crate::linalg;
use crate::polysolve::{self, GroebnerOptions, Mono, MonoOrder, Poly, PolySystem, Variety};
use crate::qarith::fpoly::{invm, mulm};
use crate::qarith::{check_braiding_unit, DomainKind, Scalar, ScalarDomain};
use crate::tlcat::{compose, delta, hom_space, jones_wenzl, split_prime, Cut, Mode, Morphism};
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// `σ₁,₁ = a·id + a^{-1}·U` acting on strands `pos, pos+1` of `n`.
pub fn crossing(n: usize, pos: usize, dom: &ScalarDomain, a: &Scalar) -> Result<Morphism> {
    if pos + 2 > n {
        return Err(Error::Arity(format!("crossing at {pos} on {n} strands")));
    }
    let ai = a.inv()?;
    Ok(Morphism::from_terms(
        dom,
        Mode::Generic,
        n,
        n,
        vec![(Diagram::identity(n), a.clone()), (Diagram::u_at(n, pos), ai)],
    ))
}

/// A braid word: crossing positions with an inverse flag, applied in order.
pub type BraidWord = Vec<(usize, bool)>;

/// Word of `σ_{m,n}`: every strand of the left block passes over the right block.
pub fn sigma_word(m: usize, n: usize) -> BraidWord {
    let mut w = Vec::with_capacity(m * n);
    for s in (0..m).rev() {
        for t in 0..n {
            w.push((s + t, false));
        }
    }
    w
}

fn invert_word(w: &[(usize, bool)]) -> BraidWord {
    w.iter().rev().map(|&(p, inv)| (p, !inv)).collect()
}

/// Apply the crossings of `word` after `f`.
pub fn apply_word(f: &Morphism, word: &[(usize, bool)], a: &Scalar) -> Result<Morphism> {
    let ai = a.inv()?;
    let n = f.target();
    let mut acc = f.clone();
    let mut cache: HashMap<(usize, bool), Morphism> = HashMap::new();
    for &(p, inv) in word {
        let c = match cache.get(&(p, inv)) {
            Some(c) => c.clone(),
            None => {
                let c = crossing(n, p, f.domain(), if inv { &ai } else { a })?;
                cache.insert((p, inv), c.clone());
                c
            }
        };
        acc = compose(&c, &acc)?;
    }
    Ok(acc)
}

/// The braiding `σ_{m,n} : m⊗n → n⊗m` with every crossing expanded.
pub fn sigma(m: usize, n: usize, dom: &ScalarDomain, a: &Scalar) -> Result<Morphism> {
    check_braiding_unit(dom, a)?;
    apply_word(&Morphism::identity(dom, Mode::Generic, m + n), &sigma_word(m, n), a)
}

/// The inverse of `σ_{m,n}`, a morphism `n⊗m → m⊗n`.
pub fn sigma_inv(m: usize, n: usize, dom: &ScalarDomain, a: &Scalar) -> Result<Morphism> {
    check_braiding_unit(dom, a)?;
    apply_word(&Morphism::identity(dom, Mode::Generic, m + n), &invert_word(&sigma_word(m, n)), a)
}

fn shifted(w: &[(usize, bool)], k: usize) -> BraidWord {
    w.iter().map(|&(p, inv)| (p + k, inv)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidingReport {
    pub a: String,
    pub max_strands: usize,
    /// `σ_{m,n⊗l} = (id_n⊗σ_{m,l})(σ_{m,n}⊗id_l)` and its mirror.
    pub hexagon: bool,
    pub yang_baxter: bool,
    /// `σ` commutes with cups and caps on either side.
    pub naturality: bool,
    pub invertible: bool,
}

impl BraidingReport {
    pub fn passed(&self) -> bool {
        self.hexagon && self.yang_baxter && self.naturality && self.invertible
    }
}

/// Check that `a` defines a braiding on blocks of at most `max` strands.
pub fn braiding_checks(dom: &ScalarDomain, a: &Scalar, max: usize) -> Result<BraidingReport> {
    check_braiding_unit(dom, a)?;
    let g = Mode::Generic;
    let triples: Vec<(usize, usize, usize)> =
        (1..=max).flat_map(|m| (1..=max).flat_map(move |n| (1..=max).map(move |l| (m, n, l)))).collect();
    let results: Vec<(bool, bool)> = triples
        .par_iter()
        .map(|&(m, n, l)| -> Result<(bool, bool)> {
            let e = id(dom, g, m + n + l);
            let run = |w: &[(usize, bool)]| apply_word(&e, w, a);
            // hexagons
            let lhs = run(&sigma_word(m, n + l))?;
            let mut w = sigma_word(m, n);
            w.extend(shifted(&sigma_word(m, l), n));
            let h1 = lhs == run(&w)?;
            let lhs = run(&sigma_word(m + n, l))?;
            let mut w = shifted(&sigma_word(n, l), m);
            w.extend(sigma_word(m, l));
            let h2 = lhs == run(&w)?;
            // Yang–Baxter on blocks m, n, l
            let mut w1 = sigma_word(m, n);
            w1.extend(shifted(&sigma_word(m, l), n));
            w1.extend(sigma_word(n, l));
            let mut w2 = shifted(&sigma_word(n, l), m);
            w2.extend(sigma_word(m, l));
            w2.extend(shifted(&sigma_word(m, n), l));
            Ok((h1 && h2, run(&w1)? == run(&w2)?))
        })
        .collect::<Result<_>>()?;
    let mut naturality = true;
    let mut invertible = true;
    let (cap, cup) = (Morphism::cap(dom, g), Morphism::cup(dom, g));
    for n in 0..=max {
        let idn = id(dom, g, n);
        naturality &= compose(&idn.tensor(&cap)?, &sigma(2, n, dom, a)?)? == cap.tensor(&idn)?;
        naturality &= compose(&sigma(2, n, dom, a)?, &cup.tensor(&idn)?)? == idn.tensor(&cup)?;
        naturality &= compose(&cap.tensor(&idn)?, &sigma(n, 2, dom, a)?)? == idn.tensor(&cap)?;
        naturality &= compose(&sigma(n, 2, dom, a)?, &idn.tensor(&cup)?)? == cup.tensor(&idn)?;
        for m in 0..=max {
            invertible &= compose(&sigma_inv(m, n, dom, a)?, &sigma(m, n, dom, a)?)? == id(dom, g, m + n);
        }
    }
    Ok(BraidingReport {
        a: a.render(),
        max_strands: max,
        hexagon: results.iter().all(|r| r.0),
        yang_baxter: results.iter().all(|r| r.1),
        naturality,
        invertible,
    })
}

fn id(dom: &ScalarDomain, mode: Mode, n: usize) -> Morphism {
    Morphism::identity(dom, mode, n)
}

/// `(cap⊗id_n)∘(id₁⊗φ)∘(φ⊗id₁)` and `(id₁⊗φ)∘(φ⊗id₁)∘(e⊗cup)` against
/// `e⊗cap` and `cup⊗e`, with the composite scaled by `assoc`.
fn squares_hold(x: &Cut, phi: &Morphism, assoc: &Scalar) -> Result<bool> {
    let (dom, mode, n) = (phi.domain().clone(), phi.mode(), x.n);
    let one = id(&dom, mode, 1);
    let two_step = compose(&one.tensor(phi)?, &phi.tensor(&one)?)?.scale(assoc);
    let cap = Morphism::cap(&dom, mode);
    let cup = Morphism::cup(&dom, mode);
    let lhs = compose(&cap.tensor(&id(&dom, mode, n))?, &two_step)?;
    if lhs != x.e.tensor(&cap)? {
        return Ok(false);
    }
    let lhs = compose(&two_step, &x.e.tensor(&cup)?)?;
    Ok(lhs == cup.tensor(&x.e)?)
}

/// A `ψ` with `ψ∘φ = e⊗1` and `φ∘ψ = 1⊗e`, found by exact linear algebra.
pub fn half_braiding_inverse(x: &Cut, phi: &Morphism) -> Result<Option<Morphism>> {
    let (dom, mode, n) = (phi.domain().clone(), phi.mode(), x.n + 1);
    let one = id(&dom, mode, 1);
    let left = x.e.tensor(&one)?.to_vector();
    let right = one.tensor(&x.e)?.to_vector();
    let b = diagram::basis(n, n);
    let mut cols = Vec::with_capacity(b.len());
    for d in &b.diagrams {
        let psi = Morphism::from_diagram(&dom, mode, d);
        let mut c = compose(&psi, phi)?.to_vector();
        c.extend(compose(phi, &psi)?.to_vector());
        cols.push(c);
    }
    let rows = left.len() + right.len();
    let a: Vec<Vec<Scalar>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let rhs: Vec<Scalar> = left.into_iter().chain(right).collect();
    Ok(linalg::solve(&a, &rhs).map(|v| Morphism::from_vector(&dom, mode, n, n, &v)))
}

fn check_shape(x: &Cut, phi: &Morphism) -> Result<()> {
    if phi.source() != x.n + 1 || phi.target() != x.n + 1 {
        return Err(Error::Arity(format!(
            "φ₁ is {}→{}, expected {}→{}",
            phi.source(),
            phi.target(),
            x.n + 1,
            x.n + 1
        )));
    }
    if x.e.domain() != phi.domain() || x.e.mode() != phi.mode() {
        return Err(Error::DomainMismatch("cut and φ₁ live in different categories".into()));
    }
    Ok(())
}

/// Does `φ₁ : X⊗1 → 1⊗X` determine a half-braiding on the cut `X`?
/// Checks that `φ₁` lives on the cut, both naturality squares against cap
/// and cup, and invertibility.
pub fn half_braiding_check(x: &Cut, phi: &Morphism) -> Result<bool> {
    half_braiding_check_scaled(x, phi, &phi.domain().one())
}

/// As [`half_braiding_check`], with the two-step composite `X⊗1⊗1 → 1⊗1⊗X`
/// multiplied by `assoc` (the associator scalar of a twisted category).
pub fn half_braiding_check_scaled(x: &Cut, phi: &Morphism, assoc: &Scalar) -> Result<bool> {
    check_shape(x, phi)?;
    let one = id(phi.domain(), phi.mode(), 1);
    if compose(&compose(&one.tensor(&x.e)?, phi)?, &x.e.tensor(&one)?)? != *phi {
        return Ok(false);
    }
    if !squares_hold(x, phi, assoc)? {
        return Ok(false);
    }
    Ok(half_braiding_inverse(x, phi)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CenterKind {
    M,
    W,
}

impl CenterKind {
    pub fn sign(self) -> i64 {
        match self {
            CenterKind::M => 1,
            CenterKind::W => -1,
        }
    }
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterTag {
    M(usize, usize),
    W(usize, usize),
    Unit,
    Xi,
    Tensor(Vec<CenterTag>),
    Custom(String),
}

impl fmt::Display for CenterTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterTag::M(i, j) => write!(f, "M({i},{j})"),
            CenterTag::W(i, j) => write!(f, "W({i},{j})"),
            CenterTag::Unit => write!(f, "1"),
            CenterTag::Xi => write!(f, "ξ"),
            CenterTag::Tensor(ts) => {
                write!(f, "{}", ts.iter().join("⊗"))
            }
            CenterTag::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// An object of the Drinfeld center, stored through the generator
/// component `φ₁` of its half-braiding.
#[derive(Clone, Debug)]
pub struct CenterObject {
    pub cut: Cut,
    pub phi: Morphism,
    pub tag: CenterTag,
    /// Labels `k₁, …, k_r` with underlying object `T_{k₁}⊗⋯⊗T_{k_r}`, when known.
    pub components: Option<Vec<usize>>,
}

impl CenterObject {
    pub fn new(cut: Cut, phi: Morphism, tag: CenterTag) -> Result<CenterObject> {
        check_shape(&cut, &phi)?;
        Ok(CenterObject { cut, phi, tag, components: None })
    }

    pub fn unit(dom: &ScalarDomain) -> CenterObject {
        CenterObject {
            cut: Cut::full(0, dom, Mode::Generic),
            phi: id(dom, Mode::Generic, 1),
            tag: CenterTag::Unit,
            components: Some(vec![]),
        }
    }

    /// `(0, ξ)`: the empty object with `φ₁ = −id`.
    pub fn xi(dom: &ScalarDomain) -> CenterObject {
        CenterObject { tag: CenterTag::Xi, phi: id(dom, Mode::Generic, 1).neg(), ..CenterObject::unit(dom) }
    }

    pub fn n(&self) -> usize {
        self.cut.n
    }

    pub fn domain(&self) -> &ScalarDomain {
        self.phi.domain()
    }

    pub fn check(&self) -> Result<bool> {
        half_braiding_check(&self.cut, &self.phi)
    }

    /// `φ_{X⊗Y} = (φ_X⊗id)∘(id⊗φ_Y)` on the cut `e_X⊗e_Y`.
    pub fn tensor(&self, o: &CenterObject) -> Result<CenterObject> {
        let dom = self.domain();
        let phi = compose(&self.phi.tensor(&id(dom, Mode::Generic, o.n()))?, &id(dom, Mode::Generic, self.n()).tensor(&o.phi)?)?;
        let cut = Cut { n: self.n() + o.n(), e: self.cut.e.tensor(&o.cut.e)? };
        let mut tags = Vec::new();
        for t in [&self.tag, &o.tag] {
            match t {
                CenterTag::Tensor(ts) => tags.extend(ts.iter().cloned()),
                t => tags.push(t.clone()),
            }
        }
        let components = match (&self.components, &o.components) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(CenterObject { cut, phi, tag: CenterTag::Tensor(tags), components })
    }
}

/// Word for the raw half-braiding of `T_i⊗T_j`: the new strand passes under
/// the `T_j` block, then the `T_i` block crosses over it.
fn mw_word(i: usize, j: usize) -> BraidWord {
    let mut w: BraidWord = (i..i + j).rev().map(|p| (p, true)).collect();
    w.extend((0..i).rev().map(|p| (p, false)));
    w
}

/// `M(i,j)` or `W(i,j)` at braiding unit `a`.
pub fn center_object(kind: CenterKind, i: usize, j: usize, dom: &ScalarDomain, a: &Scalar) -> Result<CenterObject> {
    center_product(&[(kind, i, j)], dom, a)
}

/// The tensor product of several `M`/`W` objects, assembled directly from
/// one braid word applied to the cut.
pub fn center_product(factors: &[(CenterKind, usize, usize)], dom: &ScalarDomain, a: &Scalar) -> Result<CenterObject> {
    check_braiding_unit(dom, a)?;
    let mut e = id(dom, Mode::Generic, 0);
    let mut offsets = Vec::new();
    let mut sign = 1;
    for &(k, i, j) in factors {
        offsets.push(e.source());
        e = e.tensor(&*jones_wenzl(i, dom)?)?.tensor(&*jones_wenzl(j, dom)?)?;
        sign *= k.sign();
    }
    let n = e.source();
    let mut word = BraidWord::new();
    for (f, &(_, i, j)) in factors.iter().enumerate().rev() {
        word.extend(mw_word(i, j).into_iter().map(|(p, inv)| (p + offsets[f], inv)));
    }
    let mut phi = apply_word(&e.tensor(&id(dom, Mode::Generic, 1))?, &word, a)?;
    if sign < 0 {
        phi = phi.neg();
    }
    let tags: Vec<CenterTag> = factors
        .iter()
        .map(|&(k, i, j)| match k {
            CenterKind::M => CenterTag::M(i, j),
            CenterKind::W => CenterTag::W(i, j),
        })
        .collect();
    let tag = if tags.len() == 1 { tags[0].clone() } else { CenterTag::Tensor(tags) };
    let components = factors.iter().flat_map(|&(_, i, j)| [i, j]).collect();
    Ok(CenterObject { cut: Cut { n, e }, phi, tag, components: Some(components) })
}

/// Multiplicities of the simple summands of `T_{k₁}⊗⋯⊗T_{k_r}` for generic `q`.
pub fn label_profile(labels: &[usize]) -> BTreeMap<usize, u64> {
    let mut cur = BTreeMap::from([(0usize, 1u64)]);
    for &l in labels {
        let mut next = BTreeMap::new();
        for (&k, &c) in &cur {
            for t in fusion(k, l, 0).expect("generic fusion") {
                *next.entry(t).or_insert(0) += c;
            }
        }
        cur = next;
    }
    cur
}

fn specialization(dom: &ScalarDomain) -> Option<(u64, u64)> {
    match dom.kind() {
        DomainKind::GenericV => Some(((1u64 << 61) - 1, 1_000_003)),
        DomainKind::Cyclotomic { conductor, .. } => Some(split_prime(*conductor as u64, 0)),
        DomainKind::Finite { .. } => None,
    }
}

fn reduce_mod(m: &Morphism, sp: (u64, u64)) -> Option<Vec<u64>> {
    let mut v = vec![0u64; m.basis().len()];
    for (i, c) in m.terms() {
        v[*i as usize] = c.eval_mod(sp.1, sp.0)?;
    }
    Some(v)
}

/// Incremental row echelon form modulo a prime.
struct ModEchelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn new(p: u64) -> ModEchelon {
        ModEchelon { p, rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (piv, r) in &self.rows {
            let f = v[*piv];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    if *y != 0 {
                        *x = (*x + p - mulm(f, *y, p)) % p;
                    }
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else { return false };
        let inv = invm(v[piv], p);
        for x in &mut v {
            *x = mulm(*x, inv, p);
        }
        self.rows.push((piv, v));
        true
    }
}

/// A basis of `e_B∘Hom(a.n, b.n)∘e_A`. With `expected` set and a usable
/// specialization, candidates are accepted when independent modulo a prime
/// (which implies exact independence) until the expected count is reached;
/// otherwise the exact incremental search of [`hom_space`] is used.
pub fn cut_hom_basis(a: &Cut, b: &Cut, expected: Option<usize>) -> Result<Vec<Morphism>> {
    if (a.n + b.n) % 2 == 1 || expected == Some(0) {
        return Ok(Vec::new());
    }
    let dom = a.e.domain().clone();
    let mode = a.e.mode();
    let (Some(want), Some(sp)) = (expected, specialization(&dom)) else {
        return hom_space(a, b);
    };
    let hb = diagram::basis(a.n, b.n);
    let mut order: Vec<&Diagram> = hb.diagrams.iter().collect();
    order.sort_by_key(|d| std::cmp::Reverse(d.through_strands()));
    let mut ech = ModEchelon::new(sp.0);
    let mut out = Vec::new();
    for d in order {
        let h = compose(&compose(&b.e, &Morphism::from_diagram(&dom, mode, d))?, &a.e)?;
        let Some(v) = reduce_mod(&h, sp) else { return hom_space(a, b) };
        if ech.insert(v) {
            out.push(h);
            if out.len() == want {
                return Ok(out);
            }
        }
    }
    hom_space(a, b)
}

/// Dimension of the kernel of `c ↦ Σ c_t·cols[t]`, certified exactly.
fn nullity(cols: &[Morphism]) -> Result<usize> {
    let k = cols.len();
    if k == 0 {
        return Ok(0);
    }
    let dom = cols[0].domain().clone();
    let exact_rows = || -> Vec<Vec<Scalar>> {
        let vs: Vec<Vec<Scalar>> = cols.iter().map(|c| c.to_vector()).collect();
        (0..vs[0].len()).map(|r| vs.iter().map(|v| v[r].clone()).collect()).collect()
    };
    let full = || -> usize { k - linalg::rank(&exact_rows()) };
    let Some(sp) = specialization(&dom) else { return Ok(full()) };
    let mut modcols = Vec::with_capacity(k);
    for c in cols {
        match reduce_mod(c, sp) {
            Some(v) => modcols.push(v),
            None => return Ok(full()),
        }
    }
    let nrows = modcols[0].len();
    // rows independent modulo p are independent exactly
    let mut ech = ModEchelon::new(sp.0);
    let mut picked = Vec::new();
    for r in 0..nrows {
        if ech.insert(modcols.iter().map(|c| c[r]).collect()) {
            picked.push(r);
            if picked.len() == k {
                return Ok(0);
            }
        }
    }
    let rows = exact_rows();
    let sub: Vec<Vec<Scalar>> = picked.iter().map(|&r| rows[r].clone()).collect();
    let sub = if sub.is_empty() { vec![vec![dom.zero(); k]] } else { sub };
    let ns = linalg::nullspace(&sub, k, &dom.zero());
    let all_vanish = ns.iter().all(|x| {
        let mut acc = Morphism::zero(&dom, cols[0].mode(), cols[0].source(), cols[0].target());
        for (c, xi) in cols.iter().zip(x) {
            if !xi.is_zero() {
                acc = acc.add(&c.scale(xi)).expect("same hom space");
            }
        }
        acc.is_zero()
    });
    if all_vanish {
        Ok(ns.len())
    } else {
        Ok(full())
    }
}

fn expected_hom_dim(a: &CenterObject, b: &CenterObject) -> Option<usize> {
    if !a.domain().is_generic() {
        return None;
    }
    let (pa, pb) = (label_profile(a.components.as_ref()?), label_profile(b.components.as_ref()?));
    Some(pa.iter().map(|(k, ca)| ca * pb.get(k).copied().unwrap_or(0)).sum::<u64>() as usize)
}

/// For each sign `s`, the dimension of
/// `{f : e_B f e_A = f, φ_B∘(f⊗1) = s·(1⊗f)∘φ_A}`.
pub fn intertwiner_dims(a: &CenterObject, b: &CenterObject, signs: &[i64]) -> Result<Vec<usize>> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(format!("{} vs {}", a.domain(), b.domain())));
    }
    let basis = cut_hom_basis(&a.cut, &b.cut, expected_hom_dim(a, b))?;
    if basis.is_empty() {
        return Ok(vec![0; signs.len()]);
    }
    let dom = a.domain();
    let one = id(dom, Mode::Generic, 1);
    let mut ps = Vec::with_capacity(basis.len());
    let mut qs = Vec::with_capacity(basis.len());
    for h in &basis {
        ps.push(compose(&b.phi, &h.tensor(&one)?)?);
        qs.push(compose(&one.tensor(h)?, &a.phi)?);
    }
    signs
        .iter()
        .map(|&s| {
            let cols: Vec<Morphism> = ps
                .iter()
                .zip(&qs)
                .map(|(p, q)| if s > 0 { p.sub(q) } else { p.add(q) })
                .collect::<Result<_>>()?;
            nullity(&cols)
        })
        .collect()
}

/// `dim Hom_Z(A, B)`: morphisms of cuts commuting with the half-braidings.
pub fn center_hom_dim(a: &CenterObject, b: &CenterObject) -> Result<usize> {
    Ok(intertwiner_dims(a, b, &[1])?[0])
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Summand {
    pub kind: CenterKind,
    pub i: usize,
    pub j: usize,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterFusionTable {
    pub factors: Vec<String>,
    /// Computed multiplicities (nonzero entries only).
    pub decomposition: Vec<Summand>,
    /// The double-sum prediction.
    pub expected: Vec<Summand>,
    pub matches: bool,
    /// The underlying TL objects of both sides agree.
    pub underlying_ok: bool,
}

impl CenterFusionTable {
    pub fn to_json(&self) -> Value {
        json!({
            "factors": self.factors,
            "decomposition": self.decomposition,
            "expected": self.expected,
            "matches": self.matches,
            "underlying_ok": self.underlying_ok,
        })
    }
}

/// `X(i,j)⊗Y(i′,j′) = ⊕_{m ≤ min(i,i′), n ≤ min(j,j′)} Z(i+i′−2m, j+j′−2n)`
/// with `Z = M` when the kinds agree and `Z = W` otherwise.
pub fn predicted_center_fusion(x: (CenterKind, usize, usize), y: (CenterKind, usize, usize)) -> Vec<Summand> {
    let kind = if x.0 == y.0 { CenterKind::M } else { CenterKind::W };
    let mut out = Vec::new();
    for m in 0..=x.1.min(y.1) {
        for n in 0..=x.2.min(y.2) {
            out.push(Summand { kind, i: x.1 + y.1 - 2 * m, j: x.2 + y.2 - 2 * n, mult: 1 });
        }
    }
    out.sort();
    out
}

/// Decompose `X⊗Y` by computing its center hom dimension against every
/// `M`/`W` label that could occur, and compare with the double-sum formula.
pub fn center_fusion_verify(
    x: (CenterKind, usize, usize),
    y: (CenterKind, usize, usize),
    dom: &ScalarDomain,
    a: &Scalar,
) -> Result<CenterFusionTable> {
    let prod = center_product(&[x, y], dom, a)?;
    let (ti, tj) = (x.1 + y.1, x.2 + y.2);
    let labels: Vec<(usize, usize)> =
        (0..=ti).rev().step_by(2).flat_map(|i| (0..=tj).rev().step_by(2).map(move |j| (i, j))).collect();
    let found: Vec<Vec<Summand>> = labels
        .par_iter()
        .map(|&(i, j)| -> Result<Vec<Summand>> {
            let target = center_object(CenterKind::M, i, j, dom, a)?;
            // the W target differs from the M target by the sign of φ₁
            let dims = intertwiner_dims(&prod, &target, &[1, -1])?;
            Ok([(CenterKind::M, dims[0]), (CenterKind::W, dims[1])]
                .into_iter()
                .filter(|&(_, d)| d > 0)
                .map(|(kind, mult)| Summand { kind, i, j, mult })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut decomposition: Vec<Summand> = found.into_iter().flatten().collect();
    decomposition.sort();
    let expected = predicted_center_fusion(x, y);
    let mut lhs = BTreeMap::new();
    for s in &decomposition {
        for (k, c) in label_profile(&[s.i, s.j]) {
            *lhs.entry(k).or_insert(0) += c * s.mult as u64;
        }
    }
    let underlying_ok = lhs == label_profile(&[x.1, x.2, y.1, y.2]);
    let name = |f: (CenterKind, usize, usize)| format!("{}({},{})", f.0, f.1, f.2);
    Ok(CenterFusionTable {
        factors: vec![name(x), name(y)],
        matches: decomposition == expected,
        decomposition,
        expected,
        underlying_ok,
    })
}

/// A finite abelian group `ℤ/n₁ × ⋯ × ℤ/n_r`, elements indexed in mixed radix
/// with the first factor least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub orders: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> AbelianGroup {
        AbelianGroup { orders }
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn coords(&self, g: usize) -> Vec<usize> {
        let mut g = g;
        self.orders
            .iter()
            .map(|&n| {
                let c = g % n;
                g /= n;
                c
            })
            .collect()
    }

    pub fn index(&self, c: &[usize]) -> usize {
        c.iter().zip(&self.orders).rev().fold(0, |acc, (&x, &n)| acc * n + x % n)
    }

    pub fn op(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.coords(g), self.coords(h));
        self.index(&a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }
}

/// An abelian 3-cocycle `(ω, γ)` with values in a scalar domain.
#[derive(Clone, Debug)]
pub struct AbelianCocycle {
    pub group: AbelianGroup,
    /// `ω(g₁,g₂,g₃)` at index `(g₁·|G| + g₂)·|G| + g₃`.
    pub omega: Vec<Scalar>,
    /// `γ(g₁,g₂)` at index `g₁·|G| + g₂`.
    pub gamma: Vec<Scalar>,
}

impl AbelianCocycle {
    pub fn from_fns(
        group: AbelianGroup,
        omega: impl Fn(&[usize], &[usize], &[usize]) -> Scalar,
        gamma: impl Fn(&[usize], &[usize]) -> Scalar,
    ) -> AbelianCocycle {
        let n = group.size();
        let c: Vec<Vec<usize>> = (0..n).map(|g| group.coords(g)).collect();
        let mut om = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    om.push(omega(&c[a], &c[b], &c[d]));
                }
            }
        }
        let mut ga = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                ga.push(gamma(&c[a], &c[b]));
            }
        }
        AbelianCocycle { group, omega: om, gamma: ga }
    }

    pub fn omega(&self, a: usize, b: usize, c: usize) -> &Scalar {
        let n = self.group.size();
        &self.omega[(a * n + b) * n + c]
    }

    pub fn gamma(&self, a: usize, b: usize) -> &Scalar {
        &self.gamma[a * self.group.size() + b]
    }
}

/// The pentagon for `ω` and the two hexagon equations tying `ω` to `γ`.
pub fn validate_abelian_cocycle(c: &AbelianCocycle) -> Result<bool> {
    let n = c.group.size();
    if c.omega.len() != n * n * n || c.gamma.len() != n * n {
        return Err(Error::Invalid("cocycle tables are not total on the group".into()));
    }
    if c.omega.iter().chain(&c.gamma).any(|x| x.is_zero()) {
        return Ok(false);
    }
    let op = |a, b| c.group.op(a, b);
    let w = |a, b, d| c.omega(a, b, d);
    let g = |a, b| c.gamma(a, b);
    for g1 in 0..n {
        for g2 in 0..n {
            for g3 in 0..n {
                for g4 in 0..n {
                    let l = w(g1, g2, g3).mul(w(g1, op(g2, g3), g4)).mul(w(g2, g3, g4));
                    let r = w(op(g1, g2), g3, g4).mul(w(g1, g2, op(g3, g4)));
                    if l != r {
                        return Ok(false);
                    }
                }
                let l = w(g2, g3, g1).mul(g(g1, op(g2, g3))).mul(w(g1, g2, g3));
                let r = g(g1, g3).mul(w(g2, g1, g3)).mul(g(g1, g2));
                if l != r {
                    return Ok(false);
                }
                let l = w(g3, g1, g2).inv()?.mul(g(op(g1, g2), g3)).mul(&w(g1, g2, g3).inv()?);
                let r = g(g1, g3).mul(&w(g1, g3, g2).inv()?).mul(g(g2, g3));
                if l != r {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Multiplicativity of `γ` in each argument.
pub fn is_bicharacter(group: &AbelianGroup, gamma: &[Scalar]) -> bool {
    let n = group.size();
    let g = |a: usize, b: usize| &gamma[a * n + b];
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                *g(a, group.op(b, c)) == g(a, b).mul(g(a, c)) && *g(group.op(a, b), c) == g(a, c).mul(g(b, c))
            })
        })
    })
}

/// An element of `dom` squaring to `−1`.
pub fn sqrt_minus_one(dom: &ScalarDomain) -> Result<Scalar> {
    let gen = dom.v().unwrap_or_else(|| dom.q());
    let minus = dom.int(-1);
    let mut x = dom.one();
    for _ in 0..512 {
        if x.mul(&x) == minus {
            return Ok(x);
        }
        x = x.mul(&gen);
        if x.is_one() {
            break;
        }
    }
    Err(Error::DomainMismatch(format!("{dom} has no square root of −1 among powers of its generator")))
}

/// `ω(g₁,g₂,g₃) = (−1)^{g₁g₂g₃}` and `γ(g₁,g₂) = (√−1)^{g₁g₂}` on `ℤ/2`.
pub fn semion_cocycle(dom: &ScalarDomain) -> Result<AbelianCocycle> {
    let i = sqrt_minus_one(dom)?;
    let pw = |e: usize| if e % 4 == 0 { dom.one() } else { i.pow(e as i64).expect("unit") };
    Ok(AbelianCocycle::from_fns(
        AbelianGroup::new(vec![2]),
        |a, b, c| dom.int(if a[0] * b[0] * c[0] % 2 == 1 { -1 } else { 1 }),
        |a, b| pw(a[0] * b[0]),
    ))
}

/// `γ((i,j,k),(i′,j′,k′)) = (−1)^{k(i′+j′)}` on `(ℤ/2)³`, with `ω ≡ 1`.
pub fn grading_bicharacter(dom: &ScalarDomain) -> AbelianCocycle {
    AbelianCocycle::from_fns(
        AbelianGroup::new(vec![2, 2, 2]),
        |_, _, _| dom.one(),
        |a, b| dom.int(if a[2] * (b[0] + b[1]) % 2 == 1 { -1 } else { 1 }),
    )
}

/// Twist a verified half-braiding by a `ℤ/2`-cocycle: the object of degree
/// `g = n mod 2` gets `φ₁^γ = γ(g,1)·φ₁`, and the two-step composite picks up
/// the associator scalar `ω(g,1,1)^{-1}ω(1,g,1)ω(1,1,g)^{-1}`.
/// Returns whether the twisted pair passes the criterion in the twisted category.
pub fn twisted_half_braiding_check(obj: &CenterObject, c: &AbelianCocycle) -> Result<bool> {
    if c.group.orders != [2] {
        return Err(Error::Invalid("grading twists use a cocycle on ℤ/2".into()));
    }
    if c.gamma.first().map(|x| x.zero_like()) != Some(obj.domain().zero()) {
        return Err(Error::DomainMismatch("cocycle and object live in different domains".into()));
    }
    let g = obj.n() % 2;
    let phi = obj.phi.scale(c.gamma(g, 1));
    let assoc = c.omega(g, 1, 1).inv()?.mul(c.omega(1, g, 1)).mul(&c.omega(1, 1, g).inv()?);
    half_braiding_check_scaled(&obj.cut, &phi, &assoc)
}

/// Report of [`minus_q_twist_check`].
#[derive(Clone, Debug, Serialize)]
pub struct MinusQTwist {
    pub circle_is_q2: bool,
    pub zigzags_straighten: bool,
    pub q1_matches_qm1: bool,
}

impl MinusQTwist {
    pub fn passed(&self) -> bool {
        self.circle_is_q2 && self.zigzags_straighten && self.q1_matches_qm1
    }
}

/// Send `cup ↦ cup`, `cap ↦ −cap` into the category with associator twisted
/// by `ω(1,1,1) = −1` and check the defining relations of `TL_{−q}`.
pub fn minus_q_twist_check(dom: &ScalarDomain) -> Result<MinusQTwist> {
    if !dom.is_generic() {
        return Err(Error::Invalid("the −q twist check runs over generic q".into()));
    }
    let mode = Mode::Generic;
    let omega = dom.int(-1);
    let cup = Morphism::cup(dom, mode);
    let cap = Morphism::cap(dom, mode).neg();
    let circle = compose(&cap, &cup)?.coeff(&Diagram::identity(0));
    // −[2]_{−q} with −q = −v²
    let mq = dom.q().neg();
    let two_mq = mq.add(&mq.inv()?);
    let circle_is_q2 = circle == crate::qarith::qint(2, dom) && circle == two_mq.neg();
    let one = id(dom, mode, 1);
    let z1 = compose(&one.tensor(&cap)?, &cup.tensor(&one)?)?.scale(&omega);
    let z2 = compose(&cap.tensor(&one)?, &one.tensor(&cup)?)?.scale(&omega.inv()?);
    let zigzags_straighten = z1 == one && z2 == one;
    // q = 1 with the twisted cap has circle 2, the circle value at q = −1
    let d1 = ScalarDomain::root_of_unity(1)?;
    let dm1 = ScalarDomain::root_of_unity(2)?;
    let twisted_q1 = compose(&Morphism::cap(&d1, mode).neg(), &Morphism::cup(&d1, mode))?.coeff(&Diagram::identity(0));
    let q1_matches_qm1 = twisted_q1 == d1.int(2) && delta(&dm1, mode) == dm1.int(2);
    Ok(MinusQTwist { circle_is_q2, zigzags_straighten, q1_matches_qm1 })
}

// ---------------------------------------------------------------------------
// Symbolic half-braiding systems on direct sums of generating objects.

type SymPoly = HashMap<Mono, BigRational>;

/// A morphism `n → m` whose coefficients are polynomials in the unknowns.
#[derive(Clone)]
pub(crate) struct SymMor {
    n: usize,
    m: usize,
    coeffs: HashMap<Diagram, SymPoly>,
}

impl SymMor {
    pub(crate) fn zero(n: usize, m: usize) -> SymMor {
        SymMor { n, m, coeffs: HashMap::new() }
    }

    /// `Σ_k x_{first+k}·basis[k]` for morphisms with rational coefficients.
    pub(crate) fn linear(n: usize, m: usize, basis: &[Morphism], first: usize) -> Result<SymMor> {
        let mut s = SymMor::zero(n, m);
        for (k, b) in basis.iter().enumerate() {
            s.add_assign(&SymMor::from_morphism(b)?.times_var(first + k), 1);
        }
        Ok(s)
    }

    pub(crate) fn from_morphism(f: &Morphism) -> Result<SymMor> {
        let mut s = SymMor::zero(f.source(), f.target());
        for (d, c) in f.iter() {
            let r = c
                .as_rational()
                .ok_or_else(|| Error::DomainMismatch(format!("coefficient {c} is not rational")))?;
            s.coeffs.insert(d.clone(), HashMap::from([(Mono::one(), r)]));
        }
        Ok(s)
    }

    fn times_var(mut self, k: usize) -> SymMor {
        let v = Mono::var(k);
        for p in self.coeffs.values_mut() {
            *p = p.drain().map(|(m, c)| (Mono::from_exps(&(0..polysolve::MAX_VARS).map(|i| m.exp(i) + v.exp(i)).collect::<Vec<_>>()), c)).collect();
        }
        self
    }

    pub(crate) fn constant(d: &Diagram, c: BigRational) -> SymMor {
        let mut s = SymMor::zero(d.n_bottom(), d.n_top());
        s.coeffs.insert(d.clone(), HashMap::from([(Mono::one(), c)]));
        s
    }

    pub(crate) fn add_assign(&mut self, o: &SymMor, sign: i64) {
        for (d, p) in &o.coeffs {
            let e = self.coeffs.entry(d.clone()).or_default();
            for (m, c) in p {
                let t = e.entry(*m).or_insert_with(BigRational::zero);
                if sign > 0 {
                    *t += c;
                } else {
                    *t -= c;
                }
            }
        }
    }

    pub(crate) fn tensor_id(&self, left: usize, right: usize) -> SymMor {
        let (l, r) = (Diagram::identity(left), Diagram::identity(right));
        SymMor {
            n: self.n + left + right,
            m: self.m + left + right,
            coeffs: self.coeffs.iter().map(|(d, p)| (l.tensor(d).tensor(&r), p.clone())).collect(),
        }
    }

    /// `self ∘ g`.
    pub(crate) fn compose(&self, g: &SymMor, delta: &Option<BigRational>, mode: Mode) -> Result<SymMor> {
        let mut out = SymMor::zero(g.n, self.m);
        for (dg, pg) in &g.coeffs {
            for (df, pf) in &self.coeffs {
                let r = diagram::glue(df, dg)?;
                if r.zigzag_hit && mode == Mode::Crystal {
                    continue;
                }
                let mut scale = BigRational::one();
                if r.loops > 0 {
                    let d = delta.as_ref().ok_or_else(|| {
                        Error::DomainMismatch("loop value is not rational; symbolic systems need rational δ".into())
                    })?;
                    scale = num_traits::pow(d.clone(), r.loops as usize);
                }
                let e = out.coeffs.entry(r.matching).or_default();
                for (mf, cf) in pf {
                    for (mg, cg) in pg {
                        let m = Mono::from_exps(&(0..polysolve::MAX_VARS).map(|i| mf.exp(i) + mg.exp(i)).collect::<Vec<_>>());
                        *e.entry(m).or_insert_with(BigRational::zero) += cf * cg * &scale;
                    }
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn equations(&self, out: &mut Vec<Poly>) {
        let mut ds: Vec<&Diagram> = self.coeffs.keys().collect();
        ds.sort();
        for d in ds {
            let p = Poly::from_rational_terms(
                self.coeffs[d].iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, c.clone())).collect(),
                MonoOrder::Grevlex,
            );
            if !p.is_zero() {
                out.push(p.primitive());
            }
        }
    }
}

/// Unknowns and equations of the half-braiding criterion on `⊕_a m_a`.
#[derive(Clone, Debug)]
pub struct HalfBraidingSystem {
    pub summands: Vec<usize>,
    pub mode: Mode,
    /// `(a, b, diagram)` for each unknown of `φ₁`, block `m_a⊗1 → 1⊗m_b`.
    pub phi_unknowns: Vec<(usize, usize, Diagram)>,
    /// Whether inverse unknowns `ψ` (same blocks, reversed) follow the `φ` unknowns.
    pub with_inverse: bool,
    /// The cap and cup squares only.
    pub square_equations: Vec<Poly>,
    /// `ψ∘φ = id`, `φ∘ψ = id` (empty without inverse unknowns).
    pub inverse_equations: Vec<Poly>,
}

impl HalfBraidingSystem {
    pub fn n_phi(&self) -> usize {
        self.phi_unknowns.len()
    }

    pub fn nvars(&self) -> usize {
        if self.with_inverse {
            2 * self.n_phi()
        } else {
            self.n_phi()
        }
    }

    pub fn squares_system(&self) -> PolySystem {
        PolySystem::new(self.n_phi(), self.square_equations.clone())
    }

    pub fn full_system(&self) -> PolySystem {
        let mut g = self.square_equations.clone();
        g.extend(self.inverse_equations.iter().cloned());
        PolySystem::new(self.nvars(), g)
    }

    /// The block matrix of `φ₁` at a rational point.
    pub fn phi_at(&self, dom: &ScalarDomain, point: &[BigRational]) -> Result<Vec<Vec<Option<Morphism>>>> {
        let s = self.summands.len();
        let mut blocks: Vec<Vec<Vec<(Diagram, Scalar)>>> = vec![vec![Vec::new(); s]; s];
        for (k, (a, b, d)) in self.phi_unknowns.iter().enumerate() {
            blocks[*a][*b].push((d.clone(), dom.rational(&point[k])?));
        }
        Ok((0..s)
            .map(|a| {
                (0..s)
                    .map(|b| {
                        let (x, y) = (self.summands[a], self.summands[b]);
                        ((x + y) % 2 == 0).then(|| {
                            Morphism::from_terms(dom, self.mode, x + 1, y + 1, std::mem::take(&mut blocks[a][b]))
                        })
                    })
                    .collect()
            })
            .collect())
    }
}

pub(crate) fn rational_delta(dom: &ScalarDomain, mode: Mode) -> Option<BigRational> {
    delta(dom, mode).as_rational()
}

/// Build the criterion for `φ₁` on `⊕_a m_a` (blocks between summands of
/// different parity vanish). With `with_inverse`, unknowns for a two-sided
/// inverse `ψ` are adjoined so that solutions are exactly invertible `φ₁`.
pub fn halfbraiding_system(
    summands: &[usize],
    dom: &ScalarDomain,
    mode: Mode,
    with_inverse: bool,
) -> Result<HalfBraidingSystem> {
    let s = summands.len();
    let dl = rational_delta(dom, mode);
    let mut phi_unknowns = Vec::new();
    for a in 0..s {
        for b in 0..s {
            let (x, y) = (summands[a], summands[b]);
            if (x + y) % 2 == 0 {
                for d in &diagram::basis(x + 1, y + 1).diagrams {
                    phi_unknowns.push((a, b, d.clone()));
                }
            }
        }
    }
    let nphi = phi_unknowns.len();
    if (if with_inverse { 2 * nphi } else { nphi }) > polysolve::MAX_VARS {
        return Err(Error::Resource(format!("{nphi} unknowns per map exceed the variable limit")));
    }
    let unit = |k: usize| -> SymPoly { HashMap::from([(Mono::var(k), BigRational::one())]) };
    // φ blocks a→b and ψ blocks b→a
    let mut phi: Vec<Vec<SymMor>> =
        (0..s).map(|a| (0..s).map(|b| SymMor::zero(summands[a] + 1, summands[b] + 1)).collect()).collect();
    let mut psi: Vec<Vec<SymMor>> =
        (0..s).map(|b| (0..s).map(|a| SymMor::zero(summands[b] + 1, summands[a] + 1)).collect()).collect();
    for (k, (a, b, d)) in phi_unknowns.iter().enumerate() {
        phi[*a][*b].coeffs.insert(d.clone(), unit(k));
        if with_inverse {
            // ψ unknown k lives in Hom(1⊗m_b, m_a⊗1) on the same diagram shape read upside down
            let flipped = flip(d);
            psi[*b][*a].coeffs.insert(flipped, unit(nphi + k));
        }
    }
    let one = BigRational::one();
    let mut square_equations = Vec::new();
    for a in 0..s {
        for b in 0..s {
            let (ma, mb) = (summands[a], summands[b]);
            if (ma + mb) % 2 == 1 {
                continue;
            }
            let mut two = SymMor::zero(ma + 2, mb + 2);
            for c in 0..s {
                if (ma + summands[c]) % 2 == 1 {
                    continue;
                }
                let step = phi[c][b].tensor_id(1, 0).compose(&phi[a][c].tensor_id(0, 1), &dl, mode)?;
                two.add_assign(&step, 1);
            }
            let cap = SymMor::constant(&Diagram::cap_at(mb + 2, 0), one.clone());
            let mut lhs = cap.compose(&two, &dl, mode)?;
            let cup = SymMor::constant(&Diagram::cup_at(ma, ma), one.clone());
            let mut lhs2 = two.compose(&cup, &dl, mode)?;
            if a == b {
                lhs.add_assign(&SymMor::constant(&Diagram::cap_at(ma + 2, ma), one.clone()), -1);
                lhs2.add_assign(&SymMor::constant(&Diagram::cup_at(ma, 0), one.clone()), -1);
            }
            lhs.equations(&mut square_equations);
            lhs2.equations(&mut square_equations);
        }
    }
    let mut inverse_equations = Vec::new();
    if with_inverse {
        for a in 0..s {
            for a2 in 0..s {
                if (summands[a] + summands[a2]) % 2 == 1 {
                    continue;
                }
                let mut t = SymMor::zero(summands[a] + 1, summands[a2] + 1);
                for b in 0..s {
                    if (summands[a] + summands[b]) % 2 == 1 {
                        continue;
                    }
                    t.add_assign(&psi[b][a2].compose(&phi[a][b], &dl, mode)?, 1);
                }
                if a == a2 {
                    t.add_assign(&SymMor::constant(&Diagram::identity(summands[a] + 1), one.clone()), -1);
                }
                t.equations(&mut inverse_equations);
            }
        }
        for b in 0..s {
            for b2 in 0..s {
                if (summands[b] + summands[b2]) % 2 == 1 {
                    continue;
                }
                let mut t = SymMor::zero(summands[b] + 1, summands[b2] + 1);
                for a in 0..s {
                    if (summands[a] + summands[b]) % 2 == 1 {
                        continue;
                    }
                    t.add_assign(&phi[a][b2].compose(&psi[b][a], &dl, mode)?, 1);
                }
                if b == b2 {
                    t.add_assign(&SymMor::constant(&Diagram::identity(summands[b] + 1), one.clone()), -1);
                }
                t.equations(&mut inverse_equations);
            }
        }
    }
    Ok(HalfBraidingSystem {
        summands: summands.to_vec(),
        mode,
        phi_unknowns,
        with_inverse,
        square_equations,
        inverse_equations,
    })
}

/// The same diagram read upside down (`n → m` becomes `m → n`); in the
/// circular numbering this is the reversal `k ↦ n+m−1−k`.
pub(crate) fn flip(d: &Diagram) -> Diagram {
    let t = d.n_bottom() + d.n_top();
    let pairing: Vec<usize> = (0..t).map(|k| t - 1 - d.partner(t - 1 - k)).collect();
    Diagram::new(d.n_top(), d.n_bottom(), &pairing).expect("reflection of a planar matching is planar")
}

/// Half-braiding check on `⊕_a m_a` with `φ₁` given by blocks.
pub fn half_braiding_check_blocks(
    summands: &[usize],
    blocks: &[Vec<Option<Morphism>>],
    dom: &ScalarDomain,
    mode: Mode,
) -> Result<bool> {
    let s = summands.len();
    let one = id(dom, mode, 1);
    let get = |a: usize, b: usize| -> Morphism {
        blocks[a][b].clone().unwrap_or_else(|| Morphism::zero(dom, mode, summands[a] + 1, summands[b] + 1))
    };
    for a in 0..s {
        for b in 0..s {
            let (ma, mb) = (summands[a], summands[b]);
            if (ma + mb) % 2 == 1 {
                if blocks[a][b].as_ref().is_some_and(|m| !m.is_zero()) {
                    return Ok(false);
                }
                continue;
            }
            let mut two = Morphism::zero(dom, mode, ma + 2, mb + 2);
            for c in 0..s {
                if (ma + summands[c]) % 2 == 0 {
                    two = two.add(&compose(&one.tensor(&get(c, b))?, &get(a, c).tensor(&one)?)?)?;
                }
            }
            let cap = Morphism::cap(dom, mode);
            let cup = Morphism::cup(dom, mode);
            let lhs = compose(&cap.tensor(&id(dom, mode, mb))?, &two)?;
            let lhs2 = compose(&two, &id(dom, mode, ma).tensor(&cup)?)?;
            let (rhs, rhs2) = if a == b {
                (id(dom, mode, ma).tensor(&cap)?, cup.tensor(&id(dom, mode, ma))?)
            } else {
                (Morphism::zero(dom, mode, ma + 2, mb), Morphism::zero(dom, mode, ma, mb + 2))
            };
            if lhs != rhs || lhs2 != rhs2 {
                return Ok(false);
            }
        }
    }
    // invertibility: solve for ψ blocks linearly
    let mut unknowns: Vec<(usize, usize, Diagram)> = Vec::new();
    for b in 0..s {
        for a in 0..s {
            if (summands[a] + summands[b]) % 2 == 0 {
                for d in &diagram::basis(summands[b] + 1, summands[a] + 1).diagrams {
                    unknowns.push((b, a, d.clone()));
                }
            }
        }
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut first = true;
    for (b, a, d) in &unknowns {
        let psi = Morphism::from_diagram(dom, mode, d);
        let mut col = Vec::new();
        // ψ∘φ block (x → x2) and φ∘ψ block (y → y2)
        for x in 0..s {
            for x2 in 0..s {
                if (summands[x] + summands[x2]) % 2 == 1 {
                    continue;
                }
                let v = if *a == x2 && (summands[x] + summands[*b]) % 2 == 0 {
                    compose(&psi, &get(x, *b))?.to_vector()
                } else {
                    vec![dom.zero(); diagram::basis(summands[x] + 1, summands[x2] + 1).len()]
                };
                if first {
                    let target = if x == x2 { id(dom, mode, summands[x] + 1).to_vector() } else { vec![dom.zero(); v.len()] };
                    rhs.extend(target);
                }
                col.extend(v);
            }
        }
        for y in 0..s {
            for y2 in 0..s {
                if (summands[y] + summands[y2]) % 2 == 1 {
                    continue;
                }
                let v = if *b == y && (summands[*a] + summands[y2]) % 2 == 0 {
                    compose(&get(*a, y2), &psi)?.to_vector()
                } else {
                    vec![dom.zero(); diagram::basis(summands[y] + 1, summands[y2] + 1).len()]
                };
                if first {
                    let target = if y == y2 { id(dom, mode, summands[y] + 1).to_vector() } else { vec![dom.zero(); v.len()] };
                    rhs.extend(target);
                }
                col.extend(v);
            }
        }
        first = false;
        cols.push(col);
    }
    if cols.is_empty() {
        return Ok(s == 0);
    }
    let rows = rhs.len();
    let a: Vec<Vec<Scalar>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    Ok(linalg::solve(&a, &rhs).is_some())
}

/// The ideal of `Φ² = I` together with `Ψ = Φ`, in the unknown layout of
/// [`halfbraiding_system`] on `0^{⊕n}` with inverse unknowns.
pub fn involution_reference(n: usize) -> PolySystem {
    // Φ_{ab} is unknown a·n + b; unknown n² + a·n + b is the ψ block b → a
    let nphi = n * n;
    let x = |a: usize, b: usize| a * n + b;
    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut terms: Vec<(Mono, BigRational)> = (0..n)
                .map(|c| {
                    let mut e = vec![0u16; 2 * nphi];
                    e[x(a, c)] += 1;
                    e[x(c, b)] += 1;
                    (Mono::from_exps(&e), BigRational::one())
                })
                .collect();
            if a == b {
                terms.push((Mono::one(), -BigRational::one()));
            }
            gens.push(Poly::from_rational_terms(terms, MonoOrder::Grevlex));
            let mut e1 = vec![0u16; 2 * nphi];
            e1[nphi + x(a, b)] = 1;
            let mut e2 = vec![0u16; 2 * nphi];
            e2[x(b, a)] = 1;
            gens.push(Poly::from_rational_terms(
                vec![(Mono::from_exps(&e1), BigRational::one()), (Mono::from_exps(&e2), -BigRational::one())],
                MonoOrder::Grevlex,
            ));
        }
    }
    PolySystem::new(2 * nphi, gens)
}

/// Solution set of the criterion on `0^{⊕n}` in generic TL.
#[derive(Clone, Debug)]
pub struct GradingSolutions {
    pub n_copies: usize,
    pub system: HalfBraidingSystem,
    pub variety: Variety,
    /// The ideal equals the one cut out by `Φ² = I` and `Ψ = Φ`.
    pub is_involution_ideal: bool,
}

pub fn grading_halfbraidings(n_copies: usize) -> Result<GradingSolutions> {
    let dom = ScalarDomain::generic();
    let summands = vec![0; n_copies];
    let system = halfbraiding_system(&summands, &dom, Mode::Generic, true)?;
    let opts = GroebnerOptions { max_vars: polysolve::MAX_VARS, ..Default::default() };
    let full = system.full_system();
    let variety = polysolve::variety_with(&full, opts)?;
    let reference = involution_reference(n_copies);
    let is_involution_ideal = polysolve::same_ideal(&full, &reference, opts)?;
    Ok(GradingSolutions { n_copies, system, variety, is_involution_ideal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::braiding_units;

    fn g() -> ScalarDomain {
        ScalarDomain::generic()
    }

    #[test]
    fn crossing_generators() {
        let d = g();
        let a = d.v().unwrap();
        let s = sigma(1, 1, &d, &a).unwrap();
        assert_eq!(s.coeff(&Diagram::identity(2)), a);
        assert_eq!(s.coeff(&Diagram::u_at(2, 0)), a.inv().unwrap());
        assert_eq!(sigma(0, 2, &d, &a).unwrap(), Morphism::identity(&d, Mode::Generic, 2));
        let si = sigma_inv(1, 1, &d, &a).unwrap();
        assert_eq!(compose(&s, &si).unwrap(), Morphism::identity(&d, Mode::Generic, 2));
        assert!(sigma(1, 1, &d, &d.int(2)).is_err());
    }

    #[test]
    fn yang_baxter_all_units() {
        let d = g();
        for a in braiding_units(&d).unwrap() {
            let s1 = crossing(3, 0, &d, &a).unwrap();
            let s2 = crossing(3, 1, &d, &a).unwrap();
            let l = compose(&compose(&s1, &s2).unwrap(), &s1).unwrap();
            let r = compose(&compose(&s2, &s1).unwrap(), &s2).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn scalar_half_braidings_on_empty() {
        let d = g();
        let x = Cut::full(0, &d, Mode::Generic);
        let one = Morphism::identity(&d, Mode::Generic, 1);
        assert!(half_braiding_check(&x, &one.neg()).unwrap());
        assert!(!half_braiding_check(&x, &one.scale(&d.int(2))).unwrap());
        let t1 = Cut::full(1, &d, Mode::Generic);
        assert!(half_braiding_check(&t1, &sigma(1, 1, &d, &d.v().unwrap()).unwrap()).unwrap());
        assert!(half_braiding_check(&t1, &one).is_err());
    }

    #[test]
    fn small_center_objects() {
        let d = g();
        let a = d.v().unwrap();
        let u = center_object(CenterKind::M, 0, 0, &d, &a).unwrap();
        assert_eq!(u.phi, Morphism::identity(&d, Mode::Generic, 1));
        let w = center_object(CenterKind::W, 0, 0, &d, &a).unwrap();
        assert_eq!(w.phi, Morphism::identity(&d, Mode::Generic, 1).neg());
        for (i, j) in [(1, 0), (0, 1), (1, 1)] {
            assert!(center_object(CenterKind::M, i, j, &d, &a).unwrap().check().unwrap());
        }
        let m10 = center_object(CenterKind::M, 1, 0, &d, &a).unwrap();
        let m01 = center_object(CenterKind::M, 0, 1, &d, &a).unwrap();
        assert_eq!(center_hom_dim(&m10, &m10).unwrap(), 1);
        assert_eq!(center_hom_dim(&m10, &m01).unwrap(), 0);
        let m11 = center_object(CenterKind::M, 1, 1, &d, &a).unwrap();
        let w11 = center_object(CenterKind::W, 1, 1, &d, &a).unwrap();
        assert_eq!(center_hom_dim(&m11, &w11).unwrap(), 0);
        // the general tensor product agrees with the braid-word product
        let t = m10.tensor(&m01).unwrap();
        let p = center_product(&[(CenterKind::M, 1, 0), (CenterKind::M, 0, 1)], &d, &a).unwrap();
        assert_eq!(t.phi, p.phi);
    }

    #[test]
    fn small_center_fusion() {
        let d = g();
        let a = d.v().unwrap();
        let t = center_fusion_verify((CenterKind::M, 1, 0), (CenterKind::M, 1, 0), &d, &a).unwrap();
        assert!(t.matches && t.underlying_ok, "{t:?}");
        assert_eq!(t.decomposition.len(), 2);
        let t = center_fusion_verify((CenterKind::W, 0, 0), (CenterKind::W, 0, 0), &d, &a).unwrap();
        assert_eq!(t.decomposition, vec![Summand { kind: CenterKind::M, i: 0, j: 0, mult: 1 }]);
        let t = center_fusion_verify((CenterKind::W, 0, 0), (CenterKind::M, 1, 1), &d, &a).unwrap();
        assert_eq!(t.decomposition, vec![Summand { kind: CenterKind::W, i: 1, j: 1, mult: 1 }]);
    }

    #[test]
    fn cocycles() {
        let (c4, _) = crate::qarith::primitive_root(4).unwrap();
        let triv = AbelianCocycle::from_fns(AbelianGroup::new(vec![2]), |_, _, _| c4.one(), |_, _| c4.one());
        assert!(validate_abelian_cocycle(&triv).unwrap());
        assert!(validate_abelian_cocycle(&semion_cocycle(&c4).unwrap()).unwrap());
        let i = sqrt_minus_one(&c4).unwrap();
        let bad = AbelianCocycle::from_fns(
            AbelianGroup::new(vec![2]),
            |_, _, _| c4.one(),
            |a, b| if a[0] * b[0] == 1 { i.clone() } else { c4.one() },
        );
        assert!(!validate_abelian_cocycle(&bad).unwrap());
        let gb = grading_bicharacter(&g());
        assert!(is_bicharacter(&gb.group, &gb.gamma));
        assert!(validate_abelian_cocycle(&gb).unwrap());
        assert!(minus_q_twist_check(&g()).unwrap().passed());
        assert!(sqrt_minus_one(&g()).is_err());
    }

    #[test]
    fn flip_reverses_arity() {
        for n in 0..4 {
            for m in 0..4 {
                for d in diagram::enumerate(n, m) {
                    let f = flip(&d);
                    assert_eq!((f.n_bottom(), f.n_top()), (m, n));
                    assert_eq!(flip(&f), d);
                    assert_eq!(f.through_strands(), d.through_strands());
                }
            }
        }
        assert_eq!(flip(&Diagram::cup()), Diagram::cap());
    }

    #[test]
    fn grading_solutions() {
        let s = grading_halfbraidings(1).unwrap();
        match &s.variety {
            Variety::Finite { points, complete: true, .. } => {
                let phis: Vec<String> = points.iter().map(|p| p[0].to_string()).collect();
                assert_eq!(phis, vec!["-1", "1"]);
            }
            v => panic!("{v:?}"),
        }
        let s = grading_halfbraidings(2).unwrap();
        assert!(matches!(s.variety, Variety::PositiveDimensional { .. }));
        assert!(s.is_involution_ideal);
    }
}
