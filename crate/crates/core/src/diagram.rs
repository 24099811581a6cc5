//! Planar Temperley–Lieb diagrams.
//!
//! A diagram from `n` bottom points to `m` top points is a non-crossing perfect
//! matching of the `n + m` boundary points. Points are numbered in the
//! circular order of the rectangle boundary: bottom points `0..n` from left to
//! right, then top points `n..n+m` from right to left. In that numbering a
//! matching is planar exactly when it is a balanced bracket sequence.

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

pub type Pairing = SmallVec<[u8; 16]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n_bottom: u8,
    n_top: u8,
    pairing: Pairing,
}

/// Result of stacking two diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueResult {
    pub matching: Diagram,
    /// Closed components formed entirely at the interface.
    pub loops: u32,
    /// Some component, closed or not, crossed the interface at least three times.
    pub zigzag_hit: bool,
}

impl Diagram {
    /// Validate and build from a pairing in circular numbering.
    pub fn new(n_bottom: usize, n_top: usize, pairing: &[usize]) -> Result<Diagram> {
        let total = n_bottom + n_top;
        if total % 2 != 0 {
            return Err(Error::Invalid(format!("odd number of boundary points {n_bottom}+{n_top}")));
        }
        if total > 250 {
            return Err(Error::Resource(format!("{total} boundary points")));
        }
        if pairing.len() != total {
            return Err(Error::Invalid("pairing length does not match arity".into()));
        }
        for (i, &j) in pairing.iter().enumerate() {
            if j >= total || j == i || pairing[j] != i {
                return Err(Error::Invalid(format!("pairing is not a fixed-point-free involution at {i}")));
            }
        }
        let mut stack: Vec<usize> = Vec::new();
        for (i, &j) in pairing.iter().enumerate() {
            if j > i {
                stack.push(i);
            } else if stack.pop() != Some(j) {
                return Err(Error::Invalid("pairing is not planar".into()));
            }
        }
        Ok(Diagram {
            n_bottom: n_bottom as u8,
            n_top: n_top as u8,
            pairing: pairing.iter().map(|&x| x as u8).collect(),
        })
    }

    fn raw(n_bottom: usize, n_top: usize, pairing: Pairing) -> Diagram {
        Diagram { n_bottom: n_bottom as u8, n_top: n_top as u8, pairing }
    }

    pub fn n_bottom(&self) -> usize {
        self.n_bottom as usize
    }

    pub fn n_top(&self) -> usize {
        self.n_top as usize
    }

    pub fn pairing(&self) -> &[u8] {
        &self.pairing
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i] as usize
    }

    /// Circular index of the `j`-th top point counted from the left.
    pub fn top_index(&self, j: usize) -> usize {
        self.n_bottom() + self.n_top() - 1 - j
    }

    pub fn is_bottom(&self, i: usize) -> bool {
        i < self.n_bottom()
    }

    pub fn identity(n: usize) -> Diagram {
        let p: Pairing = (0..2 * n).map(|i| (2 * n - 1 - i) as u8).collect();
        Diagram::raw(n, n, p)
    }

    /// `cup ∈ Hom(0, 2)`.
    pub fn cup() -> Diagram {
        Diagram::raw(0, 2, SmallVec::from_slice(&[1, 0]))
    }

    /// `cap ∈ Hom(2, 0)`.
    pub fn cap() -> Diagram {
        Diagram::raw(2, 0, SmallVec::from_slice(&[1, 0]))
    }

    /// `id_i ⊗ cap ⊗ id_{n−i−2} : n → n−2`.
    pub fn cap_at(n: usize, i: usize) -> Diagram {
        assert!(i + 2 <= n);
        Diagram::identity(i).tensor(&Diagram::cap()).tensor(&Diagram::identity(n - i - 2))
    }

    /// `id_i ⊗ cup ⊗ id_{n−i} : n → n+2`.
    pub fn cup_at(n: usize, i: usize) -> Diagram {
        assert!(i <= n);
        Diagram::identity(i).tensor(&Diagram::cup()).tensor(&Diagram::identity(n - i))
    }

    /// The generator `U_i = cup_i ∘ cap_i ∈ End(n)`.
    pub fn u_at(n: usize, i: usize) -> Diagram {
        glue(&Diagram::cup_at(n - 2, i), &Diagram::cap_at(n, i)).expect("arities agree").matching
    }

    /// Number of strands joining a bottom point to a top point.
    pub fn through_strands(&self) -> usize {
        (0..self.n_bottom()).filter(|&i| !self.is_bottom(self.partner(i))).count()
    }

    /// Horizontal juxtaposition `self ⊗ other`.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let (n1, m1, n2, m2) = (self.n_bottom(), self.n_top(), other.n_bottom(), other.n_top());
        let (nn, mm) = (n1 + n2, m1 + m2);
        let total = nn + mm;
        let map1 = |i: usize| if i < n1 { i } else { total - 1 - (n1 + m1 - 1 - i) };
        let map2 = |i: usize| if i < n2 { n1 + i } else { total - 1 - (m1 + (n2 + m2 - 1 - i)) };
        let mut p: Pairing = SmallVec::from_elem(0, total);
        for i in 0..n1 + m1 {
            p[map1(i)] = map1(self.partner(i)) as u8;
        }
        for i in 0..n2 + m2 {
            p[map2(i)] = map2(other.partner(i)) as u8;
        }
        Diagram::raw(nn, mm, p)
    }

    /// Arcs as 1-based pairs `(i, j)`, `i < j`, listed in closing order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = (0..self.pairing.len())
            .filter(|&j| self.partner(j) < j)
            .map(|j| (self.partner(j) + 1, j + 1))
            .collect();
        v.sort_by_key(|&(_, j)| j);
        v
    }

    /// Parse the `"2↔3, 1↔4"` notation (`<->` is accepted too).
    pub fn parse(n_bottom: usize, n_top: usize, s: &str) -> Result<Diagram> {
        let total = n_bottom + n_top;
        let mut p = vec![usize::MAX; total];
        let s = s.trim();
        if !s.is_empty() {
            for arc in s.split(',') {
                let arc = arc.replace("<->", "↔");
                let (a, b) = arc
                    .split_once('↔')
                    .ok_or_else(|| Error::Parse(format!("bad arc {arc:?}")))?;
                let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad index in {arc:?}")))?;
                let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad index in {arc:?}")))?;
                if a == 0 || b == 0 || a > total || b > total {
                    return Err(Error::Parse(format!("index out of range in {arc:?}")));
                }
                if p[a - 1] != usize::MAX || p[b - 1] != usize::MAX {
                    return Err(Error::Parse(format!("point used twice in {arc:?}")));
                }
                p[a - 1] = b - 1;
                p[b - 1] = a - 1;
            }
        }
        if p.contains(&usize::MAX) {
            return Err(Error::Parse("unmatched boundary point".into()));
        }
        Diagram::new(n_bottom, n_top, &p)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.arcs().iter().map(|(a, b)| format!("{a}↔{b}")).collect();
        if s.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", s.join(", "))
        }
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({}→{}: {})", self.n_bottom, self.n_top, self)
    }
}

/// Raw glue used by hot loops: returns the outer pairing, loop count and zigzag flag.
pub fn glue_raw(upper: &Diagram, lower: &Diagram) -> (Pairing, u32, bool) {
    let a = lower.n_bottom();
    let k = lower.n_top();
    let b = upper.n_top();
    debug_assert_eq!(upper.n_bottom(), k);
    let total = a + b;
    let mut out: Pairing = SmallVec::from_elem(u8::MAX, total);
    let mut seen_mid: SmallVec<[bool; 16]> = SmallVec::from_elem(false, k);
    let mut zigzag = false;
    // middle position j (left to right) is lower index a+k-1-j and upper index j
    let lower_to_mid = |l: usize| a + k - 1 - l;
    let to_outer = |in_lower: bool, i: usize| if in_lower { i } else { a + (i - k) };
    let is_outer = |in_lower: bool, i: usize| if in_lower { i < a } else { i >= k };
    for start in 0..total {
        if out[start] != u8::MAX {
            continue;
        }
        let (mut in_lower, mut p) = if start < a { (true, start) } else { (false, start - a + k) };
        let mut crossings = 0u32;
        loop {
            let q = if in_lower { lower.partner(p) } else { upper.partner(p) };
            if is_outer(in_lower, q) {
                let end = to_outer(in_lower, q);
                out[start] = end as u8;
                out[end] = start as u8;
                break;
            }
            crossings += 1;
            let j = if in_lower { lower_to_mid(q) } else { q };
            seen_mid[j] = true;
            if in_lower {
                in_lower = false;
                p = j;
            } else {
                in_lower = true;
                p = a + k - 1 - j;
            }
        }
        if crossings >= 3 {
            zigzag = true;
        }
    }
    let mut loops = 0u32;
    for j0 in 0..k {
        if seen_mid[j0] {
            continue;
        }
        loops += 1;
        let mut j = j0;
        let mut in_lower = true;
        let mut crossings = 0u32;
        loop {
            crossings += 1;
            seen_mid[j] = true;
            let nj = if in_lower {
                lower_to_mid(lower.partner(a + k - 1 - j))
            } else {
                upper.partner(j)
            };
            in_lower = !in_lower;
            j = nj;
            seen_mid[j] = true;
            if j == j0 && in_lower {
                break;
            }
        }
        if crossings >= 3 {
            zigzag = true;
        }
    }
    (out, loops, zigzag)
}

/// Stack `upper` on top of `lower` (`upper ∘ lower`).
pub fn glue(upper: &Diagram, lower: &Diagram) -> Result<GlueResult> {
    if lower.n_top() != upper.n_bottom() {
        return Err(Error::Arity(format!(
            "cannot stack {}→{} on top of {}→{}",
            upper.n_bottom(),
            upper.n_top(),
            lower.n_bottom(),
            lower.n_top()
        )));
    }
    let (p, loops, zigzag_hit) = glue_raw(upper, lower);
    Ok(GlueResult { matching: Diagram::raw(lower.n_bottom(), upper.n_top(), p), loops, zigzag_hit })
}

pub fn tensor(d1: &Diagram, d2: &Diagram) -> Diagram {
    d1.tensor(d2)
}

/// Closed components of the closure joining bottom `i` to top `i` around the right.
pub fn trace_close(d: &Diagram) -> Result<u32> {
    let n = d.n_bottom();
    if d.n_top() != n {
        return Err(Error::Arity(format!("trace of a non-square diagram {}→{}", n, d.n_top())));
    }
    let mut seen: SmallVec<[bool; 32]> = SmallVec::from_elem(false, 2 * n);
    let mut comps = 0;
    for s in 0..2 * n {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut i = s;
        loop {
            seen[i] = true;
            let j = d.partner(i);
            seen[j] = true;
            // closure strand: bottom i ↔ top i (circular index 2n−1−i)
            let k = 2 * n - 1 - j;
            if k == s {
                break;
            }
            i = k;
        }
    }
    Ok(comps)
}

/// All planar matchings on `n` bottom and `m` top points, sorted lexicographically by pairing.
pub fn enumerate(n: usize, m: usize) -> Vec<Diagram> {
    basis(n, m).diagrams.clone()
}

fn matchings(total: usize) -> Vec<Pairing> {
    // non-crossing matchings of 0..total: point 0 pairs with an odd position k
    fn rec(lo: usize, hi: usize, cur: &mut Pairing, out: &mut Vec<Pairing>, rest: &mut Vec<(usize, usize)>) {
        if lo >= hi {
            if let Some((l, h)) = rest.pop() {
                rec(l, h, cur, out, rest);
                rest.push((l, h));
            } else {
                out.push(cur.clone());
            }
            return;
        }
        let mut k = lo + 1;
        while k < hi {
            cur[lo] = k as u8;
            cur[k] = lo as u8;
            rest.push((k + 1, hi));
            rec(lo + 1, k, cur, out, rest);
            rest.pop();
            k += 2;
        }
    }
    let mut out = Vec::new();
    let mut cur: Pairing = SmallVec::from_elem(0, total);
    rec(0, total, &mut cur, &mut out, &mut Vec::new());
    out.sort();
    out
}

/// The interned diagram basis of `Hom(n, m)`.
#[derive(Debug)]
pub struct Basis {
    pub n: usize,
    pub m: usize,
    pub diagrams: Vec<Diagram>,
    index: HashMap<Pairing, u32>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn index_of(&self, d: &Diagram) -> usize {
        self.index[&d.pairing] as usize
    }

    pub fn index_of_pairing(&self, p: &Pairing) -> usize {
        self.index[p] as usize
    }

    pub fn get(&self, i: usize) -> &Diagram {
        &self.diagrams[i]
    }
}

/// Shared, append-only cache of bases.
pub fn basis(n: usize, m: usize) -> Arc<Basis> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = cache.read().unwrap().get(&(n, m)) {
        return b.clone();
    }
    let diagrams: Vec<Diagram> = if (n + m) % 2 == 1 {
        Vec::new()
    } else {
        matchings(n + m).into_iter().map(|p| Diagram::raw(n, m, p)).collect()
    };
    let index = diagrams.iter().enumerate().map(|(i, d)| (d.pairing.clone(), i as u32)).collect();
    let b = Arc::new(Basis { n, m, diagrams, index });
    cache.write().unwrap().entry((n, m)).or_insert(b).clone()
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_round_trip() {
        let id2 = Diagram::identity(2);
        assert_eq!(id2.to_string(), "2↔3, 1↔4");
        assert_eq!(Diagram::parse(2, 2, "2↔3, 1↔4").unwrap(), id2);
        assert!(Diagram::parse(2, 2, "1↔3, 2↔4").is_err());
        assert_eq!(Diagram::u_at(2, 0).to_string(), "1↔2, 3↔4");
    }

    #[test]
    fn basic_glues() {
        let r = glue(&Diagram::cap(), &Diagram::cup()).unwrap();
        assert_eq!((r.loops, r.zigzag_hit), (1, false));
        assert_eq!(r.matching.n_bottom() + r.matching.n_top(), 0);
        let zig = glue(&Diagram::cap_at(3, 1), &Diagram::cup_at(1, 0)).unwrap();
        assert_eq!(zig.matching, Diagram::identity(1));
        assert_eq!((zig.loops, zig.zigzag_hit), (0, true));
        let idg = glue(&Diagram::identity(3), &Diagram::identity(3)).unwrap();
        assert_eq!((idg.matching, idg.loops, idg.zigzag_hit), (Diagram::identity(3), 0, false));
    }

    #[test]
    fn traces() {
        assert_eq!(trace_close(&Diagram::identity(1)).unwrap(), 1);
        assert_eq!(trace_close(&Diagram::identity(2)).unwrap(), 2);
        assert_eq!(trace_close(&Diagram::u_at(2, 0)).unwrap(), 1);
        assert!(trace_close(&Diagram::cup()).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate(2, 2).len(), 2);
        assert_eq!(enumerate(3, 3).len(), 5);
        assert!(enumerate(1, 2).is_empty());
        assert_eq!(enumerate(0, 0).len(), 1);
        assert_eq!(catalan(8), 1430);
    }

    #[test]
    fn tensor_examples() {
        let t = Diagram::cup().tensor(&Diagram::cap());
        assert_eq!((t.n_bottom(), t.n_top()), (2, 2));
        assert_eq!(t, Diagram::u_at(2, 0));
        let d = Diagram::identity(1).tensor(&Diagram::cup());
        assert!(enumerate(1, 3).contains(&d));
        assert_eq!(Diagram::u_at(3, 1).tensor(&Diagram::identity(0)), Diagram::u_at(3, 1));
    }
}
