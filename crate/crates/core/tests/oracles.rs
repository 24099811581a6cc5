use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use tlcenter::diagram::{enumerate, Diagram};
use tlcenter::primes::{integer_tower, mult_order, resultant, tower_resultant};
use tlcenter::qarith::{qint, ScalarDomain};
use tlcenter::tlcat::{compose, Mode, Morphism};

/// Determinant of the Sylvester matrix by rational elimination.
fn sylvester_det(a: &[i64], b: &[i64]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for shift in 0..n {
        let mut r = vec![BigRational::zero(); size];
        for (i, &c) in a.iter().rev().enumerate() {
            r[shift + i] = BigRational::from_integer(c.into());
        }
        rows.push(r);
    }
    for shift in 0..m {
        let mut r = vec![BigRational::zero(); size];
        for (i, &c) in b.iter().rev().enumerate() {
            r[shift + i] = BigRational::from_integer(c.into());
        }
        rows.push(r);
    }
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        det *= rows[col][col].clone();
        for r in col + 1..size {
            let f = &rows[r][col] / &rows[col][col];
            for k in col..size {
                let t = &rows[col][k] * &f;
                rows[r][k] -= t;
            }
        }
    }
    det.to_integer()
}

fn poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop_oneof![1i64..=5, -5i64..=-1]).prop_map(|(mut v, lead)| {
            v.push(lead);
            v
        })
    })
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn brute_order(x: u64, p: u64) -> u64 {
    let mut y = x % p;
    let mut k = 1;
    while y != 1 {
        y = y * x % p;
        k += 1;
    }
    k
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 31, 97, 101, 257, 331, 499])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_matches_sylvester(a in poly(4), b in poly(4)) {
        prop_assert_eq!(resultant(&big(&a), &big(&b)), sylvester_det(&a, &b));
    }

    #[test]
    fn prime_field_orders(p in small_prime(), x in 1u64..1000) {
        prop_assume!(x % p != 0);
        let got = mult_order(&[x % p], p, 1).unwrap();
        prop_assert_eq!(got, brute_order(x, p).into());
    }

    #[test]
    fn linear_tower_resultant(q in 2i64..40, k in 0u32..5) {
        let f = big(&[-q, 1]);
        let want = num_traits::pow(BigInt::from(q), 1usize << k) + 1;
        prop_assert_eq!(tower_resultant(&f, k).abs(), want);
    }

    #[test]
    fn integer_towers_reverify(q in 2i64..30) {
        let t = integer_tower(q, 4).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for e in &t.entries {
            prop_assert!(seen.insert(e.p), "repeated prime {}", e.p);
            let p = e.p as u128;
            let modulus = 1u128 << (e.k + 1);
            prop_assert_eq!(p % modulus, 1);
            let mut y = q as u128 % p;
            for _ in 0..e.k {
                y = y * y % p;
            }
            prop_assert_eq!(y, p - 1);
        }
    }

    #[test]
    fn composition_is_associative(
        n in 0usize..=3, m in 0usize..=3, l in 0usize..=3, o in 0usize..=3,
        i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>(),
        odd in 0usize..=1, crystal in any::<bool>(),
    ) {
        let (a, b, c, d) = (2 * n + odd, 2 * m + odd, 2 * l + odd, 2 * o + odd);
        let pick = |x: usize, y: usize, idx: &prop::sample::Index| {
            let all = enumerate(x, y);
            all[idx.index(all.len())].clone()
        };
        let dom = ScalarDomain::generic();
        let mode = if crystal { Mode::Crystal } else { Mode::Generic };
        let h = Morphism::from_diagram(&dom, mode, &pick(a, b, &i));
        let g = Morphism::from_diagram(&dom, mode, &pick(b, c, &j));
        let f = Morphism::from_diagram(&dom, mode, &pick(c, d, &k));
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_units(n in 0usize..=4, m in 0usize..=2, i in any::<prop::sample::Index>()) {
        let (a, b) = (2 * n, 2 * m);
        let all = enumerate(a, b);
        let dg = all[i.index(all.len())].clone();
        let dom = ScalarDomain::generic();
        let f = Morphism::from_diagram(&dom, Mode::Generic, &dg);
        let ida = Morphism::identity(&dom, Mode::Generic, a);
        let idb = Morphism::identity(&dom, Mode::Generic, b);
        prop_assert_eq!(&compose(&f, &ida).unwrap(), &f);
        prop_assert_eq!(&compose(&idb, &f).unwrap(), &f);
    }

    #[test]
    fn cyclotomic_round_trip(n in 1u32..13, coeffs in prop::collection::vec(-5i64..=5, 1..8)) {
        let dom = ScalarDomain::root_of_unity(n).unwrap();
        let mut x = dom.zero();
        for (e, &c) in coeffs.iter().enumerate() {
            x = x.add(&dom.v_pow(e as i64).unwrap().scale_int(c));
        }
        prop_assert_eq!(dom.parse(&x.render()).unwrap(), x);
    }
}

#[test]
fn circle_removal_in_both_modes() {
    let dom = ScalarDomain::generic();
    for (mode, want) in [(Mode::Generic, qint(2, &dom).neg()), (Mode::Crystal, dom.one())] {
        let cup = Morphism::from_diagram(&dom, mode, &Diagram::cup());
        let cap = Morphism::from_diagram(&dom, mode, &Diagram::cap());
        let circle = compose(&cap, &cup).unwrap();
        assert_eq!(circle.coeff(&Diagram::identity(0)), want);
    }
}
