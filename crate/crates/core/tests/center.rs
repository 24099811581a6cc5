use tlcenter::braidcenter::*;
use tlcenter::qarith::{braiding_units, ScalarDomain};

fn objects(dom: &ScalarDomain, a: &tlcenter::qarith::Scalar) -> Vec<CenterObject> {
    let mut out = Vec::new();
    for kind in [CenterKind::M, CenterKind::W] {
        for i in 0..=2 {
            for j in 0..=2 - i {
                out.push(center_object(kind, i, j, dom, a).unwrap());
            }
        }
    }
    out
}

#[test]
fn twists_preserve_half_braidings() {
    let d = ScalarDomain::root_of_unity(8).unwrap();
    let semion = semion_cocycle(&d).unwrap();
    let trivial = AbelianCocycle::from_fns(AbelianGroup::new(vec![2]), |_, _, _| d.one(), |_, _| d.one());
    for a in braiding_units(&d).unwrap() {
        for o in objects(&d, &a) {
            assert!(o.check().unwrap());
            assert!(twisted_half_braiding_check(&o, &trivial).unwrap());
            assert!(twisted_half_braiding_check(&o, &semion).unwrap());
        }
    }
}

#[test]
fn twist_by_a_non_cocycle_is_detected() {
    let d = ScalarDomain::root_of_unity(8).unwrap();
    let i = sqrt_minus_one(&d).unwrap();
    let bad = AbelianCocycle::from_fns(
        AbelianGroup::new(vec![2]),
        |_, _, _| d.one(),
        |g, h| if g[0] * h[0] == 1 { i.clone() } else { d.one() },
    );
    assert!(!validate_abelian_cocycle(&bad).unwrap());
    let a = braiding_units(&d).unwrap().remove(0);
    let odd_fail = objects(&d, &a)
        .iter()
        .filter(|o| o.n() % 2 == 1)
        .any(|o| !twisted_half_braiding_check(o, &bad).unwrap());
    assert!(odd_fail);
}
