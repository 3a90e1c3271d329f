use std::sync::Arc;

use super::*;

fn arrow_torus(w2: i64, root: u64) -> Arc<Torus> {
    let mut b = QuiverBuilder::new();
    b.vertex("a", false).vertex("b", false).arrow2("a", "b", w2);
    Torus::new(b.build().unwrap(), root)
}

fn el(t: &Arc<Torus>, s: &str) -> TorusElement {
    parse_element(t, s).unwrap()
}

#[test]
fn solid_arrow_commutation() {
    let t = arrow_torus(2, 1);
    let a = Monomial(vec![rint(1), rint(0)]);
    let b = Monomial(vec![rint(0), rint(1)]);
    assert_eq!(commutation_exponent(&t, &a, &b).unwrap(), rint(-2));
    let third = commutation_exponent(&t, &a.scale(rat(1, 3)), &b.scale(rat(1, 3))).unwrap();
    assert_eq!(third, rat(-2, 9));
}

#[test]
fn disconnected_vertices_commute() {
    let t = arrow_torus(0, 1);
    assert_eq!(el(&t, "b*a"), el(&t, "a*b"));
}

#[test]
fn reversed_product_picks_up_q_power() {
    let t = arrow_torus(2, 1);
    assert_eq!(el(&t, "b*a"), el(&t, "q^-2*a*b"));
    assert_eq!(el(&t, "a*b*a*b"), el(&t, "q^-2*a^2*b^2"));
}

#[test]
fn unit_and_zero() {
    let t = arrow_torus(2, 2);
    let x = el(&t, "a^(1/2) - 3*q*b");
    assert_eq!(&x * &TorusElement::one(&t), x);
    assert!((&x * &TorusElement::zero(&t)).is_zero());
    assert!(TorusElement::one(&t).is_central());
    assert!(TorusElement::zero(&t).is_central());
}

#[test]
fn weyl_order_single_and_symmetric() {
    let t = arrow_torus(2, 2);
    let w = weyl_order(&t, &[(0, rint(1))]);
    assert_eq!(w, el(&t, "a"));
    let ab = weyl_order(&t, &[(0, rat(1, 2)), (1, rat(1, 2))]);
    let ba = weyl_order(&t, &[(1, rat(1, 2)), (0, rat(1, 2))]);
    assert_eq!(ab, ba);
}

#[test]
fn inverse_and_roots() {
    let t = arrow_torus(2, 3);
    let x = el(&t, "q^(1/3)*b*a^2");
    assert!((&x * &x.try_inverse().unwrap()).is_one());
    let r = x.mono_pow(rat(1, 3)).unwrap();
    assert_eq!(r.pow(3).unwrap(), x);
}

#[test]
fn division_recovers_factor() {
    let t = arrow_torus(2, 1);
    let g = el(&t, "1 + q*a - b^-1*a");
    let d = el(&t, "1 + q^3*b");
    let f = &g * &d;
    assert_eq!(f.div_exact_right(&d).unwrap(), g);
    let f2 = &d * &g;
    assert_eq!(f2.div_exact_left(&d).unwrap(), g);
    assert!(el(&t, "1 + a").div_exact_right(&d).is_none());
}

#[test]
fn display_round_trips() {
    let t = arrow_torus(1, 6);
    let x = el(&t, "(q^(1/2) - 2/3)*a^(-1/2)*b + 5 - q^-1*b^(1/3)");
    let s = x.to_string();
    assert_eq!(parse_element(&t, &s).unwrap(), x, "{s}");
}

#[test]
fn json_round_trip_and_root_check() {
    let t = arrow_torus(1, 2);
    let x = el(&t, "q^(1/8)*a^(1/2) - b");
    let v = element_to_json(&x);
    assert_eq!(element_from_json(&t, &v).unwrap(), x);
    let t1 = arrow_torus(1, 1);
    assert!(element_from_json(&t1, &v).is_err());
}

#[test]
fn root_extend_keeps_torus_for_one() {
    let t = arrow_torus(2, 1);
    assert!(Arc::ptr_eq(&root_extend(&t, 1), &t));
    let t2 = root_extend(&t, 2);
    assert_eq!(t2.root_order(), 2);
    assert!(t2.admits(&Monomial(vec![rat(1, 2), rint(0)])));
}

#[test]
fn quiver_json_round_trip() {
    let mut b = QuiverBuilder::new();
    b.vertex("x", true).vertex("y", false).vertex("z", false).arrow2("x", "y", 1).arrow2("z", "y", 2);
    let q = b.build().unwrap();
    let (back, n) = Quiver::from_json(&q.to_json(3)).unwrap();
    assert_eq!(back, q);
    assert_eq!(n, 3);
}

#[test]
fn substitution_checks_commutation() {
    let t = arrow_torus(2, 1);
    let swap = MonomialHom::new(&t, &t, &[("a", el(&t, "b")), ("b", el(&t, "a"))]);
    assert!(matches!(swap, Err(crate::Error::CommutationViolation(_, _))));
    let inv = MonomialHom::new(&t, &t, &[("a", el(&t, "a^-1")), ("b", el(&t, "b^-1"))]).unwrap();
    let x = el(&t, "a*b + q");
    assert_eq!(inv.apply(&x).unwrap(), el(&t, "a^-1*b^-1 + q"));
}
