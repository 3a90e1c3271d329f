use super::laurent::{qi, qr};
use super::*;
use crate::error::Error;
use rand::SeedableRng;

fn sample(seed: u64) -> (RootParams, Params) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let rp = RootParams::random(&mut rng);
    let p = rp.params().unwrap();
    (rp, p)
}

fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs.iter().map(|(k, c)| (*k, qi(*c))))
}

#[test]
fn exact_division() {
    let f = lp(&[(-1, 1), (1, -1)]).mul(&lp(&[(0, 2), (3, 5)]));
    assert_eq!(f.div_exact(&lp(&[(0, 2), (3, 5)])).unwrap(), lp(&[(-1, 1), (1, -1)]));
    assert!(matches!(lp(&[(0, 1), (2, 1)]).div_exact(&lp(&[(0, 1), (1, 1)])), Err(Error::InexactDivision(_))));
    assert!(LaurentPoly::zero().div_exact(&lp(&[(1, 1)])).unwrap().is_zero());
}

#[test]
fn substitutions() {
    let q = qr(3, 2);
    let f = lp(&[(2, 1), (-1, 4)]);
    assert_eq!(f.invert_z(), lp(&[(-2, 1), (1, 4)]));
    assert_eq!(f.reflect_q(&q).reflect_q(&q), f);
    assert_eq!(LaurentPoly::z(1).reflect_q(&q), LaurentPoly::monomial(-1, q));
}

#[test]
fn t1_on_one_is_minus_ab() {
    let (_, p) = sample(3);
    let r = op_t1(&p).apply(&LaurentPoly::one()).unwrap();
    assert_eq!(r, LaurentPoly::constant(-(&p.a * &p.b)));
}

#[test]
fn z_shifts_degree() {
    assert_eq!(op_z().apply(&LaurentPoly::z(3)).unwrap(), LaurentPoly::z(4));
}

#[test]
fn t1_quadratic_relation() {
    let (_, p) = sample(4);
    let t1 = op_t1(&p);
    let ab = &p.a * &p.b;
    for k in -6..=6 {
        let f = LaurentPoly::z(k);
        let g = t1.apply(&f).unwrap().add(&f);
        let h = t1.apply(&g).unwrap().add(&g.scale(&ab));
        assert!(h.is_zero(), "z^{k}");
    }
}

#[test]
fn predicates() {
    let (_, p) = sample(5);
    let sym = lp(&[(1, 1), (-1, 1)]);
    assert_eq!(eigenspace_predicates(&p, &sym), (true, false, false));
    let bz1 = LaurentPoly::linear(-qi(1), p.b.clone());
    assert_eq!(eigenspace_predicates(&p, &bz1.mul(&sym)), (false, false, true));
    let symq = LaurentPoly::z(1).add(&LaurentPoly::monomial(-1, p.q.clone()));
    assert_eq!(eigenspace_predicates(&p, &symq), (false, true, false));
}

#[test]
fn l_on_first_unit() {
    let (_, p) = sample(6);
    let cf = closed_forms(&p, Transcription::Corrected);
    let v: Triple = [LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero()];
    let out = cf.l.apply(&v).unwrap();
    assert_eq!(out[0], LaurentPoly::constant(&p.a * &p.b));
    assert!(in_e_of_v(&p, &out));
}

#[test]
fn u_on_third_unit() {
    // (a−z) − z(az−1) = a(1−z²), so the second component is −a(cd−q)(bz−1)/((a−b)q).
    let (_, p) = sample(7);
    let cf = closed_forms(&p, Transcription::Corrected);
    let v: Triple = [LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one()];
    let out = cf.u.apply(&v).unwrap();
    let k = -(&p.c * &p.d - &p.q) * &p.a / ((&p.a - &p.b) * &p.q);
    assert_eq!(out[1], LaurentPoly::linear(-k.clone(), &k * &p.b));
    assert_eq!(out[2], LaurentPoly::one());
}

#[test]
fn corrected_closed_forms_match_derived() {
    let (_, p) = sample(1);
    let basis = spanning_triples(&p, 4);
    assert!(verify::closed_form_discrepancies(&p, Transcription::Corrected, &basis).is_empty());
    assert_eq!(verify::closed_form_discrepancies(&p, Transcription::Verbatim, &basis), verify::VERBATIM_DISCREPANCIES);
}

#[test]
fn degenerate_parameters_rejected() {
    let one = qi(1);
    assert!(matches!(Params::new(one.clone(), one.clone(), qi(2), qi(3), qi(5)), Err(Error::Degenerate(_))));
    assert!(matches!(Params::new(qi(2), qi(3), qi(5), qi(7), one), Err(Error::Degenerate(_))));
}

#[test]
fn inversion_formulae_round_trip() {
    assert!(inversion_round_trip());
}

#[test]
fn rescaled_parameters_are_consistent() {
    let (rp, _) = sample(8);
    let e6 = rp.e6_parameters();
    let t = |i| rp.t(i);
    // t̃₂⁽¹⁾³ = t₁⁻⁴t₂²t₃², t̃₃⁽²⁾⁶ = q·(t₁t₂t₃)²·t₄⁶
    assert_eq!(num::pow(e6[0].clone(), 3), num::pow(t(0).recip(), 4) * t(1) * t(1) * t(2) * t(2));
    let t123 = t(0) * t(1) * t(2);
    assert_eq!(num::pow(e6[3].clone(), 6), rp.q() * &t123 * &t123 * num::pow(t(3), 6));
}

#[test]
fn full_suite() {
    let r = verify_basic_rep(4, 2, 11);
    println!("{r}");
    assert!(r.passed(), "{r}");
}

#[test]
fn small_degree_rejected() {
    assert!(!verify_basic_rep(2, 1, 0).passed());
}
