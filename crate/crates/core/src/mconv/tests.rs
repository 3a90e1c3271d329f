use super::*;

fn state() -> (GdahaPresentation, PrintedPipeline, ConvolutionState) {
    let p = gdaha::build_d4().unwrap();
    let pr = PrintedPipeline::builtin();
    let c = parse_list(&p.torus, &pr.golden("conjugator")).unwrap();
    let s = run(&p, &c, &pr).unwrap();
    (p, pr, s)
}

fn el(t: &Arc<Torus>, s: &str) -> TorusElement {
    parse_element(t, s).unwrap()
}

#[test]
fn functor_pipeline() {
    let r = verify_functor();
    assert!(r.passed(), "{r}");
}

#[test]
fn rescaled_generators_are_integral() {
    let (_, _, s) = state();
    for k in &s.khat {
        assert!(is_integral(k));
    }
    let t = &s.torus;
    assert!(s.khat[0].get(0, 1) == &el(t, "O1^-1*O2^-1"));
    assert!(s.khat[0].get(1, 0) == &el(t, "-O2"));
}

#[test]
fn diagonal_idempotent() {
    let (_, _, s) = state();
    let t = &s.torus;
    let t2 = el(t, "O1");
    let k = NCMatrix::diagonal(vec![TorusElement::one(t), t2.try_inverse().unwrap()]);
    let (e, eb) = idempotent(&k, &t2).unwrap();
    let want = lift(&NCMatrix::diagonal(vec![TorusElement::zero(t), TorusElement::one(t)]));
    assert!(e.equals(&want).unwrap());
    assert!(eb.add(&e).unwrap().equals(&NCMatrix::identity(2, e.get(0, 0))).unwrap());
}

#[test]
fn degenerate_idempotent_rejected() {
    let (_, _, s) = state();
    let one = TorusElement::one(&s.torus);
    assert!(matches!(idempotent(&s.khat[0], &one), Err(Error::Degenerate(_))));
}

#[test]
fn convolution_block_pattern() {
    let (_, _, s) = state();
    let n1 = &s.n[0];
    let one = TorusElement::one(&s.torus);
    for r in 0..2 {
        for c in 0..2 {
            assert!(n1.get(r, c) == s.khat[0].get(r, c));
            let shift = if r == c { one.clone() } else { TorusElement::zero(&s.torus) };
            assert!(n1.get(r, 2 + c) == &(s.khat[1].get(r, c) - &shift));
            assert!(n1.get(r, 4 + c) == &(s.khat[2].get(r, c) - &shift));
        }
    }
    for r in 2..6 {
        for c in 0..6 {
            assert_eq!(n1.get(r, c).is_one(), r == c);
        }
    }
    let ids = vec![NCMatrix::identity(2, &one); 3];
    assert!(convolution_c(&ids).unwrap().iter().all(|m| m.is_identity()));
}

#[test]
fn eigenvectors_scale_on_the_right() {
    let (_, _, s) = state();
    let t = &s.torus;
    let v = &s.eigenbasis[1];
    assert!(v[0] == el(t, "-1-B2"));
    let m = el(t, "q*O2*B2^-2*G1");
    let w = [&v[0] * &m, &v[1] * &m];
    let lam = s.t2[1].try_inverse().unwrap();
    let kw = matvec(&s.khat[1], &w).unwrap();
    assert!(kw[0] == &w[0] * &lam && kw[1] == &w[1] * &lam);
}

#[test]
fn a_matrix_and_reflections() {
    let (_, pr, s) = state();
    let t = &s.torus;
    assert!(*s.a.get(1, 1) == Fraction::from_element(el(t, "B1^-1")));
    assert!(s.reflections.get(2).get(2, 0) == &el(t, &pr.reflections[2][0]));
    for i in 0..3 {
        for r in 0..3 {
            if r == i {
                continue;
            }
            for c in 0..3 {
                assert_eq!(s.reflections.get(i).get(r, c).is_one(), r == c);
                assert_eq!(s.reflections.get(i).get(r, c).is_zero(), r != c);
            }
        }
    }
    assert!(s.l.get(1, 0) == &el(t, "B1^-1+B1^-1*O2+q^2*O2*B2"));
}

#[test]
fn printed_third_conjugator_is_not_a_unit() {
    let p = gdaha::build_d4().unwrap();
    let pr = PrintedPipeline::builtin();
    let c = parse_list(&p.torus, &pr.conjugator).unwrap();
    assert!(matches!(run(&p, &c, &pr), Err(Error::NotInvertible(_))));
}

#[test]
fn shifted_pihat_parameter_fails() {
    let (_, pr, s) = state();
    let ext = &s.extended;
    let mut ps = parse_list(ext, &pr.hecke.pihat).unwrap();
    assert!(hecke_check(&s.pihat, &ps).unwrap());
    ps[2] = ps[2].shift_q(Rat::from_integer(-2));
    assert!(!hecke_check(&s.pihat, &ps).unwrap());
}

#[test]
fn perturbed_print_fails() {
    let p = gdaha::build_d4().unwrap();
    let mut pr = PrintedPipeline::builtin();
    pr.l[2][1] = format!("{}+1", pr.l[2][1]);
    let r = verify_functor_with(&p, &pr);
    assert_eq!(r.failures().len(), 1, "{r}");
    assert!(r.failures()[0].name.starts_with("L matches"));
}

#[test]
fn perturbed_generator_fails() {
    let p = gdaha::build_d4().unwrap().perturbed(0, 0, 0);
    let r = verify_functor_with(&p, &PrintedPipeline::builtin());
    assert!(!r.passed());
}

#[test]
fn fraction_inverse() {
    let (_, _, s) = state();
    let t = &s.torus;
    let x = Fraction::new(el(t, "O2^-1-O1^-1*O2^-1"), el(t, "1+B1")).unwrap();
    let xi = x.try_inverse().unwrap();
    assert!(x.mul(&xi) == x.one_like());
    assert!(xi.mul(&x) == x.one_like());
    assert!(Fraction::from_element(el(t, "1+O2")).try_inverse().is_none());
    assert!(Fraction::new(el(t, "O2"), el(t, "O2")).is_err());
}
