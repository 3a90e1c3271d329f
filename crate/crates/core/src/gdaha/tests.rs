use super::*;

#[test]
fn e6_full() {
    let r = verify(GdahaType::E6, E6_SURFACE, &ClosedForms::builtin(GdahaType::E6));
    println!("{r}");
    assert!(r.passed());
}

#[test]
fn d4_full() {
    let r = verify(GdahaType::D4, D4_SURFACE, &ClosedForms::builtin(GdahaType::D4));
    println!("{r}");
    assert!(r.passed(), "{r}");
}

#[test]
fn hecke_inverse_inverts_full_generators() {
    let p = build_d4().unwrap();
    for (m, ps) in p.generators.iter().zip(&p.hecke) {
        let inv = hecke_inverse(m, ps).unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(m).unwrap().is_identity());
    }
}

#[test]
fn flipped_sign_reports_entry() {
    let mut closed = ClosedForms::builtin(GdahaType::E6);
    let row = &mut closed.generators.get_mut("C").unwrap()[0];
    let e = row[1].clone().unwrap();
    row[1] = Some(format!("-({e})"));
    let r = verify(GdahaType::E6, E6_SURFACE, &closed);
    let failed: Vec<_> = r.failures().iter().map(|c| (c.name.clone(), c.detail.clone().unwrap_or_default())).collect();
    assert!(failed.iter().any(|(n, d)| n.starts_with("C from factorization") && d.starts_with("(1,2)")), "{failed:?}");
}

#[test]
fn perturbed_d4_generator_breaks_relations() {
    let p = build_d4().unwrap().perturbed(1, 0, 0);
    let r = verify_presentation(&p);
    assert!(!r.passed());
    let cl = compare_closed_forms(&p, &ClosedForms::builtin(GdahaType::D4));
    assert!(!cl.passed());
}
