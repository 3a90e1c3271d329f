use super::*;
use crate::qtorus::{rat, QuiverBuilder};

fn el(t: &Arc<Torus>, s: &str) -> TorusElement {
    parse_element(t, s).unwrap()
}

fn loc(t: &Arc<Torus>, s: &str) -> LocalizedElement {
    LocalizedElement::from_element(el(t, s))
}

fn inv(t: &Arc<Torus>, s: &str) -> LocalizedElement {
    invert_binomial(&el(t, s)).unwrap()
}

fn q1_chart() -> Arc<Torus> {
    let e6 = gdaha::build_e6().unwrap();
    let data = MatchData::builtin();
    let reduced = reduce_e6(&e6, &data.seizures).unwrap();
    Torus::new(reduced.torus.quiver().clone(), 6)
}

fn rhombus() -> Arc<Torus> {
    let mut b = QuiverBuilder::new();
    for v in ["Z1", "Z2", "Z3", "Z4"] {
        b.vertex(v, false);
    }
    b.arrow2("Z1", "Z2", 2).arrow2("Z2", "Z3", 2).arrow2("Z3", "Z4", 2).arrow2("Z4", "Z1", 2);
    Torus::new(b.build().unwrap(), 1)
}

fn site(cycle: [&str; 4], erase: &str, monomial: &str) -> SeizureSite {
    SeizureSite {
        cycle: cycle.map(String::from),
        erase: erase.into(),
        monomial: monomial.into(),
        value: "1".into(),
    }
}

#[test]
fn binomial_cancels_itself() {
    let t = rhombus();
    let x = loc(&t, "1+q*Z1").mul(&inv(&t, "1+q*Z1")).unwrap();
    assert!(x.to_element().unwrap().is_one());
}

#[test]
fn binomial_passes_monomial_with_shift() {
    let t = rhombus();
    let k = t.index("Z2").unwrap();
    let z1 = el(&t, "Z1");
    let left = LocalizedElement::binomial_inverse(&t, k, rat(1, 1), 1).mul(&LocalizedElement::from_element(z1.clone())).unwrap();
    let w = pass_shift(&t, k, z1.single().unwrap().0);
    let right = LocalizedElement::from_element(z1).mul(&LocalizedElement::binomial_inverse(&t, k, rat(1, 1) + w, 1)).unwrap();
    assert!(left.equals(&right).unwrap());
    assert_eq!(left.denominators().keys().next().copied(), Some(rat(1, 1) + w));
    assert_ne!(w, rat(0, 1));
}

#[test]
fn negative_binomial_canonicalized() {
    let t = rhombus();
    let x = inv(&t, "1+q*Z1^-1");
    assert_eq!(x.denominators().keys().copied().collect::<Vec<_>>(), vec![rat(-1, 1)]);
    let back = x.mul(&loc(&t, "1+q*Z1^-1")).unwrap();
    assert!(back.to_element().unwrap().is_one());
    assert!(matches!(invert_binomial(&el(&t, "1+Z1+Z2")), Err(Error::NotInvertible(_))));
}

#[test]
fn u23_chain_simplifies() {
    let t = q1_chart();
    let f = inv(&t, "1+q*b111^-1");
    let a = loc(&t, "-q");
    let b = loc(&t, "-q^(2/3)*C1").mul(&f).unwrap();
    let c = loc(&t, "-q^(5/3)*C1*b111^-1").mul(&f).unwrap();
    let sum = a.add(&b).unwrap().add(&c).unwrap();
    assert!(sum.to_element().unwrap() == el(&t, "-q-q^(2/3)*C1"));
}

#[test]
fn mutation_images_match_print() {
    let t = q1_chart();
    let data = MatchData::builtin();
    let m = Mutation::new(&t, &data.mutation_vertex).unwrap();
    assert!(mutation_matches_print(&m, &data).unwrap());
    let mut bad = data.clone();
    bad.mutation_images.get_mut("C1").unwrap().inverse_factor = Some("1+q^2*b111^-1".into());
    assert!(!mutation_matches_print(&m, &bad).unwrap());
}

#[test]
fn mutation_is_involutive() {
    let t = q1_chart();
    let m1 = Mutation::new(&t, "b111").unwrap();
    let m2 = Mutation::new(m1.source(), "b111").unwrap();
    assert_eq!(m2.source().quiver(), t.quiver());
    let back = Torus::new(m2.source().quiver().clone(), 6);
    let mut cases: Vec<String> = Vec::new();
    for name in t.quiver().names() {
        cases.push(format!("{name}"));
        cases.push(format!("{name}^-1"));
    }
    cases.extend(["t111^(1/3)", "b111^(-2/3)", "C1^(1/3)*Y1^(1/3)", "q*C2^(1/2)*Y2^(1/2)*t111", "1+C1*b111+Y1^-1"].map(String::from));
    for s in &cases {
        let x = el(&back, s);
        let y = m1.apply_localized(&m2.apply(&x).unwrap()).unwrap();
        assert!(y.to_element().unwrap() == el(&t, s), "{s}: {y}");
    }
    let odd = el(&back, "C1^(1/3)");
    assert!(matches!(m2.apply(&odd), Err(Error::Unsupported(_))));
}

#[test]
fn isolated_vertex_only_inverts() {
    let mut b = QuiverBuilder::new();
    b.vertex("a", false).vertex("b", false).vertex("c", false).arrow2("b", "c", 2);
    let t = Torus::new(b.build().unwrap(), 1);
    let m = Mutation::new(&t, "a").unwrap();
    assert_eq!(m.source().quiver(), t.quiver());
    assert!(m.image(0).to_element().unwrap() == el(&t, "a^-1"));
    assert!(m.image(1).to_element().unwrap() == el(&t, "b"));
    assert!(m.image(2).to_element().unwrap() == el(&t, "c"));
}

#[test]
fn frozen_and_heavy_vertices_rejected() {
    let t = q1_chart();
    assert!(matches!(Mutation::new(&t, "t111"), Err(Error::Structural(_))));
    let mut b = QuiverBuilder::new();
    b.vertex("a", false).vertex("b", false).arrow2("a", "b", 1);
    let t = Torus::new(b.build().unwrap(), 1);
    assert!(matches!(Mutation::new(&t, "a"), Err(Error::WeightRange(_))));
}

#[test]
fn mutated_quiver_composes_paths() {
    let t = q1_chart();
    let q = mutate_quiver(t.quiver(), "b111").unwrap();
    let (c1, c2, b) = (q.index("C1").unwrap(), q.index("C2").unwrap(), q.index("b111").unwrap());
    assert_eq!(q.w2(c1, c2), t.quiver().w2(c1, c2) + 2);
    assert_eq!(q.w2(b, c1), 2);
    assert_eq!(mutate_quiver(&q, "b111").unwrap(), *t.quiver());
}

#[test]
fn rhombus_seizure() {
    let t = rhombus();
    let s = seize(&t, &site(["Z1", "Z2", "Z3", "Z4"], "Z4", "Z2*Z4")).unwrap();
    let reduced = s.target().quiver();
    assert_eq!(reduced, &t.quiver().without(&["Z4"]).unwrap());
    let img = s.apply(&el(&t, "Z4^-1")).unwrap();
    assert!(img == el(s.target(), "Z2"));
    let whole = s.apply(&el(&t, "Z1*Z2*Z3*Z4")).unwrap();
    assert!(whole.is_central());
}

#[test]
fn seizure_rejects_bad_sites() {
    let t = rhombus();
    let bad = seize(&t, &site(["Z1", "Z2", "Z3", "Z4"], "Z4", "Z1*Z3"));
    assert!(matches!(bad, Err(Error::Seizure(_))));
    let bad = seize(&t, &site(["Z1", "Z2", "Z3", "Z4"], "Z3", "Z2*Z4"));
    assert!(matches!(bad, Err(Error::Seizure(_))));
    let bad = seize(&t, &site(["Z1", "Z3", "Z2", "Z4"], "Z4", "Z2*Z4"));
    assert!(matches!(bad, Err(Error::Seizure(_))));
    let mut b = QuiverBuilder::new();
    for v in ["Z1", "Z2", "Z3", "Z4", "Z5"] {
        b.vertex(v, false);
    }
    b.arrow2("Z1", "Z2", 2).arrow2("Z2", "Z3", 2).arrow2("Z3", "Z4", 2).arrow2("Z4", "Z1", 2).arrow2("Z5", "Z2", 2);
    let t = Torus::new(b.build().unwrap(), 1);
    let bad = seize(&t, &site(["Z1", "Z2", "Z3", "Z4"], "Z4", "Z2*Z4"));
    assert!(matches!(bad, Err(Error::Seizure(_))));
}

#[test]
fn e6_seizures_reproduce_substitutions() {
    let e6 = gdaha::build_e6().unwrap();
    let data = MatchData::builtin();
    let r = reduce_e6(&e6, &data.seizures).unwrap();
    let mut x = el(&e6.torus, "C3^(1/3)");
    x = r.seizures[0].apply(&x).unwrap();
    assert!(x == el(r.seizures[0].target(), "C1^(-1/3)"));
    let mut y = el(&e6.torus, "Y3^(1/3)");
    for s in &r.seizures {
        y = s.apply(&y.in_torus(s.hom.source()).unwrap()).unwrap();
    }
    assert!(y == el(&r.torus, "C2^(-1/3)*b111^(-1/3)*t111^(-1/3)"));
    assert!(matches!(seize(&e6.torus, &site(["t111", "C1", "b111", "C3"], "C3", "C1*Y1")), Err(Error::Seizure(_))));
}

#[test]
fn reduced_c_matches_print_up_to_gauge() {
    let e6 = gdaha::build_e6().unwrap();
    let data = MatchData::builtin();
    let r = reduce_e6(&e6, &data.seizures).unwrap();
    let c = &r.generators["C"];
    let printed = NCMatrix::from_rows(
        data.c_reduced.iter().map(|row| row.iter().map(|s| el(&r.torus, s)).collect()).collect(),
    )
    .unwrap();
    assert!(c.get(1, 2) == &el(&r.torus, "-1-q^(-1/3)*C1"));
    assert!(!printed.equals(c).unwrap());
    let g = diagonal_gauge(&printed, c).unwrap();
    assert_eq!(g, vec![rat(0, 1), rat(-1, 3), rat(2, 3)]);
    assert!(apply_gauge(c, &g).equals(&printed).unwrap());
    let mut shifted = printed.clone();
    shifted.set(0, 1, shifted.get(0, 1).shift_q(rat(1, 1)));
    assert!(diagonal_gauge(&shifted, c).is_none());
}

#[test]
fn full_match() {
    let r = verify_match();
    println!("{r}");
    assert!(r.passed(), "{r}");
    assert_eq!(r.checks.iter().filter(|c| c.name.contains("↦")).count(), 27);
}

#[test]
fn perturbed_e6_breaks_match() {
    let d4 = gdaha::build_d4().unwrap();
    let data = MatchData::builtin();
    let e6 = gdaha::build_e6().unwrap();
    let r = verify_match_with(&e6.perturbed(0, 1, 2), &d4, &data);
    let failed: Vec<_> = r.failures().iter().map(|c| c.name.clone()).collect();
    assert!(failed.iter().any(|n| n.contains("gauge")), "{failed:?}");
    let r = verify_match_with(&e6.perturbed(1, 2, 0), &d4, &data);
    let failed: Vec<_> = r.failures().iter().map(|c| c.name.clone()).collect();
    assert_eq!(failed, vec!["Lhat[3][1] ↦ Y_I".to_string()]);
}
