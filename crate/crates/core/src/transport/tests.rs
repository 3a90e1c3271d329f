use super::*;
use crate::ncmat::NCMatrix;
use crate::qtorus::{parse_element, TorusElement};

fn golden(chart: &TriangleChart, rows: &[&[&str]]) -> NCMatrix<TorusElement> {
    let t = chart.torus();
    NCMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_element(t, s).unwrap()).collect()).collect()).unwrap()
}

#[test]
fn quantum_t1_rank2_golden() {
    let c = TriangleChart::new(2, "Z").unwrap();
    let g = golden(
        &c,
        &[&["-Z101^(1/2)*Z110^(-1/2)", "-q^(1/2)*Z101^(1/2)*Z110^(1/2)"], &["q^(-1/2)*Z101^(-1/2)*Z110^(-1/2)", "0"]],
    );
    assert!(c.transport_quantum(1).unwrap().equals(&g).unwrap());
}

#[test]
fn quantum_t1_rank3_golden() {
    let c = TriangleChart::new(3, "Z").unwrap();
    let g = golden(
        &c,
        &[
            &[
                "q^(5/9)*Z111^(-1/3)*Z102^(2/3)*Z210^(-2/3)*Z201^(1/3)*Z120^(-1/3)",
                "q^(13/18)*(Z111^(-1/3)+q^-1*Z111^(2/3))*Z102^(2/3)*Z210^(1/3)*Z201^(1/3)*Z120^(-1/3)",
                "q^(2/9)*Z111^(2/3)*Z102^(2/3)*Z210^(1/3)*Z201^(1/3)*Z120^(2/3)",
            ],
            &[
                "-q^(-11/18)*Z111^(-1/3)*Z102^(-1/3)*Z210^(-2/3)*Z201^(1/3)*Z120^(-1/3)",
                "-q^(-4/9)*Z111^(-1/3)*Z102^(-1/3)*Z210^(1/3)*Z201^(1/3)*Z120^(-1/3)",
                "0",
            ],
            &["q^(-19/9)*Z111^(-1/3)*Z102^(-1/3)*Z210^(-2/3)*Z201^(-2/3)*Z120^(-1/3)", "0", "0"],
        ],
    );
    let t = c.transport_quantum(1).unwrap();
    assert!(t.equals(&g).unwrap(), "{t}");
}

#[test]
fn classical_groupoid_relation() {
    for n in 2..=5 {
        let c = TriangleChart::new(n, "Z").unwrap();
        for i in 1..=3 {
            let prod = NCMatrix::product(&[
                c.transport_classical(i).unwrap(),
                c.transport_classical(i % 3 + 1).unwrap(),
                c.transport_classical((i % 3 + 1) % 3 + 1).unwrap(),
            ])
            .unwrap();
            assert!(prod.is_identity(), "n={n} classical cyclic product from T{i}");
        }
    }
}

#[test]
fn quantum_groupoid_relation() {
    for n in 2..=3 {
        let c = TriangleChart::new(n, "Z").unwrap();
        for i in 1..=3 {
            let t = c.transport_quantum(i).unwrap();
            let inv = c.transport_quantum_inverse_in(c.torus(), i).unwrap();
            assert!(t.mul(&inv).unwrap().is_identity(), "n={n} T{i}·T{i}⁻¹");
            assert!(inv.mul(&t).unwrap().is_identity(), "n={n} T{i}⁻¹·T{i}");
        }
    }
}

#[test]
fn sigma_cyclicity() {
    for n in 2..=4 {
        let c = TriangleChart::new(n, "Z").unwrap();
        let t = c.torus();
        let t1 = c.transport_classical(1).unwrap();
        let ct = t1.get(0, 0).torus().clone();
        for (idx, k) in [(2usize, 1usize), (3, 2)] {
            let names: Vec<(String, TorusElement)> = c
                .tessellation()
                .vertices()
                .into_iter()
                .map(|v| {
                    let mut w = v;
                    for _ in 0..k {
                        w = rotate(w, 2);
                    }
                    (c.name(v), TorusElement::var(&ct, &c.name(w), 1.into()).unwrap())
                })
                .collect();
            let assign: Vec<(&str, TorusElement)> = names.iter().map(|(a, b)| (a.as_str(), b.clone())).collect();
            let hom = crate::qtorus::MonomialHom::new(&ct, &ct, &assign).unwrap();
            let permuted = t1.try_map(|x| hom.apply(x)).unwrap();
            assert!(permuted.equals(&c.transport_classical(idx).unwrap()).unwrap(), "n={n} T{idx}");
        }
        let _ = t;
    }
}

#[test]
fn transport_word_uses_each_interior_vertex_once() {
    for n in 2..=7 {
        let tess = Tessellation::new(n).unwrap();
        let mut inner: Vec<Label> = Vec::new();
        let mut ls = Vec::new();
        for b in transport_word(n, 1).unwrap() {
            match b {
                Block::H(_, v) if v.iter().all(|&x| x > 0) => inner.push(v),
                Block::L(k) => ls.push(k),
                _ => {}
            }
        }
        inner.sort();
        let mut expected: Vec<Label> = tess.vertices().into_iter().filter(|v| v.iter().all(|&x| x > 0)).collect();
        expected.sort();
        assert_eq!(inner, expected, "n={n}");
        assert_eq!(ls.len(), n * (n - 1) / 2, "n={n}");
    }
}

#[test]
fn rotation_is_cyclic() {
    let v = [3, 1, 0];
    assert_eq!(rotate(v, 2), [0, 3, 1]);
    assert_eq!(rotate(v, 3), [1, 0, 3]);
    assert_eq!(rotate(rotate(rotate(v, 2), 2), 2), v);
    assert_eq!(rotate(rotate(v, 2), 3), v);
}

#[test]
fn transports_avoid_their_unused_side() {
    for n in 2..=5 {
        let c = TriangleChart::new(n, "Z").unwrap();
        let t = c.torus();
        for i in 1..=3 {
            let (entry, exit) = transport_sides(i).unwrap();
            let unused = [Side::S12, Side::S23, Side::S31].into_iter().find(|s| *s != entry && *s != exit).unwrap();
            let idx: Vec<usize> = c.side_names(unused).iter().map(|v| t.index(v).unwrap()).collect();
            let m = c.transport_quantum(i).unwrap();
            for x in m.entries() {
                for mono in x.terms().keys() {
                    assert!(idx.iter().all(|&k| mono.0[k] == 0.into()), "n={n} T{i} uses side {unused}");
                }
            }
        }
    }
}

#[test]
fn quiver_counts() {
    for n in 2..=6 {
        let c = TriangleChart::new(n, "Z").unwrap();
        assert_eq!(c.quiver().len(), c.tessellation().fg_count());
        assert_eq!(c.quiver().len(), (n + 4) * (n - 1) / 2);
    }
    let c = TriangleChart::new(3, "Z").unwrap();
    let q = c.quiver();
    let (a, b) = (q.index("Z111").unwrap(), q.index("Z210").unwrap());
    assert_eq!(q.w2(a, b).abs(), 2);
    let (a, b) = (q.index("Z210").unwrap(), q.index("Z120").unwrap());
    assert_eq!(q.w2(a, b).abs(), 1);
}

#[test]
fn two_triangle_amalgamation() {
    let spec = SurfaceSpec {
        name: "square".into(),
        n: 2,
        triangles: vec!["a".into(), "b".into()],
        gluings: vec![Gluing { a: "a:12".into(), b: "b:12".into(), names: vec!["E".into()], self_glued: false }],
        frozen: vec![],
        conjugator: None,
        paths: vec![],
    };
    let s = Surface::new(spec, Mode::Quantum).unwrap();
    let q = s.amalgamated_torus().quiver();
    assert_eq!(q.len(), 5);
    let img = s.amalgamation().image(q.index("E").unwrap());
    assert_eq!(img.to_string(), "a110*b110");
    let e = s.amalgamated_torus().index("E").unwrap();
    for other in ["a101", "a011", "b101", "b011"] {
        assert_ne!(q.w2(e, q.index(other).unwrap()), 0, "E–{other}");
    }
}

#[test]
fn bad_gluings_rejected() {
    let mk = |a: &str, b: &str, self_glued: bool| SurfaceSpec {
        name: "x".into(),
        n: 2,
        triangles: vec!["a".into(), "b".into()],
        gluings: vec![Gluing { a: a.into(), b: b.into(), names: vec!["E".into()], self_glued }],
        frozen: vec![],
        conjugator: None,
        paths: vec![],
    };
    assert!(matches!(Surface::new(mk("a:12", "a:23", false), Mode::Quantum), Err(crate::Error::SelfGluing(_))));
    assert!(matches!(Surface::new(mk("a:12", "c:23", false), Mode::Quantum), Err(crate::Error::InconsistentGluing(_))));
    assert!(Surface::new(mk("a:12", "a:23", true), Mode::Quantum).is_ok());
}

#[test]
fn empty_path_is_identity() {
    let s = Surface::from_json(include_str!("../../data/d4_surface.json"), Mode::Quantum).unwrap();
    assert!(s.compose("1", &[]).unwrap().is_identity());
}

#[test]
fn path_through_unglued_sides_rejected() {
    let s = Surface::from_json(include_str!("../../data/d4_surface.json"), Mode::Quantum).unwrap();
    let w: Vec<String> = ["T1(c)", "T1(c)"].iter().map(|x| x.to_string()).collect();
    assert!(s.compose("1", &w).is_err());
}

#[test]
fn step_parsing() {
    assert_eq!(Step::parse("S").unwrap(), Step::S);
    assert_eq!(Step::parse("T2(r)^-1").unwrap(), Step::T { index: 2, triangle: "r".into(), inverse: true });
    assert!(Step::parse("T4(r)").is_err());
    assert!(Step::parse("T1r").is_err());
}


#[test]
fn transport_suite_passes() {
    let r = verify_transport();
    assert!(r.passed(), "{r}");
    assert!(verify_dims().passed());
}

#[test]
fn perturbed_golden_entry_fails() {
    let mut g = TransportGolden::builtin();
    g.quantum_t1.get_mut(&3).unwrap()[0][1] = "q^(13/18)*(Z111^(-1/3)+q^-2*Z111^(2/3))*Z102^(2/3)*Z210^(1/3)*Z201^(1/3)*Z120^(-1/3)".into();
    let r = verify_transport_with(&g);
    let failed: Vec<_> = r.failures().iter().map(|c| (c.name.clone(), c.detail.clone())).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].1.as_deref(), Some("differs at [1][2]"));
}
