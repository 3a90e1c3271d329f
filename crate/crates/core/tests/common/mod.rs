//! Seeded randomized property suites shared by the property and acceptance
//! targets. Every suite runs `CASES` exact cases from a fixed seed.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use qtk_core::cluster::{seize, Mutation, SeizureSite};
use qtk_core::qtorus::{
    commutation_exponent, crat, parse_element, rat, substitute, weyl_monomial, weyl_order, Monomial, MonomialHom, QPowerPoly,
    Quiver, QuiverBuilder, Rat, Torus, TorusElement,
};

pub const CASES: u32 = 500;
pub const SEED: u64 = 0x5eed_2024;

fn runner(salt: u64) -> TestRunner {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&SEED.to_le_bytes());
    seed[8..16].copy_from_slice(&salt.to_le_bytes());
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &seed))
}

fn lift<T>(r: qtk_core::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// Four vertices with half-integral arrow weights, square roots adjoined.
pub fn kernel_torus() -> Arc<Torus> {
    let mut b = QuiverBuilder::new();
    for v in ["a", "b", "c", "d"] {
        b.vertex(v, false);
    }
    b.arrow2("a", "b", 2).arrow2("b", "c", 1).arrow2("c", "d", 2).arrow2("d", "a", 1).arrow2("a", "c", 4);
    Torus::new(b.build().unwrap(), 2)
}

/// The oriented 4-cycle `Z1 → Z2 → Z3 → Z4 → Z1`.
pub fn rhombus() -> Arc<Torus> {
    let mut b = QuiverBuilder::new();
    for v in ["Z1", "Z2", "Z3", "Z4"] {
        b.vertex(v, false);
    }
    b.arrow2("Z1", "Z2", 2).arrow2("Z2", "Z3", 2).arrow2("Z3", "Z4", 2).arrow2("Z4", "Z1", 2);
    Torus::new(b.build().unwrap(), 1)
}

fn monomial(n: usize, den: i64, span: i64) -> impl Strategy<Value = Monomial> {
    vec(-span..=span, n).prop_map(move |es| Monomial(es.into_iter().map(|e| rat(e, den)).collect()))
}

fn coefficient(den: i64) -> impl Strategy<Value = QPowerPoly> {
    (-4i64..=4, prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=2)
        .prop_map(move |(r, c, d)| QPowerPoly::term(rat(r, den), crat(c, d)))
}

/// Sums of up to `terms` random terms.
pub fn element(t: Arc<Torus>, den: i64, span: i64, terms: usize) -> impl Strategy<Value = TorusElement> {
    let n = t.len();
    vec((monomial(n, den, span), coefficient(den)), 1..=terms).prop_map(move |ts| TorusElement::from_terms(&t, ts))
}

/// Rebuilding from split, reordered, duplicated terms, and reparsing the
/// printed form, both land on the same normal form.
pub fn normal_form_idempotence() -> Result<(), String> {
    let t = kernel_torus();
    let s = element(t.clone(), 2, 4, 4);
    runner(1)
        .run(&s, |x| {
            let half = crat(1, 2);
            let split = x.terms().iter().rev().flat_map(|(m, c)| [(m.clone(), c.scale(&half)), (m.clone(), c.scale(&half))]);
            let again = TorusElement::from_terms(&t, split);
            prop_assert_eq!(&again, &x);
            prop_assert_eq!(&TorusElement::from_terms(&t, again.terms().clone()), &again);
            let reparsed = lift(parse_element(&t, &x.to_string()))?;
            prop_assert_eq!(&reparsed, &x, "printed as {}", x);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Associativity, both distributive laws, unit and zero on random triples.
pub fn ring_axioms() -> Result<(), String> {
    let t = kernel_torus();
    let e = || element(t.clone(), 2, 3, 3);
    let one = TorusElement::one(&t);
    let zero = TorusElement::zero(&t);
    runner(2)
        .run(&(e(), e(), e()), |(x, y, z)| {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&(&one * &x), &x);
            prop_assert_eq!(&(&x * &one), &x);
            prop_assert_eq!(&(&x + &zero), &x);
            prop_assert!((&x * &zero).is_zero());
            prop_assert!(lift(x.try_sub(&x))?.is_zero());
            prop_assert_eq!(&x + &y, &y + &x);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `ord` is invariant under permuting the word, `ord(Z) = Z`, and monomials
/// q-commute by `b·a = q^{c(a,b)}·a·b`.
pub fn weyl_permutation_invariance() -> Result<(), String> {
    let t = kernel_torus();
    let n = t.len();
    let word = vec((0..n, -4i64..=4), 1..=6)
        .prop_map(|w| w.into_iter().map(|(v, e)| (v, rat(e, 2))).collect::<Vec<(usize, Rat)>>());
    let s = (word.prop_flat_map(|w| (Just(w.clone()), Just(w).prop_shuffle())), monomial(n, 2, 4), monomial(n, 2, 4), 0..n);
    runner(3)
        .run(&s, |((w, shuffled), a, b, v)| {
            let ord = weyl_order(&t, &w);
            prop_assert_eq!(&ord, &weyl_order(&t, &shuffled));
            let total = w.iter().fold(Monomial::one(n), |acc, (v, e)| acc.add(&Monomial::unit(n, *v, *e)));
            prop_assert_eq!(&ord, &weyl_monomial(&t, total));
            let z = TorusElement::term(&t, Monomial::unit(n, v, rat(1, 1)), QPowerPoly::one());
            prop_assert_eq!(&weyl_order(&t, &[(v, rat(1, 1))]), &z);
            let za = TorusElement::term(&t, a.clone(), QPowerPoly::one());
            let zb = TorusElement::term(&t, b.clone(), QPowerPoly::one());
            let c = lift(commutation_exponent(&t, &a, &b))?;
            prop_assert!(lift((&zb * &za).try_sub(&(&za * &zb).shift_q(c)))?.is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `Z_i ↦ q^{r_i}·Z_i·(Z1Z3)^{m_i}·(Z2Z4)^{n_i}` preserves the commutation
/// form, and substitution is multiplicative and additive.
pub fn substitution_homomorphy() -> Result<(), String> {
    let t = rhombus();
    let e = || element(t.clone(), 1, 2, 3);
    let hom = vec((-3i64..=3, -2i64..=2, -2i64..=2), 4);
    runner(4)
        .run(&(hom, e(), e()), |(h, x, y)| {
            let names = ["Z1", "Z2", "Z3", "Z4"];
            let assign = names
                .iter()
                .zip(&h)
                .map(|(v, (r, m, k))| Ok((*v, parse_element(&t, &format!("q^{r}*{v}*(Z1*Z3)^{m}*(Z2*Z4)^{k}"))?)))
                .collect::<qtk_core::Result<Vec<_>>>();
            let hom = lift(MonomialHom::new(&t, &t, &lift(assign)?))?;
            let sx = lift(substitute(&hom, &x))?;
            let sy = lift(substitute(&hom, &y))?;
            prop_assert_eq!(lift(substitute(&hom, &(&x * &y)))?, &sx * &sy);
            prop_assert_eq!(lift(substitute(&hom, &(&x + &y)))?, &sx + &sy);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn random_quiver() -> impl Strategy<Value = Quiver> {
    vec(-1i64..=1, 6).prop_map(|ws| {
        let names = ["u", "v", "w", "x"];
        let mut b = QuiverBuilder::new();
        for v in names {
            b.vertex(v, false);
        }
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for ((i, j), w) in pairs.iter().zip(ws) {
            match w {
                1 => b.arrow2(names[*i], names[*j], 2),
                -1 => b.arrow2(names[*j], names[*i], 2),
                _ => &mut b,
            };
        }
        b.build().unwrap()
    })
}

/// `μ_k ∘ μ_k` is the identity on quivers and on random elements.
pub fn mutation_involutivity() -> Result<(), String> {
    let terms = vec((vec(-2i64..=2, 4), coefficient(1)), 1..=3);
    runner(5)
        .run(&(random_quiver(), 0usize..4, terms), |(q, k, ts)| {
            let t = Torus::new(q, 1);
            let name = t.quiver().name(k).to_string();
            let m1 = lift(Mutation::new(&t, &name))?;
            let m2 = lift(Mutation::new(m1.source(), &name))?;
            prop_assert_eq!(m2.source().quiver(), t.quiver());
            let ts: Vec<_> = ts.into_iter().map(|(e, c)| (Monomial(e.into_iter().map(|x| rat(x, 1)).collect()), c)).collect();
            let x = TorusElement::from_terms(m2.source(), ts.clone());
            let back = lift(lift(m1.apply_localized(&lift(m2.apply(&x))?))?.to_element())?;
            prop_assert_eq!(back, TorusElement::from_terms(&t, ts));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// A rhombus with an extra vertex hooked to `Z1`, `Z3`; seizing `Z2` or `Z4`
/// yields the subquiver without it and a commutation-preserving surjection.
pub fn seizure_commutation_preservation() -> Result<(), String> {
    let s = (-1i64..=1, -1i64..=1, any::<bool>(), any::<bool>(), -2i64..=2, monomial(5, 1, 2), monomial(5, 1, 2));
    runner(6)
        .run(&s, |(w1, w3, erase_second, full, r, a, b)| {
            let mut qb = QuiverBuilder::new();
            for v in ["Z1", "Z2", "Z3", "Z4", "E"] {
                qb.vertex(v, false);
            }
            qb.arrow2("Z1", "Z2", 2).arrow2("Z2", "Z3", 2).arrow2("Z3", "Z4", 2).arrow2("Z4", "Z1", 2);
            for (v, w) in [("Z1", w1), ("Z3", w3)] {
                match w {
                    1 => qb.arrow2("E", v, 2),
                    -1 => qb.arrow2(v, "E", 2),
                    _ => &mut qb,
                };
            }
            let t = Torus::new(qb.build().unwrap(), 1);
            let full = full && w1 + w3 == 0;
            let erase = if erase_second { "Z2" } else { "Z4" };
            let site = SeizureSite {
                cycle: ["Z1", "Z2", "Z3", "Z4"].map(String::from),
                erase: erase.into(),
                monomial: if full { "Z1*Z2*Z3*Z4" } else { "Z2*Z4" }.into(),
                value: format!("q^{r}"),
            };
            let sz = lift(seize(&t, &site))?;
            prop_assert_eq!(sz.target().quiver(), &lift(t.quiver().without(&[erase]))?);
            let za = TorusElement::term(&t, a.clone(), QPowerPoly::one());
            let zb = TorusElement::term(&t, b.clone(), QPowerPoly::one());
            let (sa, sb) = (lift(sz.apply(&za))?, lift(sz.apply(&zb))?);
            let c = lift(commutation_exponent(&t, &a, &b))?;
            prop_assert!(lift((&sb * &sa).try_sub(&(&sa * &sb).shift_q(c)))?.is_zero());
            prop_assert_eq!(lift(sz.apply(&(&za * &zb)))?, &sa * &sb);
            let rel = lift(parse_element(&t, &site.monomial))?;
            prop_assert_eq!(lift(sz.apply(&rel))?, lift(parse_element(sz.target(), &site.value))?);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub const SUITES: [(&str, fn() -> Result<(), String>); 6] = [
    ("normal-form idempotence", normal_form_idempotence),
    ("ring axioms", ring_axioms),
    ("Weyl permutation invariance", weyl_permutation_invariance),
    ("substitution homomorphy", substitution_homomorphy),
    ("mutation involutivity", mutation_involutivity),
    ("seizure commutation preservation", seizure_commutation_preservation),
];
