use std::sync::Arc;

use num::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::qtorus::{parse_element, Monomial, MonomialHom, QPowerPoly, Rat, Torus, TorusElement};

/// An oriented 4-cycle `Z1 → Z2 → Z3 → Z4 → Z1` whose vertex `erase`
/// (`Z2` or `Z4`) is eliminated by setting a central monomial to `value`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct SeizureSite {
    pub cycle: [String; 4],
    pub erase: String,
    /// Ordered product `Z2·Z4` or `Z1·Z2·Z3·Z4` (any vertex order).
    pub monomial: String,
    pub value: String,
}

/// The reduced torus together with the surjection onto it.
#[derive(Clone, Debug)]
pub struct Seizure {
    pub site: SeizureSite,
    pub hom: MonomialHom,
}

impl Seizure {
    pub fn target(&self) -> &Arc<Torus> {
        self.hom.target()
    }

    pub fn apply(&self, x: &TorusElement) -> Result<TorusElement> {
        self.hom.apply(x)
    }
}

fn count_degrees(torus: &Torus, v: usize) -> (usize, usize) {
    let q = torus.quiver();
    let out = (0..q.len()).filter(|&j| q.w2(v, j) > 0).count();
    let inn = (0..q.len()).filter(|&j| q.w2(j, v) > 0).count();
    (inn, out)
}

/// Validates `site` and builds `X_Q → X_{Q∖{erase}}`, sending the erased
/// generator to the value forced by the monomial relation.
pub fn seize(torus: &Arc<Torus>, site: &SeizureSite) -> Result<Seizure> {
    let q = torus.quiver();
    let idx: Vec<usize> = site.cycle.iter().map(|n| torus.index(n)).collect::<Result<_>>()?;
    let forward = (0..4).all(|i| q.w2(idx[i], idx[(i + 1) % 4]) > 0);
    let backward = (0..4).all(|i| q.w2(idx[(i + 1) % 4], idx[i]) > 0);
    if !forward && !backward {
        return Err(Error::Seizure(format!("{:?} is not an oriented 4-cycle", site.cycle)));
    }
    for &v in &[idx[1], idx[3]] {
        if count_degrees(torus, v) != (1, 1) {
            return Err(Error::Seizure(format!("{} must have exactly one incoming and one outgoing arrow", q.name(v))));
        }
    }
    let v = torus.index(&site.erase)?;
    if v != idx[1] && v != idx[3] {
        return Err(Error::Seizure(format!("{} is neither Z2 nor Z4 of the cycle", site.erase)));
    }
    let m = parse_element(torus, &site.monomial)?;
    let (e, c) = m.single().filter(|_| m.is_monomial()).ok_or_else(|| Error::Seizure(format!("{} is not a monomial", site.monomial)))?;
    let (c, cc) = c.single().expect("monomial coefficient");
    if !cc.is_one() {
        return Err(Error::Seizure(format!("{} has a non-unit coefficient", site.monomial)));
    }
    let n = torus.len();
    let ones = |vs: &[usize]| {
        let mut x = Monomial::one(n);
        for &i in vs {
            x.0[i] = Rat::one();
        }
        x
    };
    if *e != ones(&[idx[1], idx[3]]) && *e != ones(&idx) {
        return Err(Error::Seizure(format!("{} is neither Z2·Z4 nor Z1·Z2·Z3·Z4", site.monomial)));
    }
    if !m.is_central() {
        return Err(Error::Seizure(format!("{} is not central", site.monomial)));
    }
    let value = parse_element(torus, &site.value)?
        .as_scalar()
        .filter(|s| s.len() == 1)
        .ok_or_else(|| Error::Seizure(format!("value {} is not a scalar monomial", site.value)))?;
    let reduced = Torus::new(q.without(&[&site.erase])?, torus.root_order());
    // rest·Z_v = q^y·Z^e, hence Z_v = value·q^{y−c}·rest^{−1}.
    let mut rest = e.clone();
    rest.0[v] = Rat::zero();
    let y = torus.reorder_shift(&rest, &Monomial::unit(n, v, Rat::one()));
    let mut restricted = Monomial::one(reduced.len());
    for (i, x) in rest.0.iter().enumerate() {
        if !x.is_zero() {
            restricted.0[reduced.index(q.name(i))?] = *x;
        }
    }
    let rest_el = TorusElement::term(&reduced, restricted, QPowerPoly::one());
    let img = rest_el.try_inverse()?.scale(&value).shift_q(y - c);
    let hom = MonomialHom::new(torus, &reduced, &[(site.erase.as_str(), img)])?;
    Ok(Seizure { site: site.clone(), hom })
}
