use std::sync::Arc;

use num::integer::Integer;
use num::{One, Zero};

use super::localized::{binomial, invert_binomial, LocalizedElement};
use crate::error::{Error, Result};
use crate::qtorus::{Monomial, QPowerPoly, Quiver, QuiverBuilder, Rat, Torus, TorusElement};

/// Quiver mutation at `k`: reverses arrows at `k` and adds `i → j` for
/// every path `i → k → j`. Only full arrows (`|2w| ∈ {0, 2}`) may touch `k`.
pub fn mutate_quiver(q: &Quiver, k: &str) -> Result<Quiver> {
    let kk = q.index(k).ok_or_else(|| Error::Structural(format!("unknown vertex {k}")))?;
    if q.is_frozen(kk) {
        return Err(Error::Structural(format!("cannot mutate at frozen vertex {k}")));
    }
    let n = q.len();
    for i in 0..n {
        if !matches!(q.w2(i, kk).abs(), 0 | 2) {
            return Err(Error::WeightRange(format!("{}–{k}", q.name(i))));
        }
    }
    let mut b = QuiverBuilder::new();
    for i in 0..n {
        b.vertex(q.name(i), q.is_frozen(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            let w = if i == kk || j == kk {
                -q.w2(i, j)
            } else {
                let (a, c) = (q.w2(i, kk), q.w2(kk, j));
                q.w2(i, j) + (a.abs() * c + a * c.abs()) / 4
            };
            if w != 0 {
                b.arrow2(q.name(i), q.name(j), w);
            }
        }
    }
    b.build()
}

/// The quantum mutation `μ_k : X_{μ_k Q} → Frac(X_Q)`:
/// * `Z'_k ↦ Z_k^{−1}`;
/// * `Z'_j ↦ Z_j·(1 + q·Z_k^{−1})^{−1}` for arrows `j → k` of `Q`;
/// * `Z'_j ↦ Z_j·(1 + q·Z_k)` for arrows `k → j` of `Q`;
/// * every other generator is fixed.
#[derive(Clone, Debug)]
pub struct Mutation {
    source: Arc<Torus>,
    target: Arc<Torus>,
    k: usize,
    images: Vec<LocalizedElement>,
    inverses: Vec<LocalizedElement>,
    /// `+1` for `(1 + qZ_k)` neighbours, `−1` for inverse-factor neighbours.
    beta: Vec<i64>,
}

impl Mutation {
    /// Mutation of `target` at vertex `k`; the source is the mutated torus
    /// with the same root order.
    pub fn new(target: &Arc<Torus>, k: &str) -> Result<Self> {
        let q = target.quiver();
        let mq = mutate_quiver(q, k)?;
        let source = Torus::new(mq, target.root_order());
        let kk = target.index(k)?;
        let n = target.len();
        let one = Rat::one();
        let mut images = Vec::with_capacity(n);
        let mut inverses = Vec::with_capacity(n);
        let mut beta = vec![0i64; n];
        for j in 0..n {
            let zj = TorusElement::term(target, Monomial::unit(n, j, one), QPowerPoly::one());
            let zj_inv = zj.try_inverse()?;
            let (img, inv) = if j == kk {
                (LocalizedElement::from_element(zj_inv.clone()), LocalizedElement::from_element(zj.clone()))
            } else if q.w2(j, kk) > 0 {
                beta[j] = -1;
                let factor = &TorusElement::one(target)
                    + &TorusElement::term(target, Monomial::unit(n, kk, -one), QPowerPoly::qpow(one));
                let img = LocalizedElement::from_element(zj.clone()).mul(&invert_binomial(&factor)?)?;
                (img, LocalizedElement::from_element(&factor * &zj_inv))
            } else if q.w2(kk, j) > 0 {
                beta[j] = 1;
                let factor = binomial(target, kk, one);
                let img = LocalizedElement::from_element(&zj * &factor);
                let inv = invert_binomial(&factor)?.mul(&LocalizedElement::from_element(zj_inv.clone()))?;
                (img, inv)
            } else {
                (LocalizedElement::from_element(zj.clone()), LocalizedElement::from_element(zj_inv.clone()))
            };
            images.push(img);
            inverses.push(inv);
        }
        Ok(Mutation { source, target: target.clone(), k: kk, images, inverses, beta })
    }

    pub fn source(&self) -> &Arc<Torus> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Torus> {
        &self.target
    }

    pub fn vertex(&self) -> usize {
        self.k
    }

    pub fn image(&self, j: usize) -> &LocalizedElement {
        &self.images[j]
    }

    fn int_power(&self, j: usize, e: i64) -> Result<LocalizedElement> {
        let base = if e >= 0 { &self.images[j] } else { &self.inverses[j] };
        base.pow(e.unsigned_abs() as u32)
    }

    /// Image of the normal-ordered monomial with integer exponents: the
    /// ordered product of generator images.
    fn apply_integral(&self, e: &[i64]) -> Result<LocalizedElement> {
        let mut acc = LocalizedElement::one(&self.target);
        for (j, x) in e.iter().enumerate() {
            if *x != 0 {
                acc = acc.mul(&self.int_power(j, *x)?)?;
            }
        }
        Ok(acc)
    }

    /// Image of the normal-ordered monomial `Z'^e`.
    ///
    /// `e` splits as `r + e₀` with `e₀` integral and `r` orthogonal to the
    /// binomial degrees, so `Z'^r` maps to a monomial whose `d`-th root is
    /// taken through the Weyl form.
    pub fn apply_monomial(&self, e: &Monomial) -> Result<LocalizedElement> {
        if e.0.iter().all(|x| x.is_integer()) {
            let v: Vec<i64> = e.0.iter().map(|x| *x.numer()).collect();
            return self.apply_integral(&v);
        }
        let degree: Rat = e.0.iter().zip(&self.beta).map(|(x, b)| x * Rat::from_integer(*b)).sum();
        if !degree.is_integer() {
            return Err(Error::Unsupported(format!(
                "monomial {} has fractional binomial degree",
                TorusElement::fmt_monomial(&self.source, e)
            )));
        }
        let mut base: Vec<i64> = e.0.iter().map(|x| *x.round().numer()).collect();
        let frac_degree: Rat = e
            .0
            .iter()
            .zip(&base)
            .zip(&self.beta)
            .map(|((x, b), bt)| (x - Rat::from_integer(*b)) * Rat::from_integer(*bt))
            .sum();
        if !frac_degree.is_zero() {
            let j = self.beta.iter().position(|b| *b != 0).expect("nonzero degree needs a neighbour");
            base[j] += frac_degree.to_integer() * self.beta[j];
        }
        let e0 = Monomial(base.iter().map(|x| Rat::from_integer(*x)).collect());
        let r = e.sub(&e0);
        let d = r.0.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let dr: Vec<i64> = r.0.iter().map(|x| (x * Rat::from_integer(d)).to_integer()).collect();
        // ord(Z'^{dr}) = q^{W(dr)}·Z'^{dr}; its image is a monomial.
        let wd = self.source.weyl_exponent(&r.scale(Rat::from_integer(d)));
        let pd = self.apply_integral(&dr)?.scale(&QPowerPoly::qpow(wd)).to_element()?;
        if !pd.is_monomial() {
            return Err(Error::Verification(format!("image {pd} of a degree-zero monomial is not a monomial")));
        }
        let root = pd.mono_pow(Rat::new(1, d))?;
        // Z'^r = q^{−W(r)}·ord(Z'^r), and Z'^r·Z'^{e₀} = q^{c}·Z'^{e}.
        let wr = self.source.weyl_exponent(&r);
        let c = self.source.reorder_shift(&r, &e0);
        let head = LocalizedElement::from_element(root.shift_q(-wr - c));
        head.mul(&self.apply_integral(&base)?)
    }

    /// Image of an element of the mutated torus.
    pub fn apply(&self, x: &TorusElement) -> Result<LocalizedElement> {
        if x.torus().quiver() != self.source.quiver() {
            return Err(Error::Structural("element outside the mutated torus".into()));
        }
        let mut out = LocalizedElement::zero(&self.target);
        for (m, c) in x.terms() {
            out = out.add(&self.apply_monomial(m)?.scale(c))?;
        }
        Ok(out.simplify())
    }

    /// Image of a localized element of the mutated torus whose binomials are
    /// in `Z'_k` (they become binomials in `Z_k^{−1}`).
    pub fn apply_localized(&self, x: &LocalizedElement) -> Result<LocalizedElement> {
        let mut out = self.apply(x.numerator())?;
        if let Some(v) = x.variable() {
            if v != self.k {
                return Err(Error::Unsupported("binomials outside the mutation vertex".into()));
            }
            for (a, m) in x.denominators() {
                let b = &TorusElement::one(&self.target) + &self.images[self.k].numerator().scale(&QPowerPoly::qpow(*a));
                let inv = invert_binomial(&b)?;
                out = out.mul(&inv.pow(*m)?)?;
            }
        }
        Ok(out.simplify())
    }
}
