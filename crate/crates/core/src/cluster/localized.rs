use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::qtorus::{fmt_rat, join, Monomial, QPowerPoly, Rat, Torus, TorusElement};

/// `num·∏(1 + q^a·Z_k)^{−m_a}`: a torus element localized at binomials in a
/// single generator `Z_k`, with every formal inverse kept on the right.
///
/// Binomials are normalized to positive powers of `Z_k`; moving one past a
/// monomial only shifts its `q`-exponent.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    num: TorusElement,
    var: Option<usize>,
    den: BTreeMap<Rat, u32>,
}

/// `1 + q^a·Z_k`.
pub fn binomial(torus: &Arc<Torus>, k: usize, a: Rat) -> TorusElement {
    let z = TorusElement::term(torus, Monomial::unit(torus.len(), k, Rat::one()), QPowerPoly::qpow(a));
    &TorusElement::one(torus) + &z
}

/// `s` with `Z_k·Z^α = q^s·Z^α·Z_k`.
pub fn pass_shift(torus: &Torus, k: usize, alpha: &Monomial) -> Rat {
    torus.commutation(alpha, &Monomial::unit(torus.len(), k, Rat::one()))
}

fn den_poly(torus: &Arc<Torus>, k: Option<usize>, den: &BTreeMap<Rat, u32>) -> TorusElement {
    let mut out = TorusElement::one(torus);
    if let Some(k) = k {
        for (a, m) in den {
            let b = binomial(torus, k, *a);
            for _ in 0..*m {
                out = &out * &b;
            }
        }
    }
    out
}

fn shifted(den: &BTreeMap<Rat, u32>, s: Rat) -> BTreeMap<Rat, u32> {
    den.iter().map(|(a, m)| (a + s, *m)).collect()
}

impl LocalizedElement {
    pub fn from_element(x: TorusElement) -> Self {
        LocalizedElement { num: x, var: None, den: BTreeMap::new() }
    }

    pub fn zero(torus: &Arc<Torus>) -> Self {
        Self::from_element(TorusElement::zero(torus))
    }

    pub fn one(torus: &Arc<Torus>) -> Self {
        Self::from_element(TorusElement::one(torus))
    }

    /// `(1 + q^a·Z_k)^{−m}`.
    pub fn binomial_inverse(torus: &Arc<Torus>, k: usize, a: Rat, m: u32) -> Self {
        let mut den = BTreeMap::new();
        if m > 0 {
            den.insert(a, m);
        }
        LocalizedElement { num: TorusElement::one(torus), var: Some(k), den }
    }

    pub fn torus(&self) -> &Arc<Torus> {
        self.num.torus()
    }

    pub fn numerator(&self) -> &TorusElement {
        &self.num
    }

    /// Generator index of the localized binomials, if any remain.
    pub fn variable(&self) -> Option<usize> {
        if self.den.is_empty() {
            None
        } else {
            self.var
        }
    }

    /// `(q-exponent, multiplicity)` of every remaining binomial.
    pub fn denominators(&self) -> &BTreeMap<Rat, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn common_var(&self, o: &Self) -> Result<Option<usize>> {
        match (self.variable(), o.variable()) {
            (Some(a), Some(b)) if a != b => {
                Err(Error::Unsupported("binomial denominators in two different generators".into()))
            }
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let torus = join(self.torus(), o.torus())?;
        let var = self.common_var(o)?;
        if self.den == o.den {
            return Ok(LocalizedElement { num: self.num.try_add(&o.num)?, var, den: self.den.clone() });
        }
        let mut den = self.den.clone();
        for (a, m) in &o.den {
            let e = den.entry(*a).or_insert(0);
            *e = (*e).max(*m);
        }
        let missing = |d: &BTreeMap<Rat, u32>| -> BTreeMap<Rat, u32> {
            den.iter().map(|(a, m)| (*a, m - d.get(a).copied().unwrap_or(0))).filter(|(_, m)| *m > 0).collect()
        };
        let x = self.num.try_mul(&den_poly(&torus, var, &missing(&self.den)))?;
        let y = o.num.try_mul(&den_poly(&torus, var, &missing(&o.den)))?;
        Ok(LocalizedElement { num: x.try_add(&y)?, var, den })
    }

    pub fn neg(&self) -> Self {
        LocalizedElement { num: -&self.num, var: self.var, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, c: &QPowerPoly) -> Self {
        LocalizedElement { num: self.num.scale(c), var: self.var, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let torus = join(self.torus(), o.torus())?;
        let var = self.common_var(o)?;
        let Some(k) = self.variable() else {
            return Ok(LocalizedElement { num: self.num.try_mul(&o.num)?, var, den: o.den.clone() });
        };
        // Push our binomials rightwards past each term of `o.num`, grouping
        // terms that produce the same shift.
        let mut groups: BTreeMap<Rat, TorusElement> = BTreeMap::new();
        for (m, c) in o.num.terms() {
            let s = pass_shift(&torus, k, m);
            let t = TorusElement::term(&torus, m.clone(), c.clone());
            let g = groups.entry(s).or_insert_with(|| TorusElement::zero(&torus));
            *g = g.try_add(&t)?;
        }
        let mut out = LocalizedElement::zero(&torus);
        for (s, g) in groups {
            let mut den = shifted(&self.den, s);
            for (a, m) in &o.den {
                *den.entry(*a).or_insert(0) += m;
            }
            let part = LocalizedElement { num: self.num.try_mul(&g)?, var, den };
            out = out.add(&part)?;
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = LocalizedElement::one(self.torus());
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Inverse of a monomial numerator over any denominator, or of a bare
    /// binomial `1 + c·Z_k^{±1}` with `c` a power of `q`.
    pub fn try_inverse(&self) -> Result<Self> {
        let torus = self.torus().clone();
        if self.num.single().is_some() {
            let d = LocalizedElement::from_element(den_poly(&torus, self.var, &self.den));
            return d.mul(&LocalizedElement::from_element(self.num.try_inverse()?));
        }
        if self.den.is_empty() {
            return invert_binomial(&self.num);
        }
        Err(Error::NotInvertible(self.to_string()))
    }

    /// Cancels every binomial that divides the numerator exactly on the right.
    pub fn simplify(&self) -> Self {
        let (Some(k), false) = (self.var, self.num.is_zero()) else {
            return LocalizedElement { num: self.num.clone(), var: None, den: BTreeMap::new() };
        };
        let torus = self.torus().clone();
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (a, m) in &self.den {
            let b = binomial(&torus, k, *a);
            let mut left = *m;
            while left > 0 {
                match num.div_exact_right(&b) {
                    Some(x) => {
                        num = x;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(*a, left);
            }
        }
        LocalizedElement { num, var: Some(k), den }
    }

    /// The torus element equal to this one, when every binomial cancels.
    pub fn to_element(&self) -> Result<TorusElement> {
        let s = self.simplify();
        if s.den.is_empty() {
            Ok(s.num)
        } else {
            Err(Error::InexactDivision(s.to_string()))
        }
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        Ok(self.sub(o)?.simplify().is_zero())
    }
}

/// `(1 + c·Z_k^{±1})^{−1}` with `c = q^a`; the negative power is rewritten as
/// `q^{−a}·Z_k·(1 + q^{−a}·Z_k)^{−1}`.
pub fn invert_binomial(x: &TorusElement) -> Result<LocalizedElement> {
    let torus = x.torus().clone();
    let err = || Error::NotInvertible(x.to_string());
    if x.num_terms() != 2 {
        return Err(err());
    }
    let one = TorusElement::one(&torus);
    let rest = x.try_sub(&one)?;
    let (m, c) = rest.single().ok_or_else(err)?;
    let (a, cc) = c.single().ok_or_else(err)?;
    if !cc.is_one() {
        return Err(err());
    }
    let nz: Vec<usize> = (0..torus.len()).filter(|&i| !m.0[i].is_zero()).collect();
    let [k] = nz[..] else { return Err(err()) };
    if m.0[k] == Rat::one() {
        Ok(LocalizedElement::binomial_inverse(&torus, k, a, 1))
    } else if m.0[k] == -Rat::one() {
        let z = TorusElement::term(&torus, Monomial::unit(torus.len(), k, Rat::one()), QPowerPoly::qpow(-a));
        LocalizedElement::from_element(z).mul(&LocalizedElement::binomial_inverse(&torus, k, -a, 1))
    } else {
        Err(err())
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})", self.num)?;
        let k = self.var.expect("denominators carry their variable");
        let z = self.torus().quiver().name(k);
        for (a, m) in &self.den {
            write!(f, "*(1+q^({})*{z})^-{m}", fmt_rat(a))?;
        }
        Ok(())
    }
}
