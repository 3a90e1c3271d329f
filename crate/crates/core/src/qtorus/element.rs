use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::integer::Integer;
use num::{One, Signed, Zero};

use super::coeff::{fmt_coeff, fmt_rat, pow_coeff, Coeff, QPowerPoly, Rat};
use super::quiver::Quiver;
use crate::error::{Error, Result};

/// Quantum torus `X_Q^{1/n}`: a quiver together with the declared root order `n`.
#[derive(Debug, PartialEq, Eq)]
pub struct Torus {
    quiver: Quiver,
    root_order: u64,
}

impl Torus {
    pub fn new(quiver: Quiver, root_order: u64) -> Arc<Torus> {
        Arc::new(Torus { quiver, root_order: root_order.max(1) })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn len(&self) -> usize {
        self.quiver.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quiver.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.quiver.index(name).ok_or_else(|| Error::Structural(format!("no vertex named {name}")))
    }

    /// Whether every exponent of `m` lies in `(1/n)ℤ`.
    pub fn admits(&self, m: &Monomial) -> bool {
        m.0.iter().all(|e| (self.root_order as i64) % e.denom() == 0)
    }

    /// `q`-shift `s` with `Z^a·Z^b = q^s·Z^{a+b}` for normal-ordered monomials.
    #[inline]
    pub fn reorder_shift(&self, a: &Monomial, b: &Monomial) -> Rat {
        let n = self.len();
        let mut s = Rat::zero();
        for i in 0..n {
            let bi = b.0[i];
            if bi.is_zero() {
                continue;
            }
            for j in i + 1..n {
                let aj = a.0[j];
                if aj.is_zero() {
                    continue;
                }
                let w = self.quiver.w2(i, j);
                if w != 0 {
                    s -= bi * aj * w;
                }
            }
        }
        s
    }

    /// `c` with `b·a = q^c·a·b`; equals `−2 Σ w_{αβ} a_α b_β`.
    pub fn commutation(&self, a: &Monomial, b: &Monomial) -> Rat {
        let n = self.len();
        let mut s = Rat::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let w = self.quiver.w2(i, j);
                if w != 0 && !b.0[j].is_zero() {
                    s -= a.0[i] * b.0[j] * w;
                }
            }
        }
        s
    }

    /// Exponent `W(e)` with `ord(Z^e) = q^{W(e)}·Z^e` (normal-ordered `Z^e`).
    pub fn weyl_exponent(&self, e: &Monomial) -> Rat {
        self.reorder_shift(e, e) / 2
    }
}

/// Exponent vector indexed by the torus' vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<Rat>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize, e: Rat) -> Self {
        let mut v = vec![Rat::zero(); n];
        v[i] = e;
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, r: Rat) -> Self {
        Monomial(self.0.iter().map(|a| a * r).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-Rat::one())
    }

    /// Least common denominator of the exponents.
    pub fn denominator(&self) -> i64 {
        self.0.iter().fold(1i64, |acc, e| acc.lcm(e.denom()))
    }
}

pub fn commutation_exponent(torus: &Torus, a: &Monomial, b: &Monomial) -> Result<Rat> {
    if a.0.len() != torus.len() || b.0.len() != torus.len() {
        return Err(Error::Structural("monomial does not belong to the torus".into()));
    }
    Ok(torus.commutation(a, b))
}

/// Finite sum of `q`-polynomial coefficients times normal-ordered monomials.
#[derive(Clone, Debug)]
pub struct TorusElement {
    torus: Arc<Torus>,
    terms: BTreeMap<Monomial, QPowerPoly>,
}

impl PartialEq for TorusElement {
    fn eq(&self, o: &Self) -> bool {
        same_quiver(&self.torus, &o.torus) && self.terms == o.terms
    }
}

impl Eq for TorusElement {}

fn same_quiver(a: &Arc<Torus>, b: &Arc<Torus>) -> bool {
    Arc::ptr_eq(a, b) || a.quiver == b.quiver
}

/// Torus able to hold the result of combining elements of `a` and `b`.
pub fn join(a: &Arc<Torus>, b: &Arc<Torus>) -> Result<Arc<Torus>> {
    if Arc::ptr_eq(a, b) {
        return Ok(a.clone());
    }
    if a.quiver != b.quiver {
        return Err(Error::Structural("elements of different quantum tori".into()));
    }
    if a.root_order % b.root_order == 0 {
        Ok(a.clone())
    } else if b.root_order % a.root_order == 0 {
        Ok(b.clone())
    } else {
        Ok(Torus::new(a.quiver.clone(), a.root_order.lcm(&b.root_order)))
    }
}

/// `X_Q^{1/n}` containing `torus` (root order becomes `lcm(old, n)`).
pub fn root_extend(torus: &Arc<Torus>, n: u64) -> Arc<Torus> {
    let n = n.max(1);
    if torus.root_order % n == 0 {
        torus.clone()
    } else {
        Torus::new(torus.quiver.clone(), torus.root_order.lcm(&n))
    }
}

impl TorusElement {
    pub fn zero(torus: &Arc<Torus>) -> Self {
        TorusElement { torus: torus.clone(), terms: BTreeMap::new() }
    }

    pub fn one(torus: &Arc<Torus>) -> Self {
        Self::scalar(torus, QPowerPoly::one())
    }

    pub fn scalar(torus: &Arc<Torus>, c: QPowerPoly) -> Self {
        Self::term(torus, Monomial::one(torus.len()), c)
    }

    pub fn integer(torus: &Arc<Torus>, n: i64) -> Self {
        Self::scalar(torus, QPowerPoly::integer(n))
    }

    pub fn qpow(torus: &Arc<Torus>, r: Rat) -> Self {
        Self::scalar(torus, QPowerPoly::qpow(r))
    }

    pub fn term(torus: &Arc<Torus>, m: Monomial, c: QPowerPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TorusElement { torus: torus.clone(), terms }
    }

    /// Generator `Z_name^e`.
    pub fn var(torus: &Arc<Torus>, name: &str, e: Rat) -> Result<Self> {
        let i = torus.index(name)?;
        Ok(Self::term(torus, Monomial::unit(torus.len(), i, e), QPowerPoly::one()))
    }

    pub fn from_terms(torus: &Arc<Torus>, terms: impl IntoIterator<Item = (Monomial, QPowerPoly)>) -> Self {
        let mut out = Self::zero(torus);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, QPowerPoly> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Pure scalar (no variables)?
    pub fn as_scalar(&self) -> Option<QPowerPoly> {
        match self.terms.len() {
            0 => Some(QPowerPoly::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The unique `(monomial, coefficient)` of a single-term element.
    pub fn single(&self) -> Option<(&Monomial, &QPowerPoly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Single monomial with a single `c·q^r` coefficient.
    pub fn is_monomial(&self) -> bool {
        self.single().is_some_and(|(_, c)| c.len() == 1)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &QPowerPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                x.add_assign(c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Re-labels the element as living in an equal-quiver torus (e.g. a root extension).
    pub fn in_torus(&self, torus: &Arc<Torus>) -> Result<Self> {
        if !same_quiver(&self.torus, torus) {
            return Err(Error::Structural("different quiver".into()));
        }
        Ok(TorusElement { torus: torus.clone(), terms: self.terms.clone() })
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let torus = join(&self.torus, &o.torus)?;
        let mut out = TorusElement { torus, terms: self.terms.clone() };
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        let torus = join(&self.torus, &o.torus)?;
        let mut out = TorusElement { torus, terms: self.terms.clone() };
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let torus = join(&self.torus, &o.torus)?;
        let mut acc: BTreeMap<Monomial, QPowerPoly> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let s = torus.reorder_shift(ma, mb);
                let c = ca.mul(cb).shift(s);
                let m = ma.add(mb);
                match acc.get_mut(&m) {
                    Some(x) => x.add_assign(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TorusElement { torus, terms: acc })
    }

    pub fn scale(&self, c: &QPowerPoly) -> Self {
        let mut out = Self::zero(&self.torus);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &x.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Coeff) -> Self {
        self.scale(&QPowerPoly::constant(c.clone()))
    }

    pub fn shift_q(&self, r: Rat) -> Self {
        TorusElement { torus: self.torus.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(r))).collect() }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.try_inverse()?.pow(-k);
        }
        let mut out = Self::one(&self.torus);
        for _ in 0..k {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Inverse of a single-term element `c·q^r·Z^f`.
    pub fn try_inverse(&self) -> Result<Self> {
        let (m, c) = self.single().ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        let cinv = c.try_inverse().ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        let minv = m.neg();
        let s = self.torus.reorder_shift(m, &minv);
        Ok(Self::term(&self.torus, minv, cinv.shift(-s)))
    }

    /// Rational power of a monomial `c·q^s·Z^f`, defined through its Weyl form:
    /// `(q^t·ord(Z^f))^r = q^{rt}·ord(Z^{rf})`. Non-integral powers need `c = 1`.
    pub fn mono_pow(&self, r: Rat) -> Result<Self> {
        if r.is_integer() {
            return self.pow(*r.numer());
        }
        let (m, c) = self.single().ok_or_else(|| Error::Unsupported(format!("fractional power of {self}")))?;
        let (s, cc) = c.single().ok_or_else(|| Error::Unsupported(format!("fractional power of {self}")))?;
        if !cc.is_one() {
            return Err(Error::Unsupported(format!("fractional power of coefficient {}", fmt_coeff(cc))));
        }
        let t = s - self.torus.weyl_exponent(m);
        let mr = m.scale(r);
        let w = self.torus.weyl_exponent(&mr);
        Ok(Self::term(&self.torus, mr, QPowerPoly::qpow(r * t + w)))
    }

    /// Whether the element commutes with every generator.
    pub fn is_central(&self) -> bool {
        let q = self.torus.quiver();
        let n = q.len();
        self.terms.keys().all(|m| {
            (0..n).all(|v| {
                let mut s = Rat::zero();
                for a in 0..n {
                    if !m.0[a].is_zero() {
                        s += m.0[a] * q.w2(a, v);
                    }
                }
                s.is_zero()
            })
        })
    }

    /// The substitution `q ↦ q⁻¹`, landing in `target` (normally the reversed-quiver torus).
    pub fn invert_q_into(&self, target: &Arc<Torus>) -> Result<Self> {
        if target.quiver().names() != self.torus.quiver().names() {
            return Err(Error::Structural("q-inversion needs the same vertex set".into()));
        }
        Ok(TorusElement {
            torus: target.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.invert_q())).collect(),
        })
    }

    /// Re-expresses the element in a torus whose quiver contains this one as a
    /// full subquiver (matched by vertex name).
    pub fn embed(&self, target: &Arc<Torus>) -> Result<Self> {
        let sq = self.torus.quiver();
        let tq = target.quiver();
        let map: Vec<usize> = sq.names().iter().map(|n| target.index(n)).collect::<Result<_>>()?;
        for i in 0..sq.len() {
            for j in 0..sq.len() {
                if sq.w2(i, j) != tq.w2(map[i], map[j]) {
                    return Err(Error::Structural(format!(
                        "{} and {} carry different arrows in the target",
                        sq.name(i),
                        sq.name(j)
                    )));
                }
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.len());
            for (i, x) in m.0.iter().enumerate() {
                e.0[map[i]] = *x;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Coordinatewise minimum and maximum exponent over all monomials.
    fn exponent_box(&self) -> (Monomial, Monomial) {
        let n = self.torus.len();
        let mut lo = Monomial::one(n);
        let mut hi = Monomial::one(n);
        for (k, m) in self.terms.keys().enumerate() {
            for i in 0..n {
                if k == 0 || m.0[i] < lo.0[i] {
                    lo.0[i] = m.0[i];
                }
                if k == 0 || m.0[i] > hi.0[i] {
                    hi.0[i] = m.0[i];
                }
            }
        }
        (lo, hi)
    }

    /// Largest flattened term `(monomial, q-exponent, rational)`.
    fn flat_last(&self) -> Option<(Monomial, Rat, Coeff)> {
        let (m, c) = self.terms.iter().next_back()?;
        let (r, x) = c.highest()?;
        Some((m.clone(), r, x.clone()))
    }

    /// `g` with `g·d = self`, if it exists.
    pub fn div_exact_right(&self, d: &Self) -> Option<Self> {
        self.div_exact(d, true)
    }

    /// `g` with `d·g = self`, if it exists.
    pub fn div_exact_left(&self, d: &Self) -> Option<Self> {
        self.div_exact(d, false)
    }

    fn div_exact(&self, d: &Self, right: bool) -> Option<Self> {
        let torus = join(&self.torus, &d.torus).ok()?;
        let (dm, dr, dc) = d.flat_last()?;
        let mut rem = self.clone();
        let mut quo = Self::zero(&torus);
        if self.is_zero() {
            return Some(quo);
        }
        // Exact quotients satisfy N(f) = N(g) + N(d) for Newton polytopes, so
        // every quotient exponent lies in a coordinate box.
        let (flo, fhi) = self.exponent_box();
        let (dlo, dhi) = d.exponent_box();
        let lo = flo.sub(&dlo);
        let hi = fhi.sub(&dhi);
        let mut guard = 0usize;
        while let Some((rm, rr, rc)) = rem.flat_last() {
            guard += 1;
            if guard > 50_000 {
                return None;
            }
            let tm = rm.sub(&dm);
            if tm.0.iter().zip(lo.0.iter().zip(&hi.0)).any(|(x, (l, h))| x < l || x > h) {
                return None;
            }
            let s = if right { torus.reorder_shift(&tm, &dm) } else { torus.reorder_shift(&dm, &tm) };
            let t = Self::term(&torus, tm, QPowerPoly::term(rr - dr - s, rc / &dc));
            let prod = if right { t.try_mul(d).ok()? } else { d.try_mul(&t).ok()? };
            rem = rem.try_sub(&prod).ok()?;
            quo = quo.try_add(&t).ok()?;
        }
        Some(quo)
    }

    /// Largest exponent denominator over all monomials.
    pub fn denominator(&self) -> i64 {
        self.terms.keys().fold(1i64, |acc, m| acc.lcm(&m.denominator()))
    }

    /// Evaluation of a commutative element at rational values (all exponents integral).
    pub fn eval_commutative(&self, q: &Coeff, values: &[Coeff]) -> Option<Coeff> {
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.eval_integral(q)?;
            for (i, e) in m.0.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !e.is_integer() {
                    return None;
                }
                let k = *e.numer();
                let p = pow_coeff(&values[i], k.unsigned_abs() as u32);
                t *= if k >= 0 { p } else { p.recip() };
            }
            acc += t;
        }
        Some(acc)
    }

    /// Human-readable monomial in normal order.
    pub fn fmt_monomial(torus: &Torus, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, e) in m.0.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let name = torus.quiver().name(i);
            if e.is_one() {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^({})", fmt_rat(e)));
            }
        }
        parts.join("*")
    }
}

/// Weyl-ordered product of a word of generator powers: `q^W·X₁⋯X_m` with
/// `W = ½ Σ_{j<k} c(X_j, X_k)`, which is invariant under permuting the word.
pub fn weyl_order(torus: &Arc<Torus>, word: &[(usize, Rat)]) -> TorusElement {
    let n = torus.len();
    let mut prod = TorusElement::one(torus);
    let mut w = Rat::zero();
    for (j, (vj, ej)) in word.iter().enumerate() {
        for (vk, ek) in &word[j + 1..] {
            let a = Monomial::unit(n, *vj, *ej);
            let b = Monomial::unit(n, *vk, *ek);
            w += torus.commutation(&a, &b) / 2;
        }
        let x = TorusElement::term(torus, Monomial::unit(n, *vj, *ej), QPowerPoly::one());
        prod = prod.try_mul(&x).expect("same torus");
    }
    prod.shift_q(w)
}

/// `ord(Z^e)` for an exponent vector.
pub fn weyl_monomial(torus: &Arc<Torus>, e: Monomial) -> TorusElement {
    let w = torus.weyl_exponent(&e);
    TorusElement::term(torus, e, QPowerPoly::qpow(w))
}

/// Entrywise Weyl ordering of an element of the commutative torus on the same
/// vertex names: each term `c·Z^e` becomes `c·ord(Z^e)` in `quantum`.
pub fn weyl_quantize(classical: &TorusElement, quantum: &Arc<Torus>) -> Result<TorusElement> {
    if classical.torus().quiver().names() != quantum.quiver().names() {
        return Err(Error::Structural("quantization needs the same vertex set".into()));
    }
    let mut out = TorusElement::zero(quantum);
    for (m, c) in classical.terms() {
        out.add_term(m.clone(), &c.shift(quantum.weyl_exponent(m)));
    }
    Ok(out)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&TorusElement> for &TorusElement {
            type Output = TorusElement;
            fn $m(self, o: &TorusElement) -> TorusElement {
                self.$f(o).expect("operands from different quantum tori")
            }
        }
        impl $tr<TorusElement> for TorusElement {
            type Output = TorusElement;
            fn $m(self, o: TorusElement) -> TorusElement {
                self.$f(&o).expect("operands from different quantum tori")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement { torus: self.torus.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }
}

impl Neg for TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        -&self
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            let mono = Self::fmt_monomial(&self.torus, m);
            let (sign, body) = match c.single() {
                Some((r, x)) => {
                    let neg = x.is_negative();
                    let single = QPowerPoly::term(r, x.abs());
                    let cs = single.to_string();
                    let body = if mono.is_empty() {
                        cs
                    } else if single.is_one() {
                        mono.clone()
                    } else {
                        format!("{cs}*{mono}")
                    };
                    (neg, body)
                }
                None => {
                    let body = if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") };
                    (false, body)
                }
            };
            match (first, sign) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
