use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact parameter values: rationals (parameters are instantiated at
/// generic rational points).
pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ c_k z^k` with finite support; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// `c·z^k`.
    pub fn monomial(k: i64, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// `z^k`.
    pub fn z(k: i64) -> Self {
        Self::monomial(k, Q::one())
    }

    /// `c₀ + c₁·z`.
    pub fn linear(c0: Q, c1: Q) -> Self {
        Self::from_pairs([(0, c0), (1, c1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Q)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in pairs {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Q> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest exponent.
    pub fn span(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }

    /// `f[z⁻¹]`.
    pub fn invert_z(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    /// `f[q·z⁻¹]`.
    pub fn reflect_q(&self, q: &Q) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (-k, c * pow(q, *k))).collect() }
    }

    /// `g` with `g·d = self`; fails unless the division is exact.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (dlo, dhi) = d.span().ok_or_else(|| Error::Degenerate("division by zero".into()))?;
        let lead = d.coeff(dhi);
        let Some((flo, fhi)) = self.span() else { return Ok(Self::zero()) };
        let mut rem = self.clone();
        let mut quo = Self::zero();
        let floor = flo - dlo;
        let mut top = fhi;
        while !rem.is_zero() {
            let (_, rhi) = rem.span().expect("nonzero");
            let k = rhi - dhi;
            if k < floor || rhi > top {
                return Err(Error::InexactDivision(format!("({self}) / ({d})")));
            }
            top = rhi;
            let c = rem.coeff(rhi) / &lead;
            let t = LaurentPoly::monomial(k, c);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Ok(quo)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_z()
    }

    pub fn is_q_symmetric(&self, q: &Q) -> bool {
        *self == self.reflect_q(q)
    }
}

pub fn pow(x: &Q, k: i64) -> Q {
    if k >= 0 {
        num::pow(x.clone(), k as usize)
    } else {
        num::pow(x.recip(), k.unsigned_abs() as usize)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if n > 0 { "+" } else { "" };
            let a = c.abs();
            let coef = if a.is_one() && *k != 0 { String::new() } else { format!("{a}") };
            let star = if coef.is_empty() || *k == 0 { "" } else { "*" };
            let var = match k {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{k}"),
            };
            write!(f, "{sign}{coef}{star}{var}")?;
        }
        Ok(())
    }
}

type OpFn = dyn Fn(&LaurentPoly) -> Result<LaurentPoly> + Send + Sync;

/// A linear operator on Laurent polynomials; divisions inside it are exact
/// or the application fails.
#[derive(Clone)]
pub struct LaurentOperator(Arc<OpFn>);

impl fmt::Debug for LaurentOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentOperator")
    }
}

/// Which argument a rational term is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arg {
    Z,
    InvZ,
    QOverZ,
}

impl LaurentOperator {
    pub fn new(f: impl Fn(&LaurentPoly) -> Result<LaurentPoly> + Send + Sync + 'static) -> Self {
        LaurentOperator(Arc::new(f))
    }

    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        (self.0)(f)
    }

    pub fn zero() -> Self {
        Self::new(|_| Ok(LaurentPoly::zero()))
    }

    pub fn identity() -> Self {
        Self::new(|f| Ok(f.clone()))
    }

    pub fn scalar(c: Q) -> Self {
        Self::new(move |f| Ok(f.scale(&c)))
    }

    /// Multiplication by a Laurent polynomial.
    pub fn multiply(p: LaurentPoly) -> Self {
        Self::new(move |f| Ok(p.mul(f)))
    }

    /// `f ↦ (Σ mᵢ·f[argᵢ]) / den`, with exact division.
    pub fn rational(parts: Vec<(LaurentPoly, Arg)>, den: LaurentPoly, q: Q) -> Self {
        Self::new(move |f| {
            let mut num = LaurentPoly::zero();
            for (m, arg) in &parts {
                let g = match arg {
                    Arg::Z => f.clone(),
                    Arg::InvZ => f.invert_z(),
                    Arg::QOverZ => f.reflect_q(&q),
                };
                num = num.add(&m.mul(&g));
            }
            num.div_exact(&den)
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn then(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::new(move |f| a.apply(&b.apply(f)?))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::new(move |f| Ok(a.apply(f)?.add(&b.apply(f)?)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::new(move |f| Ok(a.apply(f)?.sub(&b.apply(f)?)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let (a, c) = (self.clone(), c.clone());
        Self::new(move |f| Ok(a.apply(f)?.scale(&c)))
    }

    /// `self − c`.
    pub fn shift(&self, c: &Q) -> Self {
        self.sub(&Self::scalar(c.clone()))
    }
}

/// A `3×3` matrix of operators acting on triples `(v₁, v₂, v₃)`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    entries: Vec<LaurentOperator>,
}

pub type Triple = [LaurentPoly; 3];

impl OperatorMatrix {
    pub fn from_fn(f: impl Fn(usize, usize) -> LaurentOperator) -> Self {
        OperatorMatrix { entries: (0..9).map(|x| f(x / 3, x % 3)).collect() }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { LaurentOperator::identity() } else { LaurentOperator::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentOperator {
        &self.entries[3 * i + j]
    }

    pub fn apply(&self, v: &Triple) -> Result<Triple> {
        let mut out: Triple = Default::default();
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    *o = o.add(&self.get(i, j).apply(x)?);
                }
            }
        }
        Ok(out)
    }

    /// `self · other` as operators (apply `other` first).
    pub fn then(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..3).fold(LaurentOperator::zero(), |acc, k| acc.add(&self.get(i, k).then(other.get(k, j))))
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_fn(|i, j| self.get(i, j).scale(c))
    }

    /// `self − c·1`.
    pub fn shift(&self, c: &Q) -> Self {
        Self::from_fn(|i, j| if i == j { self.get(i, j).shift(c) } else { self.get(i, j).clone() })
    }
}

/// Applies `(M − c₁)(M − c₂)…` (rightmost factor first) to `v`.
pub fn apply_polynomial(m: &OperatorMatrix, roots: &[Q], v: &Triple) -> Result<Triple> {
    let mut w = v.clone();
    for c in roots.iter().rev() {
        let mw = m.apply(&w)?;
        w = [0, 1, 2].map(|i| mw[i].sub(&w[i].scale(c)));
    }
    Ok(w)
}

pub fn is_zero_triple(v: &Triple) -> bool {
    v.iter().all(LaurentPoly::is_zero)
}
