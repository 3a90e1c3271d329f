//! Rational exponents and Laurent polynomials in fractional powers of `q`.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::Ratio;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Small exact rational used for exponents (of variables and of `q`).
pub type Rat = Ratio<i64>;

/// Exact rational coefficient.
pub type Coeff = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn cint(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn crat(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/r"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rat::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

pub fn parse_coeff(s: &str) -> Option<Coeff> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `Σ c_r q^r` with exact rational `r` and `c_r`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPowerPoly {
    terms: BTreeMap<Rat, Coeff>,
}

impl QPowerPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Rat::zero(), Coeff::one())
    }

    /// `c·q^r`.
    pub fn term(r: Rat, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(r, c);
        }
        QPowerPoly { terms }
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Rat::zero(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(cint(n))
    }

    pub fn qpow(r: Rat) -> Self {
        Self::term(r, Coeff::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Rat::zero()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rat, &Coeff)> {
        self.terms.iter()
    }

    /// The unique term of a single-term polynomial.
    pub fn single(&self) -> Option<(Rat, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(r, c)| (*r, c))
        } else {
            None
        }
    }

    pub fn highest(&self) -> Option<(Rat, &Coeff)> {
        self.terms.iter().next_back().map(|(r, c)| (*r, c))
    }

    pub fn lowest(&self) -> Option<(Rat, &Coeff)> {
        self.terms.iter().next().map(|(r, c)| (*r, c))
    }

    pub fn add_term(&mut self, r: Rat, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(r).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (r, c) in &o.terms {
            self.add_term(*r, c);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in &o.terms {
            out.add_term(*r, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        QPowerPoly { terms: self.terms.iter().map(|(r, c)| (*r, -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = QPowerPoly::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &o.terms {
                out.add_term(r1 + r2, &(c1 * c2));
            }
        }
        out
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: Rat) -> Self {
        if s.is_zero() {
            return self.clone();
        }
        QPowerPoly { terms: self.terms.iter().map(|(r, c)| (r + s, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPowerPoly { terms: self.terms.iter().map(|(r, x)| (*r, x * c)).collect() }
    }

    /// The substitution `q ↦ q⁻¹`.
    pub fn invert_q(&self) -> Self {
        QPowerPoly { terms: self.terms.iter().map(|(r, c)| (-r, c.clone())).collect() }
    }

    /// Inverse of a single-term polynomial `c·q^r`.
    pub fn try_inverse(&self) -> Option<Self> {
        let (r, c) = self.single()?;
        Some(Self::term(-r, c.recip()))
    }

    /// Evaluates at a rational value of `q` for which every exponent is integral.
    pub fn eval_integral(&self, q: &Coeff) -> Option<Coeff> {
        let mut acc = Coeff::zero();
        for (r, c) in &self.terms {
            if !r.is_integer() {
                return None;
            }
            let e = *r.numer();
            let p = if e >= 0 { pow_coeff(q, e as u32) } else { pow_coeff(q, (-e) as u32).recip() };
            acc += c * p;
        }
        Some(acc)
    }
}

pub(crate) fn pow_coeff(x: &Coeff, e: u32) -> Coeff {
    num::pow::pow(x.clone(), e as usize)
}

impl fmt::Display for QPowerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let qpart = if r.is_zero() {
                None
            } else if r.is_one() {
                Some("q".to_string())
            } else {
                Some(format!("q^({})", fmt_rat(r)))
            };
            match qpart {
                None => write!(f, "{}", fmt_coeff(&a))?,
                Some(qs) if a.is_one() => write!(f, "{qs}")?,
                Some(qs) => write!(f, "{}*{qs}", fmt_coeff(&a))?,
            }
        }
        Ok(())
    }
}
