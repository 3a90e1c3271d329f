use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncmat::{NCMatrix, Ring};
use crate::qtorus::{parse_element, Torus, TorusElement};

/// `num·den⁻¹` with `den` a nonzero central element: the torus localized at
/// central elements only, which keeps the noncommutative part exact.
#[derive(Clone, Debug)]
pub struct Fraction {
    num: TorusElement,
    den: TorusElement,
}

impl Fraction {
    pub fn new(num: TorusElement, den: TorusElement) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("zero denominator".into()));
        }
        if !den.is_central() {
            return Err(Error::NonCentral(den.to_string()));
        }
        Ok(Fraction { num, den })
    }

    pub fn from_element(x: TorusElement) -> Self {
        let den = TorusElement::one(x.torus());
        Fraction { num: x, den }
    }

    pub fn parse(torus: &Arc<Torus>, num: &str, den: &str) -> Result<Self> {
        Self::new(parse_element(torus, num)?, parse_element(torus, den)?)
    }

    pub fn num(&self) -> &TorusElement {
        &self.num
    }

    pub fn den(&self) -> &TorusElement {
        &self.den
    }

    pub fn torus(&self) -> &Arc<Torus> {
        self.num.torus()
    }

    /// The torus element equal to this fraction, when the division is exact.
    pub fn to_element(&self) -> Result<TorusElement> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        self.num
            .div_exact_right(&self.den)
            .ok_or_else(|| Error::InexactDivision(format!("({}) / ({})", self.num, self.den)))
    }
}

impl PartialEq for Fraction {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Ring for Fraction {
    fn zero_like(&self) -> Self {
        Fraction::from_element(TorusElement::zero(self.torus()))
    }
    fn one_like(&self) -> Self {
        Fraction::from_element(TorusElement::one(self.torus()))
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Fraction { num: &self.num + &o.num, den: self.den.clone() };
        }
        Fraction { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }
    fn sub(&self, o: &Self) -> Self {
        Ring::add(self, &Ring::neg(o))
    }
    fn mul(&self, o: &Self) -> Self {
        Fraction { num: &self.num * &o.num, den: &self.den * &o.den }
    }
    fn neg(&self) -> Self {
        Fraction { num: -&self.num, den: self.den.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// Inverts numerators of the form `monomial × central`.
    fn try_inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let (m, _) = self.num.terms().iter().next()?;
        let unit = TorusElement::term(self.torus(), m.clone(), crate::qtorus::QPowerPoly::one());
        let unit_inv = unit.try_inverse().ok()?;
        let central = &unit_inv * &self.num;
        if !central.is_central() {
            return None;
        }
        Some(Fraction { num: &self.den * &unit_inv, den: central })
    }
    fn is_central(&self) -> Option<bool> {
        Some(self.num.is_central())
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

pub fn lift(m: &NCMatrix<TorusElement>) -> NCMatrix<Fraction> {
    m.map(|x| Fraction::from_element(x.clone()))
}

/// Entrywise exact division back into the torus.
pub fn lower(m: &NCMatrix<Fraction>) -> Result<NCMatrix<TorusElement>> {
    m.try_map(|x| x.to_element())
}
