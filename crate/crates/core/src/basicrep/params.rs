use num::{One, Zero};
use rand::Rng;

use super::laurent::{qr, Q};
use crate::error::{Error, Result};

/// Numeric instantiation of `(a, b, c, d, q)` together with a chosen `√q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
    pub q: Q,
    pub sqrt_q: Q,
}

impl Params {
    /// Rejects parameter values on which a denominator or a Hecke
    /// eigenvalue coincidence degenerates.
    pub fn new(a: Q, b: Q, c: Q, d: Q, sqrt_q: Q) -> Result<Self> {
        let q = &sqrt_q * &sqrt_q;
        let p = Params { a, b, c, d, q, sqrt_q };
        p.check_generic()?;
        Ok(p)
    }

    fn check_generic(&self) -> Result<()> {
        let one = Q::one();
        let (a, b, c, d, q) = (&self.a, &self.b, &self.c, &self.d, &self.q);
        let nonzero = [
            ("a", a.clone()),
            ("b", b.clone()),
            ("c", c.clone()),
            ("d", d.clone()),
            ("q", q.clone()),
            ("q − 1", q - &one),
            ("ab − 1", a * b - &one),
            ("a − b", a - b),
            ("cd − q", c * d - q),
            ("c − d", c - d),
            ("ad − q", a * d - q),
            ("ac − q", a * c - q),
        ];
        for (name, v) in nonzero {
            if v.is_zero() {
                return Err(Error::Degenerate(name.into()));
            }
        }
        let l = [self.t_sq(0).recip(), self.t_sq(1).recip(), self.t_sq(2).recip()];
        if l[0] == l[1] || l[1] == l[2] || l[0] == l[2] {
            return Err(Error::Degenerate("coinciding t_i^-2".into()));
        }
        Ok(())
    }

    /// `tᵢ²` for `i = 0..4`: `1/(ab)`, `b/a`, `q/(cd)`, `c/d`.
    pub fn t_sq(&self, i: usize) -> Q {
        let (a, b, c, d, q) = (&self.a, &self.b, &self.c, &self.d, &self.q);
        match i {
            0 => (a * b).recip(),
            1 => b / a,
            2 => q / (c * d),
            3 => c / d,
            _ => panic!("t index {i} out of range"),
        }
    }

    /// The two eigenvalues of `K̂₄` in this branch: `√q/(ad)`, `√q/(ac)`.
    pub fn k4_eigenvalues(&self) -> [Q; 2] {
        [&self.sqrt_q / (&self.a * &self.d), &self.sqrt_q / (&self.a * &self.c)]
    }
}

/// Parameters given through roots, so every fractional power in the
/// rescaled relations is rational: `σ = q^{1/6}`, `τᵢ = tᵢ^{1/3}`, `t₄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootParams {
    pub sigma: Q,
    pub tau: [Q; 3],
    pub t4: Q,
}

impl RootParams {
    pub fn t(&self, i: usize) -> Q {
        if i == 3 {
            self.t4.clone()
        } else {
            num::pow(self.tau[i].clone(), 3)
        }
    }

    pub fn q(&self) -> Q {
        num::pow(self.sigma.clone(), 6)
    }

    pub fn sqrt_q(&self) -> Q {
        num::pow(self.sigma.clone(), 3)
    }

    /// `a = 1/(t₁t₂)`, `b = t₂/t₁`, `c = √q·t₄/t₃`, `d = √q/(t₃t₄)`.
    pub fn params(&self) -> Result<Params> {
        let (t1, t2, t3, t4) = (self.t(0), self.t(1), self.t(2), self.t(3));
        let s = self.sqrt_q();
        Params::new((&t1 * &t2).recip(), &t2 / &t1, &s * &t4 / &t3, &s / (&t3 * &t4), s)
    }

    /// `(t₁t₂t₃)^{2/3}`.
    pub fn t123_two_thirds(&self) -> Q {
        let p = &self.tau[0] * &self.tau[1] * &self.tau[2];
        &p * &p
    }

    /// The specialised E6 parameters
    /// `(t̃₂⁽¹⁾, t̃₂⁽²⁾, t̃₃⁽¹⁾, t̃₃⁽²⁾)`.
    pub fn e6_parameters(&self) -> [Q; 4] {
        let [x, y, z] = &self.tau;
        let s = &self.sigma;
        let t123 = x * y * z;
        [
            num::pow(x.recip(), 4) * y * y * z * z,
            x * x * num::pow(y.recip(), 4) * z * z,
            (s * s * &t123 * &t123).recip(),
            s * &t123 * &self.t4,
        ]
    }

    /// A random generic point with small numerators and denominators.
    pub fn random(rng: &mut impl Rng) -> Self {
        loop {
            let mut draw = || {
                let n = rng.gen_range(1..=7i64);
                let mut d = rng.gen_range(1..=7i64);
                if n == d {
                    d += 1;
                }
                qr(n, d)
            };
            let rp = RootParams { sigma: draw(), tau: [draw(), draw(), draw()], t4: draw() };
            if rp.is_generic() {
                return rp;
            }
        }
    }

    fn is_generic(&self) -> bool {
        let Ok(p) = self.params() else { return false };
        let one = Q::one();
        let pi = [one.clone(), &p.q / (&p.a * &p.d), &p.q / (&p.a * &p.c)];
        let distinct = |v: &[Q]| (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]));
        distinct(&pi) && self.t4 != one && self.t4 != -one
    }
}
