//! Square matrices over noncommutative kernel rings.
//!
//! Entries are multiplied in the order induced by matrix multiplication, so
//! `(AB)_{ij} = Σ_k A_{ik}·B_{kj}` never swaps factors.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::qtorus::{element_to_json, TorusElement};

/// The ring contract shared by torus elements, localized elements and
/// Laurent-polynomial operators.
pub trait Ring: Clone + Send + Sync {
    /// Whether [`Ring::is_zero`] decides equality with zero (false for rings
    /// whose elements can only be compared by evaluation).
    const EXACT_ZERO_TEST: bool = true;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Two-sided inverse when the element is a unit the ring knows how to invert.
    fn try_inverse(&self) -> Option<Self>;
    /// `Some(true/false)` when centrality is decidable.
    fn is_central(&self) -> Option<bool> {
        None
    }
    fn describe(&self) -> String;
}

impl Ring for TorusElement {
    fn zero_like(&self) -> Self {
        TorusElement::zero(self.torus())
    }
    fn one_like(&self) -> Self {
        TorusElement::one(self.torus())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        TorusElement::is_zero(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        TorusElement::try_inverse(self).ok()
    }
    fn is_central(&self) -> Option<bool> {
        Some(TorusElement::is_central(self))
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

/// `d × d` matrix in row-major order.
#[derive(Clone, Debug)]
pub struct NCMatrix<R: Ring> {
    d: usize,
    entries: Vec<R>,
}

impl<R: Ring> NCMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension("rows do not form a nonempty square".into()));
        }
        Ok(NCMatrix { d, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(d: usize, f: impl FnMut(usize, usize) -> R) -> Self {
        let mut f = f;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(f(i, j));
            }
        }
        NCMatrix { d, entries }
    }

    pub fn identity(d: usize, sample: &R) -> Self {
        Self::from_fn(d, |i, j| if i == j { sample.one_like() } else { sample.zero_like() })
    }

    pub fn zero(d: usize, sample: &R) -> Self {
        Self::from_fn(d, |_, _| sample.zero_like())
    }

    pub fn diagonal(diag: Vec<R>) -> Self {
        let d = diag.len();
        let z = diag[0].zero_like();
        let mut m = Self::from_fn(d, |_, _| z.clone());
        for (i, x) in diag.into_iter().enumerate() {
            m.entries[i * d + i] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R) {
        self.entries[i * self.d + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        (0..self.d).map(|i| self.entries[i * self.d..(i + 1) * self.d].to_vec()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> NCMatrix<S> {
        NCMatrix { d: self.d, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl FnMut(&R) -> Result<S>) -> Result<NCMatrix<S>> {
        Ok(NCMatrix { d: self.d, entries: self.entries.iter().map(f).collect::<Result<_>>()? })
    }

    fn same_dim(&self, o: &Self) -> Result<()> {
        if self.d != o.d {
            return Err(Error::Dimension(format!("{}×{} vs {}×{}", self.d, self.d, o.d, o.d)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        Ok(NCMatrix { d: self.d, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        Ok(NCMatrix { d: self.d, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        let d = self.d;
        Ok(Self::from_fn(d, |i, j| {
            let mut acc: Option<R> = None;
            for k in 0..d {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if R::EXACT_ZERO_TEST && (a.is_zero() || b.is_zero()) {
                    continue;
                }
                let p = a.mul(b);
                acc = Some(match acc {
                    Some(x) => x.add(&p),
                    None => p,
                });
            }
            acc.unwrap_or_else(|| self.get(0, 0).zero_like())
        }))
    }

    /// `s·M` (scalar on the left of every entry).
    pub fn scale_left(&self, s: &R) -> Self {
        self.map(|x| s.mul(x))
    }

    /// `M·s` (scalar on the right of every entry).
    pub fn scale_right(&self, s: &R) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        let one = self.get(0, 0).one_like();
        (0..self.d).all(|i| (0..self.d).all(|j| if i == j { self.get(i, j).sub(&one).is_zero() } else { self.get(i, j).is_zero() }))
    }

    /// Exact equality through `self − o = 0`.
    pub fn equals(&self, o: &Self) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }

    /// Positions where `self` and `o` differ.
    pub fn diff_positions(&self, o: &Self) -> Result<Vec<(usize, usize)>> {
        let diff = self.sub(o)?;
        let mut out = Vec::new();
        for i in 0..self.d {
            for j in 0..self.d {
                if !diff.get(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    pub fn product(ms: &[Self]) -> Result<Self> {
        let mut it = ms.iter();
        let first = it.next().ok_or_else(|| Error::Dimension("empty product".into()))?.clone();
        it.try_fold(first, |acc, m| acc.mul(m))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.d).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.d).all(|i| (i + 1..self.d).all(|j| self.get(i, j).is_zero()))
    }

    /// Conjugation `C·M·C⁻¹`.
    pub fn conjugate(&self, c: &Self, c_inv: &Self) -> Result<Self> {
        c.mul(self)?.mul(c_inv)
    }
}

impl NCMatrix<TorusElement> {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows().iter().map(|r| Value::Array(r.iter().map(element_to_json).collect())).collect(),
        )
    }
}

impl<R: Ring> fmt::Display for NCMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d {
            for j in 0..self.d {
                writeln!(f, "({},{}) = {}", i + 1, j + 1, self.get(i, j).describe())?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Exact inverse of a triangular matrix with invertible diagonal.
///
/// Solves `M·X = 1` by substitution; for triangular matrices over a ring
/// this right inverse is two-sided. For unipotent input it agrees with the
/// finite Neumann series of `(1 − N)⁻¹`.
pub fn invert_triangular<R: Ring>(m: &NCMatrix<R>, side: Side) -> Result<NCMatrix<R>> {
    let d = m.dim();
    let ok = match side {
        Side::Upper => m.is_upper_triangular(),
        Side::Lower => m.is_lower_triangular(),
    };
    if R::EXACT_ZERO_TEST && !ok {
        return Err(Error::Shape(format!("matrix is not {side:?} triangular")));
    }
    let inv_diag: Vec<R> = (0..d)
        .map(|i| {
            m.get(i, i).try_inverse().ok_or_else(|| Error::NotInvertible(format!("({},{}) = {}", i + 1, i + 1, m.get(i, i).describe())))
        })
        .collect::<Result<_>>()?;
    let zero = m.get(0, 0).zero_like();
    let mut x = NCMatrix::from_fn(d, |_, _| zero.clone());
    for i in 0..d {
        x.set(i, i, inv_diag[i].clone());
    }
    match side {
        Side::Upper => {
            for gap in 1..d {
                for i in 0..d - gap {
                    let j = i + gap;
                    let mut acc = zero.clone();
                    for k in i + 1..=j {
                        acc = acc.add(&m.get(i, k).mul(x.get(k, j)));
                    }
                    x.set(i, j, inv_diag[i].mul(&acc).neg());
                }
            }
        }
        Side::Lower => {
            for gap in 1..d {
                for j in 0..d - gap {
                    let i = j + gap;
                    let mut acc = zero.clone();
                    for k in j..i {
                        acc = acc.add(&m.get(i, k).mul(x.get(k, j)));
                    }
                    x.set(i, j, inv_diag[i].mul(&acc).neg());
                }
            }
        }
    }
    Ok(x)
}

/// Three `3×3` pseudo-reflections: `R_i` differs from the identity only in row `i`.
#[derive(Clone, Debug)]
pub struct PseudoReflectionTriple<R: Ring> {
    r: [NCMatrix<R>; 3],
}

impl<R: Ring> PseudoReflectionTriple<R> {
    pub fn new(r1: NCMatrix<R>, r2: NCMatrix<R>, r3: NCMatrix<R>) -> Result<Self> {
        let r = [r1, r2, r3];
        for (k, m) in r.iter().enumerate() {
            if m.dim() != 3 {
                return Err(Error::Shape(format!("R{} is not 3×3", k + 1)));
            }
            if R::EXACT_ZERO_TEST {
                let one = m.get(0, 0).one_like();
                for i in 0..3 {
                    if i == k {
                        continue;
                    }
                    for j in 0..3 {
                        let want_one = i == j;
                        let x = m.get(i, j);
                        let ok = if want_one { x.sub(&one).is_zero() } else { x.is_zero() };
                        if !ok {
                            return Err(Error::Shape(format!("R{} entry ({},{}) off the pseudo-reflection pattern", k + 1, i + 1, j + 1)));
                        }
                    }
                }
            }
        }
        Ok(PseudoReflectionTriple { r })
    }

    /// Builds `R₁, R₂, R₃` whose `i`-th rows are the rows of `a`.
    pub fn from_a(a: &NCMatrix<R>) -> Result<Self> {
        if a.dim() != 3 {
            return Err(Error::Shape("A must be 3×3".into()));
        }
        let mk = |k: usize| {
            let mut m = NCMatrix::identity(3, a.get(0, 0));
            for j in 0..3 {
                m.set(k, j, a.get(k, j).clone());
            }
            m
        };
        Self::new(mk(0), mk(1), mk(2))
    }

    pub fn get(&self, i: usize) -> &NCMatrix<R> {
        &self.r[i]
    }

    /// `A_{ij} = (R_i)_{ij}`.
    pub fn a_matrix(&self) -> NCMatrix<R> {
        NCMatrix::from_fn(3, |i, j| self.r[i].get(i, j).clone())
    }

    pub fn product(&self) -> Result<NCMatrix<R>> {
        self.r[0].mul(&self.r[1])?.mul(&self.r[2])
    }
}

/// Factorizes `R₁R₂R₃ = U·L` with `U` upper unitriangular and `L` lower triangular.
///
/// `U = [[1, a₁₂, a₁₃ + a₁₂a₂₃], [0, 1, a₂₃], [0, 0, 1]]` and `L` is the lower
/// triangle of `A`; for exactly comparable rings the identity `U·L = R₁R₂R₃`
/// is verified before returning.
pub fn killing_factorize<R: Ring>(t: &PseudoReflectionTriple<R>) -> Result<(NCMatrix<R>, NCMatrix<R>)> {
    let a = t.a_matrix();
    let s = a.get(0, 0);
    let one = s.one_like();
    let zero = s.zero_like();
    let u = NCMatrix::from_rows(vec![
        vec![one.clone(), a.get(0, 1).clone(), a.get(0, 2).add(&a.get(0, 1).mul(a.get(1, 2)))],
        vec![zero.clone(), one.clone(), a.get(1, 2).clone()],
        vec![zero.clone(), zero.clone(), one],
    ])?;
    let l = NCMatrix::from_fn(3, |i, j| if j <= i { a.get(i, j).clone() } else { zero.clone() });
    if R::EXACT_ZERO_TEST {
        let lhs = u.mul(&l)?;
        if !lhs.equals(&t.product()?)? {
            return Err(Error::Verification("U·L differs from R₁R₂R₃".into()));
        }
    }
    Ok((u, l))
}

/// `∏ᵢ (M − pᵢ·1) = 0` with central parameters `pᵢ`.
pub fn hecke_check<R: Ring>(m: &NCMatrix<R>, params: &[R]) -> Result<bool> {
    Ok(hecke_product(m, params)?.is_zero())
}

/// The product `∏ᵢ (M − pᵢ·1)` (for diagnostics).
pub fn hecke_product<R: Ring>(m: &NCMatrix<R>, params: &[R]) -> Result<NCMatrix<R>> {
    let d = m.dim();
    let mut acc: Option<NCMatrix<R>> = None;
    for p in params {
        if p.is_central() == Some(false) {
            return Err(Error::NonCentral(p.describe()));
        }
        let f = m.sub(&NCMatrix::identity(d, p).scale_left(p))?;
        acc = Some(match acc {
            None => f,
            Some(x) => x.mul(&f)?,
        });
    }
    acc.ok_or_else(|| Error::Dimension("no Hecke parameters".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::{parse_element, QuiverBuilder, Torus};
    use std::sync::Arc;

    fn torus() -> Arc<Torus> {
        let mut b = QuiverBuilder::new();
        for v in ["a", "b", "c"] {
            b.vertex(v, false);
        }
        b.arrow2("a", "b", 2).arrow2("b", "c", 1).arrow2("c", "a", 2);
        Torus::new(b.build().unwrap(), 1)
    }

    fn m(t: &Arc<Torus>, rows: &[&[&str]]) -> NCMatrix<TorusElement> {
        NCMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_element(t, s).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let t = torus();
        let x = m(&t, &[&["a", "b"], &["q*c", "a^-1"]]);
        let id = NCMatrix::identity(2, x.get(0, 0));
        assert!(x.mul(&id).unwrap().equals(&x).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let t = torus();
        let x = m(&t, &[&["a", "b"], &["c", "1"]]);
        let y = NCMatrix::identity(3, x.get(0, 0));
        assert!(matches!(x.mul(&y), Err(Error::Dimension(_))));
    }

    #[test]
    fn unipotent_inverse_corner() {
        let t = torus();
        let uinv = m(&t, &[&["1", "-a", "-b"], &["0", "1", "-c"], &["0", "0", "1"]]);
        let u = invert_triangular(&uinv, Side::Upper).unwrap();
        let want = m(&t, &[&["1", "a", "b + a*c"], &["0", "1", "c"], &["0", "0", "1"]]);
        assert!(u.equals(&want).unwrap());
    }

    #[test]
    fn lower_inverse_matches_closed_form() {
        let t = torus();
        let l = m(&t, &[&["a", "0", "0"], &["b", "c", "0"], &["a*b", "q*c^2", "b"]]);
        let li = invert_triangular(&l, Side::Lower).unwrap();
        let want31 = parse_element(
            &t,
            "-b^-1*(a*b)*a^-1 + b^-1*(q*c^2)*c^-1*b*a^-1",
        )
        .unwrap();
        assert_eq!(li.get(2, 0), &want31);
        assert!(li.mul(&l).unwrap().is_identity());
        assert!(l.mul(&li).unwrap().is_identity());
    }

    #[test]
    fn non_invertible_diagonal_is_named() {
        let t = torus();
        let l = m(&t, &[&["1 + a", "0"], &["b", "1"]]);
        assert!(matches!(invert_triangular(&l, Side::Lower), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn identity_pattern_factors_trivially() {
        let t = torus();
        let a = NCMatrix::identity(3, &parse_element(&t, "1").unwrap());
        let tr = PseudoReflectionTriple::from_a(&a).unwrap();
        let (u, l) = killing_factorize(&tr).unwrap();
        assert!(u.is_identity() && l.is_identity());
    }

    #[test]
    fn killing_factorization_recovers_a() {
        let t = torus();
        let a = m(&t, &[&["a", "b + 1", "q*c"], &["c^-1", "b", "a*b"], &["2", "c - a", "q^-1*c"]]);
        let tr = PseudoReflectionTriple::from_a(&a).unwrap();
        let (u, l) = killing_factorize(&tr).unwrap();
        let uinv = invert_triangular(&u, Side::Upper).unwrap();
        let one = NCMatrix::identity(3, a.get(0, 0));
        let rec = l.sub(&uinv.sub(&one).unwrap()).unwrap();
        assert!(rec.equals(&a).unwrap());
    }

    #[test]
    fn shape_violation_rejected() {
        let t = torus();
        let bad = m(&t, &[&["a", "b", "0"], &["1", "1", "0"], &["0", "0", "1"]]);
        let id = NCMatrix::identity(3, bad.get(0, 0));
        assert!(matches!(PseudoReflectionTriple::new(bad, id.clone(), id), Err(Error::Shape(_))));
    }

    #[test]
    fn diagonal_hecke() {
        let t = torus();
        let d = m(&t, &[&["q", "0", "0"], &["0", "2", "0"], &["0", "0", "q^-1"]]);
        let ps: Vec<_> = ["q", "2", "q^-1"].iter().map(|s| parse_element(&t, s).unwrap()).collect();
        assert!(hecke_check(&d, &ps).unwrap());
        let noncentral = vec![parse_element(&t, "a").unwrap()];
        assert!(matches!(hecke_check(&d, &noncentral), Err(Error::NonCentral(_))));
    }
}
