use std::sync::Arc;

use num::Zero;

use super::coeff::Rat;
use super::element::{Monomial, Torus, TorusElement};
use crate::error::{Error, Result};

/// Algebra homomorphism between quantum tori sending every generator to a
/// scalar multiple of a monomial.
///
/// Construction checks that images `q`-commute exactly like their sources,
/// which makes the extension to the whole torus (and to fractional powers,
/// through Weyl roots) well defined.
#[derive(Clone, Debug)]
pub struct MonomialHom {
    source: Arc<Torus>,
    target: Arc<Torus>,
    images: Vec<TorusElement>,
}

impl MonomialHom {
    /// `assign` lists `(source vertex, image)`; unlisted vertices map to the
    /// same-named target vertex.
    pub fn new(source: &Arc<Torus>, target: &Arc<Torus>, assign: &[(&str, TorusElement)]) -> Result<Self> {
        let mut images: Vec<Option<TorusElement>> = vec![None; source.len()];
        for (name, img) in assign {
            let i = source.index(name)?;
            if !img.is_monomial() {
                return Err(Error::Unsupported(format!("image of {name} is not a monomial: {img}")));
            }
            images[i] = Some(img.in_torus(target).or_else(|_| img.embed(target))?);
        }
        let images: Vec<TorusElement> = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| match img {
                Some(x) => Ok(x),
                None => TorusElement::var(target, source.quiver().name(i), Rat::from_integer(1)),
            })
            .collect::<Result<_>>()?;
        let hom = MonomialHom { source: source.clone(), target: target.clone(), images };
        hom.check()?;
        Ok(hom)
    }

    fn check(&self) -> Result<()> {
        let n = self.source.len();
        for a in 0..n {
            for b in a + 1..n {
                let want = self.source.commutation(&Monomial::unit(n, a, 1.into()), &Monomial::unit(n, b, 1.into()));
                let ma = self.images[a].single().unwrap().0;
                let mb = self.images[b].single().unwrap().0;
                let got = self.target.commutation(ma, mb);
                if got != want {
                    return Err(Error::CommutationViolation(
                        self.source.quiver().name(a).to_string(),
                        self.source.quiver().name(b).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<Torus> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Torus> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &TorusElement {
        &self.images[i]
    }

    /// Image of a single normal-ordered monomial.
    pub fn apply_monomial(&self, m: &Monomial) -> Result<TorusElement> {
        let mut acc = TorusElement::one(&self.target);
        for (i, e) in m.0.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            acc = acc.try_mul(&self.images[i].mono_pow(*e)?)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, x: &TorusElement) -> Result<TorusElement> {
        if x.torus().quiver() != self.source.quiver() {
            return Err(Error::Structural("element outside the homomorphism's source".into()));
        }
        let mut out = TorusElement::zero(&self.target);
        for (m, c) in x.terms() {
            out = out.try_add(&self.apply_monomial(m)?.scale(c))?;
        }
        Ok(out)
    }

    /// Writes `y` (an element of the target) in terms of the source generators,
    /// assuming every monomial of `y` is the image of a source monomial.
    pub fn preimage(&self, y: &TorusElement) -> Result<TorusElement> {
        let cols: Vec<&Monomial> = self.images.iter().map(|x| x.single().unwrap().0).collect();
        let mut out = TorusElement::zero(&self.source);
        for (m, c) in y.terms() {
            let e = solve_exponents(&cols, m).ok_or_else(|| {
                Error::Structural(format!(
                    "monomial {} is not in the image",
                    TorusElement::fmt_monomial(&self.target, m)
                ))
            })?;
            let src = Monomial(e);
            let img = self.apply_monomial(&src)?;
            let (im, ic) = img.single().unwrap();
            debug_assert_eq!(im, m);
            let (r, k) = ic.single().unwrap();
            let coeff = c.shift(-r).scale(&k.recip());
            out = out.try_add(&TorusElement::term(&self.source, src, coeff))?;
        }
        Ok(out)
    }
}

/// Solves `Σ_k x_k·cols[k] = target` over the rationals (exact Gaussian elimination).
fn solve_exponents(cols: &[&Monomial], target: &Monomial) -> Option<Vec<Rat>> {
    let rows = target.0.len();
    let k = cols.len();
    let mut a: Vec<Vec<Rat>> = (0..rows).map(|r| (0..k).map(|c| cols[c].0[r]).chain([target.0[r]]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = Rat::from_integer(1) / a[row][col];
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..=k {
                    let v = a[row][c] * f;
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if a[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][k];
    }
    Some(x)
}

/// Applies a checked monomial homomorphism.
pub fn substitute(hom: &MonomialHom, x: &TorusElement) -> Result<TorusElement> {
    hom.apply(x)
}
