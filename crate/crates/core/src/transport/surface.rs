use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncmat::NCMatrix;
use crate::qtorus::{parse_element, weyl_order, MonomialHom, QuiverBuilder, Rat, Torus, TorusElement};

use super::blocks::{block_h, block_s, block_s_quantum};
use super::chart::{transport_sides, Side, TriangleChart};

/// Identification of two triangle sides; `names[k]` labels the vertex formed by
/// the `k`-th vertex of `a` (from its first corner) and its partner on `b`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Gluing {
    /// `"triangle:side"`, e.g. `"r:31"`.
    pub a: String,
    pub b: String,
    pub names: Vec<String>,
    /// Permit gluing two sides of one triangle (the product is then Weyl-ordered).
    #[serde(default)]
    pub self_glued: bool,
}

/// A diagonal conjugator `diag(d)·∏ H_k(t)`, all entries in the union torus.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ConjugatorSpec {
    #[serde(default)]
    pub diag: Vec<String>,
    #[serde(default)]
    pub h: Vec<(usize, String)>,
}

/// A path word such as `["S", "T3(r)", "S", "T2(r)", "S"]` with a scalar prefactor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathSpec {
    pub name: String,
    #[serde(default = "one_str")]
    pub prefactor: String,
    pub word: Vec<String>,
}

fn one_str() -> String {
    "1".into()
}

/// Surface description: rank, triangles, gluings, frozen amalgamated vertices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub name: String,
    pub n: usize,
    pub triangles: Vec<String>,
    pub gluings: Vec<Gluing>,
    #[serde(default)]
    pub frozen: Vec<String>,
    #[serde(default)]
    pub conjugator: Option<ConjugatorSpec>,
    #[serde(default)]
    pub paths: Vec<PathSpec>,
}

/// One factor of a path word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    S,
    T { index: usize, triangle: String, inverse: bool },
}

impl Step {
    pub fn parse(s: &str) -> Result<Step> {
        let s = s.trim();
        if s == "S" {
            return Ok(Step::S);
        }
        let bad = || Error::Parse(format!("path step {s}"));
        let rest = s.strip_prefix('T').ok_or_else(bad)?;
        let (idx, rest) = rest.split_once('(').ok_or_else(bad)?;
        let (tri, tail) = rest.split_once(')').ok_or_else(bad)?;
        let inverse = match tail {
            "" => false,
            "^-1" => true,
            _ => return Err(bad()),
        };
        let index: usize = idx.parse().map_err(|_| bad())?;
        transport_sides(index)?;
        Ok(Step::T { index, triangle: tri.to_string(), inverse })
    }
}

/// Whether transports use the quantum torus (`T^q`, `S^q`) or the commutative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Classical,
    Quantum,
}

/// Triangles of a surface, the torus of their disjoint union, and the
/// amalgamated torus with its embedding into the union.
#[derive(Clone, Debug)]
pub struct Surface {
    pub spec: SurfaceSpec,
    pub mode: Mode,
    charts: BTreeMap<String, TriangleChart>,
    union: Arc<Torus>,
    amalgamated: Arc<Torus>,
    hom: MonomialHom,
    glued: BTreeSet<((String, Side), (String, Side))>,
}

fn parse_side_ref(s: &str) -> Result<(String, Side)> {
    let (t, side) = s.split_once(':').ok_or_else(|| Error::Parse(format!("side reference {s}")))?;
    Ok((t.to_string(), Side::parse(side)?))
}

/// Builds the union torus of `charts` (no arrows between different triangles)
/// and the amalgamated torus: glued vertex pairs become one vertex mapped to
/// the product of its parents, Weyl-ordered for self-gluings. Arrow weights of
/// the amalgamated quiver are induced from the images.
pub fn amalgamate(
    charts: &[TriangleChart],
    gluings: &[Gluing],
    frozen: &[String],
    mode: Mode,
) -> Result<(Arc<Torus>, Arc<Torus>, MonomialHom)> {
    let n = charts.first().map(|c| c.rank()).ok_or_else(|| Error::Structural("no triangles".into()))?;
    if charts.iter().any(|c| c.rank() != n) {
        return Err(Error::InconsistentGluing("triangles of different rank".into()));
    }
    let mut ub = QuiverBuilder::new();
    for c in charts {
        for name in c.quiver().names() {
            ub.vertex(name, false);
        }
        if mode == Mode::Quantum {
            for (i, j, w) in c.quiver().arrows() {
                ub.arrow2(c.quiver().name(i), c.quiver().name(j), w);
            }
        }
    }
    let union_quiver = ub.build()?;
    if union_quiver.len() != charts.iter().map(|c| c.quiver().len()).sum::<usize>() {
        return Err(Error::Structural("triangle prefixes collide".into()));
    }
    let root = n as u64;
    let union = Torus::new(union_quiver, root);
    let chart = |t: &str| {
        charts.iter().find(|c| c.prefix() == t).ok_or_else(|| Error::InconsistentGluing(format!("unknown triangle {t}")))
    };

    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut images: Vec<(String, TorusElement)> = Vec::new();
    for g in gluings {
        let (ta, sa) = parse_side_ref(&g.a)?;
        let (tb, sb) = parse_side_ref(&g.b)?;
        let (ca, cb) = (chart(&ta)?, chart(&tb)?);
        let va = ca.side_names(sa);
        let mut vb = cb.side_names(sb);
        vb.reverse();
        if va.len() != vb.len() || va.len() != g.names.len() {
            return Err(Error::InconsistentGluing(format!("{} ↔ {}: vertex counts differ", g.a, g.b)));
        }
        if ta == tb && !g.self_glued {
            return Err(Error::SelfGluing(format!("{} ↔ {}", g.a, g.b)));
        }
        for ((x, y), name) in va.iter().zip(&vb).zip(&g.names) {
            for v in [x, y] {
                if !used.insert(v.clone()) {
                    return Err(Error::InconsistentGluing(format!("vertex {v} glued twice")));
                }
            }
            let (ix, iy) = (union.index(x)?, union.index(y)?);
            let img = if ta == tb {
                weyl_order(&union, &[(ix, Rat::from_integer(1)), (iy, Rat::from_integer(1))])
            } else {
                TorusElement::var(&union, x, 1.into())?.try_mul(&TorusElement::var(&union, y, 1.into())?)?
            };
            images.push((name.clone(), img));
        }
    }
    for c in charts {
        for v in c.quiver().names() {
            if !used.contains(v) {
                images.push((v.clone(), TorusElement::var(&union, v, 1.into())?));
            }
        }
    }

    let mut ab = QuiverBuilder::new();
    for (name, _) in &images {
        ab.vertex(name, frozen.contains(name));
    }
    for (a, (na, ia)) in images.iter().enumerate() {
        for (nb, ib) in &images[a + 1..] {
            let c = union.commutation(ia.single().unwrap().0, ib.single().unwrap().0);
            if !c.is_integer() {
                return Err(Error::InconsistentGluing(format!("{na}, {nb}: non-integral induced weight")));
            }
            let w2 = -*c.numer();
            if w2 != 0 {
                ab.arrow2(na, nb, w2);
            }
        }
    }
    let aq = ab.build()?;
    if aq.len() != images.len() {
        return Err(Error::InconsistentGluing("amalgamated names collide".into()));
    }
    for f in frozen {
        aq.index(f).ok_or_else(|| Error::Structural(format!("frozen vertex {f} unknown")))?;
    }
    let amalgamated = Torus::new(aq, root);
    let assign: Vec<(&str, TorusElement)> = images.iter().map(|(n, x)| (n.as_str(), x.clone())).collect();
    let hom = MonomialHom::new(&amalgamated, &union, &assign)?;
    Ok((union, amalgamated, hom))
}

impl Surface {
    pub fn new(spec: SurfaceSpec, mode: Mode) -> Result<Self> {
        let charts_vec: Vec<TriangleChart> =
            spec.triangles.iter().map(|t| TriangleChart::new(spec.n, t)).collect::<Result<_>>()?;
        let (union, amalgamated, hom) = amalgamate(&charts_vec, &spec.gluings, &spec.frozen, mode)?;
        let mut glued = BTreeSet::new();
        for g in &spec.gluings {
            let a = parse_side_ref(&g.a)?;
            let b = parse_side_ref(&g.b)?;
            glued.insert((a.clone(), b.clone()));
            glued.insert((b, a));
        }
        let charts = charts_vec.into_iter().map(|c| (c.prefix().to_string(), c)).collect();
        Ok(Surface { spec, mode, charts, union, amalgamated, hom, glued })
    }

    pub fn from_json(s: &str, mode: Mode) -> Result<Self> {
        let spec: SurfaceSpec = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(spec, mode)
    }

    pub fn rank(&self) -> usize {
        self.spec.n
    }

    pub fn union_torus(&self) -> &Arc<Torus> {
        &self.union
    }

    pub fn amalgamated_torus(&self) -> &Arc<Torus> {
        &self.amalgamated
    }

    pub fn amalgamation(&self) -> &MonomialHom {
        &self.hom
    }

    pub fn chart(&self, t: &str) -> Result<&TriangleChart> {
        self.charts.get(t).ok_or_else(|| Error::InconsistentGluing(format!("unknown triangle {t}")))
    }

    pub fn path(&self, name: &str) -> Result<&PathSpec> {
        self.spec.paths.iter().find(|p| p.name == name).ok_or_else(|| Error::Structural(format!("no path {name}")))
    }

    fn transport(&self, index: usize, tri: &str, inverse: bool) -> Result<NCMatrix<TorusElement>> {
        let c = self.chart(tri)?;
        match (self.mode, inverse) {
            (Mode::Quantum, false) => c.transport_quantum_in(&self.union, index),
            (Mode::Quantum, true) => c.transport_quantum_inverse_in(&self.union, index),
            (Mode::Classical, _) => {
                let idx: Vec<usize> = if inverse { vec![index % 3 + 1, (index % 3 + 1) % 3 + 1] } else { vec![index] };
                let mut acc = NCMatrix::identity(self.spec.n, &TorusElement::one(&self.union));
                for i in idx {
                    let m = c.transport_classical(i)?.try_map(|x| x.embed(&self.union))?;
                    acc = acc.mul(&m)?;
                }
                Ok(acc)
            }
        }
    }

    /// Checks that consecutive crossings are separated by one `S` and pass
    /// through glued sides (matrices act right to left).
    pub fn check_word(&self, steps: &[Step]) -> Result<()> {
        let mut prev: Option<(String, Side)> = None;
        let mut s_between = 0usize;
        for st in steps.iter().rev() {
            match st {
                Step::S => s_between += 1,
                Step::T { index, triangle, inverse } => {
                    self.chart(triangle)?;
                    let (mut entry, mut exit) = transport_sides(*index)?;
                    if *inverse {
                        std::mem::swap(&mut entry, &mut exit);
                    }
                    if let Some(p) = prev.take() {
                        if s_between != 1 {
                            return Err(Error::InconsistentGluing(format!(
                                "{s_between} side reversals before T{index}({triangle})"
                            )));
                        }
                        let here = (triangle.clone(), entry);
                        if !self.glued.contains(&(p.clone(), here.clone())) {
                            return Err(Error::InconsistentGluing(format!(
                                "{}:{} is not glued to {}:{}",
                                p.0, p.1, here.0, here.1
                            )));
                        }
                    }
                    prev = Some((triangle.clone(), exit));
                    s_between = 0;
                }
            }
        }
        Ok(())
    }

    /// Prefactor times the ordered product of the word, over the union torus.
    pub fn compose(&self, prefactor: &str, word: &[String]) -> Result<NCMatrix<TorusElement>> {
        let steps: Vec<Step> = word.iter().map(|s| Step::parse(s)).collect::<Result<_>>()?;
        self.check_word(&steps)?;
        let n = self.spec.n;
        let pre = parse_element(&self.union, prefactor)?;
        let s = match self.mode {
            Mode::Quantum => block_s_quantum(&self.union, n),
            Mode::Classical => block_s(&self.union, n),
        };
        let mut acc = NCMatrix::identity(n, &TorusElement::one(&self.union)).scale_left(&pre);
        for st in &steps {
            let m = match st {
                Step::S => s.clone(),
                Step::T { index, triangle, inverse } => self.transport(*index, triangle, *inverse)?,
            };
            acc = acc.mul(&m)?;
        }
        Ok(acc)
    }

    pub fn compose_named(&self, name: &str) -> Result<NCMatrix<TorusElement>> {
        let p = self.path(name)?.clone();
        self.compose(&p.prefactor, &p.word)
    }

    /// The conjugator `diag(d)·∏H_k(t)` and its inverse, over the union torus.
    pub fn conjugator(&self, spec: &ConjugatorSpec) -> Result<(NCMatrix<TorusElement>, NCMatrix<TorusElement>)> {
        let n = self.spec.n;
        let one = TorusElement::one(&self.union);
        let mut c = if spec.diag.is_empty() {
            NCMatrix::identity(n, &one)
        } else {
            if spec.diag.len() != n {
                return Err(Error::Dimension(format!("conjugator diagonal of length {}", spec.diag.len())));
            }
            NCMatrix::diagonal(spec.diag.iter().map(|s| parse_element(&self.union, s)).collect::<Result<_>>()?)
        };
        for (k, t) in &spec.h {
            c = c.mul(&block_h(n, *k, &parse_element(&self.union, t)?)?)?;
        }
        let inv = NCMatrix::diagonal(
            (0..n)
                .map(|i| c.get(i, i).try_inverse())
                .collect::<Result<Vec<_>>>()?,
        );
        Ok((c, inv))
    }

    /// `C·M·C⁻¹` with the surface's declared conjugator (identity when absent).
    pub fn conjugate(&self, m: &NCMatrix<TorusElement>) -> Result<NCMatrix<TorusElement>> {
        match &self.spec.conjugator {
            None => Ok(m.clone()),
            Some(spec) => {
                let (c, ci) = self.conjugator(spec)?;
                m.conjugate(&c, &ci)
            }
        }
    }

    /// Rewrites a union-torus matrix in amalgamated variables; fails if an entry
    /// still depends on an un-amalgamated combination of side variables.
    pub fn pull_back(&self, m: &NCMatrix<TorusElement>) -> Result<NCMatrix<TorusElement>> {
        m.try_map(|x| {
            self.hom.preimage(x).map_err(|e| Error::InconsistentGluing(format!("entry not amalgamated: {e}")))
        })
    }

    /// Composes, conjugates and pulls back a named path.
    pub fn loop_matrix(&self, name: &str) -> Result<NCMatrix<TorusElement>> {
        self.pull_back(&self.conjugate(&self.compose_named(name)?)?)
    }
}
