//! Localized torus elements, quantum mutation, quiver seizure, and the match
//! between the middle-convolution triple and the seized E6 generators.

mod localized;
mod mutation;
mod seizure;

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;
use rayon::prelude::*;
use serde::Deserialize;

pub use localized::{binomial, invert_binomial, pass_shift, LocalizedElement};
pub use mutation::{mutate_quiver, Mutation};
pub use seizure::{seize, Seizure, SeizureSite};

use crate::error::{Error, Result};
use crate::gdaha::{self, GdahaPresentation};
use crate::mconv::{self, ConvolutionState, PrintedPipeline};
use crate::ncmat::NCMatrix;

use crate::qtorus::{fmt_rat, parse_element, MonomialHom, Rat, Torus, TorusElement};
use crate::report::Report;

pub const CLUSTER_DATA: &str = include_str!("../../data/cluster.json");

/// Printed image of a mutated generator: `monomial·factor` or
/// `monomial·inverse_factor^{−1}`.
#[derive(Clone, Debug, Deserialize)]
pub struct PrintedImage {
    pub monomial: String,
    #[serde(default)]
    pub factor: Option<String>,
    #[serde(default)]
    pub inverse_factor: Option<String>,
}

/// Every printed ingredient of the match.
#[derive(Clone, Debug, Deserialize)]
pub struct MatchData {
    pub seizures: Vec<SeizureSite>,
    pub reduced_substitutions: BTreeMap<String, String>,
    /// Images of `Z_x^{−1}` (D4 names) in the mutated E6 chart.
    pub iota_inverse_images: BTreeMap<String, String>,
    pub mutation_vertex: String,
    pub mutation_images: BTreeMap<String, PrintedImage>,
    /// `(convolution matrix, E6 generator)` pairs.
    pub pairs: Vec<[String; 2]>,
    pub c_reduced: Vec<Vec<String>>,
}

impl MatchData {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn builtin() -> Self {
        Self::from_json(CLUSTER_DATA).expect("bundled match data parses")
    }
}

/// The E6 generators pushed through successive seizures.
#[derive(Clone, Debug)]
pub struct ReducedE6 {
    pub seizures: Vec<Seizure>,
    pub torus: Arc<Torus>,
    pub generators: BTreeMap<String, NCMatrix<TorusElement>>,
}

/// Applies the seizures in order to the E6 generators.
pub fn reduce_e6(e6: &GdahaPresentation, sites: &[SeizureSite]) -> Result<ReducedE6> {
    let mut torus = e6.torus.clone();
    let mut gens: BTreeMap<String, NCMatrix<TorusElement>> =
        e6.names.iter().cloned().zip(e6.generators.iter().cloned()).collect();
    let mut seizures = Vec::new();
    for site in sites {
        let s = seize(&torus, site)?;
        for m in gens.values_mut() {
            *m = m.try_map(|x| s.apply(x))?;
        }
        torus = s.target().clone();
        seizures.push(s);
    }
    Ok(ReducedE6 { seizures, torus, generators: gens })
}

/// Everything needed to push the convolution triple into the seized chart.
pub struct MatchMaps {
    /// Root-order-6 torus of the seized quiver, target of `μ`.
    pub chart: Arc<Torus>,
    pub mutation: Mutation,
    /// D4 torus with reversed arrows: target of `τ`.
    pub reversed: Arc<Torus>,
    pub iota: MonomialHom,
}

impl MatchMaps {
    pub fn new(extended: &Arc<Torus>, reduced: &Arc<Torus>, data: &MatchData) -> Result<Self> {
        let chart = Torus::new(reduced.quiver().clone(), 6);
        let mutation = Mutation::new(&chart, &data.mutation_vertex)?;
        let reversed = Torus::new(extended.quiver().reversed(), extended.root_order());
        let images: Vec<(String, TorusElement)> = data
            .iota_inverse_images
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_element(mutation.source(), v)?.try_inverse()?)))
            .collect::<Result<_>>()?;
        let assign: Vec<(&str, TorusElement)> = images.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        let iota = MonomialHom::new(&reversed, mutation.source(), &assign)?;
        Ok(MatchMaps { chart, mutation, reversed, iota })
    }

    /// `μ∘ι∘τ` of one entry.
    pub fn push(&self, x: &TorusElement) -> Result<LocalizedElement> {
        let t = x.invert_q_into(&self.reversed)?;
        let i = self.iota.apply(&t)?;
        self.mutation.apply(&i)
    }
}

/// Outcome of one entry of the match.
#[derive(Clone, Debug)]
pub struct EntryMatch {
    pub pair: (String, String),
    pub row: usize,
    pub col: usize,
    pub image: String,
    pub expected: String,
    pub cancelled: bool,
    pub equal: bool,
}

fn convolution_matrix(s: &ConvolutionState, name: &str) -> Result<NCMatrix<TorusElement>> {
    match name {
        "U" => s.u.try_map(|x| x.embed(&s.extended)),
        "Lhat" => Ok(s.lhat.clone()),
        "Pihat" => Ok(s.pihat.clone()),
        _ => Err(Error::Structural(format!("unknown convolution matrix {name}"))),
    }
}

/// Entrywise comparison of `μιτ` applied to the convolution triple with the
/// target matrices (parallel over the entries).
pub fn match_entries(
    s: &ConvolutionState,
    targets: &BTreeMap<String, NCMatrix<TorusElement>>,
    maps: &MatchMaps,
    pairs: &[[String; 2]],
) -> Result<Vec<EntryMatch>> {
    let mut jobs = Vec::new();
    for [a, b] in pairs {
        let src = convolution_matrix(s, a)?;
        let dst = targets
            .get(b)
            .ok_or_else(|| Error::Structural(format!("unknown E6 generator {b}")))?
            .try_map(|x| x.in_torus(&maps.chart))?;
        for r in 0..src.dim() {
            for c in 0..src.dim() {
                jobs.push((a.clone(), b.clone(), r, c, src.get(r, c).clone(), dst.get(r, c).clone()));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(a, b, r, c, x, want)| {
            let img = maps.push(&x)?;
            let (cancelled, equal, image) = match img.to_element() {
                Ok(y) => (true, y == want, y.to_string()),
                Err(_) => (false, false, img.simplify().to_string()),
            };
            Ok(EntryMatch { pair: (a, b), row: r, col: c, image, expected: want.to_string(), cancelled, equal })
        })
        .collect()
}

/// `x` with `a = q^x·b`, if the two differ by a power of `q`.
fn q_ratio(a: &TorusElement, b: &TorusElement) -> Option<Rat> {
    let (m, c) = b.terms().iter().next()?;
    let (rb, kb) = c.highest()?;
    let (ra, ka) = a.terms().get(m)?.highest()?;
    let x = ra - rb;
    (ka == kb && *a == b.shift_q(x)).then_some(x)
}

/// Exponents `g` of a constant gauge `D = diag(q^{g_i})` with
/// `printed = D⁻¹·seized·D`, i.e. `printed_ij = q^{g_j − g_i}·seized_ij`.
pub fn diagonal_gauge(printed: &NCMatrix<TorusElement>, seized: &NCMatrix<TorusElement>) -> Option<Vec<Rat>> {
    let d = seized.dim();
    if printed.dim() != d {
        return None;
    }
    let mut g = vec![Rat::zero(); d];
    for j in 1..d {
        g[j] = q_ratio(printed.get(0, j), seized.get(0, j))?;
    }
    let gauged = apply_gauge(seized, &g);
    gauged.equals(printed).ok()?.then_some(g)
}

/// `D⁻¹·m·D` for `D = diag(q^{g_i})`.
pub fn apply_gauge(m: &NCMatrix<TorusElement>, g: &[Rat]) -> NCMatrix<TorusElement> {
    let d = m.dim();
    NCMatrix::from_fn(d, |i, j| m.get(i, j).shift_q(g[j] - g[i]))
}

fn has_fractional_exponents(m: &NCMatrix<TorusElement>) -> bool {
    m.entries().iter().any(|x| x.terms().keys().any(|e| e.0.iter().any(|r| !r.is_integer())))
}

/// Checks the mutated generator images against their printed forms.
pub fn mutation_matches_print(mutation: &Mutation, data: &MatchData) -> Result<bool> {
    let t = mutation.target();
    for (name, p) in &data.mutation_images {
        let j = t.index(name)?;
        let mut want = LocalizedElement::from_element(parse_element(t, &p.monomial)?);
        if let Some(f) = &p.factor {
            want = want.mul(&LocalizedElement::from_element(parse_element(t, f)?))?;
        }
        if let Some(f) = &p.inverse_factor {
            want = want.mul(&invert_binomial(&parse_element(t, f)?)?)?;
        }
        if !mutation.image(j).equals(&want)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the seizure/mutation match with the given inputs.
pub fn verify_match_with(e6: &GdahaPresentation, d4: &GdahaPresentation, data: &MatchData) -> Report {
    let mut r = Report::new("mutation/seizure match");
    let reduced = match reduce_e6(e6, &data.seizures) {
        Ok(x) => x,
        Err(e) => {
            r.check_with("double seizure", false, e.to_string());
            return r;
        }
    };
    r.check("double seizure preserves q-commutation", true);
    let q = reduced.torus.quiver();
    let erased: Vec<&str> = data.seizures.iter().map(|s| s.erase.as_str()).collect();
    let sub = e6.torus.quiver().without(&erased);
    r.check("seized quiver is the full subquiver", sub.as_ref().is_ok_and(|s| s == q));
    r.check_with("seized quiver has 6 vertices and 8 arrows", q.len() == 6 && q.arrows().len() == 8, format!("{} arrows", q.arrows().len()));
    for (src, want) in &data.reduced_substitutions {
        let ok = (|| -> Result<bool> {
            let mut x = parse_element(&e6.torus, src)?;
            for s in &reduced.seizures {
                x = x.in_torus(s.hom.source())?;
                x = s.apply(&x)?;
            }
            Ok(x == parse_element(&reduced.torus, want)?)
        })();
        r.check_result(format!("seizure sends {src} to {want}"), ok);
    }
    let Some(c) = reduced.generators.get("C") else {
        r.check("seized generators include C", false);
        return r;
    };
    r.check("C_I has unit diagonal", (0..c.dim()).all(|i| c.get(i, i).is_one()));
    r.check("C_I has no fractional powers", !has_fractional_exponents(c));
    let printed = data
        .c_reduced
        .iter()
        .map(|row| row.iter().map(|s| parse_element(&reduced.torus, s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()
        .and_then(NCMatrix::from_rows);
    let printed = match printed {
        Ok(p) => p,
        Err(e) => {
            r.check_with("printed C_I parses", false, e.to_string());
            return r;
        }
    };
    let literal = printed.equals(c).unwrap_or(false);
    r.note(format!("printed C_I equals the literal seizure of C: {literal}"));
    let Some(gauge) = diagonal_gauge(&printed, c) else {
        r.check("printed C_I is the seized C up to a constant diagonal gauge", false);
        return r;
    };
    let shown: Vec<String> = gauge.iter().map(|x| format!("q^({})", fmt_rat(x))).collect();
    r.check_with(
        "printed C_I is the seized C up to a constant diagonal gauge",
        true,
        format!("D = diag({})", shown.join(", ")),
    );
    let targets: BTreeMap<String, NCMatrix<TorusElement>> =
        reduced.generators.iter().map(|(k, m)| (k.clone(), apply_gauge(m, &gauge))).collect();
    let state = match mconv::run(d4, &mconv_conjugator(d4), &PrintedPipeline::builtin()) {
        Ok(s) => s,
        Err(e) => {
            r.check_with("convolution pipeline", false, e.to_string());
            return r;
        }
    };
    let maps = match MatchMaps::new(&state.extended, &reduced.torus, data) {
        Ok(m) => m,
        Err(e) => {
            r.check_with("iota is a torus isomorphism", false, e.to_string());
            return r;
        }
    };
    r.check("iota is a torus isomorphism", true);
    r.check_result("mutation images match print", mutation_matches_print(&maps.mutation, data));
    match match_entries(&state, &targets, &maps, &data.pairs) {
        Ok(entries) => {
            let left = entries.iter().filter(|e| !e.cancelled).count();
            r.check_with("every formal inverse cancels", left == 0, format!("{left} residual"));
            for e in &entries {
                let name = format!("{}[{}][{}] ↦ {}_I", e.pair.0, e.row + 1, e.col + 1, e.pair.1);
                if e.equal {
                    r.check(name, true);
                } else {
                    r.check_with(name, false, format!("got {}, expected {}", e.image, e.expected));
                }
            }
        }
        Err(e) => {
            r.check_with("entrywise match", false, e.to_string());
        }
    }
    r
}

fn mconv_conjugator(d4: &GdahaPresentation) -> Vec<TorusElement> {
    PrintedPipeline::builtin()
        .golden("conjugator")
        .iter()
        .map(|s| parse_element(&d4.torus, s).expect("bundled conjugator parses"))
        .collect()
}

/// The full match with bundled data.
pub fn verify_match() -> Report {
    let (e6, d4) = match (gdaha::build_e6(), gdaha::build_d4()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            let mut r = Report::new("mutation/seizure match");
            r.check_with("build generators", false, e.to_string());
            return r;
        }
    };
    verify_match_with(&e6, &d4, &MatchData::builtin())
}

#[cfg(test)]
mod tests;
