use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use serde_json::{json, Value};

use super::coeff::{fmt_rat, parse_rat, rat, Rat};
use crate::error::{Error, Result};

/// Vertex set with frozen flags and a skew-symmetric half-integral arrow weight.
///
/// Vertices are kept sorted by name; that order is the global order of every
/// normal form. Weights are stored doubled (`2w`) so a dashed arrow is `1`.
#[derive(Clone, Debug)]
pub struct Quiver {
    names: Vec<String>,
    frozen: Vec<bool>,
    w2: Vec<i64>,
    fingerprint: u64,
}

impl PartialEq for Quiver {
    fn eq(&self, o: &Self) -> bool {
        self.fingerprint == o.fingerprint && self.names == o.names && self.frozen == o.frozen && self.w2 == o.w2
    }
}

impl Eq for Quiver {}

/// Incremental construction of a [`Quiver`]; vertex order is fixed by [`QuiverBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct QuiverBuilder {
    vertices: BTreeMap<String, bool>,
    arrows: Vec<(String, String, i64)>,
}

impl QuiverBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str, frozen: bool) -> &mut Self {
        self.vertices.insert(name.to_string(), frozen);
        self
    }

    /// Adds `w2/2` arrows `from → to` (accumulating with earlier arrows).
    pub fn arrow2(&mut self, from: &str, to: &str, w2: i64) -> &mut Self {
        self.arrows.push((from.to_string(), to.to_string(), w2));
        self
    }

    pub fn build(&self) -> Result<Quiver> {
        let names: Vec<String> = self.vertices.keys().cloned().collect();
        let frozen: Vec<bool> = self.vertices.values().copied().collect();
        let n = names.len();
        let mut q = Quiver { names, frozen, w2: vec![0; n * n], fingerprint: 0 };
        for (a, b, w) in &self.arrows {
            let i = q.index(a).ok_or_else(|| Error::Structural(format!("unknown vertex {a}")))?;
            let j = q.index(b).ok_or_else(|| Error::Structural(format!("unknown vertex {b}")))?;
            if i == j {
                if *w != 0 {
                    return Err(Error::Structural(format!("loop at {a}")));
                }
                continue;
            }
            q.w2[i * n + j] += w;
            q.w2[j * n + i] -= w;
        }
        q.refresh();
        Ok(q)
    }
}

impl Quiver {
    /// Quiver without arrows (a commutative torus).
    pub fn discrete(names: &[String]) -> Result<Quiver> {
        let mut b = QuiverBuilder::new();
        for n in names {
            b.vertex(n, false);
        }
        if b.vertices.len() != names.len() {
            return Err(Error::Structural("duplicate vertex name".into()));
        }
        b.build()
    }

    fn refresh(&mut self) {
        let mut h = DefaultHasher::new();
        self.names.hash(&mut h);
        self.frozen.hash(&mut h);
        self.w2.hash(&mut h);
        self.fingerprint = h.finish();
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    /// Doubled weight `2·w_{ij}`: number of arrows `i → j` (dashed = ½) times two.
    #[inline]
    pub fn w2(&self, i: usize, j: usize) -> i64 {
        self.w2[i * self.names.len() + j]
    }

    /// Weight `w_{ij}` as a rational.
    pub fn weight(&self, i: usize, j: usize) -> Rat {
        rat(self.w2(i, j), 2)
    }

    pub fn is_zero(&self) -> bool {
        self.w2.iter().all(|w| *w == 0)
    }

    /// Same vertices with every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        let mut q = self.clone();
        for w in q.w2.iter_mut() {
            *w = -*w;
        }
        q.refresh();
        q
    }

    /// Same vertices, no arrows.
    pub fn commutative(&self) -> Quiver {
        let mut q = self.clone();
        q.w2.iter_mut().for_each(|w| *w = 0);
        q.refresh();
        q
    }

    pub fn with_frozen(&self, names: &[&str]) -> Result<Quiver> {
        let mut q = self.clone();
        for n in names {
            let i = q.index(n).ok_or_else(|| Error::Structural(format!("unknown vertex {n}")))?;
            q.frozen[i] = true;
        }
        q.refresh();
        Ok(q)
    }

    /// Full subquiver on the complement of `removed`.
    pub fn without(&self, removed: &[&str]) -> Result<Quiver> {
        for r in removed {
            if self.index(r).is_none() {
                return Err(Error::Structural(format!("unknown vertex {r}")));
            }
        }
        let mut b = QuiverBuilder::new();
        let keep: Vec<usize> = (0..self.len()).filter(|i| !removed.contains(&self.names[*i].as_str())).collect();
        for &i in &keep {
            b.vertex(&self.names[i], self.frozen[i]);
        }
        for (x, &i) in keep.iter().enumerate() {
            for &j in &keep[x + 1..] {
                let w = self.w2(i, j);
                if w != 0 {
                    b.arrow2(&self.names[i], &self.names[j], w);
                }
            }
        }
        b.build()
    }

    /// Every nonzero arrow as `(from, to, 2w)` with `2w > 0`.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let w = self.w2(i, j);
                if w > 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn to_json(&self, root_order: u64) -> Value {
        let vertices: Vec<Value> =
            (0..self.len()).map(|i| json!({"name": self.names[i], "frozen": self.frozen[i]})).collect();
        let arrows: Vec<Value> = self
            .arrows()
            .into_iter()
            .map(|(i, j, w)| json!({"from": self.names[i], "to": self.names[j], "weight": format!("{w}/2")}))
            .collect();
        json!({"root_order": root_order, "vertices": vertices, "arrows": arrows})
    }

    /// Reads the quiver JSON format; returns the quiver and its root order.
    pub fn from_json(v: &Value) -> Result<(Quiver, u64)> {
        let bad = |m: &str| Error::Parse(format!("quiver json: {m}"));
        let root = v.get("root_order").and_then(Value::as_u64).unwrap_or(1);
        if root == 0 {
            return Err(bad("root_order must be positive"));
        }
        let mut b = QuiverBuilder::new();
        let verts = v.get("vertices").and_then(Value::as_array).ok_or_else(|| bad("missing vertices"))?;
        for x in verts {
            let name = x.get("name").and_then(Value::as_str).ok_or_else(|| bad("vertex without name"))?;
            if b.vertices.contains_key(name) {
                return Err(bad(&format!("duplicate vertex {name}")));
            }
            let frozen = x.get("frozen").and_then(Value::as_bool).unwrap_or(false);
            b.vertex(name, frozen);
        }
        if let Some(arrows) = v.get("arrows") {
            let arrows = arrows.as_array().ok_or_else(|| bad("arrows must be a list"))?;
            for a in arrows {
                let from = a.get("from").and_then(Value::as_str).ok_or_else(|| bad("arrow without from"))?;
                let to = a.get("to").and_then(Value::as_str).ok_or_else(|| bad("arrow without to"))?;
                let w = match a.get("weight") {
                    None => rat(1, 1),
                    Some(Value::String(s)) => parse_rat(s).ok_or_else(|| bad("bad weight"))?,
                    Some(Value::Number(n)) => rat(n.as_i64().ok_or_else(|| bad("bad weight"))?, 1),
                    Some(_) => return Err(bad("bad weight")),
                };
                let w2 = w * 2;
                if !w2.is_integer() {
                    return Err(bad(&format!("weight {} is not half-integral", fmt_rat(&w))));
                }
                b.arrow2(from, to, *w2.numer());
            }
        }
        Ok((b.build().map_err(|e| bad(&e.to_string()))?, root))
    }
}
