use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncmat::NCMatrix;
use crate::qtorus::{weyl_quantize, Quiver, QuiverBuilder, Torus, TorusElement};

use super::blocks::{block_h, block_l, block_s, quantum_correction};

/// Barycentric label `(i, j, k)` with `i + j + k = n`.
pub type Label = [usize; 3];

/// The rank-`n` tessellation of a triangle into `n²` similar tiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tessellation {
    n: usize,
}

/// What a barycentric triple denotes, read off from its coordinate sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleKind {
    Vertex,
    UpwardTile,
    DownwardTile,
    Invalid,
}

impl Tessellation {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=9).contains(&n) {
            return Err(Error::OutOfRange(format!("rank {n} outside 2..=9")));
        }
        Ok(Tessellation { n })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn classify(&self, t: Label) -> TripleKind {
        let s = t[0] + t[1] + t[2];
        if s == self.n {
            TripleKind::Vertex
        } else if s + 1 == self.n {
            TripleKind::UpwardTile
        } else if s + 2 == self.n {
            TripleKind::DownwardTile
        } else {
            TripleKind::Invalid
        }
    }

    pub fn is_corner(&self, v: Label) -> bool {
        v.iter().any(|&x| x == self.n)
    }

    /// Fock–Goncharov vertices: every vertex except the three corners.
    pub fn vertices(&self) -> Vec<Label> {
        let n = self.n;
        let mut out = Vec::new();
        for i in (0..=n).rev() {
            for j in (0..=n - i).rev() {
                let v = [i, j, n - i - j];
                if !self.is_corner(v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn fg_count(&self) -> usize {
        (self.n + 4) * (self.n - 1) / 2
    }

    fn triples(&self, sum: usize) -> Vec<Label> {
        let mut out = Vec::new();
        for a in 0..=sum {
            for b in 0..=sum - a {
                out.push([a, b, sum - a - b]);
            }
        }
        out
    }

    /// Centers of upward tiles.
    pub fn upward_tiles(&self) -> Vec<Label> {
        self.triples(self.n - 1)
    }

    /// Centers of downward tiles.
    pub fn downward_tiles(&self) -> Vec<Label> {
        if self.n < 2 {
            return Vec::new();
        }
        self.triples(self.n - 2)
    }

    /// Oriented tile boundaries: upward tiles clockwise, downward ones counterclockwise.
    pub fn tile_cycles(&self) -> Vec<[Label; 3]> {
        let mut out = Vec::new();
        for [a, b, c] in self.upward_tiles() {
            out.push([[a + 1, b, c], [a, b + 1, c], [a, b, c + 1]]);
        }
        for [a, b, c] in self.downward_tiles() {
            out.push([[a + 1, b + 1, c], [a + 1, b, c + 1], [a, b + 1, c + 1]]);
        }
        out
    }

    /// Interior vertices of the oriented side `XY`, listed from corner `X` to corner `Y`.
    pub fn side(&self, side: Side) -> Vec<Label> {
        let (x, y) = side.corners();
        (1..self.n)
            .map(|k| {
                let mut v = [0; 3];
                v[x] = self.n - k;
                v[y] = k;
                v
            })
            .collect()
    }
}

/// An oriented side of the triangle, named by its corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    S12,
    S23,
    S31,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "12" => Ok(Side::S12),
            "23" => Ok(Side::S23),
            "31" => Ok(Side::S31),
            _ => Err(Error::Parse(format!("unknown side {s}"))),
        }
    }

    /// Zero-based corner indices `(X, Y)`.
    pub fn corners(self) -> (usize, usize) {
        match self {
            Side::S12 => (0, 1),
            Side::S23 => (1, 2),
            Side::S31 => (2, 0),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::S12 => "12",
            Side::S23 => "23",
            Side::S31 => "31",
        })
    }
}

/// Side entered and side exited by the transport `T_index`.
pub fn transport_sides(index: usize) -> Result<(Side, Side)> {
    match index {
        1 => Ok((Side::S12, Side::S31)),
        2 => Ok((Side::S23, Side::S12)),
        3 => Ok((Side::S31, Side::S23)),
        _ => Err(Error::OutOfRange(format!("transport index {index}"))),
    }
}

/// Cyclic relabelling taking the `T₁` formula to `T_index`: `Z_{ijk} ↦ Z_{kij}` per step.
pub fn rotate(v: Label, index: usize) -> Label {
    match index {
        2 => [v[2], v[0], v[1]],
        3 => [v[1], v[2], v[0]],
        _ => v,
    }
}

/// One factor of a transport word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    S,
    L(usize),
    H(usize, Label),
}

/// Transport word of `T₁`:
/// `S·∏_k H_{n−k}(Z_{k,0,n−k})·L_{n−1}·∏_j[∏_{i=j..1} L_{n−i−1}H_{n−i}(Z_{n−j−1,i,j+1−i})·L_{n−1}]·∏_k H_k(Z_{n−k,k,0})`.
/// Column `j` holds the interior vertices at distance `j` from corner 1, and
/// the `L` factors spell the reduced word `s_{n−1}·(s_{n−2}s_{n−1})⋯(s_1⋯s_{n−1})`.
pub fn transport_word(n: usize, index: usize) -> Result<Vec<Block>> {
    transport_sides(index)?;
    let mut w = vec![Block::S];
    for k in 1..n {
        w.push(Block::H(n - k, [k, 0, n - k]));
    }
    w.push(Block::L(n - 1));
    for j in 1..n.saturating_sub(1) {
        for i in (1..=j).rev() {
            w.push(Block::L(n - i - 1));
            w.push(Block::H(n - i, [n - j - 1, i, j + 1 - i]));
        }
        w.push(Block::L(n - 1));
    }
    for k in 1..n {
        w.push(Block::H(k, [n - k, k, 0]));
    }
    Ok(w
        .into_iter()
        .map(|b| match b {
            Block::H(k, v) => Block::H(k, rotate(v, index)),
            other => other,
        })
        .collect())
}

/// A triangle's Fock–Goncharov chart: tessellation, quiver and quantum torus.
#[derive(Clone, Debug)]
pub struct TriangleChart {
    tess: Tessellation,
    prefix: String,
    torus: Arc<Torus>,
}

impl TriangleChart {
    /// Vertex names are `prefix` followed by the barycentric digits, e.g. `Z111`.
    pub fn new(n: usize, prefix: &str) -> Result<Self> {
        let tess = Tessellation::new(n)?;
        let mut chart = TriangleChart { tess, prefix: prefix.to_string(), torus: Torus::new(Quiver::discrete(&[])?, 1) };
        chart.torus = Torus::new(chart.build_quiver()?, n as u64);
        Ok(chart)
    }

    pub fn rank(&self) -> usize {
        self.tess.n
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn tessellation(&self) -> &Tessellation {
        &self.tess
    }

    pub fn name(&self, v: Label) -> String {
        format!("{}{}{}{}", self.prefix, v[0], v[1], v[2])
    }

    pub fn quiver(&self) -> &Quiver {
        self.torus.quiver()
    }

    /// The quantum torus `X^{1/n}` of this triangle.
    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    /// Each tile adds a half arrow along each of its oriented edges; edges at a
    /// corner are dropped. Interior edges collect two halves, side edges one.
    fn build_quiver(&self) -> Result<Quiver> {
        let mut b = QuiverBuilder::new();
        for v in self.tess.vertices() {
            b.vertex(&self.name(v), false);
        }
        for cyc in self.tess.tile_cycles() {
            for e in 0..3 {
                let (x, y) = (cyc[e], cyc[(e + 1) % 3]);
                if self.tess.is_corner(x) || self.tess.is_corner(y) {
                    continue;
                }
                b.arrow2(&self.name(x), &self.name(y), 1);
            }
        }
        b.build()
    }

    /// Names of the interior vertices of an oriented side.
    pub fn side_names(&self, side: Side) -> Vec<String> {
        self.tess.side(side).into_iter().map(|v| self.name(v)).collect()
    }

    fn check_torus(&self, torus: &Arc<Torus>) -> Result<()> {
        for v in self.tess.vertices() {
            torus.index(&self.name(v))?;
        }
        if torus.root_order() % self.tess.n as u64 != 0 {
            return Err(Error::Structural(format!("torus lacks {}-th roots", self.tess.n)));
        }
        Ok(())
    }

    fn word_product(&self, torus: &Arc<Torus>, index: usize) -> Result<NCMatrix<TorusElement>> {
        let n = self.tess.n;
        let mut acc = NCMatrix::identity(n, &TorusElement::one(torus));
        for b in transport_word(n, index)? {
            let m = match b {
                Block::S => block_s(torus, n),
                Block::L(k) => block_l(torus, n, k)?,
                Block::H(k, v) => block_h(n, k, &TorusElement::var(torus, &self.name(v), 1.into())?)?,
            };
            acc = acc.mul(&m)?;
        }
        Ok(acc)
    }

    /// Classical `T_index` over the commutative torus on this chart's vertices.
    pub fn transport_classical(&self, index: usize) -> Result<NCMatrix<TorusElement>> {
        let t = Torus::new(self.quiver().commutative(), self.tess.n as u64);
        self.word_product(&t, index)
    }

    /// Quantum `T^q_index = Q·ord(T_index)` in this chart's own torus.
    pub fn transport_quantum(&self, index: usize) -> Result<NCMatrix<TorusElement>> {
        self.transport_quantum_in(&self.torus, index)
    }

    /// Quantum transport computed inside a larger torus containing this chart
    /// as a full subquiver (e.g. the disjoint union of a surface's triangles).
    pub fn transport_quantum_in(&self, torus: &Arc<Torus>, index: usize) -> Result<NCMatrix<TorusElement>> {
        self.check_torus(torus)?;
        let classical_torus = Torus::new(torus.quiver().commutative(), torus.root_order());
        let classical = self.word_product(&classical_torus, index)?;
        let ordered = classical.try_map(|x| weyl_quantize(x, torus))?;
        quantum_correction(torus, self.tess.n).mul(&ordered)
    }

    /// Quantum inverse through the groupoid relation: `T_i⁻¹ = T_{i+1}T_{i+2}`.
    pub fn transport_quantum_inverse_in(&self, torus: &Arc<Torus>, index: usize) -> Result<NCMatrix<TorusElement>> {
        transport_sides(index)?;
        let a = index % 3 + 1;
        let b = a % 3 + 1;
        self.transport_quantum_in(torus, a)?.mul(&self.transport_quantum_in(torus, b)?)
    }
}
