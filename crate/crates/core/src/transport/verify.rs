use std::collections::BTreeMap;

use serde::Deserialize;

use super::chart::TriangleChart;
use super::dims::moduli_dimensions;
use crate::error::{Error, Result};
use crate::ncmat::NCMatrix;
use crate::qtorus::{parse_element, TorusElement};
use crate::report::Report;

pub const TRANSPORT_GOLDEN: &str = include_str!("../../data/transport_golden.json");

/// Printed quantum `T₁` matrices, keyed by rank, rows of element strings.
#[derive(Clone, Debug, Deserialize)]
pub struct TransportGolden {
    pub quantum_t1: BTreeMap<usize, Vec<Vec<String>>>,
}

impl TransportGolden {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn builtin() -> Self {
        Self::from_json(TRANSPORT_GOLDEN).expect("bundled transport data parses")
    }
}

fn cyclic_indices(i: usize) -> [usize; 3] {
    [i, i % 3 + 1, (i + 1) % 3 + 1]
}

fn classical_cycle(n: usize) -> Result<bool> {
    let c = TriangleChart::new(n, "Z")?;
    for i in 1..=3 {
        let ms = cyclic_indices(i).map(|k| c.transport_classical(k));
        let ms: Vec<_> = ms.into_iter().collect::<Result<_>>()?;
        if !NCMatrix::product(&ms)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn quantum_cycle(n: usize) -> Result<bool> {
    let c = TriangleChart::new(n, "Z")?;
    for i in 1..=3 {
        let ms = cyclic_indices(i).map(|k| c.transport_quantum(k));
        let ms: Vec<_> = ms.into_iter().collect::<Result<_>>()?;
        if !NCMatrix::product(&ms)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entry positions where the computed quantum `T₁` differs from `rows`.
pub fn golden_diff(n: usize, rows: &[Vec<String>]) -> Result<Vec<(usize, usize)>> {
    let c = TriangleChart::new(n, "Z")?;
    let t = c.torus();
    let g: NCMatrix<TorusElement> = NCMatrix::from_rows(
        rows.iter().map(|r| r.iter().map(|s| parse_element(t, s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
    )?;
    c.transport_quantum(1)?.diff_positions(&g)
}

/// Groupoid relations `T₁T₂T₃ = 1` (classical for `n = 2, 3, 4`, quantum
/// for `n = 2, 3`) and the printed quantum `T₁` matrices.
pub fn verify_transport_with(golden: &TransportGolden) -> Report {
    let mut r = Report::new("transport");
    for n in 2..=4 {
        r.check_result(format!("classical T1T2T3 = 1 (n={n})"), classical_cycle(n));
    }
    for n in 2..=3 {
        r.check_result(format!("quantum T1T2T3 = 1 (n={n})"), quantum_cycle(n));
    }
    for (n, rows) in &golden.quantum_t1 {
        let name = format!("quantum T1 matches the printed matrix (n={n})");
        match golden_diff(*n, rows) {
            Ok(d) if d.is_empty() => {
                r.check(name, true);
            }
            Ok(d) => {
                let pos: Vec<String> = d.iter().map(|(i, j)| format!("[{}][{}]", i + 1, j + 1)).collect();
                r.check_with(name, false, format!("differs at {}", pos.join(", ")));
            }
            Err(e) => {
                r.check_with(name, false, e.to_string());
            }
        }
    }
    r
}

pub fn verify_transport() -> Report {
    verify_transport_with(&TransportGolden::builtin())
}

/// `dimP = dimT` for every hyperbolic signature with `g ≤ 2`, `s ≤ 3`,
/// `m ≤ 4`, `n ≤ 5`.
pub fn verify_dims() -> Report {
    let mut r = Report::new("dims");
    let mut count = 0;
    let mut bad = Vec::new();
    for g in 0..=2 {
        for s in 1..=3 {
            for m in 0..=4 {
                for n in 2..=5 {
                    if let Ok((p, t)) = moduli_dimensions(g, s, m, n) {
                        count += 1;
                        if p != t {
                            bad.push(format!("(g,s,m,n)=({g},{s},{m},{n}): {p} ≠ {t}"));
                        }
                    }
                }
            }
        }
    }
    r.check_with(format!("dimP = dimT on {count} hyperbolic signatures"), bad.is_empty() && count > 0, bad.join("; "));
    r
}
