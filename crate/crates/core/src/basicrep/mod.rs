//! The basic representation of the D4 algebra on Laurent polynomials and
//! the image operators `L`, `U`, `Π` on `E(V) = Sym ⊕ (bz−1)Sym ⊕ Sym_q`.

pub mod laurent;
pub mod operators;
pub mod params;
pub mod verify;

pub use laurent::{LaurentOperator, LaurentPoly, OperatorMatrix, Triple, Q};
pub use operators::*;
pub use params::{Params, RootParams};
pub use verify::{inversion_round_trip, verify_basic_rep};

use num::One;

/// Spanning sets of the three subspaces up to degree `k`:
/// `z^j + z^{−j}`, `(bz−1)(z^j + z^{−j})`, `z^j + q^j z^{−j}` (`1` at `j = 0`).
pub fn spanning_set(p: &Params, k: i64) -> [Vec<LaurentPoly>; 3] {
    let sym = |j: i64| if j == 0 { LaurentPoly::one() } else { LaurentPoly::z(j).add(&LaurentPoly::z(-j)) };
    let bz1 = LaurentPoly::linear(-Q::one(), p.b.clone());
    let symq = |j: i64| {
        if j == 0 {
            LaurentPoly::one()
        } else {
            LaurentPoly::z(j).add(&LaurentPoly::monomial(-j, laurent::pow(&p.q, j)))
        }
    };
    [(0..=k).map(sym).collect(), (0..=k).map(|j| bz1.mul(&sym(j))).collect(), (0..=k).map(symq).collect()]
}

/// Single-component triples spanning `E(V)` up to degree `k`.
pub fn spanning_triples(p: &Params, k: i64) -> Vec<Triple> {
    let s = spanning_set(p, k);
    let mut out = Vec::new();
    for (slot, fs) in s.iter().enumerate() {
        for f in fs {
            let mut t: Triple = Default::default();
            t[slot] = f.clone();
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests;
