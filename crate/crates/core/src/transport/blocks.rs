use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncmat::NCMatrix;
use crate::qtorus::{rat, Torus, TorusElement};

/// `L_k = 1 + E_{k+1,k}` for `1 ≤ k ≤ n−1`.
pub fn block_l(torus: &Arc<Torus>, n: usize, k: usize) -> Result<NCMatrix<TorusElement>> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("L_{k} needs 1 ≤ k ≤ {}", n.saturating_sub(1))));
    }
    let mut m = NCMatrix::identity(n, &TorusElement::one(torus));
    m.set(k, k - 1, TorusElement::one(torus));
    Ok(m)
}

/// `H_k(t) = t^{−(n−k)/n}·diag(1,…,1,t,…,t)` with `k` ones; `t` must be a
/// monomial (roots are taken in Weyl form).
pub fn block_h(n: usize, k: usize, t: &TorusElement) -> Result<NCMatrix<TorusElement>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("H_{k} needs 1 ≤ k ≤ {n}")));
    }
    let (ni, ki) = (n as i64, k as i64);
    let low = t.mono_pow(rat(-(ni - ki), ni))?;
    let high = t.mono_pow(rat(ki, ni))?;
    Ok(NCMatrix::diagonal((0..n).map(|i| if i < k { low.clone() } else { high.clone() }).collect()))
}

/// Antidiagonal `(S)_{ij} = (−1)^{n−i}δ_{i,n+1−j}`.
pub fn block_s(torus: &Arc<Torus>, n: usize) -> NCMatrix<TorusElement> {
    NCMatrix::from_fn(n, |i, j| {
        if i + j == n - 1 {
            TorusElement::integer(torus, if (n - 1 - i) % 2 == 0 { 1 } else { -1 })
        } else {
            TorusElement::zero(torus)
        }
    })
}

/// The diagonal correction `(Q)_{ii} = q^{2−i−(n+1)/n²}`.
pub fn quantum_correction(torus: &Arc<Torus>, n: usize) -> NCMatrix<TorusElement> {
    let ni = n as i64;
    NCMatrix::diagonal(
        (1..=ni).map(|i| TorusElement::qpow(torus, rat(2 - i, 1) - rat(ni + 1, ni * ni))).collect(),
    )
}

/// `S^q = Q·S`, the side reversal used when composing quantum transports.
pub fn block_s_quantum(torus: &Arc<Torus>, n: usize) -> NCMatrix<TorusElement> {
    quantum_correction(torus, n).mul(&block_s(torus, n)).expect("same dimension")
}
