use crate::error::{Error, Result};

/// Dimension of the moduli space of pinnings and of the bordered cusped
/// Teichmüller space for `Σ_{g,s,m}` in rank `n`:
/// `dimP = (4g−4+2s+m)(n+4)(n−1)/2 − (6g−6+3s+m)(n−1)` and
/// `dimT = (2g+s−2+m)(n²−1) − m·n(n−1)/2`.
pub fn moduli_dimensions(g: i64, s: i64, m: i64, n: i64) -> Result<(i64, i64)> {
    let area = 4 * g - 4 + 2 * s + m;
    if area <= 0 || g < 0 || s < 1 || m < 0 || n < 2 {
        return Err(Error::NonHyperbolic(format!("(g,s,m,n) = ({g},{s},{m},{n})")));
    }
    let dim_p = area * (n + 4) * (n - 1) / 2 - (6 * g - 6 + 3 * s + m) * (n - 1);
    let dim_t = (2 * g + s - 2 + m) * (n * n - 1) - m * n * (n - 1) / 2;
    Ok((dim_p, dim_t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_signatures() {
        assert_eq!(moduli_dimensions(0, 1, 3, 3).unwrap(), (7, 7));
        assert_eq!(moduli_dimensions(0, 1, 3, 2).unwrap(), (3, 3));
    }

    #[test]
    fn non_hyperbolic_rejected() {
        assert!(matches!(moduli_dimensions(0, 1, 1, 2), Err(Error::NonHyperbolic(_))));
        assert!(matches!(moduli_dimensions(0, 2, 0, 3), Err(Error::NonHyperbolic(_))));
    }
}
