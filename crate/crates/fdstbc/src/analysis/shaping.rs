//! Cubic shaping: whether the real generator matrix is a scaled orthogonal matrix.

use crate::codes::CodeDescriptor;

#[derive(Debug, Clone, PartialEq)]
pub struct ShapingReport {
    /// Mean diagonal entry of GᵀG.
    pub lambda: f64,
    /// Largest relative spread of the diagonal around `lambda`.
    pub max_diag_spread: f64,
    /// Largest off-diagonal magnitude of GᵀG relative to `lambda`.
    pub max_offdiag: f64,
    pub scaled_orthogonal: bool,
}

pub fn cubic_shaping_check(desc: &CodeDescriptor) -> ShapingReport {
    let g = desc.generator_matrix();
    let gram = g.transpose() * &g;
    let n = gram.nrows();
    let lambda = (0..n).map(|i| gram[(i, i)]).sum::<f64>() / n as f64;
    let mut max_diag_spread: f64 = 0.0;
    let mut max_offdiag: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                max_diag_spread = max_diag_spread.max((gram[(i, i)] - lambda).abs() / lambda);
            } else {
                max_offdiag = max_offdiag.max(gram[(i, j)].abs() / lambda);
            }
        }
    }
    ShapingReport {
        lambda,
        max_diag_spread,
        max_offdiag,
        scaled_orthogonal: max_diag_spread < 1e-9 && max_offdiag < 1e-9,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_code, CodeId};

    #[test]
    fn qam_codes_have_cubic_shaping() {
        for id in [CodeId::S4x2, CodeId::S8x2, CodeId::Sr4x2] {
            let r = cubic_shaping_check(&build_code(id));
            assert!(r.scaled_orthogonal, "{id}: {r:?}");
        }
    }
}
