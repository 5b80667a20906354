//! Group separability of the inner decoding groups.

use crate::codes::CodeDescriptor;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport {
    /// Largest ‖X_a X_bᴴ + X_b X_aᴴ‖_F over coordinates a, b in different inner groups.
    pub max_cross: f64,
    /// Largest of the same quantity over distinct coordinates inside one group.
    pub max_within: f64,
    pub pairs_checked: usize,
}

fn anticommutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    let m = a * b.adjoint() + b * a.adjoint();
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn group_separability(desc: &CodeDescriptor) -> Result<SeparabilityReport> {
    let groups = desc
        .groups
        .as_ref()
        .ok_or_else(|| Error::NoGroups(desc.id.to_string()))?;
    let mut report = SeparabilityReport { max_cross: 0.0, max_within: 0.0, pairs_checked: 0 };
    for (gi, g) in groups.inner.iter().enumerate() {
        for (hi, h) in groups.inner.iter().enumerate().skip(gi) {
            for &a in g {
                for &b in h {
                    if gi == hi && b <= a {
                        continue;
                    }
                    let v = anticommutator_norm(&desc.weights[a], &desc.weights[b]);
                    if gi == hi {
                        report.max_within = report.max_within.max(v);
                    } else {
                        report.max_cross = report.max_cross.max(v);
                        report.pairs_checked += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}
