//! Maximum-likelihood decoding: exhaustive enumeration and the conditional group decoder.

mod exhaustive;
mod fast;
mod model;

pub use exhaustive::{ml_exhaustive, EXHAUSTIVE_DECODE_CAP};
pub use fast::{hard_limit, ml_fast};
pub use model::{ml_metric, realvec, RealModel};

use crate::codes::{CodeDescriptor, Constellation};
use crate::error::Result;
use crate::linalg::CMatrix;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub symbols: Vec<Complex64>,
    /// Constellation point indices of `symbols`.
    pub indices: Vec<usize>,
    /// ‖Y − √ρ·H·S‖² of the decoded codeword.
    pub metric: f64,
    /// Candidate evaluations: leaves for the exhaustive decoder; inner-group candidates
    /// plus one per outer assignment for the fast decoder.
    pub metric_evals: u64,
    pub group_solves: u64,
}

impl DecodeResult {
    #[allow(clippy::too_many_arguments)]
    fn finish(
        desc: &CodeDescriptor,
        constellation: &Constellation,
        y: &CMatrix,
        h: &CMatrix,
        rho: f64,
        indices: Vec<usize>,
        metric_evals: u64,
        group_solves: u64,
    ) -> Result<Self> {
        let symbols: Vec<Complex64> = indices.iter().map(|&i| constellation.points[i]).collect();
        let metric = ml_metric(desc, constellation, y, h, rho, &symbols)?;
        Ok(DecodeResult { symbols, indices, metric, metric_evals, group_solves })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Fast,
    Exhaustive,
}

impl DecoderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::Fast => "fast",
            DecoderKind::Exhaustive => "exhaustive",
        }
    }
}

/// Dispatch to the requested decoder.
pub fn decode(
    kind: DecoderKind,
    desc: &CodeDescriptor,
    constellation: &Constellation,
    y: &CMatrix,
    h: &CMatrix,
    rho: f64,
    hard_limit: bool,
) -> Result<DecodeResult> {
    match kind {
        DecoderKind::Fast => ml_fast(desc, constellation, y, h, rho, hard_limit),
        DecoderKind::Exhaustive => ml_exhaustive(desc, constellation, y, h, rho),
    }
}
