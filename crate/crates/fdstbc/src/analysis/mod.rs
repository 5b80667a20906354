//! Analysis of code properties: minimum determinant, determinant quantization, shaping
//! and decoding-group separability.

mod energy;
mod mindet;
mod quantization;
mod separability;
mod shaping;

pub use mindet::{
    chunk_rng, difference_det, difference_levels, min_det_exhaustive, min_det_sampled,
    min_det_targeted, normalize_det, sample_difference, MinDetResult, SearchMode, EXHAUSTIVE_CAP,
};
pub use energy::{energy_check, EnergyReport};
pub use quantization::{det_quantization_check, QuantizationReport};
pub use separability::{group_separability, SeparabilityReport};
pub use shaping::{cubic_shaping_check, ShapingReport};

use crate::codes::{float17, CodeDescriptor, Constellation};
use serde::Serialize;
use serde_json::value::RawValue;

#[derive(Serialize)]
struct MinDetJson<'a> {
    code: &'a str,
    constellation: String,
    mode: &'a str,
    delta_min: Box<RawValue>,
    unnorm_min: Box<RawValue>,
    achieving_diff: Vec<[Box<RawValue>; 2]>,
    pairs_scanned: u64,
    seconds: Box<RawValue>,
}

/// JSON record of a minimum-determinant search.
pub fn mindet_json(
    desc: &CodeDescriptor,
    constellation: &Constellation,
    result: &MinDetResult,
    seconds: f64,
) -> String {
    let json = MinDetJson {
        code: desc.id.as_str(),
        constellation: constellation.label(),
        mode: result.mode.as_str(),
        delta_min: float17(result.delta_min),
        unnorm_min: float17(result.unnorm_min),
        achieving_diff: result.achieving_diff.iter().map(|z| [float17(z.re), float17(z.im)]).collect(),
        pairs_scanned: result.pairs_scanned,
        seconds: float17(seconds),
    };
    serde_json::to_string_pretty(&json).expect("serializable")
}
