//! JSON export of code descriptors.

use super::descriptor::CodeDescriptor;
use serde::Serialize;
use serde_json::value::RawValue;

/// Float rendered with 17 significant digits.
pub fn float17(x: f64) -> Box<RawValue> {
    let s = if x == 0.0 { "0.0".to_string() } else { format!("{x:.16e}") };
    RawValue::from_string(s).expect("formatted float is valid JSON")
}

#[derive(Serialize)]
struct Groups<'a> {
    outer: &'a [usize],
    inner: &'a [Vec<usize>],
}

#[derive(Serialize)]
struct DescriptorJson<'a> {
    id: &'a str,
    n_t: usize,
    #[serde(rename = "T")]
    t: usize,
    k: usize,
    lattice_norm: Box<RawValue>,
    constellation_kind: &'a str,
    symbol_order: &'a str,
    /// weight_matrices[j][time][antenna] = [re, im]
    weight_matrices: Vec<Vec<Vec<[Box<RawValue>; 2]>>>,
    groups: Option<Groups<'a>>,
    unnorm_mindet_divisor: Option<u64>,
}

pub fn descriptor_json(d: &CodeDescriptor) -> String {
    let weight_matrices = d
        .weights
        .iter()
        .map(|w| {
            (0..d.t)
                .map(|c| (0..d.n_t).map(|r| [float17(w[(r, c)].re), float17(w[(r, c)].im)]).collect())
                .collect()
        })
        .collect();
    let json = DescriptorJson {
        id: d.id.as_str(),
        n_t: d.n_t,
        t: d.t,
        k: d.k,
        lattice_norm: float17(d.lattice_norm),
        constellation_kind: d.constellation_kind.name(),
        symbol_order: "symbol (k, i) at position k*n_t + i; weight 2p multiplies the real/integer \
                       coordinate of symbol p and weight 2p+1 its i/omega coordinate",
        weight_matrices,
        groups: d.groups.as_ref().map(|g| Groups { outer: &g.outer, inner: &g.inner }),
        unnorm_mindet_divisor: d.unnorm_mindet_divisor,
    };
    serde_json::to_string_pretty(&json).expect("descriptor serialises")
}
