//! Non-vanishing determinant check on integer codewords.

use crate::algebra::det_exact;
use crate::codes::{CodeDescriptor, Structure};
use crate::linalg::det;
use crate::algebra::{LElem, LKind};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationReport {
    pub samples: u64,
    /// Samples whose determinant vanished.
    pub zero_count: u64,
    /// Largest relative gap between the floating-point |det|² and its exact integer value.
    pub max_integer_deviation: f64,
    /// Smallest nonzero |det|² observed.
    pub min_nonzero: Option<BigInt>,
    /// Nonzero |det|² values not divisible by the code's divisor.
    pub divisor_violations: u64,
    /// Determinants that were not integers of the base field.
    pub non_integral: u64,
    /// True when the determinant was computed exactly; false for the numeric fallback.
    pub exact: bool,
}

impl QuantizationReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.zero_count == 0
            && self.divisor_violations == 0
            && self.non_integral == 0
            && self.max_integer_deviation <= tol
    }
}

fn random_symbol<R: Rng + ?Sized>(rng: &mut R, bound: i64, kind: LKind) -> LElem {
    LElem::from_ints(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound), kind)
}

/// Draw `samples` symbol vectors with both integer coordinates in [−box, box] and check
/// that |det|² of each unnormalized codeword is a nonzero integer multiple of the divisor.
pub fn det_quantization_check(
    desc: &CodeDescriptor,
    samples: u64,
    box_bound: i64,
    seed: u64,
) -> QuantizationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kind = desc.constellation_kind.lattice();
    let divisor = BigInt::from(desc.unnorm_mindet_divisor.unwrap_or(1));
    let mut report = QuantizationReport {
        samples,
        zero_count: 0,
        max_integer_deviation: 0.0,
        min_nonzero: None,
        divisor_violations: 0,
        non_integral: 0,
        exact: !matches!(desc.structure, Structure::Rotated),
    };
    for _ in 0..samples {
        let symbols: Vec<LElem> = (0..desc.k).map(|_| random_symbol(&mut rng, box_bound, kind)).collect();
        let s: Vec<Complex64> = symbols.iter().map(LElem::embed).collect();
        let numeric = det(&desc.encode(&s, None).expect("k symbols")).norm_sqr();
        let value = match (desc.field(), desc.exact_codeword(&symbols)) {
            (Some(ctx), Ok(m)) => {
                let d = det_exact(ctx, &m);
                if !d.in_base_field() || !d.is_integral_coords() {
                    report.non_integral += 1;
                    continue;
                }
                let n = d.constant().norm();
                if !n.is_integer() {
                    report.non_integral += 1;
                    continue;
                }
                n.to_integer()
            }
            _ => BigInt::from(numeric.round() as i128),
        };
        let exact = value.to_f64().unwrap_or(f64::INFINITY);
        let dev = (numeric - exact).abs() / exact.max(1.0);
        report.max_integer_deviation = report.max_integer_deviation.max(dev);
        if value.is_zero() {
            report.zero_count += 1;
            continue;
        }
        if !(&value % &divisor).is_zero() {
            report.divisor_violations += 1;
        }
        if report.min_nonzero.as_ref().is_none_or(|m| value < *m) {
            report.min_nonzero = Some(value);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_code, CodeId};

    #[test]
    fn layered_codes_are_quantized() {
        for (id, n) in [(CodeId::S4x2, 40), (CodeId::S6x2, 20), (CodeId::S8x2, 10)] {
            let r = det_quantization_check(&build_code(id), n, 2, 7);
            assert!(r.exact);
            assert!(r.passed(1e-6), "{id}: {r:?}");
            let div = build_code(id).unnorm_mindet_divisor.unwrap();
            assert!(r.min_nonzero.unwrap() >= BigInt::from(div));
        }
    }

    #[test]
    fn zero_codeword_detected() {
        let r = det_quantization_check(&build_code(CodeId::S4x2), 5, 0, 1);
        assert_eq!(r.zero_count, 5);
        assert!(!r.passed(1e-6));
    }
}
