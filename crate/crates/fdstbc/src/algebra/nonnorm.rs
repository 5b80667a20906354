//! Exact sweep of the non-norm condition C·Υ(C)⋯Υ^{n−1}(C) ≠ γ_M.

use super::numfield::NumberFieldCtx;
use super::quaternion::AlgElem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct NonNormReport {
    pub violations: u64,
    pub tested: u64,
    pub skipped_zero: u64,
}

/// C·Υ(C)⋯Υ^{n−1}(C).
pub fn twisted_norm(ctx: &NumberFieldCtx, c: &AlgElem) -> AlgElem {
    let mut p = c.clone();
    let mut t = c.clone();
    for _ in 1..ctx.n {
        t = t.upsilon(ctx);
        p = p.mul(&t, ctx);
    }
    p
}

pub fn nonnorm_check(ctx: &NumberFieldCtx, samples: u64, bound: i64, seed: u64) -> NonNormReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = AlgElem::from_l(ctx, &ctx.gamma_m);
    let mut report = NonNormReport { violations: 0, tested: 0, skipped_zero: 0 };
    for _ in 0..samples {
        let c = AlgElem::random(ctx, &mut rng, bound);
        if c.is_zero() {
            report.skipped_zero += 1;
            continue;
        }
        report.tested += 1;
        if twisted_norm(ctx, &c) == gamma {
            report.violations += 1;
        }
    }
    report
}
