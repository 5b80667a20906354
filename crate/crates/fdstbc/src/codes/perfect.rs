//! Cyclic-algebra codewords in the layered form with the non-norm element γ above the
//! diagonal, optionally with trailing layers removed.

use crate::algebra::{ExactMatrix, KElem, LElem, NumberFieldCtx};
use crate::linalg::CMatrix;

/// Entry (r, c) is τ^c(a_{(r−c) mod n}), multiplied by γ when r < c. Missing layers are zero.
pub fn perfect_codeword_exact(ctx: &NumberFieldCtx, layers: &[KElem], gamma: &LElem) -> ExactMatrix {
    let n = ctx.n;
    assert!(layers.len() <= n, "more layers than the field degree");
    let layer = |l: usize| layers.get(l).cloned().unwrap_or_else(|| ctx.zero());
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let a = layer((r + n - c) % n);
                    let t = ctx.tau_pow(&a, c);
                    if r < c {
                        t.scale(gamma)
                    } else {
                        t
                    }
                })
                .collect()
        })
        .collect()
}

pub fn perfect_codeword(ctx: &NumberFieldCtx, layers: &[KElem], gamma: &LElem) -> CMatrix {
    let m = perfect_codeword_exact(ctx, layers, gamma);
    CMatrix::from_fn(ctx.n, ctx.n, |r, c| ctx.embed(&m[r][c]))
}
