//! The right A-module M_A with basis 1, i, …, i^{n−1}, relations A·i = i·Υ(A) and iⁿ = γ_M,
//! and the closed-form right inverse of A0 + i·A1.

use super::numfield::NumberFieldCtx;
use super::quaternion::AlgElem;
use crate::error::{Error, Result};

/// B_0 + i·B_1 + … + i^{n−1}·B_{n−1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleElem {
    pub parts: Vec<AlgElem>,
}

impl BimoduleElem {
    pub fn zero(ctx: &NumberFieldCtx) -> Self {
        BimoduleElem { parts: vec![AlgElem::zero(ctx); ctx.n] }
    }

    pub fn one(ctx: &NumberFieldCtx) -> Self {
        Self::monomial(ctx, 0, AlgElem::one(ctx))
    }

    /// i^k · a.
    pub fn monomial(ctx: &NumberFieldCtx, k: usize, a: AlgElem) -> Self {
        let mut e = Self::zero(ctx);
        e.parts[k] = a;
        e
    }

    /// A0 + i·A1.
    pub fn linear(ctx: &NumberFieldCtx, a0: AlgElem, a1: AlgElem) -> Self {
        let mut e = Self::zero(ctx);
        e.parts[0] = a0;
        if ctx.n > 1 {
            e.parts[1] = a1;
        }
        e
    }

    pub fn is_one(&self, ctx: &NumberFieldCtx) -> bool {
        *self == Self::one(ctx)
    }

    /// Product via (i^a X)(i^b Y) = i^{a+b} Υ^b(X) Y, folding i^{n+r} into i^r(γ_M ·).
    pub fn mul(&self, o: &BimoduleElem, ctx: &NumberFieldCtx) -> BimoduleElem {
        let n = ctx.n;
        let gamma = AlgElem::from_l(ctx, &ctx.gamma_m);
        let mut out = Self::zero(ctx);
        for (a, x) in self.parts.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.parts.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut t = x.upsilon_pow(b, ctx).mul(y, ctx);
                let mut e = a + b;
                while e >= n {
                    t = gamma.mul(&t, ctx);
                    e -= n;
                }
                out.parts[e] = out.parts[e].add(&t);
            }
        }
        out
    }
}

/// Unique right inverse B of A0 + i·A1, i.e. (A0 + i·A1)·B = 1.
pub fn right_inverse(ctx: &NumberFieldCtx, a0: &AlgElem, a1: &AlgElem) -> Result<BimoduleElem> {
    let n = ctx.n;
    if a1.is_zero() {
        let inv = a0.inv(ctx).ok_or(Error::BothZero)?;
        return Ok(BimoduleElem::monomial(ctx, 0, inv));
    }
    let a1_inv = a1.inv(ctx).expect("nonzero element of a division algebra");
    let a0p = a0.mul(&a1_inv, ctx);
    let conj: Vec<AlgElem> = (0..n).map(|k| a0p.upsilon_pow(k, ctx)).collect();

    // B'_{n−1} = [(−1)^{n−1} ∏_{k<n} Υ^k(A0') + γ_M]^{-1}
    let mut prod = AlgElem::one(ctx);
    for c in &conj {
        prod = prod.mul(c, ctx);
    }
    if (n - 1) % 2 == 1 {
        prod = prod.neg();
    }
    let base = prod.add(&AlgElem::from_l(ctx, &ctx.gamma_m));
    let b_last = base
        .inv(ctx)
        .expect("non-norm condition guarantees an invertible pivot");

    // B'_{n−k} = (−1)^{k−1} (∏_{i=n−k+1}^{n−1} Υ^i(A0')) B'_{n−1}
    let mut primes = vec![AlgElem::zero(ctx); n];
    let mut tail = AlgElem::one(ctx);
    for k in 1..=n {
        if k > 1 {
            // extend the product on the left with Υ^{n−k+1}(A0')
            tail = conj[n - k + 1].mul(&tail, ctx);
        }
        let mut v = tail.mul(&b_last, ctx);
        if (k - 1) % 2 == 1 {
            v = v.neg();
        }
        primes[n - k] = v;
    }

    let parts = primes
        .iter()
        .enumerate()
        .map(|(i, bp)| {
            let u = a1.upsilon_pow(i, ctx).inv(ctx).expect("Υ preserves invertibility");
            u.mul(bp, ctx)
        })
        .collect();
    Ok(BimoduleElem { parts })
}
