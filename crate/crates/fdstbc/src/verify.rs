//! Per-code invariant suite behind the `verify` subcommand.

use crate::algebra::block::{block_inverse, embed_matrix, inverse_residual, structured_matrix};
use crate::algebra::{det_in_l_check, nonnorm_check, right_inverse, AlgElem, BimoduleElem, ExactMatrix, LElem, NumberFieldCtx};
use crate::analysis::{
    cubic_shaping_check, det_quantization_check, energy_check, group_separability, min_det_targeted,
};
use crate::channel_sim::sample_channel;
use crate::codes::{CodeDescriptor, CodeId, Constellation, DeltaRelation, Structure};
use crate::decoder::{ml_exhaustive, ml_fast};
use crate::linalg::max_abs_diff;
use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check { name, outcome: if ok { Outcome::Pass } else { Outcome::Fail }, detail }
}

fn skip(name: &'static str, detail: &str) -> Check {
    Check { name, outcome: Outcome::Skip, detail: detail.to_string() }
}

/// Budget on candidate evaluations for the noiseless decoding check.
const DECODE_BUDGET: f64 = 5e7;

fn random_symbols<R: Rng>(rng: &mut R, desc: &CodeDescriptor, active: impl Fn(usize) -> bool) -> Vec<LElem> {
    let kind = desc.constellation_kind.lattice();
    (0..desc.k)
        .map(|p| {
            if active(p) {
                LElem::from_ints(rng.random_range(-2..=2), rng.random_range(-2..=2), kind)
            } else {
                LElem::zero(kind)
            }
        })
        .collect()
}

fn block(m: &ExactMatrix, r: usize, c: usize) -> [&crate::algebra::KElem; 4] {
    [&m[2 * r][2 * c], &m[2 * r][2 * c + 1], &m[2 * r + 1][2 * c], &m[2 * r + 1][2 * c + 1]]
}

/// Blocks outside the allowed positions vanish and each allowed block is τ of its
/// predecessor, with γ_M on the wrapped block.
fn layered_pattern(ctx: &NumberFieldCtx, m: &ExactMatrix, shift: usize) -> (bool, bool) {
    let n = ctx.n;
    let mut pattern = true;
    let mut twist = true;
    for r in 0..n {
        for c in 0..n {
            let allowed = (r + n - c) % n == shift;
            if !allowed && block(m, r, c).iter().any(|e| !e.is_zero()) {
                pattern = false;
            }
        }
    }
    for l in 1..n {
        let (r, c) = ((l + shift) % n, l);
        let (pr, pc) = ((l - 1 + shift) % n, l - 1);
        let wraps = shift > 0 && r < c;
        for (e, prev) in block(m, r, c).iter().zip(block(m, pr, pc)) {
            let mut expect = ctx.tau(prev);
            if wraps {
                expect = expect.scale(&ctx.gamma_m);
            }
            if **e != expect {
                twist = false;
            }
        }
    }
    (pattern, twist)
}

fn structure_checks(desc: &CodeDescriptor, rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    let name_b = "block structure";
    let name_g = "twist placement";
    let name_c = "exact/numeric consistency";
    let Some(ctx) = desc.field() else {
        out.push(skip(name_b, "numerically defined code"));
        out.push(skip(name_g, "numerically defined code"));
        out.push(skip(name_c, "numerically defined code"));
        return;
    };
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let sym = random_symbols(rng, desc, |_| true);
        let exact = desc.exact_codeword(&sym).expect("exact form");
        let s: Vec<Complex64> = sym.iter().map(LElem::embed).collect();
        worst = worst.max(max_abs_diff(&embed_matrix(ctx, &exact), &desc.encode(&s, None).expect("k symbols")));
    }
    out.push(check(name_c, worst < 1e-9, format!("max entry gap {worst:.3e}")));
    match &desc.structure {
        Structure::Layered { .. } => {
            let n_t = desc.n_t;
            let a0 = desc.exact_codeword(&random_symbols(rng, desc, |p| p < n_t)).expect("exact");
            let a1 = desc.exact_codeword(&random_symbols(rng, desc, |p| p >= n_t)).expect("exact");
            let (p0, t0) = layered_pattern(ctx, &a0, 0);
            let (p1, t1) = layered_pattern(ctx, &a1, 1);
            out.push(check(name_b, p0 && p1, format!("diagonal blocks {p0}, subdiagonal blocks {p1}")));
            out.push(check(name_g, t0 && t1, format!("τ-shift {t0}, γ_M on wrapped block {t1}")));
        }
        Structure::Punctured { layers, .. } => {
            let m = desc.exact_codeword(&random_symbols(rng, desc, |_| true)).expect("exact");
            let n = desc.n_t;
            let mut used = vec![false; n];
            for (r, row) in m.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        used[(c + n - r) % n] = true;
                    }
                }
            }
            let count = used.iter().filter(|&&u| u).count();
            out.push(check(name_b, count == *layers, format!("{count} populated cyclic diagonals")));
            out.push(skip(name_g, "punctured layers carry γ only on wrapped entries of layer 1"));
        }
        Structure::Rotated => unreachable!(),
    }
}

fn field_checks(ctx: &NumberFieldCtx, rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    let nn = nonnorm_check(ctx, 200, 3, rng.random());
    out.push(check(
        "non-norm element",
        nn.violations == 0,
        format!("{} violations in {} elements", nn.violations, nn.tested),
    ));
    let (mut inv_ok, mut inv_res, mut det_gap) = (0, 0.0f64, 0.0f64);
    let pairs = 10;
    for _ in 0..pairs {
        let a0 = AlgElem::random(ctx, rng, 2);
        let a1 = AlgElem::random(ctx, rng, 2);
        if let Ok(b) = right_inverse(ctx, &a0, &a1) {
            if BimoduleElem::linear(ctx, a0.clone(), a1.clone()).mul(&b, ctx).is_one(ctx) {
                inv_ok += 1;
            }
        }
        let m = structured_matrix(ctx, &a0, &a1);
        if let Ok(mi) = block_inverse(ctx, &a0, &a1) {
            inv_res = inv_res.max(inverse_residual(&embed_matrix(ctx, &m), &mi));
        } else {
            inv_res = f64::INFINITY;
        }
        let scale = 1.0 + crate::linalg::det(&embed_matrix(ctx, &m)).norm();
        det_gap = det_gap.max(det_in_l_check(ctx, &m) / scale);
    }
    out.push(check("right inverse", inv_ok == pairs, format!("{inv_ok}/{pairs} exact")));
    out.push(check("block inverse", inv_res < 1e-9, format!("max residual {inv_res:.3e}")));
    out.push(check("determinant in base field", det_gap < 1e-9, format!("max gap / (1 + |det|) {det_gap:.3e}")));
}

fn decode_check(desc: &CodeDescriptor, con: &Constellation, rng: &mut ChaCha8Rng) -> Check {
    let name = "noiseless decoding";
    let m = con.m as f64;
    let fast_cost = desc.groups.as_ref().map(|g| {
        let side = con.side() as f64;
        let inner: f64 = g.inner.iter().map(|gr| side.powi(gr.len() as i32 - 1)).sum();
        side.powi(g.outer.len() as i32) * (inner + 1.0)
    });
    let exh_cost = m.powi(desc.k as i32);
    let use_fast = match fast_cost {
        Some(c) if c <= DECODE_BUDGET => true,
        _ if exh_cost <= DECODE_BUDGET => false,
        _ => return skip(name, "decoding cost exceeds the verify budget"),
    };
    let rho: f64 = 10.0;
    let mut ok = true;
    for _ in 0..2 {
        let idx: Vec<usize> = (0..desc.k).map(|_| rng.random_range(0..con.m)).collect();
        let s: Vec<Complex64> = idx.iter().map(|&i| con.points[i]).collect();
        let h = sample_channel(rng, 2, desc.n_t);
        let y = &h * desc.encode(&s, Some(con)).expect("k symbols") * Complex64::new(rho.sqrt(), 0.0);
        let r = if use_fast {
            ml_fast(desc, con, &y, &h, rho, true)
        } else {
            ml_exhaustive(desc, con, &y, &h, rho)
        };
        ok &= r.is_ok_and(|r| r.indices == idx && r.metric < 1e-12 * rho);
    }
    check(name, ok, format!("{} decoder, 2 instances", if use_fast { "fast" } else { "exhaustive" }))
}

/// Run every applicable check for one code at its 4-point constellation.
pub fn verify_code(desc: &CodeDescriptor) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ desc.id as u64);
    let con = Constellation::new(desc.constellation_kind, 4).expect("4-point constellation");
    let mut out = Vec::new();

    let rate = desc.rate();
    out.push(check("rate", rate == Ratio::from_integer(2), format!("rank/2T = {rate}")));

    let e = energy_check(desc, &con, 10_000, rng.random());
    out.push(check(
        "energy",
        e.within(desc.t, 0.02),
        format!("mean ‖S‖²/T = {:.4}", e.mean_total / desc.t as f64),
    ));

    structure_checks(desc, &mut rng, &mut out);

    match group_separability(desc) {
        Ok(r) => out.push(check("group separability", r.max_cross < 1e-12, format!("max cross {:.3e}", r.max_cross))),
        Err(_) => out.push(skip("group separability", "no decoding groups")),
    }

    let shaping = cubic_shaping_check(desc);
    let expected = match desc.id {
        CodeId::S4x2 | CodeId::S8x2 | CodeId::Sr4x2 => Some(true),
        CodeId::S6x2 | CodeId::S12x2 => Some(false),
        _ => None,
    };
    match expected {
        Some(x) => out.push(check(
            "cubic shaping",
            shaping.scaled_orthogonal == x,
            format!("scaled orthogonal = {} (expected {x})", shaping.scaled_orthogonal),
        )),
        None => out.push(skip("cubic shaping", &format!("scaled orthogonal = {}", shaping.scaled_orthogonal))),
    }

    let q = det_quantization_check(desc, 20, 2, rng.random());
    let nvd_ok = if q.exact { q.passed(1e-6) } else { q.zero_count == 0 };
    out.push(check(
        "non-vanishing determinant",
        nvd_ok,
        format!(
            "{} zero, {} divisor violations, min nonzero |det|² {}",
            q.zero_count,
            q.divisor_violations,
            q.min_nonzero.map_or("-".into(), |v| v.to_string())
        ),
    ));

    match (min_det_targeted(desc, &con), &desc.reference_delta_min) {
        (Ok(t), Some(f)) => {
            let v = f.value(con.avg_energy);
            let ok = match f.relation {
                DeltaRelation::Exact => (t.delta_min / v - 1.0).abs() < 1e-9,
                DeltaRelation::AtLeast => t.delta_min >= v * (1.0 - 1e-9),
                DeltaRelation::Between { lower_denominator } => {
                    t.delta_min >= f.numerator / (lower_denominator * con.avg_energy.powi(f.energy_power)) * (1.0 - 1e-9)
                }
            };
            out.push(check(
                "targeted minimum determinant",
                ok,
                format!("witness {:.6e} vs formula {:.6e} ({:?})", t.delta_min, v, f.relation),
            ));
        }
        _ => out.push(skip("targeted minimum determinant", "no reference value")),
    }

    match desc.field() {
        Some(ctx) => field_checks(ctx, &mut rng, &mut out),
        None => out.push(skip("field arithmetic", "numerically defined code")),
    }

    out.push(decode_check(desc, &con, &mut rng));
    out
}
