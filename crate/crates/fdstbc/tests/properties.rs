use fdstbc::algebra::block::{embed_matrix, upsilon_matrix};
use fdstbc::algebra::{det_exact, AlgElem, FieldId, LElem, NumberFieldCtx};
use fdstbc::analysis::{
    det_quantization_check, difference_det, min_det_exhaustive, min_det_sampled, min_det_targeted, normalize_det,
};
use fdstbc::channel_sim::{sample_channel, sample_gaussian_matrix, simulate_cer, SimConfig};
use fdstbc::codes::{build_code, CodeId, Constellation};
use fdstbc::decoder::{hard_limit, ml_metric, DecoderKind, RealModel};
use fdstbc::linalg::{det, CMatrix};
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = FieldId> {
    prop::sample::select(FieldId::ALL.to_vec())
}

fn integer_symbols(rng: &mut ChaCha8Rng, code: CodeId, bound: i64) -> Vec<LElem> {
    let d = build_code(code);
    let kind = d.constellation_kind.lattice();
    (0..d.k)
        .map(|_| LElem::from_ints(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound), kind))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tau_is_a_ring_automorphism(id in field_strategy(), seed in any::<u64>()) {
        let ctx = NumberFieldCtx::new(id);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ctx.random(&mut rng, 4);
        let b = ctx.random(&mut rng, 4);
        prop_assert_eq!(ctx.tau(&ctx.mul(&a, &b)), ctx.mul(&ctx.tau(&a), &ctx.tau(&b)));
        prop_assert_eq!(ctx.tau(&a.add(&b)), ctx.tau(&a).add(&ctx.tau(&b)));
        prop_assert_eq!(ctx.tau_pow(&a, ctx.n), a.clone());
        prop_assert_eq!(ctx.sigma(&ctx.tau(&a)), ctx.tau(&ctx.sigma(&a)));
    }

    #[test]
    fn field_inverse_round_trips(id in field_strategy(), seed in any::<u64>()) {
        let ctx = NumberFieldCtx::new(id);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ctx.random(&mut rng, 3);
        prop_assume!(!a.is_zero());
        let inv = ctx.inv(&a).unwrap();
        prop_assert_eq!(ctx.mul(&a, &inv), ctx.one());
    }

    #[test]
    fn algebra_is_associative(id in field_strategy(), seed in any::<u64>()) {
        let ctx = NumberFieldCtx::new(id);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = AlgElem::random(&ctx, &mut rng, 2);
        let y = AlgElem::random(&ctx, &mut rng, 2);
        let z = AlgElem::random(&ctx, &mut rng, 2);
        prop_assert_eq!(x.mul(&y, &ctx).mul(&z, &ctx), x.mul(&y.mul(&z, &ctx), &ctx));
    }

    #[test]
    fn encoding_is_linear(idx in 0usize..7, seed in any::<u64>()) {
        let d = build_code(CodeId::ALL[idx]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<f64> = (0..d.real_dim()).map(|_| rng.random_range(-3..=3) as f64).collect();
        let b: Vec<f64> = (0..d.real_dim()).map(|_| rng.random_range(-3..=3) as f64).collect();
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = d.encode_real(&sum).unwrap();
        let rhs = d.encode_real(&a).unwrap() + d.encode_real(&b).unwrap();
        prop_assert!(fdstbc::linalg::max_abs_diff(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn normalisation_identity(seed in any::<u64>(), samples in 1u64..200) {
        let q4 = Constellation::qam(4).unwrap();
        let d = build_code(CodeId::S4x2);
        let r = min_det_sampled(&d, &q4, samples, seed).unwrap();
        let expected = r.unnorm_min * (d.lattice_norm.powi(2) / q4.avg_energy).powi(d.n_t as i32);
        prop_assert!((r.delta_min - expected).abs() <= 1e-12 * expected);
        prop_assert!((difference_det(&d, &r.achieving_coords) - r.unnorm_min).abs() <= 1e-9 * r.unnorm_min);
    }

    #[test]
    fn real_model_matches_metric(seed in any::<u64>(), rho in 0.1f64..100.0) {
        let d = build_code(CodeId::S6x2);
        let h4 = Constellation::hex(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<Complex64> = (0..d.k).map(|_| h4.points[rng.random_range(0..4)]).collect();
        let h = sample_channel(&mut rng, 2, d.n_t);
        let y = sample_gaussian_matrix(&mut rng, 2, d.t);
        let m = RealModel::new(&d, &h4, &y, &h, rho).unwrap();
        let direct = ml_metric(&d, &h4, &y, &h, rho, &s).unwrap();
        let via = m.metric(&d.real_coords(&s).unwrap());
        prop_assert!((direct - via).abs() <= 1e-9 * direct.max(1.0));
    }
}

/// Expansion of ‖Y − √ρHS‖² into self terms ‖HW_i‖², cross terms Re tr(HW_i(HW_j)ᴴ) and
/// linear terms Re tr(Yᴴ H W_i), evaluated independently of the decoder.
fn expanded_metric(weights: &[CMatrix], scale: f64, x: &[f64], y: &CMatrix, h: &CMatrix, rho: f64) -> f64 {
    let hw: Vec<CMatrix> = weights.iter().map(|w| h * w).collect();
    let inner = |a: &CMatrix, b: &CMatrix| a.iter().zip(b.iter()).map(|(p, q)| (p * q.conj()).re).sum::<f64>();
    let g = rho.sqrt() * scale;
    let mut total = inner(y, y);
    for i in 0..x.len() {
        total -= 2.0 * g * x[i] * inner(&hw[i], y);
        total += g * g * x[i] * x[i] * inner(&hw[i], &hw[i]);
        for j in i + 1..x.len() {
            total += 2.0 * g * g * x[i] * x[j] * inner(&hw[i], &hw[j]);
        }
    }
    total
}

#[test]
fn metric_matches_trace_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for id in [CodeId::S4x2, CodeId::S8x2, CodeId::Sr4x2, CodeId::Perf6Punct] {
        let d = build_code(id);
        let con = Constellation::new(d.constellation_kind, 16).unwrap();
        for _ in 0..10 {
            let s: Vec<Complex64> = (0..d.k).map(|_| con.points[rng.random_range(0..con.m)]).collect();
            let h = sample_channel(&mut rng, 2, d.n_t);
            let y = sample_gaussian_matrix(&mut rng, 2, d.t) * Complex64::new(3.0, 0.0);
            let rho = rng.random_range(0.5..50.0);
            let direct = ml_metric(&d, &con, &y, &h, rho, &s).unwrap();
            let x = d.real_coords(&s).unwrap();
            let expanded = expanded_metric(&d.weights, d.scale(con.avg_energy), &x, &y, &h, rho);
            assert!((direct - expanded).abs() <= 1e-9 * direct.max(1.0), "{id}: {direct} vs {expanded}");
        }
    }
}

#[test]
fn hard_limit_equals_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = build_code(CodeId::S4x2);
    for m in [4, 16, 64] {
        let con = Constellation::qam(m).unwrap();
        for _ in 0..334 {
            let s: Vec<Complex64> = (0..d.k).map(|_| con.points[rng.random_range(0..m)]).collect();
            let h = sample_channel(&mut rng, 2, d.n_t);
            let y = sample_gaussian_matrix(&mut rng, 2, d.t) * Complex64::new(rng.random_range(0.1..20.0), 0.0);
            let model = RealModel::new(&d, &con, &y, &h, 10.0).unwrap();
            let mut x = d.real_coords(&s).unwrap();
            let free = rng.random_range(0..d.real_dim());
            // quadratic in the free coordinate: g·t² − 2·b·t + const
            let col = model.b.column(free);
            let g = col.norm_squared();
            x[free] = 0.0;
            let r = &model.y - &model.b * nalgebra::DVector::from_column_slice(&x);
            let b = col.dot(&r);
            let rounded = hard_limit(&con, g, b);
            let best = (0..con.side())
                .min_by(|&a, &c| {
                    let f = |l: usize| g * con.pam[l] * con.pam[l] - 2.0 * b * con.pam[l];
                    f(a).partial_cmp(&f(c)).unwrap()
                })
                .unwrap();
            assert_eq!(rounded, best);
        }
    }
}

#[test]
fn determinant_is_invariant_under_upsilon() {
    let d = build_code(CodeId::S4x2);
    let ctx = d.field().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let m = d.exact_codeword(&integer_symbols(&mut rng, CodeId::S4x2, 3)).unwrap();
        let a = det(&embed_matrix(ctx, &m)).norm();
        let b = det(&embed_matrix(ctx, &upsilon_matrix(ctx, &m, 1))).norm();
        assert!((a - b).abs() <= 1e-9 * a.max(1.0), "{a} vs {b}");
        assert!(det_exact(ctx, &m).in_base_field());
    }
}

#[test]
fn nvd_holds_on_a_wider_box() {
    for (id, samples) in [(CodeId::S4x2, 200), (CodeId::S6x2, 100), (CodeId::S8x2, 50)] {
        let d = build_code(id);
        let r = det_quantization_check(&d, samples, 8, 21);
        assert!(r.passed(1e-6), "{id}: {r:?}");
        assert!(r.min_nonzero.unwrap() >= BigInt::from(d.unnorm_mindet_divisor.unwrap()));
    }
}

#[test]
fn search_modes_are_ordered() {
    let q4 = Constellation::qam(4).unwrap();
    let d = build_code(CodeId::S4x2);
    let exhaustive = min_det_exhaustive(&d, &q4).unwrap();
    let targeted = min_det_targeted(&d, &q4).unwrap();
    let sampled = min_det_sampled(&d, &q4, 20_000, 5).unwrap();
    assert!(exhaustive.delta_min <= targeted.delta_min * (1.0 + 1e-12));
    assert!(sampled.delta_min >= exhaustive.delta_min * (1.0 - 1e-12));
    assert_eq!(normalize_det(&d, &q4, exhaustive.unnorm_min), exhaustive.delta_min);
}

#[test]
fn searches_and_simulation_ignore_worker_count() {
    let q4 = Constellation::qam(4).unwrap();
    let d = build_code(CodeId::S4x2);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let m = min_det_sampled(&d, &q4, 10_000, 9).unwrap();
            let cfg = SimConfig::new(vec![4.0, 8.0], 1500, 4, DecoderKind::Fast);
            let s = simulate_cer(&d, &q4, &cfg).unwrap();
            (m, s.rows)
        })
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn received_snr_is_calibrated() {
    // at ρ = 1 the mean received signal energy per antenna and slot is 1
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for id in [CodeId::S4x2, CodeId::S6x2, CodeId::Perf4Punct] {
        let d = build_code(id);
        let con = Constellation::new(d.constellation_kind, 4).unwrap();
        let trials = 10_000;
        let mut acc = 0.0;
        for _ in 0..trials {
            let s: Vec<Complex64> = (0..d.k).map(|_| con.points[rng.random_range(0..con.m)]).collect();
            let h = sample_channel(&mut rng, 2, d.n_t);
            let r = h * d.encode(&s, Some(&con)).unwrap();
            acc += r.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        let mean = acc / trials as f64 / (2 * d.t) as f64;
        assert!((mean - 1.0).abs() < 0.03, "{id}: {mean}");
    }
}

#[test]
fn error_rate_falls_with_snr() {
    let q4 = Constellation::qam(4).unwrap();
    let d = build_code(CodeId::Sr4x2);
    let cfg = SimConfig::new(vec![0.0, 10.0], 10_000, 2, DecoderKind::Fast);
    let r = simulate_cer(&d, &q4, &cfg).unwrap();
    assert!(r.rows[0].cer >= r.rows[1].cer);
}
