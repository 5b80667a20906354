//! Quasi-static Rayleigh fading channel and Monte Carlo codeword-error-rate estimation.

use crate::codes::{CodeDescriptor, Constellation};
use crate::decoder::{decode, DecoderKind};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::time::Instant;

/// Trials per independently seeded substream.
pub const TRIAL_CHUNK: u64 = 512;
/// Gaussian sampler used for channel and noise entries.
pub const GAUSSIAN_METHOD: &str = "ziggurat (rand_distr StandardNormal)";

/// Matrix of i.i.d. circularly symmetric complex Gaussians with unit variance per entry.
pub fn sample_gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        Complex64::new(a * s, b * s)
    })
}

/// Rayleigh channel matrix H (n_r × n_t).
pub fn sample_channel<R: Rng + ?Sized>(rng: &mut R, n_r: usize, n_t: usize) -> CMatrix {
    sample_gaussian_matrix(rng, n_r, n_t)
}

/// RNG for trial chunk `chunk` at SNR point `snr_index`.
pub fn trial_rng(seed: u64, snr_index: usize, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((snr_index as u64) << 32) | chunk);
    rng
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub snr_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub decoder: DecoderKind,
    pub hard_limit: bool,
    pub n_r: usize,
    /// Multiplier on the noise standard deviation; 1 is the physical model.
    pub noise_scale: f64,
}

impl SimConfig {
    pub fn new(snr_db: Vec<f64>, trials: u64, seed: u64, decoder: DecoderKind) -> Self {
        SimConfig { snr_db, trials, seed, decoder, hard_limit: true, n_r: 2, noise_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimRow {
    pub snr_db: f64,
    pub rho: f64,
    pub trials: u64,
    pub errors: u64,
    pub cer: f64,
    pub mean_metric_evals: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub code: String,
    pub constellation: String,
    pub decoder: String,
    pub hard_limit: bool,
    pub seed: u64,
    pub gaussian: String,
    pub rows: Vec<SimRow>,
    pub wall_seconds: f64,
}

/// Wilson score interval for a binomial proportion at normal quantile `z`.
pub fn wilson_interval(errors: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

fn run_chunk(
    desc: &CodeDescriptor,
    constellation: &Constellation,
    cfg: &SimConfig,
    snr_index: usize,
    chunk: u64,
) -> Result<(u64, u64, u64)> {
    let rho = 10f64.powf(cfg.snr_db[snr_index] / 10.0);
    let count = TRIAL_CHUNK.min(cfg.trials - chunk * TRIAL_CHUNK);
    let mut rng = trial_rng(cfg.seed, snr_index, chunk);
    let gain = Complex64::new(rho.sqrt(), 0.0);
    let (mut errors, mut evals) = (0, 0);
    for _ in 0..count {
        let idx: Vec<usize> = (0..desc.k).map(|_| rng.random_range(0..constellation.m)).collect();
        let s: Vec<Complex64> = idx.iter().map(|&i| constellation.points[i]).collect();
        let x = desc.encode(&s, Some(constellation))?;
        let h = sample_channel(&mut rng, cfg.n_r, desc.n_t);
        let noise = sample_gaussian_matrix(&mut rng, cfg.n_r, desc.t) * Complex64::new(cfg.noise_scale, 0.0);
        let y = &h * x * gain + noise;
        let r = decode(cfg.decoder, desc, constellation, &y, &h, rho, cfg.hard_limit)?;
        if r.indices != idx {
            errors += 1;
        }
        evals += r.metric_evals;
    }
    Ok((count, errors, evals))
}

/// Codeword error rate at each SNR point; rows are identical for any worker count.
pub fn simulate_cer(desc: &CodeDescriptor, constellation: &Constellation, cfg: &SimConfig) -> Result<SimulationReport> {
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if desc.constellation_kind != constellation.kind {
        return Err(Error::InvalidArgument(format!(
            "{} expects {} symbols, got {}",
            desc.id,
            desc.constellation_kind.name(),
            constellation.label()
        )));
    }
    let start = Instant::now();
    let chunks = cfg.trials.div_ceil(TRIAL_CHUNK);
    let mut rows = Vec::with_capacity(cfg.snr_db.len());
    for (i, &snr_db) in cfg.snr_db.iter().enumerate() {
        let parts: Vec<(u64, u64, u64)> = (0..chunks)
            .into_par_iter()
            .map(|c| run_chunk(desc, constellation, cfg, i, c))
            .collect::<Result<_>>()?;
        let (trials, errors, evals) = parts
            .iter()
            .fold((0, 0, 0), |a, p| (a.0 + p.0, a.1 + p.1, a.2 + p.2));
        rows.push(SimRow {
            snr_db,
            rho: 10f64.powf(snr_db / 10.0),
            trials,
            errors,
            cer: errors as f64 / trials as f64,
            mean_metric_evals: evals as f64 / trials as f64,
        });
    }
    Ok(SimulationReport {
        code: desc.id.to_string(),
        constellation: constellation.label(),
        decoder: cfg.decoder.as_str().to_string(),
        hard_limit: cfg.hard_limit,
        seed: cfg.seed,
        gaussian: GAUSSIAN_METHOD.to_string(),
        rows,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Float with 10 significant digits.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..10).contains(&mag) {
        format!("{:.*}", (9 - mag).max(0) as usize, x)
    } else {
        format!("{x:.9e}")
    }
}

pub const CSV_HEADER: [&str; 9] =
    ["code", "constellation", "decoder", "snr_db", "trials", "errors", "cer", "mean_metric_evals", "seed"];

pub fn to_csv(report: &SimulationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &report.rows {
        w.write_record([
            report.code.clone(),
            report.constellation.clone(),
            report.decoder.clone(),
            sig10(r.snr_db),
            r.trials.to_string(),
            r.errors.to_string(),
            sig10(r.cer),
            sig10(r.mean_metric_evals),
            report.seed.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
