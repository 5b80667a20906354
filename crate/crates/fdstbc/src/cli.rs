//! Command-line front end.

use crate::analysis::{
    det_quantization_check, min_det_exhaustive, min_det_sampled, min_det_targeted, mindet_json,
};
use crate::channel_sim::{sample_channel, sample_gaussian_matrix, simulate_cer, to_csv, SimConfig};
use crate::codes::{build_code, descriptor_json, float17, CodeDescriptor, CodeId, Constellation, ConstellationKind};
use crate::decoder::{ml_exhaustive, ml_fast, DecoderKind};
use crate::error::Error;
use crate::verify::{verify_code, Outcome};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fdstbc", version, about = "Fast-decodable rate-2 space-time block codes")]
struct Cli {
    /// Maximum number of worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct ConstellationArgs {
    /// QAM constellation size.
    #[arg(long, value_parser = parse_size)]
    qam: Option<usize>,
    /// Hexagonal constellation size.
    #[arg(long, value_parser = parse_size)]
    hex: Option<usize>,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
    Targeted,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DecoderArg {
    Fast,
    Exhaustive,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the available codes.
    ListCodes {
        #[command(flatten)]
        output: Output,
    },
    /// Print a code's parameters, or its weight matrices as JSON.
    Describe {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suite for a code.
    Verify {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        #[command(flatten)]
        output: Output,
    },
    /// Minimum determinant over codeword differences.
    Mindet {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        #[command(flatten)]
        constellation: ConstellationArgs,
        #[arg(long, value_enum, default_value = "targeted")]
        mode: Mode,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Check that integer codeword determinants are nonzero multiples of the divisor.
    NvdScan {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        #[arg(long = "box", default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        box_bound: i64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the fast decoder against exhaustive decoding on random noisy instances.
    DecodeSelftest {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        #[command(flatten)]
        constellation: ConstellationArgs,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        instances: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        snr_db: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo codeword error rate as CSV.
    Simulate {
        #[arg(long, value_parser = parse_code)]
        code: CodeId,
        #[command(flatten)]
        constellation: ConstellationArgs,
        /// SNR grid start:step:stop in dB.
        #[arg(long, value_parser = parse_snr_range)]
        snr_db: SnrRange,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "fast")]
        decoder: DecoderArg,
        /// Enumerate every coordinate instead of hard-limiting the last one per group.
        #[arg(long)]
        no_hard_limit: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Debug)]
struct SnrRange(Vec<f64>);

fn parse_code(s: &str) -> Result<CodeId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_size(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(m @ (4 | 16 | 64)) => Ok(m),
        _ => Err(format!("constellation size must be 4, 16 or 64, got '{s}'")),
    }
}

fn parse_snr_range(s: &str) -> Result<SnrRange, String> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("'{p}' is not a number")))
        .collect::<Result<_, _>>()?;
    let [start, step, stop] = parts[..] else {
        return Err("expected start:step:stop".into());
    };
    if step.is_nan() || step <= 0.0 || stop < start || !start.is_finite() || !stop.is_finite() {
        return Err("need step > 0 and stop ≥ start".into());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok(SnrRange((0..count).map(|i| start + i as f64 * step).collect()))
}

/// Failure of a subcommand, mapped to an exit code.
enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::TooLarge { .. } | Error::NoGroups(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn constellation_for(desc: &CodeDescriptor, args: &ConstellationArgs) -> Result<Constellation, Failure> {
    let (kind, m) = match (args.qam, args.hex) {
        (Some(m), None) => (ConstellationKind::Qam, m),
        (None, Some(m)) => (ConstellationKind::Hex, m),
        _ => (desc.constellation_kind, 4),
    };
    if kind != desc.constellation_kind {
        return Err(Failure::Usage(format!(
            "{} is defined over {} constellations; use --{}",
            desc.id,
            desc.constellation_kind.name(),
            desc.constellation_kind.name().to_ascii_lowercase()
        )));
    }
    Ok(Constellation::new(kind, m)?)
}

/// Text result and whether it reports a failed check.
struct Report {
    text: String,
    passed: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, passed: true }
    }
}

fn describe_text(d: &CodeDescriptor) -> String {
    let mut s = format!(
        "{}: {}\n  antennas {} x {} slots, {} complex symbols, rate {}\n  constellation {}, lattice scale {:.12}\n",
        d.id,
        d.id.summary(),
        d.n_t,
        d.t,
        d.k,
        d.rate(),
        d.constellation_kind.name(),
        d.lattice_norm
    );
    match &d.groups {
        Some(g) => s.push_str(&format!("  outer coordinates {:?}\n  inner groups {:?}\n", g.outer, g.inner)),
        None => s.push_str("  no decoding groups\n"),
    }
    if let Some(div) = d.unnorm_mindet_divisor {
        s.push_str(&format!("  unnormalized |det|² divisor {div}\n"));
    }
    if let Some(f) = &d.reference_delta_min {
        let e = Constellation::new(d.constellation_kind, 4).expect("4 points").avg_energy;
        s.push_str(&format!("  reference minimum determinant at M = 4: {:.6e} ({:?})\n", f.value(e), f.relation));
    }
    s
}

#[derive(Serialize)]
struct NvdJson {
    code: String,
    #[serde(rename = "box")]
    box_bound: i64,
    samples: u64,
    seed: u64,
    divisor: u64,
    exact: bool,
    zero_count: u64,
    divisor_violations: u64,
    non_integral: u64,
    min_nonzero: Option<String>,
    max_integer_deviation: Box<serde_json::value::RawValue>,
    passed: bool,
}

#[derive(Serialize)]
struct SelftestJson {
    code: String,
    constellation: String,
    instances: u64,
    seed: u64,
    snr_db: Box<serde_json::value::RawValue>,
    agreements: u64,
    max_metric_gap: Box<serde_json::value::RawValue>,
    fast_mean_evals: Box<serde_json::value::RawValue>,
    exhaustive_mean_evals: Box<serde_json::value::RawValue>,
    passed: bool,
}

fn decode_selftest(
    desc: &CodeDescriptor,
    con: &Constellation,
    instances: u64,
    seed: u64,
    snr_db: f64,
) -> Result<Report, Failure> {
    let rho = 10f64.powf(snr_db / 10.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut agree, mut gap, mut fe, mut ee) = (0u64, 0.0f64, 0u64, 0u64);
    for _ in 0..instances {
        let s: Vec<Complex64> = (0..desc.k).map(|_| con.points[rng.random_range(0..con.m)]).collect();
        let h = sample_channel(&mut rng, 2, desc.n_t);
        let n = sample_gaussian_matrix(&mut rng, 2, desc.t);
        let y = &h * desc.encode(&s, Some(con))? * Complex64::new(rho.sqrt(), 0.0) + n;
        let f = ml_fast(desc, con, &y, &h, rho, true)?;
        let e = ml_exhaustive(desc, con, &y, &h, rho)?;
        let g = (f.metric - e.metric).abs() / e.metric.max(1.0);
        gap = gap.max(g);
        if g <= 1e-9 {
            agree += 1;
        }
        fe += f.metric_evals;
        ee += e.metric_evals;
    }
    let passed = agree == instances;
    let json = SelftestJson {
        code: desc.id.to_string(),
        constellation: con.label(),
        instances,
        seed,
        snr_db: float17(snr_db),
        agreements: agree,
        max_metric_gap: float17(gap),
        fast_mean_evals: float17(fe as f64 / instances as f64),
        exhaustive_mean_evals: float17(ee as f64 / instances as f64),
        passed,
    };
    Ok(Report { text: serde_json::to_string_pretty(&json).expect("serializable") + "\n", passed })
}

fn execute(command: &Command, notes: &mut String) -> Result<Report, Failure> {
    match command {
        Command::ListCodes { .. } => Ok(Report::ok(
            CodeId::ALL.iter().map(|c| format!("{}\t{}\n", c, c.summary())).collect(),
        )),
        Command::Describe { code, format, .. } => {
            let d = build_code(*code);
            Ok(Report::ok(match format {
                Format::Text => describe_text(&d),
                Format::Json => descriptor_json(&d) + "\n",
            }))
        }
        Command::Verify { code, .. } => {
            let checks = verify_code(&build_code(*code));
            let passed = checks.iter().all(|c| c.outcome != Outcome::Fail);
            let mut text: String = checks.iter().map(|c| format!("{c}\n")).collect();
            text.push_str(&format!("{code}: {}\n", if passed { "all checks passed" } else { "verification FAILED" }));
            Ok(Report { text, passed })
        }
        Command::Mindet { code, constellation, mode, samples, seed, .. } => {
            let d = build_code(*code);
            let con = constellation_for(&d, constellation)?;
            let start = Instant::now();
            let r = match mode {
                Mode::Exhaustive => min_det_exhaustive(&d, &con)?,
                Mode::Sampled => min_det_sampled(&d, &con, *samples, *seed)?,
                Mode::Targeted => min_det_targeted(&d, &con)?,
            };
            Ok(Report::ok(mindet_json(&d, &con, &r, start.elapsed().as_secs_f64()) + "\n"))
        }
        Command::NvdScan { code, box_bound, samples, seed, .. } => {
            let d = build_code(*code);
            let q = det_quantization_check(&d, *samples, *box_bound, *seed);
            let passed = if q.exact { q.passed(1e-6) } else { q.zero_count == 0 };
            let json = NvdJson {
                code: d.id.to_string(),
                box_bound: *box_bound,
                samples: *samples,
                seed: *seed,
                divisor: d.unnorm_mindet_divisor.unwrap_or(1),
                exact: q.exact,
                zero_count: q.zero_count,
                divisor_violations: q.divisor_violations,
                non_integral: q.non_integral,
                min_nonzero: q.min_nonzero.map(|v| v.to_string()),
                max_integer_deviation: float17(q.max_integer_deviation),
                passed,
            };
            Ok(Report { text: serde_json::to_string_pretty(&json).expect("serializable") + "\n", passed })
        }
        Command::DecodeSelftest { code, constellation, instances, seed, snr_db, .. } => {
            let d = build_code(*code);
            let con = constellation_for(&d, constellation)?;
            decode_selftest(&d, &con, *instances, *seed, *snr_db)
        }
        Command::Simulate { code, constellation, snr_db, trials, seed, decoder, no_hard_limit, .. } => {
            let d = build_code(*code);
            let con = constellation_for(&d, constellation)?;
            let kind = match decoder {
                DecoderArg::Fast => DecoderKind::Fast,
                DecoderArg::Exhaustive => DecoderKind::Exhaustive,
            };
            let mut cfg = SimConfig::new(snr_db.0.clone(), *trials, *seed, kind);
            cfg.hard_limit = !no_hard_limit;
            let report = simulate_cer(&d, &con, &cfg)?;
            notes.push_str(&format!(
                "{} {}: {} SNR points in {:.1} s; gaussian sampler: {}\n",
                report.code,
                report.constellation,
                report.rows.len(),
                report.wall_seconds,
                report.gaussian
            ));
            Ok(Report::ok(to_csv(&report)))
        }
    }
}

fn output_path(command: &Command) -> Option<&PathBuf> {
    let o = match command {
        Command::ListCodes { output }
        | Command::Describe { output, .. }
        | Command::Verify { output, .. }
        | Command::Mindet { output, .. }
        | Command::NvdScan { output, .. }
        | Command::DecodeSelftest { output, .. }
        | Command::Simulate { output, .. } => output,
    };
    o.out.as_ref()
}

/// Parse `args` (including the program name), run the subcommand and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_FAILED;
        }
    };
    let mut notes = String::new();
    let result = pool.install(|| execute(&cli.command, &mut notes));
    let _ = err.write_all(notes.as_bytes());
    match result {
        Ok(report) => {
            let written = match output_path(&cli.command) {
                Some(path) => std::fs::write(path, &report.text),
                None => out.write_all(report.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_FAILED;
            }
            if report.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED
        }
    }
}
