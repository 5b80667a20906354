//! Minimum |det|² over nonzero codeword differences: exhaustive, sampled and targeted.

use crate::codes::{CodeDescriptor, Constellation};
use crate::error::{Error, Result};
use crate::linalg::det_in_place;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::cmp::Ordering;

pub const EXHAUSTIVE_CAP: f64 = 1e8;
const SAMPLE_CHUNK: u64 = 4096;
const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Sampled,
    Targeted,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Sampled => "sampled",
            SearchMode::Targeted => "targeted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinDetResult {
    /// Minimum |det|² of the energy-normalized difference.
    pub delta_min: f64,
    /// Minimum |det|² of the unnormalized difference.
    pub unnorm_min: f64,
    /// Complex symbol differences achieving the minimum.
    pub achieving_diff: Vec<Complex64>,
    /// Real coordinates of the achieving difference.
    pub achieving_coords: Vec<i32>,
    pub pairs_scanned: u64,
    pub mode: SearchMode,
}

/// Normalized minimum determinant from the unnormalized one: |det(cS/√E)|² = (c²/E)^{n_t}|det S|².
pub fn normalize_det(desc: &CodeDescriptor, constellation: &Constellation, unnorm: f64) -> f64 {
    let s = desc.lattice_norm * desc.lattice_norm / constellation.avg_energy;
    unnorm * s.powi(desc.n_t as i32)
}

/// Unnormalized |det|² of the difference with the given real coordinates.
pub fn difference_det(desc: &CodeDescriptor, coords: &[i32]) -> f64 {
    let x: Vec<f64> = coords.iter().map(|&v| v as f64).collect();
    let mut buf = vec![Complex64::new(0.0, 0.0); desc.n_t * desc.t];
    desc.accumulate(&x, &mut buf);
    det_in_place(&mut buf, desc.n_t).norm_sqr()
}

#[derive(Clone)]
struct Best {
    value: f64,
    coords: Vec<i32>,
}

impl Best {
    fn none() -> Self {
        Best { value: f64::INFINITY, coords: Vec::new() }
    }

    /// Smaller value wins; values within the relative tie tolerance fall back to the
    /// lexicographically smaller coordinate vector.
    fn offer(&mut self, value: f64, coords: &[i32]) {
        if self.is_better(value, coords) {
            self.value = value;
            self.coords = coords.to_vec();
        }
    }

    fn is_better(&self, value: f64, coords: &[i32]) -> bool {
        if self.coords.is_empty() {
            return true;
        }
        let tol = TIE_TOL * self.value.abs().max(value.abs());
        if value < self.value - tol {
            true
        } else if value <= self.value + tol {
            coords.cmp(&self.coords) == Ordering::Less
        } else {
            false
        }
    }

    fn merge(mut self, other: Best) -> Best {
        if !other.coords.is_empty() {
            self.offer(other.value, &other.coords);
        }
        self
    }
}

fn finish(
    desc: &CodeDescriptor,
    constellation: &Constellation,
    best: Best,
    pairs_scanned: u64,
    mode: SearchMode,
) -> MinDetResult {
    let achieving_diff = best
        .coords
        .chunks(2)
        .map(|p| Constellation::from_real_coords(desc.constellation_kind, p[0] as f64, p[1] as f64))
        .collect();
    MinDetResult {
        delta_min: normalize_det(desc, constellation, best.value),
        unnorm_min: best.value,
        achieving_diff,
        achieving_coords: best.coords,
        pairs_scanned,
        mode,
    }
}

/// Difference levels per real coordinate: 2j for |j| ≤ √M − 1, in increasing order.
pub fn difference_levels(constellation: &Constellation) -> Vec<i32> {
    let s = constellation.side() as i32;
    (-(s - 1)..=(s - 1)).map(|j| 2 * j).collect()
}

fn check_kind(desc: &CodeDescriptor, constellation: &Constellation) -> Result<()> {
    if desc.constellation_kind != constellation.kind {
        return Err(Error::InvalidArgument(format!(
            "{} expects {} symbols, got {}",
            desc.id,
            desc.constellation_kind.name(),
            constellation.label()
        )));
    }
    Ok(())
}

struct Dfs<'a> {
    desc: &'a CodeDescriptor,
    levels: &'a [i32],
    coords: Vec<i32>,
    bufs: Vec<Vec<Complex64>>,
    scratch: Vec<Complex64>,
    best: Best,
    scanned: u64,
}

impl Dfs<'_> {
    fn run(&mut self, depth: usize, all_zero: bool) {
        let dim = self.coords.len();
        if depth == dim {
            if all_zero {
                return;
            }
            self.scratch.copy_from_slice(&self.bufs[depth]);
            let v = det_in_place(&mut self.scratch, self.desc.n_t).norm_sqr();
            self.scanned += 1;
            self.best.offer(v, &self.coords);
            return;
        }
        for li in 0..self.levels.len() {
            let v = self.levels[li];
            // canonical representative of ±d: first nonzero coordinate positive
            if all_zero && v < 0 {
                continue;
            }
            self.coords[depth] = v;
            let (head, tail) = self.bufs.split_at_mut(depth + 1);
            let next = &mut tail[0];
            next.copy_from_slice(&head[depth]);
            if v != 0 {
                let x = v as f64;
                for &(pos, w) in self.desc.sparse_weight(depth) {
                    next[pos] += w * x;
                }
            }
            self.run(depth + 1, all_zero && v == 0);
        }
        self.coords[depth] = 0;
    }
}

/// Global minimum over all nonzero differences, one representative per ± pair.
pub fn min_det_exhaustive(desc: &CodeDescriptor, constellation: &Constellation) -> Result<MinDetResult> {
    check_kind(desc, constellation)?;
    let levels = difference_levels(constellation);
    let dim = desc.real_dim();
    let size = (levels.len() as f64).powi(dim as i32);
    if size > EXHAUSTIVE_CAP {
        return Err(Error::TooLarge { size, cap: EXHAUSTIVE_CAP });
    }
    let nt = desc.n_t * desc.t;
    let prefix_len = 2.min(dim);
    let l = levels.len();
    let prefixes: Vec<Vec<i32>> = (0..l.pow(prefix_len as u32))
        .map(|mut idx| {
            let mut p = vec![0; prefix_len];
            for slot in p.iter_mut().rev() {
                *slot = levels[idx % l];
                idx /= l;
            }
            p
        })
        .filter(|p| p.iter().find(|&&v| v != 0).is_none_or(|&v| v > 0))
        .collect();
    let partials: Vec<(Best, u64)> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut bufs = vec![vec![Complex64::new(0.0, 0.0); nt]; dim + 1];
            let mut coords = vec![0; dim];
            for (d, &v) in prefix.iter().enumerate() {
                coords[d] = v;
                let (head, tail) = bufs.split_at_mut(d + 1);
                tail[0].copy_from_slice(&head[d]);
                for &(pos, w) in desc.sparse_weight(d) {
                    tail[0][pos] += w * v as f64;
                }
            }
            let mut dfs = Dfs {
                desc,
                levels: &levels,
                coords,
                bufs,
                scratch: vec![Complex64::new(0.0, 0.0); nt],
                best: Best::none(),
                scanned: 0,
            };
            dfs.run(prefix_len, prefix.iter().all(|&v| v == 0));
            (dfs.best, dfs.scanned)
        })
        .collect();
    let scanned = partials.iter().map(|p| p.1).sum();
    let best = partials.into_iter().fold(Best::none(), |acc, (b, _)| acc.merge(b));
    Ok(finish(desc, constellation, best, scanned, SearchMode::Exhaustive))
}

/// Single-symbol differences of 2 in the integer coordinate of each symbol position.
pub fn min_det_targeted(desc: &CodeDescriptor, constellation: &Constellation) -> Result<MinDetResult> {
    check_kind(desc, constellation)?;
    let mut best = Best::none();
    for p in 0..desc.k {
        let mut coords = vec![0; desc.real_dim()];
        coords[2 * p] = 2;
        best.offer(difference_det(desc, &coords), &coords);
    }
    Ok(finish(desc, constellation, best, desc.k as u64, SearchMode::Targeted))
}

/// Random nonzero difference with every real coordinate uniform on the difference levels.
pub fn sample_difference<R: Rng + ?Sized>(rng: &mut R, levels: &[i32], dim: usize) -> Vec<i32> {
    loop {
        let v: Vec<i32> = (0..dim).map(|_| levels[rng.random_range(0..levels.len())]).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// RNG for sample chunk `chunk`; chunks are independent of the worker count.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

pub fn min_det_sampled(
    desc: &CodeDescriptor,
    constellation: &Constellation,
    n_samples: u64,
    seed: u64,
) -> Result<MinDetResult> {
    check_kind(desc, constellation)?;
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be at least 1".into()));
    }
    let levels = difference_levels(constellation);
    let dim = desc.real_dim();
    let nt = desc.n_t * desc.t;
    let chunks = n_samples.div_ceil(SAMPLE_CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let count = SAMPLE_CHUNK.min(n_samples - c * SAMPLE_CHUNK);
            let mut best = Best::none();
            let mut buf = vec![Complex64::new(0.0, 0.0); nt];
            let mut x = vec![0.0; dim];
            for _ in 0..count {
                let coords = sample_difference(&mut rng, &levels, dim);
                for (xi, &ci) in x.iter_mut().zip(&coords) {
                    *xi = ci as f64;
                }
                buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                desc.accumulate(&x, &mut buf);
                let v = det_in_place(&mut buf, desc.n_t).norm_sqr();
                best.offer(v, &coords);
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Best::none(), Best::merge);
    Ok(finish(desc, constellation, best, n_samples, SearchMode::Sampled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_code, CodeId};

    #[test]
    fn targeted_witnesses() {
        let q4 = Constellation::qam(4).unwrap();
        let h4 = Constellation::hex(4).unwrap();
        let r = min_det_targeted(&build_code(CodeId::S4x2), &q4).unwrap();
        assert!((r.unnorm_min - 6400.0).abs() < 1e-6);
        assert!((r.delta_min - 0.0025).abs() < 1e-12);
        let r = min_det_targeted(&build_code(CodeId::S6x2), &h4).unwrap();
        assert!((r.unnorm_min / 200704.0 - 1.0).abs() < 1e-9);
        assert!((r.delta_min * 153664.0 - 1.0).abs() < 1e-9);
        let r = min_det_targeted(&build_code(CodeId::S8x2), &q4).unwrap();
        assert!((r.delta_min * 324000000.0 - 1.0).abs() < 1e-9);
        let nz: Vec<_> = r.achieving_coords.iter().filter(|&&v| v != 0).collect();
        assert_eq!(nz, vec![&2]);
    }

    #[test]
    fn normalisation_identity() {
        let q4 = Constellation::qam(4).unwrap();
        let d = build_code(CodeId::S4x2);
        let r = min_det_sampled(&d, &q4, 500, 3).unwrap();
        let expected = r.unnorm_min * (d.lattice_norm.powi(2) / 2.0).powi(4);
        assert!((r.delta_min - expected).abs() <= 1e-12 * expected);
        assert!((difference_det(&d, &r.achieving_coords) - r.unnorm_min).abs() <= 1e-9 * r.unnorm_min);
    }

    #[test]
    fn single_sample_reproduces() {
        let q4 = Constellation::qam(4).unwrap();
        let d = build_code(CodeId::S8x2);
        let r = min_det_sampled(&d, &q4, 1, 42).unwrap();
        let mut rng = chunk_rng(42, 0);
        let coords = sample_difference(&mut rng, &difference_levels(&q4), d.real_dim());
        assert_eq!(coords, r.achieving_coords);
        assert_eq!(difference_det(&d, &coords), r.unnorm_min);
    }

    #[test]
    fn kind_mismatch_rejected() {
        let q4 = Constellation::qam(4).unwrap();
        assert!(min_det_targeted(&build_code(CodeId::S6x2), &q4).is_err());
    }

    #[test]
    fn cap_enforced() {
        let q4 = Constellation::qam(4).unwrap();
        assert!(matches!(
            min_det_exhaustive(&build_code(CodeId::S8x2), &q4),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn tie_break_prefers_lexicographic() {
        let mut b = Best::none();
        b.offer(1.0, &[0, 2]);
        b.offer(1.0 + 1e-12, &[0, -2]);
        assert_eq!(b.coords, vec![0, -2]);
        b.offer(1.0, &[2, 0]);
        assert_eq!(b.coords, vec![0, -2]);
        b.offer(0.5, &[4, 0]);
        assert_eq!(b.coords, vec![4, 0]);
    }
}
