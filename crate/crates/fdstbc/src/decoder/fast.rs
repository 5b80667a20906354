//! Conditional group decoder: enumerate the outer coordinates, then minimise every inner
//! group independently, hard-limiting the last coordinate of each group.

use super::exhaustive::TIE_TOL;
use super::model::{symbols_from_levels, RealModel};
use super::DecodeResult;
use crate::codes::{CodeDescriptor, Constellation};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use nalgebra::{DMatrix, DVector};

/// PAM level minimising g·t² − 2·b·t over the constellation's levels.
pub fn hard_limit(constellation: &Constellation, g: f64, b: f64) -> usize {
    constellation.round_to_level(b / g)
}

/// Advance an odometer over `side` levels per slot; false once it wraps to all zeros.
fn next_levels(levels: &mut [usize], side: usize) -> bool {
    for l in levels.iter_mut().rev() {
        *l += 1;
        if *l < side {
            return true;
        }
        *l = 0;
    }
    false
}

fn is_better(value: f64, key: &[usize], best: f64, best_key: &[usize]) -> bool {
    if !best.is_finite() {
        return true;
    }
    let tol = TIE_TOL * best.abs().max(value.abs());
    value < best - tol || (value <= best + tol && key < best_key)
}

struct Group {
    /// Coordinates in the group's declared order; the last one is hard-limited.
    coords: Vec<usize>,
    /// Permutation sorting `coords` by coordinate index, for the tie-break key.
    order: Vec<usize>,
    /// Row-major Gram block of the group.
    gram: Vec<f64>,
}

/// Reusable buffers for one group minimisation.
struct Scratch {
    levels: Vec<usize>,
    x: Vec<f64>,
    key: Vec<usize>,
    best_levels: Vec<usize>,
    best_key: Vec<usize>,
}

impl Scratch {
    fn new(size: usize) -> Self {
        Scratch {
            levels: vec![0; size],
            x: vec![0.0; size],
            key: vec![0; size],
            best_levels: vec![0; size],
            best_key: vec![0; size],
        }
    }
}

impl Group {
    fn new(coords: &[usize], gram: &DMatrix<f64>) -> Self {
        let s = coords.len();
        let mut order: Vec<usize> = (0..s).collect();
        order.sort_by_key(|&i| coords[i]);
        let mut g = Vec::with_capacity(s * s);
        for &a in coords {
            for &b in coords {
                g.push(gram[(a, b)]);
            }
        }
        Group { coords: coords.to_vec(), order, gram: g }
    }

    /// Minimise x·G·x − 2·c·x over the group; the minimiser is left in `sc.best_levels`.
    /// Returns (value, candidate evaluations).
    fn solve(&self, c: &[f64], pam: &[f64], constellation: &Constellation, hard: bool, sc: &mut Scratch) -> (f64, u64) {
        let s = self.coords.len();
        let side = pam.len();
        let free = if hard { s - 1 } else { s };
        let g = &self.gram;
        sc.levels.fill(0);
        let mut best = f64::INFINITY;
        let mut evals = 0u64;
        loop {
            for i in 0..free {
                sc.x[i] = pam[sc.levels[i]];
            }
            if hard {
                let l = s - 1;
                let mut b = c[l];
                for m in 0..l {
                    b -= g[l * s + m] * sc.x[m];
                }
                sc.levels[l] = hard_limit(constellation, g[l * s + l], b);
                sc.x[l] = pam[sc.levels[l]];
            }
            let mut v = 0.0;
            for i in 0..s {
                let row = &g[i * s..(i + 1) * s];
                let gx: f64 = row.iter().zip(&sc.x).map(|(a, b)| a * b).sum();
                v += sc.x[i] * (gx - 2.0 * c[i]);
            }
            evals += 1;
            for (k, &i) in self.order.iter().enumerate() {
                sc.key[k] = sc.levels[i];
            }
            if is_better(v, &sc.key, best, &sc.best_key) {
                best = v;
                sc.best_levels.copy_from_slice(&sc.levels);
                sc.best_key.copy_from_slice(&sc.key);
            }
            if !next_levels(&mut sc.levels[..free], side) {
                break;
            }
        }
        (best, evals)
    }
}

/// Fast ML decoding via the declared outer block and inner groups.
pub fn ml_fast(
    desc: &CodeDescriptor,
    constellation: &Constellation,
    y: &CMatrix,
    h: &CMatrix,
    rho: f64,
    hard_limit: bool,
) -> Result<DecodeResult> {
    let groups = desc.groups.as_ref().ok_or_else(|| Error::NoGroups(desc.id.to_string()))?;
    let n = desc.real_dim();
    let mut covered = vec![false; n];
    for &i in groups.outer.iter().chain(groups.inner.iter().flatten()) {
        if i >= n || covered[i] {
            return Err(Error::InvalidArgument(format!("{} has overlapping decoding groups", desc.id)));
        }
        covered[i] = true;
    }
    if covered.iter().any(|&c| !c) {
        return Err(Error::InvalidArgument(format!("{} decoding groups do not cover all symbols", desc.id)));
    }
    let model = RealModel::new(desc, constellation, y, h, rho)?;
    let gram = model.b.transpose() * &model.b;
    let by: DVector<f64> = model.b.transpose() * &model.y;
    let yy = model.y.norm_squared();
    let pam = &constellation.pam;
    let side = pam.len();
    let outer = &groups.outer;
    let inner: Vec<Group> = groups.inner.iter().map(|g| Group::new(g, &gram)).collect();
    let mut scratch: Vec<Scratch> = inner.iter().map(|g| Scratch::new(g.coords.len())).collect();
    // Gram rows restricted to the outer coordinates, and the coupling of each inner
    // coordinate to the outer block.
    let g_oo: Vec<f64> = outer.iter().flat_map(|&a| outer.iter().map(move |&b| (a, b))).map(|(a, b)| gram[(a, b)]).collect();
    let coupling: Vec<Vec<f64>> = inner
        .iter()
        .map(|g| g.coords.iter().flat_map(|&m| outer.iter().map(move |&o| (m, o))).map(|(m, o)| gram[(m, o)]).collect())
        .collect();
    let by_outer: Vec<f64> = outer.iter().map(|&o| by[o]).collect();
    let no = outer.len();

    let mut outer_levels = vec![0usize; outer.len()];
    let mut xo = vec![0.0; outer.len()];
    let mut full = vec![0usize; n];
    let mut best = f64::INFINITY;
    let mut best_full = vec![usize::MAX; n];
    let mut evals = 0u64;
    let mut solves = 0u64;
    let mut c = Vec::new();
    loop {
        for (v, &l) in xo.iter_mut().zip(&outer_levels) {
            *v = pam[l];
        }
        let mut total = yy;
        for a in 0..no {
            let gx: f64 = g_oo[a * no..(a + 1) * no].iter().zip(&xo).map(|(g, x)| g * x).sum();
            total += xo[a] * (gx - 2.0 * by_outer[a]);
            full[outer[a]] = outer_levels[a];
        }
        evals += 1;
        for ((g, sc), coup) in inner.iter().zip(scratch.iter_mut()).zip(&coupling) {
            c.clear();
            for (i, &m) in g.coords.iter().enumerate() {
                let dot: f64 = coup[i * no..(i + 1) * no].iter().zip(&xo).map(|(g, x)| g * x).sum();
                c.push(by[m] - dot);
            }
            let (v, e) = g.solve(&c, pam, constellation, hard_limit, sc);
            evals += e;
            solves += 1;
            total += v;
            for (&m, &l) in g.coords.iter().zip(&sc.best_levels) {
                full[m] = l;
            }
        }
        if is_better(total, &full, best, &best_full) {
            best = total;
            best_full.copy_from_slice(&full);
        }
        if !next_levels(&mut outer_levels, side) {
            break;
        }
    }
    let indices = symbols_from_levels(constellation, &best_full);
    DecodeResult::finish(desc, constellation, y, h, rho, indices, evals, solves)
}
