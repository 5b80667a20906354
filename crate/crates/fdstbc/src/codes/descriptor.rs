//! Code catalogue: weight matrices, normalisation, decoding groups and exact structure.

use super::bases::basis;
use super::constellation::{Constellation, ConstellationKind};
use super::perfect::perfect_codeword_exact;
use super::sr::sr_codeword;
use crate::algebra::{structured_matrix, AlgElem, ExactMatrix, FieldId, KElem, LElem, NumberFieldCtx};
use crate::error::{Error, Result};
use crate::linalg::{frob_sq, numerical_rank, CMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum CodeId {
    S4x2,
    S6x2,
    S8x2,
    S12x2,
    Sr4x2,
    Perf4Punct,
    Perf6Punct,
}

impl CodeId {
    pub const ALL: [CodeId; 7] = [
        CodeId::S4x2,
        CodeId::S6x2,
        CodeId::S8x2,
        CodeId::S12x2,
        CodeId::Sr4x2,
        CodeId::Perf4Punct,
        CodeId::Perf6Punct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeId::S4x2 => "s4x2",
            CodeId::S6x2 => "s6x2",
            CodeId::S8x2 => "s8x2",
            CodeId::S12x2 => "s12x2",
            CodeId::Sr4x2 => "sr4x2",
            CodeId::Perf4Punct => "perf4-punct",
            CodeId::Perf6Punct => "perf6-punct",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            CodeId::S4x2 => "4x2 code over Q(i, sqrt 5), gamma_M = i, QAM",
            CodeId::S6x2 => "6x2 code over Q(w, 2cos(2pi/7)), gamma_M = w, HEX",
            CodeId::S8x2 => "8x2 code over Q(i, 2cos(2pi/15)), gamma_M = i, QAM",
            CodeId::S12x2 => "12x2 code over Q(w, 2cos(pi/14)), gamma_M = -w, HEX",
            CodeId::Sr4x2 => "4x2 block code of rotated QAM symbols (A, B, C, D blocks)",
            CodeId::Perf4Punct => "4-antenna perfect code keeping layers 0 and 1, QAM",
            CodeId::Perf6Punct => "6-antenna perfect code keeping layers 0 and 1, HEX",
        }
    }
}

impl fmt::Display for CodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        CodeId::ALL
            .into_iter()
            .find(|c| c.as_str() == norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown code id '{s}'")))
    }
}

/// How the published minimum determinant relates to the stated value.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum DeltaRelation {
    Exact,
    AtLeast,
    /// Between `numerator / (lower_denominator · E^p)` and the stated value.
    Between { lower_denominator: f64 },
}

/// δ_min = numerator / (denominator · E^energy_power).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DeltaMinFormula {
    pub numerator: f64,
    pub denominator: f64,
    pub energy_power: i32,
    pub relation: DeltaRelation,
}

impl DeltaMinFormula {
    pub fn value(&self, energy: f64) -> f64 {
        self.numerator / (self.denominator * energy.powi(self.energy_power))
    }
}

/// Real-coordinate indices split into an outer block (enumerated jointly) and inner groups
/// that decouple once the outer block is fixed. The last index of each inner group is the
/// coordinate eligible for hard-limiting.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DecodingGroups {
    pub outer: Vec<usize>,
    pub inner: Vec<Vec<usize>>,
}

/// Exact algebraic description used to regenerate codewords without rounding.
#[derive(Debug, Clone)]
pub enum Structure {
    /// Block matrix of (A0, A1) with symbol p at position k·n_t + i.
    Layered { ctx: NumberFieldCtx, basis: Vec<KElem> },
    /// Cyclic-algebra form with only the first `layers` layers populated.
    Punctured { ctx: NumberFieldCtx, basis: Vec<KElem>, gamma: LElem, layers: usize },
    /// Defined numerically from rotated symbols.
    Rotated,
}

#[derive(Debug, Clone)]
pub struct CodeDescriptor {
    pub id: CodeId,
    pub n_t: usize,
    pub n_r_design: usize,
    pub t: usize,
    /// Complex symbols per codeword.
    pub k: usize,
    /// Ordered Ā_1, Ǎ_1, Ā_2, Ǎ_2, …; weight 2p multiplies s̄_p and 2p + 1 multiplies š_p.
    pub weights: Vec<CMatrix>,
    pub lattice_norm: f64,
    pub constellation_kind: ConstellationKind,
    pub groups: Option<DecodingGroups>,
    pub unnorm_mindet_divisor: Option<u64>,
    pub reference_delta_min: Option<DeltaMinFormula>,
    pub structure: Structure,
    /// Nonzero entries of each weight as (row·T + col, value).
    sparse: Vec<Vec<(usize, Complex64)>>,
}

fn l_unit(kind: ConstellationKind, check: bool) -> LElem {
    if check {
        LElem::generator(kind.lattice())
    } else {
        LElem::one(kind.lattice())
    }
}

fn layered_exact(ctx: &NumberFieldCtx, basis: &[KElem], symbols: &[LElem]) -> ExactMatrix {
    let n = ctx.n;
    let z = |k: usize, half: usize| {
        (0..n).fold(ctx.zero(), |acc, i| acc.add(&basis[i].scale(&symbols[2 * n * k + half * n + i])))
    };
    let a0 = AlgElem::new(z(0, 0), z(0, 1));
    let a1 = AlgElem::new(z(1, 0), z(1, 1));
    structured_matrix(ctx, &a0, &a1)
}

fn punctured_exact(
    ctx: &NumberFieldCtx,
    basis: &[KElem],
    gamma: &LElem,
    layers: usize,
    symbols: &[LElem],
) -> ExactMatrix {
    let n = ctx.n;
    let layer_elems: Vec<KElem> = (0..layers)
        .map(|l| (0..n).fold(ctx.zero(), |acc, i| acc.add(&basis[i].scale(&symbols[l * n + i]))))
        .collect();
    perfect_codeword_exact(ctx, &layer_elems, gamma)
}

fn inner_groups(kind: ConstellationKind, n: usize) -> Vec<Vec<usize>> {
    match kind {
        // real parts and imaginary parts of the two halves of A0 separately
        ConstellationKind::Qam => vec![
            (0..n).map(|i| 2 * i).collect(),
            (0..n).map(|i| 2 * i + 1).collect(),
            (0..n).map(|i| 2 * (n + i)).collect(),
            (0..n).map(|i| 2 * (n + i) + 1).collect(),
        ],
        // whole symbols of each half; the last symbol's ω-coordinate precedes its integer one
        ConstellationKind::Hex => (0..2)
            .map(|h| {
                let mut g = Vec::with_capacity(2 * n);
                for i in 0..n {
                    let p = h * n + i;
                    if i + 1 < n {
                        g.extend([2 * p, 2 * p + 1]);
                    } else {
                        g.extend([2 * p + 1, 2 * p]);
                    }
                }
                g
            })
            .collect(),
    }
}

pub fn build_code(id: CodeId) -> CodeDescriptor {
    let field = match id {
        CodeId::S4x2 | CodeId::Sr4x2 => Some(FieldId::F4x2),
        CodeId::S6x2 => Some(FieldId::F6x2),
        CodeId::S8x2 | CodeId::Perf4Punct => Some(FieldId::F8x2),
        CodeId::S12x2 | CodeId::Perf6Punct => Some(FieldId::F12x2),
    };
    let ctx = NumberFieldCtx::new(field.expect("every code has a field"));
    let kind = match ctx.kind {
        crate::algebra::LKind::Gaussian => ConstellationKind::Qam,
        crate::algebra::LKind::Eisenstein => ConstellationKind::Hex,
    };
    let b = basis(&ctx);
    let n = ctx.n;
    let (structure, n_t) = match id {
        CodeId::Sr4x2 => (Structure::Rotated, 4),
        CodeId::Perf4Punct | CodeId::Perf6Punct => {
            let gamma = ctx.gamma_m.clone();
            (Structure::Punctured { ctx, basis: b, gamma, layers: 2 }, n)
        }
        _ => (Structure::Layered { ctx, basis: b }, 2 * n),
    };
    let k = 2 * n_t;
    let t = n_t;

    let mut weights = Vec::with_capacity(2 * k);
    for p in 0..k {
        for check in [false, true] {
            let w = match &structure {
                Structure::Rotated => {
                    let mut s = vec![Complex64::new(0.0, 0.0); k];
                    s[p] = if check { Complex64::i() } else { Complex64::new(1.0, 0.0) };
                    sr_codeword(&s)
                }
                _ => {
                    let mut sym = vec![LElem::zero(kind.lattice()); k];
                    sym[p] = l_unit(kind, check);
                    let ex = exact_from_structure(&structure, &sym);
                    embed_exact(&structure, &ex)
                }
            };
            weights.push(w);
        }
    }
    let total: f64 = weights.iter().map(frob_sq).sum();
    let lattice_norm = (2.0 * t as f64 / total).sqrt();

    let groups = match id {
        CodeId::S4x2 | CodeId::S6x2 | CodeId::S8x2 | CodeId::S12x2 => Some(DecodingGroups {
            outer: (2 * n_t..2 * k).collect(),
            inner: inner_groups(kind, n),
        }),
        CodeId::Sr4x2 => Some(DecodingGroups {
            outer: (8..16).collect(),
            inner: vec![vec![0, 1], vec![4, 5], vec![2, 3], vec![6, 7]],
        }),
        _ => None,
    };
    let unnorm_mindet_divisor = match id {
        CodeId::S4x2 => Some(25),
        CodeId::S6x2 => Some(49),
        CodeId::S8x2 => Some(2025),
        CodeId::S12x2 => Some(1),
        _ => None,
    };
    let f = |numerator: f64, denominator: f64, energy_power: i32, relation| DeltaMinFormula {
        numerator,
        denominator,
        energy_power,
        relation,
    };
    let reference_delta_min = match id {
        CodeId::S4x2 | CodeId::Sr4x2 => Some(f(1.0, 25.0, 4, DeltaRelation::Exact)),
        CodeId::S6x2 => Some(f(1.0, 7f64.powi(4), 6, DeltaRelation::Exact)),
        CodeId::S8x2 => Some(f(1.0, 25.0 * 15f64.powi(4), 8, DeltaRelation::Exact)),
        CodeId::S12x2 => Some(f(1.0, 14f64.powi(12), 12, DeltaRelation::AtLeast)),
        CodeId::Perf4Punct => Some(f(16.0, 1125.0, 4, DeltaRelation::Exact)),
        CodeId::Perf6Punct => Some(f(
            1.0,
            7f64.powi(4),
            6,
            DeltaRelation::Between { lower_denominator: 7f64.powi(5) },
        )),
    };

    let sparse = weights
        .iter()
        .map(|w| {
            let mut v = Vec::new();
            for r in 0..n_t {
                for c in 0..t {
                    let z = w[(r, c)];
                    if z.norm_sqr() > 0.0 {
                        v.push((r * t + c, z));
                    }
                }
            }
            v
        })
        .collect();

    CodeDescriptor {
        id,
        n_t,
        n_r_design: 2,
        t,
        k,
        weights,
        lattice_norm,
        constellation_kind: kind,
        groups,
        unnorm_mindet_divisor,
        reference_delta_min,
        structure,
        sparse,
    }
}

fn exact_from_structure(structure: &Structure, symbols: &[LElem]) -> ExactMatrix {
    match structure {
        Structure::Layered { ctx, basis } => layered_exact(ctx, basis, symbols),
        Structure::Punctured { ctx, basis, gamma, layers } => {
            punctured_exact(ctx, basis, gamma, *layers, symbols)
        }
        Structure::Rotated => unreachable!("rotated code has no exact form"),
    }
}

fn embed_exact(structure: &Structure, m: &ExactMatrix) -> CMatrix {
    let ctx = match structure {
        Structure::Layered { ctx, .. } | Structure::Punctured { ctx, .. } => ctx,
        Structure::Rotated => unreachable!(),
    };
    CMatrix::from_fn(m.len(), m[0].len(), |r, c| ctx.embed(&m[r][c]))
}

impl CodeDescriptor {
    /// Number of real symbol coordinates (2k).
    pub fn real_dim(&self) -> usize {
        2 * self.k
    }

    pub fn field(&self) -> Option<&NumberFieldCtx> {
        match &self.structure {
            Structure::Layered { ctx, .. } | Structure::Punctured { ctx, .. } => Some(ctx),
            Structure::Rotated => None,
        }
    }

    /// Overall scale applied to unnormalized codewords for a constellation of energy E.
    pub fn scale(&self, avg_energy: f64) -> f64 {
        self.lattice_norm / avg_energy.sqrt()
    }

    /// Real coordinates (s̄_0, š_0, s̄_1, …) of a complex symbol vector.
    pub fn real_coords(&self, s: &[Complex64]) -> Result<Vec<f64>> {
        if s.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: s.len() });
        }
        let mut x = Vec::with_capacity(2 * self.k);
        for &v in s {
            let (a, b) = Constellation::real_coords(self.constellation_kind, v);
            x.push(a);
            x.push(b);
        }
        Ok(x)
    }

    /// Σ x_j W_j (unnormalized).
    pub fn encode_real(&self, x: &[f64]) -> Result<CMatrix> {
        if x.len() != 2 * self.k {
            return Err(Error::LengthMismatch { expected: 2 * self.k, got: x.len() });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.n_t * self.t];
        self.accumulate(x, &mut buf);
        Ok(CMatrix::from_fn(self.n_t, self.t, |r, c| buf[r * self.t + c]))
    }

    /// Add Σ x_j W_j into a row-major buffer of length n_t·T.
    pub fn accumulate(&self, x: &[f64], buf: &mut [Complex64]) {
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                for &(pos, w) in &self.sparse[j] {
                    buf[pos] += w * xj;
                }
            }
        }
    }

    /// Sparse nonzero entries of weight j.
    pub fn sparse_weight(&self, j: usize) -> &[(usize, Complex64)] {
        &self.sparse[j]
    }

    /// Codeword of `s`; when `normalized` the result is scaled by c/√E.
    pub fn encode(&self, s: &[Complex64], normalized: Option<&Constellation>) -> Result<CMatrix> {
        let m = self.encode_real(&self.real_coords(s)?)?;
        Ok(match normalized {
            Some(c) => m * Complex64::new(self.scale(c.avg_energy), 0.0),
            None => m,
        })
    }

    /// Exact codeword for symbols in O_L (not available for the rotated code).
    pub fn exact_codeword(&self, symbols: &[LElem]) -> Result<ExactMatrix> {
        if symbols.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: symbols.len() });
        }
        match self.structure {
            Structure::Rotated => Err(Error::InvalidArgument(format!(
                "{} has no exact algebraic form",
                self.id
            ))),
            _ => Ok(exact_from_structure(&self.structure, symbols)),
        }
    }

    /// Real generator matrix: column j is the column-major vectorisation of W_j with each
    /// entry expanded to [Re, Im].
    pub fn generator_matrix(&self) -> DMatrix<f64> {
        generator_matrix_of(&self.weights, self.n_t, self.t)
    }

    /// Rank(G) / 2T.
    pub fn rate(&self) -> Ratio<usize> {
        Ratio::new(numerical_rank(&self.generator_matrix(), 1e-9), 2 * self.t)
    }
}

pub fn generator_matrix_of(weights: &[CMatrix], rows: usize, cols: usize) -> DMatrix<f64> {
    let mut g = DMatrix::zeros(2 * rows * cols, weights.len());
    for (j, w) in weights.iter().enumerate() {
        for c in 0..cols {
            for r in 0..rows {
                let idx = c * rows + r;
                g[(2 * idx, j)] = w[(r, c)].re;
                g[(2 * idx + 1, j)] = w[(r, c)].im;
            }
        }
    }
    g
}
