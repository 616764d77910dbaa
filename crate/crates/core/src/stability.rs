//! Structural stability of motifs viewed as linear dynamical systems.
//!
//! A motif with edge `j -> i` contributes a nonzero Jacobian entry `A[i][j]`;
//! every node is self-regulating (`A[i][i] = -1`). With a strictly negative
//! diagonal, a sign pattern is stable for every choice of magnitudes exactly
//! when each reciprocated pair forms a negative 2-loop and there is no
//! directed cycle of length three or more. The structural stability score is
//! the fraction of uniform edge-sign assignments that pass this test.

use std::fmt;

use nalgebra::{DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{Adjacency, MotifId};
use crate::error::{Error, Result};

/// Feedback-loop structure of a motif.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleSummary {
    pub mutual_pairs: u32,
    pub has_long_cycle: bool,
    pub edge_count: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StabilityClass {
    /// Acyclic.
    I,
    /// A single 2-node loop and nothing else cyclic.
    II,
    /// Several 2-node loops or any longer cycle.
    III,
}

impl StabilityClass {
    pub const ALL: [StabilityClass; 3] = [StabilityClass::I, StabilityClass::II, StabilityClass::III];
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            StabilityClass::I => "I",
            StabilityClass::II => "II",
            StabilityClass::III => "III",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityProfile {
    pub motif: MotifId,
    pub cycles: CycleSummary,
    pub sss: f64,
    pub stability_class: StabilityClass,
}

fn mutual_pairs(adj: &Adjacency) -> Vec<(usize, usize)> {
    let k = adj.k();
    (0..k)
        .flat_map(|i| ((i + 1)..k).map(move |j| (i, j)))
        .filter(|&(i, j)| adj.get(i, j) && adj.get(j, i))
        .collect()
}

/// A simple directed cycle through three or more nodes, as a node sequence.
pub fn find_long_cycle(adj: &Adjacency) -> Option<Vec<usize>> {
    fn dfs(adj: &Adjacency, path: &mut Vec<usize>, used: &mut u32) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() >= 3 && adj.get(last, start) {
            return true;
        }
        for next in (start + 1)..adj.k() {
            if *used & (1 << next) == 0 && adj.get(last, next) {
                *used |= 1 << next;
                path.push(next);
                if dfs(adj, path, used) {
                    return true;
                }
                path.pop();
                *used &= !(1 << next);
            }
        }
        false
    }
    (0..adj.k()).find_map(|start| {
        let mut path = vec![start];
        let mut used = 1u32 << start;
        dfs(adj, &mut path, &mut used).then_some(path)
    })
}

pub fn cycle_summary(motif: MotifId) -> CycleSummary {
    let adj = motif.adjacency();
    CycleSummary {
        mutual_pairs: mutual_pairs(&adj).len() as u32,
        has_long_cycle: find_long_cycle(&adj).is_some(),
        edge_count: adj.edge_count(),
    }
}

/// Closed-form score: 0 with any long cycle, otherwise `2^-m` for `m` 2-loops.
pub fn structural_stability_score(motif: MotifId) -> f64 {
    let c = cycle_summary(motif);
    if c.has_long_cycle {
        0.0
    } else {
        0.5f64.powi(c.mutual_pairs as i32)
    }
}

/// Qualitative stability of one sign assignment; `signs[e]` is the sign of
/// the `e`-th edge of `adj.edges()`, `true` meaning positive.
pub fn is_sign_stable(adj: &Adjacency, signs: &[bool]) -> bool {
    violating_cycle(adj, signs).is_none()
}

/// A cycle (as edges `(from, to)`) that rules out qualitative stability, if any.
pub fn violating_cycle(adj: &Adjacency, signs: &[bool]) -> Option<Vec<(usize, usize)>> {
    if let Some(nodes) = find_long_cycle(adj) {
        let n = nodes.len();
        return Some((0..n).map(|i| (nodes[i], nodes[(i + 1) % n])).collect());
    }
    let edges: Vec<(usize, usize)> = adj.edges().collect();
    let sign_of = |u: usize, v: usize| signs[edges.iter().position(|&e| e == (u, v)).unwrap()];
    mutual_pairs(adj)
        .into_iter()
        .find(|&(i, j)| sign_of(i, j) == sign_of(j, i))
        .map(|(i, j)| vec![(i, j), (j, i)])
}

/// Score by exhaustive enumeration of all `2^E` sign assignments.
pub fn sss_by_sign_enumeration(motif: MotifId) -> f64 {
    let adj = motif.adjacency();
    let e = adj.edge_count() as usize;
    let stable = (0u32..1 << e)
        .filter(|&pattern| {
            let signs: Vec<bool> = (0..e).map(|b| pattern & (1 << b) != 0).collect();
            is_sign_stable(&adj, &signs)
        })
        .count();
    stable as f64 / (1u64 << e) as f64
}

pub fn stability_class(motif: MotifId) -> StabilityClass {
    let c = cycle_summary(motif);
    match (c.mutual_pairs, c.has_long_cycle) {
        (0, false) => StabilityClass::I,
        (1, false) => StabilityClass::II,
        _ => StabilityClass::III,
    }
}

pub fn stability_profile(motif: MotifId) -> StabilityProfile {
    StabilityProfile {
        motif,
        cycles: cycle_summary(motif),
        sss: structural_stability_score(motif),
        stability_class: stability_class(motif),
    }
}

/// Jacobian of a motif: `-1` on the diagonal, `A[i][j]` set for each edge `j -> i`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianSample {
    k: usize,
    entries: [[f64; 4]; 4],
}

impl JacobianSample {
    /// `weights[e]` is the signed weight of the `e`-th edge of `adj.edges()`.
    pub fn new(adj: &Adjacency, weights: &[f64]) -> Self {
        let k = adj.k();
        let mut entries = [[0.0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate().take(k) {
            row[i] = -1.0;
        }
        for ((from, to), &w) in adj.edges().zip(weights) {
            entries[to][from] = w;
        }
        JacobianSample { k, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.k).map(|i| self.entries[i][..self.k].to_vec()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn max_real_eigenvalue(&self) -> Result<f64> {
        max_real_eigenvalue(&self.rows())
    }
}

/// Strongly connected components of the off-diagonal sparsity pattern.
fn components(a: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let k = a.len();
    let mut reach = vec![0u32; k];
    for (i, r) in reach.iter_mut().enumerate() {
        *r = 1 << i;
    }
    // Transitive closure over a <= 4 node pattern.
    for _ in 0..k {
        for i in 0..k {
            for j in 0..k {
                if i != j && a[i][j] != 0.0 {
                    reach[i] |= reach[j];
                }
            }
        }
    }
    let mut assigned = 0u32;
    let mut out = Vec::new();
    for i in 0..k {
        if assigned & (1 << i) != 0 {
            continue;
        }
        let comp: Vec<usize> = (0..k)
            .filter(|&j| reach[i] & (1 << j) != 0 && reach[j] & (1 << i) != 0)
            .collect();
        for &j in &comp {
            assigned |= 1 << j;
        }
        out.push(comp);
    }
    out
}

fn block_max_real(a: &[Vec<f64>], nodes: &[usize]) -> Result<f64> {
    match nodes {
        [i] => Ok(a[*i][*i]),
        [i, j] => {
            let (p, q, r, s) = (a[*i][*i], a[*i][*j], a[*j][*i], a[*j][*j]);
            let half_trace = 0.5 * (p + s);
            let half_diff = 0.5 * (p - s);
            let radicand = half_diff * half_diff + q * r;
            Ok(if radicand >= 0.0 {
                half_trace + radicand.sqrt()
            } else {
                half_trace
            })
        }
        _ => {
            let n = nodes.len();
            let m = DMatrix::from_fn(n, n, |r, c| a[nodes[r]][nodes[c]]);
            let schur = Schur::try_new(m, 1e-15, 10_000)
                .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
            schur
                .complex_eigenvalues()
                .iter()
                .map(|z| z.re)
                .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |m| m.max(x))))
                .ok_or_else(|| Error::Numerical("empty spectrum".into()))
        }
    }
}

/// Largest real part over the spectrum of a square matrix of order at most 4.
///
/// The matrix is split into the diagonal blocks of its block-triangular form,
/// so acyclic and 2-loop structure is handled in closed form.
pub fn max_real_eigenvalue<R: AsRef<[f64]>>(rows: &[R]) -> Result<f64> {
    let k = rows.len();
    if k == 0 || k > 4 {
        return Err(Error::InvalidArgument(format!("matrix order {k} not in 1..=4")));
    }
    let a: Vec<Vec<f64>> = rows.iter().map(|r| r.as_ref().to_vec()).collect();
    if a.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if a.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    let mut best = f64::NEG_INFINITY;
    for comp in components(&a) {
        best = best.max(block_max_real(&a, &comp)?);
    }
    Ok(best)
}

/// Samples per independently seeded chunk of the Monte-Carlo estimate.
pub const MONTE_CARLO_CHUNK: usize = 4096;

/// Fraction of random Jacobians (uniform signs, log-uniform magnitudes on
/// `[lo, hi]`) whose spectrum lies strictly in the left half-plane.
pub fn sss_monte_carlo(motif: MotifId, samples: usize, magnitude_range: (f64, f64), seed: u64) -> Result<f64> {
    let (lo, hi) = magnitude_range;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "magnitude range [{lo}, {hi}] must satisfy 0 < lo <= hi"
        )));
    }
    let adj = motif.adjacency();
    let e = adj.edge_count() as usize;
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let chunks = samples.div_ceil(MONTE_CARLO_CHUNK);

    let stable: usize = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<usize> {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = MONTE_CARLO_CHUNK.min(samples - c * MONTE_CARLO_CHUNK);
            let mut weights = vec![0.0; e];
            let mut hits = 0;
            for _ in 0..n {
                for w in weights.iter_mut() {
                    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                    let mag = if lo == hi {
                        lo
                    } else {
                        rng.random_range(ln_lo..ln_hi).exp()
                    };
                    *w = sign * mag;
                }
                if JacobianSample::new(&adj, &weights).max_real_eigenvalue()? < 0.0 {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(stable as f64 / samples as f64)
}
