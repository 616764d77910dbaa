//! Degree-preserving randomization and ensemble motif statistics.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{census, MotifId, MotifSize};
use crate::error::{Error, Result};
use crate::graphio::DirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomizationConfig {
    pub replicates: usize,
    /// Attempted swaps per replicate = `swap_factor * |E|`.
    pub swap_factor: usize,
    /// Keep reciprocated pairs as units so the mutual-edge count is fixed.
    pub preserve_mutual: bool,
    pub master_seed: u64,
}

impl Default for RandomizationConfig {
    fn default() -> Self {
        RandomizationConfig {
            replicates: 100,
            swap_factor: 100,
            preserve_mutual: true,
            master_seed: 0,
        }
    }
}

impl RandomizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::InvalidArgument("replicates must be at least 1".into()));
        }
        if self.swap_factor == 0 {
            return Err(Error::InvalidArgument("swap factor must be at least 1".into()));
        }
        Ok(())
    }

    /// The random stream dedicated to one replicate.
    pub fn replicate_rng(&self, replicate_index: u64) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(replicate_index);
        rng
    }
}

/// Count distribution of every class over the randomized replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifEnsemble {
    pub mean: f64,
    /// Population standard deviation.
    pub sd: f64,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStatistics {
    pub size: MotifSize,
    pub replicates: usize,
    /// Every class of `size` is present; classes never seen have all-zero counts.
    pub motifs: BTreeMap<MotifId, MotifEnsemble>,
}

impl EnsembleStatistics {
    pub fn get(&self, motif: MotifId) -> Option<&MotifEnsemble> {
        self.motifs.get(&motif)
    }
}

#[inline]
fn key(u: u32, v: u32) -> u64 {
    (u as u64) << 32 | v as u64
}

struct Rewirer {
    edges: HashSet<u64>,
    single: Vec<(u32, u32)>,
    mutual: Vec<(u32, u32)>,
}

impl Rewirer {
    fn new(g: &DirectedGraph, preserve_mutual: bool) -> Self {
        let edges: HashSet<u64> = g.edges().iter().map(|&(u, v)| key(u, v)).collect();
        let mut single = Vec::new();
        let mut mutual = Vec::new();
        for (u, v) in g.sorted_edges() {
            if preserve_mutual && g.has_edge(v, u) {
                if u < v {
                    mutual.push((u, v));
                }
            } else {
                single.push((u, v));
            }
        }
        Rewirer {
            edges,
            single,
            mutual,
        }
    }

    #[inline]
    fn has(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&key(u, v))
    }

    /// (a->b), (c->d) becomes (a->d), (c->b). The pair is drawn with
    /// replacement; drawing the same edge twice is a rejected attempt, which
    /// keeps the chain aperiodic.
    fn try_single(&mut self, rng: &mut impl Rng, preserve_mutual: bool) {
        let m = self.single.len();
        if m < 2 {
            return;
        }
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            return;
        }
        let (a, b) = self.single[i];
        let (c, d) = self.single[j];
        if a == d || c == b || a == c || b == d {
            return;
        }
        if self.has(a, d) || self.has(c, b) {
            return;
        }
        if preserve_mutual && (self.has(d, a) || self.has(b, c)) {
            return;
        }
        self.edges.remove(&key(a, b));
        self.edges.remove(&key(c, d));
        self.edges.insert(key(a, d));
        self.edges.insert(key(c, b));
        self.single[i] = (a, d);
        self.single[j] = (c, b);
    }

    /// (i<->j), (k<->l) becomes (i<->l), (k<->j), with random orientation of each pair.
    fn try_mutual(&mut self, rng: &mut impl Rng) {
        let m = self.mutual.len();
        if m < 2 {
            return;
        }
        let p = rng.random_range(0..m);
        let q = rng.random_range(0..m);
        if p == q {
            return;
        }
        let (mut i, mut j) = self.mutual[p];
        let (mut k, mut l) = self.mutual[q];
        if rng.random::<bool>() {
            std::mem::swap(&mut i, &mut j);
        }
        if rng.random::<bool>() {
            std::mem::swap(&mut k, &mut l);
        }
        if i == l || k == j || i == k || j == l {
            return;
        }
        if self.has(i, l) || self.has(l, i) || self.has(k, j) || self.has(j, k) {
            return;
        }
        for (u, v) in [(i, j), (j, i), (k, l), (l, k)] {
            self.edges.remove(&key(u, v));
        }
        for (u, v) in [(i, l), (l, i), (k, j), (j, k)] {
            self.edges.insert(key(u, v));
        }
        self.mutual[p] = (i.min(l), i.max(l));
        self.mutual[q] = (k.min(j), k.max(j));
    }

    fn into_edges(self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self.single;
        for (u, v) in self.mutual {
            out.push((u, v));
            out.push((v, u));
        }
        out.sort_unstable();
        out
    }
}

/// One degree-preserving rewiring of `g`, drawn from the replicate's own stream.
pub fn randomize_once(g: &DirectedGraph, cfg: &RandomizationConfig, replicate_index: u64) -> DirectedGraph {
    let mut rng = cfg.replicate_rng(replicate_index);
    let mut rw = Rewirer::new(g, cfg.preserve_mutual);
    let attempts = cfg.swap_factor * g.edge_count();
    let single_edges = rw.single.len();
    let mutual_edges = 2 * rw.mutual.len();
    for _ in 0..attempts {
        // Pick the swap kind in proportion to the number of edges of each kind.
        if mutual_edges > 0 && rng.random_range(0..single_edges + mutual_edges) >= single_edges {
            rw.try_mutual(&mut rng);
        } else {
            rw.try_single(&mut rng, cfg.preserve_mutual);
        }
    }
    DirectedGraph::from_edges(g.node_count(), rw.into_edges())
        .expect("swaps keep the graph simple")
}

fn population_sd(counts: &[u64], mean: f64) -> f64 {
    let n = counts.len() as f64;
    let var = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    var.sqrt()
}

pub fn ensemble_census(g: &DirectedGraph, cfg: &RandomizationConfig, size: MotifSize) -> Result<EnsembleStatistics> {
    cfg.validate()?;
    let replicate_counts: Vec<BTreeMap<MotifId, u64>> = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| {
            let rg = randomize_once(g, cfg, r);
            census(&rg, size, false).map(|c| c.counts)
        })
        .collect::<Result<_>>()?;

    let motifs = crate::census::ClassTable::get(size)
        .classes()
        .iter()
        .map(|&m| {
            let counts: Vec<u64> = replicate_counts
                .iter()
                .map(|c| c.get(&m).copied().unwrap_or(0))
                .collect();
            let mean = counts.iter().sum::<u64>() as f64 / counts.len() as f64;
            let sd = population_sd(&counts, mean);
            (m, MotifEnsemble { mean, sd, counts })
        })
        .collect();

    Ok(EnsembleStatistics {
        size,
        replicates: cfg.replicates,
        motifs,
    })
}
