//! Z scores, Mfactor, normalized significance profiles, and the motif filter.

use std::collections::{BTreeMap, BTreeSet};

use crate::census::{CensusResult, ClassTable, MotifId};
use crate::error::{Error, Result};
use crate::nullmodel::EnsembleStatistics;

/// Real-over-random count ratio; infinite when the motif occurs only in the real graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mfactor {
    Finite(f64),
    Infinite,
}

impl Mfactor {
    pub fn exceeds(&self, threshold: f64) -> bool {
        match *self {
            Mfactor::Finite(x) => x > threshold,
            Mfactor::Infinite => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceRecord {
    pub motif: MotifId,
    pub n_real: u64,
    pub rand_mean: f64,
    pub rand_sd: f64,
    /// `None` when the ensemble has zero spread.
    pub z: Option<f64>,
    pub mfactor: Mfactor,
    pub uniqueness: Option<u64>,
    pub edge_count: u32,
}

pub fn z_score(n_real: f64, rand_mean: f64, rand_sd: f64) -> Option<f64> {
    (rand_sd > 0.0).then(|| (n_real - rand_mean) / rand_sd)
}

pub fn mfactor(n_real: u64, rand_mean: f64) -> Mfactor {
    if rand_mean > 0.0 {
        Mfactor::Finite(n_real as f64 / rand_mean)
    } else if n_real > 0 {
        Mfactor::Infinite
    } else {
        Mfactor::Finite(1.0)
    }
}

/// One record per class of the census size, in ascending ID order.
pub fn z_scores(real: &CensusResult, ensemble: &EnsembleStatistics) -> Result<Vec<SignificanceRecord>> {
    if real.size != ensemble.size {
        return Err(Error::SizeMismatch {
            census: real.size.nodes(),
            ensemble: ensemble.size.nodes(),
        });
    }
    ClassTable::get(real.size)
        .classes()
        .iter()
        .map(|&motif| {
            let n_real = real.count(motif);
            let (rand_mean, rand_sd) = ensemble
                .get(motif)
                .map_or((0.0, 0.0), |e| (e.mean, e.sd));
            Ok(SignificanceRecord {
                motif,
                n_real,
                rand_mean,
                rand_sd,
                z: z_score(n_real as f64, rand_mean, rand_sd),
                mfactor: mfactor(n_real, rand_mean),
                uniqueness: real.uniqueness(motif),
                edge_count: motif.edge_count(),
            })
        })
        .collect()
}

/// Unit-length significance profile `N_z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileVector {
    pub scores: BTreeMap<MotifId, f64>,
}

impl ProfileVector {
    pub fn get(&self, motif: MotifId) -> f64 {
        self.scores.get(&motif).copied().unwrap_or(0.0)
    }
}

pub fn normalized_profile(records: &[SignificanceRecord]) -> ProfileVector {
    let norm = records
        .iter()
        .map(|r| r.z.unwrap_or(0.0).powi(2))
        .sum::<f64>()
        .sqrt();
    let scores = records
        .iter()
        .map(|r| {
            let z = r.z.unwrap_or(0.0);
            (r.motif, if norm > 0.0 { z / norm } else { 0.0 })
        })
        .collect();
    ProfileVector { scores }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterThresholds {
    pub z_min: f64,
    pub mfactor_min: f64,
    pub uniq_min: u64,
}

impl Default for FilterThresholds {
    fn default() -> Self {
        FilterThresholds {
            z_min: 2.0,
            mfactor_min: 1.1,
            uniq_min: 4,
        }
    }
}

/// Motifs with `z > z_min`, `mfactor > mfactor_min` and `uniqueness >= uniq_min`.
pub fn motif_filter(records: &[SignificanceRecord], thresholds: &FilterThresholds) -> Result<BTreeSet<MotifId>> {
    let mut out = BTreeSet::new();
    for r in records {
        let uniqueness = r.uniqueness.ok_or(Error::MissingUniqueness(r.motif.id))?;
        let Some(z) = r.z else { continue };
        if z > thresholds.z_min && r.mfactor.exceeds(thresholds.mfactor_min) && uniqueness >= thresholds.uniq_min {
            out.insert(r.motif);
        }
    }
    Ok(out)
}
