//! End-to-end pipeline: ingestion, census, null model, significance,
//! stability, and the statistics tying them together.

mod charts;
mod tables;

pub use charts::{boxes_chart, emit_profile_chart, occurrence_chart, profile_chart};
pub use tables::{
    counts_csv, counts_json, emit_tables, significance_csv, stability_csv, stability_table_csv, stats_csv,
    summary_json, COUNTS_HEADER, SIGNIFICANCE_HEADER, STABILITY_HEADER, STATS_HEADER,
};

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::census::{census, ClassTable, CensusResult, MotifId, MotifSize};
use crate::error::{Error, Result};
use crate::graphio::{normalize, parse_edge_list, DirectedGraph, NormalizationReport};
use crate::nullmodel::{ensemble_census, EnsembleStatistics, RandomizationConfig};
use crate::significance::{motif_filter, normalized_profile, z_scores, FilterThresholds, ProfileVector, SignificanceRecord};
use crate::stability::{stability_profile, StabilityClass, StabilityProfile};
use crate::stats::{kruskal_wallis, spearman, GroupedScores, KruskalWallis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::InvalidArgument(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub sizes: Vec<MotifSize>,
    pub randomization: RandomizationConfig,
    pub thresholds: FilterThresholds,
    pub out_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
}

impl PipelineConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            input: input.into(),
            sizes: MotifSize::ALL.to_vec(),
            randomization: RandomizationConfig::default(),
            thresholds: FilterThresholds::default(),
            out_dir: out_dir.into(),
            formats: vec![OutputFormat::Csv, OutputFormat::Json, OutputFormat::Svg],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::InvalidArgument("at least one motif size is required".into()));
        }
        if self.formats.is_empty() {
            return Err(Error::InvalidArgument("at least one output format is required".into()));
        }
        self.randomization.validate()
    }

    fn sorted_sizes(&self) -> Vec<MotifSize> {
        let set: BTreeSet<MotifSize> = self.sizes.iter().copied().collect();
        set.into_iter().collect()
    }
}

/// Everything computed for one motif size.
#[derive(Debug, Clone)]
pub struct SizeReport {
    pub size: MotifSize,
    pub census: CensusResult,
    pub ensemble: EnsembleStatistics,
    /// Ordered by (edge count, ID).
    pub records: Vec<SignificanceRecord>,
    pub profile: ProfileVector,
    /// Same order as `records`.
    pub stability: Vec<StabilityProfile>,
    pub grouped: GroupedScores,
    pub kruskal: BTreeMap<u32, Option<KruskalWallis>>,
    pub spearman_overall: Option<f64>,
    pub spearman_by_edges: BTreeMap<u32, Option<f64>>,
    pub selected: BTreeSet<MotifId>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunMetadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: String,
    pub input_sha256: String,
    pub nodes: usize,
    pub edges: usize,
    pub self_loops_removed: usize,
    pub duplicates_removed: usize,
    pub sizes: Vec<MotifSize>,
    pub randomization: RandomizationConfig,
    pub z_min: f64,
    pub mfactor_min: f64,
    pub uniq_min: u64,
    pub formats: Vec<OutputFormat>,
}

#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub metadata: RunMetadata,
    pub normalization: NormalizationReport,
    pub graph: DirectedGraph,
    pub sizes: Vec<SizeReport>,
}

impl ReportBundle {
    pub fn size(&self, size: MotifSize) -> Option<&SizeReport> {
        self.sizes.iter().find(|r| r.size == size)
    }
}

fn log_occurrence(n_real: u64) -> f64 {
    (n_real as f64 + 1.0).log10()
}

/// Significance, stability and statistics for one size, given the real
/// census (with retained instances) and its ensemble.
pub fn analyze_size(
    census: CensusResult,
    ensemble: EnsembleStatistics,
    thresholds: &FilterThresholds,
) -> Result<SizeReport> {
    let size = census.size;
    let order = ClassTable::get(size).classes_by_edges();
    let by_id: BTreeMap<MotifId, SignificanceRecord> = z_scores(&census, &ensemble)?
        .into_iter()
        .map(|r| (r.motif, r))
        .collect();
    let records: Vec<SignificanceRecord> = order.iter().map(|m| by_id[m].clone()).collect();
    let profile = normalized_profile(&records);
    let selected = motif_filter(&records, thresholds)?;
    let stability: Vec<StabilityProfile> = order.iter().map(|&m| stability_profile(m)).collect();

    let mut grouped: GroupedScores = BTreeMap::new();
    for (rec, st) in records.iter().zip(&stability) {
        let classes = grouped.entry((size, rec.edge_count)).or_default();
        let scores = classes.entry(st.stability_class).or_default();
        if let Some(z) = rec.z {
            scores.push(z);
        }
    }

    let mut kruskal = BTreeMap::new();
    for (&(_, edges), classes) in &grouped {
        let samples: Vec<&Vec<f64>> = classes.values().filter(|v| !v.is_empty()).collect();
        let total: usize = samples.iter().map(|v| v.len()).sum();
        let result = if samples.len() >= 2 && total >= 3 {
            Some(kruskal_wallis(&samples)?)
        } else {
            None
        };
        kruskal.insert(edges, result);
    }

    let sss: Vec<f64> = stability.iter().map(|s| s.sss).collect();
    let occ: Vec<f64> = records.iter().map(|r| log_occurrence(r.n_real)).collect();
    let spearman_overall = spearman(&sss, &occ)?;
    let mut spearman_by_edges = BTreeMap::new();
    for &(_, edges) in grouped.keys() {
        let idx: Vec<usize> = (0..records.len()).filter(|&i| records[i].edge_count == edges).collect();
        let rho = if idx.len() >= 2 {
            let x: Vec<f64> = idx.iter().map(|&i| sss[i]).collect();
            let y: Vec<f64> = idx.iter().map(|&i| occ[i]).collect();
            spearman(&x, &y)?
        } else {
            None
        };
        spearman_by_edges.insert(edges, rho);
    }

    Ok(SizeReport {
        size,
        census,
        ensemble,
        records,
        profile,
        stability,
        grouped,
        kruskal,
        spearman_overall,
        spearman_by_edges,
        selected,
    })
}

/// Runs every stage for every requested size on an already-loaded graph.
pub fn run_on_graph(
    graph: DirectedGraph,
    normalization: NormalizationReport,
    input_bytes: &[u8],
    cfg: &PipelineConfig,
) -> Result<ReportBundle> {
    cfg.validate().map_err(Error::at_stage("config"))?;
    let mut sizes = Vec::new();
    for size in cfg.sorted_sizes() {
        let real = census(&graph, size, true).map_err(Error::at_stage("census"))?;
        let ensemble =
            ensemble_census(&graph, &cfg.randomization, size).map_err(Error::at_stage("nullmodel"))?;
        sizes.push(analyze_size(real, ensemble, &cfg.thresholds).map_err(Error::at_stage("significance"))?);
    }
    let metadata = RunMetadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        input: cfg.input.display().to_string(),
        input_sha256: hex::encode(Sha256::digest(input_bytes)),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        self_loops_removed: normalization.self_loops_removed,
        duplicates_removed: normalization.duplicates_removed,
        sizes: cfg.sorted_sizes(),
        randomization: cfg.randomization,
        z_min: cfg.thresholds.z_min,
        mfactor_min: cfg.thresholds.mfactor_min,
        uniq_min: cfg.thresholds.uniq_min,
        formats: cfg.formats.clone(),
    };
    Ok(ReportBundle {
        metadata,
        normalization,
        graph,
        sizes,
    })
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<ReportBundle> {
    let bytes = std::fs::read(&cfg.input).map_err(|e| Error::at_stage("input")(e.into()))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::at_stage("input")(Error::InvalidArgument("input is not valid UTF-8".into())))?;
    let raw = parse_edge_list(&text).map_err(Error::at_stage("graphio"))?;
    let (graph, normalization) = normalize(&raw).map_err(Error::at_stage("graphio"))?;
    run_on_graph(graph, normalization, &bytes, cfg)
}

/// Writes every requested output format into `cfg.out_dir`.
pub fn write_outputs(bundle: &ReportBundle, cfg: &PipelineConfig) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(&cfg.out_dir)?;
    let mut written = Vec::new();
    for &format in &cfg.formats {
        match format {
            OutputFormat::Csv | OutputFormat::Json => {
                written.extend(emit_tables(bundle, format, &cfg.out_dir)?);
            }
            OutputFormat::Svg => {
                for r in &bundle.sizes {
                    written.extend(emit_profile_chart(bundle, r.size, &cfg.out_dir)?);
                }
            }
        }
    }
    Ok(written)
}

pub(crate) fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path)
}

pub(crate) fn class_of(report: &SizeReport, motif: MotifId) -> StabilityClass {
    report
        .stability
        .iter()
        .find(|s| s.motif == motif)
        .map(|s| s.stability_class)
        .expect("every class has a stability profile")
}
