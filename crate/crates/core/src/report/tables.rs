use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{class_of, write_file, OutputFormat, ReportBundle, SizeReport};
use crate::census::{CensusResult, ClassTable, MotifSize};
use crate::error::Result;
use crate::graphio::NormalizationReport;
use crate::significance::Mfactor;
use crate::stability::{stability_profile, StabilityClass};

pub const COUNTS_HEADER: &str = "motif_id,size,edge_count,n_real,uniqueness";
pub const SIGNIFICANCE_HEADER: &str = "motif_id,size,edge_count,n_real,rand_mean,rand_sd,z,mfactor,uniqueness,n_z,selected";
pub const STABILITY_HEADER: &str = "motif_id,size,edge_count,mutual_pairs,has_long_cycle,sss,stability_class";
pub const STATS_HEADER: &str = "size,edge_count,class,n,q1,q3,mean,whisker_low,whisker_high,kw_H,kw_df,kw_p";

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn mfactor_field(m: Mfactor) -> String {
    match m {
        Mfactor::Finite(x) => num(x),
        Mfactor::Infinite => "inf".into(),
    }
}

fn mfactor_json(m: Mfactor) -> Value {
    match m {
        Mfactor::Finite(x) => json!(x),
        Mfactor::Infinite => json!("inf"),
    }
}

fn to_csv(header: &str, rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header.split(','))
        .and_then(|_| rows.iter().try_for_each(|r| w.write_record(r)))
        .map_err(std::io::Error::other)?;
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// Per-class real counts, every class of the size included.
pub fn counts_csv(census: &CensusResult) -> Result<String> {
    let rows = ClassTable::get(census.size)
        .classes_by_edges()
        .into_iter()
        .map(|m| {
            vec![
                m.id.to_string(),
                census.size.to_string(),
                m.edge_count().to_string(),
                census.count(m).to_string(),
                opt(census.uniqueness(m)),
            ]
        })
        .collect();
    to_csv(COUNTS_HEADER, rows)
}

/// Counts as JSON; instance node sets are reported with original labels.
pub fn counts_json(census: &CensusResult, labels: &NormalizationReport) -> Result<String> {
    let motifs: Vec<Value> = ClassTable::get(census.size)
        .classes_by_edges()
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            let mut v = json!({
                "dense_index": i + 1,
                "motif_id": m.id,
                "edge_count": m.edge_count(),
                "n_real": census.count(m),
                "uniqueness": census.uniqueness(m),
            });
            if let Some(inst) = &census.instances {
                let list: Vec<Vec<u64>> = inst
                    .get(&m)
                    .map(|v| {
                        v.iter()
                            .map(|s| s.nodes().iter().map(|&n| labels.original_label(n)).collect())
                            .collect()
                    })
                    .unwrap_or_default();
                v["instances"] = json!(list);
            }
            v
        })
        .collect();
    let doc = json!({
        "size": census.size.nodes(),
        "total": census.total(),
        "motifs": motifs,
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn significance_csv(report: &SizeReport) -> Result<String> {
    let rows = report
        .records
        .iter()
        .map(|r| {
            vec![
                r.motif.id.to_string(),
                report.size.to_string(),
                r.edge_count.to_string(),
                r.n_real.to_string(),
                num(r.rand_mean),
                num(r.rand_sd),
                opt(r.z.map(num)),
                mfactor_field(r.mfactor),
                opt(r.uniqueness),
                num(report.profile.get(r.motif)),
                report.selected.contains(&r.motif).to_string(),
            ]
        })
        .collect();
    to_csv(SIGNIFICANCE_HEADER, rows)
}

/// Graph-independent motif stability table for one size.
pub fn stability_table_csv(size: MotifSize) -> Result<String> {
    let rows = ClassTable::get(size)
        .classes_by_edges()
        .into_iter()
        .map(|m| {
            let s = stability_profile(m);
            vec![
                m.id.to_string(),
                size.to_string(),
                s.cycles.edge_count.to_string(),
                s.cycles.mutual_pairs.to_string(),
                s.cycles.has_long_cycle.to_string(),
                num(s.sss),
                s.stability_class.to_string(),
            ]
        })
        .collect();
    to_csv(STABILITY_HEADER, rows)
}

pub fn stability_csv(report: &SizeReport) -> Result<String> {
    stability_table_csv(report.size)
}

pub fn stats_csv(report: &SizeReport) -> Result<String> {
    let mut rows = Vec::new();
    for (&(size, edges), classes) in &report.grouped {
        let kw = report.kruskal.get(&edges).copied().flatten();
        for class in StabilityClass::ALL {
            let Some(scores) = classes.get(&class) else { continue };
            let mut row = vec![
                size.to_string(),
                edges.to_string(),
                class.to_string(),
                scores.len().to_string(),
            ];
            match crate::stats::box_whisker(scores) {
                Ok(b) => row.extend([b.q1, b.q3, b.mean, b.whisker_low, b.whisker_high].map(num)),
                Err(_) => row.extend(std::iter::repeat_n(String::new(), 5)),
            }
            row.push(opt(kw.map(|k| num(k.h))));
            row.push(opt(kw.map(|k| k.df)));
            row.push(opt(kw.map(|k| num(k.p))));
            rows.push(row);
        }
    }
    to_csv(STATS_HEADER, rows)
}

fn size_json(report: &SizeReport) -> Value {
    let motifs: Vec<Value> = report
        .records
        .iter()
        .zip(&report.stability)
        .enumerate()
        .map(|(i, (r, s))| {
            json!({
                "dense_index": i + 1,
                "motif_id": r.motif.id,
                "edge_count": r.edge_count,
                "n_real": r.n_real,
                "rand_mean": r.rand_mean,
                "rand_sd": r.rand_sd,
                "z": r.z,
                "mfactor": mfactor_json(r.mfactor),
                "uniqueness": r.uniqueness,
                "n_z": report.profile.get(r.motif),
                "selected": report.selected.contains(&r.motif),
                "mutual_pairs": s.cycles.mutual_pairs,
                "has_long_cycle": s.cycles.has_long_cycle,
                "sss": s.sss,
                "stability_class": s.stability_class.to_string(),
            })
        })
        .collect();

    let mut class_counts = serde_json::Map::new();
    for class in StabilityClass::ALL {
        let members: Vec<_> = report
            .records
            .iter()
            .filter(|r| class_of(report, r.motif) == class)
            .collect();
        class_counts.insert(
            class.to_string(),
            json!({
                "motifs": members.len(),
                "occurrences": members.iter().map(|r| r.n_real).sum::<u64>(),
                "selected": members.iter().filter(|r| report.selected.contains(&r.motif)).count(),
            }),
        );
    }

    let kruskal: Vec<Value> = report
        .kruskal
        .iter()
        .map(|(&edges, kw)| match kw {
            Some(k) => json!({"edge_count": edges, "H": k.h, "df": k.df, "p": k.p}),
            None => json!({"edge_count": edges, "H": null, "df": null, "p": null}),
        })
        .collect();
    let by_edges: Vec<Value> = report
        .spearman_by_edges
        .iter()
        .map(|(&edges, rho)| json!({"edge_count": edges, "rho": rho}))
        .collect();

    json!({
        "size": report.size.nodes(),
        "total_subgraphs": report.census.total(),
        "replicates": report.ensemble.replicates,
        "class_counts": class_counts,
        "selected": report.selected.iter().map(|m| m.id).collect::<Vec<_>>(),
        "spearman_sss_vs_log_occurrence": {
            "overall": report.spearman_overall,
            "by_edge_count": by_edges,
        },
        "kruskal_wallis": kruskal,
        "motifs": motifs,
    })
}

pub fn summary_json(bundle: &ReportBundle) -> Result<String> {
    let doc = json!({
        "metadata": bundle.metadata,
        "sizes": bundle.sizes.iter().map(size_json).collect::<Vec<_>>(),
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Writes the tabular outputs of one format.
///
/// CSV yields `counts_<k>.csv`, `significance_<k>.csv`, `stability_<k>.csv`
/// and `stats_<k>.csv` per size; JSON yields `summary.json`.
pub fn emit_tables(bundle: &ReportBundle, format: OutputFormat, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    match format {
        OutputFormat::Csv => {
            for r in &bundle.sizes {
                let k = r.size.nodes();
                written.push(write_file(out_dir, &format!("counts_{k}.csv"), &counts_csv(&r.census)?)?);
                written.push(write_file(out_dir, &format!("significance_{k}.csv"), &significance_csv(r)?)?);
                written.push(write_file(out_dir, &format!("stability_{k}.csv"), &stability_csv(r)?)?);
                written.push(write_file(out_dir, &format!("stats_{k}.csv"), &stats_csv(r)?)?);
            }
        }
        OutputFormat::Json => {
            written.push(write_file(out_dir, "summary.json", &summary_json(bundle)?)?);
        }
        OutputFormat::Svg => {}
    }
    Ok(written)
}
