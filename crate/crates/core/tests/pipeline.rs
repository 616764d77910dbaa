mod common;

use std::path::Path;
use std::process::Command;

use common::sparse_software_like;
use netmotifs::census::{canonical_id, ClassTable, MotifId, MotifSize};
use netmotifs::nullmodel::RandomizationConfig;
use netmotifs::report::{
    boxes_chart, profile_chart, run_pipeline, write_outputs, PipelineConfig, SIGNIFICANCE_HEADER,
    STABILITY_HEADER, STATS_HEADER,
};
use netmotifs::Error;

fn write_graph(dir: &Path, name: &str, edges: &[(u32, u32)]) -> std::path::PathBuf {
    let path = dir.join(name);
    let text: String = edges.iter().map(|(u, v)| format!("{u} {v} 1\n")).collect();
    std::fs::write(&path, text).unwrap();
    path
}

fn small_cfg(input: &Path, out: &Path, sizes: Vec<MotifSize>) -> PipelineConfig {
    PipelineConfig {
        sizes,
        randomization: RandomizationConfig {
            replicates: 20,
            swap_factor: 20,
            preserve_mutual: true,
            master_seed: 9,
        },
        ..PipelineConfig::new(input, out)
    }
}

#[test]
fn chain_of_three() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "chain.txt", &[(0, 1), (1, 2)]);
    let cfg = small_cfg(&input, &dir.path().join("out"), vec![MotifSize::Three]);
    let bundle = run_pipeline(&cfg).unwrap();
    let r = bundle.size(MotifSize::Three).unwrap();
    let counts: Vec<(u32, u64)> = r.census.counts.iter().map(|(m, &c)| (m.id, c)).collect();
    assert_eq!(counts, vec![(12, 1)]);
    assert!(r.records.iter().all(|rec| rec.rand_sd == 0.0 && rec.z.is_none()));
    assert!(r.selected.is_empty());

    write_outputs(&bundle, &cfg).unwrap();
    let sig = std::fs::read_to_string(dir.path().join("out/significance_3.csv")).unwrap();
    let row = sig.lines().find(|l| l.starts_with("12,")).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[6], "", "undefined z is an empty field");
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/summary.json")).unwrap()).unwrap();
    let motifs = summary["sizes"][0]["motifs"].as_array().unwrap();
    assert_eq!(motifs.len(), 13);
    assert!(motifs.iter().all(|m| m["z"].is_null()));
}

#[test]
fn star_in_both_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "star.txt", &[(0, 1), (0, 2), (0, 3)]);
    let cfg = small_cfg(&input, &dir.path().join("out"), vec![MotifSize::Four, MotifSize::Three]);
    let bundle = run_pipeline(&cfg).unwrap();
    let three: Vec<(u32, u64)> = bundle.size(MotifSize::Three).unwrap().census.counts.iter().map(|(m, &c)| (m.id, c)).collect();
    let four: Vec<(u32, u64)> = bundle.size(MotifSize::Four).unwrap().census.counts.iter().map(|(m, &c)| (m.id, c)).collect();
    assert_eq!(three, vec![(6, 3)]);
    assert_eq!(four, vec![(14, 1)]);
    assert_eq!(bundle.sizes[0].size, MotifSize::Three);
}

#[test]
fn outputs_follow_schema() {
    let dir = tempfile::tempdir().unwrap();
    let g = sparse_software_like(120, 170, 2);
    let input = write_graph(dir.path(), "g.txt", &g.sorted_edges());
    let out = dir.path().join("out");
    let cfg = small_cfg(&input, &out, vec![MotifSize::Three, MotifSize::Four]);
    let bundle = run_pipeline(&cfg).unwrap();
    write_outputs(&bundle, &cfg).unwrap();

    for k in [3usize, 4] {
        let size = MotifSize::from_nodes(k).unwrap();
        let classes = ClassTable::get(size).len();
        let sig = std::fs::read_to_string(out.join(format!("significance_{k}.csv"))).unwrap();
        let mut lines = sig.lines();
        assert_eq!(lines.next().unwrap(), SIGNIFICANCE_HEADER);
        let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        assert_eq!(rows.len(), classes);
        let keys: Vec<(u32, u32)> = rows.iter().map(|r| (r[2].parse().unwrap(), r[0].parse().unwrap())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted, "rows ordered by (edge_count, id)");
        for (edges, id) in keys {
            let m = MotifId::new(size, id).unwrap();
            assert_eq!(m.edge_count(), edges);
            let adj = m.adjacency();
            let rows: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| adj.get(i, j)).collect()).collect();
            assert_eq!(canonical_id(&rows).unwrap(), m);
        }

        let st = std::fs::read_to_string(out.join(format!("stability_{k}.csv"))).unwrap();
        assert_eq!(st.lines().next().unwrap(), STABILITY_HEADER);
        assert_eq!(st.lines().count(), classes + 1);
        let stats = std::fs::read_to_string(out.join(format!("stats_{k}.csv"))).unwrap();
        assert_eq!(stats.lines().next().unwrap(), STATS_HEADER);
        let counts = std::fs::read_to_string(out.join(format!("counts_{k}.csv"))).unwrap();
        assert_eq!(counts.lines().count(), classes + 1);

        let report = bundle.size(size).unwrap();
        let bars = profile_chart(report).matches(r##"fill="#3182ce""##).count();
        assert_eq!(bars, classes);
        assert!(boxes_chart(report).contains("p = "));
        for name in ["profile", "occurrence", "boxes"] {
            let svg = std::fs::read_to_string(out.join(format!("{name}_{k}.svg"))).unwrap();
            assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        }
    }

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["metadata"]["nodes"], 120);
    assert_eq!(summary["metadata"]["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(summary["sizes"][1]["motifs"][0]["dense_index"], 1);
    assert_eq!(summary["sizes"][1]["motifs"][0]["motif_id"], 14);
}

#[test]
fn pipeline_is_deterministic_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let g = sparse_software_like(90, 130, 6);
    let input = write_graph(dir.path(), "g.txt", &g.sorted_edges());
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("out{run}"));
        let cfg = small_cfg(&input, &out, vec![MotifSize::Three, MotifSize::Four]);
        write_outputs(&run_pipeline(&cfg).unwrap(), &cfg).unwrap();
        outputs.push(out);
    }
    for name in ["significance_3.csv", "significance_4.csv", "stats_4.csv", "summary.json", "profile_4.svg"] {
        assert_eq!(
            std::fs::read(outputs[0].join(name)).unwrap(),
            std::fs::read(outputs[1].join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn errors_are_stage_tagged() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.txt");
    std::fs::write(&input, "# nothing\n7 7\n").unwrap();
    let cfg = small_cfg(&input, dir.path(), vec![MotifSize::Three]);
    match run_pipeline(&cfg) {
        Err(Error::Stage { stage, source }) => {
            assert_eq!(stage, "graphio");
            assert!(matches!(*source, Error::EmptyGraph));
        }
        other => panic!("unexpected {other:?}"),
    }
    let input = write_graph(dir.path(), "tiny.txt", &[(0, 1), (1, 2)]);
    let cfg = small_cfg(&input, dir.path(), vec![MotifSize::Four]);
    let err = run_pipeline(&cfg).unwrap_err();
    assert!(matches!(err, Error::Stage { stage: "census", .. }));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_netmotifs"))
}

#[test]
fn cli_subcommands_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "g.txt", &[(0, 1), (0, 2), (0, 3), (1, 2)]);

    let out = dir.path().join("counts.csv");
    let st = bin()
        .args(["census", "--input"])
        .arg(&input)
        .args(["--size", "3", "--retain-instances", "--format", "csv", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("motif_id,size,edge_count,n_real,uniqueness\n"));
    assert_eq!(text.lines().count(), 14);

    let out = dir.path().join("counts.json");
    let st = bin()
        .args(["census", "--input"])
        .arg(&input)
        .args(["--size", "4", "--retain-instances", "--format", "json", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["motifs"].as_array().unwrap().len(), 199);
    assert_eq!(v["total"], 1);

    let out = dir.path().join("stab.csv");
    assert!(bin().args(["stability", "--size", "3", "--out"]).arg(&out).status().unwrap().success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), STABILITY_HEADER);
    assert!(text.contains("78,3,4,2,false,0.25,III"));

    assert_eq!(bin().args(["stability", "--size", "5", "--out", "x"]).status().unwrap().code(), Some(1));
    assert_eq!(bin().arg("frobnicate").status().unwrap().code(), Some(1));
    let missing = dir.path().join("missing.txt");
    let code = bin()
        .args(["census", "--size", "3", "--out", "x", "--input"])
        .arg(&missing)
        .status()
        .unwrap()
        .code();
    assert_eq!(code, Some(2));
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2\nfoo bar\n").unwrap();
    let output = bin()
        .args(["census", "--size", "3", "--out", "x", "--input"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 2"));
}
