//! Benchmark harness: runs a sweep of mining configurations over datasets
//! and emits one CSV row per run, with pattern-count reduction percentages
//! computed against the matching none-mode run. Timing and memory columns
//! are approximate by nature and vary between invocations; pattern counts do
//! not.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::Context;
use serde::Deserialize;

use grapgt::{mine, MiningConfig, Semantics, ThresholdMode};

#[derive(Debug, Deserialize)]
struct BenchConfig {
    #[serde(default)]
    datasets: Vec<DatasetEntry>,
    #[serde(default = "default_semantics")]
    semantics: Vec<String>,
    #[serde(default = "default_modes")]
    modes: Vec<String>,
    #[serde(default)]
    min_supps: Vec<f64>,
    #[serde(default = "default_k1")]
    k1: f64,
    #[serde(default)]
    k2: f64,
    #[serde(default)]
    max_len: Option<usize>,
    #[serde(default = "default_workers")]
    workers: usize,
}

#[derive(Debug, Deserialize)]
struct DatasetEntry {
    id: String,
    path: String,
    #[serde(default)]
    temporal: bool,
}

fn default_semantics() -> Vec<String> {
    vec!["graph".into()]
}

fn default_modes() -> Vec<String> {
    vec!["none".into()]
}

fn default_k1() -> f64 {
    1.0
}

fn default_workers() -> usize {
    1
}

const HEADER: &str =
    "dataset,semantics,mode,min_supp,patterns,wall_ms,peak_mem_bytes_approx,reduction_vs_none_pct,error\n";

pub fn run(config_path: &Path) -> anyhow::Result<String> {
    let raw = std::fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let config: BenchConfig =
        serde_json::from_str(&raw).with_context(|| format!("parsing {}", config_path.display()))?;
    let base_dir = config_path.parent().unwrap_or(Path::new("."));

    struct Row {
        dataset: String,
        semantics: String,
        mode: String,
        min_supp: f64,
        patterns: Option<usize>,
        wall_ms: f64,
        peak_mem: Option<u64>,
        error: String,
    }

    let mut rows: Vec<Row> = Vec::new();
    for ds in &config.datasets {
        let path = base_dir.join(&ds.path);
        for semantics_name in &config.semantics {
            for &min_supp in &config.min_supps {
                for mode_name in &config.modes {
                    let outcome = (|| -> anyhow::Result<(usize, f64, Option<u64>)> {
                        let d = crate::dataset_from_path(&path, ds.temporal)?;
                        let mut cfg =
                            MiningConfig::new(min_supp, Semantics::from_str(semantics_name)?);
                        cfg.threshold_mode = ThresholdMode::from_str(mode_name)?;
                        cfg.k1 = config.k1;
                        cfg.k2 = config.k2;
                        cfg.max_len = config.max_len;
                        cfg.workers = config.workers;
                        let result = mine(&d, &cfg)?;
                        Ok((
                            result.patterns.len(),
                            result.stats.wall_time_ms,
                            result.stats.peak_memory_bytes,
                        ))
                    })();
                    let row = match outcome {
                        Ok((count, wall, mem)) => Row {
                            dataset: ds.id.clone(),
                            semantics: semantics_name.clone(),
                            mode: mode_name.clone(),
                            min_supp,
                            patterns: Some(count),
                            wall_ms: wall,
                            peak_mem: mem,
                            error: String::new(),
                        },
                        Err(err) => Row {
                            dataset: ds.id.clone(),
                            semantics: semantics_name.clone(),
                            mode: mode_name.clone(),
                            min_supp,
                            patterns: None,
                            wall_ms: 0.0,
                            peak_mem: None,
                            error: format!("{err:#}").replace(',', ";"),
                        },
                    };
                    rows.push(row);
                }
            }
        }
    }

    // pattern counts of the none-mode runs, keyed per (dataset, semantics, min_supp)
    let mut none_counts: HashMap<(String, String, String), usize> = HashMap::new();
    for row in &rows {
        if row.mode == "none" {
            if let Some(count) = row.patterns {
                none_counts.insert(
                    (
                        row.dataset.clone(),
                        row.semantics.clone(),
                        format!("{}", row.min_supp),
                    ),
                    count,
                );
            }
        }
    }

    let mut out = String::from(HEADER);
    for row in &rows {
        let reduction = if row.mode != "none" {
            match (
                row.patterns,
                none_counts.get(&(
                    row.dataset.clone(),
                    row.semantics.clone(),
                    format!("{}", row.min_supp),
                )),
            ) {
                (Some(count), Some(&none)) if none > 0 => {
                    format!("{:.2}", 100.0 * (none as f64 - count as f64) / none as f64)
                }
                _ => String::new(),
            }
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{},{},{},{},{},{:.1},{},{},{}\n",
            row.dataset,
            row.semantics,
            row.mode,
            row.min_supp,
            row.patterns.map(|c| c.to_string()).unwrap_or_default(),
            row.wall_ms,
            row.peak_mem.map(|m| m.to_string()).unwrap_or_default(),
            reduction,
            row.error,
        ));
    }
    Ok(out)
}
