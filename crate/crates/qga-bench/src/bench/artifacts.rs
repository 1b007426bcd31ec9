//! Artifact serialization: run records as CSV, summaries and win rates as
//! JSON/CSV, and the reproducibility manifest.

use crate::bench::experiment::{ExperimentOutput, PopulationSnapshot};
use crate::bench::stats::WinRateSeries;
use crate::bench::wilcoxon::WilcoxonResult;
use crate::bench::RunRecord;
use crate::error::Result;
use crate::quantum::DensityMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fs;
use std::path::Path;

pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Render run records as CSV (stable column order, shortest round-trip
/// float formatting, so identical runs produce identical bytes).
pub fn records_to_csv(records: &[RunRecord]) -> String {
    let mut out = String::from("algorithm,hamiltonian_id,seed,generation,best_energy,best_fidelity\n");
    for rec in records {
        for (g, (e, f)) in rec.best_energy.iter().zip(&rec.best_fidelity).enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                rec.algorithm, rec.hamiltonian_id, rec.seed, g, e, f
            ));
        }
    }
    out
}

/// Parse records back from the CSV produced by [`records_to_csv`].
pub fn records_from_csv(csv: &str) -> Result<Vec<RunRecord>> {
    let mut records: Vec<RunRecord> = Vec::new();
    for (lineno, line) in csv.lines().enumerate() {
        if lineno == 0 || line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(crate::error::Error::Config(format!(
                "CSV line {} has {} fields",
                lineno + 1,
                fields.len()
            )));
        }
        let parse_err = |what: &str| {
            crate::error::Error::Config(format!("CSV line {}: bad {what}", lineno + 1))
        };
        let seed: u64 = fields[2].parse().map_err(|_| parse_err("seed"))?;
        let generation: usize = fields[3].parse().map_err(|_| parse_err("generation"))?;
        let energy: f64 = fields[4].parse().map_err(|_| parse_err("energy"))?;
        let fidelity: f64 = fields[5].parse().map_err(|_| parse_err("fidelity"))?;
        let matches_last = records.last().map(|r: &RunRecord| {
            r.algorithm == fields[0] && r.hamiltonian_id == fields[1] && r.seed == seed
        });
        if matches_last != Some(true) {
            records.push(RunRecord {
                algorithm: fields[0].to_string(),
                hamiltonian_id: fields[1].to_string(),
                seed,
                best_energy: Vec::new(),
                best_fidelity: Vec::new(),
            });
        }
        let rec = records.last_mut().expect("just pushed");
        if rec.best_energy.len() != generation {
            return Err(parse_err("generation order"));
        }
        rec.best_energy.push(energy);
        rec.best_fidelity.push(fidelity);
    }
    Ok(records)
}

/// Win-rate curves as CSV: one row per (hamiltonian or "mean", algorithm,
/// generation).
pub fn win_rates_to_csv(series: &[WinRateSeries]) -> String {
    let mut out = String::from("scope,reference,against,generation,win_rate\n");
    for s in series {
        for (ham, values) in &s.per_hamiltonian {
            for (g, v) in values.iter().enumerate() {
                out.push_str(&format!("{},{},{},{},{}\n", ham, s.reference, s.against, g, v));
            }
        }
        for (g, v) in s.mean.iter().enumerate() {
            out.push_str(&format!("mean,{},{},{},{}\n", s.reference, s.against, g, v));
        }
    }
    out
}

pub fn wilcoxon_results_to_json(tests: &[(String, String, WilcoxonResult)]) -> Value {
    Value::Array(
        tests
            .iter()
            .map(|(a, b, r)| {
                json!({
                    "a": a,
                    "b": b,
                    "statistic": r.statistic,
                    "p_value": r.p_value,
                    "n_used": r.n_used,
                    "exact": r.exact,
                })
            })
            .collect(),
    )
}

/// Density matrix in the shared complex-entry JSON format.
pub fn density_matrix_json(state: &DensityMatrix) -> Value {
    let dim = state.dim();
    let rows: Vec<Value> = (0..dim)
        .map(|r| {
            Value::Array(
                (0..dim)
                    .map(|c| {
                        let z = state.matrix()[(r, c)];
                        json!([z.re, z.im])
                    })
                    .collect(),
            )
        })
        .collect();
    json!({ "schema_version": 1, "dim": dim, "matrix": rows })
}

/// Reproducibility manifest: the resolved spec plus provenance. The
/// manifest alone suffices to rerun the experiment exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub generated_by: String,
    pub preset: String,
    pub master_seed: u64,
    pub csv_schema_version: u32,
    pub spec: crate::bench::ExperimentSpec,
    pub wall_time_seconds: f64,
    pub artifacts: Vec<String>,
}

/// Write the complete artifact set into `dir`: `runs.csv`,
/// `summary.json`, `manifest.json`, plus `win_rate.csv` when curves were
/// produced and one JSON per captured snapshot. Everything is rendered
/// before the first byte is written, so a failure cannot leave a partial
/// artifact set behind.
pub fn write_artifacts(
    dir: &Path,
    output: &ExperimentOutput,
    snapshots: &[PopulationSnapshot],
    preset: &str,
    wall_time_seconds: f64,
) -> Result<Vec<String>> {
    let csv = records_to_csv(&output.records);
    let mut summary_value = serde_json::to_value(&output.summary)?;
    if !output.wilcoxon.is_empty() {
        summary_value["wilcoxon"] = wilcoxon_results_to_json(&output.wilcoxon);
    }
    let summary = serde_json::to_string_pretty(&summary_value)?;
    let win_rate_csv = if output.win_rates.is_empty() {
        None
    } else {
        Some(win_rates_to_csv(&output.win_rates))
    };
    let snapshot_files: Vec<(String, String)> = snapshots
        .iter()
        .map(|s| {
            let name = format!(
                "state_{}_{}_{:04}_{:04}.json",
                s.algorithm, s.hamiltonian_id, s.seed, s.generation
            );
            let body = serde_json::to_string(&s.state_json).expect("snapshot JSON");
            (name, body)
        })
        .collect();

    let mut artifacts = vec!["runs.csv".to_string(), "summary.json".to_string()];
    if win_rate_csv.is_some() {
        artifacts.push("win_rate.csv".to_string());
    }
    artifacts.extend(snapshot_files.iter().map(|(n, _)| n.clone()));
    artifacts.push("manifest.json".to_string());

    let manifest = Manifest {
        schema_version: 1,
        generated_by: format!("qga-bench {}", env!("CARGO_PKG_VERSION")),
        preset: preset.to_string(),
        master_seed: output.spec.master_seed,
        csv_schema_version: CSV_SCHEMA_VERSION,
        spec: output.spec.clone(),
        wall_time_seconds,
        artifacts: artifacts.clone(),
    };
    let manifest_json = serde_json::to_string_pretty(&manifest)?;

    fs::create_dir_all(dir)?;
    fs::write(dir.join("runs.csv"), csv)?;
    fs::write(dir.join("summary.json"), summary)?;
    if let Some(csv) = win_rate_csv {
        fs::write(dir.join("win_rate.csv"), csv)?;
    }
    for (name, body) in &snapshot_files {
        fs::write(dir.join(name), body)?;
    }
    fs::write(dir.join("manifest.json"), manifest_json)?;
    Ok(artifacts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_records() -> Vec<RunRecord> {
        vec![
            RunRecord {
                algorithm: "QGAunm".into(),
                hamiltonian_id: "HC".into(),
                seed: 0,
                best_energy: vec![1.5, 0.25],
                best_fidelity: vec![0.25, 0.9],
            },
            RunRecord {
                algorithm: "CGAai".into(),
                hamiltonian_id: "HC".into(),
                seed: 1,
                best_energy: vec![1.0, 0.014999999999999999],
                best_fidelity: vec![0.5, 1.0],
            },
        ]
    }

    #[test]
    fn csv_roundtrip_preserves_floats_exactly() {
        let records = sample_records();
        let csv = records_to_csv(&records);
        let back = records_from_csv(&csv).unwrap();
        assert_eq!(records, back);
    }

    #[test]
    fn csv_has_expected_header_and_rows() {
        let csv = records_to_csv(&sample_records());
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "algorithm,hamiltonian_id,seed,generation,best_energy,best_fidelity"
        );
        assert_eq!(lines.next().unwrap(), "QGAunm,HC,0,0,1.5,0.25");
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = records_to_csv(&sample_records());
        let b = records_to_csv(&sample_records());
        assert_eq!(a, b);
    }
}
