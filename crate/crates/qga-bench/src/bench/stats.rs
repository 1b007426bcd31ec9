//! Summary statistics: quantiles, per-algorithm aggregates, win rates.

use crate::bench::record::RunRecord;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation (divides by n, matching how the
/// benchmark tables summarize spreads).
pub fn population_std(values: &[f64]) -> f64 {
    let m = mean(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64).sqrt()
}

/// Linear-interpolation quantile with inclusive endpoints: level 0 is the
/// minimum, level 1 the maximum, interior levels interpolate between the
/// two closest order statistics.
pub fn quantile(values: &[f64], level: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("quantile values"));
    }
    if !(0.0..=1.0).contains(&level) {
        return Err(Error::InvalidArgument(format!(
            "quantile level {level} outside [0, 1]"
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = (sorted.len() - 1) as f64 * level;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    Ok(if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    })
}

/// Aggregates for one (algorithm, Hamiltonian) cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HamiltonianAggregate {
    pub hamiltonian_id: String,
    pub n_runs: usize,
    /// Mean / spread of the final values across replicates.
    pub mean_fidelity: f64,
    pub std_fidelity: f64,
    pub mean_energy: f64,
    pub std_energy: f64,
    /// Protocol aggregate: mean for quantum algorithms, 0.90 quantile of
    /// fidelity and 0.10 quantile of energy for classical ones.
    pub agg_fidelity: f64,
    pub agg_energy: f64,
}

/// Per-algorithm summary across Hamiltonians.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: String,
    /// "mean" (quantum) or "q90_fidelity/q10_energy" (classical).
    pub aggregation: String,
    pub per_hamiltonian: Vec<HamiltonianAggregate>,
    /// Mean and spread of the per-Hamiltonian protocol aggregates.
    pub mean_agg_fidelity: f64,
    pub std_agg_fidelity: f64,
    pub mean_agg_energy: f64,
    pub std_agg_energy: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryStats {
    pub schema_version: u32,
    pub experiment: String,
    pub master_seed: u64,
    pub algorithms: Vec<AlgorithmSummary>,
}

impl SummaryStats {
    pub fn algorithm(&self, label: &str) -> Option<&AlgorithmSummary> {
        self.algorithms.iter().find(|a| a.algorithm == label)
    }
}

impl AlgorithmSummary {
    pub fn hamiltonian(&self, id: &str) -> Option<&HamiltonianAggregate> {
        self.per_hamiltonian.iter().find(|h| h.hamiltonian_id == id)
    }
}

/// Build the per-algorithm summaries from raw records. `is_quantum`
/// decides the protocol aggregation per algorithm label.
pub(crate) fn summarize(
    experiment: &str,
    master_seed: u64,
    records: &[RunRecord],
    is_quantum: impl Fn(&str) -> bool,
) -> Result<SummaryStats> {
    // Group by algorithm, then Hamiltonian, preserving first-seen order.
    let mut algo_order: Vec<String> = Vec::new();
    let mut groups: BTreeMap<String, BTreeMap<String, Vec<&RunRecord>>> = BTreeMap::new();
    let mut ham_order: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for rec in records {
        if !groups.contains_key(&rec.algorithm) {
            algo_order.push(rec.algorithm.clone());
        }
        let by_ham = groups.entry(rec.algorithm.clone()).or_default();
        if !by_ham.contains_key(&rec.hamiltonian_id) {
            ham_order
                .entry(rec.algorithm.clone())
                .or_default()
                .push(rec.hamiltonian_id.clone());
        }
        by_ham.entry(rec.hamiltonian_id.clone()).or_default().push(rec);
    }

    let mut algorithms = Vec::new();
    for algo in &algo_order {
        let quantum = is_quantum(algo);
        let mut per_hamiltonian = Vec::new();
        for ham in &ham_order[algo] {
            let runs = &groups[algo][ham];
            let fids: Vec<f64> = runs.iter().map(|r| r.final_fidelity()).collect();
            let ens: Vec<f64> = runs.iter().map(|r| r.final_energy()).collect();
            let (agg_fidelity, agg_energy) = if quantum {
                (mean(&fids), mean(&ens))
            } else {
                (quantile(&fids, 0.9)?, quantile(&ens, 0.1)?)
            };
            per_hamiltonian.push(HamiltonianAggregate {
                hamiltonian_id: ham.clone(),
                n_runs: runs.len(),
                mean_fidelity: mean(&fids),
                std_fidelity: population_std(&fids),
                mean_energy: mean(&ens),
                std_energy: population_std(&ens),
                agg_fidelity,
                agg_energy,
            });
        }
        let agg_f: Vec<f64> = per_hamiltonian.iter().map(|h| h.agg_fidelity).collect();
        let agg_e: Vec<f64> = per_hamiltonian.iter().map(|h| h.agg_energy).collect();
        algorithms.push(AlgorithmSummary {
            algorithm: algo.clone(),
            aggregation: if quantum {
                "mean".to_string()
            } else {
                "q90_fidelity/q10_energy".to_string()
            },
            mean_agg_fidelity: mean(&agg_f),
            std_agg_fidelity: population_std(&agg_f),
            mean_agg_energy: mean(&agg_e),
            std_agg_energy: population_std(&agg_e),
            per_hamiltonian,
        });
    }
    Ok(SummaryStats {
        schema_version: 1,
        experiment: experiment.to_string(),
        master_seed,
        algorithms,
    })
}

/// Win-rate series of a reference algorithm against one classical
/// algorithm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WinRateSeries {
    pub reference: String,
    pub against: String,
    /// Per Hamiltonian: fraction of classical replicates whose fidelity is
    /// lower than or equal to the reference value, per generation.
    pub per_hamiltonian: Vec<(String, Vec<f64>)>,
    /// Average of the per-Hamiltonian series.
    pub mean: Vec<f64>,
}

/// Compute the per-generation win rate of the reference (quantum) records
/// against classical records. The reference value at each generation is
/// the mean of the reference replicates (ties count as a win for the
/// reference).
pub fn win_rate_series(
    reference_records: &[&RunRecord],
    classical_records: &[&RunRecord],
    reference_label: &str,
    against_label: &str,
) -> Result<WinRateSeries> {
    if reference_records.is_empty() || classical_records.is_empty() {
        return Err(Error::EmptyInput("win-rate records"));
    }
    let generations = reference_records[0].best_fidelity.len();
    for rec in reference_records.iter().chain(classical_records) {
        if rec.best_fidelity.len() != generations {
            return Err(Error::DimensionMismatch {
                expected: generations,
                found: rec.best_fidelity.len(),
            });
        }
    }

    let mut hams: Vec<String> = Vec::new();
    for rec in reference_records {
        if !hams.contains(&rec.hamiltonian_id) {
            hams.push(rec.hamiltonian_id.clone());
        }
    }

    let mut per_hamiltonian = Vec::new();
    for ham in &hams {
        let refs: Vec<&&RunRecord> = reference_records
            .iter()
            .filter(|r| &r.hamiltonian_id == ham)
            .collect();
        let classicals: Vec<&&RunRecord> = classical_records
            .iter()
            .filter(|r| &r.hamiltonian_id == ham)
            .collect();
        if classicals.is_empty() {
            continue;
        }
        let series: Vec<f64> = (0..generations)
            .map(|g| {
                let reference: f64 =
                    refs.iter().map(|r| r.best_fidelity[g]).sum::<f64>() / refs.len() as f64;
                let wins = classicals
                    .iter()
                    .filter(|r| r.best_fidelity[g] <= reference)
                    .count();
                wins as f64 / classicals.len() as f64
            })
            .collect();
        per_hamiltonian.push((ham.clone(), series));
    }
    if per_hamiltonian.is_empty() {
        return Err(Error::EmptyInput("win-rate Hamiltonian overlap"));
    }
    let mean_series: Vec<f64> = (0..generations)
        .map(|g| {
            per_hamiltonian.iter().map(|(_, s)| s[g]).sum::<f64>() / per_hamiltonian.len() as f64
        })
        .collect();
    Ok(WinRateSeries {
        reference: reference_label.to_string(),
        against: against_label.to_string(),
        per_hamiltonian,
        mean: mean_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(alg: &str, ham: &str, seed: u64, fids: &[f64]) -> RunRecord {
        RunRecord {
            algorithm: alg.into(),
            hamiltonian_id: ham.into(),
            seed,
            best_energy: fids.iter().map(|f| 1.0 - f).collect(),
            best_fidelity: fids.to_vec(),
        }
    }

    #[test]
    fn quantile_median_of_five() {
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.5).unwrap(), 3.0);
    }

    #[test]
    fn quantile_constant_list() {
        for level in [0.1, 0.5, 0.9] {
            assert_eq!(quantile(&[2.5, 2.5, 2.5], level).unwrap(), 2.5);
        }
    }

    #[test]
    fn quantile_interpolates_between_ranks() {
        // {0, 1} at level 0.9: h = 0.9, so 0 + 0.9 * (1 - 0) = 0.9.
        assert!((quantile(&[0.0, 1.0], 0.9).unwrap() - 0.9).abs() < 1e-12);
    }

    #[test]
    fn quantile_rejects_empty_and_bad_level() {
        assert!(quantile(&[], 0.5).is_err());
        assert!(quantile(&[1.0], 1.5).is_err());
    }

    #[test]
    fn win_rate_always_wins_and_ties() {
        let qga = vec![
            rec("QGAunm", "h0", 0, &[0.5, 0.8]),
            rec("QGAunm", "h0", 1, &[0.5, 0.8]),
        ];
        let zero = vec![
            rec("CGAai", "h0", 0, &[0.0, 0.0]),
            rec("CGAai", "h0", 1, &[0.0, 0.0]),
        ];
        let refs: Vec<&RunRecord> = qga.iter().collect();
        let couldnt: Vec<&RunRecord> = zero.iter().collect();
        let w = win_rate_series(&refs, &couldnt, "QGAunm", "CGAai").unwrap();
        assert_eq!(w.mean, vec![1.0, 1.0]);

        // Classical identical to the reference: ties count as wins.
        let tied = vec![rec("CGAai", "h0", 0, &[0.5, 0.8])];
        let tied_refs: Vec<&RunRecord> = tied.iter().collect();
        let w = win_rate_series(&refs, &tied_refs, "QGAunm", "CGAai").unwrap();
        assert_eq!(w.mean, vec![1.0, 1.0]);
    }

    #[test]
    fn win_rate_rejects_mismatched_lengths() {
        let a = vec![rec("QGAunm", "h0", 0, &[0.5, 0.8])];
        let b = vec![rec("CGAai", "h0", 0, &[0.5])];
        let ar: Vec<&RunRecord> = a.iter().collect();
        let br: Vec<&RunRecord> = b.iter().collect();
        assert!(win_rate_series(&ar, &br, "QGAunm", "CGAai").is_err());
    }

    #[test]
    fn summarize_applies_class_conventions() {
        let records = vec![
            rec("QGAunm", "h0", 0, &[0.2, 0.8]),
            rec("QGAunm", "h0", 1, &[0.2, 0.6]),
            rec("CGAai", "h0", 0, &[0.2, 0.0]),
            rec("CGAai", "h0", 1, &[0.2, 1.0]),
        ];
        let s = summarize("test", 0, &records, |a| a.starts_with("QGA")).unwrap();
        let qga = s.algorithm("QGAunm").unwrap();
        assert!((qga.per_hamiltonian[0].agg_fidelity - 0.7).abs() < 1e-12);
        let cga = s.algorithm("CGAai").unwrap();
        // q90 of {0, 1} is 0.9; q10 of energies {1, 0} is 0.1.
        assert!((cga.per_hamiltonian[0].agg_fidelity - 0.9).abs() < 1e-12);
        assert!((cga.per_hamiltonian[0].agg_energy - 0.1).abs() < 1e-12);
    }

    #[test]
    fn aggregation_is_permutation_invariant_in_seed_order() {
        let a = vec![
            rec("CGAai", "h0", 0, &[0.2, 0.1]),
            rec("CGAai", "h0", 1, &[0.2, 0.9]),
            rec("CGAai", "h0", 2, &[0.2, 0.5]),
        ];
        let mut b = a.clone();
        b.reverse();
        let sa = summarize("t", 0, &a, |_| false).unwrap();
        let sb = summarize("t", 0, &b, |_| false).unwrap();
        assert_eq!(
            sa.algorithm("CGAai").unwrap().per_hamiltonian[0].agg_fidelity,
            sb.algorithm("CGAai").unwrap().per_hamiltonian[0].agg_fidelity
        );
    }
}
