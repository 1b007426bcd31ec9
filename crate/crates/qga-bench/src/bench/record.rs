//! Per-run record of best-individual metrics.

use crate::qga::MetricSeries;
use serde::{Deserialize, Serialize};

/// Best-individual energy and fidelity per generation for one
/// (algorithm, Hamiltonian, replicate) run. Index 0 is the initial
/// population, so the arrays hold `generations + 1` entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub hamiltonian_id: String,
    /// Replicate index (the per-run stream is derived from the master
    /// seed, the algorithm, the Hamiltonian id and this index).
    pub seed: u64,
    pub best_energy: Vec<f64>,
    pub best_fidelity: Vec<f64>,
}

impl RunRecord {
    pub fn new(algorithm: &str, hamiltonian_id: &str, seed: u64, series: MetricSeries) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            hamiltonian_id: hamiltonian_id.to_string(),
            seed,
            best_energy: series.best_energy,
            best_fidelity: series.best_fidelity,
        }
    }

    pub fn generations(&self) -> usize {
        self.best_energy.len().saturating_sub(1)
    }

    pub fn final_energy(&self) -> f64 {
        *self.best_energy.last().expect("non-empty series")
    }

    pub fn final_fidelity(&self) -> f64 {
        *self.best_fidelity.last().expect("non-empty series")
    }
}
