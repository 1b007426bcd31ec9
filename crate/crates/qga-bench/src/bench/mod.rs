//! Benchmark harness: experiment fan-out over (algorithm, Hamiltonian,
//! seed), the summary statistics of the comparison protocol, win-rate
//! curves and Wilcoxon significance tests, and artifact serialization.

mod artifacts;
mod experiment;
mod record;
mod stats;
mod wilcoxon;

pub use artifacts::{records_to_csv, wilcoxon_results_to_json, win_rates_to_csv, write_artifacts, Manifest};
pub use experiment::{
    best_individual_metrics, run_experiment, Algorithm, ExperimentOutput, ExperimentSpec,
    GaParams, HamiltonianSource, NamedHamiltonian, PopulationSnapshot, WinRateReference,
};
pub use record::RunRecord;
pub use stats::{
    mean, population_std, quantile, win_rate_series, AlgorithmSummary, HamiltonianAggregate,
    SummaryStats, WinRateSeries,
};
pub use wilcoxon::{wilcoxon_signed_rank, WilcoxonResult};
