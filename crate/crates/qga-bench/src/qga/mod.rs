//! The quantum genetic algorithm as a composition of CPTP channels.
//!
//! One generation applies, in order: the eigenbasis sorting network,
//! reset of the discarded half, pseudo-cloning of the surviving half into
//! the blanks, a crossover swap between cloned registers, and (optionally)
//! per-qubit Pauli mutation. Four variants arise from the choice of
//! cloning machine (BCQO or UQCM) and whether mutation runs.

mod cloning;
mod comparator;
mod engine;
mod mutation;
mod population;

pub use cloning::{
    bcqo_pair_unitary, clone_bcqo, clone_uqcm, uqcm_pair_channel, CloningBasis, UqcmGranularity,
};
pub use comparator::{
    comparator_channel, comparator_pair_channel, comparator_pair_kraus, sort_population,
    sort_population_with, sorting_network,
};
pub use engine::{
    crossover_swap, population_best_metrics, qga_generation, reset_discarded, run_qga,
    run_qga_with, Cloner, MetricSeries, MutationMode, QgaConfig,
};
pub use mutation::{mutate_all_qubits_channel, mutate_all_qubits_sampled, single_qubit_pauli_channel};
pub use population::QuantumPopulation;
