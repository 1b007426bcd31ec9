//! Exact density-matrix simulation of quantum genetic algorithms and a
//! benchmark harness comparing them against classical genetic algorithms.
//!
//! The population of a quantum genetic algorithm (QGA) lives in `n` qubit
//! registers of `c` qubits each and evolves under completely positive
//! trace-preserving channels: an eigenbasis sorting network, register
//! reset, approximate cloning (biomimetic or universal), a crossover swap,
//! and per-qubit Pauli mutation. Classical baselines evolve bit strings
//! (BGA) or complex unit vectors (CGA variants) under matching selection,
//! crossover and mutation rules. The [`bench`] module fans experiments out
//! over (algorithm, Hamiltonian, seed) triples and computes the summary
//! statistics, win-rate curves and Wilcoxon significance tests used by the
//! bundled experiment presets.
//!
//! See the crate examples for runnable tours of each subsystem:
//!
//! ```bash
//! cargo run --release --example qga_single_run
//! cargo run --release --example cloning_machines
//! cargo run --release --example ensemble_benchmark
//! ```

pub mod bench;
pub mod classical;
pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod presets;
pub mod qga;
pub mod quantum;
pub mod rng;
pub mod tolerance;

pub use error::{Error, Result};
pub use hamiltonian::ProblemHamiltonian;
pub use linalg::ComplexMatrix;
pub use quantum::{DensityMatrix, KrausChannel, PureState, RegisterLayout};
pub use rng::DetRng;
