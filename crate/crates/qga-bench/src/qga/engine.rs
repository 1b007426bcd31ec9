//! Generation loop of the quantum genetic algorithm.

use crate::error::{Error, Result};
use crate::hamiltonian::ProblemHamiltonian;
use crate::linalg::ComplexMatrix;
use crate::qga::cloning::{clone_bcqo, clone_uqcm, CloningBasis, UqcmGranularity};
use crate::qga::comparator::{sort_population_with, sorting_network};
use crate::qga::mutation::{mutate_all_qubits_channel, mutate_all_qubits_sampled};
use crate::qga::QuantumPopulation;
use crate::quantum::gates::group_swap;
use crate::quantum::{apply_channel_on, DensityMatrix, KrausChannel, PureState, RegisterLayout};
use crate::rng::DetRng;
use serde::{Deserialize, Serialize};

/// Which pseudo-cloning machine breeds the new half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cloner {
    Bcqo,
    Uqcm,
}

/// How mutation randomness is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationMode {
    /// Draw a concrete Pauli pattern each generation (default; this is
    /// what the per-run best-individual statistics assume).
    SampledGates,
    /// Apply the exact mixing channel instead of sampling.
    ExactChannel,
}

/// Full configuration of one QGA variant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QgaConfig {
    pub layout: RegisterLayout,
    pub cloner: Cloner,
    pub mutation_enabled: bool,
    /// Per-qubit mutation probability.
    pub p_m: f64,
    pub generations: usize,
    pub uqcm_granularity: UqcmGranularity,
    pub cloning_basis: CloningBasis,
    pub mutation_mode: MutationMode,
    /// Comparator sequence override; `None` selects the standard network
    /// for the layout.
    pub network: Option<Vec<(usize, usize)>>,
}

impl QgaConfig {
    pub fn new(layout: RegisterLayout, cloner: Cloner, mutation_enabled: bool, p_m: f64) -> Self {
        Self {
            layout,
            cloner,
            mutation_enabled,
            p_m,
            generations: 10,
            uqcm_granularity: UqcmGranularity::Register,
            cloning_basis: CloningBasis::Computational,
            mutation_mode: MutationMode::SampledGates,
            network: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_m) {
            return Err(Error::InvalidArgument(format!(
                "mutation probability {} outside [0, 1]",
                self.p_m
            )));
        }
        if let Some(net) = &self.network {
            for &(a, b) in net {
                if a >= self.layout.n_registers() || b >= self.layout.n_registers() || a == b {
                    return Err(Error::InvalidArgument(format!(
                        "invalid comparator pair ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn resolved_network(&self) -> Vec<(usize, usize)> {
        self.network
            .clone()
            .unwrap_or_else(|| sorting_network(self.layout.n_registers()))
    }

    fn cloning_basis_matrix<'a>(&self, h: &'a ProblemHamiltonian) -> Option<&'a ComplexMatrix> {
        match self.cloning_basis {
            CloningBasis::Computational => None,
            CloningBasis::HamiltonianEigenbasis => Some(h.eigenvectors()),
        }
    }
}

/// Energy and fidelity of the best individual, one value per generation
/// (index 0 is the initial population).
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSeries {
    pub best_energy: Vec<f64>,
    pub best_fidelity: Vec<f64>,
}

/// Best-individual readout: minimum energy and maximum ground-state
/// fidelity over the single-register marginals.
pub fn population_best_metrics(
    pop: &QuantumPopulation,
    h: &ProblemHamiltonian,
) -> Result<(f64, f64)> {
    let ground = h.ground_state();
    let mut best_energy = f64::INFINITY;
    let mut best_fidelity = f64::NEG_INFINITY;
    for r in 0..pop.layout().n_registers() {
        let marginal = pop.register_marginal(r)?;
        best_energy = best_energy.min(marginal.expectation(h.matrix())?);
        best_fidelity = best_fidelity.max(marginal.fidelity_to_pure(&ground)?);
    }
    Ok((best_energy, best_fidelity))
}

/// Reset the lower half: registers n/2 .. n-1 are traced out and replaced
/// by |0...0><0...0|; the marginal of the kept half is unchanged.
pub fn reset_discarded(pop: &QuantumPopulation) -> Result<QuantumPopulation> {
    let layout = *pop.layout();
    let kept_qubits: Vec<usize> = (0..layout.total_qubits() / 2).collect();
    let kept = pop.state().partial_trace(&kept_qubits)?;
    let blank_qubits = layout.total_qubits() / 2;
    let blank = DensityMatrix::from_pure(&PureState::basis_state(1 << blank_qubits, 0));
    Ok(pop.with_state(kept.tensor(&blank)))
}

fn clone_surviving_half(
    pop: &QuantumPopulation,
    h: &ProblemHamiltonian,
    cfg: &QgaConfig,
) -> Result<QuantumPopulation> {
    let n = cfg.layout.n_registers();
    let mut out = pop.clone();
    for r in 0..n / 2 {
        out = match cfg.cloner {
            Cloner::Bcqo => clone_bcqo(&out, r, n / 2 + r, cfg.cloning_basis_matrix(h))?,
            Cloner::Uqcm => clone_uqcm(&out, r, n / 2 + r, cfg.uqcm_granularity)?,
        };
    }
    Ok(out)
}

/// Crossover: for each cloned pair (registers n/2 + 2i, n/2 + 2i + 1),
/// swap the last c/2 qubits between the two registers.
pub fn crossover_swap(pop: &QuantumPopulation) -> Result<QuantumPopulation> {
    let layout = *pop.layout();
    let n = layout.n_registers();
    let c = layout.qubits_per_register();
    let half = c / 2;
    let swap = KrausChannel::from_unitary(group_swap(half))?;
    let mut state = pop.state().clone();
    for i in 0..n / 4 {
        let reg_a = n / 2 + 2 * i;
        let reg_b = reg_a + 1;
        let mut targets: Vec<usize> = layout.register_qubits(reg_a)?.skip(half).collect();
        targets.extend(layout.register_qubits(reg_b)?.skip(half));
        state = apply_channel_on(&state, &swap, &targets)?;
    }
    Ok(pop.with_state(state))
}

/// One full generation: sort, reset, clone, crossover, mutate.
pub fn qga_generation(
    pop: &QuantumPopulation,
    h: &ProblemHamiltonian,
    cfg: &QgaConfig,
    rng: &mut DetRng,
) -> Result<QuantumPopulation> {
    let sorted = sort_population_with(pop, h, &cfg.resolved_network())?;
    breed(&sorted, h, cfg, rng)
}

/// Everything after the sort.
fn breed(
    sorted: &QuantumPopulation,
    h: &ProblemHamiltonian,
    cfg: &QgaConfig,
    rng: &mut DetRng,
) -> Result<QuantumPopulation> {
    let reset = reset_discarded(sorted)?;
    let cloned = clone_surviving_half(&reset, h, cfg)?;
    let crossed = crossover_swap(&cloned)?;
    if !cfg.mutation_enabled || cfg.p_m == 0.0 {
        return Ok(crossed);
    }
    match cfg.mutation_mode {
        MutationMode::SampledGates => mutate_all_qubits_sampled(&crossed, cfg.p_m, rng),
        MutationMode::ExactChannel => mutate_all_qubits_channel(&crossed, cfg.p_m),
    }
}

/// Run the QGA for `cfg.generations` generations from per-register initial
/// states, recording best-individual metrics.
///
/// The recorded value for generation g >= 1 is taken on the sorted view of
/// the population after g complete generations, i.e. at the point where
/// selection has identified the best individual; generation 0 records the
/// raw initial population. The sorted view of generation g is exactly the
/// sorting step of generation g+1, so only one extra sort runs at the end.
pub fn run_qga(
    h: &ProblemHamiltonian,
    cfg: &QgaConfig,
    initial: &[PureState],
    rng: &mut DetRng,
) -> Result<MetricSeries> {
    run_qga_with(h, cfg, initial, rng, |_, _| {})
}

/// [`run_qga`] with an observer called as `observer(generation, population)`
/// on the standing (unsorted) population after each full generation.
pub fn run_qga_with(
    h: &ProblemHamiltonian,
    cfg: &QgaConfig,
    initial: &[PureState],
    rng: &mut DetRng,
    mut observer: impl FnMut(usize, &QuantumPopulation),
) -> Result<MetricSeries> {
    cfg.validate()?;
    if h.dim() != cfg.layout.register_dim() {
        return Err(Error::DimensionMismatch {
            expected: cfg.layout.register_dim(),
            found: h.dim(),
        });
    }
    let network = cfg.resolved_network();
    let mut pop = QuantumPopulation::from_register_states(cfg.layout, initial)?;
    observer(0, &pop);

    let mut series = MetricSeries {
        best_energy: Vec::with_capacity(cfg.generations + 1),
        best_fidelity: Vec::with_capacity(cfg.generations + 1),
    };
    let push = |series: &mut MetricSeries, (e, f): (f64, f64)| {
        series.best_energy.push(e);
        series.best_fidelity.push(f);
    };
    push(&mut series, population_best_metrics(&pop, h)?);

    for g in 1..=cfg.generations {
        let sorted = sort_population_with(&pop, h, &network)?;
        if g > 1 {
            // Post-sort view of the population after g-1 generations.
            push(&mut series, population_best_metrics(&sorted, h)?);
        }
        pop = breed(&sorted, h, cfg, rng)?;
        observer(g, &pop);
    }
    if cfg.generations > 0 {
        let final_sorted = sort_population_with(&pop, h, &network)?;
        push(&mut series, population_best_metrics(&final_sorted, h)?);
    }
    Ok(series)
}
