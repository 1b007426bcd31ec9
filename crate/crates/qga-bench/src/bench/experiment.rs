//! Experiment orchestration: deterministic seed fan-out, parallel run
//! execution, and aggregation.

use crate::bench::record::RunRecord;
use crate::bench::stats::{summarize, win_rate_series, SummaryStats, WinRateSeries};
use crate::bench::wilcoxon::{wilcoxon_signed_rank, WilcoxonResult};
use crate::classical::{run_bga, run_cga, BgaConfig, BitIndividual, CgaConfig, CgaCrossover, CgaMutation, VectorIndividual};
use crate::error::{Error, Result};
use crate::hamiltonian::{make_h2, make_hc, sample_random_hamiltonian, ProblemHamiltonian};
use crate::qga::{
    population_best_metrics, run_qga_with, CloningBasis, Cloner, MutationMode, QgaConfig,
    QuantumPopulation, UqcmGranularity,
};
use crate::quantum::{PureState, RegisterLayout};
use crate::rng::{derive_seed, DetRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// The nine benchmarked algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    Bga,
    CgaAi,
    CgaAii,
    CgaBi,
    CgaBii,
    QgaBnm,
    QgaBwm,
    QgaUnm,
    QgaUwm,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Bga,
        Algorithm::CgaAi,
        Algorithm::CgaAii,
        Algorithm::CgaBi,
        Algorithm::CgaBii,
        Algorithm::QgaBnm,
        Algorithm::QgaBwm,
        Algorithm::QgaUnm,
        Algorithm::QgaUwm,
    ];

    pub const CLASSICAL_VECTOR: [Algorithm; 4] = [
        Algorithm::CgaAi,
        Algorithm::CgaAii,
        Algorithm::CgaBi,
        Algorithm::CgaBii,
    ];

    pub const QUANTUM: [Algorithm; 4] = [
        Algorithm::QgaBnm,
        Algorithm::QgaBwm,
        Algorithm::QgaUnm,
        Algorithm::QgaUwm,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Bga => "BGA",
            Algorithm::CgaAi => "CGAai",
            Algorithm::CgaAii => "CGAaii",
            Algorithm::CgaBi => "CGAbi",
            Algorithm::CgaBii => "CGAbii",
            Algorithm::QgaBnm => "QGAbnm",
            Algorithm::QgaBwm => "QGAbwm",
            Algorithm::QgaUnm => "QGAunm",
            Algorithm::QgaUwm => "QGAuwm",
        }
    }

    pub fn from_label(label: &str) -> Option<Algorithm> {
        Algorithm::ALL.iter().copied().find(|a| a.label() == label)
    }

    pub fn is_quantum(&self) -> bool {
        matches!(
            self,
            Algorithm::QgaBnm | Algorithm::QgaBwm | Algorithm::QgaUnm | Algorithm::QgaUwm
        )
    }
}

/// Where the problem Hamiltonians come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum HamiltonianSource {
    /// Fixed-spectrum random ensemble.
    RandomEnsemble { size: usize, spectrum: Vec<f64> },
    /// Named benchmark Hamiltonians.
    Named(Vec<NamedHamiltonian>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedHamiltonian {
    HC,
    HH2,
}

impl NamedHamiltonian {
    pub fn id(&self) -> &'static str {
        match self {
            NamedHamiltonian::HC => "HC",
            NamedHamiltonian::HH2 => "HH2",
        }
    }

    pub fn build(&self) -> ProblemHamiltonian {
        match self {
            NamedHamiltonian::HC => make_hc(),
            NamedHamiltonian::HH2 => make_h2(),
        }
    }
}

/// Shared probabilities of the mutation operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    /// Pauli mutation probability for CGA/BGA.
    pub p: f64,
    /// Gaussian mutation probability per real component.
    pub q: f64,
    /// Gaussian mutation deviation.
    pub sigma: f64,
    /// Per-qubit mutation probability for the QGA.
    pub p_m: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            p: 1.0 / 24.0,
            q: 1.0 / 24.0,
            sigma: 0.228,
            p_m: 1.0 / 24.0,
        }
    }
}

/// Which reference value the win-rate comparison uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WinRateReference {
    /// Compare every classical replicate against the per-generation mean
    /// over the reference replicates (default).
    MeanOverSeeds,
    /// Pair classical replicate i with reference replicate i mod n.
    PerSeedPaired,
}

/// Fully resolved description of one experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub algorithms: Vec<Algorithm>,
    pub source: HamiltonianSource,
    /// Replicates per Hamiltonian for quantum algorithms.
    pub qga_seeds: usize,
    /// Replicates per Hamiltonian for classical algorithms.
    pub classical_seeds: usize,
    pub generations: usize,
    pub params: GaParams,
    pub layout: RegisterLayout,
    pub master_seed: u64,
    pub uqcm_granularity: UqcmGranularity,
    pub cloning_basis: CloningBasis,
    pub mutation_mode: MutationMode,
    /// Emit win-rate curves of this reference against every classical
    /// algorithm in the spec.
    pub win_rate_against: Option<Algorithm>,
    pub win_rate_reference: WinRateReference,
    /// Thread-pool size; `None` uses all cores.
    pub workers: Option<usize>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.qga_seeds == 0 || self.classical_seeds == 0 {
            return Err(Error::Config("seed counts must be at least 1".into()));
        }
        for p in [self.params.p, self.params.q, self.params.p_m] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("probability {p} outside [0, 1]")));
            }
        }
        if self.params.sigma < 0.0 {
            return Err(Error::Config("sigma must be nonnegative".into()));
        }
        match &self.source {
            HamiltonianSource::RandomEnsemble { size, spectrum } => {
                if *size == 0 {
                    return Err(Error::Config("ensemble size must be at least 1".into()));
                }
                if spectrum.len() != self.layout.register_dim() {
                    return Err(Error::Config(format!(
                        "spectrum length {} does not match register dimension {}",
                        spectrum.len(),
                        self.layout.register_dim()
                    )));
                }
                if spectrum.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::SpectrumNotAscending);
                }
            }
            HamiltonianSource::Named(named) => {
                if named.is_empty() {
                    return Err(Error::Config("no Hamiltonians named".into()));
                }
                if self.layout.register_dim() != 4 {
                    return Err(Error::Config(
                        "named Hamiltonians are four-dimensional; layout must use c = 2".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Materialize the Hamiltonian set deterministically from the master
    /// seed.
    pub fn hamiltonians(&self) -> Result<Vec<(String, ProblemHamiltonian)>> {
        match &self.source {
            HamiltonianSource::RandomEnsemble { size, spectrum } => (0..*size)
                .map(|i| {
                    let id = format!("rand-{i:03}");
                    let mut rng =
                        DetRng::derived(self.master_seed, &["hamiltonian", &i.to_string()]);
                    Ok((id, sample_random_hamiltonian(spectrum, &mut rng)?))
                })
                .collect(),
            HamiltonianSource::Named(named) => Ok(named
                .iter()
                .map(|n| (n.id().to_string(), n.build()))
                .collect()),
        }
    }

    fn seeds_for(&self, algorithm: Algorithm) -> usize {
        if algorithm.is_quantum() {
            self.qga_seeds
        } else {
            self.classical_seeds
        }
    }

    fn qga_config(&self, algorithm: Algorithm) -> QgaConfig {
        let (cloner, mutation) = match algorithm {
            Algorithm::QgaBnm => (Cloner::Bcqo, false),
            Algorithm::QgaBwm => (Cloner::Bcqo, true),
            Algorithm::QgaUnm => (Cloner::Uqcm, false),
            Algorithm::QgaUwm => (Cloner::Uqcm, true),
            _ => unreachable!("qga_config is only called for quantum algorithms"),
        };
        let mut cfg = QgaConfig::new(self.layout, cloner, mutation, self.params.p_m);
        cfg.generations = self.generations;
        cfg.uqcm_granularity = self.uqcm_granularity;
        cfg.cloning_basis = self.cloning_basis;
        cfg.mutation_mode = self.mutation_mode;
        cfg
    }

    fn cga_config(&self, algorithm: Algorithm) -> CgaConfig {
        let (crossover, mutation) = match algorithm {
            Algorithm::CgaAi => (CgaCrossover::Linear, CgaMutation::Gaussian),
            Algorithm::CgaAii => (CgaCrossover::Linear, CgaMutation::Pauli),
            Algorithm::CgaBi => (CgaCrossover::CoefficientSwap, CgaMutation::Gaussian),
            Algorithm::CgaBii => (CgaCrossover::CoefficientSwap, CgaMutation::Pauli),
            _ => unreachable!("cga_config is only called for vector algorithms"),
        };
        CgaConfig {
            crossover,
            mutation,
            p: self.params.p,
            q: self.params.q,
            sigma: self.params.sigma,
            generations: self.generations,
            n: self.layout.n_registers(),
            c: self.layout.qubits_per_register(),
        }
    }
}

/// Optional per-generation state snapshot captured during quantum runs.
#[derive(Debug, Clone)]
pub struct PopulationSnapshot {
    pub algorithm: String,
    pub hamiltonian_id: String,
    pub seed: u64,
    pub generation: usize,
    pub state_json: serde_json::Value,
}

/// Everything an experiment produces.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub spec: ExperimentSpec,
    pub records: Vec<RunRecord>,
    pub summary: SummaryStats,
    pub win_rates: Vec<WinRateSeries>,
    /// Wilcoxon tests over per-Hamiltonian fidelity aggregates: the
    /// reference against each classical algorithm, plus CGAai vs CGAbi
    /// when both ran. Empty when fewer than two Hamiltonians.
    pub wilcoxon: Vec<(String, String, WilcoxonResult)>,
}

impl ExperimentOutput {
    pub fn records_for(&self, algorithm: Algorithm, hamiltonian_id: &str) -> Vec<&RunRecord> {
        self.records
            .iter()
            .filter(|r| r.algorithm == algorithm.label() && r.hamiltonian_id == hamiltonian_id)
            .collect()
    }

    pub fn win_rate_against(&self, against: Algorithm) -> Option<&WinRateSeries> {
        self.win_rates.iter().find(|w| w.against == against.label())
    }
}

struct RunJob {
    algorithm: Algorithm,
    ham_index: usize,
    replicate: u64,
}

/// Run the whole experiment: deterministic per-run streams, one job per
/// (algorithm, Hamiltonian, replicate), executed on a worker pool.
///
/// Initial populations are keyed by (Hamiltonian, replicate) only, so all
/// algorithms start from the same random individuals, mirroring the
/// benchmark protocol; algorithm-specific randomness (mutation draws) uses
/// a separate stream keyed by the algorithm as well.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    run_experiment_with_snapshots(spec, None)
}

/// [`run_experiment`] that optionally captures per-generation quantum
/// population snapshots (debugging aid; large).
pub fn run_experiment_with_snapshots(
    spec: &ExperimentSpec,
    mut snapshots: Option<&mut Vec<PopulationSnapshot>>,
) -> Result<ExperimentOutput> {
    spec.validate()?;
    let hamiltonians = spec.hamiltonians()?;

    // Fan out jobs; BGA silently skips non-diagonal Hamiltonians.
    let mut jobs = Vec::new();
    for &algorithm in &spec.algorithms {
        for (hi, (_, h)) in hamiltonians.iter().enumerate() {
            if algorithm == Algorithm::Bga && !h.is_diagonal() {
                continue;
            }
            for replicate in 0..spec.seeds_for(algorithm) as u64 {
                jobs.push(RunJob {
                    algorithm,
                    ham_index: hi,
                    replicate,
                });
            }
        }
    }

    // Collision check over the derived seed material.
    let mut seen: HashMap<[u8; 32], String> = HashMap::new();
    for job in &jobs {
        let (ham_id, _) = &hamiltonians[job.ham_index];
        let key = derive_seed(
            spec.master_seed,
            &[
                "alg",
                job.algorithm.label(),
                ham_id,
                &job.replicate.to_string(),
            ],
        );
        let desc = format!("{}/{}/{}", job.algorithm.label(), ham_id, job.replicate);
        if let Some(other) = seen.insert(key, desc.clone()) {
            return Err(Error::SeedCollision(format!("{desc} vs {other}")));
        }
    }

    let capture_snapshots = snapshots.is_some();
    let execute = |job: &RunJob| -> Result<(RunRecord, Vec<PopulationSnapshot>)> {
        let (ham_id, h) = &hamiltonians[job.ham_index];
        let mut captured = Vec::new();
        let record = run_single(
            spec,
            job.algorithm,
            ham_id,
            h,
            job.replicate,
            if capture_snapshots { Some(&mut captured) } else { None },
        )?;
        Ok((record, captured))
    };

    let results: Result<Vec<(RunRecord, Vec<PopulationSnapshot>)>> = match spec.workers {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
            pool.install(|| jobs.par_iter().map(execute).collect())
        }
        None => jobs.par_iter().map(execute).collect(),
    };
    let results = results?;

    let mut records = Vec::with_capacity(results.len());
    for (record, captured) in results {
        if let Some(sink) = snapshots.as_deref_mut() {
            sink.extend(captured);
        }
        records.push(record);
    }

    let summary = summarize(&spec.name, spec.master_seed, &records, |label| {
        Algorithm::from_label(label).map(|a| a.is_quantum()).unwrap_or(false)
    })?;

    // Win-rate curves.
    let mut win_rates = Vec::new();
    if let Some(reference) = spec.win_rate_against {
        let ref_records: Vec<&RunRecord> = records
            .iter()
            .filter(|r| r.algorithm == reference.label())
            .collect();
        for &against in &spec.algorithms {
            if against == reference || against.is_quantum() {
                continue;
            }
            let against_records: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.algorithm == against.label())
                .collect();
            if ref_records.is_empty() || against_records.is_empty() {
                continue;
            }
            win_rates.push(match spec.win_rate_reference {
                WinRateReference::MeanOverSeeds => win_rate_series(
                    &ref_records,
                    &against_records,
                    reference.label(),
                    against.label(),
                )?,
                WinRateReference::PerSeedPaired => per_seed_win_rate(
                    &ref_records,
                    &against_records,
                    reference.label(),
                    against.label(),
                )?,
            });
        }
    }

    // Wilcoxon tests on per-Hamiltonian fidelity aggregates.
    let mut wilcoxon = Vec::new();
    if hamiltonians.len() >= 2 {
        let aggregates = |label: &str| -> Option<Vec<f64>> {
            summary
                .algorithm(label)
                .map(|a| a.per_hamiltonian.iter().map(|h| h.agg_fidelity).collect())
        };
        if let Some(reference) = spec.win_rate_against {
            if let Some(ref_agg) = aggregates(reference.label()) {
                for &against in &spec.algorithms {
                    if against == reference {
                        continue;
                    }
                    if let Some(against_agg) = aggregates(against.label()) {
                        if against_agg.len() == ref_agg.len() {
                            if let Ok(result) = wilcoxon_signed_rank(&ref_agg, &against_agg) {
                                wilcoxon.push((
                                    reference.label().to_string(),
                                    against.label().to_string(),
                                    result,
                                ));
                            }
                        }
                    }
                }
            }
        }
        if let (Some(ai), Some(bi)) = (aggregates("CGAai"), aggregates("CGAbi")) {
            if ai.len() == bi.len() {
                if let Ok(result) = wilcoxon_signed_rank(&ai, &bi) {
                    wilcoxon.push(("CGAai".to_string(), "CGAbi".to_string(), result));
                }
            }
        }
    }

    Ok(ExperimentOutput {
        spec: spec.clone(),
        records,
        summary,
        win_rates,
        wilcoxon,
    })
}

/// Best-individual readout shared by the record streams: quantum
/// populations report the minimum register energy and maximum register
/// fidelity; classical populations report the energy-minimizing
/// individual's energy and fidelity.
pub fn best_individual_metrics(
    pop: &QuantumPopulation,
    h: &ProblemHamiltonian,
) -> Result<(f64, f64)> {
    population_best_metrics(pop, h)
}

fn run_single(
    spec: &ExperimentSpec,
    algorithm: Algorithm,
    ham_id: &str,
    h: &ProblemHamiltonian,
    replicate: u64,
    snapshots: Option<&mut Vec<PopulationSnapshot>>,
) -> Result<RunRecord> {
    // Initial populations shared across algorithms (keyed by Hamiltonian
    // and replicate only).
    let mut init_rng = DetRng::derived(
        spec.master_seed,
        &["init", ham_id, &replicate.to_string()],
    );
    // Algorithm-specific randomness.
    let mut alg_rng = DetRng::derived(
        spec.master_seed,
        &["alg", algorithm.label(), ham_id, &replicate.to_string()],
    );
    let n = spec.layout.n_registers();
    let dim = spec.layout.register_dim();

    let series = match algorithm {
        Algorithm::Bga => {
            let initial: Vec<BitIndividual> = (0..n)
                .map(|_| BitIndividual::random(spec.layout.qubits_per_register(), &mut init_rng))
                .collect();
            let cfg = BgaConfig {
                p: spec.params.p,
                generations: spec.generations,
                n,
                c: spec.layout.qubits_per_register(),
            };
            run_bga(h, &cfg, &initial, &mut alg_rng)?
        }
        Algorithm::CgaAi | Algorithm::CgaAii | Algorithm::CgaBi | Algorithm::CgaBii => {
            let initial: Vec<VectorIndividual> = (0..n)
                .map(|_| VectorIndividual::random(dim, &mut init_rng))
                .collect();
            let cfg = spec.cga_config(algorithm);
            run_cga(h, &cfg, &initial, &mut alg_rng)?
        }
        _ => {
            let initial: Vec<PureState> = (0..n)
                .map(|_| {
                    PureState::new(crate::linalg::haar_random_unit_vector(dim, &mut init_rng))
                        .expect("haar vectors are unit norm")
                })
                .collect();
            let cfg = spec.qga_config(algorithm);
            match snapshots {
                Some(sink) => {
                    let mut local = Vec::new();
                    let series =
                        run_qga_with(h, &cfg, &initial, &mut alg_rng, |generation, pop| {
                            local.push(PopulationSnapshot {
                                algorithm: algorithm.label().to_string(),
                                hamiltonian_id: ham_id.to_string(),
                                seed: replicate,
                                generation,
                                state_json: crate::bench::artifacts::density_matrix_json(
                                    pop.state(),
                                ),
                            });
                        })?;
                    sink.extend(local);
                    series
                }
                None => crate::qga::run_qga(h, &cfg, &initial, &mut alg_rng)?,
            }
        }
    };
    Ok(RunRecord::new(algorithm.label(), ham_id, replicate, series))
}

/// Per-seed-paired win rate: classical replicate i is compared against
/// reference replicate i mod n_ref, generation by generation.
fn per_seed_win_rate(
    reference: &[&RunRecord],
    classical: &[&RunRecord],
    ref_label: &str,
    against_label: &str,
) -> Result<WinRateSeries> {
    if reference.is_empty() || classical.is_empty() {
        return Err(Error::EmptyInput("win-rate records"));
    }
    let generations = reference[0].best_fidelity.len();
    let mut hams: Vec<String> = Vec::new();
    for rec in reference {
        if !hams.contains(&rec.hamiltonian_id) {
            hams.push(rec.hamiltonian_id.clone());
        }
    }
    let mut per_hamiltonian = Vec::new();
    for ham in &hams {
        let refs: Vec<&&RunRecord> = reference
            .iter()
            .filter(|r| &r.hamiltonian_id == ham)
            .collect();
        let cls: Vec<&&RunRecord> = classical
            .iter()
            .filter(|r| &r.hamiltonian_id == ham)
            .collect();
        if cls.is_empty() {
            continue;
        }
        let series: Vec<f64> = (0..generations)
            .map(|g| {
                let wins = cls
                    .iter()
                    .enumerate()
                    .filter(|(i, r)| {
                        let paired = refs[i % refs.len()];
                        r.best_fidelity[g] <= paired.best_fidelity[g]
                    })
                    .count();
                wins as f64 / cls.len() as f64
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
        reference: ref_label.to_string(),
        against: against_label.to_string(),
        per_hamiltonian,
        mean: mean_series,
    })
}
