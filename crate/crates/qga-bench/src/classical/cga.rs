//! Complex-vector genetic algorithms.
//!
//! Individuals are unit vectors in the 2^c-dimensional search space.
//! Selection keeps the n/2 lowest mean energies; survivors are duplicated
//! and the copies combined pairwise by one of two crossovers; mutation
//! perturbs every individual.

use crate::classical::{best_of, select_half_indices, series_with_capacity};
use crate::error::{Error, Result};
use crate::hamiltonian::ProblemHamiltonian;
use crate::linalg::haar_random_unit_vector;
use crate::qga::MetricSeries;
use crate::rng::DetRng;
use crate::tolerance::TOL_STATE_NORM;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Complex vector of dimension 2^c representing a candidate state.
///
/// Individuals are unit norm except through Gaussian mutation, whose
/// perturbations accumulate without renormalization; a grown norm damps
/// the relative size of later perturbations, which is what lets the
/// Gaussian variants settle close to the ground state. Energies and
/// fidelities always refer to the normalized state.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorIndividual {
    amplitudes: Vec<Complex64>,
}

impl VectorIndividual {
    /// Unit-norm constructor for externally built individuals.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TOL_STATE_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// Normalize and wrap; `None` when the input norm is (near) zero.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Option<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Some(Self { amplitudes })
    }

    pub fn random(dim: usize, rng: &mut DetRng) -> Self {
        Self {
            amplitudes: haar_random_unit_vector(dim, rng),
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Mean energy <v|H|v> / <v|v> of the represented state.
    pub fn energy(&self, h: &ProblemHamiltonian) -> f64 {
        let hv = h.matrix().mul_vec(&self.amplitudes);
        let raw: f64 = self
            .amplitudes
            .iter()
            .zip(&hv)
            .map(|(&a, &b)| (a.conj() * b).re)
            .sum();
        raw / self.norm_sqr()
    }

    /// Ground-state fidelity |<u1|v>|^2 / <v|v>.
    pub fn fidelity(&self, h: &ProblemHamiltonian) -> f64 {
        let g = h.eigenvector(0);
        let overlap: Complex64 = g
            .iter()
            .zip(&self.amplitudes)
            .map(|(&u, &v)| u.conj() * v)
            .sum();
        overlap.norm_sqr() / self.norm_sqr()
    }

    fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CgaCrossover {
    /// Children are 2 v1 + v2 and v1 + 2 v2, normalized.
    Linear,
    /// Children splice the first half of one parent with the second half
    /// of the other, normalized.
    CoefficientSwap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CgaMutation {
    /// Per coefficient, with probability q, add a complex Gaussian
    /// perturbation of per-component deviation sigma; renormalize.
    Gaussian,
    /// Per qubit, with probability p, apply a uniformly random Pauli.
    Pauli,
}

#[derive(Debug, Clone)]
pub struct CgaConfig {
    pub crossover: CgaCrossover,
    pub mutation: CgaMutation,
    /// Pauli mutation probability (per qubit).
    pub p: f64,
    /// Gaussian mutation probability (per coefficient).
    pub q: f64,
    /// Gaussian mutation deviation per real component.
    pub sigma: f64,
    pub generations: usize,
    /// Population size (even).
    pub n: usize,
    /// Qubits per individual.
    pub c: usize,
}

/// Linear-combination crossover: normalize(2 v1 + v2), normalize(v1 + 2 v2).
/// A degenerate (zero-norm) combination falls back to that child's leading
/// parent unchanged.
pub fn crossover_linear(
    v1: &VectorIndividual,
    v2: &VectorIndividual,
) -> (VectorIndividual, VectorIndividual) {
    let combine = |a: f64, b: f64| -> Vec<Complex64> {
        v1.amplitudes
            .iter()
            .zip(&v2.amplitudes)
            .map(|(&x, &y)| x * a + y * b)
            .collect()
    };
    let child1 = VectorIndividual::normalized(combine(2.0, 1.0)).unwrap_or_else(|| v1.clone());
    let child2 = VectorIndividual::normalized(combine(1.0, 2.0)).unwrap_or_else(|| v2.clone());
    (child1, child2)
}

/// Coefficient-swap crossover: child1 takes the first half of v1 and the
/// second half of v2, child2 the reverse; both renormalized. A zero-norm
/// splice falls back to that child's first-half parent.
pub fn crossover_coeff_swap(
    v1: &VectorIndividual,
    v2: &VectorIndividual,
) -> (VectorIndividual, VectorIndividual) {
    let half = v1.dim() / 2;
    let splice = |head: &VectorIndividual, tail: &VectorIndividual| -> Vec<Complex64> {
        head.amplitudes[..half]
            .iter()
            .chain(&tail.amplitudes[half..])
            .copied()
            .collect()
    };
    let child1 = VectorIndividual::normalized(splice(v1, v2)).unwrap_or_else(|| v1.clone());
    let child2 = VectorIndividual::normalized(splice(v2, v1)).unwrap_or_else(|| v2.clone());
    (child1, child2)
}

/// The raw perturbation vector of the Gaussian mutation: every real
/// component (real and imaginary part independently) carries its own
/// Bernoulli(q) mask times N(0, sigma). Split out so the sampling
/// statistics can be tested directly.
pub(crate) fn gaussian_perturbation(
    dim: usize,
    q: f64,
    sigma: f64,
    rng: &mut DetRng,
) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let re = if rng.bernoulli(q) {
                rng.standard_normal() * sigma
            } else {
                0.0
            };
            let im = if rng.bernoulli(q) {
                rng.standard_normal() * sigma
            } else {
                0.0
            };
            Complex64::new(re, im)
        })
        .collect()
}

/// Gaussian mutation: add the perturbation without renormalizing. The
/// (measure-zero) near-cancellation is guarded by resampling once.
pub fn mutate_gaussian(
    v: &VectorIndividual,
    q: f64,
    sigma: f64,
    rng: &mut DetRng,
) -> VectorIndividual {
    for _attempt in 0..2 {
        let delta = gaussian_perturbation(v.dim(), q, sigma, rng);
        let perturbed: Vec<Complex64> = v
            .amplitudes
            .iter()
            .zip(&delta)
            .map(|(&a, &d)| a + d)
            .collect();
        let norm_sqr: f64 = perturbed.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr > 1e-12 {
            return VectorIndividual::from_raw(perturbed);
        }
    }
    v.clone()
}

/// Apply one Pauli to one qubit of a state vector (big-endian qubit order).
pub fn apply_pauli_to_qubit(
    v: &VectorIndividual,
    qubit: usize,
    pauli: usize,
) -> VectorIndividual {
    let dim = v.dim();
    let n_bits = dim.trailing_zeros() as usize;
    let mask = 1usize << (n_bits - 1 - qubit);
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (i, &a) in v.amplitudes.iter().enumerate() {
        match pauli {
            0 => out[i ^ mask] += a, // X
            1 => {
                // Y = i on |0> -> |1>, -i on |1> -> |0>
                let sign = if i & mask == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                };
                out[i ^ mask] += a * sign;
            }
            _ => {
                let sign = if i & mask == 0 { 1.0 } else { -1.0 };
                out[i] += a * sign; // Z
            }
        }
    }
    VectorIndividual { amplitudes: out }
}

/// Pauli mutation: per qubit, with probability p, a uniformly chosen Pauli.
pub fn mutate_pauli(v: &VectorIndividual, p: f64, rng: &mut DetRng) -> VectorIndividual {
    let n_bits = v.dim().trailing_zeros() as usize;
    let mut out = v.clone();
    for qubit in 0..n_bits {
        if rng.bernoulli(p) {
            out = apply_pauli_to_qubit(&out, qubit, rng.index(3));
        }
    }
    out
}

/// One CGA generation: select, duplicate, cross the copies pairwise in
/// ascending-energy order, then mutate all n individuals (survivors
/// included). Output order is survivors followed by children.
pub fn cga_step(
    pop: &[VectorIndividual],
    h: &ProblemHamiltonian,
    cfg: &CgaConfig,
    rng: &mut DetRng,
) -> Result<Vec<VectorIndividual>> {
    if pop.len() % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "population size {} must be even",
            pop.len()
        )));
    }
    let energies: Vec<f64> = pop.iter().map(|v| v.energy(h)).collect();
    let kept = select_half_indices(&energies);
    let survivors: Vec<VectorIndividual> = kept.iter().map(|&i| pop[i].clone()).collect();

    let mut children = Vec::with_capacity(survivors.len());
    let mut iter = survivors.chunks_exact(2);
    for pair in &mut iter {
        let (c1, c2) = match cfg.crossover {
            CgaCrossover::Linear => crossover_linear(&pair[0], &pair[1]),
            CgaCrossover::CoefficientSwap => crossover_coeff_swap(&pair[0], &pair[1]),
        };
        children.push(c1);
        children.push(c2);
    }
    for rest in iter.remainder() {
        children.push(rest.clone());
    }

    let mut next = survivors;
    next.extend(children);
    for ind in &mut next {
        *ind = match cfg.mutation {
            CgaMutation::Gaussian => mutate_gaussian(ind, cfg.q, cfg.sigma, rng),
            CgaMutation::Pauli => mutate_pauli(ind, cfg.p, rng),
        };
    }
    Ok(next)
}

/// Run the CGA, recording the best individual's energy and fidelity per
/// generation.
pub fn run_cga(
    h: &ProblemHamiltonian,
    cfg: &CgaConfig,
    initial: &[VectorIndividual],
    rng: &mut DetRng,
) -> Result<MetricSeries> {
    if initial.len() != cfg.n {
        return Err(Error::InvalidArgument(format!(
            "expected {} individuals, got {}",
            cfg.n,
            initial.len()
        )));
    }
    let mut series = series_with_capacity(cfg.generations);
    let mut pop = initial.to_vec();
    let record = |series: &mut MetricSeries, pop: &[VectorIndividual]| {
        let (e, f) = best_of(pop, |v| v.energy(h), |v| v.fidelity(h));
        series.best_energy.push(e);
        series.best_fidelity.push(f);
    };
    record(&mut series, &pop);
    for _ in 0..cfg.generations {
        pop = cga_step(&pop, h, cfg, rng)?;
        record(&mut series, &pop);
    }
    Ok(series)
}
