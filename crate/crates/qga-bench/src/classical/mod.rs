//! Classical genetic-algorithm baselines.
//!
//! Two encodings: bit strings (BGA), restricted to Hamiltonians diagonal
//! in the computational basis, and complex unit vectors (CGA). The CGA
//! comes in four variants from two crossover rules (linear combination or
//! coefficient swap) and two mutation rules (Gaussian perturbation or
//! random single-qubit Paulis).

mod bga;
mod cga;

pub use bga::{bga_step, run_bga, BgaConfig, BitIndividual};
pub use cga::{
    apply_pauli_to_qubit, crossover_coeff_swap, crossover_linear, cga_step, mutate_gaussian,
    mutate_pauli, run_cga, CgaConfig, CgaCrossover, CgaMutation, VectorIndividual,
};

use crate::hamiltonian::ProblemHamiltonian;
use crate::qga::MetricSeries;

/// Stable selection shared by both encodings: sort ascending by energy and
/// keep the lowest n/2. Equal energies keep their input order.
pub(crate) fn select_half_indices(energies: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..energies.len()).collect();
    order.sort_by(|&a, &b| energies[a].partial_cmp(&energies[b]).unwrap());
    order.truncate(energies.len() / 2);
    order
}

/// Best-individual readout for a classical population: the individual with
/// the lowest energy, reporting its energy and its ground-state fidelity.
pub(crate) fn best_of<T>(
    pop: &[T],
    energy: impl Fn(&T) -> f64,
    fidelity: impl Fn(&T) -> f64,
) -> (f64, f64) {
    let mut best = 0;
    for i in 1..pop.len() {
        if energy(&pop[i]) < energy(&pop[best]) {
            best = i;
        }
    }
    (energy(&pop[best]), fidelity(&pop[best]))
}

pub(crate) fn series_with_capacity(generations: usize) -> MetricSeries {
    MetricSeries {
        best_energy: Vec::with_capacity(generations + 1),
        best_fidelity: Vec::with_capacity(generations + 1),
    }
}

pub(crate) fn ground_index_of_diagonal(h: &ProblemHamiltonian) -> usize {
    let mut best = 0;
    for i in 1..h.dim() {
        if h.matrix()[(i, i)].re < h.matrix()[(best, best)].re {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_is_stable_on_ties() {
        let energies = [2.0, 1.0, 2.0, 1.0, 0.5, 3.0];
        let kept = select_half_indices(&energies);
        assert_eq!(kept, vec![4, 1, 3]);
    }

    #[test]
    fn ground_index_takes_first_minimum() {
        let h = crate::hamiltonian::make_hc();
        assert_eq!(ground_index_of_diagonal(&h), 0);
    }
}
