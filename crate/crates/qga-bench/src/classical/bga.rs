//! Bit-string genetic algorithm.
//!
//! Individuals are c-bit strings indexing computational basis states, so
//! they carry definite energy; the algorithm only applies to Hamiltonians
//! diagonal in that basis. Selection keeps the n/2 lowest energies, the
//! survivors are duplicated, the copies exchange their bit tails pairwise,
//! and mutation flips each bit of every individual with probability p.

use crate::classical::{best_of, ground_index_of_diagonal, select_half_indices, series_with_capacity};
use crate::error::{Error, Result};
use crate::hamiltonian::ProblemHamiltonian;
use crate::qga::MetricSeries;
use crate::rng::DetRng;

/// A c-bit chromosome, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitIndividual {
    bits: Vec<bool>,
}

impl BitIndividual {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn from_index(index: usize, n_bits: usize) -> Self {
        let bits = (0..n_bits)
            .map(|b| (index >> (n_bits - 1 - b)) & 1 == 1)
            .collect();
        Self { bits }
    }

    pub fn random(n_bits: usize, rng: &mut DetRng) -> Self {
        Self {
            bits: (0..n_bits).map(|_| rng.bernoulli(0.5)).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Basis-state index of the chromosome.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }

    /// Energy: the diagonal entry of the (diagonal) Hamiltonian.
    pub fn energy(&self, h: &ProblemHamiltonian) -> f64 {
        let i = self.index();
        h.matrix()[(i, i)].re
    }
}

#[derive(Debug, Clone)]
pub struct BgaConfig {
    /// Per-bit mutation probability.
    pub p: f64,
    pub generations: usize,
    /// Population size (even).
    pub n: usize,
    /// Bits per individual.
    pub c: usize,
}

fn check_diagonal(h: &ProblemHamiltonian) -> Result<()> {
    if !h.is_diagonal() {
        return Err(Error::NonDiagonalHamiltonian);
    }
    Ok(())
}

/// One BGA generation: select the best half, duplicate, pairwise tail-swap
/// the copies, then flip every bit of every individual with probability p.
/// Output order is survivors (ascending energy) followed by the crossed
/// copies in pairing order.
pub fn bga_step(
    pop: &[BitIndividual],
    h: &ProblemHamiltonian,
    p: f64,
    rng: &mut DetRng,
) -> Result<Vec<BitIndividual>> {
    check_diagonal(h)?;
    if pop.len() % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "population size {} must be even",
            pop.len()
        )));
    }
    let energies: Vec<f64> = pop.iter().map(|b| b.energy(h)).collect();
    let kept = select_half_indices(&energies);
    let survivors: Vec<BitIndividual> = kept.iter().map(|&i| pop[i].clone()).collect();

    // Copies are paired in ascending-energy order; each pair keeps its
    // first c/2 bits and takes the last c/2 bits of the other.
    let mut children = Vec::with_capacity(survivors.len());
    let mut iter = survivors.chunks_exact(2);
    for pair in &mut iter {
        let (a, b) = (&pair[0], &pair[1]);
        let half = a.len() / 2;
        let mut child_a = a.bits().to_vec();
        let mut child_b = b.bits().to_vec();
        for k in half..a.len() {
            child_a[k] = b.bits()[k];
            child_b[k] = a.bits()[k];
        }
        children.push(BitIndividual::new(child_a));
        children.push(BitIndividual::new(child_b));
    }
    // Odd leftover copy (population not divisible by four): unchanged.
    for rest in iter.remainder() {
        children.push(rest.clone());
    }

    let mut next: Vec<BitIndividual> = survivors;
    next.extend(children);
    for ind in &mut next {
        for bit in &mut ind.bits {
            if rng.bernoulli(p) {
                *bit = !*bit;
            }
        }
    }
    Ok(next)
}

/// Run the BGA, recording the best individual's energy and fidelity per
/// generation. Fidelity of a bit string is the exact indicator of the
/// ground eigenstate.
pub fn run_bga(
    h: &ProblemHamiltonian,
    cfg: &BgaConfig,
    initial: &[BitIndividual],
    rng: &mut DetRng,
) -> Result<MetricSeries> {
    check_diagonal(h)?;
    if initial.len() != cfg.n {
        return Err(Error::InvalidArgument(format!(
            "expected {} individuals, got {}",
            cfg.n,
            initial.len()
        )));
    }
    let ground = ground_index_of_diagonal(h);
    let fidelity = |b: &BitIndividual| if b.index() == ground { 1.0 } else { 0.0 };

    let mut series = series_with_capacity(cfg.generations);
    let mut pop = initial.to_vec();
    let record = |series: &mut MetricSeries, pop: &[BitIndividual]| {
        let (e, f) = best_of(pop, |b| b.energy(h), fidelity);
        series.best_energy.push(e);
        series.best_fidelity.push(f);
    };
    record(&mut series, &pop);
    for _ in 0..cfg.generations {
        pop = bga_step(&pop, h, cfg.p, rng)?;
        record(&mut series, &pop);
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{make_h2, make_hc};

    fn bits(s: &str) -> BitIndividual {
        BitIndividual::new(s.chars().map(|c| c == '1').collect())
    }

    #[test]
    fn index_is_big_endian() {
        assert_eq!(bits("10").index(), 2);
        assert_eq!(bits("01").index(), 1);
        assert_eq!(BitIndividual::from_index(2, 2), bits("10"));
    }

    #[test]
    fn selection_keeps_two_lowest_on_hc() {
        let h = make_hc();
        let pop = vec![bits("11"), bits("00"), bits("10"), bits("01")];
        let energies: Vec<f64> = pop.iter().map(|b| b.energy(&h)).collect();
        let kept = select_half_indices(&energies);
        let survivors: Vec<&BitIndividual> = kept.iter().map(|&i| &pop[i]).collect();
        assert_eq!(survivors, vec![&bits("00"), &bits("01")]);
    }

    #[test]
    fn hand_traced_step_without_mutation() {
        // Survivors {00, 01}; copies cross to {01, 00}; next population is
        // [00, 01, 01, 00].
        let h = make_hc();
        let pop = vec![bits("00"), bits("01"), bits("10"), bits("11")];
        let mut rng = DetRng::from_u64(1);
        let next = bga_step(&pop, &h, 0.0, &mut rng).unwrap();
        assert_eq!(next, vec![bits("00"), bits("01"), bits("01"), bits("00")]);
    }

    #[test]
    fn identical_population_is_fixed_point_without_mutation() {
        let h = make_hc();
        let pop = vec![bits("10"); 4];
        let mut rng = DetRng::from_u64(2);
        let next = bga_step(&pop, &h, 0.0, &mut rng).unwrap();
        assert_eq!(next, pop);
    }

    #[test]
    fn rejects_non_diagonal_hamiltonian() {
        let h = make_h2();
        let pop = vec![bits("00"); 4];
        let mut rng = DetRng::from_u64(3);
        assert!(matches!(
            bga_step(&pop, &h, 0.0, &mut rng),
            Err(Error::NonDiagonalHamiltonian)
        ));
    }

    #[test]
    fn converges_on_hc_with_paper_mutation_rate() {
        // 50 generations, p = 1/24, 50 seeds: mean final energy near zero.
        let h = make_hc();
        let cfg = BgaConfig {
            p: 1.0 / 24.0,
            generations: 50,
            n: 4,
            c: 2,
        };
        let mut acc_e = 0.0;
        let mut acc_f = 0.0;
        for seed in 0..50u64 {
            let mut rng = DetRng::derived(400, &["bga", &seed.to_string()]);
            let initial: Vec<BitIndividual> =
                (0..4).map(|_| BitIndividual::random(2, &mut rng)).collect();
            let series = run_bga(&h, &cfg, &initial, &mut rng).unwrap();
            acc_e += series.best_energy.last().unwrap();
            acc_f += series.best_fidelity.last().unwrap();
        }
        let mean_e = acc_e / 50.0;
        let mean_f = acc_f / 50.0;
        assert!(mean_e.abs() < 0.02, "mean energy {mean_e}");
        assert!((mean_f - 1.0).abs() < 0.02, "mean fidelity {mean_f}");
    }

    #[test]
    fn zero_generations_records_initial_only() {
        let h = make_hc();
        let cfg = BgaConfig {
            p: 0.0,
            generations: 0,
            n: 4,
            c: 2,
        };
        let initial = vec![bits("10"), bits("01"), bits("11"), bits("00")];
        let mut rng = DetRng::from_u64(4);
        let series = run_bga(&h, &cfg, &initial, &mut rng).unwrap();
        assert_eq!(series.best_energy, vec![0.0]);
        assert_eq!(series.best_fidelity, vec![1.0]);
    }
}
