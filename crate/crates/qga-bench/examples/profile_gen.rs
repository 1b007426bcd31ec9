use qga_bench::hamiltonian::sample_random_hamiltonian;
use qga_bench::linalg::haar_random_unit_vector;
use qga_bench::qga::{
    clone_uqcm, crossover_swap, population_best_metrics, reset_discarded, sort_population,
    QuantumPopulation, UqcmGranularity,
};
use qga_bench::quantum::{PureState, RegisterLayout};
use qga_bench::DetRng;
use std::time::Instant;

fn main() {
    let layout = RegisterLayout::new(4, 2).unwrap();
    let mut rng = DetRng::from_u64(7);
    let h = sample_random_hamiltonian(&[0.0, 1.0, 2.0, 3.0], &mut rng).unwrap();
    let states: Vec<PureState> = (0..4)
        .map(|_| PureState::new(haar_random_unit_vector(4, &mut rng)).unwrap())
        .collect();
    let pop = QuantumPopulation::from_register_states(layout, &states).unwrap();

    let n = 50;
    let t = Instant::now();
    let mut sorted = pop.clone();
    for _ in 0..n {
        sorted = sort_population(&pop, &h).unwrap();
    }
    println!("sort:       {:>8.2?}/iter", t.elapsed() / n);

    let hc = qga_bench::hamiltonian::make_hc();
    let t = Instant::now();
    for _ in 0..n {
        let _ = sort_population(&pop, &hc).unwrap();
    }
    println!("sort HC (no rotation): {:>8.2?}/iter", t.elapsed() / n);

    let t = Instant::now();
    let mut reset = sorted.clone();
    for _ in 0..n {
        reset = reset_discarded(&sorted).unwrap();
    }
    println!("reset:      {:>8.2?}/iter", t.elapsed() / n);

    let t = Instant::now();
    let mut cloned = reset.clone();
    for _ in 0..n {
        cloned = clone_uqcm(&reset, 0, 2, UqcmGranularity::Register).unwrap();
        cloned = clone_uqcm(&cloned, 1, 3, UqcmGranularity::Register).unwrap();
    }
    println!("clone x2:   {:>8.2?}/iter", t.elapsed() / n);

    let t = Instant::now();
    let mut crossed = cloned.clone();
    for _ in 0..n {
        crossed = crossover_swap(&cloned).unwrap();
    }
    println!("crossover:  {:>8.2?}/iter", t.elapsed() / n);

    let t = Instant::now();
    for _ in 0..n {
        let _ = population_best_metrics(&crossed, &h).unwrap();
    }
    println!("metrics:    {:>8.2?}/iter", t.elapsed() / n);
}
