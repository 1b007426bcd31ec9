use qga_bench::hamiltonian::{make_h2, make_hc, sample_random_hamiltonian};
use qga_bench::linalg::haar_random_unit_vector;
use qga_bench::qga::{run_qga, Cloner, QgaConfig};
use qga_bench::quantum::{PureState, RegisterLayout};
use qga_bench::DetRng;
use std::time::Instant;

fn main() {
    let layout = RegisterLayout::new(4, 2).unwrap();
    let t0 = Instant::now();
    for (name, h) in [("HC", make_hc()), ("HH2", make_h2())] {
        for (vname, cloner, mutation) in [
            ("unm", Cloner::Uqcm, false),
            ("uwm", Cloner::Uqcm, true),
            ("bnm", Cloner::Bcqo, false),
            ("bwm", Cloner::Bcqo, true),
        ] {
            let mut acc_e = 0.0;
            let mut acc_f = 0.0;
            let seeds = 5;
            for seed in 0..seeds {
                let mut init_rng = DetRng::derived(1, &["init", name, &seed.to_string()]);
                let initial: Vec<PureState> = (0..4)
                    .map(|_| PureState::new(haar_random_unit_vector(4, &mut init_rng)).unwrap())
                    .collect();
                let mut cfg = QgaConfig::new(layout, cloner, mutation, 1.0 / 24.0);
                cfg.generations = 50;
                let mut rng = DetRng::derived(1, &["alg", vname, name, &seed.to_string()]);
                let series = run_qga(&h, &cfg, &initial, &mut rng).unwrap();
                acc_e += series.best_energy.last().unwrap();
                acc_f += series.best_fidelity.last().unwrap();
            }
            println!(
                "{name} QGA{vname}: mean final fidelity {:.4} energy {:.4}",
                acc_f / seeds as f64,
                acc_e / seeds as f64
            );
        }
    }
    println!("named Hamiltonians took {:.2?}", t0.elapsed());

    // Ensemble spot check: QGAunm on 10 random Hamiltonians, 5 seeds, 10 generations.
    let t1 = Instant::now();
    let mut hrng = DetRng::from_u64(7);
    let mut acc_f = 0.0;
    let mut acc_e = 0.0;
    let mut count = 0;
    for _ in 0..10 {
        let h = sample_random_hamiltonian(&[0.0, 1.0, 2.0, 3.0], &mut hrng).unwrap();
        for seed in 0..5u64 {
            let mut init_rng = DetRng::derived(2, &["init", &seed.to_string()]);
            let initial: Vec<PureState> = (0..4)
                .map(|_| PureState::new(haar_random_unit_vector(4, &mut init_rng)).unwrap())
                .collect();
            let mut cfg = QgaConfig::new(layout, Cloner::Uqcm, false, 0.0);
            cfg.generations = 10;
            let mut rng = DetRng::from_u64(seed);
            let series = run_qga(&h, &cfg, &initial, &mut rng).unwrap();
            acc_f += series.best_fidelity.last().unwrap();
            acc_e += series.best_energy.last().unwrap();
            count += 1;
        }
    }
    println!(
        "ensemble QGAunm gen10: mean fidelity {:.4} energy {:.4}  ({:.2?} for {} runs of 10 gens)",
        acc_f / count as f64,
        acc_e / count as f64,
        t1.elapsed(),
        count
    );
}
