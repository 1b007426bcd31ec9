//! Eigenbasis comparator channel and the sorting network built from it.
//!
//! A comparator on registers (a, b) compares in the problem eigenbasis
//! {|u_i>} with energies lambda_i <= lambda_{i+1}: eigen-components
//! |u_i>_a |u_j>_b with lambda_i <= lambda_j pass through, components with
//! lambda_j < lambda_i are swapped. The ancilla that makes the comparison
//! reversible is discarded immediately, so the comparator is a two-branch
//! Kraus channel; the ancilla itself is never materialized.

use crate::error::Result;
use crate::hamiltonian::ProblemHamiltonian;
use crate::linalg::ComplexMatrix;
use crate::qga::QuantumPopulation;
use crate::quantum::{embed_operator, KrausChannel, RegisterLayout};

/// The two Kraus branches of a comparator acting on a register pair
/// (dimension d^2 with d = 2^c): the keep branch
/// `K0 = sum_{lambda_i <= lambda_j} |u_i u_j><u_i u_j|` and the swap branch
/// `K1 = sum_{lambda_j < lambda_i} |u_j u_i><u_i u_j|`. Ties, including
/// i = j, fall in the keep branch, so degenerate spectra sort stably.
pub fn comparator_pair_kraus(h: &ProblemHamiltonian) -> (ComplexMatrix, ComplexMatrix) {
    let d = h.dim();
    let dim = d * d;
    let lam = h.eigenvalues();
    let mut keep = ComplexMatrix::zeros(dim, dim);
    let mut swap = ComplexMatrix::zeros(dim, dim);
    for i in 0..d {
        let ui = h.eigenvector(i);
        for j in 0..d {
            let uj = h.eigenvector(j);
            if lam[i] <= lam[j] {
                let pi = ComplexMatrix::outer(&ui, &ui);
                let pj = ComplexMatrix::outer(&uj, &uj);
                keep = keep.add(&pi.kron(&pj));
            } else {
                // |u_j u_i><u_i u_j| = (|u_j><u_i|) kron (|u_i><u_j|)
                let ji = ComplexMatrix::outer(&uj, &ui);
                let ij = ComplexMatrix::outer(&ui, &uj);
                swap = swap.add(&ji.kron(&ij));
            }
        }
    }
    (keep, swap)
}

/// Comparator channel on the register pair, as a validated [`KrausChannel`]
/// over the pair space.
pub fn comparator_pair_channel(h: &ProblemHamiltonian) -> Result<KrausChannel> {
    let (keep, swap) = comparator_pair_kraus(h);
    KrausChannel::new(vec![keep, swap])
}

/// Comparator channel embedded into the full population space, acting on
/// registers `reg_a` (receives the lower energy) and `reg_b`.
pub fn comparator_channel(
    h: &ProblemHamiltonian,
    reg_a: usize,
    reg_b: usize,
    layout: &RegisterLayout,
) -> Result<KrausChannel> {
    let targets = layout.register_pair_qubits(reg_a, reg_b)?;
    let (keep, swap) = comparator_pair_kraus(h);
    let n = layout.total_qubits();
    KrausChannel::new(vec![
        embed_operator(&keep, n, &targets)?,
        embed_operator(&swap, n, &targets)?,
    ])
}

/// Comparator sequence (0-indexed register pairs) sorting `n` registers
/// ascending by energy. For n = 4 this is the optimal five-comparator
/// network; other sizes use odd-even transposition, which is correct for
/// any n.
pub fn sorting_network(n: usize) -> Vec<(usize, usize)> {
    if n == 4 {
        return vec![(0, 1), (2, 3), (0, 2), (1, 3), (1, 2)];
    }
    let mut seq = Vec::new();
    for round in 0..n {
        let start = round % 2;
        let mut a = start;
        while a + 1 < n {
            seq.push((a, a + 1));
            a += 2;
        }
    }
    seq
}

/// Conjugate every register by the same single-register unitary:
/// rho -> (U x U x ... x U) rho (...)^dagger. Both sides are evaluated as
/// left applications, linked by one transpose via Hermiticity of rho.
fn rotate_registers(
    layout: &RegisterLayout,
    u: &ComplexMatrix,
    state: crate::quantum::DensityMatrix,
) -> Result<crate::quantum::DensityMatrix> {
    use crate::quantum::DensityMatrix;
    let n_qubits = layout.total_qubits();
    let apply_all = |input: ComplexMatrix| -> Result<ComplexMatrix> {
        let mut cur = input;
        for r in 0..layout.n_registers() {
            let targets: Vec<usize> = layout.register_qubits(r)?.collect();
            let idx = crate::quantum::TargetIndexer::new(n_qubits, &targets)?;
            let mut out = ComplexMatrix::zeros(cur.rows(), cur.cols());
            crate::quantum::apply_left_accumulate(u, &idx, &cur, &mut out);
            cur = out;
        }
        Ok(cur)
    };
    // L rho, then (L rho)^dagger = rho L^dagger, then L rho L^dagger.
    let left = apply_all(state.into_matrix())?;
    let full = apply_all(left.dagger())?;
    DensityMatrix::from_matrix_unchecked(full)
}

/// One-pass application of the label-basis comparator on registers
/// (a, b): components with ordered labels stay in place (keep branch),
/// components with out-of-order labels move to their sorted slots (swap
/// branch), and cross-branch coherences drop. This is exactly
/// `K0 rho K0^dagger + K1 rho K1^dagger` for the label Kraus pair.
fn apply_label_comparator(
    state: &crate::quantum::DensityMatrix,
    layout: &RegisterLayout,
    lam: &[f64],
    reg_a: usize,
    reg_b: usize,
) -> Result<crate::quantum::DensityMatrix> {
    use crate::quantum::DensityMatrix;
    let c = layout.qubits_per_register();
    let n_qubits = layout.total_qubits();
    let dim = layout.dim();
    let shift_a = n_qubits - (reg_a + 1) * c;
    let shift_b = n_qubits - (reg_b + 1) * c;
    let mask = (1usize << c) - 1;

    // Per basis index: the destination index and which branch it takes.
    let mut dest = vec![0usize; dim];
    let mut swaps = vec![false; dim];
    for (idx, (d, sw)) in dest.iter_mut().zip(swaps.iter_mut()).enumerate() {
        let la = (idx >> shift_a) & mask;
        let lb = (idx >> shift_b) & mask;
        if lam[la] <= lam[lb] {
            *d = idx;
            *sw = false;
        } else {
            let cleared = idx & !(mask << shift_a) & !(mask << shift_b);
            *d = cleared | (lb << shift_a) | (la << shift_b);
            *sw = true;
        }
    }

    let mut out = ComplexMatrix::zeros(dim, dim);
    let m = state.matrix();
    for r in 0..dim {
        let row = m.row(r);
        let out_row = dest[r] * dim;
        let branch = swaps[r];
        for (col, &v) in row.iter().enumerate() {
            if swaps[col] == branch && (v.re != 0.0 || v.im != 0.0) {
                out.data_mut()[out_row + dest[col]] += v;
            }
        }
    }
    DensityMatrix::from_matrix_unchecked(out)
}

/// Apply the sorting network to the population.
pub fn sort_population(
    pop: &QuantumPopulation,
    h: &ProblemHamiltonian,
) -> Result<QuantumPopulation> {
    sort_population_with(pop, h, &sorting_network(pop.layout().n_registers()))
}

/// Apply a caller-supplied comparator sequence.
///
/// All comparators share the eigenbasis dressing, so the network is
/// evaluated as one register-wise rotation into the eigenbasis, the sparse
/// label-space comparators, and the rotation back; this is algebraically
/// identical to applying the dressed channels directly.
pub fn sort_population_with(
    pop: &QuantumPopulation,
    h: &ProblemHamiltonian,
    network: &[(usize, usize)],
) -> Result<QuantumPopulation> {
    let layout = *pop.layout();
    if h.dim() != layout.register_dim() {
        return Err(crate::error::Error::DimensionMismatch {
            expected: layout.register_dim(),
            found: h.dim(),
        });
    }
    let v = h.eigenvectors();
    let canonical_basis = v.approx_eq(&ComplexMatrix::identity(h.dim()), 1e-14);

    let mut state = pop.state().clone();
    if !canonical_basis {
        state = rotate_registers(&layout, &v.dagger(), state)?;
    }
    for &(a, b) in network {
        state = apply_label_comparator(&state, &layout, h.eigenvalues(), a, b)?;
    }
    if !canonical_basis {
        state = rotate_registers(&layout, v, state)?;
    }
    Ok(pop.with_state(state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{make_hc, sample_random_hamiltonian};
    use crate::quantum::{apply_channel_on, DensityMatrix, PureState};
    use crate::rng::DetRng;
    use crate::tolerance::TOL_STRUCTURAL;
    use num_complex::Complex64;

    /// Pair state |u_i>|u_j> for a Hamiltonian.
    fn eigen_pair(h: &ProblemHamiltonian, i: usize, j: usize) -> PureState {
        let ui = PureState::new(h.eigenvector(i)).unwrap();
        let uj = PureState::new(h.eigenvector(j)).unwrap();
        ui.tensor(&uj)
    }

/// Eigenbasis-label comparator branches over the pair space: the dressed
/// operators of [`comparator_pair_kraus`] equal `(V kron V) K' (V kron V)^+`
/// with these sparse `K'`.
fn comparator_label_kraus(lam: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    use num_complex::Complex64;
    let d = lam.len();
    let dim = d * d;
    let one = Complex64::new(1.0, 0.0);
    let mut keep = ComplexMatrix::zeros(dim, dim);
    let mut swap = ComplexMatrix::zeros(dim, dim);
    for i in 0..d {
        for j in 0..d {
            if lam[i] <= lam[j] {
                keep[(i * d + j, i * d + j)] = one;
            } else {
                swap[(j * d + i, i * d + j)] = one;
            }
        }
    }
    (keep, swap)
}

    fn apply_pair_channel(h: &ProblemHamiltonian, rho: &DensityMatrix) -> DensityMatrix {
        let ch = comparator_pair_channel(h).unwrap();
        crate::quantum::apply_channel(rho, &ch).unwrap()
    }

    #[test]
    fn completeness_for_random_hamiltonians() {
        let mut rng = DetRng::from_u64(3);
        for _ in 0..10 {
            let h = sample_random_hamiltonian(&[0.0, 1.0, 2.0, 3.0], &mut rng).unwrap();
            let ch = comparator_pair_channel(&h).unwrap();
            assert!(ch.completeness_deviation() < TOL_STRUCTURAL);
        }
    }

    #[test]
    fn out_of_order_pair_is_swapped() {
        let mut rng = DetRng::from_u64(4);
        let h = sample_random_hamiltonian(&[0.0, 1.0, 2.0, 3.0], &mut rng).unwrap();
        let input = DensityMatrix::from_pure(&eigen_pair(&h, 1, 0));
        let out = apply_pair_channel(&h, &input);
        let expect = DensityMatrix::from_pure(&eigen_pair(&h, 0, 1));
        assert!(out.matrix().approx_eq(expect.matrix(), 1e-10));
    }

    #[test]
    fn ordered_pair_is_unchanged() {
        let mut rng = DetRng::from_u64(5);
        let h = sample_random_hamiltonian(&[0.0, 1.0, 2.0, 3.0], &mut rng).unwrap();
        let input = DensityMatrix::from_pure(&eigen_pair(&h, 0, 1));
        let out = apply_pair_channel(&h, &input);
        assert!(out.matrix().approx_eq(input.matrix(), 1e-10));
    }

    #[test]
    fn superposition_collapses_to_sorted_pure_state() {
        // (|u1 u2> + |u2 u1>)/sqrt(2): the keep branch maps the first term
        // to |u1 u2>, the swap branch maps the second term to |u1 u2>, so
        // the output is the pure sorted state.
        let h = make_hc();
        let a = eigen_pair(&h, 0, 1);
        let b = eigen_pair(&h, 1, 0);
        let s = 0.5f64.sqrt();
        let amps: Vec<Complex64> = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(&x, &y)| (x + y) * s)
            .collect();
        let input = DensityMatrix::from_pure(&PureState::new(amps).unwrap());
        let out = apply_pair_channel(&h, &input);
        let expect = DensityMatrix::from_pure(&eigen_pair(&h, 0, 1));
        assert!(out.matrix().approx_eq(expect.matrix(), 1e-10));
    }

    #[test]
    fn degenerate_eigenvalues_tie_to_keep_branch() {
        let mut rng = DetRng::from_u64(6);
        let h = sample_random_hamiltonian(&[0.0, 1.0, 1.0, 3.0], &mut rng).unwrap();
        let ch = comparator_pair_channel(&h).unwrap();
        assert!(ch.completeness_deviation() < TOL_STRUCTURAL);
        // |u_2 u_1> has equal energies; the tie keeps it in place.
        let input = DensityMatrix::from_pure(&eigen_pair(&h, 2, 1));
        let out = apply_pair_channel(&h, &input);
        assert!(out.matrix().approx_eq(input.matrix(), 1e-10));
    }

    #[test]
    fn four_register_networks_are_correct_on_labels() {
        // Classical oracle: run the comparator sequence on plain labels.
        let net = sorting_network(4);
        assert_eq!(net.len(), 5);
        for labels in [[3usize, 1, 4, 2], [4, 3, 2, 1], [1, 1, 1, 1], [2, 2, 1, 1]] {
            let mut v = labels;
            for &(a, b) in &net {
                if v[b] < v[a] {
                    v.swap(a, b);
                }
            }
            let mut expect = labels;
            expect.sort();
            assert_eq!(v, expect, "network failed on {labels:?}");
        }
    }

    #[test]
    fn odd_even_network_sorts_other_sizes() {
        for n in [2usize, 3, 5, 8] {
            let net = sorting_network(n);
            // Check on a few worst-case permutations.
            let mut labels: Vec<usize> = (0..n).rev().collect();
            for &(a, b) in &net {
                if labels[b] < labels[a] {
                    labels.swap(a, b);
                }
            }
            let expect: Vec<usize> = (0..n).collect();
            assert_eq!(labels, expect);
        }
    }

    #[test]
    fn one_pass_comparator_matches_label_kraus_channel() {
        // Dual route: the fused pass against the two-operator Kraus form.
        let mut rng = DetRng::from_u64(23);
        let spectrum = [0.0, 1.0, 1.0, 3.0]; // include a degeneracy
        let h = sample_random_hamiltonian(&spectrum, &mut rng).unwrap();
        let layout = RegisterLayout::new(4, 2).unwrap();
        let states: Vec<PureState> = (0..4)
            .map(|_| {
                PureState::new(crate::linalg::haar_random_unit_vector(4, &mut rng)).unwrap()
            })
            .collect();
        let pop = QuantumPopulation::from_register_states(layout, &states).unwrap();

        let (keep, swap) = comparator_label_kraus(h.eigenvalues());
        let channel = KrausChannel::new(vec![keep, swap]).unwrap();
        for (a, b) in [(0usize, 1usize), (1, 3), (0, 2)] {
            let fused =
                apply_label_comparator(pop.state(), &layout, h.eigenvalues(), a, b).unwrap();
            let targets = layout.register_pair_qubits(a, b).unwrap();
            let kraus = apply_channel_on(pop.state(), &channel, &targets).unwrap();
            assert!(fused.matrix().approx_eq(kraus.matrix(), 1e-12));
        }
    }

    #[test]
    fn eigenbasis_fast_sort_matches_direct_channel_sequence() {
        // Dual route: rotated sparse network against applying the dressed
        // pair channel comparator by comparator.
        let mut rng = DetRng::from_u64(19);
        let h = sample_random_hamiltonian(&[0.0, 1.0, 2.0, 3.0], &mut rng).unwrap();
        let layout = RegisterLayout::new(4, 2).unwrap();
        let states: Vec<PureState> = (0..4)
            .map(|_| {
                PureState::new(crate::linalg::haar_random_unit_vector(4, &mut rng)).unwrap()
            })
            .collect();
        let pop = QuantumPopulation::from_register_states(layout, &states).unwrap();

        let fast = sort_population(&pop, &h).unwrap();

        let channel = comparator_pair_channel(&h).unwrap();
        let mut state = pop.state().clone();
        for &(a, b) in &sorting_network(4) {
            let targets = layout.register_pair_qubits(a, b).unwrap();
            state = apply_channel_on(&state, &channel, &targets).unwrap();
        }
        assert!(fast.state().matrix().approx_eq(state.matrix(), 1e-11));
    }

    #[test]
    fn embedded_comparator_matches_pair_channel_route() {
        // Dual route: the spec-level full-space channel against the local
        // application used by the engine.
        let mut rng = DetRng::from_u64(7);
        let h = sample_random_hamiltonian(&[0.0, 1.0, 2.0, 3.0], &mut rng).unwrap();
        let layout = RegisterLayout::new(4, 2).unwrap();
        let states: Vec<PureState> = (0..4)
            .map(|_| {
                PureState::new(crate::linalg::haar_random_unit_vector(4, &mut rng)).unwrap()
            })
            .collect();
        let pop = QuantumPopulation::from_register_states(layout, &states).unwrap();

        let full = comparator_channel(&h, 1, 3, &layout).unwrap();
        let dense = crate::quantum::apply_channel(pop.state(), &full).unwrap();

        let pair = comparator_pair_channel(&h).unwrap();
        let targets = layout.register_pair_qubits(1, 3).unwrap();
        let local = apply_channel_on(pop.state(), &pair, &targets).unwrap();

        assert!(dense.matrix().approx_eq(local.matrix(), 1e-10));
    }
}
