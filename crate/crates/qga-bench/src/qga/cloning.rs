//! The two pseudo-cloning machines.
//!
//! BCQO (biomimetic cloning of a quantum observable) copies the statistics
//! of a fixed basis exactly: a transversal chain of CNOTs in the cloning
//! basis. Superpositions become entangled with the copy instead of being
//! duplicated.
//!
//! UQCM (Buzek-Hillery universal cloning) is the symmetric d-dimensional
//! 1 -> 2 cloner: rho -> (2d/(d+1)) P_sym (rho kron I/d) P_sym with P_sym
//! the projector onto the symmetric subspace of the register pair. Both
//! clones have state-independent fidelity 1/2 + 1/(d+1) on pure inputs.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::qga::QuantumPopulation;
use crate::quantum::{apply_channel_on, KrausChannel};
use crate::tolerance::TOL_BLANK_REGISTER;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Basis in which BCQO copies statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CloningBasis {
    /// Computational basis (the default; matches the bit-string baseline
    /// on diagonal Hamiltonians).
    Computational,
    /// Eigenbasis of the problem Hamiltonian.
    HamiltonianEigenbasis,
}

/// Whether the UQCM clones whole registers or qubit-by-qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UqcmGranularity {
    /// One d = 2^c dimensional cloner per register pair.
    Register,
    /// A qubit cloner on each (src qubit k, dst qubit k) pair.
    Qubit,
}

/// BCQO unitary on a register pair (2c qubits): |b>|0> -> |b>|b> for every
/// cloning-basis state |b>. In the computational basis this is the
/// permutation |s>|t> -> |s>|t xor s>; for a general basis V the chain is
/// conjugated by V kron V.
pub fn bcqo_pair_unitary(qubits_per_register: usize, basis: Option<&ComplexMatrix>) -> ComplexMatrix {
    let d = 1usize << qubits_per_register;
    let dim = d * d;
    let mut u = ComplexMatrix::zeros(dim, dim);
    for s in 0..d {
        for t in 0..d {
            u[(s * d + (t ^ s), s * d + t)] = Complex64::new(1.0, 0.0);
        }
    }
    match basis {
        None => u,
        Some(v) => {
            let vv = v.kron(v);
            vv.mul(&u).mul(&vv.dagger())
        }
    }
}

/// Projector onto the symmetric subspace of a d x d pair: (I + SWAP)/2.
pub fn symmetric_projector(d: usize) -> ComplexMatrix {
    let dim = d * d;
    let mut psym = ComplexMatrix::zeros(dim, dim);
    for a in 0..d {
        for b in 0..d {
            psym[(a * d + b, a * d + b)] += Complex64::new(0.5, 0.0);
            psym[(b * d + a, a * d + b)] += Complex64::new(0.5, 0.0);
        }
    }
    psym
}

/// UQCM channel on a register pair of local dimension `d`: the d^2 Kraus
/// operators K_{m,l} = sqrt(2/(d+1)) P_sym (I kron |l><m|). The <m| leg
/// discards whatever the destination held, so trace preservation holds on
/// the whole pair space, not only on blank destinations.
pub fn uqcm_pair_channel(d: usize) -> Result<KrausChannel> {
    let dim = d * d;
    let psym = symmetric_projector(d);
    let scale = (2.0 / (d as f64 + 1.0)).sqrt();
    let mut ops = Vec::with_capacity(dim);
    for m in 0..d {
        for l in 0..d {
            let mut k = ComplexMatrix::zeros(dim, dim);
            // Column (i, m) of (I kron |l><m|) is the basis vector (i, l);
            // apply P_sym to it.
            for i in 0..d {
                let col = i * d + m;
                let src = i * d + l;
                for row in 0..dim {
                    let v = psym[(row, src)];
                    if v.re != 0.0 || v.im != 0.0 {
                        k[(row, col)] = v * scale;
                    }
                }
            }
            ops.push(k);
        }
    }
    KrausChannel::new(ops)
}

fn check_destination_blank(pop: &QuantumPopulation, dst: usize) -> Result<()> {
    let marginal = pop.register_marginal(dst)?;
    let fidelity = marginal.matrix()[(0, 0)].re;
    if fidelity < 1.0 - TOL_BLANK_REGISTER {
        return Err(Error::RegisterNotBlank { fidelity });
    }
    Ok(())
}

/// Clone register `src` into the blank register `dst` with BCQO.
pub fn clone_bcqo(
    pop: &QuantumPopulation,
    src: usize,
    dst: usize,
    basis: Option<&ComplexMatrix>,
) -> Result<QuantumPopulation> {
    check_destination_blank(pop, dst)?;
    let layout = *pop.layout();
    let u = bcqo_pair_unitary(layout.qubits_per_register(), basis);
    let targets = layout.register_pair_qubits(src, dst)?;
    let ch = KrausChannel::from_unitary(u)?;
    let state = apply_channel_on(pop.state(), &ch, &targets)?;
    Ok(pop.with_state(state))
}

/// Clone register `src` into the blank register `dst` with the UQCM.
pub fn clone_uqcm(
    pop: &QuantumPopulation,
    src: usize,
    dst: usize,
    granularity: UqcmGranularity,
) -> Result<QuantumPopulation> {
    check_destination_blank(pop, dst)?;
    let layout = *pop.layout();
    match granularity {
        UqcmGranularity::Register => uqcm_clone_structural(pop, src, dst),
        UqcmGranularity::Qubit => {
            let ch = uqcm_pair_channel(2)?;
            let src_qubits: Vec<usize> = layout.register_qubits(src)?.collect();
            let dst_qubits: Vec<usize> = layout.register_qubits(dst)?.collect();
            let mut state = pop.state().clone();
            for (sq, dq) in src_qubits.into_iter().zip(dst_qubits) {
                state = apply_channel_on(&state, &ch, &[sq, dq])?;
            }
            Ok(pop.with_state(state))
        }
    }
}

/// Register-level UQCM evaluated through its structure,
/// rho -> (2d/(d+1)) P_sym (Tr_dst[rho] kron I/d) P_sym,
/// which needs one sparse conjugation instead of d^2 Kraus terms. Agrees
/// with [`uqcm_pair_channel`] exactly (see the dual-route test).
fn uqcm_clone_structural(
    pop: &QuantumPopulation,
    src: usize,
    dst: usize,
) -> Result<QuantumPopulation> {
    use crate::quantum::{conjugate_by_operator_on, insert_bits, DensityMatrix};

    let layout = *pop.layout();
    let c = layout.qubits_per_register();
    let d = layout.register_dim();
    let n = layout.total_qubits();
    let dim = layout.dim();
    let dst_start = dst * c;

    let keep: Vec<usize> = (0..n)
        .filter(|q| !(dst_start..dst_start + c).contains(q))
        .collect();
    let reduced = pop.state().partial_trace(&keep)?;
    let rdim = dim >> c;

    let mut mixed = ComplexMatrix::zeros(dim, dim);
    let weight = 1.0 / d as f64;
    for rx in 0..rdim {
        for ry in 0..rdim {
            let v = reduced.matrix()[(rx, ry)] * weight;
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            for b in 0..d {
                let fx = insert_bits(rx, n, dst_start, c, b);
                let fy = insert_bits(ry, n, dst_start, c, b);
                mixed[(fx, fy)] = v;
            }
        }
    }

    let psym = symmetric_projector(d);
    let targets = layout.register_pair_qubits(src, dst)?;
    let projected = conjugate_by_operator_on(&psym, n, &targets, &mixed)?;
    let state =
        DensityMatrix::from_matrix_unchecked(projected.scale_real(2.0 * d as f64 / (d as f64 + 1.0)))?;
    Ok(pop.with_state(state))
}
