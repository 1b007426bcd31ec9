//! Embedding operators on qubit subsets and applying them efficiently.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::quantum::index::TargetIndexer;
use num_complex::Complex64;

/// Embed `op` so it acts on `target_qubits` (in the listed order: the k-th
/// qubit of `op` lands on `target_qubits[k]`) and as identity elsewhere.
pub fn embed_operator(
    op: &ComplexMatrix,
    n_qubits: usize,
    target_qubits: &[usize],
) -> Result<ComplexMatrix> {
    let idx = TargetIndexer::new(n_qubits, target_qubits)?;
    if op.rows() != idx.op_dim || op.cols() != idx.op_dim {
        return Err(Error::DimensionMismatch {
            expected: idx.op_dim,
            found: op.rows(),
        });
    }
    let dim = 1 << n_qubits;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for a in 0..idx.op_dim {
        for b in 0..idx.op_dim {
            let v = op[(a, b)];
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            for &s in &idx.spectator_place {
                out[(idx.target_place[a] | s, idx.target_place[b] | s)] = v;
            }
        }
    }
    Ok(out)
}

/// `op_embedded * m` without materializing the embedded operator. Skips
/// exact-zero operator entries, which makes the comparator, cloning and
/// Pauli operators cheap to apply.
pub(crate) fn apply_left_on(
    op: &ComplexMatrix,
    idx: &TargetIndexer,
    m: &ComplexMatrix,
) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    apply_left_accumulate(op, idx, m, &mut out);
    out
}

/// `out += op_embedded * m`; the accumulation core of [`apply_left_on`].
///
/// Grouped by output row: each destination row is written in a single
/// streaming pass accumulating all of the operator row's nonzero sources,
/// which keeps the loop memory-bound on one store stream.
pub(crate) fn apply_left_accumulate(
    op: &ComplexMatrix,
    idx: &TargetIndexer,
    m: &ComplexMatrix,
    out: &mut ComplexMatrix,
) {
    let cols = m.cols();
    let mut row_nonzeros: Vec<(usize, Complex64)> = Vec::with_capacity(idx.op_dim);
    for a in 0..idx.op_dim {
        row_nonzeros.clear();
        for b in 0..idx.op_dim {
            let v = op[(a, b)];
            if v.re != 0.0 || v.im != 0.0 {
                row_nonzeros.push((idx.target_place[b], v));
            }
        }
        if row_nonzeros.is_empty() {
            continue;
        }
        let ta = idx.target_place[a];
        for &s in &idx.spectator_place {
            let row_out = (ta | s) * cols;
            // out and m are distinct matrices, so the rows never alias.
            let dst = &mut out.data_mut()[row_out..row_out + cols];
            let mut chunks = row_nonzeros.chunks_exact(2);
            for pair in &mut chunks {
                let (tb0, v0) = pair[0];
                let (tb1, v1) = pair[1];
                let src0 = &m.data()[(tb0 | s) * cols..(tb0 | s) * cols + cols];
                let src1 = &m.data()[(tb1 | s) * cols..(tb1 | s) * cols + cols];
                axpy2(dst, v0, src0, v1, src1);
            }
            if let [(tb, v)] = chunks.remainder() {
                let src = &m.data()[(tb | s) * cols..(tb | s) * cols + cols];
                axpy1(dst, *v, src);
            }
        }
    }
}

#[inline]
fn axpy1(dst: &mut [Complex64], v: Complex64, src: &[Complex64]) {
    for (o, &x) in dst.iter_mut().zip(src) {
        let re = v.re * x.re - v.im * x.im;
        let im = v.re * x.im + v.im * x.re;
        o.re += re;
        o.im += im;
    }
}

#[inline]
fn axpy2(dst: &mut [Complex64], v0: Complex64, src0: &[Complex64], v1: Complex64, src1: &[Complex64]) {
    for ((o, &x0), &x1) in dst.iter_mut().zip(src0).zip(src1) {
        let re = v0.re * x0.re - v0.im * x0.im + v1.re * x1.re - v1.im * x1.im;
        let im = v0.re * x0.im + v0.im * x0.re + v1.re * x1.im + v1.im * x1.re;
        o.re += re;
        o.im += im;
    }
}

/// `op_embedded * m`, public wrapper with validation.
pub fn apply_operator_on(
    op: &ComplexMatrix,
    n_qubits: usize,
    target_qubits: &[usize],
    m: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let idx = TargetIndexer::new(n_qubits, target_qubits)?;
    check_op_dims(op, &idx, m, n_qubits)?;
    Ok(apply_left_on(op, &idx, m))
}

/// `op_embedded * m * op_embedded^dagger` for Hermitian `m`.
///
/// Uses (K m)^dagger = m K^dagger, so the conjugation is two sparse left
/// applications and one transpose copy.
pub fn conjugate_by_operator_on(
    op: &ComplexMatrix,
    n_qubits: usize,
    target_qubits: &[usize],
    m: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let idx = TargetIndexer::new(n_qubits, target_qubits)?;
    check_op_dims(op, &idx, m, n_qubits)?;
    Ok(conjugate_on(op, &idx, m))
}

pub(crate) fn conjugate_on(
    op: &ComplexMatrix,
    idx: &TargetIndexer,
    m: &ComplexMatrix,
) -> ComplexMatrix {
    let mut ws = ConjugationWorkspace::new(m.rows());
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    conjugate_accumulate(op, idx, m, &mut ws, &mut out);
    out
}

/// Scratch buffers reused across Kraus terms to keep the channel loop free
/// of per-term allocations.
pub(crate) struct ConjugationWorkspace {
    km: ComplexMatrix,
    mk: ComplexMatrix,
}

impl ConjugationWorkspace {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            km: ComplexMatrix::zeros(dim, dim),
            mk: ComplexMatrix::zeros(dim, dim),
        }
    }
}

/// `out += K_emb m K_emb^dagger` for Hermitian `m`.
pub(crate) fn conjugate_accumulate(
    op: &ComplexMatrix,
    idx: &TargetIndexer,
    m: &ComplexMatrix,
    ws: &mut ConjugationWorkspace,
    out: &mut ComplexMatrix,
) {
    ws.km.fill_zero();
    apply_left_accumulate(op, idx, m, &mut ws.km);
    ws.km.dagger_into(&mut ws.mk);
    apply_left_accumulate(op, idx, &ws.mk, out);
}

fn check_op_dims(
    op: &ComplexMatrix,
    idx: &TargetIndexer,
    m: &ComplexMatrix,
    n_qubits: usize,
) -> Result<()> {
    if op.rows() != idx.op_dim || op.cols() != idx.op_dim {
        return Err(Error::DimensionMismatch {
            expected: idx.op_dim,
            found: op.rows(),
        });
    }
    let dim = 1usize << n_qubits;
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.rows(),
        });
    }
    Ok(())
}

/// Brute-force oracle used in tests: permutation action on basis states.
#[cfg(test)]
pub(crate) fn embed_permutation_oracle(
    n_qubits: usize,
    perm: impl Fn(usize) -> usize,
) -> ComplexMatrix {
    let dim = 1 << n_qubits;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for b in 0..dim {
        m[(perm(b), b)] = Complex64::new(1.0, 0.0);
    }
    m
}
