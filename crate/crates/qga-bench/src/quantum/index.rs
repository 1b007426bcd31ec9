//! Bit bookkeeping for operators acting on a subset of qubits.

use crate::error::{Error, Result};

/// Precomputed index tables for an operator acting on `targets` inside an
/// `n_qubits` system.
///
/// `target_place[p]` scatters a k-bit pattern `p` (big-endian over the
/// operator's own qubits, in the listed target order) into a full basis
/// index; `spectator_place[s]` does the same for the remaining qubits in
/// ascending order. Any full index is `target_place[p] | spectator_place[s]`.
pub(crate) struct TargetIndexer {
    pub target_place: Vec<usize>,
    pub spectator_place: Vec<usize>,
    pub op_dim: usize,
}

impl TargetIndexer {
    pub fn new(n_qubits: usize, targets: &[usize]) -> Result<Self> {
        let k = targets.len();
        let mut seen = vec![false; n_qubits];
        for &t in targets {
            if t >= n_qubits {
                return Err(Error::QubitIndexOutOfRange {
                    index: t,
                    total: n_qubits,
                });
            }
            if seen[t] {
                return Err(Error::DuplicateQubitIndex { index: t });
            }
            seen[t] = true;
        }
        let spectators: Vec<usize> = (0..n_qubits).filter(|q| !seen[*q]).collect();

        let target_place = place_table(n_qubits, targets);
        let spectator_place = place_table(n_qubits, &spectators);
        Ok(Self {
            target_place,
            spectator_place,
            op_dim: 1 << k,
        })
    }

}

/// For every pattern over `positions` (big-endian in the listed order),
/// the full index with those bits placed and all others zero.
fn place_table(n_qubits: usize, positions: &[usize]) -> Vec<usize> {
    let k = positions.len();
    let mut table = vec![0usize; 1 << k];
    for (pattern, slot) in table.iter_mut().enumerate() {
        let mut idx = 0usize;
        for (j, &q) in positions.iter().enumerate() {
            if (pattern >> (k - 1 - j)) & 1 == 1 {
                idx |= 1 << (n_qubits - 1 - q);
            }
        }
        *slot = idx;
    }
    table
}

/// Insert bit `b` for qubit `q` into an index over `n_qubits - 1` qubits,
/// producing an index over `n_qubits` qubits.
pub(crate) fn insert_bit(reduced: usize, n_qubits: usize, q: usize, b: usize) -> usize {
    insert_bits(reduced, n_qubits, q, 1, b)
}

/// Insert a `count`-bit block `bits` at qubit position `start` into an
/// index over `n_qubits - count` qubits.
pub(crate) fn insert_bits(
    reduced: usize,
    n_qubits: usize,
    start: usize,
    count: usize,
    bits: usize,
) -> usize {
    let low_bits = n_qubits - start - count;
    let high = reduced >> low_bits;
    let low = reduced & ((1 << low_bits) - 1);
    (high << (low_bits + count)) | (bits << low_bits) | low
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn place_tables_cover_all_indices() {
        let idx = TargetIndexer::new(3, &[2, 0]).unwrap();
        let mut seen = vec![false; 8];
        for &t in &idx.target_place {
            for &s in &idx.spectator_place {
                assert!(!seen[t | s]);
                seen[t | s] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn target_order_defines_operator_bits() {
        // targets (2, 0) in a 3-qubit system: operator bit 0 (most
        // significant of the op space) lives on system qubit 2 (least
        // significant of the full index).
        let idx = TargetIndexer::new(3, &[2, 0]).unwrap();
        assert_eq!(idx.target_place[0b10], 0b001);
        assert_eq!(idx.target_place[0b01], 0b100);
    }

    #[test]
    fn rejects_bad_targets() {
        assert!(TargetIndexer::new(2, &[0, 2]).is_err());
        assert!(TargetIndexer::new(2, &[1, 1]).is_err());
    }

    #[test]
    fn insert_bit_roundtrip() {
        // 3 qubits, drop qubit 1 then re-insert.
        for full in 0..8usize {
            let b = (full >> 1) & 1;
            let high = full >> 2;
            let low = full & 1;
            let reduced = (high << 1) | low;
            assert_eq!(insert_bit(reduced, 3, 1, b), full);
        }
    }
}
