//! Small fixed gates used by the genetic-algorithm subroutines.

use crate::linalg::ComplexMatrix;
use num_complex::Complex64;

pub use crate::linalg::{pauli_x, pauli_y, pauli_z};

/// SWAP on two qubits.
pub fn swap_gate() -> ComplexMatrix {
    group_swap(1)
}

/// CNOT with the first listed qubit as control.
pub fn cnot() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    let one = Complex64::new(1.0, 0.0);
    m[(0, 0)] = one;
    m[(1, 1)] = one;
    m[(2, 3)] = one;
    m[(3, 2)] = one;
    m
}

/// Swap of two groups of `k` qubits: |x>|y> -> |y>|x> with x, y over k
/// bits. For k = 1 this is the ordinary SWAP.
pub fn group_swap(k: usize) -> ComplexMatrix {
    let half = 1usize << k;
    let dim = half * half;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for x in 0..half {
        for y in 0..half {
            m[(y * half + x, x * half + y)] = Complex64::new(1.0, 0.0);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_exchanges_basis_labels() {
        let sw = swap_gate();
        // |01> (index 1) -> |10> (index 2)
        assert!((sw[(2, 1)].re - 1.0).abs() < 1e-15);
        assert!((sw[(1, 2)].re - 1.0).abs() < 1e-15);
        assert!(sw.mul(&sw).approx_eq_default(&ComplexMatrix::identity(4)));
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let g = cnot();
        // |10> (index 2) -> |11> (index 3)
        assert!((g[(3, 2)].re - 1.0).abs() < 1e-15);
        assert!((g[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn group_swap_is_involution() {
        for k in 1..3 {
            let g = group_swap(k);
            let dim = g.rows();
            assert!(g.mul(&g).approx_eq_default(&ComplexMatrix::identity(dim)));
        }
    }
}
