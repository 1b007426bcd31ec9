//! Register layout of the quantum population.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::Range;

/// `n` registers of `c` qubits each, register-major qubit order; register
/// `r` owns qubits `r*c .. (r+1)*c`. Registers are 0-indexed.
///
/// The population algorithm requires `n` divisible by four (half is
/// discarded, and crossover pairs the cloned half) and even `c` (crossover
/// swaps half of each register).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    n_registers: usize,
    qubits_per_register: usize,
}

impl RegisterLayout {
    pub fn new(n_registers: usize, qubits_per_register: usize) -> Result<Self> {
        if n_registers == 0 || n_registers % 4 != 0 {
            return Err(Error::InvalidLayout(format!(
                "register count {n_registers} must be a positive multiple of four"
            )));
        }
        if qubits_per_register == 0 || qubits_per_register % 2 != 0 {
            return Err(Error::InvalidLayout(format!(
                "qubits per register {qubits_per_register} must be positive and even"
            )));
        }
        Ok(Self {
            n_registers,
            qubits_per_register,
        })
    }

    pub fn n_registers(&self) -> usize {
        self.n_registers
    }

    pub fn qubits_per_register(&self) -> usize {
        self.qubits_per_register
    }

    pub fn total_qubits(&self) -> usize {
        self.n_registers * self.qubits_per_register
    }

    /// Full Hilbert-space dimension 2^(n*c).
    pub fn dim(&self) -> usize {
        1usize << self.total_qubits()
    }

    /// Dimension 2^c of a single register.
    pub fn register_dim(&self) -> usize {
        1usize << self.qubits_per_register
    }

    pub fn register_qubits(&self, register: usize) -> Result<Range<usize>> {
        if register >= self.n_registers {
            return Err(Error::RegisterIndexOutOfRange {
                index: register,
                total: self.n_registers,
            });
        }
        let start = register * self.qubits_per_register;
        Ok(start..start + self.qubits_per_register)
    }

    /// Qubits of a register pair, source first, as a flat target list.
    pub fn register_pair_qubits(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let mut qubits: Vec<usize> = self.register_qubits(a)?.collect();
        qubits.extend(self.register_qubits(b)?);
        Ok(qubits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_layout() {
        let l = RegisterLayout::new(4, 2).unwrap();
        assert_eq!(l.total_qubits(), 8);
        assert_eq!(l.dim(), 256);
        assert_eq!(l.register_dim(), 4);
        assert_eq!(l.register_qubits(2).unwrap(), 4..6);
        assert_eq!(l.register_pair_qubits(0, 2).unwrap(), vec![0, 1, 4, 5]);
    }

    #[test]
    fn rejects_invalid_layouts() {
        assert!(RegisterLayout::new(3, 2).is_err());
        assert!(RegisterLayout::new(4, 3).is_err());
        assert!(RegisterLayout::new(0, 2).is_err());
        assert!(RegisterLayout::new(8, 2).is_ok());
    }

    #[test]
    fn register_index_bounds() {
        let l = RegisterLayout::new(4, 2).unwrap();
        assert!(l.register_qubits(4).is_err());
    }
}
