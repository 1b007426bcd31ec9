//! The quantum population: one density matrix over all registers.

use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, PureState, RegisterLayout};

/// Joint state of `n` registers of `c` qubits.
#[derive(Debug, Clone)]
pub struct QuantumPopulation {
    layout: RegisterLayout,
    state: DensityMatrix,
}

impl QuantumPopulation {
    /// Product state from one pure state per register.
    pub fn from_register_states(layout: RegisterLayout, states: &[PureState]) -> Result<Self> {
        if states.len() != layout.n_registers() {
            return Err(Error::InvalidArgument(format!(
                "expected {} register states, got {}",
                layout.n_registers(),
                states.len()
            )));
        }
        for s in states {
            if s.dim() != layout.register_dim() {
                return Err(Error::DimensionMismatch {
                    expected: layout.register_dim(),
                    found: s.dim(),
                });
            }
        }
        let mut joint = states[0].clone();
        for s in &states[1..] {
            joint = joint.tensor(s);
        }
        Ok(Self {
            layout,
            state: DensityMatrix::from_pure(&joint),
        })
    }

    pub fn from_density(layout: RegisterLayout, state: DensityMatrix) -> Result<Self> {
        if state.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: state.dim(),
            });
        }
        Ok(Self { layout, state })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn into_state(self) -> DensityMatrix {
        self.state
    }

    /// Reduced state of one register.
    pub fn register_marginal(&self, register: usize) -> Result<DensityMatrix> {
        let qubits: Vec<usize> = self.layout.register_qubits(register)?.collect();
        self.state.partial_trace(&qubits)
    }

    pub(crate) fn with_state(&self, state: DensityMatrix) -> Self {
        Self {
            layout: self.layout,
            state,
        }
    }
}
