//! Dense complex linear algebra for small multi-qubit systems.

mod eigen;
mod matrix;
mod random;

pub use eigen::{eigh, min_eigenvalue, EighResult};
pub use matrix::{pauli_x, pauli_y, pauli_z, ComplexMatrix};
pub use random::{haar_random_unitary, haar_random_unit_vector};
