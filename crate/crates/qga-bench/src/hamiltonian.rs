//! Problem Hamiltonians: the optimization objective is finding the ground
//! state of a Hermitian matrix.
//!
//! Three sources are provided: the diagonal four-level Hamiltonian `H_C`,
//! the two-qubit hydrogen-molecule Hamiltonian `H_H2` (Bravyi-Kitaev Pauli
//! representation, entries in Hartree), and a fixed-spectrum random
//! ensemble whose members share integer eigenvalues but differ in a
//! Haar-random eigenbasis.

use crate::error::{Error, Result};
use crate::linalg::{eigh, haar_random_unitary, ComplexMatrix};
use crate::quantum::PureState;
use crate::rng::DetRng;
use crate::tolerance::TOL_STRUCTURAL;
use num_complex::Complex64;
use serde_json::{json, Value};

/// Hermitian objective with a cached ascending eigendecomposition.
#[derive(Debug, Clone)]
pub struct ProblemHamiltonian {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
    unit_label: String,
    seed_provenance: Option<u64>,
}

impl ProblemHamiltonian {
    /// Build from an explicit Hermitian matrix; the eigensystem is
    /// computed with the deterministic solver.
    pub fn from_matrix(matrix: ComplexMatrix, unit_label: &str) -> Result<Self> {
        let dec = eigh(&matrix)?;
        Ok(Self {
            matrix,
            eigenvalues: dec.eigenvalues,
            eigenvectors: dec.eigenvectors,
            unit_label: unit_label.to_string(),
            seed_provenance: None,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvector columns, ordered to match the eigenvalues.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|r| self.eigenvectors[(r, i)]).collect()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn ground_state(&self) -> PureState {
        PureState::new(self.eigenvector(0)).expect("eigenvector columns are unit norm")
    }

    pub fn unit_label(&self) -> &str {
        &self.unit_label
    }

    pub fn seed_provenance(&self) -> Option<u64> {
        self.seed_provenance
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix.max_offdiagonal_abs() <= TOL_STRUCTURAL
    }

    /// Residual of the cached eigensystem: max |H v_i - lambda_i v_i|.
    pub fn eigensystem_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            let v = self.eigenvector(i);
            let hv = self.matrix.mul_vec(&v);
            for (a, b) in hv.iter().zip(v.iter()) {
                worst = worst.max((a - b * self.eigenvalues[i]).norm());
            }
        }
        worst
    }

    /// JSON representation with complex entries as [re, im] pairs.
    pub fn to_json(&self) -> Value {
        let dim = self.dim();
        let rows: Vec<Value> = (0..dim)
            .map(|r| {
                Value::Array(
                    (0..dim)
                        .map(|c| {
                            let z = self.matrix[(r, c)];
                            json!([z.re, z.im])
                        })
                        .collect(),
                )
            })
            .collect();
        json!({
            "schema_version": 1,
            "unit_label": self.unit_label,
            "seed": self.seed_provenance,
            "matrix": rows,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("hamiltonian JSON never fails")
    }

    /// Reload a frozen Hamiltonian; the eigensystem is recomputed.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        let unit_label = v
            .get("unit_label")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Config("hamiltonian JSON missing unit_label".into()))?
            .to_string();
        let seed = v.get("seed").and_then(Value::as_u64);
        let rows = v
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Config("hamiltonian JSON missing matrix".into()))?;
        let dim = rows.len();
        let mut matrix = ComplexMatrix::zeros(dim, dim);
        for (r, row) in rows.iter().enumerate() {
            let cols = row
                .as_array()
                .filter(|cs| cs.len() == dim)
                .ok_or_else(|| Error::Config("hamiltonian JSON rows must be square".into()))?;
            for (c, entry) in cols.iter().enumerate() {
                let pair = entry
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Config("matrix entries must be [re, im]".into()))?;
                matrix[(r, c)] = Complex64::new(
                    pair[0].as_f64().unwrap_or(f64::NAN),
                    pair[1].as_f64().unwrap_or(f64::NAN),
                );
            }
        }
        let mut h = Self::from_matrix(matrix, &unit_label)?;
        h.seed_provenance = seed;
        Ok(h)
    }
}

/// Diagonal Hamiltonian diag(0, 1, 2, 3) in arbitrary units; its eigenbasis
/// is the computational basis and the ground state is |00>.
pub fn make_hc() -> ProblemHamiltonian {
    ProblemHamiltonian {
        matrix: ComplexMatrix::diagonal(&[0.0, 1.0, 2.0, 3.0]),
        eigenvalues: vec![0.0, 1.0, 2.0, 3.0],
        eigenvectors: ComplexMatrix::identity(4),
        unit_label: "a.u.".to_string(),
        seed_provenance: None,
    }
}

/// Hydrogen-molecule electronic Hamiltonian (Bravyi-Kitaev Pauli
/// representation) in Hartree: block-diagonal with blocks
/// [0.469], [[0.216, 0.181], [0.181, -1.361]], [0.676].
pub fn make_h2() -> ProblemHamiltonian {
    let matrix = ComplexMatrix::from_real_rows(&[
        vec![0.469, 0.0, 0.0, 0.0],
        vec![0.0, 0.216, 0.181, 0.0],
        vec![0.0, 0.181, -1.361, 0.0],
        vec![0.0, 0.0, 0.0, 0.676],
    ]);
    ProblemHamiltonian::from_matrix(matrix, "E_h").expect("H_H2 is Hermitian")
}

/// Random member of the fixed-spectrum ensemble:
/// `H = U diag(spectrum) U^dagger` with Haar-random `U`. The stored
/// eigenvectors are the columns of `U` (the spectrum must already ascend).
pub fn sample_random_hamiltonian(
    spectrum: &[f64],
    rng: &mut DetRng,
) -> Result<ProblemHamiltonian> {
    if spectrum.is_empty() {
        return Err(Error::EmptyInput("spectrum"));
    }
    if spectrum.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::SpectrumNotAscending);
    }
    let dim = spectrum.len();
    let u = haar_random_unitary(dim, rng);
    let d = ComplexMatrix::diagonal(spectrum);
    let matrix = u.mul(&d).mul(&u.dagger()).hermitized();
    Ok(ProblemHamiltonian {
        matrix,
        eigenvalues: spectrum.to_vec(),
        eigenvectors: u,
        unit_label: "a.u.".to_string(),
        seed_provenance: None,
    })
}

/// Same as [`sample_random_hamiltonian`] but records the seed used, for
/// provenance in frozen ensembles.
pub fn sample_random_hamiltonian_seeded(
    spectrum: &[f64],
    seed: u64,
) -> Result<ProblemHamiltonian> {
    let mut rng = DetRng::from_u64(seed);
    let mut h = sample_random_hamiltonian(spectrum, &mut rng)?;
    h.seed_provenance = Some(seed);
    Ok(h)
}
