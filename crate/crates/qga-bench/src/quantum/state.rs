//! Pure states and density matrices.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::quantum::index::TargetIndexer;
use crate::tolerance::{TOL_SPECTRAL, TOL_STATE_NORM, TOL_STRUCTURAL};
use num_complex::Complex64;

/// Normalized state vector over a power-of-two dimension.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates unit norm within [`TOL_STATE_NORM`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_power_of_two(amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TOL_STATE_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Normalize and wrap; errors on (near-)zero input.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_power_of_two(amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-150 {
            return Err(Error::NotNormalized { norm });
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(Self { amplitudes })
    }

    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(&a, &b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amplitudes {
            for &b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        PureState { amplitudes }
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

/// Density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validating constructor for externally supplied matrices.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dm = Self::from_matrix_unchecked(matrix)?;
        dm.validate()?;
        Ok(dm)
    }

    /// Shape-checked wrap without the structural checks; used internally
    /// where the channel algebra guarantees validity. The full checks run
    /// in [`DensityMatrix::validate`].
    pub fn from_matrix_unchecked(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        check_power_of_two(matrix.rows())?;
        Ok(Self { matrix })
    }

    pub fn from_pure(state: &PureState) -> Self {
        Self {
            matrix: state.projector(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Structural invariants: Hermitian and unit trace within
    /// [`TOL_STRUCTURAL`], smallest eigenvalue at least -[`TOL_SPECTRAL`]
    /// (checked by Cholesky factorization of rho + slack*I).
    pub fn validate(&self) -> Result<()> {
        let dev = self.matrix.hermiticity_deviation();
        if dev > TOL_STRUCTURAL {
            return Err(Error::NotHermitian { max_dev: dev });
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > TOL_STRUCTURAL || tr.im.abs() > TOL_STRUCTURAL {
            return Err(Error::NotUnitTrace { trace: tr.re });
        }
        if !self.matrix.hermitized().psd_within(TOL_SPECTRAL) {
            return Err(Error::NotPositiveSemidefinite { slack: TOL_SPECTRAL });
        }
        Ok(())
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// Fidelity <u|rho|u> to a pure state.
    pub fn fidelity_to_pure(&self, u: &PureState) -> Result<f64> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.dim(),
            });
        }
        let amps = u.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..self.dim() {
            let row = self.matrix.row(r);
            let mut inner = Complex64::new(0.0, 0.0);
            for (c, &a) in amps.iter().enumerate() {
                inner += row[c] * a;
            }
            acc += amps[r].conj() * inner;
        }
        Ok(acc.re)
    }

    /// Expectation value Tr[H rho] of a Hermitian observable.
    pub fn expectation(&self, h: &ComplexMatrix) -> Result<f64> {
        if h.rows() != self.dim() || h.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: h.rows(),
            });
        }
        // Tr[H rho] = sum_{r,c} H[r,c] rho[c,r]
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..self.dim() {
            let h_row = h.row(r);
            for c in 0..self.dim() {
                acc += h_row[c] * self.matrix[(c, r)];
            }
        }
        Ok(acc.re)
    }

    /// Reduced density matrix over `keep`, with kept qubits in their
    /// original relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }
}

/// Partial trace keeping `keep` (a set; original relative order is
/// preserved regardless of the order given here).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    let idx = TargetIndexer::new(n, &keep_sorted)?;

    let dim_out = idx.op_dim;
    let mut out = ComplexMatrix::zeros(dim_out, dim_out);
    for a in 0..dim_out {
        let pa = idx.target_place[a];
        for b in 0..dim_out {
            let pb = idx.target_place[b];
            let mut acc = Complex64::new(0.0, 0.0);
            for &s in &idx.spectator_place {
                acc += rho.matrix()[(pa | s, pb | s)];
            }
            out[(a, b)] = acc;
        }
    }
    DensityMatrix::from_matrix_unchecked(out)
}

fn check_power_of_two(dim: usize) -> Result<()> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "dimension {dim} is not a power of two"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_random_unitary, haar_random_unit_vector};
    use crate::rng::DetRng;

    fn random_density(dim: usize, rng: &mut DetRng) -> DensityMatrix {
        // Mix of three random pure states.
        let mut m = ComplexMatrix::zeros(dim, dim);
        let w = [0.5, 0.3, 0.2];
        for &weight in &w {
            let v = haar_random_unit_vector(dim, rng);
            m.add_scaled_assign(weight, &ComplexMatrix::outer(&v, &v));
        }
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn trace_out_factor_of_product_state() {
        let mut rng = DetRng::from_u64(7);
        let a = random_density(2, &mut rng);
        let b = random_density(2, &mut rng);
        let joint = a.tensor(&b);
        let ta = joint.partial_trace(&[0]).unwrap();
        assert!(ta.matrix().approx_eq(a.matrix(), 1e-10));
        let tb = joint.partial_trace(&[1]).unwrap();
        assert!(tb.matrix().approx_eq(b.matrix(), 1e-10));
    }

    #[test]
    fn bell_state_marginal_is_maximally_mixed() {
        // Expanding the 4x4 projector of (|00> + |11>)/sqrt(2) and summing
        // the 2x2 blocks gives I/2.
        let s = 0.5f64.sqrt();
        let bell = PureState::new(vec![
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
        ])
        .unwrap();
        let rho = DensityMatrix::from_pure(&bell);
        let reduced = rho.partial_trace(&[0]).unwrap();
        assert!(reduced
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(2).matrix(), 1e-12));
    }

    #[test]
    fn keep_all_is_identity() {
        let mut rng = DetRng::from_u64(8);
        let rho = random_density(4, &mut rng);
        let same = rho.partial_trace(&[0, 1]).unwrap();
        assert!(same.matrix().approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = DetRng::from_u64(9);
        let rho = random_density(8, &mut rng);
        let reduced = rho.partial_trace(&[2]).unwrap();
        assert!((reduced.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_keep_index() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            rho.partial_trace(&[2]),
            Err(Error::QubitIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn fidelity_cases() {
        let u = PureState::basis_state(4, 1);
        let rho = DensityMatrix::from_pure(&u);
        assert!((rho.fidelity_to_pure(&u).unwrap() - 1.0).abs() < 1e-12);
        let v = PureState::basis_state(4, 2);
        assert!(rho.fidelity_to_pure(&v).unwrap().abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!((mixed.fidelity_to_pure(&u).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn expectation_of_maximally_mixed() {
        let h = ComplexMatrix::diagonal(&[0.0, 1.0, 2.0, 3.0]);
        let rho = DensityMatrix::maximally_mixed(4);
        assert!((rho.expectation(&h).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_real_for_hermitian_pair() {
        let mut rng = DetRng::from_u64(10);
        let rho = random_density(4, &mut rng);
        let g = haar_random_unitary(4, &mut rng);
        let h = g.add(&g.dagger()).scale_real(0.5);
        // Cross-check against the dense trace of the product.
        let direct = h.mul(rho.matrix()).trace();
        let fast = rho.expectation(&h).unwrap();
        assert!((direct.re - fast).abs() < 1e-12);
        assert!(direct.im.abs() < 1e-10);
    }

    #[test]
    fn validate_rejects_bad_matrices() {
        let mut m = ComplexMatrix::diagonal(&[0.5, 0.5]);
        m[(0, 1)] = Complex64::new(0.2, 0.0);
        assert!(DensityMatrix::new(m).is_err()); // not Hermitian

        let m = ComplexMatrix::diagonal(&[0.9, 0.9]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotUnitTrace { .. })
        ));

        let m = ComplexMatrix::diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn pure_state_norm_enforced() {
        let bad = vec![Complex64::new(0.9, 0.0), Complex64::new(0.0, 0.0)];
        assert!(PureState::new(bad.clone()).is_err());
        let fixed = PureState::normalized(bad).unwrap();
        assert!((fixed.amplitudes()[0].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_partial_trace_roundtrip_many() {
        let mut rng = DetRng::from_u64(12);
        for _ in 0..20 {
            let a = random_density(4, &mut rng);
            let b = random_density(2, &mut rng);
            let joint = a.tensor(&b);
            let ra = joint.partial_trace(&[0, 1]).unwrap();
            assert!(ra.matrix().approx_eq(a.matrix(), 1e-10));
        }
    }
}
