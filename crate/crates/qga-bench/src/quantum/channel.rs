//! Kraus channels: completely positive trace-preserving maps.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::quantum::index::TargetIndexer;
use crate::quantum::{embed, DensityMatrix};
use crate::tolerance::TOL_STRUCTURAL;

/// A CPTP map given by Kraus operators; completeness
/// `sum_k K_k^dagger K_k = I` is enforced at construction.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::EmptyInput("Kraus operator list"));
        }
        let dim = operators[0].rows();
        for op in &operators {
            if !op.is_square() || op.rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: op.rows(),
                });
            }
        }
        let ch = Self { dim, operators };
        let deviation = ch.completeness_deviation();
        if deviation > TOL_STRUCTURAL {
            return Err(Error::KrausIncomplete { deviation });
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            operators: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Single unitary as a channel. Validates unitarity via completeness.
    pub fn from_unitary(u: ComplexMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    /// Single-qubit Pauli mutation channel
    /// rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z).
    pub fn pauli_mutation(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "mutation probability {p} outside [0, 1]"
            )));
        }
        let keep = (1.0 - p).sqrt();
        let flip = (p / 3.0).sqrt();
        Self::new(vec![
            ComplexMatrix::identity(2).scale_real(keep),
            crate::linalg::pauli_x().scale_real(flip),
            crate::linalg::pauli_y().scale_real(flip),
            crate::linalg::pauli_z().scale_real(flip),
        ])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// Max-entry deviation of `sum_k K_k^dagger K_k` from the identity.
    pub fn completeness_deviation(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.operators {
            acc = acc.add(&k.dagger().mul(k));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }
}

/// Apply a channel acting on the full space: rho' = sum_k K_k rho K_k^dagger.
pub fn apply_channel(rho: &DensityMatrix, ch: &KrausChannel) -> Result<DensityMatrix> {
    if ch.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: ch.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for k in ch.operators() {
        let km = k.mul(rho.matrix());
        out = out.add(&km.mul(&k.dagger()));
    }
    DensityMatrix::from_matrix_unchecked(out)
}

/// Apply a channel defined on a qubit subset, identity elsewhere. The k-th
/// qubit of the channel's space acts on `targets[k]`.
pub fn apply_channel_on(
    rho: &DensityMatrix,
    ch: &KrausChannel,
    targets: &[usize],
) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    let idx = TargetIndexer::new(n, targets)?;
    if idx.op_dim != ch.dim() {
        return Err(Error::DimensionMismatch {
            expected: idx.op_dim,
            found: ch.dim(),
        });
    }
    let dim = rho.dim();
    let mut ws = embed::ConjugationWorkspace::new(dim);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for k in ch.operators() {
        embed::conjugate_accumulate(k, &idx, rho.matrix(), &mut ws, &mut out);
    }
    DensityMatrix::from_matrix_unchecked(out)
}

/// Kraus insertion helper used in tests to assemble random CPTP channels:
/// normalizes arbitrary operator lists G_k into K_k = G_k S^{-1/2} with
/// S = sum G^dagger G.
#[cfg(test)]
pub(crate) fn normalize_kraus(gs: Vec<ComplexMatrix>) -> KrausChannel {
    use crate::linalg::eigh;
    use num_complex::Complex64;
    let dim = gs[0].rows();
    let mut s = ComplexMatrix::zeros(dim, dim);
    for g in &gs {
        s = s.add(&g.dagger().mul(g));
    }
    let dec = eigh(&s.hermitized()).unwrap();
    // S^{-1/2} = V diag(1/sqrt(lambda)) V^dagger
    let n = dim;
    let v = &dec.eigenvectors;
    let inv_sqrt = ComplexMatrix::from_fn(n, n, |r, c| {
        (0..n)
            .map(|k| v[(r, k)] * (1.0 / dec.eigenvalues[k].sqrt()) * v[(c, k)].conj())
            .sum::<Complex64>()
    });
    KrausChannel::new(gs.into_iter().map(|g| g.mul(&inv_sqrt)).collect()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_random_unitary, haar_random_unit_vector};
    use crate::quantum::PureState;
    use crate::rng::DetRng;
    use num_complex::Complex64;

    #[test]
    fn identity_channel_preserves_state() {
        let mut rng = DetRng::from_u64(1);
        let v = haar_random_unit_vector(4, &mut rng);
        let rho = DensityMatrix::from_pure(&PureState::new(v).unwrap());
        let out = apply_channel(&rho, &KrausChannel::identity(4)).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 1e-14));
    }

    #[test]
    fn full_depolarizing_sends_zero_to_maximally_mixed() {
        // Kraus {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z} with
        // p = 3/4 on |0><0|: expanding the four conjugations by hand gives
        // I/2.
        let ch = KrausChannel::pauli_mutation(0.75).unwrap();
        let rho = DensityMatrix::from_pure(&PureState::basis_state(2, 0));
        let out = apply_channel(&rho, &ch).unwrap();
        assert!(out
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(2).matrix(), 1e-12));
    }

    #[test]
    fn random_channels_preserve_trace_and_hermiticity() {
        let mut rng = DetRng::from_u64(2);
        for _ in 0..10 {
            let gs: Vec<ComplexMatrix> = (0..3)
                .map(|_| {
                    let u = haar_random_unitary(4, &mut rng);
                    u.scale(Complex64::new(rng.uniform() + 0.1, rng.uniform() - 0.5))
                })
                .collect();
            let ch = normalize_kraus(gs);
            assert!(ch.completeness_deviation() < TOL_STRUCTURAL);

            let v = haar_random_unit_vector(4, &mut rng);
            let rho = DensityMatrix::from_pure(&PureState::new(v).unwrap());
            let out = apply_channel(&rho, &ch).unwrap();
            assert!((out.trace() - 1.0).abs() < TOL_STRUCTURAL);
            out.validate().unwrap();
        }
    }

    #[test]
    fn rejects_incomplete_kraus_set() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(
            KrausChannel::new(vec![half]),
            Err(Error::KrausIncomplete { .. })
        ));
    }

    #[test]
    fn local_application_matches_dense_embedding() {
        let mut rng = DetRng::from_u64(3);
        let ch = KrausChannel::pauli_mutation(0.3).unwrap();
        // Dense route: embed each Kraus operator on qubit 1 of 3.
        let embedded: Vec<ComplexMatrix> = ch
            .operators()
            .iter()
            .map(|k| embed::embed_operator(k, 3, &[1]).unwrap())
            .collect();
        let dense = KrausChannel::new(embedded).unwrap();

        let v = haar_random_unit_vector(8, &mut rng);
        let rho = DensityMatrix::from_pure(&PureState::new(v).unwrap());
        let a = apply_channel(&rho, &dense).unwrap();
        let b = apply_channel_on(&rho, &ch, &[1]).unwrap();
        assert!(a.matrix().approx_eq(b.matrix(), 1e-12));
    }

    #[test]
    fn dim_mismatch_reported() {
        let rho = DensityMatrix::maximally_mixed(4);
        let ch = KrausChannel::identity(2);
        assert!(matches!(
            apply_channel(&rho, &ch),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
