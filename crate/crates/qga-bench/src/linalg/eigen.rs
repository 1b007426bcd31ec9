//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! Output is deterministic: eigenvalues ascend, equal eigenvalues keep the
//! order the sweep produced, and each eigenvector is rephased so its
//! largest-magnitude component is real and positive. Fidelities and
//! comparator channels built from the eigenvectors are therefore
//! reproducible across runs and platforms.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tolerance::TOL_STRUCTURAL;
use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct EighResult {
    /// Eigenvalues in nondecreasing order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, ordered to match.
    pub eigenvectors: ComplexMatrix,
}

impl EighResult {
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.rows())
            .map(|r| self.eigenvectors[(r, i)])
            .collect()
    }

    /// Rebuild `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |r, c| {
            (0..n)
                .map(|k| v[(r, k)] * self.eigenvalues[k] * v[(c, k)].conj())
                .sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn eigh(h: &ComplexMatrix) -> Result<EighResult> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.rows(),
            found: h.cols(),
        });
    }
    let dev = h.hermiticity_deviation();
    if dev > TOL_STRUCTURAL {
        return Err(Error::NotHermitian { max_dev: dev });
    }
    let n = h.rows();
    let mut a = h.hermitized();
    let mut v = ComplexMatrix::identity(n);

    if n > 1 {
        let scale = a.frobenius_norm().max(1.0);
        let target = 1e-14 * scale;
        let mut converged = false;
        for _sweep in 0..MAX_SWEEPS {
            let mut off2 = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off2 += a[(p, q)].norm_sqr();
                }
            }
            if (2.0 * off2).sqrt() <= target {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged {
            // One final check; Jacobi converges quadratically, so reaching
            // the sweep cap without converging indicates bad input.
            let mut off2 = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off2 += a[(p, q)].norm_sqr();
                }
            }
            if (2.0 * off2).sqrt() > target {
                return Err(Error::EigenNoConvergence { sweeps: MAX_SWEEPS });
            }
        }
    }

    // Sort ascending; stable with respect to the diagonal order so repeated
    // eigenvalues come out deterministically.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        // Phase convention: largest-magnitude component real positive;
        // first index wins ties.
        let mut best = 0;
        let mut best_mag = 0.0;
        for r in 0..n {
            let mag = v[(r, src)].norm();
            if mag > best_mag {
                best_mag = mag;
                best = r;
            }
        }
        let pivot = v[(best, src)];
        let phase = pivot / pivot.norm();
        let inv_phase = phase.conj();
        for r in 0..n {
            eigenvectors[(r, col)] = v[(r, src)] * inv_phase;
        }
    }

    Ok(EighResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Smallest eigenvalue of a Hermitian matrix (full decomposition; intended
/// for small dimensions).
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(eigh(h)?.eigenvalues[0])
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phi = apq / mag;

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    // A <- J^dagger A J with the plane rotation
    // J[p][p]=c, J[p][q]=s*phi, J[q][p]=-s*conj(phi), J[q][q]=c.
    let s_phi = phi * s;
    let s_phi_conj = phi.conj() * s;

    // Column update: A J.
    for r in 0..n {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp * c - arq * s_phi_conj;
        a[(r, q)] = arp * s_phi + arq * c;
    }
    // Row update: J^dagger (A J).
    for col in 0..n {
        let apc = a[(p, col)];
        let aqc = a[(q, col)];
        a[(p, col)] = apc * c - aqc * s_phi;
        a[(q, col)] = apc * s_phi_conj + aqc * c;
    }
    // Clean the eliminated element and enforce real diagonal against drift.
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    // Accumulate eigenvectors: V <- V J.
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * c - vrq * s_phi_conj;
        v[(r, q)] = vrp * s_phi + vrq * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_random_unitary;
    use crate::rng::DetRng;
    use crate::tolerance::TOL_SPECTRAL;

    #[test]
    fn diagonal_input_sorted_with_permuted_basis() {
        let h = ComplexMatrix::diagonal(&[3.0, 0.0, 2.0, 1.0]);
        let r = eigh(&h).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0, 1.0, 2.0, 3.0]);
        // Eigenvector for eigenvalue 0 is e_1, for 1 is e_3, etc.
        let expect_cols = [1usize, 3, 2, 0];
        for (col, &basis) in expect_cols.iter().enumerate() {
            for row in 0..4 {
                let want = if row == basis { 1.0 } else { 0.0 };
                assert!((r.eigenvectors[(row, col)].re - want).abs() < 1e-12);
                assert!(r.eigenvectors[(row, col)].im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pauli_x_eigensystem() {
        let x = super::super::matrix::pauli_x();
        let r = eigh(&x).unwrap();
        assert!((r.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((r.eigenvalues[1] - 1.0).abs() < 1e-12);
        let s = 0.5f64.sqrt();
        // Phase convention makes the first component real positive.
        assert!((r.eigenvectors[(0, 0)].re - s).abs() < 1e-12);
        assert!((r.eigenvectors[(1, 0)].re + s).abs() < 1e-12);
        assert!((r.eigenvectors[(0, 1)].re - s).abs() < 1e-12);
        assert!((r.eigenvectors[(1, 1)].re - s).abs() < 1e-12);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = DetRng::from_u64(11);
        for _ in 0..20 {
            let g = haar_random_unitary(4, &mut rng);
            let d = ComplexMatrix::diagonal(&[-1.3, 0.2, 0.2, 2.5]);
            let h = g.mul(&d).mul(&g.dagger()).hermitized();
            let r = eigh(&h).unwrap();
            assert!(r.reconstruct().approx_eq(&h, TOL_SPECTRAL));
            // Residual H v = lambda v.
            for i in 0..4 {
                let v = r.eigenvector(i);
                let hv = h.mul_vec(&v);
                for (a, b) in hv.iter().zip(v.iter()) {
                    assert!((a - b * r.eigenvalues[i]).norm() < TOL_SPECTRAL);
                }
            }
            // Orthonormality.
            let vtv = r.eigenvectors.dagger().mul(&r.eigenvectors);
            assert!(vtv.approx_eq(&ComplexMatrix::identity(4), TOL_SPECTRAL));
            // Ascending.
            for w in r.eigenvalues.windows(2) {
                assert!(w[0] <= w[1] + 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = Complex64::new(0.5, 0.0);
        assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn deterministic_output() {
        let mut rng = DetRng::from_u64(5);
        let g = haar_random_unitary(4, &mut rng);
        let d = ComplexMatrix::diagonal(&[0.0, 1.0, 2.0, 3.0]);
        let h = g.mul(&d).mul(&g.dagger()).hermitized();
        let a = eigh(&h).unwrap();
        let b = eigh(&h).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert!(a.eigenvectors.max_abs_diff(&b.eigenvectors) == 0.0);
    }
}
