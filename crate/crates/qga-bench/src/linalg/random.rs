//! Haar-distributed random unitaries and state vectors.

use crate::linalg::ComplexMatrix;
use crate::rng::DetRng;
use num_complex::Complex64;

fn complex_normal(rng: &mut DetRng) -> Complex64 {
    let (re, im) = rng.standard_normal_pair();
    Complex64::new(re, im)
}

/// Haar-random unitary: a Ginibre matrix followed by QR where the
/// orthonormalization fixes every diagonal of R real positive, which makes
/// the decomposition unique and the Q factor Haar-distributed.
pub fn haar_random_unitary(dim: usize, rng: &mut DetRng) -> ComplexMatrix {
    assert!(dim >= 1);
    // Ginibre sample, stored column-major for the Gram-Schmidt passes.
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| complex_normal(rng)).collect())
        .collect();

    for j in 0..dim {
        // Two orthogonalization passes keep the columns orthonormal to
        // machine precision even for ill-conditioned draws.
        for _pass in 0..2 {
            for i in 0..j {
                let proj: Complex64 = cols[i]
                    .iter()
                    .zip(cols[j].iter())
                    .map(|(&qi, &vj)| qi.conj() * vj)
                    .sum();
                for r in 0..dim {
                    let qi = cols[i][r];
                    cols[j][r] -= proj * qi;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }

    ComplexMatrix::from_fn(dim, dim, |r, c| cols[c][r])
}

/// Uniform random unit vector on the complex sphere (normalized complex
/// Gaussian vector).
pub fn haar_random_unit_vector(dim: usize, rng: &mut DetRng) -> Vec<Complex64> {
    assert!(dim >= 1);
    let mut v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}
