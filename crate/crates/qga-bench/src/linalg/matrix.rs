//! Row-major dense complex matrix.

use crate::tolerance::TOL_MATRIX_EQ;
use num_complex::Complex64;
use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense complex matrix with row-major storage.
///
/// Comparisons are tolerance-based ([`ComplexMatrix::approx_eq`]); exact
/// float equality is almost never meaningful here.
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

// Channel pipelines churn through same-sized scratch matrices; large
// buffers are recycled through a thread-local pool so the allocator does
// not hand them straight back to the kernel and fault the pages in again.
const POOL_MIN_ELEMENTS: usize = 4096;
const POOL_MAX_ENTRIES: usize = 24;

thread_local! {
    static BUFFER_POOL: std::cell::RefCell<Vec<Vec<Complex64>>> =
        const { std::cell::RefCell::new(Vec::new()) };
}

fn alloc_zeroed(len: usize) -> Vec<Complex64> {
    if len >= POOL_MIN_ELEMENTS {
        let reused = BUFFER_POOL.with(|pool| {
            let mut pool = pool.borrow_mut();
            pool.iter()
                .position(|v| v.capacity() >= len)
                .map(|i| pool.swap_remove(i))
        });
        if let Some(mut v) = reused {
            v.clear();
            v.resize(len, Complex64::new(0.0, 0.0));
            return v;
        }
    }
    vec![Complex64::new(0.0, 0.0); len]
}

impl Drop for ComplexMatrix {
    fn drop(&mut self) {
        if self.data.capacity() >= POOL_MIN_ELEMENTS {
            let v = std::mem::take(&mut self.data);
            BUFFER_POOL.with(|pool| {
                let mut pool = pool.borrow_mut();
                if pool.len() < POOL_MAX_ENTRIES {
                    pool.push(v);
                }
            });
        }
    }
}

impl Clone for ComplexMatrix {
    fn clone(&self) -> Self {
        let mut data = alloc_zeroed(self.data.len());
        data.copy_from_slice(&self.data);
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: alloc_zeroed(rows * cols),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from rows of real numbers.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let nr = rows.len();
        let nc = if nr == 0 { 0 } else { rows[0].len() };
        Self::from_fn(nr, nc, |r, c| Complex64::new(rows[r][c], 0.0))
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Outer product `a * b^dagger` of two column vectors.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        Self::from_fn(a.len(), b.len(), |r, c| a[r] * b[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix product. Panics on inner-dimension mismatch; shape errors at
    /// this level are programming bugs, not runtime conditions.
    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a * x)
                    .sum::<Complex64>()
            })
            .collect()
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o += b;
        }
        out
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o -= b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        let mut out = self.clone();
        for o in &mut out.data {
            *o *= s;
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    /// In-place `self += s * other`.
    pub fn add_scaled_assign(&mut self, s: f64, other: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (o, &b) in self.data.iter_mut().zip(&other.data) {
            *o += s * b;
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        self.dagger_into(&mut out);
        out
    }

    /// Conjugate transpose into an existing buffer (every entry written).
    pub fn dagger_into(&self, out: &mut ComplexMatrix) {
        assert_eq!((out.rows, out.cols), (self.cols, self.rows));
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for (c, &z) in row.iter().enumerate() {
                out.data[c * self.rows + r] = z.conj();
            }
        }
    }

    pub fn fill_zero(&mut self) {
        self.data.fill(Complex64::new(0.0, 0.0));
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.data[i * self.cols + i]).sum()
    }

    /// Kronecker product; the left factor indexes the most significant
    /// block, so basis order is big-endian.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self.data[ar * self.cols + ac];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for br in 0..other.rows {
                    let out_row = (ar * other.rows + br) * out.cols;
                    let b_row = br * other.cols;
                    for bc in 0..other.cols {
                        out.data[out_row + ac * other.cols + bc] =
                            a * other.data[b_row + bc];
                    }
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Elementwise comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_abs_diff(other) <= tol
    }

    /// Comparison at the crate default tolerance.
    pub fn approx_eq_default(&self, other: &ComplexMatrix) -> bool {
        self.approx_eq(other, TOL_MATRIX_EQ)
    }

    /// Largest deviation |A[i][j] - conj(A[j][i])|.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = (self.data[r * self.cols + c] - self.data[c * self.cols + r].conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }

    /// Hermitian part (A + A^dagger) / 2.
    pub fn hermitized(&self) -> ComplexMatrix {
        assert!(self.is_square());
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| {
            (self.data[r * self.cols + c] + self.data[c * self.cols + r].conj()) * 0.5
        })
    }

    pub fn max_offdiagonal_abs(&self) -> f64 {
        assert!(self.is_square());
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c {
                    dev = dev.max(self.data[r * self.cols + c].norm());
                }
            }
        }
        dev
    }

    /// True if `self + slack * I` admits a Cholesky factorization, i.e. the
    /// smallest eigenvalue is at least `-slack` (up to roundoff). Assumes a
    /// Hermitian input. Much cheaper than a full eigendecomposition.
    pub fn psd_within(&self, slack: f64) -> bool {
        assert!(self.is_square());
        let n = self.rows;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = self.data[j * self.cols + j].re + slack;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if d <= 0.0 {
                return false;
            }
            let ljj = d.sqrt();
            l[j * n + j] = Complex64::new(ljj, 0.0);
            for i in (j + 1)..n {
                let mut s = self.data[i * self.cols + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / ljj;
            }
        }
        true
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.data[r * self.cols + c];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |r, c| {
        if r != c {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

/// Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[1.0, -1.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.kron(&i2).approx_eq_default(&ComplexMatrix::identity(4)));
        let d = ComplexMatrix::diagonal(&[0.0, 1.0]);
        let expect = ComplexMatrix::diagonal(&[0.0, 0.0, 1.0, 1.0]);
        assert!(d.kron(&i2).approx_eq_default(&expect));
    }

    #[test]
    fn kron_applies_x_tensor_x_to_00() {
        // Expanding the 4x4 product by hand: X(x)X maps |00> to |11>.
        let xx = pauli_x().kron(&pauli_x());
        let e00 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let out = xx.mul_vec(&e00);
        let expect = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        for (a, b) in out.iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn dagger_and_trace() {
        let m = ComplexMatrix::from_fn(2, 2, |r, cix| c((r * 2 + cix) as f64, 1.0));
        let d = m.dagger();
        assert!((d[(0, 1)] - c(2.0, -1.0)).norm() < 1e-15);
        assert!((m.trace() - c(3.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn mul_against_hand_product() {
        let a = ComplexMatrix::from_fn(2, 2, |r, cc| c((r + cc) as f64, 0.0));
        let b = ComplexMatrix::from_fn(2, 2, |r, cc| c((2 * r + cc) as f64, 0.0));
        // a = [[0,1],[1,2]], b = [[0,1],[2,3]] -> ab = [[2,3],[4,7]]
        let ab = a.mul(&b);
        let expect = ComplexMatrix::from_real_rows(&[vec![2.0, 3.0], vec![4.0, 7.0]]);
        assert!(ab.approx_eq_default(&expect));
    }

    #[test]
    fn hermiticity_checks() {
        let h = ComplexMatrix::from_fn(2, 2, |r, cc| {
            if r == cc {
                c(1.0, 0.0)
            } else if r < cc {
                c(0.5, 0.25)
            } else {
                c(0.5, -0.25)
            }
        });
        assert!(h.is_hermitian(1e-12));
        let mut bad = h.clone();
        bad[(0, 1)] = c(0.5, 0.3);
        assert!(!bad.is_hermitian(1e-12));
        assert!(bad.hermitized().is_hermitian(1e-15));
    }

    #[test]
    fn psd_cholesky_bound() {
        let pos = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!(pos.psd_within(0.0));
        let slightly_neg = ComplexMatrix::diagonal(&[1.0, -1e-10]);
        assert!(slightly_neg.psd_within(1e-9));
        let neg = ComplexMatrix::diagonal(&[1.0, -1e-6]);
        assert!(!neg.psd_within(1e-9));
        // Non-diagonal case: [[1, 2], [2, 1]] has eigenvalue -1.
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(!m.psd_within(1e-9));
        assert!(m.psd_within(1.0 + 1e-12));
    }

    #[test]
    fn paulis_are_unitary_involutions() {
        for p in [pauli_x(), pauli_y(), pauli_z()] {
            assert!(p.mul(&p).approx_eq_default(&ComplexMatrix::identity(2)));
            assert!(p.dagger().mul(&p).approx_eq_default(&ComplexMatrix::identity(2)));
        }
    }
}
