//! Numerical tolerances shared by the whole crate.
//!
//! These are exported so tests assert against the same constants the
//! library enforces.

/// Structural checks: Hermiticity, unit trace, Kraus completeness.
pub const TOL_STRUCTURAL: f64 = 1e-10;

/// Spectral checks: eigensolver residuals and the allowed negative slack
/// on density-matrix eigenvalues.
pub const TOL_SPECTRAL: f64 = 1e-9;

/// Default elementwise tolerance for matrix comparisons.
pub const TOL_MATRIX_EQ: f64 = 1e-12;

/// Unit-norm tolerance for pure states and vector individuals.
pub const TOL_STATE_NORM: f64 = 1e-12;

/// Minimum fidelity to |0...0> required of a register about to receive a
/// clone.
pub const TOL_BLANK_REGISTER: f64 = 1e-8;
