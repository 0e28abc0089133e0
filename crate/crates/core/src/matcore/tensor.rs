use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{Matrix, Vector};

/// Kronecker product, `(r_A·r_B) x (c_A·c_B)`.
pub fn kron<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    Matrix::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

/// Reshapes `v ∈ ℝ^{nA}⊗ℝ^{nB}` into the `nA x nB` matrix with entry
/// `(i, j) = v[i·nB + j]`, so that `mat((A⊗B)v) = A·mat(v)·Bᵀ`.
pub fn matricize<T: Real>(v: &Vector<T>, n_a: usize, n_b: usize) -> Result<Matrix<T>> {
    if v.dim() != n_a * n_b {
        return Err(Error::InvalidInput(format!(
            "cannot matricize a vector of dimension {} as {n_a}x{n_b}",
            v.dim()
        )));
    }
    Matrix::from_row_major(n_a, n_b, v.as_slice().to_vec())
}

/// Inverse of [`matricize`].
pub fn vectorize<T: Real>(m: &Matrix<T>) -> Vector<T> {
    Vector::from_raw(m.as_slice().to_vec())
}
