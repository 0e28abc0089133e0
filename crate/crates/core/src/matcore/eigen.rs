use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{jacobi_svd, Matrix};

/// Sweep budget for the cyclic Jacobi eigensolver.
pub const SYM_EIG_MAX_SWEEPS: usize = 64;

/// Eigenpairs of a symmetric matrix; `values` ascending, column `k` of
/// `vectors` pairs with `values[k]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Real> EigenDecomposition<T> {
    /// `V · diag(f(λ)) · Vᵀ`.
    pub fn apply(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            let fk = f(lambda);
            for i in 0..n {
                scaled[(i, k)] *= fk;
            }
        }
        scaled.matmul_tr(&self.vectors)
    }

    pub fn reconstruct(&self) -> Matrix<T> {
        self.apply(|x| x)
    }
}

fn jacobi_threshold<T: Real>() -> T {
    T::c(1e-14).max(T::epsilon() * T::c(4.0))
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations in fixed
/// `(p, q)` order, sweeping until the largest off-diagonal entry is at most
/// `1e-14·‖A‖_F`.
pub fn sym_eig<T: Real>(a: &Matrix<T>) -> Result<EigenDecomposition<T>> {
    if !a.is_square() {
        return Err(Error::InvalidInput(format!("sym_eig needs a square matrix, got {:?}", a.shape())));
    }
    if !a.all_finite() {
        return Err(Error::InvalidInput("sym_eig input has non-finite entries".into()));
    }
    let scale = a.max_abs().max(T::one());
    if a.asymmetry() > T::c(1e-12) * scale {
        return Err(Error::InvalidInput(format!(
            "sym_eig input is not symmetric (asymmetry {:e})",
            a.asymmetry().to_f64_lossy()
        )));
    }
    let n = a.rows();
    let mut m = a.symmetrized();
    // Row k of `vt` holds eigenvector k.
    let mut vt = Matrix::<T>::identity(n);
    let norm = m.frobenius();
    let thr = jacobi_threshold::<T>() * norm;
    let skip = thr * T::c(1e-3);

    let off_max = |m: &Matrix<T>| {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(m[(i, j)].abs());
            }
        }
        off
    };

    let mut sweeps = 0;
    let mut off = off_max(&m);
    while off > thr {
        if sweeps == SYM_EIG_MAX_SWEEPS {
            return Err(Error::NotConverged { sweeps, off: off.to_f64_lossy() });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() <= skip {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (apq + apq);
                let t = {
                    let denom = theta.abs() + (theta * theta + T::one()).sqrt();
                    if theta >= T::zero() {
                        T::one() / denom
                    } else {
                        -T::one() / denom
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let data = m.as_mut_slice();
                for k in 0..n {
                    let akp = data[k * n + p];
                    let akq = data[k * n + q];
                    data[k * n + p] = c * akp - s * akq;
                    data[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = data[p * n + k];
                    let aqk = data[q * n + k];
                    data[p * n + k] = c * apk - s * aqk;
                    data[q * n + k] = s * apk + c * aqk;
                }
                data[p * n + q] = T::zero();
                data[q * n + p] = T::zero();
                let v = vt.as_mut_slice();
                for k in 0..n {
                    let vp = v[p * n + k];
                    let vq = v[q * n + k];
                    v[p * n + k] = c * vp - s * vq;
                    v[q * n + k] = s * vp + c * vq;
                }
            }
        }
        sweeps += 1;
        off = off_max(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap().then(i.cmp(&j)));
    let values = order.iter().map(|&k| m[(k, k)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, col| vt[(order[col], i)]);
    Ok(EigenDecomposition { values, vectors })
}

/// Matrix sign of a symmetric invertible matrix: `V·diag(sign λ)·Vᵀ`.
pub fn sgn_sym<T: Real>(a: &Matrix<T>, tol: T) -> Result<Matrix<T>> {
    let eig = sym_eig(a)?;
    if let Some(&bad) = eig.values.iter().find(|v| v.abs() <= tol) {
        return Err(Error::Singular { value: bad.to_f64_lossy(), tol: tol.to_f64_lossy() });
    }
    Ok(eig.apply(|x| if x > T::zero() { T::one() } else { -T::one() }).symmetrized())
}

/// Numerical rank: singular values above `tol·max(1, ‖A‖_F)`.
///
/// Counts the same quantity as the eigenvalues of `AᵀA` above the squared
/// threshold, but reads singular values off one-sided Jacobi so that zero
/// singular values are not swamped by the squaring.
pub fn rank_of<T: Real>(a: &Matrix<T>, tol: T) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    let thr = tol * a.frobenius().max(T::one());
    jacobi_svd(a).values.iter().filter(|&&s| s > thr).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ortho_err(v: &Matrix<f64>) -> f64 {
        v.tr_matmul(v).max_abs_diff(&Matrix::identity(v.cols()))
    }

    #[test]
    fn diagonal_input() {
        let e = sym_eig(&Matrix::diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert!(ortho_err(&e.vectors) < 1e-15);
    }

    #[test]
    fn swap_matrix() {
        let a = Matrix::<f64>::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = sym_eig(&a).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn projection_spectrum() {
        let r3 = 3f64.sqrt();
        let p = Matrix::from_rows(&[vec![0.25, -r3 / 4.0], vec![-r3 / 4.0, 0.75]]).unwrap();
        let e = sym_eig(&p).unwrap();
        assert!(e.values[0].abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(sym_eig(&a), Err(Error::InvalidInput(_))));
        assert!(sym_eig(&Matrix::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn sign_function() {
        assert_eq!(sgn_sym(&Matrix::<f64>::identity(3), 1e-9).unwrap(), Matrix::identity(3));
        let s = sgn_sym(&Matrix::diag(&[2.0, -3.0]), 1e-9).unwrap();
        assert!(s.max_abs_diff(&Matrix::diag(&[1.0, -1.0])) < 1e-15);
        let err = sgn_sym(&Matrix::diag(&[2.0, 0.0]), 1e-9).unwrap_err();
        assert!(matches!(err, Error::Singular { .. }));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of(&Matrix::<f64>::zeros(3, 3), 1e-8), 0);
        assert_eq!(rank_of(&Matrix::<f64>::identity(5), 1e-8), 5);
        let ones = Matrix::from_fn(3, 4, |_, _| 1.0);
        assert_eq!(rank_of(&ones, 1e-8), 1);
    }

    #[test]
    fn single_precision_path() {
        let a = Matrix::<f32>::from_fn(6, 6, |i, j| 1.0 / (1 + i + j) as f32);
        let e = sym_eig(&a).unwrap();
        assert!(e.reconstruct().max_abs_diff(&a) < 1e-5);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
}
