use crate::error::{Error, Result};
use crate::scalar::Real;

use super::Matrix;

const BLOCK: usize = 32;

/// Householder QR of a tall matrix, kept as blocked reflectors
/// `Q = (I − Y₁T₁Y₁ᵀ)(I − Y₂T₂Y₂ᵀ)…`.
struct BlockedQr<T> {
    m: usize,
    k: usize,
    /// `(first row, Y (rows first..m, column-major), T (upper, column-major), width)`.
    blocks: Vec<(usize, Vec<T>, Vec<T>, usize)>,
    r_diag: Vec<T>,
}

impl<T: Real> BlockedQr<T> {
    fn factor(a: &Matrix<T>) -> Self {
        let (m, k) = a.shape();
        // Column-major working copy.
        let mut w: Vec<T> = (0..k).flat_map(|j| (0..m).map(move |i| (i, j))).map(|(i, j)| a[(i, j)]).collect();
        let mut blocks = Vec::new();
        let mut r_diag = vec![T::zero(); k];
        let mut p = 0;
        while p < k {
            let pb = BLOCK.min(k - p);
            let mut tau = vec![T::zero(); pb];
            for jj in 0..pb {
                let j = p + jj;
                let col = &mut w[j * m..(j + 1) * m];
                let alpha = col[j];
                let xnorm = col[j + 1..].iter().map(|&x| x * x).sum::<T>().sqrt();
                if xnorm == T::zero() {
                    r_diag[j] = alpha;
                    continue;
                }
                let mut beta = alpha.hypot(xnorm);
                if alpha > T::zero() {
                    beta = -beta;
                }
                tau[jj] = (beta - alpha) / beta;
                let inv = T::one() / (alpha - beta);
                col[j + 1..].iter_mut().for_each(|x| *x *= inv);
                col[j] = beta;
                r_diag[j] = beta;
                // Apply to the remaining columns of the panel.
                for c in (j + 1)..(p + pb) {
                    let (lo, hi) = w.split_at_mut(c * m);
                    let v = &lo[j * m..(j + 1) * m];
                    let target = &mut hi[..m];
                    let mut s = target[j];
                    for i in (j + 1)..m {
                        s += v[i] * target[i];
                    }
                    s *= tau[jj];
                    target[j] -= s;
                    for i in (j + 1)..m {
                        target[i] -= s * v[i];
                    }
                }
            }
            // Y: unit lower trapezoid on rows p..m.
            let rows = m - p;
            let mut y = vec![T::zero(); rows * pb];
            for jj in 0..pb {
                let j = p + jj;
                y[jj * rows + jj] = T::one();
                for i in (j + 1)..m {
                    y[jj * rows + (i - p)] = w[j * m + i];
                }
            }
            // T with H₁…H_pb = I − Y·T·Yᵀ.
            let mut t = vec![T::zero(); pb * pb];
            for i in 0..pb {
                if tau[i] != T::zero() {
                    let mut z = vec![T::zero(); i];
                    for (jj, zj) in z.iter_mut().enumerate() {
                        let mut s = T::zero();
                        for r in i..rows {
                            s += y[jj * rows + r] * y[i * rows + r];
                        }
                        *zj = -tau[i] * s;
                    }
                    for row in 0..i {
                        let mut s = T::zero();
                        for (col, zc) in z.iter().enumerate().skip(row) {
                            s += t[col * pb + row] * *zc;
                        }
                        t[i * pb + row] = s;
                    }
                }
                t[i * pb + i] = tau[i];
            }
            // Trailing update C ← (I − Y·Tᵀ·Yᵀ)·C.
            let rest = k - p - pb;
            if rest > 0 {
                let c0 = (p + pb) * m + p;
                let mut ytc = vec![T::zero(); pb * rest];
                T::gemm(pb, rows, rest, T::one(), &y, rows, 1, &w[c0..], 1, m, T::zero(), &mut ytc, 1, pb);
                let mut tt = vec![T::zero(); pb * rest];
                T::gemm(pb, pb, rest, T::one(), &t, pb, 1, &ytc, 1, pb, T::zero(), &mut tt, 1, pb);
                T::gemm(rows, pb, rest, -T::one(), &y, 1, rows, &tt, 1, pb, T::one(), &mut w[c0..], 1, m);
            }
            blocks.push((p, y, t, pb));
            p += pb;
        }
        Self { m, k, blocks, r_diag }
    }

    /// Columns `start..start+count` of `Q`.
    fn q_columns(&self, start: usize, count: usize) -> Matrix<T> {
        let m = self.m;
        let mut z = vec![T::zero(); m * count];
        for j in 0..count {
            z[j * m + start + j] = T::one();
        }
        let mut w1 = Vec::new();
        let mut w2 = Vec::new();
        for (p, y, t, pb) in self.blocks.iter().rev() {
            let (p, pb) = (*p, *pb);
            let rows = m - p;
            w1.clear();
            w1.resize(pb * count, T::zero());
            w2.clear();
            w2.resize(pb * count, T::zero());
            T::gemm(pb, rows, count, T::one(), y, rows, 1, &z[p..], 1, m, T::zero(), &mut w1, 1, pb);
            T::gemm(pb, pb, count, T::one(), t, 1, pb, &w1, 1, pb, T::zero(), &mut w2, 1, pb);
            T::gemm(rows, pb, count, -T::one(), y, 1, rows, &w2, 1, pb, T::one(), &mut z[p..], 1, m);
        }
        Matrix::from_col_major(m, count, &z)
    }

    fn check_rank(&self, tol: T) -> Result<()> {
        let scale = self.r_diag.iter().fold(T::zero(), |s, r| s.max(r.abs()));
        if let Some(r) = self.r_diag.iter().find(|r| r.abs() <= tol * scale.max(T::one())) {
            return Err(Error::Singular { value: r.to_f64_lossy(), tol: tol.to_f64_lossy() });
        }
        Ok(())
    }
}

/// Orthonormal basis (`m x (m − k)`) of the orthogonal complement of the
/// column space of a full-column-rank `m x k` matrix, from Householder QR.
pub fn orthogonal_complement<T: Real>(a: &Matrix<T>, tol: T) -> Result<Matrix<T>> {
    let (m, k) = a.shape();
    if k > m {
        return Err(Error::InvalidInput(format!("orthogonal_complement needs rows >= cols, got {m}x{k}")));
    }
    if !a.all_finite() {
        return Err(Error::InvalidInput("orthogonal_complement input has non-finite entries".into()));
    }
    let qr = BlockedQr::factor(a);
    qr.check_rank(tol)?;
    Ok(qr.q_columns(qr.k, m - qr.k))
}

/// Orthonormal basis of the column space of a full-column-rank matrix, from
/// Householder QR.
pub fn orthonormal_range<T: Real>(a: &Matrix<T>, tol: T) -> Result<Matrix<T>> {
    let (m, k) = a.shape();
    if k > m {
        return Err(Error::InvalidInput(format!("orthonormal_range needs rows >= cols, got {m}x{k}")));
    }
    if !a.all_finite() {
        return Err(Error::InvalidInput("orthonormal_range input has non-finite entries".into()));
    }
    let qr = BlockedQr::factor(a);
    qr.check_rank(tol)?;
    Ok(qr.q_columns(0, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(m: usize, k: usize) -> Matrix<f64> {
        Matrix::from_fn(m, k, |i, j| ((i * 37 + j * 11 + i * j) % 23) as f64 / 23.0 - 0.45 + if i == j { 1.0 } else { 0.0 })
    }

    #[test]
    fn complement_is_orthonormal_and_orthogonal() {
        for (m, k) in [(3, 1), (5, 5), (7, 0), (90, 40), (130, 70)] {
            let a = sample(m, k);
            let c = orthogonal_complement(&a, 1e-12).unwrap();
            assert_eq!(c.shape(), (m, m - k));
            assert!(c.tr_matmul(&c).max_abs_diff(&Matrix::identity(m - k)) < 1e-13);
            assert!(c.tr_matmul(&a).max_abs() < 1e-12);
        }
    }

    #[test]
    fn range_spans_input() {
        let a = sample(100, 45);
        let q = orthonormal_range(&a, 1e-12).unwrap();
        assert!(q.tr_matmul(&q).max_abs_diff(&Matrix::identity(45)) < 1e-13);
        let resid = &a - &q.matmul(&q.tr_matmul(&a));
        assert!(resid.max_abs() < 1e-12);
    }

    #[test]
    fn complement_of_a_line() {
        let a = Matrix::<f64>::from_rows(&[vec![1.0], vec![1.0]]).unwrap();
        let c = orthogonal_complement(&a, 1e-12).unwrap();
        let h = 0.5f64.sqrt();
        assert!((c[(0, 0)].abs() - h).abs() < 1e-15 && (c[(0, 0)] + c[(1, 0)]).abs() < 1e-15);
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let a = Matrix::<f64>::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(orthogonal_complement(&a, 1e-10), Err(Error::Singular { .. })));
        assert!(orthonormal_range(&Matrix::<f64>::zeros(2, 3), 1e-10).is_err());
    }
}
